import pytest

import config
from abgroup import (
    TRIVIAL, FinAbGroup, automorphisms, basis_split, hom_from_images, identity_hom, make_group,
    power_subgroup, product_group, quotient, quotient_by_hom, subgroup, torsion_subgroup,
    transport_subgroup, whole_group,
)
from utils import GroupError


Z4 = FinAbGroup((4,))


# ── Grupo e elementos ──

def test_group_basics():
    g = FinAbGroup((4, 2))
    assert g.rank == 2
    assert g.size == 8
    assert g.exponent == 4
    assert str(g) == "Z4 x Z2"
    assert str(TRIVIAL) == "1"
    assert TRIVIAL.size == 1


def test_element_arithmetic():
    g = FinAbGroup((4, 2))
    x = g.element((3, 1))
    assert str(x) == "(3,1)"
    assert x + x == g.element((2, 0))
    assert -x == g.element((1, 1))
    assert 2 * x == x * 2 == g.element((2, 0))
    assert g.element((7, 3)) == x
    assert x.order() == 4
    assert g.identity.is_identity


@pytest.mark.parametrize("orders", [(1,), (0, 2), (2, -3)])
def test_rejects_degenerate_orders(orders):
    with pytest.raises(GroupError):
        make_group(orders)


def test_element_length_mismatch():
    with pytest.raises(GroupError):
        Z4.element((1, 0))


def test_enumeration_bound(monkeypatch):
    monkeypatch.setattr(config, "ENUM_BOUND", 4)
    with pytest.raises(GroupError, match="enumeration bound"):
        FinAbGroup((2, 2, 2)).elements()
    assert len(Z4.elements()) == 4


def test_product_group_inclusions():
    ab, ia, ib = product_group(Z4, FinAbGroup((2,)))
    assert ab.orders == (4, 2)
    assert ia.apply(Z4.gen(0)) == ab.element((1, 0))
    assert ib.apply(FinAbGroup((2,)).gen(0)) == ab.element((0, 1))


# ── Homomorfismos ──

def test_hom_kernel_and_image():
    dom, cod = FinAbGroup((4, 2)), FinAbGroup((2, 2))
    h = hom_from_images(dom, cod, [cod.element((1, 0)), cod.element((0, 1))])
    assert h.kernel.elements == {dom.element((0, 0)), dom.element((2, 0))}
    assert h.kernel.order * h.image.order == dom.size
    assert h.is_surjective()
    assert not h.is_injective()


def test_ill_defined_hom():
    with pytest.raises(GroupError, match="ill-defined"):
        hom_from_images(FinAbGroup((2,)), Z4, [Z4.element((1,))])


def test_compose_with_identity():
    g = FinAbGroup((4, 2))
    alpha = hom_from_images(g, g, [g.element((1, 1)), g.element((2, 1))])
    assert alpha.compose(identity_hom(g)).matrix == alpha.matrix


# ── Subgrupos e quocientes ──

def test_cyclic_quotient():
    q = quotient(Z4, subgroup(Z4, [(2,)]))
    assert q.group.orders == (2,)
    one = q.group.element((1,))
    assert q.section(one) == Z4.element((1,))
    assert q.section(q.group.identity).is_identity
    assert q.sigma(one, one) == Z4.element((2,))
    assert q.hom_section is None


def test_split_quotient_has_hom_section():
    g = FinAbGroup((2, 2))
    q = quotient(g, subgroup(g, [(0, 1)]))
    assert q.group.orders == (2,)
    sec = q.hom_section
    assert sec is not None
    for x in q.group.elements():
        assert q.projection.apply(sec.apply(x)) == x


def test_quotient_snf_orders():
    g = FinAbGroup((4, 2, 2))
    q = quotient(g, subgroup(g, [(2, 0, 0)]))
    assert q.group.orders == (2, 2, 2)
    assert q.projection.kernel.same_as(subgroup(g, [(2, 0, 0)]))


def test_trivial_quotient_is_identity():
    q = quotient(Z4, subgroup(Z4, []))
    assert q.group == Z4
    assert q.projection.matrix == identity_hom(Z4).matrix


def test_quotient_by_hom_requires_surjection():
    bad = hom_from_images(FinAbGroup((2,)), FinAbGroup((2, 2)), [FinAbGroup((2, 2)).element((1, 0))])
    with pytest.raises(GroupError, match="not surjective"):
        quotient_by_hom(bad)


def test_power_and_torsion_subgroups():
    g = FinAbGroup((4, 2))
    assert power_subgroup(g, 2).elements == {g.element((0, 0)), g.element((2, 0))}
    assert torsion_subgroup(g, 2).order == 4
    with pytest.raises(GroupError):
        power_subgroup(g, 0)


def test_subgroup_presentation():
    g = FinAbGroup((4, 2))
    h = subgroup(g, [(2, 0), (0, 1)])
    pres, inc = h.presentation
    assert sorted(pres.orders) == [2, 2]
    assert {inc.apply(x) for x in pres.elements()} == h.elements
    assert subgroup(Z4, [(2,)]).presentation[0].orders == (2,)
    with pytest.raises(GroupError):
        subgroup(Z4, [(2,)]).to_presentation(Z4.element((1,)))


def test_subgroup_relations():
    g = FinAbGroup((4, 2))
    big = whole_group(g)
    small = subgroup(g, [(2, 0)])
    assert big.contains_subgroup(small)
    assert not small.contains_subgroup(big)
    assert g.element((2, 0)) in small


# ── Base adaptada e automorfismos ──

def test_basis_split_marks_cyclic_generator():
    q = quotient(Z4, subgroup(Z4, [(2,)]))
    split = basis_split(q.projection)
    assert split.basis == (Z4.element((1,)),)
    assert split.marked == (True,)
    assert split.orders == [4]


def test_basis_split_mixed_group():
    g = FinAbGroup((4, 2, 3))
    q = quotient(g, subgroup(g, [(2, 0, 0), (0, 0, 1)]))
    split = basis_split(q.projection)
    assert sorted(split.orders) == [2, 3, 4]
    assert sum(split.marked) == q.group.rank
    assert whole_group(g).same_as(subgroup(g, list(split.basis)))


def test_basis_split_requires_elementary_quotient():
    with pytest.raises(GroupError, match="elementary"):
        basis_split(identity_hom(Z4))


@pytest.mark.parametrize("orders, count", [((4,), 2), ((2, 2), 6), ((4, 2), 8), ((3,), 2)])
def test_automorphism_count(orders, count):
    assert len(list(automorphisms(FinAbGroup(orders)))) == count


def test_transport_subgroup_preserves_order():
    g = FinAbGroup((4, 2))
    h = subgroup(g, [(2, 1)])
    for alpha in automorphisms(g):
        assert transport_subgroup(alpha, h).order == h.order
