from fractions import Fraction
from itertools import combinations, product

import pytest

from abgroup import (
    FinAbGroup, automorphisms, power_subgroup, subgroup, transport_subgroup, whole_group,
)
from chars import Character, all_characters
from classify import (
    alt_descriptor_of, alt_equiv_class, alt_iso_equal, fingerprint, graded_field_iso,
    idempotent_count, jordan_descriptor_of, jordan_division_predicate, jordan_iso_equal,
    jordan_sigma_canonical, oracle_graded_field_iso, pair_label, square_sign_profile, tau_map,
    tau_on_two_torsion, triple_label, weyl_canonical, weyl_orbit,
)
from constructions import (
    JordanFormData, da_family, da_split, jordan_bilinear, jordan_complex, loop_real,
    real_field, twisted_group_algebra,
)
from galg import direct_sum, graded_division_check
from utils import DescriptorError

Q = Fraction


# ── Corpos graduados ──

@pytest.mark.parametrize("orders", [(2,), (4,), (2, 2), (8,), (4, 2), (2, 2, 2)])
def test_oracle_agrees_with_two_torsion_rule(orders):
    g = FinAbGroup(orders)
    chars = list(all_characters(g))
    algebras = {chi: twisted_group_algebra(g, chi) for chi in chars}
    for chi, chi2 in product(chars, repeat=2):
        f = oracle_graded_field_iso(algebras[chi], algebras[chi2])
        assert (f is not None) == graded_field_iso(chi, chi2)


def test_oracle_rejects_partial_support():
    g = FinAbGroup((4,))
    h = subgroup(g, [(2,)])
    parcial = loop_real(real_field(h.quotient_data.group), h.quotient_data)
    assert len(parcial.components) == 2
    with pytest.raises(DescriptorError, match="full support"):
        oracle_graded_field_iso(parcial, parcial)


# ── tau ──

def test_tau_map_on_cyclic():
    t = FinAbGroup((4,))
    tau = tau_map(t, subgroup(t, [(2,)]))
    assert not tau.is_trivial
    assert tau.kernel.order == 1
    split = tau_map(FinAbGroup((2, 2)), subgroup(FinAbGroup((2, 2)), [(0, 1)]))
    assert split.is_trivial
    assert split.kernel.order == 2


def test_tau_map_needs_elementary_quotient():
    t = FinAbGroup((8,))
    with pytest.raises(DescriptorError, match="elementary"):
        tau_map(t, subgroup(t, [(4,)]))


# ── Weyl ──

@pytest.mark.parametrize("orders, triple", [
    ((4, 2), ((1, 0), (0, 1), (3, 1))),
    ((7,), ((1,), (2,), (4,))),
])
def test_weyl_orbit_generic(orders, triple):
    g = FinAbGroup(orders)
    t = tuple(g.element(x) for x in triple)
    orbita = weyl_orbit(t)
    assert len(orbita) == 12
    assert all(weyl_canonical(o) == weyl_canonical(t) for o in orbita)


def test_weyl_orbit_rejects_bad_triple():
    g = FinAbGroup((4,))
    x = g.element((1,))
    with pytest.raises(DescriptorError):
        weyl_orbit((x, x, x))


# ── Octonions de divisao graduada ──

def test_da_family_mu_is_invisible_when_tau_injective():
    t = FinAbGroup((4,))
    h = subgroup(t, [(2,)])
    chi = Character(t, (Q(1, 4),))
    a = da_family(t, h, chi, mu=[1])
    b = da_family(t, h, chi, mu=[-1])
    assert alt_iso_equal(alt_descriptor_of(a), alt_descriptor_of(b))
    assert fingerprint(a).diff(fingerprint(b)) == []


def test_primed_family_differs_from_split():
    t = FinAbGroup((2, 2))
    h = subgroup(t, [(0, 1)])
    a = da_split(t, h)
    b = da_split(t, h, primed=True)
    assert not alt_iso_equal(alt_descriptor_of(a), alt_descriptor_of(b))
    assert "square_signs" in fingerprint(a, with_centroid=False).diff(fingerprint(b, with_centroid=False))
    assert alt_equiv_class(a).item == "2(a)"
    assert alt_equiv_class(b).item == "2(b)"


def test_equiv_class_of_cyclic_family():
    t = FinAbGroup((4,))
    h = subgroup(t, [(2,)])
    ec = alt_equiv_class(da_family(t, h, Character(t, (Q(1, 4),))))
    assert str(ec) == "DA(T,H,O): ([-4])"
    assert ec.item == "1(a)"
    assert ec.family == "H{-1}"


# ── Rotulos ──

def test_pair_label_marks_quotient_generators():
    t = FinAbGroup((2, 2, 4))
    h = subgroup(t, [(0, 1, 0), (0, 0, 2)])
    label = pair_label(t, h)
    assert str(label) == "([2], 2, [4])"
    assert label.r == 2


@pytest.mark.parametrize("s10, s04, esperado", [
    (1, -1, "(2, -8)"),
    (-1, -1, "(2, -8)"),
    (-1, 1, "(-2, 8)"),
    (1, 1, "(2, 8)"),
])
def test_triple_label_keeps_one_negative(s10, s04, esperado):
    t = FinAbGroup((2, 8))
    e = t.element
    chi0 = {e((1, 0)): s10, e((0, 4)): s04, e((1, 4)): s10 * s04}
    assert str(triple_label(t, whole_group(t), chi0)) == esperado


def _subgrupos_com_quadrados(t):
    """Todos os H com T^[2] <= H <= T."""
    quadrados = list(power_subgroup(t, 2).generators)
    vistos = {}
    for k in range(t.rank + 1):
        for extra in combinations(t.elements(), k):
            h = subgroup(t, quadrados + list(extra))
            vistos.setdefault(h.elements, h)
    return list(vistos.values())


def _padroes_chi0(t, h):
    """Cada chi0: H_[2] -> {+-1}, como restricao de um caractere de T."""
    duas = [x for x in h.sorted_elements() if (x + x).is_identity]
    padroes = {tuple(chi.sign(x) for x in duas) for chi in all_characters(t)}
    return [dict(zip(duas, p)) for p in sorted(padroes)]


# Z2^4 fica de fora: 20160 automorfismos x 67 subgrupos deixam o teste lento demais.
@pytest.mark.parametrize("orders", [
    (2,), (4,), (2, 2), (8,), (4, 2), (2, 2, 2), (16,), (8, 2), (4, 4), (4, 2, 2),
])
def test_labels_are_automorphism_invariant(orders):
    t = FinAbGroup(orders)
    autos = list(automorphisms(t))
    for h in _subgrupos_com_quadrados(t):
        movidos = [transport_subgroup(alpha, h) for alpha in autos]
        par = pair_label(t, h)
        assert all(pair_label(t, hm) == par for hm in movidos)
        for chi0 in _padroes_chi0(t, h):
            tripla = triple_label(t, h, chi0)
            for alpha, hm in zip(autos, movidos):
                movido = {alpha.apply(x): s for x, s in chi0.items()}
                assert triple_label(t, hm, movido) == tripla


def test_triple_label_missing_sign():
    t = FinAbGroup((2, 2))
    with pytest.raises(DescriptorError, match="missing"):
        triple_label(t, whole_group(t), {})


# ── Jordan ──

def _formas(grupo, custo_max):
    """(kappa, sigma) balanceados com 1 + custo <= 1 + custo_max."""
    reps = [g for g in grupo.elements() if g <= -g]
    custos = [1 if (g + g).is_identity else 2 for g in reps]

    def rec(i, resto):
        if i == len(reps):
            yield {}
            return
        g, c = reps[i], custos[i]
        for k in range(resto // c + 1):
            for resto_kappa in rec(i + 1, resto - k * c):
                yield {g: k, **resto_kappa}

    for kappa_rep in rec(0, custo_max):
        kappa = {}
        for g, k in kappa_rep.items():
            if k:
                kappa[g] = k
                kappa[-g] = k
        duas = [g for g in kappa if (g + g).is_identity]
        for sig in product(*(range(-kappa[g], kappa[g] + 1, 2) for g in duas)):
            yield kappa, dict(zip(duas, sig))


@pytest.mark.parametrize("orders", [(2,), (2, 2), (3,)])
def test_jordan_predicate_matches_inverses(orders):
    grupo = FinAbGroup(orders)
    vistos = 0
    for kappa, sigma in _formas(grupo, 5):
        data = JordanFormData(grupo, kappa, sigma)
        jb = jordan_bilinear(grupo, data)
        previsto = jordan_division_predicate(data.kappa, data.sigma, "real")
        assert previsto == bool(graded_division_check(jb, "jordan"))
        bare = graded_division_check(jb, "bare").status
        if previsto:
            assert bare != "not-division"
        else:
            assert bare != "division"
        vistos += 1
    assert vistos > 1


def test_jordan_predicate_complex_and_unknown():
    z2 = FinAbGroup((2,))
    t, e = z2.element((1,)), z2.identity
    assert jordan_division_predicate({t: 1}, {}, "complex")
    assert not jordan_division_predicate({e: 1}, {}, "complex")
    assert not jordan_division_predicate({t: 2}, {}, "complex")
    assert jordan_division_predicate({e: 2}, {e: -2}, "real")
    assert not jordan_division_predicate({e: 2}, {e: 2}, "real")
    with pytest.raises(DescriptorError, match="unknown centroid kind"):
        jordan_division_predicate({t: 1}, {t: 1}, "quaternionic")
    assert graded_division_check(jordan_complex(z2, {t: 1})).status == "division"


def test_jordan_iso_equal_up_to_tau_twist():
    g = FinAbGroup((4,))
    h = subgroup(g, [(2,)])
    q = h.quotient_data
    tbar = q.group.element((1,))
    chi = Character(g, (Q(1, 4),))
    base = jordan_bilinear(q.group, {tbar: 1}, {tbar: 1})
    outro = jordan_bilinear(q.group, {tbar: 1}, {tbar: -1})
    a, b = loop_real(base, q, chi), loop_real(outro, q, chi)
    assert jordan_iso_equal(jordan_descriptor_of(a), jordan_descriptor_of(b))
    terceiro = jordan_bilinear(q.group, {tbar: 3}, {tbar: 1})
    c = loop_real(terceiro, q, chi)
    assert not jordan_iso_equal(jordan_descriptor_of(a), jordan_descriptor_of(c))


@pytest.mark.parametrize("orders, hgens, esperado", [
    ((4,), [(2,)], 1),
    ((2, 2), [(0, 1)], -1),
])
def test_jordan_sigma_canonical_uses_tau(orders, hgens, esperado):
    g = FinAbGroup(orders)
    q = subgroup(g, hgens).quotient_data
    tbar = q.group.element((1,))
    canon = jordan_sigma_canonical({tbar: 1}, {tbar: -1}, tau_on_two_torsion(q))
    assert canon == {tbar: esperado}


# ── Impressao digital ──

def test_idempotent_count(monkeypatch):
    import config

    dois = direct_sum(real_field(), real_field())
    assert idempotent_count(dois) == 2
    assert idempotent_count(real_field()) == 0
    monkeypatch.setattr(config, "ORACLE_WIDTH", 2)
    assert idempotent_count(dois) is None


def test_fingerprint_summary_is_plain_data():
    b = twisted_group_algebra(FinAbGroup((4,)), Character(FinAbGroup((4,)), (Q(1, 4),)))
    fp = fingerprint(b)
    assert fp.diff(fingerprint(b)) == []
    assert fp.square_signs == square_sign_profile(b)
    assert isinstance(fp.summary(), dict)
