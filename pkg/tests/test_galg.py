from fractions import Fraction

import pytest

from abgroup import TRIVIAL, FinAbGroup, hom_from_images, identity_hom
from constructions import octonion_graded, quaternion_graded, real_field
from galg import (
    GradedAlgebra, Verdict, centroid, check_identity, component_square_signs, direct_sum,
    graded_division_check, graded_simple_check, homogeneous, homogeneous_inverse, induced_grading,
    map_from_columns, multiply, tensor, verify_iso, weak_equivalence_check,
)
from utils import GradingError, GradRealError

Z2_3 = FinAbGroup((2, 2, 2))


@pytest.fixture(scope="module")
def octonions():
    """Octonions de divisao com a Z2^3-graduacao fina."""
    return octonion_graded(Z2_3, Z2_3.gens(), [1, 1, 1]).algebra


# ── Verdict ──

def test_verdict_truthiness():
    assert Verdict("pass")
    assert Verdict("division")
    assert not Verdict("fail", ("a", "b"))
    assert Verdict("probably-simple").undecided
    assert not Verdict("probably-simple")
    assert str(Verdict("fail", "x")) == "fail (witness: x)"


# ── Construcao ──

def test_rejects_product_of_wrong_degree():
    g = FinAbGroup((2,))
    with pytest.raises(GradingError, match="expected"):
        GradedAlgebra(g, ("1", "x"), (g.identity, g.gen(0)), {(1, 1): {1: Fraction(1)}})


def test_rejects_one_sided_unit():
    e = TRIVIAL.identity
    sc = {(0, 0): {0: Fraction(1)}, (0, 1): {1: Fraction(1)}}
    with pytest.raises(GradingError, match="two-sided"):
        GradedAlgebra(TRIVIAL, ("1", "x"), (e, e), sc, unit={0: Fraction(1)})


def test_multiply_dense_and_sparse(octonions):
    um = [0] * octonions.dim
    um[0] = 1
    assert multiply(octonions, um, um) == um
    assert multiply(octonions, {1: 1}, {1: 1}) == {0: -1}
    with pytest.raises(GradRealError, match="dimension"):
        multiply(octonions, [1, 0], [1, 0])


def test_homogeneous_elements(octonions):
    x = homogeneous(octonions, {1: 3})
    assert x.degree == octonions.degrees[1]
    with pytest.raises(GradingError, match="zero vector"):
        homogeneous(octonions, {})
    with pytest.raises(GradingError, match="not homogeneous"):
        homogeneous(octonions, {0: 1, 1: 1})


# ── Identidades e inversos ──

def test_check_identity_on_octonions(octonions):
    assert check_identity(octonions, "alternative")
    falha = check_identity(octonions, "associative")
    assert falha.status == "fail"
    assert len(falha.witness) == 3
    assert not check_identity(octonions, "commutative")
    with pytest.raises(GradRealError, match="unknown identity"):
        check_identity(octonions, "lie")


def test_quaternion_inverse():
    h = quaternion_graded(TRIVIAL).algebra
    assert homogeneous_inverse(h, {1: 1}) == {1: Fraction(-1)}
    assert homogeneous_inverse(h, {}) is None


def test_inverse_requires_unit():
    b = GradedAlgebra(TRIVIAL, ("a",), (TRIVIAL.identity,), {})
    with pytest.raises(GradRealError, match="unital"):
        homogeneous_inverse(b, {0: 1})
    with pytest.raises(GradRealError, match="unital"):
        graded_division_check(b)


# ── Divisao, simplicidade, centroide ──

def test_octonions_are_graded_division(octonions):
    assert graded_division_check(octonions).status == "division"
    assert graded_division_check(octonions, "bare").status == "division"


def test_unknown_division_mode(octonions):
    with pytest.raises(GradRealError, match="unknown division mode"):
        graded_division_check(octonions, "magic")
    with pytest.raises(GradRealError, match="Jordan"):
        graded_division_check(octonions, "jordan")


def test_graded_simple(octonions):
    assert graded_simple_check(octonions).status == "simple"
    dois = direct_sum(real_field(), real_field())
    assert dois.labels == ("1", "1'")
    assert graded_simple_check(dois).status == "not-simple"


def test_zero_square_is_not_simple():
    b = GradedAlgebra(TRIVIAL, ("a",), (TRIVIAL.identity,), {})
    v = graded_simple_check(b)
    assert v.status == "not-simple"
    assert v.witness == "B^2 = 0"


def test_centroid_of_central_octonions(octonions):
    rep = centroid(octonions)
    assert rep.dimension == 1
    assert rep.identity_dim == 1
    assert rep.split is True
    assert rep.support.order == 1


@pytest.mark.parametrize("mu", [[1, 1, 1], [-1, 1, 1], [-1, -1, 1]])
def test_component_square_signs_follow_norm(mu):
    b = octonion_graded(Z2_3, Z2_3.gens(), mu).algebra
    sinais = component_square_signs(b)
    assert len(sinais) == Z2_3.size
    assert sinais[Z2_3.identity] == (1, 0, 0)
    for g in Z2_3.elements():
        if g.is_identity:
            continue
        # x^2 = -n(x) para x imaginario
        assert sinais[g] == ((1, 0, 0) if b.descriptor.mu_of(g) == -1 else (0, 1, 0))


# ── Mapas e graduacoes ──

def test_verify_iso_identity_and_singular(octonions):
    n = octonions.dim
    ident = map_from_columns(octonions, octonions, [{i: Fraction(1)} for i in range(n)])
    assert verify_iso(ident)
    zero = map_from_columns(octonions, octonions, [{} for _ in range(n)])
    assert verify_iso(zero).witness == "matrix is singular"
    troca = map_from_columns(octonions, octonions,
                             [{0: Fraction(1)}, {2: Fraction(1)}, {1: Fraction(1)}]
                             + [{i: Fraction(1)} for i in range(3, n)])
    assert not verify_iso(troca)


def test_induced_grading_coarsens(octonions):
    z2 = FinAbGroup((2,))
    alpha = hom_from_images(Z2_3, z2, [z2.gen(0)] * 3)
    coarse = induced_grading(octonions, alpha)
    assert coarse.group == z2
    assert len(coarse.component(z2.identity)) == 4
    assert coarse.descriptor is None
    with pytest.raises(GradingError):
        induced_grading(coarse, alpha)


def test_weak_equivalence_needs_bijection(octonions):
    z2 = FinAbGroup((2,))
    alpha = hom_from_images(Z2_3, z2, [z2.gen(0)] * 3)
    n = octonions.dim
    f = map_from_columns(octonions, octonions, [{i: Fraction(1)} for i in range(n)])
    assert weak_equivalence_check(octonions, octonions, alpha, f).witness == "alpha is not a group isomorphism"
    assert weak_equivalence_check(octonions, octonions, identity_hom(Z2_3), f)


def test_tensor_of_fields():
    c = quaternion_graded(TRIVIAL).algebra
    t = tensor(real_field(), c)
    assert t.dim == 4
    assert t.labels[1] == "1|i"
    with pytest.raises(GradingError, match="different groups"):
        tensor(real_field(FinAbGroup((2,))), c)
