"""
GradReal - Construtores
Algebras de grupo torcidas, algebras de lacos (split e reais), torcoes por
cociclo, duplicacao de Cayley-Dickson graduada, familias de octonions,
octonions de Cartan (tabela de Zorn), modelos de Jordan e as familias
nomeadas da classificacao.

Cada construtor devolve uma GradedAlgebra imutavel; os que nascem de dados
de parametros gravam esses dados em `descriptor` para os decisores.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from abgroup import (
    TRIVIAL, FinAbGroup, GroupElement, GroupHom, QuotientData, SubgroupData,
    power_subgroup, product_group, quotient, quotient_by_hom,
    trivial_hom, whole_group,
)
from chars import Character, char_eval, cocycle_of, trivial_character
from galg import (
    KINDS_ASSOCIATIVOS, ONE, ZERO, GradedAlgebra, GradedLinearMap, JordanMeta,
    NormData, Verdict, check_identity, homogeneous_inverse, induced_grading,
    map_from_columns, tensor, vec_add, vec_clean, vec_scale, verify_iso,
)
from utils import ConstructionError, log

NOMES_CD = ("i", "j", "l")


# ============================================================================
# Descritores (dados de parametros que viajam com a algebra)
# ============================================================================

@dataclass(frozen=True)
class CDData:
    """C(Tbar, mu): base de Tbar e sinais mu nela; level em {O, H, C}."""

    basis: tuple
    mu: tuple
    level: str = "O"

    def mu_of(self, x: GroupElement) -> int:
        """mu estendido a Tbar (coordenadas na base, que e independente)."""
        for coefs in product((0, 1), repeat=len(self.basis)):
            y = x.parent.identity
            for c, t in zip(coefs, self.basis):
                if c:
                    y = y + t
            if y == x:
                s = 1
                for c, m in zip(coefs, self.mu):
                    if c:
                        s *= m
                return s
        raise ConstructionError(f"{x} is not in the span of the Cayley-Dickson basis")


@dataclass(frozen=True)
class CartanData:
    triple: tuple


@dataclass(frozen=True)
class ComplexData:
    base: object = None


@dataclass(frozen=True)
class LoopDescriptor:
    """Projecao pi: G -> Gbar (via dados de quociente) e caractere chi em G."""

    quotient: QuotientData
    chi: Character
    base: object = None

    @property
    def projection(self) -> GroupHom:
        return self.quotient.projection

    @property
    def subgroup(self) -> SubgroupData:
        return self.quotient.subgroup

    @property
    def ambient(self) -> FinAbGroup:
        return self.quotient.ambient


@dataclass(frozen=True, eq=False)
class JordanFormData:
    """
    kappa: grau -> dim V_g (balanceado); sigma: grau de ordem <= 2 -> assinatura.
    |sigma| <= kappa e sigma = kappa mod 2.
    """

    group: FinAbGroup
    kappa: dict
    sigma: dict = field(default_factory=dict)

    def __post_init__(self):
        kappa, sigma = {}, {}
        for g, k in self.kappa.items():
            g = self._el(g)
            k = int(k)
            if k < 0:
                raise ConstructionError(f"kappa({g}) = {k} is negative")
            if k:
                kappa[g] = k
        for g, k in kappa.items():
            if kappa.get(-g, 0) != k:
                raise ConstructionError(f"kappa is not balanced at {g}")
        for g, s in self.sigma.items():
            g = self._el(g)
            s = int(s)
            if not (g + g).is_identity:
                raise ConstructionError(f"sigma given at {g}, which has order > 2")
            k = kappa.get(g, 0)
            if abs(s) > k or (k - s) % 2:
                raise ConstructionError(f"sigma({g}) = {s} out of range for kappa = {k}")
            sigma[g] = s
        object.__setattr__(self, "kappa", kappa)
        object.__setattr__(self, "sigma", sigma)

    def _el(self, g) -> GroupElement:
        if isinstance(g, GroupElement):
            if g.parent != self.group:
                raise ConstructionError(f"degree {g} is not in {self.group}")
            return g
        return self.group.element(g)

    @property
    def dim(self) -> int:
        return 1 + sum(self.kappa.values())

    def __eq__(self, other):
        return (isinstance(other, JordanFormData) and self.group == other.group
                and self.kappa == other.kappa and self.sigma == other.sigma)


# ============================================================================
# Estrutura de composicao
# ============================================================================

@dataclass(frozen=True)
class CompositionStructure:
    """Algebra com involucao padrao; norma n(x) = x xbar com valores em L."""

    algebra: GradedAlgebra

    def __post_init__(self):
        if self.algebra.composition is None:
            raise ConstructionError("algebra carries no composition data")

    @property
    def field_part(self) -> tuple:
        return self.algebra.composition.field_part

    @property
    def involution(self) -> GradedLinearMap:
        b = self.algebra
        return map_from_columns(b, b, [b.composition.involution[i] for i in range(b.dim)])

    def conj(self, x: dict) -> dict:
        return self.algebra.composition.conj(x)

    def norm(self, x: dict, y: dict = None) -> dict:
        """n(x) = x xbar; com y, a forma polar (x ybar + y xbar) / 2."""
        b = self.algebra
        if y is None:
            return b.mul(x, self.conj(x))
        return vec_scale(vec_add(b.mul(x, self.conj(y)), b.mul(y, self.conj(x))), Fraction(1, 2))

    def certify(self) -> Verdict:
        """involucao de quadrado 1, fixa L, x + xbar e n(x) em L no grau certo."""
        b = self.algebra
        fp = set(self.field_part)
        for i in range(b.dim):
            x = {i: ONE}
            xb = self.conj(x)
            if b.degree_of(xb) not in (None, b.degrees[i]) or self.conj(xb) != x:
                return Verdict("fail", (b.labels[i], "involution"))
            if i in fp and xb != x:
                return Verdict("fail", (b.labels[i], "involution moves L"))
            if any(k not in fp for k in vec_add(x, xb)):
                return Verdict("fail", (b.labels[i], "x + xbar not in L"))
            n = self.norm(x)
            if any(k not in fp or b.degrees[k] != b.degrees[i] + b.degrees[i] for k in n):
                return Verdict("fail", (b.labels[i], "norm leaves L"))
        return Verdict("pass")


def composition_of(b) -> CompositionStructure:
    if isinstance(b, CompositionStructure):
        return b
    return CompositionStructure(b)


def check_norm_multiplicative(b) -> Verdict:
    """n(b_i b_j) = n(b_i) n(b_j) em todos os pares da base."""
    cs = composition_of(b)
    a = cs.algebra
    normas = [cs.norm({i: ONE}) for i in range(a.dim)]
    for i in range(a.dim):
        for j in range(a.dim):
            if cs.norm(a.bmul(i, j)) != a.mul(normas[i], normas[j]):
                return Verdict("fail", (a.labels[i], a.labels[j]))
    return Verdict("pass")


# ============================================================================
# Auxiliares
# ============================================================================

def _as_quotient(pi) -> QuotientData:
    if isinstance(pi, QuotientData):
        return pi
    if isinstance(pi, GroupHom):
        return quotient_by_hom(pi)
    if isinstance(pi, SubgroupData):
        return pi.quotient_data
    raise ConstructionError(f"expected a projection or quotient, got {type(pi).__name__}")


def _base(a) -> GradedAlgebra:
    return a.algebra if isinstance(a, CompositionStructure) else a


def _shift(v: dict, off: int, c=ONE) -> dict:
    return {k + off: c * x for k, x in v.items()}


def _is_associative(a: GradedAlgebra) -> bool:
    return a.kind in KINDS_ASSOCIATIVOS or bool(check_identity(a, "associative"))


def _lambda_sign(lam, q: QuotientData):
    """lambda: H -> {+-1} como funcao em elementos do ambiente."""
    h = q.subgroup
    if lam is None:
        def sinal(x):
            return 1
    elif isinstance(lam, Character):
        if lam.group == q.ambient:
            def sinal(x):
                return lam.sign(x)
        elif lam.group == h.presentation[0]:
            def sinal(x):
                return lam.sign(h.to_presentation(x))
        else:
            raise ConstructionError(f"lambda lives on {lam.group}, expected a character on H = {h}")
    elif isinstance(lam, dict):
        tabela = dict(lam)

        def sinal(x):
            return tabela.get(x, 1)
    elif callable(lam):
        sinal = lam
    else:
        raise ConstructionError("lambda must be a character, a sign table or a callable")
    for x in h.elements:
        if sinal(x) not in (1, -1):
            raise ConstructionError(f"lambda({x}) is not a sign")
    return sinal


def loop_basis(a: GradedAlgebra, q: QuotientData) -> list:
    """Pares (i, g) com deg a_i = pi(g); g em ordem lexicografica, depois i."""
    out = []
    for g in q.ambient.elements():
        for i in a.component(q.projection.apply(g)):
            out.append((i, g))
    return out


def _loop_label(rotulo: str, g: GroupElement) -> str:
    if rotulo == "1":
        return "1" if g.is_identity else f"u{g}"
    return f"{rotulo}@{g}"


# ============================================================================
# Corpos graduados e algebras de grupo torcidas
# ============================================================================

def real_field(g: FinAbGroup = TRIVIAL) -> GradedAlgebra:
    """R trivialmente graduado por G."""
    e = g.identity
    return GradedAlgebra(
        group=g,
        labels=("1",),
        degrees=(e,),
        sc={(0, 0): {0: ONE}},
        unit={0: ONE},
        composition=NormData((0,), {0: {0: ONE}}),
        kind="field",
    )


def twisted_group_algebra(g: FinAbGroup, chi: Character = None) -> GradedAlgebra:
    """R^gamma G com u_{g1} u_{g2} = gamma(g1, g2) u_{g1 g2}; chi trivial da RG."""
    q = QuotientData(TRIVIAL, trivial_hom(g), whole_group(g))
    return _loop(real_field(TRIVIAL), q, chi)


def graded_field(h, chi: Character = None) -> GradedAlgebra:
    """
    D_H = L_pi^chi(R). Com um grupo: R^gamma H. Com subgrupo ou quociente:
    graduado pelo ambiente, suporte H.
    """
    if isinstance(h, FinAbGroup):
        return twisted_group_algebra(h, chi)
    q = _as_quotient(h)
    return loop_real(real_field(q.group), q, chi)


def graded_field_family(n: int) -> GradedAlgebra:
    """(n) = R[x]/(x^{2^n} - 1) e (-n) = R[x]/(x^{2^n} + 1), deg x = 1 em Z_{2^|n|}."""
    n = int(n)
    if n == 0:
        return real_field(TRIVIAL)
    g = FinAbGroup((2 ** abs(n),))
    rot = Fraction(1, 2 ** abs(n)) if n < 0 else Fraction(0)
    return twisted_group_algebra(g, Character(g, (rot,)))


# ============================================================================
# Algebras de lacos
# ============================================================================

def _loop(a: GradedAlgebra, q: QuotientData, chi: Character = None) -> GradedAlgebra:
    if a.group != q.group:
        raise ConstructionError(f"algebra is graded by {a.group}, projection lands in {q.group}")
    if chi is not None and chi.group != q.ambient:
        raise ConstructionError(f"character lives on {chi.group}, loop group is {q.ambient}")
    gamma = cocycle_of(chi) if chi is not None and not chi.is_trivial else None
    base = loop_basis(a, q)
    pos = {ig: t for t, ig in enumerate(base)}
    fibras = {}
    for i, g in base:
        fibras.setdefault(a.degrees[i], {})[g] = True
    sc = {}
    for (i, j), prod in a.sc.items():
        for g1 in fibras.get(a.degrees[i], ()):
            for g2 in fibras.get(a.degrees[j], ()):
                c = gamma(g1, g2) if gamma else 1
                g = g1 + g2
                sc[(pos[(i, g1)], pos[(j, g2)])] = {pos[(k, g)]: c * x for k, x in prod.items()}
    e = q.ambient.identity
    unit = {pos[(k, e)]: c for k, c in a.unit.items()} if a.is_unital else None
    composition = None
    if a.composition is not None:
        fp = set(a.composition.field_part)
        inv = {t: {pos[(k, g)]: c for k, c in a.composition.involution[i].items()}
               for t, (i, g) in enumerate(base)}
        composition = NormData(tuple(t for t, (i, _) in enumerate(base) if i in fp), inv)
    chi = chi if chi is not None else trivial_character(q.ambient)
    log("TABELA", f"loop of dim {a.dim} over {q.group} -> {q.ambient}: dim {len(base)}")
    return GradedAlgebra(
        group=q.ambient,
        labels=tuple(_loop_label(a.labels[i], g) for i, g in base),
        degrees=tuple(g for _, g in base),
        sc=sc,
        unit=unit,
        composition=composition,
        descriptor=LoopDescriptor(q, chi, a.descriptor),
        kind=a.kind,
    )


def loop_split(a: GradedAlgebra, pi) -> GradedAlgebra:
    """L_pi(A) = soma de A_{pi(g)} (x) g."""
    return _loop(_base(a), _as_quotient(pi), None)


def loop_real(a: GradedAlgebra, pi, chi: Character = None) -> GradedAlgebra:
    """L_pi^chi(A) = soma de A_{pi(g)} (x) u_g dentro de A (x) R^gamma G."""
    return _loop(_base(a), _as_quotient(pi), chi)


# ============================================================================
# Torcao por cociclo
# ============================================================================

def cocycle_twist(a: GradedAlgebra, lam, q) -> GradedAlgebra:
    """a1 * a2 = lambda(sigma(g1, g2)) a1 a2."""
    a = _base(a)
    q = _as_quotient(q)
    if a.group != q.group:
        raise ConstructionError(f"algebra is graded by {a.group}, quotient is {q.group}")
    sinal = _lambda_sign(lam, q)
    sc = {}
    for (i, j), prod in a.sc.items():
        s = sinal(q.sigma(a.degrees[i], a.degrees[j]))
        sc[(i, j)] = prod if s == 1 else vec_scale(prod, -1)
    return a.with_(sc=sc, descriptor=None)


def twist_rescaling_map(a: GradedAlgebra, lam, q) -> GradedLinearMap:
    """A -> A^lambda, a -> lambda(xi(g) - s(g)) a, com s secao homomorfica."""
    a = _base(a)
    q = _as_quotient(q)
    s = q.hom_section
    if s is None:
        raise ConstructionError(f"{q.subgroup} is not a direct summand of {q.ambient}")
    sinal = _lambda_sign(lam, q)
    alvo = cocycle_twist(a, lam, q)
    cols = []
    for i, g in enumerate(a.degrees):
        cols.append({i: Fraction(sinal(q.section(g) - s.apply(g)))})
    return map_from_columns(a, alvo, cols)


# ============================================================================
# Cayley-Dickson
# ============================================================================

def _field_element(a: GradedAlgebra, alpha) -> dict:
    if isinstance(alpha, dict):
        return vec_clean(alpha)
    if not a.is_unital:
        raise ConstructionError("scalar parameter needs a unital base")
    return vec_scale(a.unit, alpha)


def cayley_dickson(cs, alpha, k: GroupElement, nome: str = "w") -> CompositionStructure:
    """
    CD(A, alpha) = A + Aw, w de grau k, alpha em L_{2k} invertivel:
    (a + bw)(c + dw) = (ac + alpha dbar b) + (da + b cbar) w.
    """
    a = _base(cs)
    nd = a.composition
    if nd is None:
        raise ConstructionError("base has no composition structure")
    if k.parent != a.group:
        raise ConstructionError(f"degree {k} is not in {a.group}")
    if not _is_associative(a):
        raise ConstructionError("base not associative: doubling past the octonion level is not supported")
    alfa = _field_element(a, alpha)
    fp = set(nd.field_part)
    if not alfa or any(i not in fp for i in alfa) or a.degree_of(alfa) != k + k:
        raise ConstructionError(f"alpha not in L_{k + k}")
    if homogeneous_inverse(a, alfa) is None:
        raise ConstructionError("alpha not invertible")
    n = a.dim
    conj = [nd.involution[i] for i in range(n)]
    sc = {}
    for i in range(n):
        ei = {i: ONE}
        for j in range(n):
            p = a.bmul(i, j)
            if p:
                sc[(i, j)] = dict(p)
            # a_i (a_j w) = (a_j a_i) w
            p = a.bmul(j, i)
            if p:
                sc[(i, n + j)] = _shift(p, n)
            # (a_i w) a_j = (a_i conj(a_j)) w
            p = a.mul(ei, conj[j])
            if p:
                sc[(n + i, j)] = _shift(p, n)
            # (a_i w)(a_j w) = alpha conj(a_j) a_i
            p = a.mul(alfa, a.mul(conj[j], ei))
            if p:
                sc[(n + i, n + j)] = p
    inv = dict(nd.involution)
    inv.update({n + i: {n + i: -ONE} for i in range(n)})
    comutativa = a.kind in ("field", "commutative") or bool(check_identity(a, "commutative"))
    if comutativa:
        trivial = all(conj[i] == {i: ONE} for i in range(n))
        kind = "commutative" if trivial else "associative"
    else:
        kind = "alternative"
    b = GradedAlgebra(
        group=a.group,
        labels=a.labels + tuple(nome if s == "1" else f"{s}.{nome}" for s in a.labels),
        degrees=a.degrees + tuple(g + k for g in a.degrees),
        sc=sc,
        unit=a.unit,
        composition=NormData(nd.field_part, inv),
        kind=kind,
    )
    log("TABELA", f"Cayley-Dickson double of dim {n}, w of degree {k}: {kind}")
    return CompositionStructure(b)


def _cd_chain(base: GradedAlgebra, passos: list, nomes=NOMES_CD) -> GradedAlgebra:
    cs = base
    for (alpha, k), nome in zip(passos, nomes):
        cs = cayley_dickson(cs, alpha, k, nome)
    return _base(cs)


def _check_tbar(tbar: list, mu: list, max_rank: int, group: FinAbGroup):
    if len(tbar) > max_rank:
        raise ConstructionError(f"rank {len(tbar)} too large (at most {max_rank})")
    if len(mu) != len(tbar):
        raise ConstructionError("one sign of mu per basis element is required")
    for t in tbar:
        if t.parent != group:
            raise ConstructionError(f"{t} is not in {group}")
        if t.is_identity or not (t + t).is_identity:
            raise ConstructionError(f"basis element {t} must have order 2")
    if tbar and SubgroupData(group, tuple(tbar)).order != 2 ** len(tbar):
        raise ConstructionError("basis not independent")
    for m in mu:
        if m not in (1, -1):
            raise ConstructionError(f"mu value {m} is not a sign")


def _hurwitz_graded(group: FinAbGroup, tbar, mu, passos: int, level: str) -> CompositionStructure:
    tbar = [t if isinstance(t, GroupElement) else group.element(t) for t in tbar]
    mu = [int(m) for m in mu]
    _check_tbar(tbar, mu, passos, group)
    e = group.identity
    pad = passos - len(tbar)
    steps = [(-1, e)] * pad + [(-m, t) for m, t in zip(mu, tbar)]
    b = _cd_chain(real_field(group), steps)
    b = b.with_(descriptor=CDData(tuple(tbar), tuple(mu), level))
    return CompositionStructure(b)


def octonion_graded(group: FinAbGroup, tbar=(), mu=()) -> CompositionStructure:
    """C(Tbar, mu) = CD(R, (-mu(t1), t1), (-mu(t2), t2), (-mu(t3), t3)), tj = e nos primeiros 3 - r."""
    return _hurwitz_graded(group, tbar, mu, 3, "O")


def quaternion_graded(group: FinAbGroup, tbar=(), mu=()) -> CompositionStructure:
    return _hurwitz_graded(group, tbar, mu, 2, "H")


def binarion_graded(group: FinAbGroup, tbar=(), mu=()) -> CompositionStructure:
    return _hurwitz_graded(group, tbar, mu, 1, "C")


# ============================================================================
# Octonions de Cartan (vetores-matrizes de Zorn)
# ============================================================================

ZORN_LABELS = ("e1", "e2", "u1", "u2", "u3", "v1", "v2", "v3")


def _zorn_table() -> dict:
    e1, e2, u, v = 0, 1, (2, 3, 4), (5, 6, 7)
    sc = {(e1, e1): {e1: ONE}, (e2, e2): {e2: ONE}}
    for i in range(3):
        j, l = (i + 1) % 3, (i + 2) % 3
        sc[(e1, u[i])] = {u[i]: ONE}
        sc[(u[i], e2)] = {u[i]: ONE}
        sc[(e2, v[i])] = {v[i]: ONE}
        sc[(v[i], e1)] = {v[i]: ONE}
        sc[(u[i], v[i])] = {e1: -ONE}
        sc[(v[i], u[i])] = {e2: -ONE}
        sc[(u[i], u[j])] = {v[l]: ONE}
        sc[(u[j], u[i])] = {v[l]: -ONE}
        sc[(v[i], v[j])] = {u[l]: ONE}
        sc[(v[j], v[i])] = {u[l]: -ONE}
    return sc


def _zorn_involution() -> dict:
    inv = {0: {1: ONE}, 1: {0: ONE}}
    inv.update({k: {k: -ONE} for k in range(2, 8)})
    return inv


def _certifica_zorn(b: GradedAlgebra):
    alt = check_identity(b, "alternative")
    if not alt:
        raise ConstructionError(f"Zorn table failed alternativity at {alt.witness}")
    nd = NormData((), _zorn_involution())
    um = b.unit

    def norma(x):
        nx = b.mul(x, nd.conj(x))
        c = nx.get(0, ZERO)
        if nx != vec_scale(um, c):
            raise ConstructionError("Zorn table: x xbar is not a scalar")
        return c

    normas = [norma({i: ONE}) for i in range(b.dim)]
    for i in range(b.dim):
        for j in range(b.dim):
            if norma(b.bmul(i, j)) != normas[i] * normas[j]:
                raise ConstructionError(f"Zorn table: norm not multiplicative on ({b.labels[i]}, {b.labels[j]})")


def cartan_octonion(g1: GroupElement, g2: GroupElement, g3: GroupElement) -> GradedAlgebra:
    """O_s com deg e_i = e, deg u_i = g_i, deg v_i = -g_i; exige g1 g2 g3 = e."""
    grupo = g1.parent
    if g2.parent != grupo or g3.parent != grupo:
        raise ConstructionError("triple elements live in different groups")
    if not (g1 + g2 + g3).is_identity:
        raise ConstructionError(f"triple ({g1}, {g2}, {g3}) does not multiply to the identity")
    e = grupo.identity
    b = GradedAlgebra(
        group=grupo,
        labels=ZORN_LABELS,
        degrees=(e, e, g1, g2, g3, -g1, -g2, -g3),
        sc=_zorn_table(),
        unit={0: ONE, 1: ONE},
        descriptor=CartanData((g1, g2, g3)),
        kind="alternative",
    )
    _certifica_zorn(b)
    log("TABELA", f"Cartan octonions for ({g1}, {g2}, {g3}) certified")
    return b


# ============================================================================
# Complexificacao
# ============================================================================

def complexify(a: GradedAlgebra) -> GradedAlgebra:
    """A (x) C realificada: I central de grau e, I^2 = -1."""
    a = _base(a)
    n = a.dim
    sc = {}
    for (i, j), p in a.sc.items():
        sc[(i, j)] = dict(p)
        sc[(i, n + j)] = _shift(p, n)
        sc[(n + i, j)] = _shift(p, n)
        sc[(n + i, n + j)] = vec_scale(p, -1)
    composition = None
    if a.composition is not None:
        nd = a.composition
        inv = dict(nd.involution)
        inv.update({n + i: _shift(nd.involution[i], n) for i in range(n)})
        composition = NormData(nd.field_part + tuple(n + f for f in nd.field_part), inv)
    jordan = None
    if a.jordan is not None:
        jm = a.jordan
        jordan = JordanMeta(jm.unit_index, jm.v_indices + tuple(n + v for v in jm.v_indices),
                            True, n + jm.unit_index)
    return GradedAlgebra(
        group=a.group,
        labels=a.labels + tuple("I" if s == "1" else f"I.{s}" for s in a.labels),
        degrees=a.degrees + a.degrees,
        sc=sc,
        unit=a.unit,
        composition=composition,
        jordan=jordan,
        descriptor=ComplexData(a.descriptor),
        kind=a.kind,
    )


# ============================================================================
# Jordan
# ============================================================================

def jordan_bilinear(group: FinAbGroup, kappa, sigma: dict = None) -> GradedAlgebra:
    """
    J(V, b) = R1 + V, uv = b(u,v)1. Base: blocos definidos (positivos, depois
    negativos) em cada grau de ordem <= 2, depois pares hiperbolicos (primal, dual).
    """
    data = kappa if isinstance(kappa, JordanFormData) else JordanFormData(group, kappa, sigma or {})
    if data.group != group:
        raise ConstructionError(f"form data lives on {data.group}, expected {group}")
    e = group.identity
    labels, degrees, quadrados = ["1"], [e], []
    pares = []
    for g in sorted(data.kappa):
        if not (g + g).is_identity:
            continue
        k = data.kappa[g]
        if g not in data.sigma:
            raise ConstructionError(f"sigma missing at {g}")
        p = (k + data.sigma[g]) // 2
        for t in range(k):
            labels.append(f"v{len(labels)}")
            degrees.append(g)
            quadrados.append((len(labels) - 1, ONE if t < p else -ONE))
    for g in sorted(data.kappa):
        if (g + g).is_identity or not g < -g:
            continue
        for _ in range(data.kappa[g]):
            labels.append(f"v{len(labels)}")
            degrees.append(g)
            labels.append(f"v{len(labels)}")
            degrees.append(-g)
            pares.append((len(labels) - 2, len(labels) - 1))
    n = len(labels)
    sc = {(0, 0): {0: ONE}}
    for i in range(1, n):
        sc[(0, i)] = {i: ONE}
        sc[(i, 0)] = {i: ONE}
    for i, c in quadrados:
        sc[(i, i)] = {0: c}
    for x, y in pares:
        sc[(x, y)] = {0: ONE}
        sc[(y, x)] = {0: ONE}
    inv = {0: {0: ONE}}
    inv.update({i: {i: -ONE} for i in range(1, n)})
    b = GradedAlgebra(
        group=group,
        labels=tuple(labels),
        degrees=tuple(degrees),
        sc=sc,
        unit={0: ONE},
        composition=NormData((0,), inv),
        jordan=JordanMeta(0, tuple(range(1, n))),
        descriptor=data,
        kind="jordan",
    )
    log("TABELA", f"J(V,b) over {group}: dim {n}")
    return b


def jordan_complex(group: FinAbGroup, kappa: dict) -> GradedAlgebra:
    """Variante complexa realificada (sem sigma)."""
    forma = JordanFormData(group, kappa, {})
    sigma = {g: k for g, k in forma.kappa.items() if (g + g).is_identity}
    real = jordan_bilinear(group, JordanFormData(group, forma.kappa, sigma))
    return complexify(real).with_(descriptor=ComplexData(forma))


def jordan_over_graded_field(field_alg: GradedAlgebra, degrees, gram) -> GradedAlgebra:
    """
    J(V, B) = L1 + V com V livre sobre L de base v_1..v_m (graus dados) e
    B(v_j, v_k) em L_{g_j g_k}. `gram`: dict (j, k) -> vetor de L (indices de
    1 a m), ou lista com os coeficientes diagonais.
    """
    lf = _base(field_alg)
    if not lf.is_unital or not (lf.kind in ("field", "commutative")
                                or (check_identity(lf, "commutative") and check_identity(lf, "associative"))):
        raise ConstructionError("coefficient algebra must be a unital commutative associative graded algebra")
    degrees = [g if isinstance(g, GroupElement) else lf.group.element(g) for g in degrees]
    m = len(degrees)
    if isinstance(gram, (list, tuple)):
        gram = {(j + 1, j + 1): c for j, c in enumerate(gram)}
    forma = {}
    for (j, k), c in gram.items():
        if not (1 <= j <= m and 1 <= k <= m):
            raise ConstructionError(f"gram entry ({j}, {k}) out of range")
        v = _field_element(lf, c)
        if not v:
            continue
        alvo = degrees[j - 1] + degrees[k - 1]
        if lf.degree_of(v) != alvo:
            raise ConstructionError(f"coefficient B(v{j},v{k}) in wrong component (expected {alvo})")
        chave = (min(j, k), max(j, k))
        if chave in forma and forma[chave] != v:
            raise ConstructionError(f"gram matrix is not symmetric at ({j}, {k})")
        forma[chave] = v
    nl = lf.dim

    def idx(a, j):
        return j * nl + a

    labels, grau = [], []
    for j in range(m + 1):
        for a in range(nl):
            labels.append(lf.labels[a] if j == 0 else f"{lf.labels[a]}.v{j}")
            grau.append(lf.degrees[a] if j == 0 else lf.degrees[a] + degrees[j - 1])
    sc = {}
    for (a, c), p in lf.sc.items():
        sc[(idx(a, 0), idx(c, 0))] = dict(p)
        for j in range(1, m + 1):
            sc[(idx(a, 0), idx(c, j))] = {idx(t, j): x for t, x in p.items()}
            sc[(idx(a, j), idx(c, 0))] = {idx(t, j): x for t, x in p.items()}
    for (j, k), v in forma.items():
        for (a, c), p in lf.sc.items():
            prod = lf.mul(p, v)
            if not prod:
                continue
            r = {idx(t, 0): x for t, x in prod.items()}
            sc[(idx(a, j), idx(c, k))] = r
            sc[(idx(c, k), idx(a, j))] = r
    fp = tuple(range(nl))
    inv = {t: {t: ONE if t < nl else -ONE} for t in range(len(labels))}
    return GradedAlgebra(
        group=lf.group,
        labels=tuple(labels),
        degrees=tuple(grau),
        sc=sc,
        unit=dict(lf.unit),
        composition=NormData(fp, inv),
        kind="jordan",
    )


def jordan_model_map(data: JordanFormData, q, chi: Character = None) -> GradedLinearMap:
    """
    Mapa canonico L_pi^chi(J(V,b)) -> J(V,B): 1 (x) u_h -> u_h 1 e
    v_j (x) u_g -> gamma(h, g_j) u_h V_j, com g_j = xi(deg v_j) e h = g - g_j.
    """
    q = _as_quotient(q)
    jb = jordan_bilinear(q.group, data)
    chi = chi if chi is not None else trivial_character(q.ambient)
    src = loop_real(jb, q, chi)
    gamma = cocycle_of(chi)
    rf = real_field(q.group)
    lf = loop_real(rf, q, chi)
    lpos = {g: t for t, (_, g) in enumerate(loop_basis(rf, q))}
    vs = list(jb.jordan.v_indices)
    lifts = [q.section(jb.degrees[v]) for v in vs]
    gram = {}
    for a, va in enumerate(vs):
        for c in range(a, len(vs)):
            bval = jb.bmul(va, vs[c]).get(0, ZERO)
            if bval:
                s = lifts[a] + lifts[c]
                gram[(a + 1, c + 1)] = {lpos[s]: bval * gamma(lifts[a], lifts[c])}
    tgt = jordan_over_graded_field(lf, lifts, gram)
    nl = lf.dim
    ordem = {v: t + 1 for t, v in enumerate(vs)}
    cols = []
    for i, g in loop_basis(jb, q):
        if i == 0:
            cols.append({lpos[g]: ONE})
            continue
        j = ordem[i]
        h = g - lifts[j - 1]
        cols.append({j * nl + lpos[h]: Fraction(gamma(h, lifts[j - 1]))})
    return map_from_columns(src, tgt, cols)


# ============================================================================
# Mapas entre lacos
# ============================================================================

def loop_morphism(psi: GradedLinearMap, lam, q, chi: Character = None,
                  base: GradedAlgebra = None) -> GradedLinearMap:
    """
    psi: A^lambda -> A' gera L(A) -> L(A'):
    a (x) u_g -> lambda(g - xi(pi(g))) psi(a) (x) u_g.
    """
    q = _as_quotient(q)
    ver = verify_iso(psi)
    if not ver:
        raise ConstructionError(f"psi fails verification: {ver.witness}")
    a = base if base is not None else cocycle_twist(psi.source, lam, q)
    sinal = _lambda_sign(lam, q)
    src = loop_real(a, q, chi)
    tgt = loop_real(psi.target, q, chi)
    pos = {ig: t for t, ig in enumerate(loop_basis(psi.target, q))}
    cols = []
    for i, g in loop_basis(a, q):
        c = sinal(g - q.section(q.projection.apply(g)))
        cols.append({pos[(k, g)]: c * x for k, x in psi.column(i).items()})
    return map_from_columns(src, tgt, cols)


def cd_loop_iso(a, q, chi: Character, alpha, k: GroupElement) -> GradedLinearMap:
    """
    L(CD(A, (alpha, kbar))) -> CD(L(A), (alpha u_k^2, k)):
    (a + bw) (x) u_g -> a (x) u_g + (b (x) u_g u_k^{-1}) w.
    """
    a = _base(a)
    q = _as_quotient(q)
    chi = chi if chi is not None else trivial_character(q.ambient)
    kbar = q.projection.apply(k)
    if not (kbar + kbar).is_identity:
        raise ConstructionError(f"{k} must project to an element of order <= 2")
    gamma = cocycle_of(chi)
    cd = cayley_dickson(a, alpha, kbar).algebra
    src = loop_real(cd, q, chi)
    la = loop_real(a, q, chi)
    pos = {ig: t for t, ig in enumerate(loop_basis(a, q))}
    alfa = {pos[(u, k + k)]: Fraction(alpha) * c * gamma(k, k) for u, c in a.unit.items()}
    tgt = cayley_dickson(la, alfa, k).algebra
    n, nn = a.dim, la.dim
    cols = []
    for i, g in loop_basis(cd, q):
        if i < n:
            cols.append({pos[(i, g)]: ONE})
        else:
            c = gamma(k, -k) * gamma(g, -k)
            cols.append({nn + pos[(i - n, g - k)]: Fraction(c)})
    return map_from_columns(src, tgt, cols)


def centroid_module_iso(a: GradedAlgebra, q, chi: Character = None) -> GradedLinearMap:
    """
    H somando direto e chi trivial no complemento s(Gbar):
    D_H (x) ^sA -> L_pi^chi(A), u_h (x) a -> a (x) u_h u_{s(g)}.
    """
    a = _base(a)
    q = _as_quotient(q)
    s = q.hom_section
    if s is None:
        raise ConstructionError(f"{q.subgroup} is not a direct summand of {q.ambient}")
    chi = chi if chi is not None else trivial_character(q.ambient)
    for x in q.group.gens():
        if char_eval(chi, s.apply(x)):
            raise ConstructionError("chi is not trivial on the complement")
    gamma = cocycle_of(chi)
    rf = real_field(q.group)
    campo = loop_real(rf, q, chi)
    src = tensor(campo, induced_grading(a, s))
    tgt = loop_real(a, q, chi)
    pos = {ig: t for t, ig in enumerate(loop_basis(a, q))}
    cols = []
    for _, h in loop_basis(rf, q):
        for i in range(a.dim):
            sg = s.apply(a.degrees[i])
            cols.append({pos[(i, h + sg)]: Fraction(gamma(h, sg))})
    return map_from_columns(src, tgt, cols)


# ============================================================================
# Produtos tensoriais com grupos distintos
# ============================================================================

def loop_descriptor_of(b: GradedAlgebra):
    """Descritor de laco (H trivial quando a algebra nao vem de um laco)."""
    d = b.descriptor
    if isinstance(d, LoopDescriptor):
        return d
    if d is None and b.kind != "field":
        return None
    return LoopDescriptor(quotient(b.group, SubgroupData(b.group, ())), trivial_character(b.group), d)


def _transporta_base(base, f):
    if base is None:
        return None
    if isinstance(base, CDData):
        return CDData(tuple(f(t) for t in base.basis), base.mu, base.level)
    if isinstance(base, CartanData):
        return CartanData(tuple(f(t) for t in base.triple))
    if isinstance(base, ComplexData):
        return ComplexData(_transporta_base(base.base, f))
    if isinstance(base, JordanFormData):
        grupo = f(next(iter(base.kappa))).parent if base.kappa else None
        if grupo is None:
            return None
        return JordanFormData(grupo, {f(g): k for g, k in base.kappa.items()},
                              {f(g): s for g, s in base.sigma.items()})
    return None


def _merge_descriptors(da, db, ia: GroupHom, ib: GroupHom):
    if da is None or db is None:
        return None
    if da.base is not None and db.base is not None:
        return None
    ab = ia.codomain
    gens = [ia.apply(x) for x in da.subgroup.generators] + [ib.apply(x) for x in db.subgroup.generators]
    q = quotient(ab, SubgroupData(ab, tuple(gens)))
    chi = Character(ab, da.chi.rot + db.chi.rot)
    if da.base is not None:
        d, inc = da, ia
    else:
        d, inc = db, ib

    def f(tbar):
        return q.projection.apply(inc.apply(d.quotient.section(tbar)))

    return LoopDescriptor(q, chi, _transporta_base(d.base, f))


def graded_tensor(a: GradedAlgebra, b: GradedAlgebra) -> GradedAlgebra:
    """A (x) B graduada pelo produto dos grupos."""
    a, b = _base(a), _base(b)
    ab, ia, ib = product_group(a.group, b.group)
    t = tensor(induced_grading(a, ia), induced_grading(b, ib))
    desc = _merge_descriptors(loop_descriptor_of(a), loop_descriptor_of(b), ia, ib)
    return t.with_(descriptor=desc)


# ============================================================================
# Familias nomeadas
# ============================================================================

def _curly_family(letra: str, ns, primed: bool = False) -> GradedAlgebra:
    """
    R{n1,n2,n3} = CD(L, (x1,t1), (x2,t2), (x3,t3)), L = (n1) (x) (n2) (x) (n3);
    C{..} e H{..} comecam por (-1, e). x_j = -1 se n_j = 0 (+1 na variante ').
    """
    ns = [int(n) for n in ns]
    esperado = {"R": 3, "C": 2, "H": 1}[letra]
    if len(ns) != esperado:
        raise ConstructionError(f"{letra}{{..}} takes {esperado} integers, got {len(ns)}")
    if primed and (any(n < 0 for n in ns) or 0 not in ns):
        raise ConstructionError("primed families need n_j >= 0 with at least one being 0")
    t = FinAbGroup(tuple(2 ** (abs(n) + 1) for n in ns))
    q = quotient(t, power_subgroup(t, 2))
    chi = Character(t, tuple(Fraction(1, 2 ** (abs(n) + 1)) if n < 0 else Fraction(0) for n in ns))
    gamma = cocycle_of(chi)
    rf = real_field(q.group)
    lf = loop_real(rf, q, chi)
    lpos = {g: i for i, (_, g) in enumerate(loop_basis(rf, q))}
    e = t.identity
    passos = [(-1, e)] * (3 - esperado)
    mu = []
    for j, n in enumerate(ns):
        tj = t.gen(j)
        if n == 0:
            s = 1 if primed else -1
            passos.append((s, tj))
        else:
            s = 1
            passos.append(({lpos[tj + tj]: ONE}, tj))
        mu.append(-s * gamma(tj, tj))
    b = _cd_chain(lf, passos)
    tbar = tuple(q.projection.apply(t.gen(j)) for j in range(len(ns)))
    rotulo = f"{letra}{{{','.join(str(n) for n in ns)}}}" + ("'" if primed else "")
    log("TABELA", f"{rotulo}: dim {b.dim} over {t}")
    return b.with_(descriptor=LoopDescriptor(q, chi, CDData(tbar, tuple(mu), "O")))


def da_family(t: FinAbGroup, h: SubgroupData, chi: Character, mu=None) -> GradedAlgebra:
    """DA(T,H,O) = L_pi^chi(C(Tbar, mu)), chi0 nao trivial; mu = 1 por padrao."""
    q = quotient(t, h)
    _check_elementary(q)
    if chi.group != t:
        raise ConstructionError(f"chi lives on {chi.group}, expected {t}")
    if all(chi.sign(x) == 1 for x in h.elements if (x + x).is_identity):
        raise ConstructionError("chi0 is trivial on H_[2]; use DA(T,H)")
    mu = [1] * q.group.rank if mu is None else list(mu)
    c = octonion_graded(q.group, q.group.gens(), mu).algebra
    return loop_real(c, q, chi)


def _check_elementary(q: QuotientData):
    if not q.group.is_elementary_2() or q.group.rank > 3:
        raise ConstructionError(f"T/H = {q.group} must be an elementary 2-group of rank <= 3")


def da_split(t: FinAbGroup, h: SubgroupData, primed: bool = False, mu=None) -> GradedAlgebra:
    """DA(T,H) = L_pi(C(Tbar,1)); DA(T,H)' = L_pi(C(Tbar,mu)) com mu nao trivial em Tbar_0."""
    q = quotient(t, h)
    _check_elementary(q)
    r = q.group.rank
    if not primed:
        mu = [1] * r
    else:
        from classify import tau_map

        t0 = tau_map(t, h).kernel
        if mu is None:
            for cand in product((1, -1), repeat=r):
                d = CDData(tuple(q.group.gens()), cand)
                if any(d.mu_of(x) == -1 for x in t0.elements):
                    mu = list(cand)
                    break
            if mu is None:
                raise ConstructionError("Tbar_0 is trivial: only DA(T,H) is defined")
        else:
            d = CDData(tuple(q.group.gens()), tuple(mu))
            if all(d.mu_of(x) == 1 for x in t0.elements):
                raise ConstructionError("mu must be nontrivial on Tbar_0")
    c = octonion_graded(q.group, q.group.gens(), mu).algebra
    return loop_split(c, q)


def da_complex(t: FinAbGroup, h: SubgroupData) -> GradedAlgebra:
    """DA_C(T,H) = L_pi(C_C(Tbar)), posto 3."""
    q = quotient(t, h)
    _check_elementary(q)
    if q.group.rank != 3:
        raise ConstructionError("DA_C(T,H) needs T/H of rank 3")
    c = complexify(octonion_graded(q.group, q.group.gens(), [1, 1, 1]).algebra)
    return loop_split(c, q)


_CURLY = re.compile(r"^([RCH])\{([^}]*)\}(')?$")
_FIELD = re.compile(r"^field\((-?\d+)\)$")


def named_family(tag: str, t: FinAbGroup = None, h: SubgroupData = None, chi: Character = None,
                 mu=None, k=None) -> GradedAlgebra:
    """
    Tags: R{n1,n2,n3}, C{n2,n3}, H{n3} (com ' opcional), O, field(n),
    DA (com chi: DA(T,H,O)), DA', DA_C. `k`: ordens de K para RK (x) ...
    """
    tag = tag.strip()
    m = _CURLY.match(tag)
    if m:
        try:
            ns = [int(x) for x in m.group(2).split(",") if x.strip()]
        except ValueError:
            raise ConstructionError(f"invalid parameters in {tag!r}") from None
        b = _curly_family(m.group(1), ns, primed=bool(m.group(3)))
    elif _FIELD.match(tag):
        b = graded_field_family(int(_FIELD.match(tag).group(1)))
    elif tag == "O":
        b = octonion_graded(TRIVIAL).algebra
    elif tag in ("DA", "DA'", "DA_C", "DA_O"):
        if t is None or h is None:
            raise ConstructionError(f"{tag} needs T and H")
        if tag == "DA_C":
            b = da_complex(t, h)
        elif tag == "DA_O" or (tag == "DA" and chi is not None):
            if chi is None:
                raise ConstructionError("DA(T,H,O) needs chi")
            b = da_family(t, h, chi, mu)
        else:
            b = da_split(t, h, primed=tag == "DA'", mu=mu)
    else:
        raise ConstructionError(f"unknown family {tag!r}")
    if k:
        grupo_k = k if isinstance(k, FinAbGroup) else FinAbGroup(tuple(k))
        b = graded_tensor(twisted_group_algebra(grupo_k), b)
    return b
