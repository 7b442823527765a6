"""
GradReal - Classificacao
Invariantes e decisores: tau e seu nucleo, forma canonica de triplas de
Cartan pela acao de Weyl, isomorfismo de corpos graduados (com oraculo de
forca bruta), descritores das algebras alternativas e de Jordan, rotulos
canonicos de pares/triplas e impressoes digitais de tabelas.

Os decisores trabalham sobre descritores (dados de parametros gravados pelos
construtores), nunca sobre tabelas cruas; a unica identificacao a partir da
tabela e `fingerprint`, uma condicao necessaria.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import permutations, product

import config
from abgroup import (
    FinAbGroup, GroupElement, GroupHom, QuotientData, SubgroupData, basis_split,
    hom_from_images, power_subgroup, quotient, torsion_subgroup, whole_group,
)
from chars import Character
from constructions import (
    CartanData, CDData, ComplexData, JordanFormData, loop_descriptor_of,
)
from galg import (
    ONE, GradedAlgebra, centroid, component_square_signs,
    map_from_columns, verify_iso,
)
from linalg import solve_gf2
from utils import DescriptorError, GradRealError, log, progresso


# ============================================================================
# tau: Tbar -> H/H^[2]
# ============================================================================

@dataclass(frozen=True, eq=False)
class TauMap:
    """tau(tH) = t^2 H^[2]; valores indexados por elementos de Tbar (dentro de Gbar)."""

    quotient: QuotientData
    tbar: SubgroupData
    target: FinAbGroup
    values: dict
    hom: GroupHom

    def __call__(self, x: GroupElement) -> GroupElement:
        try:
            return self.values[x]
        except KeyError:
            raise DescriptorError(f"{x} is not in Tbar") from None

    @cached_property
    def kernel(self) -> SubgroupData:
        """Tbar_0 = ker tau, como subgrupo de Gbar."""
        return SubgroupData(self.quotient.group,
                            tuple(x for x, v in sorted(self.values.items()) if v.is_identity and not x.is_identity))

    @property
    def is_trivial(self) -> bool:
        return all(v.is_identity for v in self.values.values())


def tau_map(t, h: SubgroupData) -> TauMap:
    """
    t: grupo T (entao G = T) ou subgrupo T de G contendo H.
    Exige T/H 2-grupo elementar.
    """
    if isinstance(t, FinAbGroup):
        t = whole_group(t)
    g = t.ambient
    if h.ambient != g:
        raise DescriptorError(f"H is a subgroup of {h.ambient}, T lives in {g}")
    if not t.contains_subgroup(h):
        raise DescriptorError("H is not contained in T")
    q = quotient(g, h)
    tbar = SubgroupData(q.group, tuple(q.projection.apply(x) for x in t.generators))
    for x in tbar.generators:
        if not (x + x).is_identity:
            raise DescriptorError(f"T/H is not an elementary 2-group ({x} has order {x.order()})")
    pres, _ = h.presentation
    q2 = quotient(pres, power_subgroup(pres, 2))
    values = {}
    for x in tbar.elements:
        dobro = 2 * q.section(x)
        values[x] = q2.projection.apply(h.to_presentation(dobro))
    for x in tbar.elements:
        for y in tbar.elements:
            if values[x + y] != values[x] + values[y]:
                raise GradRealError(f"tau fails to be a homomorphism at ({x}, {y})")
    pt, inc = tbar.presentation
    hom = hom_from_images(pt, q2.group, [values[inc.apply(x)] for x in pt.gens()])
    log("GRUPO", f"tau: {tbar.order} elements -> {q2.group}")
    return TauMap(q, tbar, q2.group, values, hom)


def tau_on_two_torsion(q: QuotientData) -> TauMap:
    """tau restrito a Gbar_[2] (T = preimagem de Gbar_[2])."""
    e2 = torsion_subgroup(q.group, 2)
    gens = list(q.subgroup.generators) + [q.section(x) for x in e2.generators]
    return tau_map(SubgroupData(q.ambient, tuple(gens)), q.subgroup)


# ============================================================================
# Triplas de Cartan: forma canonica de Weyl (S3 x Z2)
# ============================================================================

def weyl_orbit(triple) -> set:
    triple = tuple(triple)
    if len(triple) != 3:
        raise DescriptorError("a Cartan triple has three elements")
    if not (triple[0] + triple[1] + triple[2]).is_identity:
        raise DescriptorError(f"triple ({', '.join(str(x) for x in triple)}) does not multiply to the identity")
    orbita = set()
    for p in permutations(triple):
        orbita.add(p)
        orbita.add(tuple(-x for x in p))
    return orbita


def weyl_canonical(triple) -> tuple:
    """Menor elemento lexicografico da orbita de 12 elementos."""
    return min(weyl_orbit(triple), key=lambda t: tuple(x.coords for x in t))


# ============================================================================
# Corpos graduados
# ============================================================================

def _two_torsion(h) -> list:
    if isinstance(h, FinAbGroup):
        h = whole_group(h)
    return [x for x in h.sorted_elements() if (x + x).is_identity]


def graded_field_iso(chi: Character, chi2: Character, h=None) -> bool:
    """D_H^chi ~ D_H^chi' sse chi e chi' coincidem em H_[2]."""
    if chi.group != chi2.group:
        raise DescriptorError(f"characters live on different groups: {chi.group} vs {chi2.group}")
    if h is None:
        h = chi.group
    for x in _two_torsion(h):
        if chi.sign(x) != chi2.sign(x):
            return False
    return True


def _check_graded_field(d: GradedAlgebra):
    if not d.is_unital or any(len(c) != 1 for c in d.components.values()):
        raise DescriptorError("oracle inputs must be graded-fields (unital, one-dimensional components)")
    if len(d.components) != d.group.size:
        raise DescriptorError("oracle inputs must be twisted group algebras (full support)")


def _monomios(d: GradedAlgebra) -> dict:
    """g -> (s_g, coords) com u_{g1}^{k1}...u_{gr}^{kr} = s_g u_g (produto da esquerda para a direita)."""
    grupo = d.group
    idx = {g: c[0] for g, c in d.components.items()}
    out = {}
    for coords in product(*(range(n) for n in grupo.orders)):
        v = dict(d.unit)
        for i, k in enumerate(coords):
            gi = idx[grupo.gen(i)]
            for _ in range(k):
                v = d.mul(v, {gi: ONE})
        g = grupo.element(coords)
        (k, c), = v.items()
        if k != idx[g]:
            raise GradRealError(f"monomial for {g} landed in the wrong component")
        out[g] = (c, coords)
    return out


def oracle_graded_field_iso(d: GradedAlgebra, d2: GradedAlgebra):
    """
    Busca u_g -> c_g u'_g com sinais nos geradores; devolve o mapa verificado
    (GradedLinearMap) ou None quando todos os padroes falham.
    """
    if d.group != d2.group:
        raise DescriptorError(f"graded-fields over different groups: {d.group} vs {d2.group}")
    _check_graded_field(d)
    _check_graded_field(d2)
    grupo = d.group
    padroes = 2 ** grupo.rank
    if padroes > config.ORACLE_WIDTH:
        raise GradRealError(f"oracle search of {padroes} sign patterns exceeds width {config.ORACLE_WIDTH}")
    m1, m2 = _monomios(d), _monomios(d2)
    idx2 = {g: c[0] for g, c in d2.components.items()}
    for sinais in progresso(product((1, -1), repeat=grupo.rank), desc="oraculo", total=padroes):
        cols = [None] * d.dim
        for g, comp in d.components.items():
            s1, coords = m1[g]
            s2, _ = m2[g]
            c = Fraction(1)
            for sj, k in zip(sinais, coords):
                c *= sj ** k
            # u_g = s1^-1 m_g -> s1^-1 c m'_g = s1^-1 c s2 u'_g
            cols[comp[0]] = {idx2[g]: c * s2 / s1}
        f = map_from_columns(d, d2, cols)
        if verify_iso(f):
            log("ORACULO", f"graded-field iso over {grupo} with generator signs {sinais}")
            return f
    log("ORACULO", f"no graded-field iso over {grupo} after {padroes} sign patterns")
    return None


# ============================================================================
# Descritores
# ============================================================================

ALT_CASES = ("cartan-real", "cd-real", "cartan-complex", "cd-complex")


def _chi0(d) -> tuple:
    """chi restrito a H_[2], como tupla ordenada (h, sinal)."""
    return tuple((x, d.chi.sign(x)) for x in _two_torsion(d.subgroup))


@dataclass(frozen=True, eq=False)
class AltDescriptor:
    case: str
    quotient: QuotientData
    chi0: tuple                 # vazio no caso complexo
    triple: tuple = None
    cd: CDData = None

    def __post_init__(self):
        if self.case not in ALT_CASES:
            raise DescriptorError(f"unknown alternative case {self.case!r}")
        if self.case.startswith("cartan"):
            weyl_orbit(self.triple)
        elif self.cd is None or len(self.cd.basis) > 3:
            raise DescriptorError("Cayley-Dickson payload needs an elementary Tbar of rank <= 3")

    @property
    def complex(self) -> bool:
        return self.case.endswith("complex")

    @property
    def split(self):
        if self.complex:
            return None
        return all(s == 1 for _, s in self.chi0)

    @property
    def tbar(self) -> SubgroupData:
        return SubgroupData(self.quotient.group, tuple(self.cd.basis))

    @property
    def support(self) -> SubgroupData:
        """T = preimagem de Tbar."""
        q = self.quotient
        gens = list(q.subgroup.generators) + [q.section(x) for x in self.cd.basis]
        return SubgroupData(q.ambient, tuple(gens))


@dataclass(frozen=True, eq=False)
class JordanDescriptor:
    quotient: QuotientData
    chi0: tuple
    form: JordanFormData
    complex: bool = False


def _base_sem_complexo(base):
    if isinstance(base, ComplexData):
        return base.base, True
    return base, False


def alt_descriptor_of(b: GradedAlgebra) -> AltDescriptor:
    d = loop_descriptor_of(b)
    if d is None:
        raise DescriptorError("algebra carries no construction data")
    base, complexo = _base_sem_complexo(d.base)
    sufixo = "complex" if complexo else "real"
    chi0 = () if complexo else _chi0(d)
    if isinstance(base, CartanData):
        return AltDescriptor(f"cartan-{sufixo}", d.quotient, chi0, triple=base.triple)
    if isinstance(base, CDData):
        return AltDescriptor(f"cd-{sufixo}", d.quotient, chi0, cd=base)
    raise DescriptorError("algebra is not built from alternative parameter data")


def jordan_descriptor_of(b: GradedAlgebra) -> JordanDescriptor:
    d = loop_descriptor_of(b)
    if d is None:
        raise DescriptorError("algebra carries no construction data")
    base, complexo = _base_sem_complexo(d.base)
    if not isinstance(base, JordanFormData):
        raise DescriptorError("algebra is not built from Jordan form data")
    return JordanDescriptor(d.quotient, () if complexo else _chi0(d), base, complexo)


def _mesmo_contexto(q1: QuotientData, q2: QuotientData):
    if q1.ambient != q2.ambient or not q1.subgroup.same_as(q2.subgroup):
        raise DescriptorError("descriptors over different (G, H)")


# ============================================================================
# Decisores
# ============================================================================

def alt_iso_equal(d1: AltDescriptor, d2: AltDescriptor) -> bool:
    _mesmo_contexto(d1.quotient, d2.quotient)
    if d1.case != d2.case or d1.chi0 != d2.chi0:
        return False
    if d1.case.startswith("cartan"):
        return weyl_canonical(d1.triple) == weyl_canonical(d2.triple)
    if not d1.tbar.same_as(d2.tbar):
        return False
    if d1.complex:
        return True
    t0 = tau_map(d1.support, d1.quotient.subgroup).kernel
    return all(d1.cd.mu_of(x) == d2.cd.mu_of(x) for x in t0.sorted_elements())


def _tau_coords(tau: TauMap, x: GroupElement) -> list:
    return list(tau(x).coords)


def jordan_iso_equal(d1: JordanDescriptor, d2: JordanDescriptor) -> bool:
    """kappa igual e sigma_2 = sigma_1 (lambda_0 o tau) para algum lambda_0."""
    _mesmo_contexto(d1.quotient, d2.quotient)
    if d1.complex != d2.complex or d1.chi0 != d2.chi0:
        return False
    if d1.form.kappa != d2.form.kappa:
        return False
    if d1.complex:
        return True
    tau = tau_on_two_torsion(d1.quotient)
    rows, rhs = [], []
    for g in sorted(d1.form.sigma):
        s1, s2 = d1.form.sigma[g], d2.form.sigma.get(g, 0)
        if abs(s1) != abs(s2):
            return False
        if s1 == 0:
            continue
        rows.append(_tau_coords(tau, g))
        rhs.append(0 if s1 == s2 else 1)
    return solve_gf2(rows, rhs, tau.target.rank) is not None


def jordan_sigma_canonical(kappa: dict, sigma: dict, tau: TauMap) -> dict:
    """
    Representante da orbita sigma -> sigma (lambda_0 o tau) com sinais
    lexicograficamente maximos (sigma >= 0 primeiro nos menores graus).
    """
    restricoes, alvo = [], []
    n = tau.target.rank
    for g in sorted(sigma):
        if not sigma[g]:
            continue
        c = _tau_coords(tau, g)
        quer = 1 if sigma[g] < 0 else 0
        if solve_gf2(restricoes + [c], alvo + [quer], n) is not None:
            restricoes.append(c)
            alvo.append(quer)
        else:
            restricoes.append(c)
            alvo.append(1 - quer)
    x = solve_gf2(restricoes, alvo, n)
    out = {}
    for g, s in sigma.items():
        if kappa.get(g, 0) == 0 and not s:
            continue
        c = _tau_coords(tau, g)
        flip = sum(a * b for a, b in zip(c, x)) % 2
        out[g] = -s if flip else s
    return out


def jordan_division_predicate(kappa: dict, sigma: dict, kind: str = "real") -> bool:
    """
    real: suporte em Gbar_[2], |sigma| = kappa e sigma(e) = -kappa(e).
    complex: suporte em Gbar_[2], kappa em {0,1} e kappa(e) = 0.
    """
    for g, k in kappa.items():
        if k == 0:
            continue
        if not (g + g).is_identity:
            return False
        if kind == "complex":
            if k > 1 or g.is_identity:
                return False
        elif kind == "real":
            s = sigma.get(g)
            if s is None or abs(s) != k:
                return False
            if g.is_identity and s != -k:
                return False
        else:
            raise DescriptorError(f"unknown centroid kind {kind!r}")
    return True


# ============================================================================
# Rotulos canonicos
# ============================================================================

@dataclass(frozen=True, order=True)
class LabelEntry:
    order: int
    marked: bool = False
    sign: int = 1

    @property
    def prime(self) -> int:
        p = 2
        while self.order % p:
            p += 1
        return p

    def key(self) -> tuple:
        p = self.prime
        e = 0
        n = self.order
        while n > 1:
            n //= p
            e += 1
        return p, e, 0 if self.marked else 1, self.sign

    def __str__(self):
        s = f"-{self.order}" if self.sign < 0 else str(self.order)
        return f"[{s}]" if self.marked else s


@dataclass(frozen=True)
class ClassLabel:
    entries: tuple

    @property
    def r(self) -> int:
        return sum(1 for x in self.entries if x.marked)

    @property
    def negative(self):
        neg = [x for x in self.entries if x.sign < 0]
        return neg[0] if neg else None

    def __str__(self):
        return "(" + ", ".join(str(x) for x in self.entries) + ")"


def _canon(entries: list) -> ClassLabel:
    return ClassLabel(tuple(sorted(entries, key=LabelEntry.key)))


def _adapted_basis(t: FinAbGroup, h: SubgroupData):
    if h.ambient != t:
        raise DescriptorError(f"H is a subgroup of {h.ambient}, expected {t}")
    q = quotient(t, h)
    if not q.group.is_elementary_2():
        raise DescriptorError(f"T/H = {q.group} is not an elementary 2-group")
    return basis_split(q.projection)


def pair_label(t: FinAbGroup, h: SubgroupData) -> ClassLabel:
    """Ordens de uma base adaptada de T, com as r marcas."""
    bs = _adapted_basis(t, h)
    return _canon([LabelEntry(x.order(), mk) for x, mk in zip(bs.basis, bs.marked)])


def _signs_of(chi0, h: SubgroupData) -> dict:
    if isinstance(chi0, Character):
        return {x: chi0.sign(x) for x in _two_torsion(h)}
    tabela = dict(chi0)
    for x in _two_torsion(h):
        if x not in tabela:
            if x.is_identity:
                tabela[x] = 1
            else:
                raise DescriptorError(f"chi0 missing at {x}")
    return tabela


def triple_label(t: FinAbGroup, h: SubgroupData, chi0) -> ClassLabel:
    """
    Sinal de cada elemento da base: chi0 no elemento de ordem 2 de <t_j>,
    quando este cai em H. Os movimentos t_i -> t_i t_j^{2^{n-m}} deixam um
    unico sinal negativo, no elemento de maior ordem (empate: o nao marcado).
    """
    bs = _adapted_basis(t, h)
    sinais = _signs_of(chi0, h)
    entradas = []
    for x, mk in zip(bs.basis, bs.marked):
        o = x.order()
        s = 1
        if o % 2 == 0:
            meio = (o // 2) * x
            if meio in h:
                s = sinais[meio]
        entradas.append(LabelEntry(o, mk, s))
    negs = [i for i, x in enumerate(entradas) if x.sign < 0]
    if len(negs) > 1:
        fica = max(negs, key=lambda i: (entradas[i].order, not entradas[i].marked, -i))
        entradas = [LabelEntry(x.order, x.marked, 1) if (i in negs and i != fica) else x
                    for i, x in enumerate(entradas)]
    return _canon(entradas)


# ============================================================================
# Classe de equivalencia (caso de divisao graduada, dimensao finita)
# ============================================================================

FAMILIAS = {"nonsplit": "DA(T,H,O)", "split": "DA(T,H)", "primed": "DA(T,H)'", "complex": "DA_C(T,H)"}
LETRAS = {3: "R", 2: "C", 1: "H", 0: "O"}


@dataclass(frozen=True)
class EquivClass:
    tag: str
    item: str
    label: ClassLabel
    k: tuple = ()
    n: int = None
    ns: tuple = ()
    primed: bool = False

    @property
    def family(self) -> str:
        partes = []
        k = " x ".join(f"Z{o}" for o in self.k)
        if self.item == "3":
            partes.append(f"C({k})" if k else "C")
        elif k:
            partes.append(f"R({k})")
        if self.n is not None:
            partes.append(f"(-{self.n})")
        r = len(self.ns)
        nome = LETRAS[r]
        if r:
            nome += "{" + ",".join(str(x) for x in self.ns) + "}"
        if self.primed:
            nome += "'"
        partes.append(nome)
        return " x ".join(partes)

    def __str__(self):
        return f"{self.tag}: {self.label}"


def pair_in_support(desc: AltDescriptor) -> tuple:
    """(T, H em T, chi0 em T) a partir do suporte T dentro de G."""
    t = desc.support
    pres, _ = t.presentation
    h = SubgroupData(pres, tuple(t.to_presentation(x) for x in desc.quotient.subgroup.generators))
    chi0 = {t.to_presentation(x): s for x, s in desc.chi0}
    return pres, h, chi0


def alt_equiv_class(b) -> EquivClass:
    """Familia DA e dados (K, n, n_j) da classificacao em dimensao finita."""
    desc = b if isinstance(b, AltDescriptor) else alt_descriptor_of(b)
    if desc.case.startswith("cartan"):
        raise DescriptorError("Cartan-graded octonions are never graded-division")
    t, h, chi0 = pair_in_support(desc)
    if desc.complex:
        if desc.cd.level != "O" or len(desc.cd.basis) != 3:
            raise DescriptorError("DA_C(T,H) needs Tbar of rank 3")
        label = pair_label(t, h)
        familia, item = "complex", "3"
    elif desc.split:
        label = pair_label(t, h)
        t0 = tau_map(desc.support, desc.quotient.subgroup).kernel
        primed = any(desc.cd.mu_of(x) == -1 for x in t0.elements)
        familia, item = ("primed", "2(b)") if primed else ("split", "2(a)")
    else:
        label = triple_label(t, h, chi0)
        neg = label.negative
        familia, item = "nonsplit", "1(a)" if neg.marked else "1(b)"
    marcados = [x for x in label.entries if x.marked]
    livres = [x for x in label.entries if not x.marked]
    n = None
    if item == "1(b)":
        neg = label.negative
        livres.remove(neg)
        n = neg.key()[1]
    ns = []
    for x in marcados:
        e = x.key()[1] - 1
        ns.append(-e if x.sign < 0 else e)
    ns.sort(reverse=True)
    ec = EquivClass(FAMILIAS[familia], item, label, tuple(x.order for x in livres), n, tuple(ns),
                    familia == "primed")
    log("TABELA", f"equivalence class {ec.tag} {ec.family}")
    return ec


# ============================================================================
# Impressao digital (condicao necessaria para isomorfismo graduado)
# ============================================================================

def square_sign_profile(b: GradedAlgebra) -> tuple:
    """(grau, inercia) ordenado por grau, graus de ordem <= 2."""
    return tuple(sorted(component_square_signs(b).items()))


def _valores_altura(h: int) -> list:
    vals = {Fraction(p, q) for q in range(1, h + 1) for p in range(-h, h + 1)}
    return sorted(vals)


def idempotent_count(b: GradedAlgebra, height: int = None):
    """Idempotentes nao triviais de B_e com coordenadas de altura limitada; None se a busca excede ORACLE_WIDTH."""
    height = config.IDEMPOTENT_HEIGHT if height is None else height
    comp = b.component(b.group.identity)
    vals = _valores_altura(height)
    total = len(vals) ** len(comp)
    if total > config.ORACLE_WIDTH:
        return None
    um = b.unit or {}
    cont = 0
    for coords in progresso(product(vals, repeat=len(comp)), desc="idempotentes", total=total):
        x = {k: c for k, c in zip(comp, coords) if c}
        if not x or x == um:
            continue
        if b.mul(x, x) == x:
            cont += 1
    return cont


@dataclass(frozen=True)
class Fingerprint:
    group: FinAbGroup
    dims: tuple
    identity_dim: int
    idempotents: object
    square_signs: tuple
    centroid: tuple = field(default=None)

    def diff(self, other: "Fingerprint") -> list:
        return [nome for nome in ("group", "dims", "identity_dim", "idempotents", "square_signs", "centroid")
                if getattr(self, nome) != getattr(other, nome)]

    def summary(self) -> dict:
        return {
            "dims": {str(g): d for g, d in self.dims},
            "identity_dim": self.identity_dim,
            "idempotents": self.idempotents,
            "square_signs": {str(g): list(s) for g, s in self.square_signs},
            "centroid": None if self.centroid is None else {
                "dimension": self.centroid[0],
                "support": [str(x) for x in self.centroid[1]],
                "chi0": None if self.centroid[3] is None else {str(x): s for x, s in self.centroid[3]},
                "split": self.centroid[4],
            },
        }


def fingerprint(b: GradedAlgebra, with_centroid: bool = True) -> Fingerprint:
    dims = tuple((g, len(c)) for g, c in sorted(b.components.items()))
    e = b.group.identity
    cent = None
    if with_centroid:
        rep = centroid(b)
        chi0 = None if rep.chi0 is None else tuple(sorted(rep.chi0.items()))
        cent = (rep.dimension, tuple(sorted(rep.support.elements)), rep.identity_dim, chi0, rep.split)
    return Fingerprint(
        group=b.group,
        dims=dims,
        identity_dim=len(b.component(e)),
        idempotents=idempotent_count(b) if b.is_unital else None,
        square_signs=square_sign_profile(b),
        centroid=cent,
    )
