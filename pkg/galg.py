"""
GradReal - Algebras Graduadas
Representacao de algebras reais de dimensao finita com constantes de
estrutura racionais e um grau por vetor da base, mais os analisadores:
identidades, inversos homogeneos, divisao graduada, simplicidade graduada,
centroide, graduacao induzida, verificacao de isomorfismos e produto tensorial.

Vetores sao esparsos: dict indice -> Fraction.
"""

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from itertools import combinations_with_replacement, product

import config
from abgroup import FinAbGroup, GroupElement, GroupHom, SubgroupData
from linalg import RowEchelon, inertia, inverse, mat_vec, nullspace, solve
from utils import GradingError, GradRealError, aviso, format_rational, log, progresso

ZERO = Fraction(0)
ONE = Fraction(1)

POSITIVOS = {"pass", "division", "simple", "isomorphic", "true"}
INDECISOS = {"undecided", "probably-simple"}
KINDS_ASSOCIATIVOS = ("field", "commutative", "associative")


# ============================================================================
# Vetores esparsos
# ============================================================================

def vec_add(v: dict, w: dict, c=ONE) -> dict:
    out = dict(v)
    for k, x in w.items():
        nv = out.get(k, ZERO) + c * x
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def vec_scale(v: dict, c) -> dict:
    c = Fraction(c)
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def vec_clean(v: dict) -> dict:
    return {k: Fraction(x) for k, x in v.items() if x}


def to_dense(v: dict, n: int) -> list:
    out = [ZERO] * n
    for k, x in v.items():
        out[k] = x
    return out


def to_sparse(v) -> dict:
    if isinstance(v, dict):
        return vec_clean(v)
    return {k: Fraction(x) for k, x in enumerate(v) if x}


# ============================================================================
# Veredito
# ============================================================================

@dataclass
class Verdict:
    """status + testemunha + detalhes; bool() e verdadeiro nos status positivos."""

    status: str
    witness: object = None
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return self.status in POSITIVOS

    @property
    def undecided(self) -> bool:
        return self.status in INDECISOS

    def __str__(self):
        s = self.status
        if self.witness is not None:
            s += f" (witness: {self.witness})"
        return s


# ============================================================================
# Metadados opcionais
# ============================================================================

@dataclass(frozen=True)
class NormData:
    """
    Involucao padrao e corpo graduado L dentro da algebra.
    Norma n(x) = x * involucao(x), com valores em L.
    """

    field_part: tuple
    involution: dict  # indice -> vetor esparso

    def conj(self, x: dict) -> dict:
        out = {}
        for k, c in x.items():
            out = vec_add(out, self.involution[k], c)
        return out


@dataclass(frozen=True)
class JordanMeta:
    """Algebra J = L1 + V com uv = b(u,v)1; `complex` marca L_e = C."""

    unit_index: int
    v_indices: tuple
    complex: bool = False
    imag_index: int = None


# ============================================================================
# Algebra graduada
# ============================================================================

@dataclass(frozen=True, eq=False)
class GradedAlgebra:
    group: FinAbGroup
    labels: tuple
    degrees: tuple
    sc: dict
    unit: dict = None
    composition: NormData = None
    jordan: JordanMeta = None
    descriptor: object = None
    kind: str = ""

    def __post_init__(self):
        if len(self.labels) != len(self.degrees):
            raise GradingError("one degree per basis vector is required")
        for g in self.degrees:
            if g.parent != self.group:
                raise GradingError(f"degree {g} is not in {self.group}")
        sc = {}
        for (i, j), prod in self.sc.items():
            prod = vec_clean(prod)
            if not prod:
                continue
            dij = self.degrees[i] + self.degrees[j]
            for k in prod:
                if self.degrees[k] != dij:
                    raise GradingError(
                        f"product {self.labels[i]}*{self.labels[j]} has a term {self.labels[k]} of degree "
                        f"{self.degrees[k]}, expected {dij}")
            sc[(i, j)] = prod
        object.__setattr__(self, "sc", sc)
        if self.unit is not None:
            u = vec_clean(self.unit)
            object.__setattr__(self, "unit", u)
            for i in range(self.dim):
                e = {i: ONE}
                if self.mul(u, e) != e or self.mul(e, u) != e:
                    raise GradingError(f"declared unit is not a two-sided identity on {self.labels[i]}")

    # ── basicos ────────────────────────────────────────────────────────────

    @property
    def dim(self) -> int:
        return len(self.labels)

    def basis_vector(self, i: int) -> dict:
        return {i: ONE}

    @cached_property
    def components(self) -> dict:
        comps = {}
        for i, g in enumerate(self.degrees):
            comps.setdefault(g, []).append(i)
        return comps

    def component(self, g: GroupElement) -> list:
        return self.components.get(g, [])

    def support(self) -> list:
        return sorted(self.components)

    def support_subgroup(self) -> SubgroupData:
        return SubgroupData(self.group, tuple(g for g in self.support() if not g.is_identity))

    def mul(self, x: dict, y: dict) -> dict:
        out = {}
        sc = self.sc
        for i, a in x.items():
            for j, b in y.items():
                prod = sc.get((i, j))
                if not prod:
                    continue
                ab = a * b
                for k, c in prod.items():
                    nv = out.get(k, ZERO) + ab * c
                    if nv:
                        out[k] = nv
                    else:
                        out.pop(k, None)
        return out

    def bmul(self, i: int, j: int) -> dict:
        return self.sc.get((i, j), {})

    def left_matrix(self, x: dict) -> list:
        n = self.dim
        cols = [self.mul(x, {j: ONE}) for j in range(n)]
        return [[cols[j].get(i, ZERO) for j in range(n)] for i in range(n)]

    def right_matrix(self, x: dict) -> list:
        n = self.dim
        cols = [self.mul({j: ONE}, x) for j in range(n)]
        return [[cols[j].get(i, ZERO) for j in range(n)] for i in range(n)]

    def degree_of(self, x: dict):
        """Grau de um vetor homogeneo nao nulo, ou None."""
        graus = {self.degrees[k] for k in x}
        return graus.pop() if len(graus) == 1 else None

    @property
    def is_unital(self) -> bool:
        return self.unit is not None

    def with_(self, **kw) -> "GradedAlgebra":
        return replace(self, **kw)

    def same_table(self, other: "GradedAlgebra") -> bool:
        return (self.group == other.group and self.degrees == other.degrees
                and self.sc == other.sc)

    def __str__(self):
        return f"GradedAlgebra(dim={self.dim}, group={self.group}, support={len(self.components)})"


def multiply(b: GradedAlgebra, x, y):
    """Produto de vetores (densos ou esparsos) pela extensao bilinear."""
    dense = not isinstance(x, dict)
    if dense and (len(x) != b.dim or len(y) != b.dim):
        raise GradRealError(f"vectors must have dimension {b.dim}")
    r = b.mul(to_sparse(x), to_sparse(y))
    return to_dense(r, b.dim) if dense else r


@dataclass(frozen=True)
class HomogeneousElement:
    algebra: GradedAlgebra
    degree: GroupElement
    coords: tuple

    def __post_init__(self):
        comp = self.algebra.component(self.degree)
        if len(self.coords) != len(comp):
            raise GradingError(f"component {self.degree} has dimension {len(comp)}, got {len(self.coords)} coords")

    def vector(self) -> dict:
        comp = self.algebra.component(self.degree)
        return vec_clean({k: Fraction(c) for k, c in zip(comp, self.coords)})


def homogeneous(b: GradedAlgebra, v) -> HomogeneousElement:
    v = to_sparse(v)
    if not v:
        raise GradingError("zero vector has no degree")
    g = b.degree_of(v)
    if g is None:
        raise GradingError("vector is not homogeneous")
    return HomogeneousElement(b, g, tuple(v.get(k, ZERO) for k in b.component(g)))


@dataclass(frozen=True)
class GradedLinearMap:
    """matrix[r][c]: coordenada r da imagem do vetor c da fonte."""

    source: GradedAlgebra
    target: GradedAlgebra
    matrix: tuple
    shift: GroupElement = None

    def apply(self, x: dict) -> dict:
        out = {}
        for c, a in x.items():
            for r in range(self.target.dim):
                v = self.matrix[r][c]
                if v:
                    out[r] = out.get(r, ZERO) + a * v
        return vec_clean(out)

    def column(self, c: int) -> dict:
        return vec_clean({r: self.matrix[r][c] for r in range(self.target.dim)})


def map_from_columns(source: GradedAlgebra, target: GradedAlgebra, columns: list,
                     shift: GroupElement = None) -> GradedLinearMap:
    m = tuple(tuple(columns[c].get(r, ZERO) for c in range(source.dim)) for r in range(target.dim))
    return GradedLinearMap(source, target, m, shift or source.group.identity)


# ============================================================================
# Identidades
# ============================================================================

class _Assoc:
    """Associadores de vetores da base com cache."""

    def __init__(self, b: GradedAlgebra):
        self.b = b
        self._c = {}

    def __call__(self, i, j, k) -> dict:
        key = (i, j, k)
        r = self._c.get(key)
        if r is None:
            b = self.b
            left = b.mul(b.bmul(i, j), {k: ONE})
            right = b.mul({i: ONE}, b.bmul(j, k))
            r = vec_add(left, right, -ONE)
            self._c[key] = r
        return r


def check_identity(b: GradedAlgebra, kind: str) -> Verdict:
    """kind em {commutative, associative, alternative, jordan}."""
    n = b.dim
    lab = b.labels
    if kind == "commutative":
        for i in range(n):
            for j in range(i + 1, n):
                if b.bmul(i, j) != b.bmul(j, i):
                    return Verdict("fail", (lab[i], lab[j]))
        return Verdict("pass")
    if kind == "associative":
        assoc = _Assoc(b)
        for i, j, k in product(range(n), repeat=3):
            if assoc(i, j, k):
                return Verdict("fail", (lab[i], lab[j], lab[k]))
        return Verdict("pass")
    if kind == "alternative":
        assoc = _Assoc(b)
        for i, j, k in product(range(n), repeat=3):
            if vec_add(assoc(i, j, k), assoc(j, i, k)) or vec_add(assoc(i, j, k), assoc(i, k, j)):
                return Verdict("fail", (lab[i], lab[j], lab[k]))
        return Verdict("pass")
    if kind == "jordan":
        com = check_identity(b, "commutative")
        if not com:
            return com
        sq = {}

        def par(j, k):
            key = (j, k) if j <= k else (k, j)
            if key not in sq:
                sq[key] = b.bmul(*key)
            return sq[key]

        for i, j, k in combinations_with_replacement(range(n), 3):
            trio = ((i, j, k), (j, i, k), (k, i, j))
            for y in range(n):
                total = {}
                for a, c, d in trio:
                    xa = {a: ONE}
                    cd = par(c, d)
                    t1 = b.mul(b.bmul(a, y), cd)
                    t2 = b.mul(xa, b.mul({y: ONE}, cd))
                    total = vec_add(vec_add(total, t1), t2, -ONE)
                if total:
                    return Verdict("fail", (lab[i], lab[j], lab[k], lab[y]))
        return Verdict("pass")
    raise GradRealError(f"unknown identity kind {kind!r}")


def algebra_kind(b: GradedAlgebra) -> str:
    """Pista do construtor ou deteccao por identidades."""
    if b.kind:
        return b.kind
    if check_identity(b, "alternative"):
        return "alternative"
    if check_identity(b, "jordan"):
        return "jordan"
    return ""


# ============================================================================
# Inversos
# ============================================================================

def homogeneous_inverse(b: GradedAlgebra, x, mode: str = "alternative"):
    """
    Inverso de um elemento homogeneo, ou None ("not invertible").
    alternative: resolve L_x y = 1 no componente de grau -g e confere xy = 1 = yx.
    jordan: U_x = 2 L_x^2 - L_{x^2}; b = U_x^{-1}(x); confere xb = 1 e x^2 b = x.
    """
    if not b.is_unital:
        raise GradRealError("homogeneous_inverse requires a unital algebra")
    v = x.vector() if isinstance(x, HomogeneousElement) else to_sparse(x)
    if not v:
        return None
    g = b.degree_of(v)
    if g is None:
        raise GradingError("element is not homogeneous")
    one = b.unit
    if mode == "alternative":
        comp = b.component(-g)
        if not comp:
            return None
        cols = [b.mul(v, {c: ONE}) for c in comp]
        rows = [[cols[t].get(r, ZERO) for t in range(len(comp))] for r in range(b.dim)]
        rhs = [one.get(r, ZERO) for r in range(b.dim)]
        sol = solve(rows, rhs, len(comp))
        if sol is None:
            return None
        y = vec_clean({comp[t]: sol[t] for t in range(len(comp))})
        if b.mul(v, y) != one or b.mul(y, v) != one:
            return None
        return y
    if mode == "jordan":
        n = b.dim
        lx = b.left_matrix(v)
        lx2 = b.left_matrix(b.mul(v, v))
        lxlx = [[sum((lx[r][k] * lx[k][c] for k in range(n)), ZERO) for c in range(n)] for r in range(n)]
        u = [[2 * lxlx[r][c] - lx2[r][c] for c in range(n)] for r in range(n)]
        uinv = inverse(u)
        if uinv is None:
            return None
        y = to_sparse(mat_vec(uinv, to_dense(v, n)))
        if b.mul(v, y) != one or b.mul(b.mul(v, v), y) != v:
            return None
        return y
    raise GradRealError(f"unknown inverse mode {mode!r}")


# ============================================================================
# Divisao graduada
# ============================================================================

def norm_of(b: GradedAlgebra, x: dict) -> dict:
    return b.mul(x, b.composition.conj(x))


def _field_line(b: GradedAlgebra, g: GroupElement) -> list:
    return [k for k in b.composition.field_part if b.degrees[k] == g]


def _division_norm(b: GradedAlgebra) -> Verdict:
    nd = b.composition
    e = b.group.identity
    complexo = len(_field_line(b, e)) == 2
    detalhes = {}
    for g, comp in sorted(b.components.items()):
        linha = _field_line(b, g + g)
        if not linha:
            detalhes[str(g)] = "norm vanishes (no field line in degree 2g)"
            return Verdict("not-division", str(g), detalhes)
        if complexo:
            if len(comp) > 2:
                detalhes[str(g)] = f"complex dimension {len(comp) // 2} >= 2"
                return Verdict("not-division", str(g), detalhes)
            if not norm_of(b, {comp[0]: ONE}):
                detalhes[str(g)] = "isotropic"
                return Verdict("not-division", str(g), detalhes)
            detalhes[str(g)] = "anisotropic"
            continue
        ell = linha[0]
        m = len(comp)
        gram = [[ZERO] * m for _ in range(m)]
        for s in range(m):
            for t in range(s, m):
                xs, xt = {comp[s]: ONE}, {comp[t]: ONE}
                pol = vec_add(b.mul(xs, nd.conj(xt)), b.mul(xt, nd.conj(xs)))
                val = pol.get(ell, ZERO) / 2
                gram[s][t] = gram[t][s] = val
        pos, neg, nul = inertia(gram)
        detalhes[str(g)] = f"inertia ({pos},{neg},{nul})"
        if not (pos == m or neg == m):
            return Verdict("not-division", str(g), detalhes)
    return Verdict("division", None, detalhes)


def jordan_form_data(b: GradedAlgebra) -> tuple:
    """(kappa, sigma) lidos da tabela via JordanMeta; sigma vazio no caso complexo."""
    jm = b.jordan
    u = jm.unit_index
    kappa, sigma = {}, {}
    por_grau = {}
    for k in jm.v_indices:
        por_grau.setdefault(b.degrees[k], []).append(k)
    for g, idx in por_grau.items():
        kappa[g] = len(idx) // 2 if jm.complex else len(idx)
        if jm.complex or not (g + g).is_identity:
            continue
        m = len(idx)
        gram = [[b.bmul(idx[s], idx[t]).get(u, ZERO) for t in range(m)] for s in range(m)]
        pos, neg, _ = inertia(gram)
        sigma[g] = pos - neg
    return kappa, sigma


def _division_jordan(b: GradedAlgebra) -> Verdict:
    from classify import jordan_division_predicate

    kappa, sigma = jordan_form_data(b)
    ok = jordan_division_predicate(kappa, sigma, "complex" if b.jordan.complex else "real")
    detalhe = {"kappa": {str(g): v for g, v in kappa.items()},
               "sigma": {str(g): v for g, v in sigma.items()}}
    return Verdict("division" if ok else "not-division", None, detalhe)


def _division_bare(b: GradedAlgebra) -> Verdict:
    kind = algebra_kind(b)
    modo = "jordan" if kind == "jordan" else "alternative"
    detalhes = {}
    multi = False
    for g, comp in sorted(b.components.items()):
        for k in comp:
            inv = homogeneous_inverse(b, {k: ONE}, modo)
            detalhes[b.labels[k]] = inv is not None
            if inv is None:
                return Verdict("not-division", b.labels[k], detalhes)
        if len(comp) > 1:
            multi = True
    if multi:
        return Verdict("undecided", None, detalhes)
    return Verdict("division", None, detalhes)


def graded_division_check(b: GradedAlgebra, mode: str = "auto") -> Verdict:
    """mode em {auto, norm, jordan, bare}."""
    if not b.is_unital:
        raise GradRealError("graded_division_check requires a unital algebra")
    if mode == "auto":
        mode = "jordan" if b.jordan else ("norm" if b.composition else "bare")
    if mode == "norm":
        if b.composition is None:
            raise GradRealError("algebra has no composition metadata")
        return _division_norm(b)
    if mode == "jordan":
        if b.jordan is None:
            raise GradRealError("algebra has no Jordan metadata")
        return _division_jordan(b)
    if mode == "bare":
        return _division_bare(b)
    raise GradRealError(f"unknown division mode {mode!r}")


# ============================================================================
# Simplicidade graduada
# ============================================================================

def spin_closure(b: GradedAlgebra, v: dict) -> RowEchelon:
    """Menor subespaco com v fechado por multiplicacoes a esquerda e a direita."""
    ech = RowEchelon(b.dim)
    if not ech.add(v):
        return ech
    fila = [vec_clean(v)]
    while fila and not ech.full:
        w = fila.pop()
        for i in range(b.dim):
            for novo in (b.mul({i: ONE}, w), b.mul(w, {i: ONE})):
                if novo and ech.add(novo):
                    fila.append(novo)
                    if ech.full:
                        return ech
    return ech


def _square_is_zero(b: GradedAlgebra) -> bool:
    return not b.sc


def graded_simple_check(b: GradedAlgebra) -> Verdict:
    if b.dim == 0:
        raise GradRealError("zero algebra")
    if _square_is_zero(b):
        return Verdict("not-simple", "B^2 = 0")
    for i in range(b.dim):
        ech = spin_closure(b, {i: ONE})
        if not ech.full:
            return Verdict("not-simple", ech.basis(), {"generator": b.labels[i]})
    multi = [comp for comp in b.components.values() if len(comp) > 1]
    if not multi:
        return Verdict("simple")
    rng = random.Random(config.SAMPLE_SEED)
    testados = 0
    for comp in progresso(multi, desc="spin"):
        m = len(comp)
        sinais = product((1, -1), repeat=m - 1)
        for cont, s in enumerate(sinais):
            if cont >= config.SIGN_PATTERN_LIMIT:
                break
            v = {comp[0]: ONE}
            v.update({comp[t + 1]: Fraction(s[t]) for t in range(m - 1)})
            ech = spin_closure(b, v)
            testados += 1
            if not ech.full:
                return Verdict("not-simple", ech.basis(), {"generator": str(v)})
        for _ in range(config.SAMPLE_COUNT):
            v = vec_clean({k: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for k in comp})
            if not v:
                continue
            ech = spin_closure(b, v)
            testados += 1
            if not ech.full:
                return Verdict("not-simple", ech.basis(), {"generator": str(v)})
    return Verdict("probably-simple", None, {"vectors_spun": testados})


# ============================================================================
# Centroide
# ============================================================================

@dataclass
class CentroidReport:
    dimension: int
    components: dict           # grau -> lista de matrizes (L_z ou solucoes gerais)
    support: SubgroupData
    identity_dim: int
    chi0: dict                 # h em H_[2] -> sinal (None quando L_e = C)
    split: object              # True/False, None quando L_e = C
    elements: dict = field(default_factory=dict)  # grau -> vetores z (caso unital)

    def summary(self) -> dict:
        return {
            "dimension": self.dimension,
            "support": sorted(str(g) for g in self.support.elements),
            "identity_dim": self.identity_dim,
            "chi0": None if self.chi0 is None else {str(k): v for k, v in sorted(self.chi0.items())},
            "split": self.split,
        }


def _center_component(b: GradedAlgebra, h: GroupElement) -> list:
    """z em B_h com zx = xz, z(xy) = (zx)y = x(zy) para toda a base."""
    comp = b.component(h)
    m = len(comp)
    if not m:
        return []
    ech = RowEchelon(m)
    zs = [{c: ONE} for c in comp]

    def acrescenta(vetores):
        coords = set()
        for v in vetores:
            coords.update(v)
        for k in coords:
            if ech.add({t: vetores[t].get(k, ZERO) for t in range(m)}):
                if ech.full:
                    return True
        return False

    n = b.dim
    for i in range(n):
        xi = {i: ONE}
        if acrescenta([vec_add(b.mul(z, xi), b.mul(xi, z), -ONE) for z in zs]):
            return []
    for i in range(n):
        xi = {i: ONE}
        zx = [b.mul(z, xi) for z in zs]
        for j in range(n):
            xij = b.bmul(i, j)
            xj = {j: ONE}
            eqs = []
            for t, z in enumerate(zs):
                z_xy = b.mul(z, xij)
                eqs.append(vec_add(z_xy, b.mul(zx[t], xj), -ONE))
                eqs.append(vec_add(z_xy, b.mul(xi, b.mul(z, xj)), -ONE))
            # intercala as duas familias de equacoes
            if acrescenta(eqs[0::2]) or acrescenta(eqs[1::2]):
                return []
    rows = [[r.get(t, ZERO) for t in range(m)] for r in ech.basis()]
    return [vec_clean({comp[t]: s[t] for t in range(m)}) for s in nullspace(rows, m)]


def _general_component(b: GradedAlgebra, g: GroupElement) -> list:
    """Solucoes f: B_h -> B_{g+h} de f(xy) = f(x)y = xf(y), como matrizes."""
    n = b.dim
    incog = [(r, i) for i in range(n) for r in b.component(b.degrees[i] + g)]
    if not incog:
        return []
    pos = {rc: t for t, rc in enumerate(incog)}
    m = len(incog)
    ech = RowEchelon(m)

    def soma(out, s, t, c):
        linha = out.setdefault(s, {})
        nv = linha.get(t, ZERO) + c
        if nv:
            linha[t] = nv
        else:
            linha.pop(t, None)

    for i in range(n):
        for j in range(n):
            # f(b_i b_j)
            f_xy = {}
            for k, c in b.bmul(i, j).items():
                for r in b.component(b.degrees[k] + g):
                    soma(f_xy, r, pos[(r, k)], c)
            # f(b_i) b_j  e  b_i f(b_j)
            f_x_y, x_f_y = {}, {}
            for r in b.component(b.degrees[i] + g):
                for s, c in b.bmul(r, j).items():
                    soma(f_x_y, s, pos[(r, i)], c)
            for r in b.component(b.degrees[j] + g):
                for s, c in b.bmul(i, r).items():
                    soma(x_f_y, s, pos[(r, j)], c)
            for outro in (f_x_y, x_f_y):
                for k in set(f_xy) | set(outro):
                    row = dict(f_xy.get(k, {}))
                    for t, a in outro.get(k, {}).items():
                        row[t] = row.get(t, ZERO) - a
                    if ech.add(row) and ech.full:
                        return []
    rows = [[r.get(t, ZERO) for t in range(m)] for r in ech.basis()]
    sols = []
    for s in nullspace(rows, m):
        mat = [[ZERO] * n for _ in range(n)]
        for t, (r, i) in enumerate(incog):
            mat[r][i] = s[t]
        sols.append(mat)
    return sols


def _mat_mul(a: list, c: list) -> list:
    n = len(a)
    return [[sum((a[r][k] * c[k][s] for k in range(n) if a[r][k]), ZERO) for s in range(n)] for r in range(n)]


def centroid(b: GradedAlgebra) -> CentroidReport:
    """Componentes homogeneos C(B)_g; caso unital via centro (f = L_z)."""
    grupo = b.group
    comps, elems = {}, {}
    if b.is_unital:
        for h in progresso(grupo.elements(), desc="centroide"):
            zs = _center_component(b, h)
            if zs:
                elems[h] = zs
                comps[h] = [b.left_matrix(z) for z in zs]
    else:
        for g in progresso(grupo.elements(), desc="centroide"):
            sols = _general_component(b, g)
            if sols:
                comps[g] = sols
    dimension = sum(len(v) for v in comps.values())
    support = SubgroupData(grupo, tuple(g for g in sorted(comps) if not g.is_identity))
    e = grupo.identity
    id_dim = len(comps.get(e, []))
    if id_dim == 1:
        chi0 = {}
        for h, mats in comps.items():
            if not (h + h).is_identity or len(mats) != 1:
                continue
            f2 = _mat_mul(mats[0], mats[0])
            # f^2 = c id, com c != 0 quando B e graduada-simples
            c = f2[0][0]
            if not c:
                continue
            chi0[h] = 1 if c > 0 else -1
        split = all(s == 1 for s in chi0.values())
    else:
        chi0, split = None, None
    if any(len(v) > 1 for h, v in comps.items() if h != e) and id_dim == 1:
        aviso("centroid has a homogeneous component of dimension > 1; algebra is not graded-simple")
    if support.order != len(comps):
        aviso("centroid support is not a subgroup; algebra is not graded-simple")
    log("CENTROIDE", f"dim={dimension} support={support.order} identity_dim={id_dim}")
    return CentroidReport(dimension, comps, support, id_dim, chi0, split, elems)


# ============================================================================
# Graduacao induzida, isomorfismos, tensor
# ============================================================================

def induced_grading(b: GradedAlgebra, alpha: GroupHom) -> GradedAlgebra:
    if alpha.domain != b.group:
        raise GradingError(f"hom is defined on {alpha.domain}, algebra is graded by {b.group}")
    return GradedAlgebra(
        group=alpha.codomain,
        labels=b.labels,
        degrees=tuple(alpha.apply(g) for g in b.degrees),
        sc=b.sc,
        unit=b.unit,
        composition=b.composition,
        kind=b.kind,
    )


def verify_iso(f: GradedLinearMap) -> Verdict:
    src, tgt = f.source, f.target
    if src.dim != tgt.dim:
        return Verdict("fail", "dimension mismatch")
    if src.group != tgt.group:
        return Verdict("fail", "grading groups differ")
    shift = f.shift or src.group.identity
    if not shift.is_identity:
        return Verdict("fail", "map is not of degree e")
    if inverse([list(r) for r in f.matrix]) is None:
        return Verdict("fail", "matrix is singular")
    cols = [f.column(c) for c in range(src.dim)]
    for c, col in enumerate(cols):
        for r in col:
            if tgt.degrees[r] != src.degrees[c]:
                return Verdict("fail", f"{src.labels[c]} leaves degree {src.degrees[c]}")
    if src.is_unital and tgt.is_unital and f.apply(src.unit) != tgt.unit:
        return Verdict("fail", "unit not preserved")
    for i in range(src.dim):
        for j in range(src.dim):
            if f.apply(src.bmul(i, j)) != tgt.mul(cols[i], cols[j]):
                return Verdict("fail", (src.labels[i], src.labels[j]))
    return Verdict("pass")


def weak_equivalence_check(b: GradedAlgebra, b2: GradedAlgebra, alpha: GroupHom,
                           f: GradedLinearMap) -> Verdict:
    """Equivalencia: f isomorfismo com f(B_g) = B'_{alpha(g)}."""
    if not (alpha.is_injective() and alpha.is_surjective()):
        return Verdict("fail", "alpha is not a group isomorphism")
    fonte = induced_grading(b, alpha)
    g = GradedLinearMap(fonte, b2, f.matrix, b2.group.identity)
    return verify_iso(g)


def _tensor_norm(a: GradedAlgebra, c: GradedAlgebra, idx) -> NormData:
    if a.composition is None or c.composition is None:
        return None
    inv = {}
    for (i, j), k in idx.items():
        ia, ic = a.composition.involution[i], c.composition.involution[j]
        inv[k] = {idx[(p, q)]: x * y for p, x in ia.items() for q, y in ic.items()}
    fp = tuple(sorted(idx[(i, j)] for i in a.composition.field_part for j in c.composition.field_part))
    return NormData(fp, inv)


def tensor(a: GradedAlgebra, c: GradedAlgebra) -> GradedAlgebra:
    """A (x) C sobre o mesmo grupo; grau = soma; sem regra de sinais."""
    if a.group != c.group:
        raise GradingError(f"tensor factors graded by different groups: {a.group} vs {c.group}")
    idx = {}
    labels, degrees = [], []
    for i in range(a.dim):
        for j in range(c.dim):
            idx[(i, j)] = len(labels)
            labels.append(f"{a.labels[i]}|{c.labels[j]}")
            degrees.append(a.degrees[i] + c.degrees[j])
    sc = {}
    for (i, k), pa in a.sc.items():
        for (j, l), pc in c.sc.items():
            sc[(idx[(i, j)], idx[(k, l)])] = {idx[(p, q)]: x * y for p, x in pa.items() for q, y in pc.items()}
    unit = None
    if a.is_unital and c.is_unital:
        unit = {idx[(p, q)]: x * y for p, x in a.unit.items() for q, y in c.unit.items()}
    kind = a.kind if c.kind in KINDS_ASSOCIATIVOS else (c.kind if a.kind in KINDS_ASSOCIATIVOS else "")
    return GradedAlgebra(c.group, tuple(labels), tuple(degrees), sc, unit,
                         composition=_tensor_norm(a, c, idx), kind=kind)


def direct_sum(a: GradedAlgebra, c: GradedAlgebra) -> GradedAlgebra:
    if a.group != c.group:
        raise GradingError("direct sum factors graded by different groups")
    off = a.dim
    sc = dict(a.sc)
    for (i, j), p in c.sc.items():
        sc[(i + off, j + off)] = {k + off: x for k, x in p.items()}
    unit = None
    if a.is_unital and c.is_unital:
        unit = dict(a.unit)
        unit.update({k + off: x for k, x in c.unit.items()})
    labels = tuple(f"{s}'" if s in a.labels else s for s in c.labels)
    return GradedAlgebra(a.group, a.labels + labels, a.degrees + c.degrees, sc, unit)


def component_square_signs(b: GradedAlgebra) -> dict:
    """
    Para graus de ordem <= 2 cujos quadrados caem em R1: inercia
    (pos, neg, nulos) da forma x -> coeficiente de x^2 na unidade.
    """
    if not b.is_unital or len(b.unit) != 1:
        return {}
    (u, cu), = b.unit.items()
    out = {}
    for g, comp in b.components.items():
        if not (g + g).is_identity:
            continue
        m = len(comp)
        gram = [[ZERO] * m for _ in range(m)]
        ok = True
        for s in range(m):
            for t in range(s, m):
                pol = vec_add(b.bmul(comp[s], comp[t]), b.bmul(comp[t], comp[s]))
                if any(k != u for k in pol):
                    ok = False
                    break
                gram[s][t] = gram[t][s] = pol.get(u, ZERO) / (2 * cu)
            if not ok:
                break
        if ok:
            out[g] = inertia(gram)
    return out


def format_vector(b: GradedAlgebra, v: dict) -> str:
    if not v:
        return "0"
    return " + ".join(f"{format_rational(c)}*{b.labels[k]}" for k, c in sorted(v.items()))
