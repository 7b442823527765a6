"""
GradReal - Algebra Linear Exata
Wrappers finos sobre sympy DomainMatrix (QQ, ZZ, GF(2)) usados por todos os
modulos: nucleo, solucao, posto, inversa, inercia via polinomio
caracteristico e forma normal de Smith com matrizes de transformacao.
"""

from fractions import Fraction

from sympy.polys.domains import GF, QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError
from sympy.polys.matrices.normalforms import smith_normal_decomp

from utils import GradRealError

GF2 = GF(2)


# ── Conversoes ──────────────────────────────────────────────────────────────

def _qq(x) -> "QQ":
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def _frac(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def to_qq(rows: list, ncols: int = None) -> DomainMatrix:
    n = len(rows)
    m = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    return DomainMatrix([[_qq(v) for v in r] for r in rows], (n, m), QQ)


def from_qq(dm: DomainMatrix) -> list:
    return [[_frac(v) for v in r] for r in dm.to_list()]


def to_zz(rows: list, ncols: int = None) -> DomainMatrix:
    n = len(rows)
    m = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    return DomainMatrix([[ZZ(int(v)) for v in r] for r in rows], (n, m), ZZ)


def from_zz(dm: DomainMatrix) -> list:
    return [[int(v) for v in r] for r in dm.to_list()]


# ── Racionais ───────────────────────────────────────────────────────────────

def rref(rows: list, ncols: int) -> tuple:
    """Forma escalonada reduzida: (linhas, pivos)."""
    if not rows:
        return [], ()
    red, pivots = to_qq(rows, ncols).rref()
    return from_qq(red), tuple(pivots)


def nullspace(rows: list, ncols: int) -> list:
    """Base racional de {x : A x = 0}."""
    red, pivots = rref(rows, ncols)
    livres = [c for c in range(ncols) if c not in pivots]
    base = []
    for f in livres:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        base.append(v)
    return base


def rank(rows: list, ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def solve(rows: list, rhs: list, ncols: int):
    """Uma solucao de A x = b, ou None se inconsistente."""
    aug = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, p in enumerate(pivots):
        x[p] = red[i][ncols]
    return x


def inverse(rows: list):
    """Inversa exata ou None se singular."""
    n = len(rows)
    if n == 0:
        return []
    try:
        return from_qq(to_qq(rows, n).inv())
    except DMNonInvertibleMatrixError:
        return None


def determinant(rows: list) -> Fraction:
    n = len(rows)
    if n == 0:
        return Fraction(1)
    return _frac(to_qq(rows, n).det())


def mat_mul(a: list, b: list) -> list:
    if not a or not b:
        return [[Fraction(0)] * (len(b[0]) if b else 0) for _ in a]
    return from_qq(to_qq(a) * to_qq(b))


def mat_vec(a: list, v: list) -> list:
    return [sum((x * y for x, y in zip(r, v)), Fraction(0)) for r in a]


def _trocas_de_sinal(coefs: list) -> int:
    sinais = [1 if c > 0 else -1 for c in coefs if c != 0]
    return sum(1 for a, b in zip(sinais, sinais[1:]) if a != b)


def inertia(sym: list) -> tuple:
    """
    (positivos, negativos, nulos) de uma matriz simetrica racional.
    Polinomio caracteristico tem so raizes reais, entao a regra de
    Descartes conta exatamente.
    """
    n = len(sym)
    if n == 0:
        return 0, 0, 0
    coefs = [_frac(c) for c in to_qq(sym, n).charpoly()]
    nulos = 0
    while nulos < len(coefs) and coefs[-1 - nulos] == 0:
        nulos += 1
    pos = _trocas_de_sinal(coefs)
    neg_coefs = [c * (-1) ** (n - i) for i, c in enumerate(coefs)]
    neg = _trocas_de_sinal(neg_coefs)
    return pos, neg, nulos


# ── Escalonamento incremental ───────────────────────────────────────────────

class RowEchelon:
    """
    Base escalonada mantida incrementalmente (vetores esparsos dict idx->Fraction).
    `add(v)` devolve True quando v aumenta o espaco.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self._rows = {}  # pivo -> linha normalizada (pivo = 1)

    def __len__(self):
        return len(self._rows)

    def reduce(self, v: dict) -> dict:
        v = {k: c for k, c in v.items() if c != 0}
        for p in sorted(self._rows):
            c = v.get(p)
            if not c:
                continue
            for k, x in self._rows[p].items():
                nv = v.get(k, Fraction(0)) - c * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def add(self, v: dict) -> bool:
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        piv = r[p]
        r = {k: c / piv for k, c in r.items()}
        for q, row in self._rows.items():
            c = row.get(p)
            if c:
                for k, x in r.items():
                    nv = row.get(k, Fraction(0)) - c * x
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        self._rows[p] = r
        return True

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def basis(self) -> list:
        return [dict(self._rows[p]) for p in sorted(self._rows)]

    @property
    def full(self) -> bool:
        return len(self._rows) == self.dim


# ── GF(2) ───────────────────────────────────────────────────────────────────

def solve_gf2(rows: list, rhs: list, ncols: int):
    """Solucao de A x = b sobre o corpo de 2 elementos, ou None."""
    if not rows:
        return [0] * ncols
    aug = [[GF2(int(v) % 2) for v in r] + [GF2(int(rhs[i]) % 2)] for i, r in enumerate(rows)]
    red, pivots = DomainMatrix(aug, (len(rows), ncols + 1), GF2).rref()
    if ncols in pivots:
        return None
    lst = red.to_list()
    x = [0] * ncols
    for i, p in enumerate(pivots):
        x[p] = int(lst[i][ncols]) % 2
    return x


# ── Inteiros ────────────────────────────────────────────────────────────────

def smith(rows: list, nrows: int, ncols: int) -> tuple:
    """
    Forma normal de Smith: (diag, S, T) com S*M*T = D.
    diag tem min(nrows, ncols) entradas; S e T unimodulares.
    """
    if nrows == 0 or ncols == 0:
        eye_s = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
        eye_t = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
        return [], eye_s, eye_t
    m = to_zz(rows, ncols)
    d, s, t = smith_normal_decomp(m)
    dl = from_zz(d)
    if from_zz(s * m * t) != dl:
        raise GradRealError("smith normal form decomposition failed verification")
    diag = [dl[i][i] for i in range(min(nrows, ncols))]
    return diag, from_zz(s), from_zz(t)


def unimodular_inverse(rows: list) -> list:
    """Inversa inteira de uma matriz unimodular."""
    inv = inverse([[Fraction(v) for v in r] for r in rows])
    if inv is None:
        raise GradRealError("matrix is not unimodular")
    out = []
    for r in inv:
        if any(v.denominator != 1 for v in r):
            raise GradRealError("matrix is not unimodular")
        out.append([int(v) for v in r])
    return out
