"""
GradReal - Grupos Abelianos Finitos
Grupos como produto de ciclicos, elementos como vetores de residuos,
homomorfismos por matriz, subgrupos gerados, quocientes com secao e
cociclo, e a decomposicao em base adaptada a um quociente elementar.
Nucleos, apresentacoes e quocientes saem da forma normal de Smith.
"""

from dataclasses import dataclass
from functools import cached_property, reduce
from itertools import product
from math import gcd, lcm

import config
from linalg import smith, unimodular_inverse
from utils import GroupError, log


# ============================================================================
# Grupo e elementos
# ============================================================================

@dataclass(frozen=True)
class FinAbGroup:
    """Produto Z_{n1} x ... x Z_{nk}; grupos com a mesma sequencia sao iguais."""

    orders: tuple

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(int(n) for n in self.orders))
        for n in self.orders:
            if n < 2:
                raise GroupError(f"cyclic factor order must be >= 2, got {n}")

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def size(self) -> int:
        return reduce(lambda a, b: a * b, self.orders, 1)

    @property
    def exponent(self) -> int:
        return reduce(lcm, self.orders, 1)

    @property
    def identity(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def gen(self, i: int) -> "GroupElement":
        return GroupElement(self, tuple(int(j == i) for j in range(self.rank)))

    def gens(self) -> list:
        return [self.gen(i) for i in range(self.rank)]

    def element(self, coords) -> "GroupElement":
        coords = tuple(coords)
        if len(coords) != self.rank:
            raise GroupError(f"element {coords} does not match group {self}")
        return GroupElement(self, tuple(int(c) % n for c, n in zip(coords, self.orders)))

    def elements(self, bound: int = None) -> list:
        """Todos os elementos em ordem lexicografica (limitado por ENUM_BOUND)."""
        bound = config.ENUM_BOUND if bound is None else bound
        if self.size > bound:
            raise GroupError(f"group {self} of size {self.size} exceeds enumeration bound {bound}")
        return [GroupElement(self, c) for c in product(*(range(n) for n in self.orders))]

    def is_elementary_2(self) -> bool:
        return all(n == 2 for n in self.orders)

    def __str__(self):
        if not self.orders:
            return "1"
        return " x ".join(f"Z{n}" for n in self.orders)


@dataclass(frozen=True)
class GroupElement:
    parent: FinAbGroup
    coords: tuple

    def _check(self, other: "GroupElement"):
        if other.parent != self.parent:
            raise GroupError(f"elements of different groups: {self.parent} vs {other.parent}")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(self.parent, tuple((a + b) % n for a, b, n in
                                               zip(self.coords, other.coords, self.parent.orders)))

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.parent, tuple((-a) % n for a, n in
                                               zip(self.coords, self.parent.orders)))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __mul__(self, k: int) -> "GroupElement":
        return GroupElement(self.parent, tuple((k * a) % n for a, n in
                                               zip(self.coords, self.parent.orders)))

    __rmul__ = __mul__

    def __lt__(self, other: "GroupElement") -> bool:
        return self.coords < other.coords

    def __le__(self, other: "GroupElement") -> bool:
        return self.coords <= other.coords

    @property
    def is_identity(self) -> bool:
        return not any(self.coords)

    def order(self) -> int:
        return element_order(self)

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.coords) + ")"


def element_order(g: GroupElement) -> int:
    """o(g) = mmc dos n_i / mdc(c_i, n_i)."""
    return reduce(lcm, (n // gcd(c, n) for c, n in zip(g.coords, g.parent.orders)), 1)


def make_group(orders) -> FinAbGroup:
    """Normaliza a lista de ordens; lista vazia = grupo trivial."""
    orders = [int(n) for n in orders]
    for n in orders:
        if n <= 1:
            raise GroupError(f"cyclic factor order must be >= 2, got {n}")
    return FinAbGroup(tuple(orders))


TRIVIAL = FinAbGroup(())


def product_group(a: FinAbGroup, b: FinAbGroup) -> tuple:
    """(A x B, inclusao de A, inclusao de B)."""
    ab = FinAbGroup(a.orders + b.orders)
    ia = hom_from_images(a, ab, [ab.element(g.coords + (0,) * b.rank) for g in a.gens()])
    ib = hom_from_images(b, ab, [ab.element((0,) * a.rank + g.coords) for g in b.gens()])
    return ab, ia, ib


# ============================================================================
# Homomorfismos
# ============================================================================

@dataclass(frozen=True)
class GroupHom:
    """
    matrix[r][c]: coeficiente do gerador r do contradominio na imagem do
    gerador c do dominio. Validado na construcao.
    """

    domain: FinAbGroup
    codomain: FinAbGroup
    matrix: tuple

    def __post_init__(self):
        m = tuple(tuple(int(v) % n for v in row) for row, n in
                  zip(self.matrix, self.codomain.orders))
        if len(m) != self.codomain.rank or any(len(r) != self.domain.rank for r in m):
            raise GroupError(f"hom matrix shape does not match {self.domain} -> {self.codomain}")
        for c, n_c in enumerate(self.domain.orders):
            for r, n_r in enumerate(self.codomain.orders):
                if (n_c * m[r][c]) % n_r:
                    raise GroupError(
                        f"ill-defined hom: generator {c} of order {n_c} cannot map to coefficient "
                        f"{m[r][c]} in Z{n_r}")
        object.__setattr__(self, "matrix", m)

    def apply(self, g: GroupElement) -> GroupElement:
        if g.parent != self.domain:
            raise GroupError(f"element {g} is not in {self.domain}")
        return GroupElement(self.codomain, tuple(
            sum(a * x for a, x in zip(row, g.coords)) % n
            for row, n in zip(self.matrix, self.codomain.orders)))

    __call__ = apply

    def images(self) -> list:
        return [self.apply(g) for g in self.domain.gens()]

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """self o inner."""
        return hom_from_images(inner.domain, self.codomain, [self.apply(x) for x in inner.images()])

    @cached_property
    def kernel(self) -> "SubgroupData":
        return hom_kernel(self)

    @cached_property
    def image(self) -> "SubgroupData":
        return hom_image(self)

    def is_surjective(self) -> bool:
        return self.image.order == self.codomain.size

    def is_injective(self) -> bool:
        return self.kernel.order == 1


def hom_from_images(domain: FinAbGroup, codomain: FinAbGroup, images) -> GroupHom:
    images = list(images)
    if len(images) != domain.rank:
        raise GroupError("one image per domain generator is required")
    matrix = tuple(tuple(x.coords[r] for x in images) for r in range(codomain.rank))
    return GroupHom(domain, codomain, matrix)


def identity_hom(g: FinAbGroup) -> GroupHom:
    return hom_from_images(g, g, g.gens())


def trivial_hom(domain: FinAbGroup, codomain: FinAbGroup = TRIVIAL) -> GroupHom:
    return hom_from_images(domain, codomain, [codomain.identity] * domain.rank)


def multiplication_hom(g: FinAbGroup, m: int) -> GroupHom:
    """O mapa [m]: x -> x^m (aditivamente m*x)."""
    return hom_from_images(g, g, [m * x for x in g.gens()])


def hom_apply(h: GroupHom, g: GroupElement) -> GroupElement:
    return h.apply(g)


def _null_columns(rows: list, nrows: int, ncols: int) -> list:
    """Colunas de T que geram o reticulado inteiro {x : M x = 0}."""
    diag, _, t = smith(rows, nrows, ncols)
    return [[t[i][j] for i in range(ncols)] for j in range(ncols)
            if j >= len(diag) or diag[j] == 0]


def hom_kernel(h: GroupHom) -> "SubgroupData":
    """ker h via SNF de [M | diag(n')]."""
    dom, cod = h.domain, h.codomain
    if cod.rank == 0:
        return SubgroupData(dom, tuple(dom.gens()))
    if dom.rank == 0:
        return SubgroupData(dom, ())
    k, k2 = dom.rank, cod.rank
    rows = [list(h.matrix[r]) + [cod.orders[r] if c == r else 0 for c in range(k2)]
            for r in range(k2)]
    cols = _null_columns(rows, k2, k + k2)
    gens = [dom.element(col[:k]) for col in cols]
    gens = tuple(g for g in gens if not g.is_identity)
    log("GRUPO", f"kernel of {dom} -> {cod}: {len(gens)} generators")
    return SubgroupData(dom, gens)


def hom_image(h: GroupHom) -> "SubgroupData":
    return SubgroupData(h.codomain, tuple(x for x in h.images() if not x.is_identity))


# ============================================================================
# Subgrupos e quocientes
# ============================================================================

@dataclass(frozen=True)
class SubgroupData:
    ambient: FinAbGroup
    generators: tuple = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        for g in gens:
            if g.parent != self.ambient:
                raise GroupError(f"generator {g} is not in {self.ambient}")
        object.__setattr__(self, "generators", gens)

    @cached_property
    def elements(self) -> frozenset:
        found = {self.ambient.identity}
        frontier = [self.ambient.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = x + g
                    if y not in found:
                        found.add(y)
                        nxt.append(y)
            frontier = nxt
            if len(found) > config.ENUM_BOUND:
                raise GroupError(f"subgroup of {self.ambient} exceeds enumeration bound")
        return frozenset(found)

    @property
    def order(self) -> int:
        return len(self.elements)

    def sorted_elements(self) -> list:
        return sorted(self.elements)

    def __contains__(self, g: GroupElement) -> bool:
        return g in self.elements

    def same_as(self, other: "SubgroupData") -> bool:
        return self.ambient == other.ambient and self.elements == other.elements

    def contains_subgroup(self, other: "SubgroupData") -> bool:
        return other.ambient == self.ambient and other.elements <= self.elements

    @cached_property
    def presentation(self) -> tuple:
        """
        (P, inclusao P -> ambiente) com P produto de ciclicos.
        Reticulado de relacoes = nucleo de Z^m -> G, diagonalizado por SNF.
        """
        gens = [g for g in self.generators if not g.is_identity]
        if not gens:
            return TRIVIAL, trivial_hom(TRIVIAL, self.ambient)
        m, k = len(gens), self.ambient.rank
        rows = [[g.coords[r] for g in gens] + [self.ambient.orders[r] if c == r else 0 for c in range(k)]
                for r in range(k)]
        rel = [col[:m] for col in _null_columns(rows, k, m + k)]
        kmat = [[rel[j][i] for j in range(len(rel))] for i in range(m)]
        diag, s, _ = smith(kmat, m, len(rel))
        sinv = unimodular_inverse(s)
        orders, images = [], []
        for i in range(m):
            d = abs(diag[i]) if i < len(diag) else 0
            if d == 0:
                raise GroupError("infinite relation lattice in subgroup presentation")
            if d == 1:
                continue
            orders.append(d)
            img = self.ambient.identity
            for j, g in enumerate(gens):
                img = img + sinv[j][i] * g
            images.append(img)
        pres = FinAbGroup(tuple(orders))
        inc = hom_from_images(pres, self.ambient, images)
        if pres.size != self.order:
            raise GroupError(f"subgroup presentation of size {pres.size} does not match order {self.order}")
        return pres, inc

    @cached_property
    def presentation_index(self) -> dict:
        """elemento do ambiente -> elemento da apresentacao."""
        pres, inc = self.presentation
        return {inc.apply(x): x for x in pres.elements(bound=max(config.ENUM_BOUND, pres.size))}

    def to_presentation(self, g: GroupElement) -> GroupElement:
        try:
            return self.presentation_index[g]
        except KeyError:
            raise GroupError(f"element {g} is not in the subgroup") from None

    @cached_property
    def quotient_data(self) -> "QuotientData":
        return quotient(self.ambient, self)

    def __str__(self):
        return "<" + ", ".join(str(g) for g in self.generators) + ">"


def subgroup(ambient: FinAbGroup, generators) -> SubgroupData:
    return SubgroupData(ambient, tuple(ambient.element(g) if not isinstance(g, GroupElement) else g
                                       for g in generators))


def whole_group(g: FinAbGroup) -> SubgroupData:
    return SubgroupData(g, tuple(g.gens()))


def power_subgroup(g: FinAbGroup, m: int) -> SubgroupData:
    """G^[m] = im[m]."""
    if m < 1:
        raise GroupError("m must be >= 1")
    return hom_image(multiplication_hom(g, m))


def torsion_subgroup(g: FinAbGroup, m: int) -> SubgroupData:
    """G_[m] = ker[m]."""
    if m < 1:
        raise GroupError("m must be >= 1")
    return hom_kernel(multiplication_hom(g, m))


@dataclass(frozen=True)
class QuotientData:
    """Quociente G/H com projecao, secao lexicografica e cociclo sigma."""

    group: FinAbGroup
    projection: GroupHom
    subgroup: SubgroupData

    @property
    def ambient(self) -> FinAbGroup:
        return self.projection.domain

    @cached_property
    def _section(self) -> dict:
        sec = {}
        for g in self.ambient.elements():
            sec.setdefault(self.projection.apply(g), g)
        return sec

    def section(self, gbar: GroupElement) -> GroupElement:
        """xi(gbar): menor preimagem lexicografica; xi(e) = e."""
        return self._section[gbar]

    def sigma(self, a: GroupElement, b: GroupElement) -> GroupElement:
        """sigma(a,b) = xi(a) + xi(b) - xi(a+b), sempre em H."""
        return self.section(a) + self.section(b) - self.section(a + b)

    @cached_property
    def hom_section(self):
        """Secao homomorfica (H somando direto) ou None."""
        lifts = []
        for i, d in enumerate(self.group.orders):
            gi = self.group.gen(i)
            cand = [x for x in self.ambient.elements()
                    if self.projection.apply(x) == gi and (d * x).is_identity]
            if not cand:
                return None
            lifts.append(min(cand))
        return hom_from_images(self.group, self.ambient, lifts)


def quotient(g: FinAbGroup, h: SubgroupData) -> QuotientData:
    """G/H via SNF de [diag(n) | H]; H trivial devolve a identidade."""
    if h.ambient != g:
        raise GroupError(f"subgroup {h} is not contained in {g}")
    gens = [x for x in h.generators if not x.is_identity]
    if not gens:
        return QuotientData(g, identity_hom(g), h)
    k, m = g.rank, len(gens)
    rows = [[g.orders[r] if c == r else 0 for c in range(k)] + [x.coords[r] for x in gens]
            for r in range(k)]
    diag, s, _ = smith(rows, k, k + m)
    orders, proj_rows = [], []
    for i in range(k):
        d = abs(diag[i])
        if d == 0:
            raise GroupError("quotient is not finite")
        if d == 1:
            continue
        orders.append(d)
        proj_rows.append(tuple(v % d for v in s[i]))
    qg = FinAbGroup(tuple(orders))
    pi = GroupHom(g, qg, tuple(proj_rows))
    if qg.size * h.order != g.size:
        raise GroupError(f"quotient {g}/{h} has inconsistent size {qg.size}")
    log("GRUPO", f"quotient {g} / {h} = {qg}")
    return QuotientData(qg, pi, h)


def quotient_by_hom(pi: GroupHom) -> QuotientData:
    """Dados de quociente para um epimorfismo dado (mantendo seu contradominio)."""
    if not pi.is_surjective():
        raise GroupError("projection is not surjective")
    return QuotientData(pi.codomain, pi, pi.kernel)


# ============================================================================
# Base adaptada (quociente elementar de 2-grupo)
# ============================================================================

@dataclass(frozen=True)
class BasisSplit:
    """Base de G (ordens potencias de primos) e marcas (imagem nao trivial)."""

    basis: tuple
    marked: tuple

    @property
    def orders(self) -> list:
        return [g.order() for g in self.basis]


def _primes(n: int) -> list:
    ps, p = [], 2
    while p * p <= n:
        if n % p == 0:
            ps.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        ps.append(n)
    return ps


def _span_size(elems: list) -> int:
    return SubgroupData(elems[0].parent, tuple(elems)).order if elems else 1


def _primary_type(g: FinAbGroup, p: int) -> list:
    """Ordens (potencias de p) dos fatores ciclicos da parte p."""
    pres, _ = primary_part(g, p).presentation
    # fatores de um p-grupo ja sao potencias de p
    return sorted(pres.orders, reverse=True)


def primary_part(g: FinAbGroup, p: int) -> SubgroupData:
    n = g.size
    while n % p == 0:
        n //= p
    return power_subgroup(g, n)


def basis_split(pi: GroupHom) -> BasisSplit:
    """
    Base {g_j} de G com pi(g_j) = e ou parte de uma base de Gbar.
    Partes impares ficam sem marca; a parte 2 e buscada com backtracking
    em ordem lexicografica (deterministico).
    """
    gbar = pi.codomain
    if not gbar.is_elementary_2():
        raise GroupError(f"quotient {gbar} is not an elementary abelian 2-group")
    if not pi.is_surjective():
        raise GroupError("projection is not surjective")
    g = pi.domain
    basis, marked = [], []
    for p in _primes(g.size):
        if p == 2:
            continue
        part = primary_part(g, p)
        pres, inc = part.presentation
        for x in pres.gens():
            basis.append(inc.apply(x))
            marked.append(False)
    if g.size % 2 == 0:
        tipo = _primary_type(g, 2)
        two = sorted(primary_part(g, 2).elements)
        by_order = {}
        for x in two:
            by_order.setdefault(x.order(), []).append(x)
        alvo = gbar.rank
        escolha = _busca_base(pi, tipo, by_order, alvo)
        if escolha is None:
            raise GroupError(f"no adapted basis found for {g} -> {gbar}")
        for x, mk in escolha:
            basis.append(x)
            marked.append(mk)
    elif gbar.rank:
        raise GroupError("odd order group cannot map onto a nontrivial 2-group")
    return BasisSplit(tuple(basis), tuple(marked))


def _busca_base(pi: GroupHom, tipo: list, by_order: dict, alvo: int):
    gbar = pi.codomain

    def rec(i, chosen, imgs, nmarked, span):
        if i == len(tipo):
            return list(chosen) if nmarked == alvo else None
        if nmarked + (len(tipo) - i) < alvo:
            return None
        for x in by_order.get(tipo[i], []):
            img = pi.apply(x)
            mk = not img.is_identity
            if mk:
                novo = _span_size(imgs + [img])
                if novo != 2 ** (len(imgs) + 1):
                    continue
            s = _span_size([c for c, _ in chosen] + [x])
            if s != span * tipo[i]:
                continue
            chosen.append((x, mk))
            res = rec(i + 1, chosen, imgs + [img] if mk else imgs, nmarked + mk, s)
            if res is not None:
                return res
            chosen.pop()
        return None

    return rec(0, [], [], 0, 1)


# ============================================================================
# Automorfismos (enumeracao para grupos pequenos)
# ============================================================================

def automorphisms(g: FinAbGroup):
    """Gera todos os automorfismos de G (so para grupos pequenos)."""
    elems = g.elements()
    cands = [[x for x in elems if (n * x).is_identity] for n in g.orders]
    for imgs in product(*cands):
        if _span_size(list(imgs)) == g.size:
            yield hom_from_images(g, g, imgs)


def transport_subgroup(alpha: GroupHom, h: SubgroupData) -> SubgroupData:
    return SubgroupData(alpha.codomain, tuple(alpha.apply(x) for x in h.generators))
