"""
GradReal - Caracteres e Cociclos de Sinal
Caractere = numeros de rotacao racionais por gerador (t significa e^{2 pi i t}).
O cociclo gamma vem da raiz quadrada fixa z_g = e^{pi i rep(chi(g))}, rep em [0,1).
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product

from abgroup import FinAbGroup, GroupElement, SubgroupData, torsion_subgroup
from utils import CharacterError, format_rational

HALF = Fraction(1, 2)


def _mod1(q) -> Fraction:
    q = Fraction(q)
    return q - (q.numerator // q.denominator)


@dataclass(frozen=True)
class Character:
    group: FinAbGroup
    rot: tuple

    def __post_init__(self):
        rot = tuple(_mod1(t) for t in self.rot)
        if len(rot) != self.group.rank:
            raise CharacterError(f"character needs {self.group.rank} rotation numbers, got {len(rot)}")
        for t, n in zip(rot, self.group.orders):
            if (n * t).denominator != 1:
                raise CharacterError(f"rotation {format_rational(t)} is not well defined on Z{n}")
        object.__setattr__(self, "rot", rot)

    def __call__(self, g: GroupElement) -> Fraction:
        return char_eval(self, g)

    @property
    def is_trivial(self) -> bool:
        return not any(self.rot)

    def sign(self, h: GroupElement) -> int:
        """Para h em G_[2]: -1 sse chi(h) = 1/2."""
        v = char_eval(self, h)
        if v not in (0, HALF):
            raise CharacterError(f"chi({h}) = {format_rational(v)} is not a sign")
        return -1 if v == HALF else 1

    def __str__(self):
        return "[" + ", ".join(format_rational(t) for t in self.rot) + "]"


def trivial_character(g: FinAbGroup) -> Character:
    return Character(g, (Fraction(0),) * g.rank)


def char_eval(chi: Character, g: GroupElement) -> Fraction:
    """Representante canonico em [0,1)."""
    if g.parent != chi.group:
        raise CharacterError(f"element {g} is not in {chi.group}")
    return _mod1(sum((c * t for c, t in zip(g.coords, chi.rot)), Fraction(0)))


def all_characters(g: FinAbGroup):
    """Todos os caracteres, b lexicografico com t_i = b_i / n_i."""
    for b in product(*(range(n) for n in g.orders)):
        yield Character(g, tuple(Fraction(bi, n) for bi, n in zip(b, g.orders)))


def char_restrict(chi: Character, h: SubgroupData) -> Character:
    """Restricao a apresentacao do subgrupo."""
    pres, inc = h.presentation
    return Character(pres, tuple(char_eval(chi, inc.apply(x)) for x in pres.gens()))


def char_values_on(chi: Character, h: SubgroupData) -> dict:
    return {x: char_eval(chi, x) for x in h.elements}


def char_extend(chi_h: Character, h: SubgroupData) -> Character:
    """
    Extensao de chi (dado na apresentacao de H) ao ambiente; devolve a menor
    em ordem lexicografica dos numeradores b_i.
    """
    pres, inc = h.presentation
    if chi_h.group != pres:
        raise CharacterError(f"character lives on {chi_h.group}, subgroup presentation is {pres}")
    pares = [(inc.apply(x), char_eval(chi_h, x)) for x in pres.gens()]
    for cand in all_characters(h.ambient):
        if all(char_eval(cand, g) == v for g, v in pares):
            return cand
    raise CharacterError("character does not extend")


def character_from_values(h: SubgroupData, values: dict) -> Character:
    """Caractere na apresentacao de H a partir de valores em elementos de H."""
    pres, inc = h.presentation
    rot = []
    for x in pres.gens():
        y = inc.apply(x)
        if y not in values:
            raise CharacterError(f"missing value at {y}")
        rot.append(values[y])
    chi = Character(pres, tuple(rot))
    for y, v in values.items():
        if char_eval(chi, h.to_presentation(y)) != _mod1(v):
            raise CharacterError(f"values are not a character at {y}")
    return chi


def sign_character(g: FinAbGroup, signs) -> Character:
    """lambda: G -> {+-1} dado por sinais nos geradores."""
    signs = list(signs)
    rot = []
    for s, n in zip(signs, g.orders):
        if s not in (1, -1):
            raise CharacterError(f"invalid sign {s}")
        if s == -1 and n % 2:
            raise CharacterError(f"generator of odd order {n} cannot have sign -1")
        rot.append(HALF if s == -1 else Fraction(0))
    return Character(g, tuple(rot))


def is_sign_character(chi: Character) -> bool:
    return all(t in (0, HALF) for t in chi.rot)


def chi0_signs(chi: Character, h: SubgroupData) -> dict:
    """chi restrito a H_[2]: elemento -> sinal."""
    pres, inc = h.presentation
    tors = torsion_subgroup(pres, 2)
    return {inc.apply(x): chi.sign(inc.apply(x)) for x in tors.elements}


# ============================================================================
# Cociclo de sinal
# ============================================================================

@dataclass(frozen=True)
class SignCocycle:
    """gamma(g1,g2) = z_{g1} z_{g2} / z_{g1 g2} em {+-1}."""

    group: FinAbGroup
    character: Character

    def __call__(self, a: GroupElement, b: GroupElement) -> int:
        ra, rb = char_eval(self.character, a), char_eval(self.character, b)
        return -1 if ra + rb >= 1 else 1

    @cached_property
    def table(self) -> dict:
        elems = self.group.elements()
        return {(a, b): self(a, b) for a in elems for b in elems}

    provenance = "z_g = exp(pi i rep(chi(g))), rep in [0,1)"

    def is_cocycle(self) -> bool:
        elems = self.group.elements()
        for a in elems:
            for b in elems:
                for c in elems:
                    if self(a, b) * self(a + b, c) != self(b, c) * self(a, b + c):
                        return False
        return True


def cocycle_of(chi: Character) -> SignCocycle:
    return SignCocycle(chi.group, chi)
