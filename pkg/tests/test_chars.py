from fractions import Fraction

import pytest

from abgroup import FinAbGroup, subgroup, whole_group
from chars import (
    Character, all_characters, char_eval, char_extend, char_restrict, character_from_values, chi0_signs,
    cocycle_of, is_sign_character, sign_character, trivial_character,
)
from utils import CharacterError

Z4 = FinAbGroup((4,))


def test_rotation_reduced_mod_one():
    chi = Character(Z4, (Fraction(5, 4),))
    assert chi.rot == (Fraction(1, 4),)
    assert str(chi) == "[1/4]"
    assert chi(Z4.element((3,))) == Fraction(3, 4)
    assert trivial_character(Z4).is_trivial


@pytest.mark.parametrize("rot", [(Fraction(1, 3),), (Fraction(1, 4), 0)])
def test_invalid_character(rot):
    with pytest.raises(CharacterError):
        Character(Z4, rot)


def test_sign_on_two_torsion():
    chi = Character(Z4, (Fraction(1, 4),))
    assert chi.sign(Z4.element((2,))) == -1
    assert chi.sign(Z4.identity) == 1
    with pytest.raises(CharacterError, match="not a sign"):
        chi.sign(Z4.element((1,)))


def test_all_characters_order():
    chars = list(all_characters(FinAbGroup((2, 2))))
    assert len(chars) == 4
    assert chars[0].is_trivial
    assert chars[1].rot == (0, Fraction(1, 2))


def test_restrict_and_extend():
    h = subgroup(Z4, [(2,)])
    chi = Character(Z4, (Fraction(1, 4),))
    res = char_restrict(chi, h)
    assert res.rot == (Fraction(1, 2),)
    ext = char_extend(res, h)
    assert ext.rot == (Fraction(1, 4),)
    assert ext(Z4.element((2,))) == chi(Z4.element((2,)))


def test_character_from_values():
    h = subgroup(Z4, [(2,)])
    chi = character_from_values(h, {Z4.element((2,)): Fraction(1, 2)})
    assert chi.rot == (Fraction(1, 2),)
    with pytest.raises(CharacterError, match="missing value"):
        character_from_values(h, {})


def test_sign_character():
    g = FinAbGroup((2, 4))
    lam = sign_character(g, [-1, 1])
    assert is_sign_character(lam)
    assert lam.sign(g.element((1, 0))) == -1
    with pytest.raises(CharacterError, match="odd order"):
        sign_character(FinAbGroup((3,)), [-1])
    with pytest.raises(CharacterError, match="invalid sign"):
        sign_character(g, [2, 1])
    assert not is_sign_character(Character(Z4, (Fraction(1, 4),)))


def test_chi0_signs():
    chi = Character(Z4, (Fraction(1, 4),))
    assert chi0_signs(chi, whole_group(Z4)) == {Z4.identity: 1, Z4.element((2,)): -1}


def test_sign_cocycle_values():
    gamma = cocycle_of(Character(Z4, (Fraction(1, 4),)))
    e = Z4.element
    assert gamma(e((1,)), e((1,))) == 1
    assert gamma(e((2,)), e((2,))) == -1
    assert gamma(e((1,)), e((3,))) == -1
    assert gamma.table[(e((0,)), e((3,)))] == 1


@pytest.mark.parametrize("orders", [(4,), (2, 2), (8,), (4, 2)])
def test_sign_cocycle_is_cocycle(orders):
    g = FinAbGroup(orders)
    for chi in all_characters(g):
        assert cocycle_of(chi).is_cocycle()


def test_char_eval_canonical_representative():
    chi = Character(Z4, (Fraction(3, 4),))
    assert char_eval(chi, Z4.element((3,))) == Fraction(1, 4)
    with pytest.raises(CharacterError, match="is not in"):
        char_eval(chi, FinAbGroup((2,)).gen(0))
