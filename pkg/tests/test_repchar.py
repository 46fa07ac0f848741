import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from nullstrat.lattice import AmbientWeight, GroupShape, epsilon
from nullstrat.repchar import (CharacterMultiset, IrrLabel, center_character, center_character_from_weights,
                               decompose, decompose_by_extraction, diagonal_torus_invariants, ext_power,
                               invariant_dim, irr_character, mult_in, mult_in_tensor, parse_module, sl3, standard,
                               sym_power, tensor, trivial, weyl_dim)

SL2, SL3 = GroupShape((2,)), GroupShape((3,))


@pytest.mark.parametrize("ab, dim", [((14, 1), 255), ((0, 21), 253), ((1, 2), 15), ((0, 0), 1), ((2, 2), 27),
                                     ((30, 0), 496), ((5, 9), 480), ((0, 4), 15), ((0, 34), 630)])
def test_weyl_dim(ab, dim):
    assert weyl_dim(sl3(*ab)) == dim


def test_standard_character():
    ch = irr_character(sl3(1, 0))
    assert set(ch.mults) == {epsilon(SL3, 0, i).coords for i in (1, 2, 3)}
    assert set(ch.mults.values()) == {1}


def test_binary_form_weights():
    d = 6
    ch = irr_character(IrrLabel(SL2, ((d,),)))
    assert sorted(ch.mults) == sorted(tuple(x * (d - 2 * k) for x in (1, -1)) for k in range(d + 1))


def test_tensor_basics():
    c3 = standard(SL3)
    assert tensor(c3, trivial(SL3)) == c3
    t = tensor(c3, c3.dual())
    assert t.dim == 9
    assert t.multiplicity((0, 0, 0)) == 3


def test_powers():
    c5 = standard(GroupShape((5,)))
    e2 = ext_power(c5, 2)
    s5 = GroupShape((5,))
    want = {(epsilon(s5, 0, k) + epsilon(s5, 0, l)).coords for k in range(1, 6) for l in range(k + 1, 6)}
    assert set(e2.mults) == want
    assert sym_power(c5, 0) == trivial(s5)
    assert sym_power(standard(SL2), 6).dim == 7


def test_mult_in_examples():
    assert mult_in(sl3(2, 1), irr_character(sl3(2, 1))) == 1
    prod = tensor(irr_character(sl3(1, 14)), irr_character(sl3(0, 21)))
    assert mult_in(sl3(0, 34), prod) >= 1
    assert mult_in_tensor(sl3(0, 34), sl3(1, 14), sl3(0, 21)) == mult_in(sl3(0, 34), prod)


def test_invariant_dims():
    s4 = GroupShape((4,))
    assert invariant_dim(ext_power(standard(s4), 2), 2) >= 1
    s33 = GroupShape((3, 3))
    hom = parse_module(s33, "std-dual x std")
    assert invariant_dim(hom, 3) >= 1
    assert invariant_dim(hom, 1) == 0
    assert invariant_dim(standard(SL3), 1) == 0


def test_center_characters():
    assert center_character(sl3(1, 0)) == (1,)
    assert center_character(sl3(1, 1)) == (0,)
    assert center_character(sl3(0, 34)) == (2,)
    assert center_character(sl3(34, 0)) == (1,)
    for lab in (sl3(0, 34), sl3(34, 0), sl3(5, 9)):
        assert center_character_from_weights(lab) == center_character(lab)


def test_diagonal_torus_invariants():
    assert diagonal_torus_invariants([(1,), (-1,)]).basis == ((1, 1),)
    assert diagonal_torus_invariants([(0,), (0,), (0,)]).transcendence_degree == 3
    t = diagonal_torus_invariants([(1,)] * 4)
    assert t.transcendence_degree == 3
    assert all(sum(v) == 0 for v in t.basis)


def test_parse_module():
    assert parse_module(SL3, "0,4").dim == 15
    assert parse_module(SL3, "0,4-dual") == parse_module(SL3, "4,0")
    assert parse_module(SL3, "sym:4") == irr_character(sl3(4, 0))
    assert parse_module(SL3, "adj") == irr_character(sl3(1, 1))
    assert parse_module(SL3, "std + triv").dim == 4
    assert parse_module(GroupShape((5, 3)), "std-dual x std").dim == 15
    with pytest.raises(ValueError):
        parse_module(GroupShape((5, 3)), "std")


def test_label_validation():
    with pytest.raises(ValueError):
        IrrLabel(SL3, ((1,),))
    with pytest.raises(ValueError):
        IrrLabel(SL3, ((-1, 0),))


def test_irr_characters_match_weyl_dims_and_are_invariant():
    for a in range(21):
        for b in range(21 - a):
            if (a + b) % 4:
                continue
            ch = irr_character(sl3(a, b))
            assert ch.dim == weyl_dim(sl3(a, b))
            assert ch.is_w_invariant()


def test_decomposition_matches_extraction():
    rng = random.Random(3)
    labels = [sl3(a, b) for a in range(5) for b in range(5) if weyl_dim(sl3(a, b)) <= 64]
    for _ in range(12):
        x, y = rng.choice(labels), rng.choice(labels)
        prod = tensor(irr_character(x), irr_character(y))
        dec = decompose(prod)
        assert dec == decompose_by_extraction(prod)
        assert sum(k * weyl_dim(l) for l, k in dec.items()) == prod.dim
        rebuilt = None
        for lab, k in dec.items():
            for _ in range(k):
                rebuilt = irr_character(lab) if rebuilt is None else rebuilt + irr_character(lab)
        assert rebuilt == prod
        for lab, k in dec.items():
            assert mult_in_tensor(lab, x, y) == k


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 4))
def test_power_dimensions(a, b, d):
    ch = irr_character(sl3(a, b))
    assert sym_power(ch, d).dim == comb(ch.dim + d - 1, d)
    assert ext_power(ch, d).dim == comb(ch.dim, d)
