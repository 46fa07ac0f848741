import random
from fractions import Fraction

import pytest

from nullstrat.lattice import AmbientWeight, GroupShape, dot, epsilon, weyl_group
from nullstrat.polytope import (euler_characteristic, face_counts, face_inclusions, face_lattice_json, faces,
                                is_T_unstable, make_support, min_norm_bruteforce, min_norm_certificate,
                                min_norm_point, support, weights_in_halfspace)
from nullstrat.repchar import IrrLabel, ext_power, irr_character, parse_module, standard

SL2, SL3 = GroupShape((2,)), GroupShape((3,))


def binary_weight(d, k):
    # x^k y^(d-k) has weight (d - 2k) eps_1
    return epsilon(SL2, 0, 1) * (d - 2 * k)


def test_support_of_monomials():
    assert support([(binary_weight(6, 4), 1)]) == (binary_weight(6, 4),)
    assert binary_weight(6, 4).coords == (-2, 2)
    ws = irr_character(IrrLabel(SL2, ((6,),))).weights()
    assert len(support([(w, 3) for w in ws])) == 7
    with pytest.raises(ValueError):
        support([(ws[0], 0)])


def test_min_norm_simple_cases():
    w = epsilon(SL3, 0, 1)
    assert min_norm_point([w]) == w
    assert min_norm_point([w, AmbientWeight.zero(SL3)]).is_zero()
    assert min_norm_point(irr_character(IrrLabel(SL3, ((0, 4),))).weights()).is_zero()


def test_min_norm_two_forms_c():
    s5 = GroupShape((5,))
    plus = [epsilon(s5, 0, k) + epsilon(s5, 0, l) for k in range(1, 5) for l in range(k + 1, 5)]
    c = min_norm_point(plus)
    # c = 2/(n-1) (1, ..., 1, -(n-1)) with n = 5
    assert c.coords == (Fraction(1, 2),) * 4 + (-2,)
    cert = min_norm_certificate(plus)
    assert cert.check(make_support(plus))
    assert sum(cert.coefficients) == 1


def test_instability_of_binary_sextics():
    assert is_T_unstable([(binary_weight(6, 5), 1), (binary_weight(6, 6), 2)])
    assert not is_T_unstable([(binary_weight(6, 3), 1)])
    assert not is_T_unstable([(w, 1) for w in parse_module(SL3, "0,4").weights()])


def test_faces_of_triangle():
    fs = faces(standard(SL3).weights())
    assert face_counts(fs) == {0: 3, 1: 3, 2: 1}
    assert euler_characteristic(fs) == 1
    for i, j in face_inclusions(fs):
        assert fs[i].members < fs[j].members
    assert '"inclusions"' in face_lattice_json(standard(SL3).weights(), fs)


def test_cone_over_single_ray():
    fs = faces([epsilon(SL3, 0, 1)], mode="cone")
    assert sorted(f.dim for f in fs) == [0, 1]
    assert any(not f.members for f in fs)


def test_face_equations_hold():
    S = make_support(parse_module(SL3, "0,4").weights())
    for f in faces(S):
        for i, w in enumerate(S):
            v = dot(f.functional.coords, w.coords)
            if i in f.members:
                assert v == f.offset
            else:
                assert v < f.offset


def test_halfspaces_for_two_forms():
    for n in (5, 7):
        sh = GroupShape((n,))
        ws = ext_power(standard(sh), 2).weights()
        c = AmbientWeight(sh, [Fraction(2, n - 1)] * (n - 1) + [-2])
        want = make_support(epsilon(sh, 0, k) + epsilon(sh, 0, l) for k in range(1, n) for l in range(k + 1, n))
        assert weights_in_halfspace(ws, c, "plus") == want
        assert weights_in_halfspace(ws, c, "zero") == want


def test_halfspace_all_weights():
    ws = standard(SL3).weights()[:1]
    assert weights_in_halfspace(ws, ws[0]) == tuple(ws)


def _random_weights(rng, shape, k):
    out = []
    for _ in range(k):
        blocks = []
        for n in shape.factors:
            raw = [rng.randint(-3, 3) for _ in range(n)]
            s = sum(raw)
            blocks.append([n * x - s for x in raw])
        out.append(AmbientWeight.from_blocks(shape, blocks))
    return out


def test_min_norm_agrees_with_oracle_and_is_equivariant():
    rng = random.Random(11)
    shapes = [SL2, SL3, GroupShape((4,)), GroupShape((2, 3)), GroupShape((5,))]
    for _ in range(60):
        sh = rng.choice(shapes)
        S = _random_weights(rng, sh, rng.randint(1, 6))
        c = min_norm_point(S)
        assert c == min_norm_bruteforce(S)
        if not c.is_zero():
            cc = dot(c.coords, c.coords)
            assert all(dot(w.coords, c.coords) >= cc for w in S)
        w = rng.choice(list(weyl_group(sh)))
        assert min_norm_point([w.act(x) for x in S]) == w.act(c)


def test_euler_characteristic_random_polytopes():
    rng = random.Random(5)
    for _ in range(15):
        S = _random_weights(rng, SL3, rng.randint(3, 7))
        fs = faces(S)
        assert euler_characteristic(fs) == 1
