import random
from fractions import Fraction

import pytest

from nullstrat.repchar import sl3, weyl_dim
from nullstrat.tensorcalc import (PolyTensor, SkewForm, beta, beta_needs_projection, bimonomials, delta,
                                  delta_power, in_kernel, iota, kernel_dim_delta, kernel_dims_seven_points,
                                  lie_action, lie_matrix_action, monomials, mu_pairing, omega, project_to_kernel,
                                  psi, random_element, rank, realize_irreducible, seven_points_data,
                                  stabilizer_dim, theta_kappa, theta_m, theta_omega, trace_element)

E = lambda i, p=None: PolyTensor.e(3, i, p)  # noqa: E731
X = lambda i, p=None: PolyTensor.x(3, i, p)  # noqa: E731


def rand_tensor(rng, a, b, p=None, terms=5):
    mons = bimonomials(3, a, b)
    return PolyTensor(3, a, b, {rng.choice(mons): rng.randint(-9, 9) for _ in range(terms)}, p)


def test_delta_examples():
    assert delta(E(1) * X(1)) == PolyTensor.constant(3, 1)
    assert delta(E(1) * X(2)).is_zero()
    with pytest.raises(ValueError):
        delta(E(1))


def test_bidegree_invariant():
    with pytest.raises(ValueError):
        PolyTensor(3, 1, 1, {((1, 0, 0), (0, 0, 0)): 1})
    t = PolyTensor(3, 1, 1, {((1, 0, 0), (1, 0, 0)): 0})
    assert t.coeffs == {}


def test_monomial_order_is_descending_lex():
    assert monomials(3, 2) == [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]


@pytest.mark.parametrize("ab", [(1, 2), (14, 1), (0, 5), (3, 0), (2, 2)])
def test_realize_irreducible_dims(ab):
    basis = realize_irreducible(*ab)
    assert len(basis) == weyl_dim(sl3(*ab))
    for v in basis[:20]:
        assert in_kernel(v)


def test_realize_over_small_prime_refused():
    with pytest.raises(ValueError):
        realize_irreducible(5, 5, p=7)


def test_delta_power_fast_path_matches_iteration():
    rng = random.Random(2)
    for _ in range(20):
        t = rand_tensor(rng, 3, 4)
        slow = delta(delta(delta(t)))
        assert delta_power(t, 3) == slow


def test_omega_examples():
    assert omega(X(2), X(3)) == E(1)
    assert omega(X(1) * X(1), X(1)).is_zero()
    # r of x-degree 1 with s of x-degree 1 but no x dependence in common directions
    assert omega(E(2) * X(1), X(1)).is_zero()
    with pytest.raises(ValueError):
        omega(E(1), X(2))
    rng = random.Random(4)
    r1, r2, s = rand_tensor(rng, 1, 1), rand_tensor(rng, 1, 1), rand_tensor(rng, 0, 2)
    assert omega(r1 + r2.scale(3), s) == omega(r1, s) + omega(r2, s).scale(3)


def test_seven_points_values():
    data = seven_points_data()
    assert psi(data["F"], data["G2"]) == E(2).scale(-32)
    assert beta(data["F"], data["G1"], data["G2"]).is_zero()
    zero = PolyTensor.zero(3, 1, 2)
    assert beta(zero, data["G1"], data["G2"]).is_zero()
    assert not beta_needs_projection()


def test_seven_points_kernels():
    assert kernel_dims_seven_points() == (1, 7, 4)
    assert kernel_dims_seven_points(None, project=False) == (1, 7, 4)
    for p in (1009, 7919):
        assert kernel_dims_seven_points(p) == (1, 7, 4)


def test_projection_lands_in_kernel():
    rng = random.Random(8)
    for _ in range(5):
        t = rand_tensor(rng, 2, 2, terms=8)
        h = project_to_kernel(t)
        assert in_kernel(h)
        # t - h is a multiple of q, so projecting twice changes nothing
        assert project_to_kernel(h) == h
    assert project_to_kernel(trace_element(3)).is_zero()


def test_lie_action_examples():
    assert lie_action(1, 2, E(2)) == E(1)
    assert lie_action(1, 2, X(1)) == -X(2)
    rng = random.Random(6)
    for _ in range(10):
        t = rand_tensor(rng, 2, 2)
        bracket = lie_action(1, 2, lie_action(2, 1, t)) - lie_action(2, 1, lie_action(1, 2, t))
        assert bracket == lie_action(1, 1, t) - lie_action(2, 2, t)


def test_stabilizers():
    rng = random.Random(12)
    v = random_element(realize_irreducible(1, 2), rng)
    assert stabilizer_dim(v, projective=True) == 0
    # X e1 = 0 kills the first column: 8 - 3 = 5 (the orbit of e1 is C^3 minus 0)
    assert stabilizer_dim(E(1)) == 5
    assert stabilizer_dim(E(1), projective=True) == 6
    adj = random_element(realize_irreducible(1, 1), rng)
    assert stabilizer_dim(adj) == 2
    with pytest.raises(ValueError):
        stabilizer_dim(PolyTensor.zero(3, 1, 0))


def test_skew_forms():
    assert iota(5, theta_omega()).rank() == 14
    for d in (5, 7, 9, 11):
        form = iota(d, theta_kappa(d))
        assert form.rank() == 3 * d - 1
        assert [[int(x) for x in v] for v in form.kernel()] == [theta_m(d)]
    assert iota(4, {}).rank() == 0
    with pytest.raises(ValueError):
        SkewForm(3, {(1, 1): 2})


def test_skew_ranks_are_even():
    rng = random.Random(9)
    for _ in range(30):
        N = rng.randint(2, 9)
        ent = {(i, j): rng.randint(-2, 2) for i in range(N) for j in range(i + 1, N) if rng.random() < 0.4}
        assert SkewForm(N, ent).rank() % 2 == 0


def test_mu_pairing_small():
    g = E(1) * E(1) * X(3)
    f = X(1) ** 3
    out = mu_pairing(g, f)
    assert (out.a, out.b) == (0, 2)
    assert out == (X(1) * X(3)).scale(2 * 3 * 2)
    assert mu_pairing(g, PolyTensor.zero(3, 0, 3)).is_zero()


def test_modular_rank_consistency():
    # ranks over Q agree with ranks mod two primes > 1000
    rng = random.Random(10)
    for _ in range(5):
        mat = [[rng.randint(-5, 5) for _ in range(7)] for _ in range(6)]
        mat[5] = [a + b for a, b in zip(mat[0], mat[1])]
        r = rank(mat)
        assert r == rank(mat, 1009) == rank(mat, 7919)


def test_modular_basis_dimension():
    assert kernel_dim_delta(4, 3, p=10007) == weyl_dim(sl3(4, 3))
    assert len(realize_irreducible(4, 3, p=10007)) == weyl_dim(sl3(4, 3))


def test_serialization_sorted():
    t = E(1) * X(2) + (E(2) * X(2)).scale(Fraction(1, 3))
    assert t.to_list() == [[[1, 0, 0], [0, 1, 0], "1/1"], [[0, 1, 0], [0, 1, 0], "1/3"]]
    assert t.reduce(7).to_list()[1][2] == 5
