"""Explicit SL_n modules inside Sym^a(C^n) (x) Sym^b(C^n)^* and the
equivariant operators built from the contraction Delta.

A :class:`PolyTensor` is a polynomial in variables e_1..e_n (degree a) and
x_1..x_n (degree b) with coefficients in Q (Fractions) or F_p (ints mod p).
Monomials are exponent tuples; bases are ordered degree-lexicographically
(descending exponent tuples).
"""

from __future__ import annotations

import itertools
import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence

import numpy as np

from .lattice import perm_sign
from .linalg import nullspace_mod_p, nullspace_q, rank_mod_p, rank_q, solve_q


def _norm(x, p):
    if p is None:
        return Fraction(x)
    return int(x) % p


def _inv(x, p):
    if p is None:
        return 1 / Fraction(x)
    return pow(int(x) % p, p - 2, p)


def monomials(n: int, d: int) -> list[tuple[int, ...]]:
    """Exponent tuples of degree d in n variables, lexicographically descending."""
    out = []
    for combo in itertools.combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(set(out), reverse=True)


def bimonomials(n: int, a: int, b: int) -> list[tuple]:
    return [(al, be) for al in monomials(n, a) for be in monomials(n, b)]


def _add_exp(u, v):
    return tuple(x + y for x, y in zip(u, v))


def _unit(n, i):
    return tuple(int(k == i) for k in range(n))


@dataclass(frozen=True)
class PolyTensor:
    """Element of Sym^a(C^n) (x) Sym^b(C^n)^* with exact coefficients."""

    n: int
    a: int
    b: int
    coeffs: dict = field(default_factory=dict, hash=False, compare=False)
    p: int | None = None

    def __post_init__(self):
        clean = {}
        for (al, be), c in self.coeffs.items():
            if len(al) != self.n or len(be) != self.n:
                raise ValueError("exponent length mismatch")
            if sum(al) != self.a or sum(be) != self.b:
                raise ValueError(f"monomial {(al, be)} not of bidegree ({self.a},{self.b})")
            c = _norm(c, self.p)
            if c:
                clean[(tuple(al), tuple(be))] = c
        object.__setattr__(self, "coeffs", clean)

    # construction
    @classmethod
    def zero(cls, n, a, b, p=None):
        return cls(n, a, b, {}, p)

    @classmethod
    def constant(cls, n, value, p=None):
        return cls(n, 0, 0, {((0,) * n, (0,) * n): value}, p)

    @classmethod
    def e(cls, n, i, p=None):
        """The variable e_i (1-based)."""
        return cls(n, 1, 0, {(_unit(n, i - 1), (0,) * n): 1}, p)

    @classmethod
    def x(cls, n, i, p=None):
        """The variable x_i (1-based)."""
        return cls(n, 0, 1, {((0,) * n, _unit(n, i - 1)): 1}, p)

    @classmethod
    def from_vector(cls, n, a, b, vec, p=None):
        return cls(n, a, b, {m: c for m, c in zip(bimonomials(n, a, b), vec)}, p)

    def to_vector(self) -> list:
        zero = 0 if self.p is not None else Fraction(0)
        return [self.coeffs.get(m, zero) for m in bimonomials(self.n, self.a, self.b)]

    def reduce(self, p: int) -> "PolyTensor":
        """Image over F_p of a rational tensor."""
        if self.p is not None:
            raise ValueError("already modular")
        out = {}
        for m, c in self.coeffs.items():
            c = Fraction(c)
            out[m] = c.numerator * pow(c.denominator, p - 2, p)
        return PolyTensor(self.n, self.a, self.b, out, p)

    # arithmetic
    def _compat(self, other):
        if other.n != self.n or other.p != self.p:
            raise ValueError("tensors over different spaces or fields")

    def __eq__(self, other):
        return (isinstance(other, PolyTensor) and (self.n, self.a, self.b, self.p) == (other.n, other.a, other.b, other.p)
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.n, self.a, self.b, self.p, frozenset(self.coeffs.items())))

    def __add__(self, other):
        self._compat(other)
        if (self.a, self.b) != (other.a, other.b):
            if not other.coeffs:
                return self
            if not self.coeffs:
                return other
            raise ValueError("bidegree mismatch")
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return PolyTensor(self.n, self.a, self.b, out, self.p)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        return PolyTensor(self.n, self.a, self.b, {m: c * k for m, c in self.coeffs.items()}, self.p)

    def __rmul__(self, k):
        return self.scale(k)

    def __mul__(self, other):
        if not isinstance(other, PolyTensor):
            return self.scale(other)
        self._compat(other)
        out: dict = defaultdict(int)
        for (a1, b1), c1 in self.coeffs.items():
            for (a2, b2), c2 in other.coeffs.items():
                out[(_add_exp(a1, a2), _add_exp(b1, b2))] += c1 * c2
        return PolyTensor(self.n, self.a + other.a, self.b + other.b, out, self.p)

    def __pow__(self, k: int):
        out = PolyTensor.constant(self.n, 1, self.p)
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.coeffs

    # calculus
    def d_e(self, i: int) -> "PolyTensor":
        """Partial derivative in e_i (0-based)."""
        if self.a == 0:
            return PolyTensor.zero(self.n, 0, self.b, self.p)
        out = {}
        for (al, be), c in self.coeffs.items():
            if al[i]:
                na = list(al)
                na[i] -= 1
                out[(tuple(na), be)] = c * al[i]
        return PolyTensor(self.n, self.a - 1, self.b, out, self.p)

    def d_x(self, i: int) -> "PolyTensor":
        """Partial derivative in x_i (0-based)."""
        if self.b == 0:
            return PolyTensor.zero(self.n, self.a, 0, self.p)
        out = {}
        for (al, be), c in self.coeffs.items():
            if be[i]:
                nb = list(be)
                nb[i] -= 1
                out[(al, tuple(nb))] = c * be[i]
        return PolyTensor(self.n, self.a, self.b - 1, out, self.p)

    def weight_blocks(self) -> dict:
        """Coefficients grouped by GL_n weight alpha - beta."""
        out: dict = defaultdict(dict)
        for (al, be), c in self.coeffs.items():
            out[tuple(x - y for x, y in zip(al, be))][(al, be)] = c
        return out

    def to_list(self) -> list:
        """Sorted (e-exponent, x-exponent, value) triples."""
        def enc(c):
            if self.p is not None:
                return int(c)
            c = Fraction(c)
            return f"{c.numerator}/{c.denominator}"
        return [[list(al), list(be), enc(c)] for (al, be), c in sorted(self.coeffs.items(), reverse=True)]

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for (al, be), c in sorted(self.coeffs.items(), reverse=True):
            mon = "*".join([f"e{i+1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(al) if k]
                           + [f"x{i+1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(be) if k])
            terms.append(f"{c}" + (f"*{mon}" if mon else ""))
        return " + ".join(terms)


def delta(t: PolyTensor) -> PolyTensor:
    """Delta = sum_i d/de_i d/dx_i : (a, b) -> (a-1, b-1)."""
    if t.a < 1 or t.b < 1:
        raise ValueError(f"Delta needs a, b >= 1, got ({t.a},{t.b})")
    out: dict = defaultdict(int)
    for (al, be), c in t.coeffs.items():
        for i in range(t.n):
            if al[i] and be[i]:
                na = list(al)
                nb = list(be)
                na[i] -= 1
                nb[i] -= 1
                out[(tuple(na), tuple(nb))] += c * al[i] * be[i]
    return PolyTensor(t.n, t.a - 1, t.b - 1, out, t.p)


def delta_power(t: PolyTensor, k: int) -> PolyTensor:
    """Delta^k.  When k equals the e-degree every e is contracted and
    Delta^a(e^alpha h) = a! * d^alpha h / dx^alpha, which is used directly."""
    if k == 0:
        return t
    if k > t.a or k > t.b:
        raise ValueError("Delta power exceeds a bidegree")
    if k != t.a:
        for _ in range(k):
            t = delta(t)
        return t
    out: dict = defaultdict(int)
    fa = factorial(k)
    zero_e = (0,) * t.n
    for (al, be), c in t.coeffs.items():
        if any(x < y for x, y in zip(be, al)):
            continue
        coef = c * fa
        for x, y in zip(be, al):
            for r in range(y):
                coef *= x - r
        out[(zero_e, tuple(x - y for x, y in zip(be, al)))] += coef
    return PolyTensor(t.n, 0, t.b - k, out, t.p)


def omega(r: PolyTensor, s: PolyTensor) -> PolyTensor:
    """sum over S_3 of sgn(sigma) e_sigma(1) dr/dx_sigma(2) ds/dx_sigma(3)."""
    if r.n != 3 or s.n != 3:
        raise ValueError("omega is defined for n = 3")
    if r.b < 1 or s.b < 1:
        raise ValueError("omega needs x-degree >= 1 in both arguments")
    total = PolyTensor.zero(3, r.a + s.a + 1, r.b + s.b - 2, r.p)
    for perm in itertools.permutations(range(3)):
        sg = perm_sign(perm)
        term = PolyTensor.e(3, perm[0] + 1, r.p) * r.d_x(perm[1]) * s.d_x(perm[2])
        total = total + term.scale(sg)
    return total


def trace_element(n: int, p=None) -> PolyTensor:
    """q = sum_i e_i x_i, the invariant in Sym^1 (x) Sym^1*."""
    return PolyTensor(n, 1, 1, {(_unit(n, i), _unit(n, i)): 1 for i in range(n)}, p)


def in_kernel(t: PolyTensor) -> bool:
    return t.a == 0 or t.b == 0 or delta(t).is_zero()


def project_to_kernel(t: PolyTensor) -> PolyTensor:
    """Equivariant projection onto ker Delta along q * Sym^(a-1) (x) Sym^(b-1)*.

    Solves Delta(q u) = Delta t for u, weight space by weight space, and
    returns t - q u.
    """
    if in_kernel(t):
        return t
    q = trace_element(t.n, t.p)
    target = delta(t)
    dom = bimonomials(t.n, t.a - 1, t.b - 1)
    images = {m: delta(q * PolyTensor(t.n, t.a - 1, t.b - 1, {m: 1}, t.p)) for m in dom}
    by_weight: dict = defaultdict(list)
    for m in dom:
        by_weight[tuple(x - y for x, y in zip(*m))].append(m)
    u = {}
    for wt, cols in by_weight.items():
        rows_idx = sorted({k for m in cols for k in images[m].coeffs} | {
            k for k in target.coeffs if tuple(x - y for x, y in zip(*k)) == wt}, reverse=True)
        if not rows_idx:
            continue
        mat = [[images[m].coeffs.get(r, 0) for m in cols] for r in rows_idx]
        rhs = [target.coeffs.get(r, 0) for r in rows_idx]
        sol = _solve(mat, rhs, t.p)
        if sol is None:
            raise ArithmeticError("projection system is singular")
        for m, v in zip(cols, sol):
            if v:
                u[m] = v
    return t - q * PolyTensor(t.n, t.a - 1, t.b - 1, u, t.p)


def _solve(mat, rhs, p):
    if p is None:
        return solve_q(mat, rhs)
    ncols = len(mat[0])
    aug = np.array([list(r) + [b] for r, b in zip(mat, rhs)], dtype=np.int64) % p
    from .linalg import rref_mod_p
    red, piv = rref_mod_p(aug, p)
    if ncols in piv:
        return None
    x = [0] * ncols
    for row, pc in zip(red, piv):
        x[pc] = int(row[ncols])
    return x


def _nullspace(mat, ncols, p):
    if p is None:
        return nullspace_q(mat, ncols)
    if not mat:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    return [list(map(int, v)) for v in nullspace_mod_p(np.array(mat, dtype=np.int64), p)]


def rank(mat, p=None) -> int:
    """Rank of a list-of-rows matrix over Q or F_p."""
    if not len(mat):
        return 0
    if p is None:
        return rank_q(mat)
    return rank_mod_p(np.asarray(mat, dtype=np.int64) % p, p)


def realize_irreducible(a: int, b: int, p: int | None = None, n: int = 3) -> list[PolyTensor]:
    """Basis of ker Delta in Sym^a (x) Sym^b*, computed weight space by weight space."""
    if a < 0 or b < 0:
        raise ValueError("degrees must be >= 0")
    if p is not None and p <= a + b:
        raise ValueError(f"prime {p} too small for bidegree ({a},{b})")
    dom = bimonomials(n, a, b)
    if a == 0 or b == 0:
        return [PolyTensor(n, a, b, {m: 1}, p) for m in dom]
    by_weight: dict = defaultdict(list)
    for m in dom:
        by_weight[tuple(x - y for x, y in zip(*m))].append(m)
    basis = []
    for wt in sorted(by_weight, reverse=True):
        cols = by_weight[wt]
        imgs = [delta(PolyTensor(n, a, b, {m: 1}, p)) for m in cols]
        rows_idx = sorted({k for im in imgs for k in im.coeffs}, reverse=True)
        mat = [[im.coeffs.get(r, 0) for im in imgs] for r in rows_idx]
        for v in _nullspace(mat, len(cols), p):
            basis.append(PolyTensor(n, a, b, {m: c for m, c in zip(cols, v)}, p))
    return basis


def kernel_dim_delta(a: int, b: int, p: int | None = None, n: int = 3) -> int:
    """dim ker Delta on Sym^a (x) Sym^b*, via blockwise ranks."""
    dom = bimonomials(n, a, b)
    if a == 0 or b == 0:
        return len(dom)
    by_weight: dict = defaultdict(list)
    for m in dom:
        by_weight[tuple(x - y for x, y in zip(*m))].append(m)
    total = 0
    for cols in by_weight.values():
        imgs = [delta(PolyTensor(n, a, b, {m: 1}, p)) for m in cols]
        rows_idx = sorted({k for im in imgs for k in im.coeffs})
        mat = [[im.coeffs.get(r, 0) for im in imgs] for r in rows_idx]
        total += len(cols) - (rank(mat, p) if mat else 0)
    return total


# --- the seven-points operators ------------------------------------------------

def beta(f: PolyTensor, g1: PolyTensor, g2: PolyTensor, project: bool = True) -> PolyTensor:
    """Delta(omega(f, g1)) + Delta(f g2), optionally projected onto ker Delta."""
    if (f.a, f.b) != (1, 2) or (g1.a, g1.b) != (0, 2) or (g2.a, g2.b) != (1, 0):
        raise ValueError("beta expects f in (1,2), g1 in (0,2), g2 in (1,0)")
    raw = delta(omega(f, g1)) + delta(f * g2)
    return project_to_kernel(raw) if project else raw


def psi(f: PolyTensor, g2: PolyTensor) -> PolyTensor:
    """Delta^2(f g2^2), landing in Sym^1 = C^3."""
    if (f.a, f.b) != (1, 2) or (g2.a, g2.b) != (1, 0):
        raise ValueError("psi expects f in (1,2), g2 in (1,0)")
    return delta_power(f * g2 * g2, 2)


def seven_points_data(p: int | None = None) -> dict:
    """The special points F, G1, G2 with H = psi(F, G2)."""
    e = [PolyTensor.e(3, i, p) for i in (1, 2, 3)]
    x = [PolyTensor.x(3, i, p) for i in (1, 2, 3)]
    F = (e[1] * x[0] * x[2]).scale(3) - (e[0] * x[0] * x[1]).scale(2) + (e[2] * x[2] * x[1]).scale(6) \
        - (e[1] * x[1] * x[1]).scale(2)
    G1 = x[0] * x[2] - x[1] * x[1]
    G2 = e[1].scale(2)
    return {"F": F, "G1": G1, "G2": G2, "H": psi(F, G2)}


def _columns_rank(cols: Sequence[PolyTensor], p) -> int:
    keys = sorted({k for c in cols for k in c.coeffs})
    if not keys:
        return 0
    mat = [[c.coeffs.get(k, 0) for c in cols] for k in keys]
    return rank(mat, p)


def kernel_dims_seven_points(p: int | None = None, project: bool = True) -> tuple[int, int, int]:
    """dim ker beta(F, .) on V(0,2)+V(1,0); dim ker beta(., (G1,G2)) on V(1,2);
    dim of that kernel intersected with ker psi(., G2)."""
    data = seven_points_data(p)
    F, G1, G2 = data["F"], data["G1"], data["G2"]
    v02 = realize_irreducible(0, 2, p)
    v10 = realize_irreducible(1, 0, p)
    v12 = realize_irreducible(1, 2, p)
    z02 = PolyTensor.zero(3, 0, 2, p)
    z10 = PolyTensor.zero(3, 1, 0, p)
    cols1 = [beta(F, g, z10, project) for g in v02] + [beta(F, z02, h, project) for h in v10]
    k1 = len(cols1) - _columns_rank(cols1, p)
    cols2 = [beta(f, G1, G2, project) for f in v12]
    k2 = len(cols2) - _columns_rank(cols2, p)
    # stack beta and psi images: tag psi monomials so the two codomains stay apart
    stacked = []
    for f, bcol in zip(v12, cols2):
        d = {("b",) + k: c for k, c in bcol.coeffs.items()}
        d.update({("p",) + k: c for k, c in psi(f, G2).coeffs.items()})
        stacked.append(d)
    keys = sorted({k for d in stacked for k in d})
    mat = [[d.get(k, 0) for d in stacked] for k in keys]
    k3 = len(stacked) - rank(mat, p)
    return k1, k2, k3


def beta_needs_projection(p: int | None = None) -> bool:
    """Whether any raw beta image used in the kernel computation leaves ker Delta."""
    data = seven_points_data(p)
    F, G1, G2 = data["F"], data["G1"], data["G2"]
    z02, z10 = PolyTensor.zero(3, 0, 2, p), PolyTensor.zero(3, 1, 0, p)
    raws = [beta(F, g, z10, False) for g in realize_irreducible(0, 2, p)]
    raws += [beta(F, z02, h, False) for h in realize_irreducible(1, 0, p)]
    raws += [beta(f, G1, G2, False) for f in realize_irreducible(1, 2, p)]
    return not all(in_kernel(r) for r in raws)


# --- Lie algebra action ------------------------------------------------------------

def lie_action(i: int, j: int, t: PolyTensor) -> PolyTensor:
    """E_ij (1-based) acting as e_i d/de_j - x_j d/dx_i."""
    n, p = t.n, t.p
    out = PolyTensor.zero(n, t.a, t.b, p)
    if t.a:
        out = out + PolyTensor.e(n, i, p) * t.d_e(j - 1)
    if t.b:
        out = out - PolyTensor.x(n, j, p) * t.d_x(i - 1)
    return out


def lie_matrix_action(X: Sequence[Sequence], t: PolyTensor) -> PolyTensor:
    """Action of a matrix X = sum X_ij E_ij."""
    out = PolyTensor.zero(t.n, t.a, t.b, t.p)
    for i in range(t.n):
        for j in range(t.n):
            if X[i][j]:
                out = out + lie_action(i + 1, j + 1, t).scale(X[i][j])
    return out


def sl_basis(n: int) -> list[list[list[int]]]:
    """E_ij (i != j) then E_ii - E_(i+1)(i+1)."""
    out = []
    for i in range(n):
        for j in range(n):
            if i != j:
                m = [[0] * n for _ in range(n)]
                m[i][j] = 1
                out.append(m)
    for i in range(n - 1):
        m = [[0] * n for _ in range(n)]
        m[i][i] = 1
        m[i + 1][i + 1] = -1
        out.append(m)
    return out


def stabilizer_dim(v: PolyTensor, projective: bool = False) -> int:
    """dim {X in sl_n : X v = 0} or, projectively, {X : X v in C v}."""
    if v.is_zero():
        raise ValueError("stabilizer of the zero vector")
    cols = [lie_matrix_action(X, v) for X in sl_basis(v.n)]
    if projective:
        cols.append(v)
    return len(cols) - _columns_rank(cols, v.p)


def random_element(basis: Sequence[PolyTensor], rng: random.Random, bound: int = 50) -> PolyTensor:
    out = PolyTensor.zero(basis[0].n, basis[0].a, basis[0].b, basis[0].p)
    for v in basis:
        out = out + v.scale(rng.randint(-bound, bound))
    return out


# --- skew forms ------------------------------------------------------------------

@dataclass(frozen=True)
class SkewForm:
    """Antisymmetric N x N form stored by its upper triangle."""

    N: int
    entries: dict = field(default_factory=dict, hash=False, compare=False)

    def __post_init__(self):
        clean = {}
        for (i, j), v in self.entries.items():
            if i == j:
                raise ValueError("diagonal of a skew form is zero")
            if i > j:
                i, j, v = j, i, -v
            clean[(i, j)] = clean.get((i, j), 0) + v
        object.__setattr__(self, "entries", {k: v for k, v in clean.items() if v})

    def matrix(self) -> list[list]:
        m = [[0] * self.N for _ in range(self.N)]
        for (i, j), v in self.entries.items():
            m[i][j] = v
            m[j][i] = -v
        return m

    def rank(self, p: int | None = None) -> int:
        return rank(self.matrix(), p) if self.entries else 0

    def kernel(self) -> list[list[Fraction]]:
        return nullspace_q(self.matrix(), self.N)


def iota(d: int, element: dict) -> SkewForm:
    """Skew form on C^d (x) C^3 of an element of Sym^2(C^d)* (x) Lambda^2(C^3)*.

    ``element`` maps ((i, j), (k, l)) with 1-based i <= j, k < l to the
    coefficient of (x_i x_j) (x) (y_k ^ y_l).  The basis vector x_i (x) y_k
    has index 3*(i-1) + (k-1).
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    ent: dict = defaultdict(int)

    def wedge(u, v, c):
        if u == v:
            return
        if u < v:
            ent[(u, v)] += c
        else:
            ent[(v, u)] -= c

    for ((i, j), (k, l)), c in element.items():
        if not (1 <= i <= d and 1 <= j <= d and 1 <= k < l <= 3):
            raise ValueError(f"bad index {(i, j, k, l)}")
        idx = lambda s, t: 3 * (s - 1) + (t - 1)
        wedge(idx(i, k), idx(j, l), c)
        wedge(idx(j, k), idx(i, l), c)
    return SkewForm(3 * d, dict(ent))


def _sym(i, j):
    return (min(i, j), max(i, j))


def theta_omega() -> dict:
    """The d = 5 element: (x5^2 - 2x1x2)(y2^y3) + (x1^2+x3^2+x4^2)(y1^y3) + (2x4x5 - 2x2x3)(y1^y2)."""
    el: dict = defaultdict(int)
    for (i, j), c in (((5, 5), 1), ((1, 2), -2)):
        el[(_sym(i, j), (2, 3))] += c
    for (i, j), c in (((1, 1), 1), ((3, 3), 1), ((4, 4), 1)):
        el[(_sym(i, j), (1, 3))] += c
    for (i, j), c in (((4, 5), 2), ((2, 3), -2)):
        el[(_sym(i, j), (1, 2))] += c
    return dict(el)


def theta_pi(j: int) -> dict:
    """x_j^2 (y1^y2) + x_j x_(j+1) (y1^y3) + x_(j+1)^2 (y2^y3)."""
    return {((j, j), (1, 2)): 1, ((j, j + 1), (1, 3)): 1, ((j + 1, j + 1), (2, 3)): 1}


def theta_kappa(d: int) -> dict:
    """omega plus pi_j for j = 6, 8, ..., d - 1 (d odd, >= 5)."""
    if d < 5 or d % 2 == 0:
        raise ValueError("kappa needs odd d >= 5")
    el = dict(theta_omega())
    for j in range(6, d, 2):
        for k, v in theta_pi(j).items():
            el[k] = el.get(k, 0) + v
    return el


def theta_m(d: int) -> list[int]:
    """Coordinates of m = e1(x)f1 + e2(x)f2 + e3(x)f3 in C^d (x) C^3."""
    v = [0] * (3 * d)
    for i in range(3):
        v[3 * i + i] = 1
    return v


# --- the degree-34 pairing ----------------------------------------------------------

def mu_pairing(g: PolyTensor, f: PolyTensor) -> PolyTensor:
    """Delta^a(g f) for g in bidegree (a, b) and f in (0, c); lands in (0, b + c - a)."""
    if f.a != 0:
        raise ValueError("f must be a form in x only")
    return delta_power(g * f, g.a)


def _x_dict(t: PolyTensor) -> dict:
    return {be: c for (_, be), c in t.coeffs.items()}


def _diff_x(h: dict, alpha, p) -> dict:
    out = {}
    for be, c in h.items():
        if any(x < y for x, y in zip(be, alpha)):
            continue
        coef = c
        for x, y in zip(be, alpha):
            for r in range(y):
                coef *= x - r
        if p is not None:
            coef %= p
        if coef:
            nb = tuple(x - y for x, y in zip(be, alpha))
            out[nb] = (out.get(nb, 0) + coef) % p if p is not None else out.get(nb, 0) + coef
    return out


def mu_matrix(gbasis: Sequence[PolyTensor], f: PolyTensor) -> np.ndarray:
    """Matrix of g -> mu(g, f) over F_p; rows are Sym^(b+c-a)* monomials."""
    p = f.p
    if p is None:
        raise ValueError("mu_matrix works over F_p")
    a, b = gbasis[0].a, gbasis[0].b
    n = f.n
    fa = factorial(a) % p
    fx = _x_dict(f)
    rows = monomials(n, b + f.b - a)
    ridx = {m: i for i, m in enumerate(rows)}
    cache: dict = {}

    def column(al, be):
        key = (al, be)
        if key not in cache:
            shifted = {_add_exp(be, g): c for g, c in fx.items()}
            vec = np.zeros(len(rows), dtype=np.int64)
            for m, c in _diff_x(shifted, al, p).items():
                vec[ridx[m]] = c * fa % p
            cache[key] = vec
        return cache[key]

    mat = np.zeros((len(rows), len(gbasis)), dtype=np.int64)
    for k, g in enumerate(gbasis):
        acc = np.zeros(len(rows), dtype=np.int64)
        for (al, be), c in g.coeffs.items():
            acc = (acc + c * column(al, be)) % p
        mat[:, k] = acc
    return mat


def mu_fiber_matrix(gs: Sequence[PolyTensor], c: int) -> np.ndarray:
    """Matrix of f -> (mu(g, f))_{g in gs} for f in Sym^c*, over F_p."""
    p = gs[0].p
    n, a, b = gs[0].n, gs[0].a, gs[0].b
    fa = factorial(a) % p
    cols = monomials(n, c)
    rows = monomials(n, b + c - a)
    ridx = {m: i for i, m in enumerate(rows)}
    mat = np.zeros((len(rows) * len(gs), len(cols)), dtype=np.int64)
    for gi, g in enumerate(gs):
        for k, gam in enumerate(cols):
            acc: dict = defaultdict(int)
            for (al, be), coef in g.coeffs.items():
                for m, v in _diff_x({_add_exp(be, gam): coef}, al, p).items():
                    acc[m] = (acc[m] + v) % p
            for m, v in acc.items():
                mat[gi * len(rows) + ridx[m], k] = v * fa % p
    return mat


def random_form(n: int, c: int, p: int, rng: random.Random) -> PolyTensor:
    """Uniformly random element of Sym^c* over F_p."""
    return PolyTensor(n, 0, c, {((0,) * n, m): rng.randrange(p) for m in monomials(n, c)}, p)


@dataclass
class V34Result:
    prime: int
    seed: int
    dim_source: int
    dim_target: int
    rank: int
    kernel_dim: int
    fiber_affine_dim: int

    @property
    def fiber_projective_dim(self) -> int:
        return self.fiber_affine_dim - 1


def v34_check(p: int = 10007, seed: int = 0, a: int = 14, b: int = 1, c: int = 34) -> V34Result:
    """Rank of mu(., f) : V(a,b) -> Sym^(b+c-a)* for random f, and the fibre
    {f' : mu(g, f') = 0 for g in ker mu(., f)}."""
    rng = random.Random(seed)
    gbasis = realize_irreducible(a, b, p)
    f = random_form(3, c, p, rng)
    M = mu_matrix(gbasis, f)
    r = rank_mod_p(M, p)
    ker = nullspace_mod_p(M, p)
    gs = []
    for vec in ker:
        g = PolyTensor.zero(3, a, b, p)
        for coef, bv in zip(vec, gbasis):
            if coef:
                g = g + bv.scale(int(coef))
        gs.append(g)
    fib = mu_fiber_matrix(gs, c) if gs else np.zeros((0, comb(c + 2, 2)), dtype=np.int64)
    fr = rank_mod_p(fib, p) if gs else 0
    return V34Result(p, seed, len(gbasis), M.shape[0], r, len(ker), comb(c + 2, 2) - fr)
