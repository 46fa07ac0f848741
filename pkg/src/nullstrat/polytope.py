"""Weight polytopes: supports, exact min-norm points, faces, half-spaces."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .lattice import AmbientWeight, GroupShape, dot
from .linalg import nullspace_q, rank_q, solve_q

SupportSet = tuple  # tuple[AmbientWeight, ...], sorted, duplicate-free


def make_support(weights: Iterable[AmbientWeight]) -> SupportSet:
    ws = set(weights)
    if not ws:
        return ()
    shapes = {w.shape for w in ws}
    if len(shapes) != 1:
        raise ValueError("weights from different group shapes")
    return tuple(sorted(ws, key=lambda w: w.coords, reverse=True))


def support(v) -> SupportSet:
    """Weights carrying a non-zero coefficient.

    ``v`` is an iterable of ``(weight, coefficient)`` pairs (several basis
    vectors may share a weight) or a mapping from weights to coefficients.
    """
    pairs = v.items() if hasattr(v, "items") else v
    out = [w for w, coef in pairs if coef != 0]
    if not out:
        raise ValueError("the zero vector has no support")
    return make_support(out)


# --- min-norm point -------------------------------------------------------------

def _affine_minimizer(pts: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    """Barycentric coefficients of the point of aff(pts) closest to 0."""
    k = len(pts)
    rows = [[dot(pts[i], pts[j]) for j in range(k)] + [1] for i in range(k)]
    rows.append([1] * k + [0])
    sol = solve_q(rows, [0] * k + [1])
    if sol is None:
        raise ArithmeticError("affine minimization system is inconsistent")
    return sol[:k]


def _combine(pts, coefs):
    dim = len(pts[0])
    return tuple(sum(c * p[t] for c, p in zip(coefs, pts)) for t in range(dim))


@dataclass(frozen=True)
class MinNormCertificate:
    """The min-norm point and an exact convex combination producing it."""

    point: AmbientWeight
    weights: tuple[AmbientWeight, ...]
    coefficients: tuple[Fraction, ...]

    def check(self, support_set: Sequence[AmbientWeight]) -> bool:
        """Re-verify membership and optimality from scratch."""
        if any(c <= 0 for c in self.coefficients) or sum(self.coefficients) != 1:
            return False
        combo = _combine([w.coords for w in self.weights], self.coefficients)
        if tuple(Fraction(x) for x in combo) != tuple(Fraction(x) for x in self.point.coords):
            return False
        c = self.point.coords
        cc = dot(c, c)
        return all(dot(w.coords, c) >= cc for w in support_set)


def wolfe(points: Sequence[Sequence]) -> tuple[tuple, list[int], list[Fraction]]:
    """Wolfe's min-norm-point method in exact arithmetic.

    Returns (point, indices of the active points, their coefficients).
    Ties in the linear minimization step go to the lowest index.
    """
    P = [tuple(Fraction(x) for x in p) for p in points]
    if not P:
        raise ValueError("empty point set")
    i0 = min(range(len(P)), key=lambda i: (dot(P[i], P[i]), i))
    active, lam = [i0], [Fraction(1)]
    x = P[i0]
    for _ in range(100 * len(P) + 100):
        xx = dot(x, x)
        if xx == 0:
            break
        j = min(range(len(P)), key=lambda i: (dot(x, P[i]), i))
        if dot(x, P[j]) >= xx or j in active:
            break
        active.append(j)
        lam.append(Fraction(0))
        while True:
            alpha = _affine_minimizer([P[i] for i in active])
            if all(a > 0 for a in alpha):
                lam = alpha
                break
            theta = min(l / (l - a) for l, a in zip(lam, alpha) if a <= 0 and l - a > 0) \
                if any(a <= 0 and l - a > 0 for l, a in zip(lam, alpha)) else Fraction(0)
            lam = [l + theta * (a - l) for l, a in zip(lam, alpha)]
            keep = [t for t, l in enumerate(lam) if l > 0]
            if len(keep) == len(active):
                raise ArithmeticError("Wolfe minor cycle made no progress")
            active = [active[t] for t in keep]
            lam = [lam[t] for t in keep]
        x = _combine([P[i] for i in active], lam)
    else:
        raise ArithmeticError("Wolfe iteration did not terminate")
    return x, active, lam


def min_norm_certificate(S: Sequence[AmbientWeight]) -> MinNormCertificate:
    S = make_support(S)
    if not S:
        raise ValueError("empty support")
    x, active, lam = wolfe([w.coords for w in S])
    shape = S[0].shape
    return MinNormCertificate(AmbientWeight(shape, x), tuple(S[i] for i in active), tuple(lam))


def min_norm_point(S: Sequence[AmbientWeight]) -> AmbientWeight:
    """The point of conv(S) closest to the origin (zero iff 0 lies in conv(S))."""
    return min_norm_certificate(S).point


def min_norm_bruteforce(S: Sequence[AmbientWeight]) -> AmbientWeight:
    """Independent oracle: project 0 onto the affine hull of every affinely
    independent subset, keep projections inside the subset's hull, take the
    shortest."""
    S = make_support(S)
    shape = S[0].shape
    pts = [tuple(Fraction(x) for x in w.coords) for w in S]
    max_size = min(len(pts), shape.rank + 1)
    best = None
    for size in range(1, max_size + 1):
        for sub in itertools.combinations(range(len(pts)), size):
            q = [pts[i] for i in sub]
            diffs = [[a - b for a, b in zip(p, q[0])] for p in q[1:]]
            if diffs and rank_q(diffs) < len(diffs):
                continue
            alpha = _affine_minimizer(q)
            if any(a < 0 for a in alpha):
                continue
            y = _combine(q, alpha)
            n2 = dot(y, y)
            if best is None or n2 < best[0]:
                best = (n2, y)
    return AmbientWeight(shape, best[1])


def is_T_unstable(v) -> bool:
    """True iff 0 is not in the weight polytope of v."""
    return not min_norm_point(support(v)).is_zero()


def weights_in_halfspace(weights: Iterable[AmbientWeight], c: AmbientWeight, which: str = "plus") -> SupportSet:
    """Weights chi with <chi - c, c> >= 0 (``plus``) or = 0 (``zero``)."""
    if c.is_zero():
        raise ValueError("c must be non-zero")
    cc = dot(c.coords, c.coords)
    out = []
    for w in weights:
        s = dot(w.coords, c.coords) - cc
        if (which == "plus" and s >= 0) or (which == "zero" and s == 0):
            out.append(w)
        elif which not in ("plus", "zero"):
            raise ValueError(f"unknown half-space selector {which!r}")
    return make_support(out)


# --- faces ------------------------------------------------------------------------

@dataclass(frozen=True)
class FaceDescriptor:
    """A face: members are indices into the sorted support.

    Every point p satisfies <functional, p> <= offset, with equality exactly
    on the members.
    """

    functional: AmbientWeight
    offset: Fraction
    members: frozenset
    dim: int

    def member_weights(self, S: Sequence[AmbientWeight]) -> tuple[AmbientWeight, ...]:
        return tuple(S[i] for i in sorted(self.members))


def _span_basis(vectors):
    """A basis (rows) of the span, by elimination."""
    basis = []
    for v in vectors:
        if rank_q(basis + [list(v)]) > len(basis):
            basis.append(list(v))
    return basis


def _affine_dim(pts) -> int:
    if len(pts) <= 1:
        return 0
    diffs = [[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]
    return rank_q(diffs)


def faces(S: Sequence[AmbientWeight], mode: str = "polytope") -> list[FaceDescriptor]:
    """All non-empty faces of conv(S) or of the cone over S.

    Facets are found by exhaustive search over point subsets spanning a
    hyperplane of the (affine or linear) hull; every other face is an
    intersection of facets.  In cone mode the apex is included, possibly
    with an empty member set.
    """
    if mode not in ("polytope", "cone"):
        raise ValueError(f"unknown mode {mode!r}")
    S = make_support(S)
    if not S:
        raise ValueError("empty support")
    shape = S[0].shape
    pts = [tuple(Fraction(x) for x in w.coords) for w in S]
    n = len(pts)
    origin = tuple(Fraction(0) for _ in pts[0])
    base = pts[0] if mode == "polytope" else origin
    span = _span_basis([[a - b for a, b in zip(p, base)] for p in pts])
    k = len(span)
    everything = frozenset(range(n))

    def hull_dim(idx):
        sub = [pts[i] for i in idx]
        if mode == "polytope":
            return _affine_dim(sub)
        return rank_q([list(p) for p in sub]) if sub else 0

    facets: dict[frozenset, tuple] = {}
    if k >= 1:
        need = k if mode == "polytope" else k - 1
        for sub in itertools.combinations(range(n), need):
            anchor = pts[sub[0]] if mode == "polytope" else origin
            rel = [[a - b for a, b in zip(pts[i], anchor)] for i in sub]
            if mode == "polytope":
                rel = rel[1:]
            if rel and rank_q(rel) < len(rel):
                continue
            # normal u = sum beta_j span_j with u orthogonal to rel
            rows = [[dot(r, b) for b in span] for r in rel]
            ns = nullspace_q(rows, k) if rows else [[Fraction(int(i == j)) for i in range(k)] for j in range(k)]
            if len(ns) != 1:
                continue
            u = tuple(sum(beta * b[t] for beta, b in zip(ns[0], span)) for t in range(len(origin)))
            off = dot(u, anchor)
            vals = [dot(u, p) for p in pts]
            if all(v <= off for v in vals):
                pass
            elif all(v >= off for v in vals):
                u = tuple(-x for x in u)
                off = -off
                vals = [-v for v in vals]
            else:
                continue
            members = frozenset(i for i, v in enumerate(vals) if v == off)
            if members == everything and mode == "polytope":
                continue
            if members not in facets:
                facets[members] = (u, off)

    found: dict[frozenset, tuple] = {everything: (origin, Fraction(0))}
    frontier = dict(facets)
    found.update(facets)
    while frontier:
        new = {}
        for m1, (u1, o1) in frontier.items():
            for m2, (u2, o2) in facets.items():
                inter = m1 & m2
                if inter in found or inter in new:
                    continue
                if not inter and mode == "polytope":
                    continue
                new[inter] = (tuple(a + b for a, b in zip(u1, u2)), o1 + o2)
        found.update(new)
        frontier = new

    out = []
    for members, (u, off) in found.items():
        out.append(FaceDescriptor(AmbientWeight(shape, u), off, members, hull_dim(sorted(members))))
    out.sort(key=lambda f: (f.dim, sorted(f.members)))
    return out


def face_inclusions(fs: Sequence[FaceDescriptor]) -> list[tuple[int, int]]:
    """Covering relations (i, j): face i is a facet of face j."""
    edges = []
    for i, a in enumerate(fs):
        for j, b in enumerate(fs):
            if a.members < b.members and b.dim == a.dim + 1:
                edges.append((i, j))
    return edges


def euler_characteristic(fs: Sequence[FaceDescriptor]) -> int:
    return sum((-1) ** f.dim for f in fs)


def face_counts(fs: Sequence[FaceDescriptor]) -> dict[int, int]:
    out: dict[int, int] = {}
    for f in fs:
        out[f.dim] = out.get(f.dim, 0) + 1
    return dict(sorted(out.items()))


def face_lattice_json(S: Sequence[AmbientWeight], fs: Sequence[FaceDescriptor]) -> str:
    S = make_support(S)
    data = {
        "weights": [w.to_text() for w in S],
        "faces": [{"members": sorted(f.members), "dim": f.dim,
                   "functional": f.functional.to_text(), "offset": str(f.offset)} for f in fs],
        "inclusions": face_inclusions(fs),
    }
    return json.dumps(data, sort_keys=True)
