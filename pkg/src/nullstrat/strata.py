"""Hesselink-style stratification of the nullcone.

Candidates c are the non-zero min-norm points of faces of the weight
configuration, taken up to the Weyl group.  For each c the roots split by
the sign of <alpha, c> into Levi and unipotent parts, the weights into the
half-space <chi - c, c> >= 0 and its boundary, and c is stratifying when the
connected kernel Z_c of c on the Levi group has a non-constant invariant on
the boundary weight spaces.
"""

from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .lattice import (AmbientWeight, GroupShape, dot, root_labels, roots, weyl_canonical,
                      weyl_group)
from .linalg import rank_q
from .polytope import _affine_minimizer, _combine, make_support, min_norm_point
from .repchar import CharacterMultiset, ReflectionData, decompose_weights, sym_power

DEFAULT_MAX_DEGREE = 12


@dataclass(frozen=True)
class StratumCandidate:
    shape: GroupShape
    c: AmbientWeight
    plus_weights: tuple  # ((coords, multiplicity), ...)
    zero_weights: tuple
    roots_P: tuple  # root labels (factor, i, j), 1-based i, j
    roots_L: tuple
    roots_U: tuple
    n_min: int
    tprime_rank: int

    @property
    def zc_root_system(self) -> tuple:
        return self.roots_L

    @property
    def plus_dim(self) -> int:
        return sum(m for _, m in self.plus_weights)

    @property
    def zero_dim(self) -> int:
        return sum(m for _, m in self.zero_weights)

    def plus_support(self) -> tuple[AmbientWeight, ...]:
        return tuple(AmbientWeight(self.shape, w) for w, _ in self.plus_weights)

    def zero_support(self) -> tuple[AmbientWeight, ...]:
        return tuple(AmbientWeight(self.shape, w) for w, _ in self.zero_weights)

    def zero_character(self) -> CharacterMultiset:
        return CharacterMultiset(self.shape, dict(self.zero_weights))

    def to_dict(self) -> dict:
        return {
            "c": self.c.to_text(),
            "norm2": str(dot(self.c.coords, self.c.coords)),
            "n_min": self.n_min,
            "roots_P": [list(r) for r in self.roots_P],
            "roots_L": [list(r) for r in self.roots_L],
            "roots_U": [list(r) for r in self.roots_U],
            "plus_weights": [[AmbientWeight(self.shape, w).to_text(), m] for w, m in self.plus_weights],
            "zero_weights": [[AmbientWeight(self.shape, w).to_text(), m] for w, m in self.zero_weights],
            "tprime_rank": self.tprime_rank,
        }


@dataclass(frozen=True)
class StratumVerdict:
    candidate: StratumCandidate
    stratifying: str  # "yes" | "undetermined"
    witness_degree: int | None
    closure_dim: int
    flag: str | None = None

    def to_dict(self) -> dict:
        out = self.candidate.to_dict()
        out.update(stratifying=self.stratifying, witness_degree=self.witness_degree,
                   closure_dim=self.closure_dim, flag=self.flag)
        return out


def _weighted(module: CharacterMultiset | None, ws) -> tuple:
    if module is None:
        return tuple((w.coords, 1) for w in ws)
    return tuple((w.coords, module.multiplicity(w.coords)) for w in ws)


def parabolic_data(shape: GroupShape, c: AmbientWeight, module: CharacterMultiset | None = None,
                   weights: Sequence[AmbientWeight] | None = None) -> StratumCandidate:
    """Root and weight data attached to c.

    Weights come from ``module`` (with multiplicities) or from ``weights``.
    """
    if c.is_zero():
        raise ValueError("c must be non-zero")
    if c.shape != shape:
        raise ValueError("shape mismatch")
    P, L, U = [], [], []
    for r, lab in zip(roots(shape), root_labels(shape)):
        s = dot(r.coords, c.coords)
        if s >= 0:
            P.append(lab)
            (L if s == 0 else U).append(lab)
    if weights is None:
        weights = module.weights() if module is not None else []
    cc = dot(c.coords, c.coords)
    plus = [w for w in weights if dot(w.coords, c.coords) >= cc]
    zero = [w for w in plus if dot(w.coords, c.coords) == cc]
    return StratumCandidate(
        shape=shape, c=c,
        plus_weights=_weighted(module, make_support(plus)),
        zero_weights=_weighted(module, make_support(zero)),
        roots_P=tuple(P), roots_L=tuple(L), roots_U=tuple(U),
        n_min=c.min_integral_multiple(),
        tprime_rank=shape.rank - 1,
    )


def _face_points(pts, max_size):
    """Non-zero closest points of affine hulls of affinely independent subsets
    that land inside the subset's convex hull."""
    out = set()
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
            if any(x != 0 for x in y):
                out.add(y)
    return out


def enumerate_candidates(shape: GroupShape, module: CharacterMultiset) -> list[StratumCandidate]:
    """All candidates c, canonical under W, sorted by (|c|^2, c).

    A min-norm point of a face lies in the relative interior of a simplex
    spanned by affinely independent weights of that face, and is the closest
    point of that simplex's affine hull; so subsets of size <= rank + 1
    already produce every candidate that arbitrary subsets would.
    """
    weights = module.weights()
    if not weights or all(w.is_zero() for w in weights):
        return []
    pts = [tuple(Fraction(x) for x in w.coords) for w in weights]
    raw = _face_points(pts, min(len(pts), shape.rank + 1))
    canon = {weyl_canonical(AmbientWeight(shape, y)) for y in raw}
    out = []
    for c in canon:
        cand = parabolic_data(shape, c, module)
        if min_norm_point(cand.plus_support()) == c:
            out.append(cand)
    out.sort(key=lambda k: (dot(k.c.coords, k.c.coords), tuple(-x for x in k.c.coords)))
    return out


def zc_invariant_dim(cand: StratumCandidate, d: int) -> int:
    """Degree-d invariants of Z_c on the boundary weight spaces.

    Z_c has maximal torus T' = (ker c)^0 and roots the Levi roots; a degree-d
    monomial in the boundary weights has T'-weight zero iff its total weight
    is d*c, so the Weyl-group sum is taken after shifting by d*c.
    """
    zero = cand.zero_character()
    refl = ReflectionData.levi(cand.shape, cand.c.coords)
    shift = tuple(d * x for x in cand.c.coords)
    dec = decompose_weights(sym_power(zero, d), refl, shift=shift)
    return dec.get(tuple(0 for _ in shift), 0)


def is_stratifying(cand: StratumCandidate, module: CharacterMultiset | None = None,
                   max_degree: int = DEFAULT_MAX_DEGREE) -> StratumVerdict:
    """Search degrees 1..max_degree for a Z_c-invariant; never answers "no"."""
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    closure = len(cand.roots_U) + cand.plus_dim
    if not cand.zero_weights:
        return StratumVerdict(cand, "undetermined", None, closure, flag="empty boundary weight set")
    for d in range(1, max_degree + 1):
        if zc_invariant_dim(cand, d) >= 1:
            return StratumVerdict(cand, "yes", d, closure)
    return StratumVerdict(cand, "undetermined", None, closure, flag=f"no invariant up to degree {max_degree}")


def closure_contained(a: StratumCandidate, b: StratumCandidate, max_weyl: int = 50000) -> bool | None:
    """Sufficient test for G.V_{H+(a)} inside G.V_{H+(b)}: some Weyl translate
    of a's plus-weights lies inside b's.  None if W is too large to scan."""
    if a.shape.weyl_order > max_weyl:
        return None
    target = {w for w, _ in b.plus_weights}
    src = a.plus_support()
    for w in weyl_group(a.shape):
        if all(w.act(x).coords in target for x in src):
            return True
    return False


@dataclass
class NullconeReport:
    shape: GroupShape
    module_dim: int
    verdicts: list = field(default_factory=list)
    components: list = field(default_factory=list)  # indices into verdicts
    component_rule: str = "weyl-containment"

    @property
    def component_dims(self) -> list[int]:
        return sorted({self.verdicts[i].closure_dim for i in self.components})

    def to_json(self) -> str:
        return json.dumps({
            "group": str(self.shape),
            "module_dim": self.module_dim,
            "strata": [v.to_dict() for v in self.verdicts],
            "components": self.components,
            "component_dims": self.component_dims,
            "component_rule": self.component_rule,
        }, sort_keys=True)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("NULLSTRAT_THREADS", "1")))
    except ValueError:
        return 1


def _verdict_job(args):
    cand, max_degree = args
    return is_stratifying(cand, None, max_degree)


def nullcone_report(shape: GroupShape, module: CharacterMultiset,
                    max_degree: int = DEFAULT_MAX_DEGREE) -> NullconeReport:
    """Candidate sweep, verdicts, closure dimensions and maximal closures.

    Components are the stratifying candidates whose closure is not contained
    (by the Weyl-translate test) in another stratifying closure of larger
    dimension.  For groups whose Weyl group is too large to scan, plain
    dimension maximality is used instead.
    """
    cands = enumerate_candidates(shape, module)
    jobs = [(c, max_degree) for c in cands]
    workers = _threads()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            verdicts = list(ex.map(_verdict_job, jobs))
    else:
        verdicts = [_verdict_job(j) for j in jobs]
    report = NullconeReport(shape, module.dim, verdicts)
    strat = [i for i, v in enumerate(verdicts) if v.stratifying == "yes"]
    if not strat:
        return report
    if shape.weyl_order > 50000:
        top = max(verdicts[i].closure_dim for i in strat)
        report.components = [i for i in strat if verdicts[i].closure_dim == top]
        report.component_rule = "dimension-maximal"
        return report
    comps = []
    for i in strat:
        vi = verdicts[i]
        dominated = any(
            j != i and verdicts[j].closure_dim > vi.closure_dim
            and closure_contained(vi.candidate, verdicts[j].candidate)
            for j in strat)
        if not dominated:
            comps.append(i)
    report.components = comps
    return report
