"""Command line runner: named scenarios emitting deterministic certificates.

    nullstrat list [--json]
    nullstrat run <scenario> [--seed N] [--prime P] [--max-degree D]
                  [--group G] [--module M] [--json out.json] [--report DIR]

Exit status: 0 when every certificate passes, 1 if any fails, 2 if some are
undetermined and none fail.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable

import sympy

from . import __version__
from .lattice import AmbientWeight, GroupShape, weyl_canonical
from .methods import (binary_closure_jacobian_dim, binary_instability, covariant_ledger, double_bundle_search,
                      grassmannian_check, planted_form, theta_ledger, theta_two_form, zero_loci_ledger)
from .polytope import is_T_unstable, min_norm_point, support
from .repchar import (IrrLabel, center_character, irr_character, mult_in_tensor, parse_module, sl3, standard,
                      sym_power, weyl_dim)
from .strata import enumerate_candidates, is_stratifying, nullcone_report, parabolic_data
from .tensorcalc import (PolyTensor, beta, beta_needs_projection, iota, kernel_dims_seven_points, omega,
                         seven_points_data, theta_kappa, theta_m, theta_omega, v34_check)

SCHEMA = 1
VERDICTS = ("pass", "fail", "undetermined")


def plain(x):
    """JSON-ready exact value: Fractions as strings, sets as sorted lists."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, (set, frozenset)):
        return sorted(plain(v) for v in x)
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    if isinstance(x, dict):
        return {str(k): plain(v) for k, v in x.items()}
    if isinstance(x, AmbientWeight):
        return x.to_text()
    if isinstance(x, (PolyTensor, IrrLabel)):
        return str(x)
    return str(x)


@dataclass
class Certificate:
    claim: str
    anchor: str
    expected: object
    computed: object
    verdict: str
    runtime: float
    input_hash: str
    seed: int | None
    detail: object = None

    def to_dict(self) -> dict:
        return {"claim": self.claim, "anchor": self.anchor, "expected": self.expected, "computed": self.computed,
                "verdict": self.verdict, "runtime": round(self.runtime, 6), "input_hash": self.input_hash,
                "seed": self.seed, "detail": self.detail}


@dataclass
class Run:
    scenario: str
    params: dict
    certificates: list = field(default_factory=list)
    figures: list = field(default_factory=list)  # (file name, callable(path))

    def input_hash(self, claim: str) -> str:
        blob = json.dumps({"scenario": self.scenario, "params": self.params, "claim": claim}, sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def check(self, claim: str, anchor: str, expected, fn: Callable, seeded: bool = False,
              compare: Callable | None = None, detail: Callable | None = None):
        """Evaluate fn(), compare against expected and record a certificate.

        ``fn`` may return (value, extra) when ``detail`` is given; detail(extra)
        is stored alongside.  expected=None yields an undetermined verdict.
        """
        t0 = time.perf_counter()
        out = fn()
        dt = time.perf_counter() - t0
        extra = None
        if detail is not None:
            out, extra = out
            extra = plain(detail(extra))
        comp = plain(out)
        exp = plain(expected)
        if expected is None:
            verdict = "undetermined"
        elif compare is not None:
            verdict = "pass" if compare(expected, out) else "fail"
        else:
            verdict = "pass" if exp == comp else "fail"
        cert = Certificate(claim, anchor, exp, comp, verdict, dt, self.input_hash(claim),
                           self.params.get("seed") if seeded else None, extra)
        self.certificates.append(cert)
        return out

    def document(self) -> dict:
        return {"schema": SCHEMA, "tool": "nullstrat", "version": __version__, "scenario": self.scenario,
                "parameters": self.params, "certificates": [c.to_dict() for c in self.certificates]}

    @property
    def exit_code(self) -> int:
        vs = {c.verdict for c in self.certificates}
        if "fail" in vs:
            return 1
        if "undetermined" in vs:
            return 2
        return 0


# --- scenarios -------------------------------------------------------------------------

def sc_v34(run: Run):
    p = run.params["prime"]
    seed = run.params["seed"]
    run.check("v34.dim_V(14,1)", "dimension of V(14,1)", 255, lambda: weyl_dim(sl3(14, 1)))
    run.check("v34.dim_V(0,21)", "dimension of V(0,21)", 253, lambda: weyl_dim(sl3(0, 21)))
    run.check("v34.dim_P(V(0,34))", "dimension of the projective space of ternary forms of degree 34",
              629, lambda: weyl_dim(sl3(0, 34)) - 1)
    run.check("v34.dim_Grass(2,V(14,1))", "dimension of the Grassmannian of planes in V(14,1)",
              506, lambda: 2 * (weyl_dim(sl3(14, 1)) - 2))
    run.check("v34.hom_multiplicity", "V(0,34) occurs in Hom(V(14,1), V(0,21))", True,
              lambda: mult_in_tensor(sl3(0, 34), sl3(1, 14), sl3(0, 21)),
              compare=lambda e, c: c >= 1)
    res = {}

    def heavy():
        r = v34_check(p=p, seed=seed)
        res["r"] = r
        return r.rank, r

    run.check("v34.rank_mu", f"mu(., f) = Delta^14(. f) on V(14,1) has full rank 253 over F_{p}", 253, heavy,
              seeded=True, detail=lambda r: {"prime": r.prime, "source_dim": r.dim_source, "target_dim": r.dim_target,
                                             "kernel_dim": r.kernel_dim})
    r = res["r"]
    run.check("v34.kernel_mu", "kernel of mu(., f) is a plane in V(14,1)", 2, lambda: r.kernel_dim, seeded=True)
    run.check("v34.fiber_dim", "fibre over the kernel plane has the expected projective dimension 629 - 506",
              123, lambda: r.fiber_projective_dim, seeded=True)

    def grass():
        rep = grassmannian_check(sl3(14, 1), 2, 3, seed=seed, field_prime=p)
        return rep.clauses, rep.to_dict()

    run.check("v34.grassmannian_clauses", "Grass(2, V(14,1))/SL_3 is stably rational: all clauses hold",
              {"center_faithful": "pass", "dimension_bound": "pass", "p_not_dividing_k": "pass",
               "lie_stabilizer": "pass"}, grass, seeded=True, detail=lambda d: {"finite_stabilizer": d["finite_stabilizer"]})


def _random_primes(seed: int, count: int, low: int = 101, high: int = 10000) -> list[int]:
    rng = random.Random(seed)
    out: list[int] = []
    while len(out) < count:
        q = int(sympy.nextprime(rng.randrange(low, high)))
        if q not in out:
            out.append(q)
    return out


def sc_seven_points(run: Run):
    data = seven_points_data()
    e2 = PolyTensor.e(3, 2)
    run.check("seven.dim_V(1,2)", "sections of T_P2(1) form V(1,2) of dimension 15", 15, lambda: weyl_dim(sl3(1, 2)))
    led = zero_loci_ledger(1)
    run.check("seven.c2", "seven zeroes of a general section of T_P2(1)", 7,
              lambda: (led.entries[0].computed, led), detail=lambda l: l.to_dict())
    run.check("seven.omega_sign", "sign convention: omega(x2, x3)", str(PolyTensor.e(3, 1)),
              lambda: str(omega(PolyTensor.x(3, 2), PolyTensor.x(3, 3))))
    run.check("seven.psi", "psi(F, G2) = -32 e2", str(e2.scale(-32)), lambda: str(data["H"]))
    run.check("seven.beta_vanishes", "beta(F, (G1, G2)) = 0, so (F, (G1, G2), H) lies on the incidence variety",
              True, lambda: beta(data["F"], data["G1"], data["G2"]).is_zero())
    run.check("seven.projection_applied", "raw beta images already lie in ker Delta (projection not needed)",
              False, lambda: beta_needs_projection())
    run.check("seven.kernel_dims_Q", "kernel dimensions of beta(F,.), beta(.,(G1,G2)) and the psi intersection",
              [1, 7, 4], lambda: list(kernel_dims_seven_points()))
    for q in _random_primes(run.params["seed"], 3):
        run.check(f"seven.kernel_dims_F{q}", f"same kernel dimensions over F_{q}", [1, 7, 4],
                  lambda q=q: list(kernel_dims_seven_points(q)), seeded=True)


def _is_ternary_quartic(shape: GroupShape, module) -> bool:
    if shape != GroupShape((3,)):
        return False
    s4 = sym_power(standard(shape), 4)
    return module == s4 or module == s4.dual()


def _sl2_form_degree(shape: GroupShape, module) -> int | None:
    if shape != GroupShape((2,)):
        return None
    d = module.dim - 1
    return d if module == irr_character(IrrLabel(shape, ((d,),))) else None


def sc_nullcone(run: Run):
    shape = GroupShape.parse(run.params["group"])
    module = parse_module(shape, run.params["module"])
    md = run.params["max_degree"]
    holder = {}

    def sweep():
        rep = nullcone_report(shape, module, md)
        holder["rep"] = rep
        return set(rep.component_dims), rep

    d = _sl2_form_degree(shape, module)
    if _is_ternary_quartic(shape, module):
        expected = {10, 11}
    elif d is not None and d >= 2:
        expected = {binary_closure_jacobian_dim(d, d // 2 + 1, run.params["seed"])}
    else:
        expected = None
    run.check("nullcone.component_dims", f"maximal stratum closures for {shape} on {run.params['module']}",
              expected, sweep,
              detail=lambda r: {"rule": r.component_rule, "candidates": len(r.verdicts),
                                "undetermined": sum(v.stratifying != "yes" for v in r.verdicts),
                                "closure_dims": [v.closure_dim for v in r.verdicts]})
    rep = holder["rep"]
    run.check("nullcone.min_norm_consistency", "every candidate is the min-norm point of its plus-weights", True,
              lambda: all(min_norm_point(v.candidate.plus_support()) == v.candidate.c for v in rep.verdicts))
    if d is not None and d >= 2:
        _binary_strata_checks(run, d, rep)
    if shape.rank == 2 and len(shape.factors) == 1:
        run.figures.append(("nullcone_weights.png", lambda path: _weights_figure(rep, module, path)))


def _weights_figure(rep, module, path):
    from .plotting import plot_weight_diagram
    return plot_weight_diagram([w.coords for w in module.weights()], [v.candidate.c.coords for v in rep.verdicts],
                               rep.components, path, title=f"{rep.shape}: component dims {rep.component_dims}")


def _binary_strata_checks(run: Run, d: int, rep):
    seed = run.params["seed"]
    ms = list(range(d // 2 + 1, d + 1))
    got = {}
    for v in rep.verdicts:
        c1 = v.candidate.c.coords[0]
        got[int((c1 + d) / 2)] = v.closure_dim
    run.check(f"binary.d{d}.classes", "candidates match root-multiplicity classes m = floor(d/2)+1..d", ms,
              lambda: sorted(got))
    run.check(f"binary.d{d}.closure_dims", "closure dims agree with the Jacobian rank of (l, q) -> l^m q",
              [binary_closure_jacobian_dim(d, m, seed) for m in ms], lambda: [got.get(m) for m in ms], seeded=True)


def sc_binary_forms(run: Run):
    seed = run.params["seed"]
    md = run.params["max_degree"]
    dims = {}
    for d in range(2, 9):
        shape = GroupShape((2,))
        rep = nullcone_report(shape, irr_character(IrrLabel(shape, ((d,),))), md)
        _binary_strata_checks(run, d, rep)
        dims[d] = sorted(v.closure_dim for v in rep.verdicts)
    run.check("binary.example_x4y2", "x^4 y^2 has a 4-fold root and is unstable", [True, 4],
              lambda: list(binary_instability([0, 0, 0, 0, 1, 0, 0])))
    run.check("binary.example_x3y3", "x^3 y^3 is semistable", [False, 3],
              lambda: list(binary_instability([0, 0, 0, 1, 0, 0, 0])))
    rng = random.Random(seed)
    trials = 100

    def planted():
        agree = 0
        for _ in range(trials):
            deg, roots, inf = _planted_roots(rng)
            coeffs = planted_form(roots, inf, Fraction(rng.randint(1, 9), rng.randint(1, 9)))
            true_m = max([m for _, m in roots] + [inf])
            if binary_instability(coeffs) == (true_m >= deg // 2 + 1, true_m):
                agree += 1
        return agree

    run.check("binary.planted_roots", f"instability classification matches planted roots on {trials} forms",
              trials, planted, seeded=True)
    run.figures.append(("binary_closure_dims.png", lambda path: _binary_figure(dims, path)))


def _planted_roots(rng: random.Random):
    deg = rng.randint(2, 10)
    left = deg
    inf = rng.choice([0, 0, rng.randint(0, deg)])
    left -= inf
    roots = []
    used = set()
    while left > 0:
        m = rng.randint(1, left)
        r = Fraction(rng.randint(-30, 30), rng.randint(1, 7))
        if r in used:
            continue
        used.add(r)
        roots.append((r, m))
        left -= m
    return deg, roots, inf


def _binary_figure(dims, path):
    from .plotting import plot_series
    ds = sorted(dims)
    return plot_series(ds, {"largest closure": [max(dims[d]) for d in ds],
                            "smallest closure": [min(dims[d]) for d in ds]}, path,
                       "degree d", "closure dimension", title="SL2 on binary forms")


def sc_two_form_theta(run: Run):
    run.check("theta.omega_rank", "the d = 5 skew form has rank 14", 14, lambda: iota(5, theta_omega()).rank())
    for d in (5, 7, 9, 11):
        run.check(f"theta.kappa_rank.d{d}", "kappa has rank 3d - 1", 3 * d - 1, lambda d=d: iota(d, theta_kappa(d)).rank())
        run.check(f"theta.kappa_kernel.d{d}", "kernel of kappa is spanned by e1f1 + e2f2 + e3f3", [theta_m(d)],
                  lambda d=d: [[int(x) for x in v] for v in iota(d, theta_kappa(d)).kernel()])
        run.check(f"theta.two_form.d{d}", "Sym2(C^d)* x L2(C^3)* sits in L2(E*) and the witness has maximal rank",
                  True, lambda d=d: (theta_two_form(d).passed, theta_two_form(d)),
                  detail=lambda r: {"multiplicity": r.multiplicity, "slack": r.slack})
    run.check("theta.ledgers", "theta dimension ledgers hold for all odd d in 5..99", True,
              lambda: all(theta_ledger(d).passed for d in range(5, 100, 2)))
    for n in (5, 7):
        _two_forms_example(run, n)


def _two_forms_example(run: Run, n: int):
    shape = GroupShape((n,))
    module = parse_module(shape, "ext:2")
    c = AmbientWeight(shape, [Fraction(2, n - 1)] * (n - 1) + [-2])
    cand = parabolic_data(shape, c, module)
    run.check(f"strata.two_forms.n{n}.levi", "Levi roots: alpha_ij with i, j < n",
              sorted((0, i, j) for i in range(1, n) for j in range(1, n) if i != j), lambda: sorted(cand.roots_L))
    run.check(f"strata.two_forms.n{n}.unipotent", "unipotent roots: alpha_in with i < n",
              sorted((0, i, n) for i in range(1, n)), lambda: sorted(cand.roots_U))
    pis = {tuple(AmbientWeight(shape, [n * ((i == k) + (i == l)) - 2 for i in range(1, n + 1)]).coords): (k, l)
           for k in range(1, n + 1) for l in range(k + 1, n + 1)}
    run.check(f"strata.two_forms.n{n}.weights", "plus = boundary weights: pi_kl with k < l < n",
              [[sorted((k, l) for k in range(1, n) for l in range(k + 1, n))]] * 2,
              lambda: [[sorted(pis[w] for w, _ in cand.plus_weights)], [sorted(pis[w] for w, _ in cand.zero_weights)]])
    run.check(f"strata.two_forms.n{n}.stratifying", "Pfaffian on L2(C^(n-1)) witnesses stratifying c",
              ["yes", (n - 1) // 2], lambda: [(v := is_stratifying(cand)).stratifying, v.witness_degree])


def _double_bundle_example(run: Run, n: int, m: int):
    shape = GroupShape((n, m))
    module = parse_module(shape, "std-dual x std")
    c = AmbientWeight.from_blocks(shape, [[Fraction(m - n, m)] * m + [1] * (n - m), [0] * m])
    cand = parabolic_data(shape, c, module)
    levi = sorted([(0, p, q) for p in range(1, n + 1) for q in range(1, n + 1) if p != q and (p <= m) == (q <= m)]
                  + [(1, r, s) for r in range(1, m + 1) for s in range(1, m + 1) if r != s])
    run.check(f"strata.double_bundle.n{n}m{m}.levi", "Levi roots: blocks p, q <= m or p, q > m, and all of SL_m",
              levi, lambda: sorted(cand.roots_L))
    run.check(f"strata.double_bundle.n{n}m{m}.unipotent", "unipotent roots: alpha_pq with q <= m < p",
              sorted((0, p, q) for p in range(m + 1, n + 1) for q in range(1, m + 1)), lambda: sorted(cand.roots_U))

    def pi_index(w):
        e, f = shape.split(w)
        return (next(k for k in range(n) if e[k] < 0) + 1, next(l for l in range(m) if f[l] > 0) + 1)

    want = sorted((k, l) for k in range(1, m + 1) for l in range(1, m + 1))
    run.check(f"strata.double_bundle.n{n}m{m}.weights", "plus = boundary weights: pi_kl with k <= m",
              [want, want], lambda: [sorted(pi_index(w) for w, _ in cand.plus_weights),
                                     sorted(pi_index(w) for w, _ in cand.zero_weights)])
    run.check(f"strata.double_bundle.n{n}m{m}.stratifying", "determinant on Hom(C^m, C^m) witnesses stratifying c",
              ["yes", m], lambda: [(v := is_stratifying(cand)).stratifying, v.witness_degree])


def sc_double_bundle(run: Run):
    V = sl3(0, 34)
    holder = {}

    def search():
        res = double_bundle_search(V, 2, 640)
        holder["res"] = res
        return [[str(c.U), [str(w) for w in c.W]] for c in res], res

    run.check("double_bundle.candidates", "the only candidate for P(V(0,34)) for dimension reasons",
              [["V(30,0)", ["V(0,4)", "V(5,9)"]]], search, detail=lambda r: [c.to_dict() for c in r])
    run.check("double_bundle.dims", "dim V(30,0) = dim V(0,4) + dim V(5,9) + 1", [496, 15, 480],
              lambda: [weyl_dim(sl3(30, 0)), weyl_dim(sl3(0, 4)), weyl_dim(sl3(5, 9))])
    run.check("double_bundle.linearization", "no PGL_3-linearized O(1) x O(k) exists", ["obstructed"],
              lambda: [c.linearization for c in holder["res"]])
    run.check("double_bundle.center_chars", "centre characters of V(0,34) and V(30,0)", [2, 0],
              lambda: [center_character(V)[0], center_character(sl3(30, 0))[0]])
    for n in (4, 5, 6):
        for m in range(2, n):
            _double_bundle_example(run, n, m)


def _d5_selection():
    led = {e.name: e.computed for e in theta_ledger(5).entries}
    return [led["dim L (d=5)"], list(led["unique selection"][0])]


def sc_theta_ledger(run: Run):
    for d in (5, 7, 9, 11):
        led = theta_ledger(d)
        run.check(f"ledger.theta.d{d}", "dimension of L and its summand selection", True,
                  lambda led=led: (led.passed, led), detail=lambda l: l.to_dict())
    run.check("ledger.theta.d5_selection", "d = 5: dim L = 31 from the summands 9, 12, 10", [31, [9, 12, 10]],
              lambda: _d5_selection())
    for k, c2 in ((0, 3), (1, 7), (2, 13)):
        led = zero_loci_ledger(k)
        run.check(f"ledger.zero_loci.k{k}", "c2 of T_P2(k) and section count", True,
                  lambda led=led: (led.passed and led.entries[0].computed == c2, led), detail=lambda l: l.to_dict())
    for d in (37, 65):
        led = covariant_ledger(d)
        run.check(f"ledger.covariant.d{d}", "covariant method dimension and level-8 ledger", True,
                  lambda led=led: (led.passed, led), detail=lambda l: l.to_dict())
    led = covariant_ledger(6)
    run.check("ledger.covariant.d6", "d = 6 lies outside the covariant method's range", True,
              lambda: (led.informational, led), detail=lambda l: l.to_dict())


def sc_torbit(run: Run):
    """Torus-level partition: min-norm points of random unstable supports are candidates."""
    shape = GroupShape.parse(run.params["group"])
    module = parse_module(shape, run.params["module"])
    cands = enumerate_candidates(shape, module)
    cset = {c.c.coords for c in cands}
    rng = random.Random(run.params["seed"])
    ws = module.weights()
    trials = 1000

    def sample():
        hit = 0
        unstable = 0
        while unstable < trials:
            k = rng.randint(1, len(ws))
            chosen = rng.sample(ws, k)
            v = {w.coords: 1 for w in chosen}
            vec = [(AmbientWeight(shape, w), 1) for w in v]
            if not is_T_unstable(vec):
                continue
            unstable += 1
            if weyl_canonical(min_norm_point(support(vec))).coords in cset:
                hit += 1
        return hit

    run.check("torbit.partition", f"{trials} random T-unstable supports land on enumerated candidates", trials,
              lambda: (sample(), len(cands)), seeded=True, detail=lambda k: {"candidates": k})


@dataclass(frozen=True)
class Scenario:
    name: str
    func: Callable
    description: str
    defaults: dict


REGISTRY: dict[str, Scenario] = {}


def register(name: str, func: Callable, description: str, **defaults):
    REGISTRY[name] = Scenario(name, func, description, defaults)


register("v34", sc_v34, "degree-34 ternary forms: dimensions, mu rank, fibre, Grassmannian clauses",
         seed=0, prime=10007)
register("seven-points", sc_seven_points, "seven points in the plane: explicit beta, psi and kernels", seed=0)
register("nullcone", sc_nullcone, "stratum sweep and maximal closures of a nullcone",
         group="SL3", module="0,4", max_degree=12, seed=0)
register("two-form-theta", sc_two_form_theta, "skew forms kappa, theta ledgers, two-form strata")
register("double-bundle-search", sc_double_bundle, "double bundle candidates for V(0,34) and block strata")
register("binary-forms", sc_binary_forms, "binary forms: strata vs Jacobian oracle, planted roots",
         seed=0, max_degree=12)
register("theta-ledger", sc_theta_ledger, "theta, zero-loci and covariant dimension ledgers")
register("torbit", sc_torbit, "torus-level partition of random unstable supports",
         group="SL3", module="0,4", seed=0)


def list_scenarios() -> list[dict]:
    return [{"name": s.name, "description": s.description, "parameters": s.defaults} for s in REGISTRY.values()]


def run_scenario(name: str, **overrides) -> Run:
    if name not in REGISTRY:
        raise KeyError(f"unknown scenario {name!r}; try `nullstrat list`")
    sc = REGISTRY[name]
    params = dict(sc.defaults)
    for k, v in overrides.items():
        if v is None:
            continue
        if k not in params:
            raise ValueError(f"scenario {name} takes no parameter {k!r}")
        params[k] = v
    if "prime" in params and not sympy.isprime(params["prime"]):
        raise ValueError(f"--prime {params['prime']} is not prime")
    if "max_degree" in params and params["max_degree"] < 1:
        raise ValueError("--max-degree must be >= 1")
    run = Run(name, params)
    sc.func(run)
    return run


def write_report(run: Run, outdir: Path) -> list[Path]:
    """TSV summary plus PNG figures; returns the written paths."""
    from .plotting import plot_verdicts
    outdir.mkdir(parents=True, exist_ok=True)
    tsv = outdir / f"{run.scenario}.tsv"
    with tsv.open("w", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(["claim", "verdict", "expected", "computed", "runtime", "input_hash", "seed"])
        for c in run.certificates:
            w.writerow([c.claim, c.verdict, json.dumps(c.expected), json.dumps(c.computed), f"{c.runtime:.6f}",
                        c.input_hash, "" if c.seed is None else c.seed])
    paths = [tsv]
    paths.append(plot_verdicts([c.claim for c in run.certificates], [c.verdict for c in run.certificates],
                               [c.runtime for c in run.certificates], outdir / f"{run.scenario}_verdicts.png",
                               title=run.scenario))
    for fname, fn in run.figures:
        paths.append(fn(outdir / f"{run.scenario}_{fname}"))
    return paths


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nullstrat", description="Exact certificates for nullcone strata and "
                                 "rationality-method preconditions.")
    ap.add_argument("--version", action="version", version=f"nullstrat {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    ls = sub.add_parser("list", help="list scenarios")
    ls.add_argument("--json", action="store_true", help="machine-readable output")
    rp = sub.add_parser("run", help="run a scenario")
    rp.add_argument("scenario")
    rp.add_argument("--seed", type=int)
    rp.add_argument("--prime", type=int)
    rp.add_argument("--max-degree", type=int, dest="max_degree")
    rp.add_argument("--group", help="e.g. SL3 or 'SL5 x SL3'")
    rp.add_argument("--module", help="e.g. 0,4-dual or 'std-dual x std'")
    rp.add_argument("--json", type=Path, dest="json_out", help="write certificate JSON here ('-' for stdout)")
    rp.add_argument("--report", type=Path, help="directory for TSV summary and figures")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "list":
        if args.json:
            print(json.dumps(list_scenarios(), indent=2))
        else:
            for s in REGISTRY.values():
                print(f"{s.name}\t{s.description}")
        return 0
    try:
        run = run_scenario(args.scenario, seed=args.seed, prime=args.prime, max_degree=args.max_degree,
                           group=args.group, module=args.module)
    except (KeyError, ValueError) as exc:
        print(f"nullstrat: error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return 64
    for c in run.certificates:
        print(f"{c.verdict.upper():12s} {c.claim}\texpected={json.dumps(c.expected)}\tcomputed={json.dumps(c.computed)}"
              f"\t{c.runtime:.3f}s")
    doc = json.dumps(run.document(), indent=2, sort_keys=True)
    if args.json_out is not None:
        if str(args.json_out) == "-":
            print(doc)
        else:
            args.json_out.write_text(doc + "\n")
    if args.report is not None:
        for p in write_report(run, args.report):
            print(f"wrote {p}", file=sys.stderr)
    return run.exit_code


if __name__ == "__main__":
    sys.exit(main())
