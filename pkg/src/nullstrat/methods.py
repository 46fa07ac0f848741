"""Precondition checkers and exact numeric ledgers for rationality methods:
double bundles, skew forms on odd-dimensional spaces, Grassmannian quotients,
covariants of ternary forms, zero loci of sections, theta characteristics and
instability of binary forms.  Everything here is exact.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

import sympy

from .lattice import GroupShape
from .repchar import (IrrLabel, center_character, ext_power, irr_character, mult_in, mult_in_tensor,
                      sl3, weyl_dim)
from .tensorcalc import (PolyTensor, SkewForm, iota, random_element, realize_irreducible,
                         stabilizer_dim, theta_kappa, theta_m)


# --- ledgers -------------------------------------------------------------------

@dataclass(frozen=True)
class LedgerEntry:
    name: str
    anchor: str
    expected: object
    computed: object

    @property
    def verdict(self) -> str:
        return "pass" if self.expected == self.computed else "fail"


@dataclass
class LedgerReport:
    title: str
    entries: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    informational: bool = False

    def add(self, name: str, anchor: str, expected, computed) -> LedgerEntry:
        e = LedgerEntry(name, anchor, expected, computed)
        self.entries.append(e)
        return e

    @property
    def passed(self) -> bool:
        return all(e.verdict == "pass" for e in self.entries)

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "informational": self.informational,
            "notes": list(self.notes),
            "entries": [dict(name=e.name, anchor=e.anchor, expected=_jsonable(e.expected),
                             computed=_jsonable(e.computed), verdict=e.verdict) for e in self.entries],
        }


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


# --- double bundle -----------------------------------------------------------------

@dataclass(frozen=True)
class DoubleBundleCandidate:
    V: IrrLabel
    U: IrrLabel
    W: tuple
    dim_V: int
    dim_U: int
    dim_W: tuple
    hom_mults: tuple
    linearizable_k: tuple  # residues k mod n with O(1) x O(k) linearized; empty = obstructed

    @property
    def linearization(self) -> str:
        return "admissible" if self.linearizable_k else "obstructed"

    def to_dict(self) -> dict:
        return {
            "V": str(self.V), "U": str(self.U), "W": [str(w) for w in self.W],
            "dim_V": self.dim_V, "dim_U": self.dim_U, "dim_W": list(self.dim_W),
            "hom_mults": list(self.hom_mults), "linearization": self.linearization,
            "linearizable_k": list(self.linearizable_k),
        }


def linearizable_twists(V: IrrLabel, U: IrrLabel) -> tuple[int, ...]:
    """Residues k mod n for which O(1) x O(k) on P(V) x P(U) carries a PGL_n
    linearization, i.e. the centre acts trivially: cc(V) + k cc(U) = 0 mod n."""
    n = V.shape.factors[0]
    cv, cu = center_character(V)[0], center_character(U)[0]
    return tuple(k for k in range(n) if (cv + k * cu) % n == 0)


def sl3_labels(dim_cap: int) -> list[IrrLabel]:
    """All SL_3 labels with Weyl dimension <= dim_cap, ordered by (dim, labels)."""
    out = []
    a = 0
    while weyl_dim(sl3(a, 0)) <= dim_cap:
        b = 0
        while weyl_dim(sl3(a, b)) <= dim_cap:
            out.append(sl3(a, b))
            b += 1
        a += 1
    return sorted(out, key=lambda l: (weyl_dim(l), l.labels))


def double_bundle_search(V: IrrLabel, w_max: int = 2, dim_cap: int = 640) -> list[DoubleBundleCandidate]:
    """Feasible (U, W) for the double bundle method applied to P(V)/SL_3.

    U ranges over irreducibles with dim U <= dim_cap and dim P(V) > dim P(U);
    W over multisets of at most w_max irreducibles with dim U = dim W + 1 and
    V inside Hom(U, W_i) for every summand.
    """
    if V.shape != GroupShape((3,)):
        raise ValueError("search implemented for SL_3")
    labels = sl3_labels(dim_cap)
    bydim: dict[int, list[IrrLabel]] = {}
    for lab in labels:
        bydim.setdefault(weyl_dim(lab), []).append(lab)
    dV = weyl_dim(V)
    cache: dict = {}

    def hom_mult(U, Wi):
        key = (U, Wi)
        if key not in cache:
            # V sits in U* (x) W_i only if the centre characters match
            if (center_character(Wi)[0] - center_character(U)[0] - center_character(V)[0]) % 3:
                cache[key] = 0
            elif weyl_dim(Wi) <= weyl_dim(U):
                cache[key] = mult_in_tensor(V, Wi, U.dual())
            else:
                cache[key] = mult_in_tensor(V, U.dual(), Wi)
        return cache[key]

    out = []
    for U in labels:
        dU = weyl_dim(U)
        if dU >= dV:
            continue
        for Wt in _multisets_of_dim(bydim, dU - 1, w_max):
            mults = tuple(hom_mult(U, Wi) for Wi in Wt)
            if all(m >= 1 for m in mults):
                out.append(DoubleBundleCandidate(V, U, Wt, dV, dU, tuple(weyl_dim(w) for w in Wt), mults,
                                                 linearizable_twists(V, U)))
    return sorted(out, key=lambda c: (c.dim_U, c.U.labels, tuple(w.labels for w in c.W)))


def _multisets_of_dim(bydim, target, w_max):
    def rec(rest, k, floor):
        if rest == 0:
            if floor != (0, ()):
                yield ()
            return
        if k == 0:
            return
        for d in sorted(bydim):
            if d > rest:
                break
            for lab in bydim[d]:
                if (d, lab.labels) < floor:
                    continue
                for tail in rec(rest - d, k - 1, (d, lab.labels)):
                    yield (lab,) + tail
    yield from rec(target, w_max, (0, ()))


# --- skew forms ------------------------------------------------------------------

class MethodInapplicable(ValueError):
    pass


@dataclass
class TwoFormReport:
    dim_E: int
    dim_V: int
    multiplicity: int
    witness_rank: int | None
    witness_kernel: list | None
    slack: int

    @property
    def passed(self) -> bool:
        ok = self.multiplicity >= 1
        if self.witness_rank is not None:
            ok = ok and self.witness_rank == self.dim_E - 1
        return ok

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["witness_kernel"] is not None:
            d["witness_kernel"] = [[str(x) for x in v] for v in d["witness_kernel"]]
        d["passed"] = self.passed
        return d


def two_form_check(E: IrrLabel, V: IrrLabel, witness: SkewForm | None = None) -> TwoFormReport:
    """Preconditions for sending a skew form on an odd-dimensional E^* to its kernel line."""
    dE = weyl_dim(E)
    if dE % 2 == 0:
        raise MethodInapplicable(f"dim E = {dE} is even")
    mult = mult_in(V, ext_power(irr_character(E).dual(), 2))
    rank = kern = None
    if witness is not None:
        if witness.N != dE:
            raise ValueError("witness dimension differs from dim E")
        rank = witness.rank()
        kern = witness.kernel()
    return TwoFormReport(dE, weyl_dim(V), mult, rank, kern, weyl_dim(V) - dE)


def theta_two_form(d: int, with_witness: bool = True) -> TwoFormReport:
    """E = C^d (x) C^3 under SL_d x SL_3 and V = Sym^2(C^d)^* (x) Lambda^2(C^3)^*."""
    shape = GroupShape((d, 3))
    E = IrrLabel(shape, ((1,) + (0,) * (d - 2), (1, 0)))
    V = IrrLabel(shape, ((0,) * (d - 2) + (2,), (1, 0)))
    return two_form_check(E, V, iota(d, theta_kappa(d)) if with_witness else None)


# --- Grassmannians ------------------------------------------------------------------

@dataclass
class GrassmannianReport:
    E: str
    k: int
    p: int
    dim_E: int
    clauses: dict

    @property
    def passed(self) -> bool:
        return all(v == "pass" for v in self.clauses.values())

    def to_dict(self) -> dict:
        return {"E": self.E, "k": self.k, "p": self.p, "dim_E": self.dim_E,
                "clauses": dict(self.clauses), "finite_stabilizer": "not certified",
                "passed": self.passed}


def _bimodule_degrees(label: IrrLabel) -> tuple[int, int] | None:
    (lab,) = label.labels
    inner = lab[1:-1] if len(lab) > 1 else ()
    if any(inner):
        return None
    return (lab[0], lab[-1]) if len(lab) > 1 else (lab[0], 0)


def grassmannian_check(E: IrrLabel, k: int, p: int, seed: int = 0, field_prime: int = 10007) -> GrassmannianReport:
    """Clauses for stable rationality of Grass(k, E)/SL_p.

    (i) the centre acts faithfully: the centre character is non-zero mod p;
    (ii) k <= dim E - (p^2 - 1) - 1; (iii) p does not divide k;
    (iv) Lie stabilizers of a random vector of E and of its line are zero.
    The probe in (iv) runs over F_q (q = field_prime); a zero stabilizer mod q
    lifts to a zero stabilizer at the corresponding rational point.
    """
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    if E.shape != GroupShape((p,)):
        raise ValueError(f"E must be a module for SL_{p}")
    dE = weyl_dim(E)
    clauses = {
        "center_faithful": "pass" if center_character(E)[0] % p else "fail",
        "dimension_bound": "pass" if k <= dE - (p * p - 1) - 1 else "fail",
        "p_not_dividing_k": "pass" if k % p else "fail",
    }
    degs = _bimodule_degrees(E)
    if degs is None:
        clauses["lie_stabilizer"] = "undetermined"
    else:
        rng = random.Random(seed)
        basis = realize_irreducible(degs[0], degs[1], field_prime, n=p)
        v = random_element(basis, rng, bound=field_prime)
        ok = stabilizer_dim(v) == 0 and stabilizer_dim(v, projective=True) == 0
        clauses["lie_stabilizer"] = "pass" if ok else "fail"
    return GrassmannianReport(str(E), k, p, dE, clauses)


# --- covariants of ternary forms --------------------------------------------------------

def _count_monomials(nvars: int, deg: int) -> int:
    if deg < 0:
        return 0
    return sum(1 for _ in itertools.combinations_with_replacement(range(nvars), deg))


def covariant_ledger(d: int) -> LedgerReport:
    """Dimension and level ledger for P(V(0,d))/SL_3 via degree-4 covariants."""
    rep = LedgerReport(f"covariant ledger d={d}")
    dimP = comb(d + 2, 2) - 1
    rep.add("dim P(V(0,d))", "projective space of ternary forms of degree d", dimP, weyl_dim(sl3(0, d)) - 1)
    if d % 3 == 1 and d >= 37:
        n = (d - 1) // 3
        rep.add("dim L_S", "L_S = x1^(2n+3) * C[x1,x2,x3]_(n-2)", comb(n, 2), _count_monomials(3, n - 2))
        W = sl3(0, 4)
    elif d % 3 == 2 and d >= 65:
        n = (d - 2) // 3
        rep.add("dim L_T", "L_T spanned by monomials of degree n-3 after the fixed factor", comb(n - 1, 2),
                _count_monomials(3, n - 3))
        W = sl3(0, 8)
    else:
        rep.informational = True
        rep.notes.append("outside the range covered by the covariant method")
        return rep
    dW = weyl_dim(W) - 1
    rep.add("dim P(W)", f"target space P({W})", comb(W.labels[0][1] + 2, 2) - 1, dW)
    rep.add("level-8 slack", "dim P(V) - dim P(W) >= 8", True, dimP - dW >= 8)
    rep.notes.append(f"slack {dimP - dW}")
    return rep


# --- zero loci ------------------------------------------------------------------

def _chern_tangent_p2() -> tuple[int, int]:
    h = sympy.Symbol("h")
    poly = sympy.Poly(sympy.expand((1 + h) ** 3), h)
    return int(poly.coeff_monomial(h)), int(poly.coeff_monomial(h ** 2))


def zero_loci_ledger(k: int) -> LedgerReport:
    """c_2 of T_P2(k); at k = 1 also h^0 and the point-count slack."""
    if k < 0:
        raise ValueError("k must be >= 0")
    c1, c2 = _chern_tangent_p2()
    rep = LedgerReport(f"zero loci of sections of T_P2({k})")
    # twisting a rank-2 bundle by O(k): c2 + c1 k + k^2
    rep.add("c2(T_P2(k))", "top Chern class of the twisted tangent bundle", 3 + 3 * k + k * k, c2 + c1 * k + k * k)
    if k == 1:
        # Euler sequence 0 -> O(1) -> O(2)^3 -> T(1) -> 0
        h0 = 3 * comb(4, 2) - comb(3, 2)
        rep.add("h0(T_P2(1))", "sections of T_P2(1) form V(1,2)", weyl_dim(sl3(1, 2)), h0)
        slack = h0 - 2 * (c2 + c1 + 1)
        rep.add("slack", "h0 - 2*c2 for seven points in the plane", 1, slack)
        rep.notes.append("birational" if slack == 1 else "not birational")
    return rep


# --- theta characteristics -------------------------------------------------------------

def theta_ledger(d: int) -> LedgerReport:
    if d < 5 or d % 2 == 0:
        raise ValueError("theta ledger needs odd d >= 5")
    rep = LedgerReport(f"theta ledger d={d}")
    closed = Fraction(3, 2) * d * d - Fraction(3, 2) * d + 1
    dimL = 3 * comb(d + 1, 2) - (3 * d - 1)
    rep.add("dim L", "3*C(d+1,2) - (3d-1)", closed, Fraction(dimL))
    rep.add("quotient dim", "C(d+2,3) - C(d-1,3)", closed, Fraction(comb(d + 2, 3) - comb(d - 1, 3)))
    parts = [3 * comb(d - 2, 2), 3 * (d - 3), 6 * (d - 3), 10, 8]
    rep.add("summand dims", "Sym2(F)xE, F x L2(E), F x S2(E), S3(E), S21(E)",
            [Fraction(3, 2) * (d - 2) * (d - 3), 3 * (d - 3), 6 * (d - 3), 10, 8], [Fraction(x) for x in parts])
    rep.add("summand total", "dim Sym2(C^d) x C^3", 3 * comb(d + 1, 2), sum(parts))
    sel = parts[0] + parts[2] + parts[3]
    rep.add("selection", "dim L = Sym2(F)xE + F x S2(E) + S3(E)", dimL, sel)
    if d >= 7:
        gap = Fraction(dimL) - (parts[1] + parts[2] + parts[3] + parts[4])
        rep.add("strict positivity", "dim L minus the four small summands", Fraction(3, 2) * d * d - Fraction(21, 2) * d + 10, gap)
        rep.add("gap positive", "the large summand lies in L", True, gap > 0)
        rep.add("complement", "dim L - dim Sym2(F)xE", 6 * d - 8, dimL - parts[0])
        rep.add("small sum", "3(d-3)+10+8 < 6d-8", True, parts[1] + parts[3] + parts[4] < 6 * d - 8)
    else:
        subsets = [s for r in range(1, 6) for s in itertools.combinations(range(5), r)
                   if sum(parts[i] for i in s) == dimL]
        rep.add("dim L (d=5)", "31", 31, dimL)
        rep.add("unique selection", "summands 9, 12, 10", [(9, 12, 10)],
                [tuple(parts[i] for i in s) for s in subsets])
    return rep


# --- binary forms ---------------------------------------------------------------------

def binary_instability(coeffs: Sequence) -> tuple[bool, int]:
    """Instability of sum_k coeffs[k] x^k y^(d-k) under SL_2.

    Returns (unstable, largest root multiplicity on P^1).  The root [1:0]
    has multiplicity d - deg_x, the affine roots are read off the GCD tower
    gcd(f, f', ..., f^(m-1)).
    """
    d = len(coeffs) - 1
    cs = [Fraction(c) for c in coeffs]
    if d < 1:
        raise ValueError("need degree >= 1")
    if not any(cs):
        raise ValueError("zero form")
    x = sympy.Symbol("x")
    f = sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in cs])), x, domain="QQ")
    best = d - f.degree()
    g = f
    m = 0
    deriv = f
    while g.degree() > 0:
        m += 1
        deriv = deriv.diff(x)
        g = sympy.gcd(g, deriv) if m < f.degree() else g.one
    best = max(best, m)
    return best >= d // 2 + 1, best


def planted_form(roots: Sequence[tuple[Fraction, int]], infinity: int = 0, scale: Fraction = Fraction(1)) -> list[Fraction]:
    """Coefficients of scale * y^infinity * prod (x - r y)^m, lowest x-degree first."""
    poly = [Fraction(scale)]
    for r, mult in roots:
        for _ in range(mult):
            nxt = [Fraction(0)] * (len(poly) + 1)
            for i, c in enumerate(poly):
                nxt[i + 1] += c
                nxt[i] -= r * c
            poly = nxt
    return poly + [Fraction(0)] * infinity


def binary_closure_jacobian_dim(d: int, m: int, seed: int = 0) -> int:
    """Rank of the differential of (l, q) -> l^m q at a random integer point.

    l is linear, q of degree d - m; the image is the closure of forms with an
    m-fold root.
    """
    rng = random.Random(seed)
    x = sympy.Symbol("x")
    ls = sympy.symbols("l0:2")
    qs = sympy.symbols(f"q0:{d - m + 1}")
    l = ls[0] + ls[1] * x
    q = sum(c * x ** i for i, c in enumerate(qs))
    coeffs = sympy.Poly(sympy.expand(l ** m * q), x).all_coeffs()
    params = list(ls) + list(qs)
    J = sympy.Matrix([[sympy.diff(c, v) for v in params] for c in coeffs])
    point = {v: rng.randint(-20, 20) or 1 for v in params}
    return J.subs(point).rank()
