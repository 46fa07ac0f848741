"""Character calculus for products of SL_n.

Characters are sparse maps from integer ambient weight tuples to positive
multiplicities.  Irreducible characters come from Freudenthal's recursion,
symmetric and exterior powers from the Adams/Newton recursion, and
multiplicities of irreducibles from a single Racah-Speiser pass over the
weights (fold each ``weight + rho`` into the dominant chamber with its
sign), so the Weyl group is never enumerated.
"""

from __future__ import annotations

import itertools
import re
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

from .lattice import AmbientWeight, GroupShape, canonical_coords, sort_with_sign
from .linalg import integer_kernel, rank_q


@dataclass(frozen=True)
class IrrLabel:
    """Dominant labels, one tuple of n_k - 1 non-negative integers per factor."""

    shape: GroupShape
    labels: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        labels = tuple(tuple(int(a) for a in lab) for lab in self.labels)
        if len(labels) != len(self.shape.factors):
            raise ValueError("one label tuple per factor required")
        for lab, n in zip(labels, self.shape.factors):
            if len(lab) != n - 1:
                raise ValueError(f"SL{n} labels need {n - 1} entries, got {lab}")
            if any(a < 0 for a in lab):
                raise ValueError(f"labels must be non-negative, got {lab}")
        object.__setattr__(self, "labels", labels)

    def dual(self) -> "IrrLabel":
        return IrrLabel(self.shape, tuple(tuple(reversed(lab)) for lab in self.labels))

    def __str__(self) -> str:
        parts = ["V(" + ",".join(map(str, lab)) + ")" for lab in self.labels]
        return " x ".join(parts)


def sl3(a: int, b: int) -> IrrLabel:
    """V(a, b) for SL_3 with V(1,0) the standard representation."""
    return IrrLabel(GroupShape((3,)), ((a, b),))


def trivial_label(shape: GroupShape) -> IrrLabel:
    return IrrLabel(shape, tuple((0,) * (n - 1) for n in shape.factors))


def _fundamental_block(n: int, k: int) -> list[int]:
    return [n - k if i < k else -k for i in range(n)]


def highest_weight_block(n: int, lab: Sequence[int]) -> tuple[int, ...]:
    out = [0] * n
    for k, a in enumerate(lab, start=1):
        for i, x in enumerate(_fundamental_block(n, k)):
            out[i] += a * x
    return tuple(out)


def highest_weight(label: IrrLabel) -> tuple[int, ...]:
    out: list[int] = []
    for n, lab in zip(label.shape.factors, label.labels):
        out.extend(highest_weight_block(n, lab))
    return tuple(out)


def label_from_weight(shape: GroupShape, coords: Sequence) -> IrrLabel:
    """Inverse of :func:`highest_weight` on dominant integral weights."""
    labs = []
    for n, block in zip(shape.factors, shape.split(coords)):
        lab = []
        for i in range(n - 1):
            diff = Fraction(block[i] - block[i + 1], n)
            if diff.denominator != 1 or diff < 0:
                raise ValueError(f"{block} is not dominant integral")
            lab.append(int(diff))
        labs.append(tuple(lab))
    return IrrLabel(shape, tuple(labs))


def rho_block(n: int, positions: Sequence[int] | None = None, size: int | None = None) -> dict[int, Fraction]:
    """Half the sum of positive roots on the given positions of one SL_n block."""
    positions = list(range(n)) if positions is None else sorted(positions)
    k = len(positions)
    return {p: Fraction(n * (k - 1 - 2 * r), 2) for r, p in enumerate(positions)}


def rho(shape: GroupShape) -> tuple[int, ...]:
    out = []
    for n in shape.factors:
        out.extend(int(v) for v in rho_block(n).values())
    return tuple(out)


def weyl_dim(label: IrrLabel) -> int:
    """Weyl dimension formula: product over positive roots of (lambda+rho, a)/(rho, a)."""
    dim = Fraction(1)
    for n, lab in zip(label.shape.factors, label.labels):
        for i in range(n):
            for j in range(i + 1, n):
                dim *= Fraction(sum(lab[i:j]) + (j - i), j - i)
    assert dim.denominator == 1
    return int(dim)


@dataclass
class CharacterMultiset:
    """Weight multiset of a finite-dimensional module; keys are ambient tuples."""

    shape: GroupShape
    mults: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for w, m in self.mults.items():
            if m < 0:
                raise ValueError(f"negative multiplicity {m} at {w}")
            if m:
                if len(w) != self.shape.dim:
                    raise ValueError(f"weight {w} has wrong length")
                clean[tuple(w)] = int(m)
        self.mults = clean

    @property
    def dim(self) -> int:
        return sum(self.mults.values())

    def __len__(self):
        return len(self.mults)

    def __eq__(self, other):
        return isinstance(other, CharacterMultiset) and self.shape == other.shape and self.mults == other.mults

    def multiplicity(self, w) -> int:
        if isinstance(w, AmbientWeight):
            w = w.coords
        return self.mults.get(tuple(w), 0)

    def weights(self) -> list[AmbientWeight]:
        return [AmbientWeight(self.shape, w) for w in sorted(self.mults, reverse=True)]

    def support(self) -> list[tuple]:
        return sorted(self.mults, reverse=True)

    def items(self):
        return self.mults.items()

    def __add__(self, other: "CharacterMultiset") -> "CharacterMultiset":
        _same(self, other)
        out = dict(self.mults)
        for w, m in other.mults.items():
            out[w] = out.get(w, 0) + m
        return CharacterMultiset(self.shape, out)

    def __mul__(self, other: "CharacterMultiset") -> "CharacterMultiset":
        return tensor(self, other)

    def dual(self) -> "CharacterMultiset":
        return CharacterMultiset(self.shape, {tuple(-x for x in w): m for w, m in self.mults.items()})

    def scaled(self, k: int) -> "CharacterMultiset":
        """Adams operation psi^k: every weight multiplied by k."""
        return CharacterMultiset(self.shape, {tuple(k * x for x in w): m for w, m in self.mults.items()})

    def is_w_invariant(self) -> bool:
        for w, m in self.mults.items():
            blocks = self.shape.split(w)
            for k, block in enumerate(blocks):
                # adjacent transpositions generate each symmetric factor
                for i in range(len(block) - 1):
                    nb = list(block)
                    nb[i], nb[i + 1] = nb[i + 1], nb[i]
                    new = list(itertools.chain(*blocks[:k], nb, *blocks[k + 1:]))
                    if self.mults.get(tuple(new), 0) != m:
                        return False
        return True

    def to_list(self) -> list:
        """Sorted (weight, multiplicity) pairs; the serialized form."""
        return [[[str(x) for x in w], m] for w, m in sorted(self.mults.items())]

    @classmethod
    def from_list(cls, shape: GroupShape, data) -> "CharacterMultiset":
        return cls(shape, {tuple(int(Fraction(x)) for x in w): m for w, m in data})


def _same(a: CharacterMultiset, b: CharacterMultiset):
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")


def trivial(shape: GroupShape) -> CharacterMultiset:
    return CharacterMultiset(shape, {(0,) * shape.dim: 1})


def tensor(m: CharacterMultiset, n: CharacterMultiset) -> CharacterMultiset:
    _same(m, n)
    out: dict = defaultdict(int)
    for w1, a in m.mults.items():
        for w2, b in n.mults.items():
            out[tuple(x + y for x, y in zip(w1, w2))] += a * b
    return CharacterMultiset(m.shape, out)


def outer(*chars: CharacterMultiset) -> CharacterMultiset:
    """External tensor product; the result lives on the concatenated shape."""
    shape = GroupShape(tuple(itertools.chain(*(c.shape.factors for c in chars))))
    out: dict = {(): 1}
    for c in chars:
        new: dict = defaultdict(int)
        for w, a in out.items():
            for v, b in c.mults.items():
                new[w + v] += a * b
        out = new
    return CharacterMultiset(shape, out)


def _power(m: CharacterMultiset, d: int, sign: int) -> CharacterMultiset:
    if d < 0:
        raise ValueError("power degree must be >= 0")
    powers = [trivial(m.shape).mults]
    adams = {}
    for j in range(1, d + 1):
        acc: dict = defaultdict(int)
        for k in range(1, j + 1):
            if k not in adams:
                adams[k] = m.scaled(k).mults
            coef = 1 if sign > 0 or k % 2 == 1 else -1
            for w1, a in adams[k].items():
                for w2, b in powers[j - k].items():
                    acc[tuple(x + y for x, y in zip(w1, w2))] += coef * a * b
        nxt = {}
        for w, v in acc.items():
            if v % j:
                raise ArithmeticError(f"non-integral multiplicity {v}/{j} at {w}")
            if v:
                nxt[w] = v // j
        powers.append(nxt)
    return CharacterMultiset(m.shape, powers[d])


def sym_power(m: CharacterMultiset, d: int) -> CharacterMultiset:
    """Sym^d via d*S^d = sum_k psi^k(M) S^(d-k)."""
    return _power(m, d, +1)


def ext_power(m: CharacterMultiset, d: int) -> CharacterMultiset:
    """Lambda^d via d*L^d = sum_k (-1)^(k-1) psi^k(M) L^(d-k)."""
    return _power(m, d, -1)


# --- irreducible characters -------------------------------------------------

def _in_polytope(block: Sequence[int], hw: Sequence[int]) -> bool:
    s = sorted(block, reverse=True)
    a = b = 0
    for x, y in zip(s, hw):
        a += x
        b += y
        if a > b:
            return False
    return True


def _dominant_mults_block(n: int, lab: Sequence[int]) -> dict[tuple, int]:
    """Freudenthal recursion for one SL_n factor, on dominant weights only."""
    hw = highest_weight_block(n, lab)
    simple = [tuple(n if i == k else -n if i == k + 1 else 0 for i in range(n)) for k in range(n - 1)]
    pos = [tuple(n if t == i else -n if t == j else 0 for t in range(n)) for i in range(n) for j in range(i + 1, n)]
    rh = [int(v) for v in rho_block(n).values()]

    # weights of V(lambda) are connected to lambda by simple-root strings
    height = {hw: 0}
    frontier = [hw]
    while frontier:
        nxt = []
        for mu in frontier:
            for a in simple:
                nu = tuple(x - y for x, y in zip(mu, a))
                if nu not in height and _in_polytope(nu, hw):
                    height[nu] = height[mu] + 1
                    nxt.append(nu)
        frontier = nxt
    dominant = sorted((mu for mu in height if list(mu) == sorted(mu, reverse=True)), key=lambda mu: height[mu])

    def norm2(v):
        return sum(x * x for x in v)

    top = norm2([x + r for x, r in zip(hw, rh)])
    mult: dict[tuple, int] = {}
    for mu in dominant:
        if mu == hw:
            mult[mu] = 1
            continue
        num = 0
        for a in pos:
            k = 1
            while True:
                nu = tuple(x + k * y for x, y in zip(mu, a))
                if not _in_polytope(nu, hw):
                    break
                m = mult.get(tuple(sorted(nu, reverse=True)), 0)
                if m:
                    num += m * sum(x * y for x, y in zip(nu, a))
                k += 1
        den = top - norm2([x + r for x, r in zip(mu, rh)])
        val = Fraction(2 * num, den)
        assert val.denominator == 1 and val >= 0, (mu, val)
        if val:
            mult[mu] = int(val)
    return mult


def _distinct_permutations(seq: Sequence) -> Iterable[tuple]:
    items = sorted(seq)
    n = len(items)
    while True:
        yield tuple(items)
        i = n - 2
        while i >= 0 and items[i] >= items[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while items[j] <= items[i]:
            j -= 1
        items[i], items[j] = items[j], items[i]
        items[i + 1:] = reversed(items[i + 1:])


def irr_character(label: IrrLabel) -> CharacterMultiset:
    """Full weight multiset of V(label)."""
    blocks = []
    for n, lab in zip(label.shape.factors, label.labels):
        dom = _dominant_mults_block(n, lab)
        full = {}
        for mu, m in dom.items():
            for w in _distinct_permutations(mu):
                full[w] = m
        blocks.append(CharacterMultiset(GroupShape((n,)), full))
    return outer(*blocks) if len(blocks) > 1 else CharacterMultiset(label.shape, blocks[0].mults)


def standard(shape: GroupShape, factor: int = 0) -> CharacterMultiset:
    """The defining representation of one factor, trivial on the others."""
    labs = [tuple([0] * (n - 1)) for n in shape.factors]
    n = shape.factors[factor]
    labs[factor] = tuple([1] + [0] * (n - 2))
    return irr_character(IrrLabel(shape, tuple(labs)))


# --- multiplicities -----------------------------------------------------------

@dataclass(frozen=True)
class ReflectionData:
    """Classes of coordinates permuted by a (Levi) Weyl group, with its rho."""

    shape: GroupShape
    classes: tuple[tuple[int, ...], ...]
    rho: tuple

    @classmethod
    def full(cls, shape: GroupShape) -> "ReflectionData":
        classes = tuple(tuple(range(o, o + n)) for o, n in zip(shape.offsets, shape.factors))
        return cls(shape, classes, rho(shape))

    @classmethod
    def levi(cls, shape: GroupShape, c: Sequence) -> "ReflectionData":
        """Weyl group of the centralizer of c: permutations of equal c-coordinates."""
        classes = []
        r = [Fraction(0)] * shape.dim
        for o, n in zip(shape.offsets, shape.factors):
            groups: dict = {}
            for i in range(o, o + n):
                groups.setdefault(c[i], []).append(i)
            for pos in sorted(groups.values()):
                classes.append(tuple(pos))
                for p, v in rho_block(n, pos).items():
                    r[p] = v
        return cls(shape, tuple(classes), tuple(int(x) if x.denominator == 1 else x for x in r))

    def fold(self, coords: Sequence) -> tuple[tuple, int]:
        """Move a point into the dominant chamber; sign 0 on a wall."""
        out = list(coords)
        sign = 1
        for cl in self.classes:
            vals, s = sort_with_sign([coords[i] for i in cl])
            if s == 0:
                return tuple(out), 0
            sign *= s
            for i, v in zip(cl, vals):
                out[i] = v
        return tuple(out), sign


def decompose_weights(m: CharacterMultiset, refl: ReflectionData | None = None, shift=None) -> dict[tuple, int]:
    """Highest weights (as ambient tuples) with multiplicities, Racah-Speiser style.

    ``shift`` is subtracted from every weight first (used to pass to a
    subtorus orthogonal to a fixed vector).
    """
    refl = refl or ReflectionData.full(m.shape)
    out: dict = defaultdict(int)
    for w, mult in m.mults.items():
        if shift is not None:
            w = tuple(x - s for x, s in zip(w, shift))
        folded, sign = refl.fold(tuple(x + r for x, r in zip(w, refl.rho)))
        if sign:
            out[tuple(x - r for x, r in zip(folded, refl.rho))] += sign * mult
    return {w: v for w, v in out.items() if v}


def decompose(m: CharacterMultiset) -> dict[IrrLabel, int]:
    """Irreducible decomposition, deterministic order (lexicographic on labels)."""
    raw = decompose_weights(m)
    out = {}
    for w, v in raw.items():
        if v < 0:
            raise ArithmeticError(f"negative multiplicity {v} for highest weight {w}")
        out[label_from_weight(m.shape, w)] = v
    return dict(sorted(out.items(), key=lambda kv: kv[0].labels))


def mult_in(label: IrrLabel, m: CharacterMultiset) -> int:
    """Multiplicity of V(label) in the module with character m."""
    if label.shape != m.shape:
        raise ValueError("shape mismatch")
    refl = ReflectionData.full(m.shape)
    target = tuple(x + r for x, r in zip(highest_weight(label), refl.rho))
    total = 0
    for w, mult in m.mults.items():
        folded, sign = refl.fold(tuple(x + r for x, r in zip(w, refl.rho)))
        if sign and folded == target:
            total += sign * mult
    if total < 0:
        raise ArithmeticError(f"negative multiplicity for {label}")
    return total


def mult_in_tensor(label: IrrLabel, small: IrrLabel, other: IrrLabel | CharacterMultiset) -> int:
    """Multiplicity of V(label) in V(small) (x) other, by Klimyk's formula.

    Only the weights of V(small) are touched; ``other`` enters through its
    highest weight (or, for a general character, through its weights).
    """
    refl = ReflectionData.full(label.shape)
    target = tuple(x + r for x, r in zip(highest_weight(label), refl.rho))
    small_char = irr_character(small)
    if isinstance(other, IrrLabel):
        tops = {highest_weight(other): 1}
    else:
        tops = decompose_weights(other)
    total = 0
    for top, k in tops.items():
        base = tuple(x + r for x, r in zip(top, refl.rho))
        for w, mult in small_char.mults.items():
            folded, sign = refl.fold(tuple(x + y for x, y in zip(w, base)))
            if sign and folded == target:
                total += k * sign * mult
    return total


def decompose_by_extraction(m: CharacterMultiset) -> dict[IrrLabel, int]:
    """Peel off irreducibles from the highest remaining dominant weight.

    Independent of :func:`decompose`; used as a cross-check.
    """
    rest = dict(m.mults)
    out: dict[IrrLabel, int] = {}
    rh = rho(m.shape)
    while rest:
        dom = [w for w in rest if canonical_coords(m.shape, w) == w]
        top = max(dom, key=lambda w: (sum(x * r for x, r in zip(w, rh)), w))
        k = rest[top]
        if k < 0:
            raise ArithmeticError("character is not a genuine module")
        lab = label_from_weight(m.shape, top)
        out[lab] = out.get(lab, 0) + k
        for w, v in irr_character(lab).mults.items():
            nv = rest.get(w, 0) - k * v
            if nv:
                rest[w] = nv
            else:
                rest.pop(w, None)
    return dict(sorted(out.items(), key=lambda kv: kv[0].labels))


def invariant_dim(m: CharacterMultiset, d: int) -> int:
    """Dimension of the degree-d invariants: multiplicity of the trivial module in Sym^d."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    return mult_in(trivial_label(m.shape), sym_power(m, d))


# --- center -------------------------------------------------------------------

def center_character(label: IrrLabel) -> tuple[int, ...]:
    """Class of the highest weight modulo the root lattice, per factor (Z/n)."""
    return tuple(sum(k * a for k, a in enumerate(lab, start=1)) % n
                 for n, lab in zip(label.shape.factors, label.labels))


def weight_class(shape: GroupShape, coords: Sequence[int]) -> tuple[int, ...]:
    """Class in X*(T)/Q of an integral ambient weight, per factor."""
    return tuple(int(-block[0]) % n for n, block in zip(shape.factors, shape.split(coords)))


def center_character_from_weights(label: IrrLabel) -> tuple[int, ...]:
    """Same residue read off the explicit weights; all weights must agree."""
    classes = {weight_class(label.shape, w) for w in irr_character(label).mults}
    if len(classes) != 1:
        raise ArithmeticError(f"weights of {label} span several center classes: {classes}")
    return classes.pop()


# --- diagonal tori ------------------------------------------------------------

@dataclass(frozen=True)
class TorusInvariants:
    basis: tuple[tuple[int, ...], ...]
    transcendence_degree: int


def diagonal_torus_invariants(weights: Sequence[Sequence[int]]) -> TorusInvariants:
    """Exponent lattice of invariant Laurent monomials for a diagonal torus action.

    ``weights[i]`` is the weight (length r) of the i-th coordinate.  The
    invariant monomials x^v are those with sum_i v_i * weights[i] = 0.
    """
    m = len(weights)
    if m == 0:
        return TorusInvariants((), 0)
    r = len(weights[0])
    rows = [[int(weights[i][k]) for i in range(m)] for k in range(r)]
    basis = integer_kernel(rows, m)
    trdeg = m - rank_q(rows, m)
    assert len(basis) == trdeg
    return TorusInvariants(tuple(tuple(b) for b in basis), trdeg)


# --- parsing module descriptions -----------------------------------------------

def _parse_factor_module(n: int, text: str) -> CharacterMultiset:
    text = text.strip()
    dual = False
    if text.endswith("-dual") or text.endswith("*"):
        dual = True
        text = text[:-5] if text.endswith("-dual") else text[:-1]
    one = GroupShape((n,))
    if text in ("std", "standard"):
        ch = standard(one)
    elif text in ("triv", "trivial"):
        ch = trivial(one)
    elif text.startswith("sym:"):
        ch = sym_power(standard(one), int(text[4:]))
    elif text.startswith("ext:"):
        ch = ext_power(standard(one), int(text[4:]))
    elif text == "adj":
        ch = irr_character(IrrLabel(one, (tuple([1] + [0] * (n - 3) + [1]) if n > 2 else (2,),)))
    else:
        lab = tuple(int(x) for x in re.split(r"[,\s]+", text) if x)
        ch = irr_character(IrrLabel(one, (lab,)))
    return ch.dual() if dual else ch


def parse_module(shape: GroupShape, text: str) -> CharacterMultiset:
    """Parse a module description.

    Per factor: ``a,b`` (labels), ``std``, ``sym:d``, ``ext:k``, ``adj`` or
    ``triv``, optionally suffixed by ``-dual``; factors joined by `` x ``;
    direct sums by `` + ``.
    """
    total = None
    for summand in text.split("+"):
        parts = [p for p in re.split(r"\s+x\s+", summand.strip()) if p]
        if len(parts) != len(shape.factors):
            raise ValueError(f"module {summand!r} needs {len(shape.factors)} factor(s) for {shape}")
        chars = [_parse_factor_module(n, p) for n, p in zip(shape.factors, parts)]
        ch = outer(*chars) if len(chars) > 1 else chars[0]
        ch = CharacterMultiset(shape, ch.mults)
        total = ch if total is None else total + ch
    return total


def binomial_dim_sym(dim: int, d: int) -> int:
    return comb(dim + d - 1, d)
