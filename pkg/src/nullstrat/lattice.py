"""Character lattices of products of SL_n in sum-zero ambient coordinates.

For an SL_n factor the i-th coordinate character is realized as
``n*e_i - (1, ..., 1)``, so every weight of a block has coordinate sum 0
and the standard dot product restricts to a W-invariant inner product that
is integral on the lattice.  Weights of a product group are concatenations
of blocks.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterator, Sequence

Scalar = int | Fraction


def _as_scalar(x) -> Scalar:
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        return _as_scalar(Fraction(x))
    raise TypeError(f"not an exact scalar: {x!r}")


@dataclass(frozen=True)
class GroupShape:
    """Product of SL_{n_k} factors, listed in order."""

    factors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(n) for n in self.factors))
        if not self.factors:
            raise ValueError("a group shape needs at least one factor")
        if any(n < 2 for n in self.factors):
            raise ValueError(f"every SL_n factor needs n >= 2, got {self.factors}")

    @classmethod
    def parse(cls, text: str) -> "GroupShape":
        """Parse ``"SL3"`` or ``"SL5 x SL3"``."""
        parts = [p.strip() for p in re.split(r"\s*[x×*]\s*", text.strip()) if p.strip()]
        factors = []
        for p in parts:
            m = re.fullmatch(r"(?i)SL_?\(?(\d+)\)?", p)
            if not m:
                raise ValueError(f"cannot parse group factor {p!r}")
            factors.append(int(m.group(1)))
        return cls(tuple(factors))

    def __str__(self) -> str:
        return " x ".join(f"SL{n}" for n in self.factors)

    @property
    def dim(self) -> int:
        """Total number of ambient coordinates."""
        return sum(self.factors)

    @property
    def rank(self) -> int:
        return sum(n - 1 for n in self.factors)

    @property
    def weyl_order(self) -> int:
        out = 1
        for n in self.factors:
            out *= factorial(n)
        return out

    @property
    def group_dim(self) -> int:
        return sum(n * n - 1 for n in self.factors)

    @property
    def offsets(self) -> tuple[int, ...]:
        offs, acc = [], 0
        for n in self.factors:
            offs.append(acc)
            acc += n
        return tuple(offs)

    def split(self, coords: Sequence) -> tuple[tuple, ...]:
        return tuple(tuple(coords[o:o + n]) for o, n in zip(self.offsets, self.factors))


@dataclass(frozen=True)
class AmbientWeight:
    """A rational point of the sum-zero ambient space of ``shape``."""

    shape: GroupShape
    coords: tuple

    def __post_init__(self):
        coords = tuple(_as_scalar(c) for c in self.coords)
        if len(coords) != self.shape.dim:
            raise ValueError(f"expected {self.shape.dim} coordinates, got {len(coords)}")
        for block in self.shape.split(coords):
            if sum(block) != 0:
                raise ValueError(f"block {block} does not sum to zero")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def from_blocks(cls, shape: GroupShape, blocks: Sequence[Sequence]) -> "AmbientWeight":
        if len(blocks) != len(shape.factors):
            raise ValueError("block count does not match the group shape")
        flat = []
        for b, n in zip(blocks, shape.factors):
            if len(b) != n:
                raise ValueError(f"block {b} should have length {n}")
            flat.extend(b)
        return cls(shape, tuple(flat))

    @classmethod
    def zero(cls, shape: GroupShape) -> "AmbientWeight":
        return cls(shape, (0,) * shape.dim)

    @property
    def blocks(self) -> tuple[tuple, ...]:
        return self.shape.split(self.coords)

    def _check(self, other: "AmbientWeight"):
        if not isinstance(other, AmbientWeight) or other.shape != self.shape:
            raise ValueError("weights live on different group shapes")

    def __add__(self, other):
        self._check(other)
        return AmbientWeight(self.shape, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return AmbientWeight(self.shape, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return AmbientWeight(self.shape, tuple(-a for a in self.coords))

    def __mul__(self, k):
        k = _as_scalar(k)
        return AmbientWeight(self.shape, tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def is_integral(self) -> bool:
        """True iff the weight is an integer combination of the epsilon_i."""
        for block, n in zip(self.blocks, self.shape.factors):
            if any(Fraction(a).denominator != 1 for a in block):
                return False
            if len({int(a) % n for a in block}) != 1:
                return False
        return True

    def min_integral_multiple(self) -> int:
        """Least positive k with k*self integral."""
        k = 1
        while not (self * k).is_integral():
            k += 1
        return k

    def to_text(self) -> str:
        return format_weight(self)

    def __str__(self) -> str:
        return format_weight(self)


def epsilon(shape: GroupShape, factor: int, i: int) -> AmbientWeight:
    """The i-th coordinate character (1-based) of factor ``factor`` (0-based)."""
    if not 0 <= factor < len(shape.factors):
        raise IndexError(f"factor index {factor} out of range")
    n = shape.factors[factor]
    if not 1 <= i <= n:
        raise IndexError(f"epsilon index {i} out of range 1..{n}")
    coords = [0] * shape.dim
    off = shape.offsets[factor]
    for j in range(n):
        coords[off + j] = n - 1 if j == i - 1 else -1
    return AmbientWeight(shape, tuple(coords))


def pair(a: AmbientWeight, b: AmbientWeight) -> Scalar:
    """Blockwise dot product; W-invariant."""
    a._check(b)
    return _as_scalar(sum(x * y for x, y in zip(a.coords, b.coords)))


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def roots(shape: GroupShape) -> tuple[AmbientWeight, ...]:
    """All epsilon_i - epsilon_j within each factor, ordered by (factor, i, j)."""
    out = []
    for k, n in enumerate(shape.factors):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i != j:
                    out.append(epsilon(shape, k, i) - epsilon(shape, k, j))
    return tuple(out)


def root_labels(shape: GroupShape) -> tuple[tuple[int, int, int], ...]:
    """(factor, i, j) labels parallel to :func:`roots`."""
    return tuple((k, i, j) for k, n in enumerate(shape.factors)
                 for i in range(1, n + 1) for j in range(1, n + 1) if i != j)


def positive_roots(shape: GroupShape) -> tuple[AmbientWeight, ...]:
    return tuple(r for r, (_, i, j) in zip(roots(shape), root_labels(shape)) if i < j)


@dataclass(frozen=True)
class WeylElement:
    """One permutation per factor; ``perms[k][j]`` is the image of position j."""

    shape: GroupShape
    perms: tuple[tuple[int, ...], ...]

    @property
    def sign(self) -> int:
        return _product(perm_sign(p) for p in self.perms)

    def act(self, w: AmbientWeight) -> AmbientWeight:
        if w.shape != self.shape:
            raise ValueError("shape mismatch")
        out = []
        for block, perm in zip(w.blocks, self.perms):
            new = [0] * len(block)
            for j, x in enumerate(block):
                new[perm[j]] = x
            out.extend(new)
        return AmbientWeight(self.shape, tuple(out))

    __call__ = act


def _product(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


def perm_sign(p: Sequence[int]) -> int:
    p = list(p)
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def weyl_group(shape: GroupShape) -> Iterator[WeylElement]:
    """Iterate over all of W; only sensible for small groups."""
    for perms in itertools.product(*(itertools.permutations(range(n)) for n in shape.factors)):
        yield WeylElement(shape, tuple(perms))


def sort_with_sign(seq: Sequence) -> tuple[tuple, int]:
    """Sort non-increasingly; return (sorted, sign of the sorting permutation).

    The sign is 0 when two entries coincide.
    """
    items = list(seq)
    if len(set(items)) < len(items):
        return tuple(sorted(items, reverse=True)), 0
    order = sorted(range(len(items)), key=lambda j: items[j], reverse=True)
    return tuple(items[j] for j in order), perm_sign(order)


def weyl_canonical(a: AmbientWeight) -> AmbientWeight:
    """Dominant representative of the W-orbit: every block non-increasing."""
    out = []
    for block in a.blocks:
        out.extend(sorted(block, reverse=True))
    return AmbientWeight(a.shape, tuple(out))


def canonical_coords(shape: GroupShape, coords: Sequence) -> tuple:
    out = []
    for block in shape.split(coords):
        out.extend(sorted(block, reverse=True))
    return tuple(out)


def format_weight(w: AmbientWeight) -> str:
    return "[" + ",".join("(" + ",".join(str(x) for x in b) + ")" for b in w.blocks) + "]"


def parse_weight(text: str, shape: GroupShape | None = None) -> AmbientWeight:
    """Inverse of :func:`format_weight`: ``[(2,-1,-1),(1,-1)]``."""
    blocks = re.findall(r"\(([^()]*)\)", text)
    if not blocks:
        raise ValueError(f"no weight blocks in {text!r}")
    parsed = [tuple(Fraction(x.strip()) for x in b.split(",") if x.strip()) for b in blocks]
    if shape is None:
        shape = GroupShape(tuple(len(b) for b in parsed))
    return AmbientWeight.from_blocks(shape, parsed)
