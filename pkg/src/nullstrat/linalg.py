"""Exact rank, kernel and solve over Q (Fractions) and F_p (numpy int64).

Matrices are given as lists of rows.  Over F_p the modulus must stay below
2**31 so that products fit into int64.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

MAX_PRIME = 2**31


def _rref_q(rows: Sequence[Sequence], ncols: int):
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank_q(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    if not rows:
        return 0
    ncols = len(rows[0]) if ncols is None else ncols
    return len(_rref_q(rows, ncols)[1])


def nullspace_q(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : M v = 0}, one vector per free column, in column order."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, pivots = _rref_q(rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[free]
        basis.append(v)
    return basis


def solve_q(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """One solution of M x = rhs (free variables set to 0), or None."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = _rref_q(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return x


def _check_prime(p: int):
    if not 2 <= p < MAX_PRIME:
        raise ValueError(f"modulus {p} outside the supported range")


def rref_mod_p(mat, p: int):
    """Reduced row echelon form over F_p; returns (array, pivot columns)."""
    _check_prime(p)
    a = np.array(mat, dtype=np.int64) % p
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            a[rows] = (a[rows] - np.outer(col[rows], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank_mod_p(mat, p: int) -> int:
    a = np.asarray(mat)
    if a.size == 0:
        return 0
    return len(rref_mod_p(a, p)[1])


def nullspace_mod_p(mat, p: int) -> np.ndarray:
    """Kernel basis over F_p as rows of an int64 array."""
    a = np.asarray(mat, dtype=np.int64)
    ncols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    red, pivots = rref_mod_p(a, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for row, pc in zip(red, pivots):
            basis[k, pc] = (-row[fc]) % p
    return basis


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Z-basis of the lattice {v in Z^ncols : M v = 0}.

    Column reduction of the stacked matrix [M; I] by unimodular operations;
    columns whose M-part vanishes carry the kernel basis.
    """
    m = [list(map(int, r)) for r in rows]
    nr = len(m)
    cols = [[m[i][j] for i in range(nr)] + [int(k == j) for k in range(ncols)] for j in range(ncols)]
    start = 0
    for i in range(nr):
        while True:
            nz = [j for j in range(start, ncols) if cols[j][i] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda j: abs(cols[j][i]))
            piv = nz[0]
            for j in nz[1:]:
                q = cols[j][i] // cols[piv][i]
                cols[j] = [x - q * y for x, y in zip(cols[j], cols[piv])]
        nz = [j for j in range(start, ncols) if cols[j][i] != 0]
        if nz:
            j = nz[0]
            cols[start], cols[j] = cols[j], cols[start]
            start += 1
    basis = [c[nr:] for c in cols[start:]]
    return _hermite_rows(basis)


def _hermite_rows(basis: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite normal form, for a canonical printed basis."""
    b = [row[:] for row in basis]
    if not b:
        return b
    ncols = len(b[0])
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(b)) if b[i][c] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda i: abs(b[i][c]))
            piv = nz[0]
            for i in nz[1:]:
                q = b[i][c] // b[piv][c]
                b[i] = [x - q * y for x, y in zip(b[i], b[piv])]
        nz = [i for i in range(r, len(b)) if b[i][c] != 0]
        if not nz:
            continue
        b[r], b[nz[0]] = b[nz[0]], b[r]
        if b[r][c] < 0:
            b[r] = [-x for x in b[r]]
        for i in range(r):
            q = b[i][c] // b[r][c]
            b[i] = [x - q * y for x, y in zip(b[i], b[r])]
        r += 1
        if r == len(b):
            break
    return b
