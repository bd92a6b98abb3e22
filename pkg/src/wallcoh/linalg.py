"""Exact dense linear algebra over the rationals and prime fields.

Rational mode is authoritative; prime-field mode is the fast screen. The
prime-field elimination runs in the compiled kernel when the extension built,
otherwise in a vectorized numpy fallback selected at import time.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

try:  # compiled kernel, optional
    from . import _speedups  # type: ignore[attr-defined]

    _HAVE_SPEEDUPS = True
except ImportError:  # pragma: no cover - depends on build environment
    _speedups = None
    _HAVE_SPEEDUPS = False

import os

_FORCE_FALLBACK = bool(os.environ.get("WALLCOH_NO_SPEEDUPS"))


def backend_name() -> str:
    if _HAVE_SPEEDUPS and not _FORCE_FALLBACK:
        return "compiled"
    return "numpy"


@dataclass
class Echelon:
    """Reduced row echelon data: normalized rows, pivot columns, width."""

    rank: int
    pivots: list
    rows: object  # list of Fraction rows, or np.ndarray
    ncols: int


def _rref_qq(rows: list[list[Fraction]], ncols: int) -> Echelon:
    mat = [list(r) for r in rows]
    m = len(mat)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        k = None
        for i in range(r, m):
            if mat[i][c] != 0:
                k = i
                break
        if k is None:
            continue
        if k != r:
            mat[r], mat[k] = mat[k], mat[r]
        inv = mat[r][c]
        if inv != 1:
            mat[r] = [x / inv for x in mat[r]]
        for i in range(m):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                row_r = mat[r]
                mat[i] = [a - f * b for a, b in zip(mat[i], row_r)]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return Echelon(r, pivots, mat[:r], ncols)


def _rref_modp_numpy(a: np.ndarray, p: int):
    m, n = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        if inv != 1:
            a[r] = (a[r] * inv) % p
        hit = np.nonzero(a[:, c])[0]
        hit = hit[hit != r]
        if hit.size:
            a[hit] = (a[hit] - np.outer(a[hit, c], a[r])) % p
        pivots.append(c)
        r += 1
        if r == m:
            break
    return r, pivots


class FieldOps:
    """Field-dispatching matrix helper. ``p is None`` means the rationals."""

    def __init__(self, p: int | None = None):
        if p is not None:
            if p < 2 or p >= 2**31:
                raise ValueError("prime must satisfy 2 <= p < 2**31")
        self.p = p

    # -- construction -----------------------------------------------------

    def matrix(self, int_rows, ncols: int):
        """Build a matrix from rows of python ints (dense lists)."""
        if self.p is None:
            return [[Fraction(x) for x in row] for row in int_rows]
        a = np.array([[x % self.p for x in row] for row in int_rows],
                     dtype=np.int64)
        if a.size == 0:
            a = a.reshape((len(int_rows), ncols))
        return a

    def zeros(self, nrows: int, ncols: int):
        if self.p is None:
            return [[Fraction(0)] * ncols for _ in range(nrows)]
        return np.zeros((nrows, ncols), dtype=np.int64)

    def nrows(self, mat) -> int:
        return len(mat)

    # -- elimination ------------------------------------------------------

    def rref(self, mat, ncols: int) -> Echelon:
        if self.p is None:
            return _rref_qq(mat, ncols)
        a = np.array(mat, dtype=np.int64, copy=True) % self.p
        if a.size == 0:
            a = a.reshape((len(mat), ncols))
            return Echelon(0, [], a[:0], ncols)
        if _HAVE_SPEEDUPS and not _FORCE_FALLBACK:
            rank, pivots = _speedups.rref_modp(a, self.p)
        else:
            rank, pivots = _rref_modp_numpy(a, self.p)
        return Echelon(rank, list(pivots), a[:rank], ncols)

    def rank(self, mat, ncols: int) -> int:
        return self.rref(mat, ncols).rank

    def reduce(self, ech: Echelon, vec):
        """Subtract the echelon span from ``vec``; residual has zeros at
        every pivot column."""
        if self.p is None:
            v = list(vec)
            for row, c in zip(ech.rows, ech.pivots):
                f = v[c]
                if f != 0:
                    v = [a - f * b for a, b in zip(v, row)]
            return v
        v = np.array(vec, dtype=np.int64) % self.p
        for i, c in enumerate(ech.pivots):
            f = int(v[c])
            if f:
                v = (v - f * ech.rows[i]) % self.p
        return v

    def is_zero_vec(self, vec) -> bool:
        if self.p is None:
            return all(x == 0 for x in vec)
        return not np.any(vec)

    def nullspace(self, mat, ncols: int):
        """Basis of the right kernel, one vector per free column."""
        ech = self.rref(mat, ncols)
        pivset = set(ech.pivots)
        free = [c for c in range(ncols) if c not in pivset]
        basis = []
        for fc in free:
            if self.p is None:
                v = [Fraction(0)] * ncols
                v[fc] = Fraction(1)
                for row, pc in zip(ech.rows, ech.pivots):
                    v[pc] = -row[fc]
            else:
                v = np.zeros(ncols, dtype=np.int64)
                v[fc] = 1
                for i, pc in enumerate(ech.pivots):
                    v[pc] = (-int(ech.rows[i][fc])) % self.p
            basis.append(v)
        return basis

    def transpose(self, mat, nrows: int, ncols: int):
        if self.p is None:
            if not mat:
                return [[] for _ in range(ncols)]
            return [list(col) for col in zip(*mat)]
        a = np.asarray(mat, dtype=np.int64).reshape((nrows, ncols))
        return np.ascontiguousarray(a.T)

    # -- composition ------------------------------------------------------

    def matmul(self, a, b, inner: int, ncols: int):
        """a (rows x inner) times b (inner x ncols), rows-of-rows layout."""
        if self.p is None:
            out = []
            for row in a:
                acc = [Fraction(0)] * ncols
                for k, x in enumerate(row):
                    if x != 0:
                        rb = b[k]
                        acc = [u + x * v for u, v in zip(acc, rb)]
                out.append(acc)
            return out
        am = np.array(a, dtype=np.int64).reshape((len(a), inner))
        bm = np.array(b, dtype=np.int64).reshape((inner, ncols))
        # chunked object-free product; p < 2**31 keeps blockwise sums exact
        out = np.zeros((am.shape[0], ncols), dtype=np.int64)
        step = max(1, 2**62 // max(1, (self.p - 1) ** 2) - 1)
        for start in range(0, inner, step):
            blk = am[:, start:start + step] @ bm[start:start + step, :]
            out = (out + blk) % self.p
        return out

    def is_zero_matrix(self, mat) -> bool:
        if self.p is None:
            return all(all(x == 0 for x in row) for row in mat)
        return not np.any(mat)

    def stack(self, mats, ncols: int):
        if self.p is None:
            out = []
            for m in mats:
                out.extend(m)
            return out
        parts = [np.asarray(m, dtype=np.int64).reshape((-1, ncols)) for m in mats]
        if not parts:
            return np.zeros((0, ncols), dtype=np.int64)
        return np.vstack(parts)
