"""Exact Kalai-Kleitman recursion table.

    tilde(3, n) = n - 3
    tilde(d, n) = tilde(d-1, n-1)                              d <= n < 2d
    tilde(d, n) = tilde(d-1, n-1) + 2 tilde(d, n // 2) + 2    n >= 2d

Entries are addressed by (d, i) with i = n - d.  In that index the recursion
reads ``row_d[i] = row_{d-1}[i] + 2 row_d[(i - d) // 2] + 2`` for i >= d and
``row_d[i] = row_{d-1}[i]`` otherwise, so a row depends only on the previous
row and on strictly smaller indices of itself.

Two engines are provided.  :class:`DiameterTable` keeps every row from d = 3
as a growable Python list (arbitrary precision for free).  :class:`RollingTable`
keeps two fixed-length rows as numpy arrays of 32-bit limbs; it is exact as
well, and grows its limb count when a carry reaches the top.
"""

from __future__ import annotations

import csv
import sys
from contextlib import contextmanager
from functools import lru_cache
from typing import Iterable, Iterator, TextIO

import numpy as np

from .errors import BudgetExceeded, OutOfRange

# rough CPython cost of one list slot holding a small-to-medium int
BYTES_PER_ENTRY = 40

_LIMB_BITS = 32
_LIMB_MASK = np.uint64((1 << _LIMB_BITS) - 1)


def _check_pair(d: int, n: int) -> None:
    if d < 3 or n < d:
        raise ValueError(f"need n >= d >= 3, got (d, n) = ({d}, {n})")


class DiameterTable:
    """Full-memo table: rows for every dimension 3..max_dim, grown on demand.

    ``numeric=float`` builds the binary64 replica of the reference C program
    instead of exact integers; such a table is not certifying.
    """

    mode = "full-memo"

    def __init__(self, memory_budget: int | None = None, numeric: type = int):
        if numeric not in (int, float):
            raise TypeError("numeric must be int or float")
        self.numeric = numeric
        self.memory_budget = memory_budget
        self.rows: dict[int, list] = {3: []}

    @property
    def current_dim(self) -> int:
        return max(self.rows)

    def row_length(self, d: int) -> int:
        return len(self.rows.get(d, ()))

    def estimated_bytes(self, d: int | None = None, length: int = 0) -> int:
        """Memory the table would use if row d (and all below) had ``length`` entries."""
        total = 0
        top = max(self.current_dim, d or 3)
        for k in range(3, top + 1):
            cur = len(self.rows.get(k, ()))
            if d is not None and k <= d:
                cur = max(cur, length)
            total += cur
        return total * BYTES_PER_ENTRY

    def ensure(self, d: int, length: int) -> list:
        """Make row d hold at least ``length`` entries and return it."""
        if d < 3:
            raise ValueError(f"d must be >= 3, got {d}")
        if self.row_length(d) >= length:
            return self.rows[d]
        if self.memory_budget is not None:
            need = self.estimated_bytes(d, length)
            if need > self.memory_budget:
                raise BudgetExceeded(
                    f"row {d} of length {length} needs ~{need} bytes, budget is {self.memory_budget}",
                    d=d, n=d + length - 1, needed_bytes=need, budget=self.memory_budget,
                )
        num = self.numeric
        base = self.rows[3]
        base.extend(num(i) for i in range(len(base), length))
        for k in range(4, d + 1):
            prev = self.rows[k - 1]
            row = self.rows.setdefault(k, [])
            start = len(row)
            if start >= length:
                continue
            # prev has >= length entries: rows are extended bottom-up
            for i in range(start, length):
                if i < k:
                    row.append(prev[i])
                else:
                    row.append(prev[i] + 2 * row[(i - k) >> 1] + 2)
        return self.rows[d]

    def tilde_delta(self, d: int, n: int):
        _check_pair(d, n)
        return self.ensure(d, n - d + 1)[n - d]

    def row(self, d: int, length: int) -> list:
        return self.ensure(d, length)[:length]


class RollingTable:
    """Two-row table of fixed capacity, advanced one dimension at a time.

    Rows are stored limb-major as ``uint64`` arrays of shape (limbs, capacity),
    each limb holding 32 bits, so sums of three limbs never wrap.
    """

    mode = "rolling"

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ValueError("capacity must be positive")
        self.row_capacity = capacity
        self.current_dim = 3
        base = np.arange(capacity, dtype=np.uint64)
        nlimbs = max(1, (max(capacity - 1, 1).bit_length() + _LIMB_BITS - 1) // _LIMB_BITS)
        self._cur = _split_limbs(base, nlimbs)
        self._prev: np.ndarray | None = None

    @property
    def limbs(self) -> int:
        return self._cur.shape[0]

    @property
    def nbytes(self) -> int:
        prev = self._prev.nbytes if self._prev is not None else 0
        return self._cur.nbytes + prev

    def advance(self) -> "RollingTable":
        """Compute row current_dim + 1 from row current_dim and drop the older row."""
        d = self.current_dim + 1
        T = self._cur
        C = self.row_capacity
        U = np.empty_like(T)
        head = min(d, C)
        U[:, :head] = T[:, :head]
        a = d
        while a < C:
            # every source index (i - d) // 2 for i < 2a + d lies below a
            b = min(C, 2 * a + d)
            src = (np.arange(a, b) - d) >> 1
            G = np.take(U, src, axis=1)
            G <<= np.uint64(1)
            G += T[:, a:b]
            G[0] += np.uint64(2)
            for k in range(G.shape[0] - 1):
                G[k + 1] += G[k] >> np.uint64(_LIMB_BITS)
                G[k] &= _LIMB_MASK
            top = G[-1] >> np.uint64(_LIMB_BITS)
            if top.any():
                G[-1] &= _LIMB_MASK
                G = np.vstack([G, top[None, :]])
                U = np.vstack([U, np.zeros((1, C), dtype=np.uint64)])
                T = np.vstack([T, np.zeros((1, C), dtype=np.uint64)])
            U[:, a:b] = G
            a = b
        self._prev = T
        self._cur = U
        self.current_dim = d
        return self

    def advance_to(self, d: int) -> "RollingTable":
        if d < self.current_dim:
            raise OutOfRange(f"rolling table is at d={self.current_dim}, cannot go back to {d}")
        while self.current_dim < d:
            self.advance()
        return self

    def _row_array(self, d: int) -> np.ndarray:
        if d == self.current_dim:
            return self._cur
        if d == self.current_dim - 1 and self._prev is not None:
            return self._prev
        raise OutOfRange(
            f"rolling table holds d in {{{self.current_dim - 1}, {self.current_dim}}}, asked for d={d}"
        )

    def tilde_delta(self, d: int, n: int) -> int:
        _check_pair(d, n)
        arr = self._row_array(d)
        i = n - d
        if i >= self.row_capacity:
            raise OutOfRange(f"index n-d={i} beyond row capacity {self.row_capacity}")
        return _join_limbs(arr[:, i])

    def row(self, d: int | None = None) -> list[int]:
        arr = self._row_array(self.current_dim if d is None else d)
        return [_join_limbs(arr[:, i]) for i in range(arr.shape[1])]

    def first_exceeding(self, start: int, stop: int, threshold: int, d: int | None = None) -> int | None:
        """Smallest index i in [start, stop) of the row with entry > threshold, else None."""
        arr = self._row_array(self.current_dim if d is None else d)
        stop = min(stop, self.row_capacity)
        if start >= stop:
            return None
        L = arr.shape[0]
        if threshold < 0:
            return start
        if threshold >> (L * _LIMB_BITS):
            return None
        tl = [np.uint64((threshold >> (_LIMB_BITS * k)) & 0xFFFFFFFF) for k in range(L)]
        lo, width = start, 256
        while lo < stop:
            hi = min(stop, lo + width)
            gt = np.zeros(hi - lo, dtype=bool)
            eq = np.ones(hi - lo, dtype=bool)
            for k in range(L - 1, -1, -1):
                seg = arr[k, lo:hi]
                gt |= eq & (seg > tl[k])
                eq &= seg == tl[k]
            if gt.any():
                return lo + int(np.argmax(gt))
            lo, width = hi, width * 2
        return None


def _split_limbs(values: np.ndarray, nlimbs: int) -> np.ndarray:
    out = np.zeros((nlimbs, values.shape[0]), dtype=np.uint64)
    v = values.astype(np.uint64)
    for k in range(nlimbs):
        out[k] = v & _LIMB_MASK
        v = v >> np.uint64(_LIMB_BITS)
    return out


def _join_limbs(column: np.ndarray) -> int:
    total = 0
    for k in range(column.shape[0] - 1, -1, -1):
        total = (total << _LIMB_BITS) | int(column[k])
    return total


def tilde_delta(t: DiameterTable | RollingTable, d: int, n: int):
    return t.tilde_delta(d, n)


def advance_dimension(t: RollingTable) -> RollingTable:
    return t.advance()


@contextmanager
def _recursion_limit(limit: int):
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, limit))
    try:
        yield
    finally:
        sys.setrecursionlimit(old)


@lru_cache(maxsize=None)
def _oracle(d: int, n: int) -> int:
    if d == 3:
        return n - 3
    if n < 2 * d:
        return _oracle(d - 1, n - 1)
    return _oracle(d - 1, n - 1) + 2 * _oracle(d, n // 2) + 2


def oracle_tilde(d: int, n: int) -> int:
    """Naive top-down memoized recursion; an independent check on the table engines."""
    _check_pair(d, n)
    with _recursion_limit(10_000 + 4 * d * max(1, n.bit_length())):
        return _oracle(d, n)


def iter_rows(t: DiameterTable, dims: Iterable[int], n_max: int) -> Iterator[tuple[int, int, object]]:
    for d in dims:
        if n_max < d:
            continue
        row = t.ensure(d, n_max - d + 1)
        for i in range(n_max - d + 1):
            yield d, d + i, row[i]


def dump_csv(t: DiameterTable, dims: Iterable[int], n_max: int, out: TextIO) -> None:
    """Write ``d,n,tilde_delta`` rows in decimal."""
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["d", "n", "tilde_delta"])
    for d, n, v in iter_rows(t, dims, n_max):
        w.writerow([d, n, int(v) if t.numeric is int else repr(v)])
