"""Binary64 replica of the reference base-case program.

This reproduces the decimal printouts of the original C implementation,
including its fixed array length and its "Out of Memory" exit.  Nothing
here is certifying: comparisons are plain float comparisons.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .bounds import BoundParams, bound_larman_float, bound_ours_float
from .certificate import FAILURE_BANNER, SUCCESS_BANNER
from .errors import Exhausted
from .table import DiameterTable

ARRAY_LENGTH = 10**6


@dataclass
class ReplicaRun:
    params: BoundParams
    l: int
    d_ab: int
    success: bool
    lines: list[str]
    pair: tuple[int, int] | None = None
    ours: float | None = None
    tilde: float | None = None
    duration: float = 0.0
    mode: str = "float-replica"

    def transcript_lines(self) -> list[str]:
        return list(self.lines)


@dataclass
class ReplicaAuto:
    l: int
    run: ReplicaRun
    attempts: list[ReplicaRun] = field(default_factory=list)


class _Stop(Exception):
    pass


class _Rows:
    """Lazily grown float rows; values match the C program's full-length arrays."""

    def __init__(self, table: DiameterTable):
        self.table = table

    def get(self, d: int, n: int) -> float:
        i = n - d
        t = self.table
        if t.row_length(d) <= i:
            t.ensure(d, max(2 * t.row_length(d), i + 1, 1024))
        return t.rows[d][i]


def run_float_replica(p: BoundParams, l: int | None, d_ab: int, array_length: int = ARRAY_LENGTH,
                      l_start: int = 3, l_max: int = 256):
    """Run the replica for one l, or search l upward when ``l`` is None."""
    if l is None:
        table = DiameterTable(numeric=float)
        attempts = []
        for cand in range(l_start, l_max + 1):
            run = _run_once(p, cand, d_ab, array_length, table)
            if run.success:
                return ReplicaAuto(cand, run, attempts)
            attempts.append(run)
        raise Exhausted(f"no l in [{l_start}, {l_max}] succeeds for {p} (float replica)", attempts)
    return _run_once(p, l, d_ab, array_length, DiameterTable(numeric=float))


def _run_once(p: BoundParams, l: int, d_ab: int, N: int, table: DiameterTable) -> ReplicaRun:
    if l < 3:
        raise ValueError("l must be >= 3")
    started = time.perf_counter()
    rows = _Rows(table)
    lines: list[str] = []
    d_max = p.step2_width
    state = {}

    def check(d: int, n: int) -> None:
        ours = bound_ours_float(p, d, n)
        u = rows.get(d, n)
        if ours < u:
            lines.append(f"Error: {ours:.1f} [Ours] < {u:.1f} [tilde] ({d},{n})")
            state.update(pair=(d, n), ours=ours, tilde=u)
            raise _Stop
        if n == N - 1:
            lines.append("Error: Out of Memory")
            state.update(pair=(d, n))
            raise _Stop

    try:
        d = l
        n = l
        while n < N and bound_larman_float(d, n) > bound_ours_float(p, d, n):
            check(d, n)
            n += 1
        lines.append(f"- n_L({d}) = {n}")
        lines.append("(B0) OK")
        d += 1
        while d < d_ab:
            n = 2 * d
            while bound_larman_float(d, n) > bound_ours_float(p, d, n):
                check(d, n)
                n += 1
            lines.append(f"- n_L({d}) = {n}")
            d += 1
        lines.append("(B1) OK")
        while d < d_max:
            n = 2 * d
            count = 0
            while n < d + d_max:
                check(d, n)
                n += 1
                count += 1
            lines.append(f"- # pairs ({d},n) checked = {count}")
            d += 1
        lines.append("(B2) OK")
    except _Stop:
        lines += ["", FAILURE_BANNER]
        return ReplicaRun(p, l, d_ab, False, lines, state.get("pair"), state.get("ours"),
                          state.get("tilde"), time.perf_counter() - started)
    lines += ["", SUCCESS_BANNER]
    return ReplicaRun(p, l, d_ab, True, lines, duration=time.perf_counter() - started)
