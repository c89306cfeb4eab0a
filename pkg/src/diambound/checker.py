"""Base-case verification for a candidate bound f_{alpha,beta}.

Steps, for a starting dimension l and the inductive threshold d_ab:

  B0   d = l,                         l  <= n < n_L(l)
  B1   l < d < d_ab,                  2d <= n < n_L(d)
  B2   max(l+1, d_ab) <= d < 2^(2a+1), 2d <= n < d + 2^(2a+1)

and at each listed pair tilde(d, n) <= f(d, n) must hold.  Pairs with
n >= n_L(d) are covered by the Larman bound, pairs with n < 2d by the
reduction tilde(d, n) = tilde(d-1, n-1), everything else by induction.

Scans run over maximal blocks: an exact integer F <= f(d, n_lo) is taken
from a certified enclosure and every entry of the block is compared with F
exactly.  Since f is increasing in n this covers the block, and the
certificate records one comparison per block instead of one per pair.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .bounds import BoundParams, check_superlinearity, exact_power_value, exponent_base
from .certificate import Certificate, FailureReport, TOOL_VERSION
from .threshold import DabResult, certify_dab, certify_dab_override
from .compare import (
    DEFAULT_MAX_PRECISION,
    START_PRECISION,
    ComparisonStats,
    ProvenGreater,
    ProvenLess,
    compare_int_vs_power,
    convexity_margin_ok,
    power_enclosure,
)
from .errors import BudgetExceeded, Exhausted
from .records import CheckRecord, NLRecord, StepLog, Witness
from .table import DiameterTable, RollingTable

DEFAULT_MEMORY_BUDGET = 1 << 30
# how far a non-superlinear l is scanned for a concrete counterexample
DIAGNOSTIC_SCAN = 4096


@dataclass
class CheckerConfig:
    params: BoundParams
    l: int | str = "auto"
    d_ab: int | str = "auto"
    mode: str = "rigorous"
    max_precision_bits: int = DEFAULT_MAX_PRECISION
    memory_budget: int = DEFAULT_MEMORY_BUDGET
    b2_max_dim: int | None = None
    l_start: int = 3
    l_max: int = 256

    def __post_init__(self):
        if self.l != "auto" and (not isinstance(self.l, int) or self.l < 3):
            raise ValueError(f"l must be an integer >= 3 or 'auto', got {self.l!r}")
        if self.d_ab != "auto" and (not isinstance(self.d_ab, int) or self.d_ab < 1):
            raise ValueError(f"d_ab must be a positive integer or 'auto', got {self.d_ab!r}")
        if self.mode not in ("rigorous", "float-replica"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.l_start < 3 or self.l_max < self.l_start:
            raise ValueError("need 3 <= l_start <= l_max")


def resolve_dab(p: BoundParams, d_ab: int | str) -> tuple[DabResult, str]:
    if d_ab == "auto":
        return certify_dab(p), "sturm-certified"
    return certify_dab_override(p, int(d_ab)), "user-override"


def _floor_bound(m: int, q: Fraction) -> int:
    """An integer certainly <= m^log2(q)."""
    exact = exact_power_value(m, q)
    if exact is not None:
        return exact.numerator // exact.denominator
    return power_enclosure(m, q, START_PRECISION).floor_lower()


def find_n_L(p: BoundParams, d: int, n_start: int, max_precision: int = DEFAULT_MAX_PRECISION,
             stats: ComparisonStats | None = None, step: str = "B0") -> tuple[NLRecord, list[Witness]]:
    """First n >= n_start with 2^(d-3) n <= f(d, n), with supporting comparisons.

    g(n) = f(d, n) - 2^(d-3) n is convex once the exponent exceeds 1, so
    after g(n_start) < 0 the set {g >= 0} is a half-line and can be located
    by exponential probing and bisection.  Convexity also gives g < 0 on
    [n_start, n_L - 1] from its endpoints, and g >= 0 beyond n_L from the
    recorded increment g(n_L + 1) - g(n_L) >= 0.
    """
    if not check_superlinearity(p, d):
        raise ValueError(f"f{p} is not superlinear at d={d}")
    if n_start < d:
        raise ValueError("n_start must be >= d")
    q = exponent_base(p, d)
    slope = 1 << (d - 3)
    cache: dict[int, bool] = {}

    def at_or_below(n: int) -> bool:
        if n not in cache:
            out = compare_int_vs_power(n * slope, n - d, q, max_precision, stats)
            cache[n] = out is not ProvenGreater
        return cache[n]

    witnesses = []
    if at_or_below(n_start):
        n_L = n_start
    else:
        witnesses.append(Witness("larman-gt", step, d, n_start, n_start, n_start * slope, q))
        lo, offset = n_start, 1
        while not at_or_below(n_start + offset):
            lo = n_start + offset
            offset *= 2
        hi = n_start + offset
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if at_or_below(mid):
                hi = mid
            else:
                lo = mid
        n_L = hi
        if n_L - 1 > n_start:
            witnesses.append(Witness("larman-gt", step, d, n_L - 1, n_L - 1, (n_L - 1) * slope, q))
    witnesses.append(Witness("larman-le", step, d, n_L, n_L, n_L * slope, q))
    ok = convexity_margin_ok(n_L - d, q, slope, max_precision, stats)
    if ok:
        witnesses.append(Witness("margin", step, d, n_L, n_L, slope, q))
    return NLRecord(d=d, n_L=n_L, n_start=n_start, crossing_margin_ok=ok), witnesses


class BaseCaseChecker:
    """Runs the base-case steps for one (alpha, beta); reusable across values of l."""

    def __init__(self, params: BoundParams, d_ab: int | str = "auto",
                 max_precision: int = DEFAULT_MAX_PRECISION,
                 memory_budget: int = DEFAULT_MEMORY_BUDGET,
                 b2_max_dim: int | None = None,
                 table: DiameterTable | None = None):
        self.params = params
        self.dab, self.dab_provenance = resolve_dab(params, d_ab)
        self.max_precision = max_precision
        self.memory_budget = memory_budget
        self.b2_max_dim = b2_max_dim
        # tilde does not depend on (alpha, beta); one table serves every l
        self.table = table if table is not None else DiameterTable(memory_budget=memory_budget)
        self.stats = ComparisonStats()

    @property
    def d_ab(self) -> int:
        return self.dab.d_ab

    # -- scanning -------------------------------------------------------------
    def _scan_full(self, step: str, d: int, n_lo: int, n_end: int, log: StepLog) -> int | None:
        """Check tilde(d, n) <= f(d, n) for n_lo <= n < n_end; return the first failing n."""
        q = exponent_base(self.params, d)
        table = self.table
        limit = min(n_lo, n_end)
        row = table.rows.get(d, [])

        def grow(upto: int) -> None:
            nonlocal limit, row
            new = min(n_end, max(upto, d + 2 * (limit - d) + 64))
            row = table.ensure(d, new - d)
            limit = new

        pos = n_lo
        while pos < n_end:
            if pos >= limit:
                grow(pos + 1)
            V, m = row[pos - d], pos - d
            F = _floor_bound(m, q)
            if V > F:
                if compare_int_vs_power(V, m, q, self.max_precision, self.stats) is ProvenGreater:
                    return pos
                log.witnesses.append(Witness("tilde", step, d, pos, pos, V, q))
                pos += 1
                continue
            e = pos + 1
            while True:
                while e < limit and row[e - d] <= F:
                    e += 1
                if e < limit or limit >= n_end:
                    break
                grow(e + 1)
            log.witnesses.append(Witness("tilde", step, d, pos, e - 1, F, q))
            pos = e
        return None

    def _scan_rolling(self, rolling: RollingTable, d: int, log: StepLog) -> int | None:
        C = rolling.row_capacity
        q = exponent_base(self.params, d)
        pos = d  # i = n - d, scanning n in [2d, d + C)
        while pos < C:
            V = rolling.tilde_delta(d, d + pos)
            F = _floor_bound(pos, q)
            if V > F:
                if compare_int_vs_power(V, pos, q, self.max_precision, self.stats) is ProvenGreater:
                    return d + pos
                log.witnesses.append(Witness("tilde", "B2", d, d + pos, d + pos, V, q))
                pos += 1
                continue
            e = rolling.first_exceeding(pos + 1, C, F)
            e = C if e is None else e
            log.witnesses.append(Witness("tilde", "B2", d, d + pos, d + e - 1, F, q))
            pos = e
        return None

    def _failure(self, l: int, step: str, d: int, n: int | None, log: StepLog, reason: str,
                 started: float, detail: str = "") -> FailureReport:
        tilde = f_lo = f_hi = None
        if n is not None:
            tilde = int(self.table.tilde_delta(d, n)) if step != "B2" else int(self._b2_value)
            enc = power_enclosure(n - d, exponent_base(self.params, d), START_PRECISION)
            f_lo, f_hi = enc.outward_decimal(2)
        return FailureReport(
            params=self.params, l=l, d_ab=self.d_ab, step=step, d=d, n=n, tilde=tilde,
            f_lower=f_lo, f_upper=f_hi, reason=reason, detail=detail,
            nl_records=list(log.nl_records), check_records=list(log.check_records),
            duration=time.perf_counter() - started,
        )

    def _n_l(self, step: str, d: int, n_start: int, log: StepLog) -> NLRecord:
        rec, wit = find_n_L(self.params, d, n_start, self.max_precision, self.stats, step)
        log.nl_records.append(rec)
        log.witnesses.extend(wit)
        return rec

    # -- the procedure ---------------------------------------------------------
    def run(self, l: int) -> Certificate | FailureReport:
        """One pass of the base-case procedure for a fixed l."""
        if l < 3:
            raise ValueError(f"l must be >= 3, got {l}")
        started = time.perf_counter()
        p = self.params
        log = StepLog()
        width = p.step2_width

        if not check_superlinearity(p, l):
            # no Larman crossover exists; look for a concrete counterexample anyway
            n_end = l + DIAGNOSTIC_SCAN
            bad = self._scan_full("B0", l, l, n_end, log)
            log.check_records.append(CheckRecord("B0", l, l, n_end - 1, (bad or n_end) - l,
                                                 "failed" if bad else "passed", bad))
            return self._failure(l, "B0", l, bad, log, "not-superlinear", started,
                                 detail=f"beta + l/alpha = {exponent_base(p, l)} <= 2")

        # B0
        rec = self._n_l("B0", l, l, log)
        if not rec.crossing_margin_ok:
            return self._failure(l, "B0", l, None, log, "margin", started,
                                 detail=f"Larman crossover at n_L({l}) = {rec.n_L} is not certified monotone")
        bad = self._scan_full("B0", l, l, rec.n_L, log)
        if bad is not None:
            log.check_records.append(CheckRecord("B0", l, l, rec.n_L - 1, bad - l, "failed", bad))
            return self._failure(l, "B0", l, bad, log, "counterexample", started)
        log.check_records.append(CheckRecord("B0", l, l, rec.n_L - 1, rec.n_L - l))

        # B1
        for d in range(l + 1, self.d_ab):
            rec = self._n_l("B1", d, 2 * d, log)
            if not rec.crossing_margin_ok:
                return self._failure(l, "B1", d, None, log, "margin", started,
                                     detail=f"Larman crossover at n_L({d}) = {rec.n_L} is not certified monotone")
            bad = self._scan_full("B1", d, 2 * d, rec.n_L, log)
            if bad is not None:
                log.check_records.append(CheckRecord("B1", d, 2 * d, rec.n_L - 1, bad - 2 * d, "failed", bad))
                return self._failure(l, "B1", d, bad, log, "counterexample", started)
            log.check_records.append(CheckRecord("B1", d, 2 * d, rec.n_L - 1, rec.n_L - 2 * d))

        # B2
        d_first = max(l + 1, self.d_ab)
        d_last = width - 1
        if self.b2_max_dim is not None:
            d_last = min(d_last, self.b2_max_dim)
        if d_first <= d_last:
            rolling = RollingTable(width)
            for d in range(d_first, d_last + 1):
                rolling.advance_to(d)
                if rolling.nbytes > self.memory_budget:
                    raise BudgetExceeded(
                        f"rolling rows at d={d} need {rolling.nbytes} bytes, budget is {self.memory_budget}",
                        d=d, needed_bytes=rolling.nbytes, budget=self.memory_budget)
                bad = self._scan_rolling(rolling, d, log)
                if bad is not None:
                    self._b2_value = rolling.tilde_delta(d, bad)
                    log.check_records.append(CheckRecord("B2", d, 2 * d, d + width - 1, bad - 2 * d, "failed", bad))
                    return self._failure(l, "B2", d, bad, log, "counterexample", started)
                log.check_records.append(CheckRecord("B2", d, 2 * d, d + width - 1, width - d))

        complete = self.b2_max_dim is None or self.b2_max_dim >= width - 1
        return Certificate(
            params=p, l=l, d_ab=self.d_ab, d_ab_provenance=self.dab_provenance,
            sturm=self.dab.certificate, superlinear=True,
            nl_records=log.nl_records, check_records=log.check_records, witnesses=log.witnesses,
            mode="rigorous", max_precision_used=self.stats.max_precision,
            b2_max_dim=None if complete else self.b2_max_dim, complete=complete,
            tool_version=TOOL_VERSION, duration=time.perf_counter() - started,
        )


@dataclass
class AutoResult:
    l: int
    certificate: Certificate
    attempts: list[FailureReport] = field(default_factory=list)


def auto_l(p: BoundParams, l_start: int = 3, l_max: int = 256, **kwargs) -> AutoResult:
    """Smallest l in [l_start, l_max] for which the procedure succeeds."""
    if not 3 <= l_start <= l_max:
        raise ValueError("need 3 <= l_start <= l_max")
    checker = kwargs.pop("checker", None) or BaseCaseChecker(p, **kwargs)
    attempts = []
    for l in range(l_start, l_max + 1):
        result = checker.run(l)
        if isinstance(result, Certificate):
            return AutoResult(l, result, attempts)
        attempts.append(result)
    raise Exhausted(f"no l in [{l_start}, {l_max}] succeeds for {p}", attempts)


def run_checker(cfg: CheckerConfig):
    """Dispatch a configuration; returns a Certificate, FailureReport or AutoResult."""
    if cfg.mode == "float-replica":
        from .replica import run_float_replica

        d_ab = resolve_dab(cfg.params, cfg.d_ab)[0].d_ab
        if cfg.l == "auto":
            return run_float_replica(cfg.params, None, d_ab, l_start=cfg.l_start, l_max=cfg.l_max)
        return run_float_replica(cfg.params, cfg.l, d_ab)
    checker = BaseCaseChecker(cfg.params, cfg.d_ab, cfg.max_precision_bits, cfg.memory_budget, cfg.b2_max_dim)
    if cfg.l == "auto":
        return auto_l(cfg.params, cfg.l_start, cfg.l_max, checker=checker)
    return checker.run(cfg.l)
