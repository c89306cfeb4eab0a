"""Certified comparisons involving m^log2(q).

All transcendental evaluation happens in :class:`AdaptiveInterval`, a pair
of MPFR numbers rounded outward.  Equality is only ever reported from the
exact algebraic shortcuts in :func:`diambound.bounds.exact_power_value`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import gmpy2
from gmpy2 import mpfr

from .bounds import BoundParams, exact_power_value, exponent_base
from .errors import Undecidable

START_PRECISION = 128
DEFAULT_MAX_PRECISION = 8192


class ComparisonOutcome(enum.Enum):
    LESS = "ProvenLess"
    EQUAL = "ProvenEqual"
    GREATER = "ProvenGreater"

    def __str__(self):
        return self.value


ProvenLess = ComparisonOutcome.LESS
ProvenEqual = ComparisonOutcome.EQUAL
ProvenGreater = ComparisonOutcome.GREATER


@lru_cache(maxsize=64)
def _ctx(precision: int, direction: str):
    rnd = gmpy2.RoundDown if direction == "down" else gmpy2.RoundUp
    return gmpy2.context(precision=precision, round=rnd)


@dataclass
class ComparisonStats:
    """Counts decisions and remembers the highest precision any of them needed."""

    comparisons: int = 0
    max_precision: int = 0

    def note(self, precision: int) -> None:
        self.comparisons += 1
        if precision > self.max_precision:
            self.max_precision = precision


def precision_ladder(max_precision: int = DEFAULT_MAX_PRECISION, start: int = START_PRECISION):
    p = start
    while True:
        yield min(p, max_precision)
        if p >= max_precision:
            return
        p *= 2


@dataclass(frozen=True)
class AdaptiveInterval:
    """Closed interval [lower, upper] of MPFR numbers at ``precision`` bits."""

    lower: object
    upper: object
    precision: int

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("empty interval")

    # constructors -----------------------------------------------------------
    @classmethod
    def exact(cls, x, precision: int) -> "AdaptiveInterval":
        if isinstance(x, Fraction):
            lo, hi = _fraction_bounds(x, precision)
            return cls(lo, hi, precision)
        with _ctx(precision, "down"):
            lo = mpfr(x)
        with _ctx(precision, "up"):
            hi = mpfr(x)
        return cls(lo, hi, precision)

    @classmethod
    def ln2(cls, precision: int) -> "AdaptiveInterval":
        with _ctx(precision, "down"):
            lo = gmpy2.const_log2()
        with _ctx(precision, "up"):
            hi = gmpy2.const_log2()
        return cls(lo, hi, precision)

    @classmethod
    def log_of(cls, x, precision: int) -> "AdaptiveInterval":
        """Enclosure of ln(x) for an integer or Fraction x > 0."""
        if isinstance(x, Fraction) and x.denominator != 1:
            return cls.log_of(x.numerator, precision) - cls.log_of(x.denominator, precision)
        x = int(x)
        if x <= 0:
            raise ValueError("log of a nonpositive number")
        with _ctx(precision, "down"):
            lo = gmpy2.log(mpfr(x))
        with _ctx(precision, "up"):
            hi = gmpy2.log(mpfr(x))
        return cls(lo, hi, precision)

    # arithmetic -------------------------------------------------------------
    def __add__(self, other: "AdaptiveInterval") -> "AdaptiveInterval":
        p = min(self.precision, other.precision)
        with _ctx(p, "down"):
            lo = self.lower + other.lower
        with _ctx(p, "up"):
            hi = self.upper + other.upper
        return AdaptiveInterval(lo, hi, p)

    def __neg__(self) -> "AdaptiveInterval":
        # outside a context gmpy2 would round the result to 53 bits
        with _ctx(self.precision, "down"):
            lo = -self.upper
        with _ctx(self.precision, "up"):
            hi = -self.lower
        return AdaptiveInterval(lo, hi, self.precision)

    def __sub__(self, other: "AdaptiveInterval") -> "AdaptiveInterval":
        return self + (-other)

    def __mul__(self, other: "AdaptiveInterval") -> "AdaptiveInterval":
        p = min(self.precision, other.precision)
        pairs = [(self.lower, other.lower), (self.lower, other.upper),
                 (self.upper, other.lower), (self.upper, other.upper)]
        with _ctx(p, "down"):
            lo = min(a * b for a, b in pairs)
        with _ctx(p, "up"):
            hi = max(a * b for a, b in pairs)
        return AdaptiveInterval(lo, hi, p)

    def scale(self, k: int) -> "AdaptiveInterval":
        return self * AdaptiveInterval.exact(k, self.precision)

    def __truediv__(self, other: "AdaptiveInterval") -> "AdaptiveInterval":
        if other.lower <= 0 <= other.upper:
            raise ZeroDivisionError("divisor interval contains zero")
        p = min(self.precision, other.precision)
        pairs = [(self.lower, other.lower), (self.lower, other.upper),
                 (self.upper, other.lower), (self.upper, other.upper)]
        with _ctx(p, "down"):
            lo = min(a / b for a, b in pairs)
        with _ctx(p, "up"):
            hi = max(a / b for a, b in pairs)
        return AdaptiveInterval(lo, hi, p)

    def exp(self) -> "AdaptiveInterval":
        with _ctx(self.precision, "down"):
            lo = gmpy2.exp(self.lower)
        with _ctx(self.precision, "up"):
            hi = gmpy2.exp(self.upper)
        return AdaptiveInterval(lo, hi, self.precision)

    # queries ----------------------------------------------------------------
    def width(self):
        with _ctx(self.precision, "up"):
            return self.upper - self.lower

    def contains(self, x) -> bool:
        return self.lower <= x <= self.upper

    def floor_lower(self) -> int:
        """Largest integer certainly not above the enclosed value."""
        with _ctx(self.precision, "down"):
            return int(gmpy2.floor(self.lower))

    def ceil_upper(self) -> int:
        with _ctx(self.precision, "up"):
            return int(gmpy2.ceil(self.upper))

    def outward_decimal(self, places: int = 2) -> tuple[str, str]:
        """Endpoints printed with ``places`` decimals, rounded outward."""
        scale = 10**places
        with _ctx(self.precision, "down"):
            lo = int(gmpy2.floor(self.lower * scale))
        with _ctx(self.precision, "up"):
            hi = int(gmpy2.ceil(self.upper * scale))
        return _fixed(lo, places), _fixed(hi, places)

    def midpoint_decimal(self, places: int = 6) -> str:
        with _ctx(self.precision + 8, "down"):
            mid = (self.lower + self.upper) / 2
            scaled = int(gmpy2.rint(mid * 10**places))
        return _fixed(scaled, places)


def _fraction_bounds(x: Fraction, precision: int):
    num, den = x.numerator, x.denominator
    with _ctx(precision, "down"):
        lo = mpfr(gmpy2.mpq(num, den))
    with _ctx(precision, "up"):
        hi = mpfr(gmpy2.mpq(num, den))
    return lo, hi


def _fixed(scaled: int, places: int) -> str:
    sign = "-" if scaled < 0 else ""
    s = str(abs(scaled)).rjust(places + 1, "0")
    if places == 0:
        return sign + s
    return f"{sign}{s[:-places]}.{s[-places:]}"


# -- enclosures of f -----------------------------------------------------------

@lru_cache(maxsize=32)
def _ln2(precision: int) -> AdaptiveInterval:
    return AdaptiveInterval.ln2(precision)


@lru_cache(maxsize=1 << 14)
def _log_cached(x, precision: int) -> AdaptiveInterval:
    return AdaptiveInterval.log_of(x, precision)


def log2_enclosure(m: int, q: Fraction, precision: int) -> AdaptiveInterval:
    """ln(m) * ln(q) / ln 2, the natural log of m^log2(q), for m >= 1."""
    return _log_cached(m, precision) * _log_cached(q, precision) / _ln2(precision)


def power_enclosure(m: int, q: Fraction, precision: int = START_PRECISION) -> AdaptiveInterval:
    """Enclosure of m^log2(q); exact (zero width) in the algebraic cases."""
    q = Fraction(q)
    if m < 0 or q <= 0:
        raise ValueError("need m >= 0 and q > 0")
    exact = exact_power_value(m, q)
    if exact is not None:
        return AdaptiveInterval.exact(exact, precision)
    return log2_enclosure(m, q, precision).exp()


def bound_enclosure(p: BoundParams, d: int, n: int, precision: int = START_PRECISION) -> AdaptiveInterval:
    return power_enclosure(n - d, exponent_base(p, d), precision)


def _exact_compare(a, b) -> ComparisonOutcome:
    if a < b:
        return ProvenLess
    if a > b:
        return ProvenGreater
    return ProvenEqual


def compare_int_vs_power(V: int, m: int, q, max_precision: int = DEFAULT_MAX_PRECISION,
                         stats: ComparisonStats | None = None) -> ComparisonOutcome:
    """Certified comparison of the integer V with m^log2(q).

    Returns ProvenLess when V < m^log2(q), and so on.  Raises Undecidable
    when intervals still overlap at ``max_precision`` and no exact shortcut
    applies.
    """
    q = Fraction(q)
    if V < 0 or m < 0 or q <= 0:
        raise ValueError("need V >= 0, m >= 0, q > 0")
    exact = exact_power_value(m, q)
    if exact is not None:
        if stats is not None:
            stats.note(0)
        return _exact_compare(V, exact)
    # from here on m >= 2 and the value is strictly positive
    if V == 0:
        return ProvenLess
    for prec in precision_ladder(max_precision):
        lhs = AdaptiveInterval.log_of(V, prec) * _ln2(prec)
        rhs = _log_cached(q, prec) * _log_cached(m, prec)
        if lhs.upper < rhs.lower or lhs.lower > rhs.upper:
            if stats is not None:
                stats.note(prec)
            return ProvenLess if lhs.upper < rhs.lower else ProvenGreater
    raise Undecidable(
        f"cannot decide {V} vs {m}^log2({q}) at {max_precision} bits",
        V=V, m=m, q=q, precision=max_precision,
    )


def compare_power_vs_power(m1: int, q1, m2: int, q2, max_precision: int = DEFAULT_MAX_PRECISION) -> ComparisonOutcome:
    """Certified comparison of m1^log2(q1) with m2^log2(q2) (strict outcomes only off the exact path)."""
    q1, q2 = Fraction(q1), Fraction(q2)
    e1, e2 = exact_power_value(m1, q1), exact_power_value(m2, q2)
    if e1 is not None and e2 is not None:
        return _exact_compare(e1, e2)
    for prec in precision_ladder(max_precision):
        a, b = power_enclosure(m1, q1, prec), power_enclosure(m2, q2, prec)
        if a.upper < b.lower:
            return ProvenLess
        if a.lower > b.upper:
            return ProvenGreater
    raise Undecidable(f"cannot decide {m1}^log2({q1}) vs {m2}^log2({q2})", precision=max_precision)


def convexity_margin_ok(m: int, q, step: int, max_precision: int = DEFAULT_MAX_PRECISION,
                        stats: ComparisonStats | None = None) -> bool:
    """Certify (m+1)^log2(q) - m^log2(q) >= step.

    Returns False only when the reverse strict inequality is certified;
    raises Undecidable on an unresolvable near-tie.
    """
    q = Fraction(q)
    e0, e1 = exact_power_value(m, q), exact_power_value(m + 1, q)
    if e0 is not None and e1 is not None:
        return e1 - e0 >= step
    for prec in precision_ladder(max_precision):
        diff = power_enclosure(m + 1, q, prec) - power_enclosure(m, q, prec)
        if diff.lower >= step or diff.upper < step:
            if stats is not None:
                stats.note(prec)
            return bool(diff.lower >= step)
    raise Undecidable(f"cannot decide the increment of {m}^log2({q}) against {step}",
                      m=m, q=q, precision=max_precision)


def check_inductive_inequality(p: BoundParams, d: int, n: int, max_precision: int = DEFAULT_MAX_PRECISION) -> bool:
    """Certify f(d-1, n-1) + 2 f(d, n//2) + 2 <= f(d, n).

    Defined on the region where the inductive step is used: d >= 2,
    n >= 2d and n >= d + 2^(2 alpha + 1).
    """
    if d < 2 or n < 2 * d or n < d + p.step2_width:
        raise ValueError(
            f"(d, n) = ({d}, {n}) outside d >= 2, n >= 2d, n >= d + {p.step2_width}"
        )
    m = n - d
    q_prev = exponent_base(p, d - 1)
    q = exponent_base(p, d)
    half = n // 2 - d
    for prec in precision_ladder(max_precision):
        two = AdaptiveInterval.exact(2, prec)
        lhs = power_enclosure(m, q_prev, prec) + two * power_enclosure(half, q, prec) + two
        rhs = power_enclosure(m, q, prec)
        if lhs.upper <= rhs.lower:
            return True
        if lhs.lower > rhs.upper:
            return False
    raise Undecidable(f"cannot decide the inductive inequality at (d, n) = ({d}, {n}) for {p}",
                      precision=max_precision)


def larman_vs_bound(p: BoundParams, d: int, n: int, max_precision: int = DEFAULT_MAX_PRECISION) -> ComparisonOutcome:
    """Compare the Larman value 2^(d-3) n with f(d, n)."""
    return compare_int_vs_power(n << (d - 3), n - d, exponent_base(p, d), max_precision)


def tilde_vs_bound(p: BoundParams, d: int, n: int, tilde: int, max_precision: int = DEFAULT_MAX_PRECISION) -> ComparisonOutcome:
    return compare_int_vs_power(tilde, n - d, exponent_base(p, d), max_precision)


def threshold_holds_at(p: BoundParams, d: int) -> bool:
    """Exact check of (1 - 1/(alpha D))^(2a+1) + 2/D + 2 D^-(2a+1) <= 1 at D = beta + d/alpha."""
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    D = exponent_base(p, d)
    k = 2 * p.alpha + 1
    lhs = (1 - Fraction(1, p.alpha) / D) ** k + 2 / D + 2 * (1 / D) ** k
    return lhs <= 1


def float_estimate(m: int, q) -> float:
    """Plain float estimate of m^log2(q); for messages only."""
    q = Fraction(q)
    if m == 0:
        return 0.0
    return math.exp(math.log(m) * math.log(q) / math.log(2))
