"""The bound family f_{alpha,beta}(d, n) = (n - d)^log2(beta + d/alpha).

Values of f are never materialized as floats on the certification path.
A :class:`BoundValue` is the symbolic pair (m, q) standing for m^log2(q);
every decision about it goes through :mod:`diambound.compare`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidParams


@dataclass(frozen=True, order=True)
class BoundParams:
    """A member (alpha, beta) of S = {(a, b) in Z^2 : a > 0, b >= 0}."""

    alpha: int
    beta: int

    def __post_init__(self):
        if isinstance(self.alpha, bool) or isinstance(self.beta, bool):
            raise InvalidParams("alpha and beta must be integers")
        if not isinstance(self.alpha, int) or not isinstance(self.beta, int):
            raise InvalidParams("alpha and beta must be integers")
        if self.alpha <= 0:
            raise InvalidParams(f"alpha must be positive, got {self.alpha}")
        if self.beta < 0:
            raise InvalidParams(f"beta must be nonnegative, got {self.beta}")

    @property
    def step2_width(self) -> int:
        """2^(2*alpha + 1): the n - d window where the inductive step is not yet valid."""
        return 1 << (2 * self.alpha + 1)

    def base(self, d: int) -> Fraction:
        return exponent_base(self, d)

    def value(self, d: int, n: int) -> "BoundValue":
        if n < d:
            raise ValueError(f"need n >= d, got (d, n) = ({d}, {n})")
        return BoundValue(n - d, exponent_base(self, d))

    def __str__(self):
        return f"({self.alpha},{self.beta})"


@dataclass(frozen=True)
class BoundValue:
    """The real number m^log2(q), held symbolically."""

    m: int
    q: Fraction

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("m must be nonnegative")
        if self.q <= 0:
            raise ValueError("q must be positive")

    def exact(self) -> Fraction | None:
        """The value as an exact rational when one of the algebraic shortcuts applies."""
        return exact_power_value(self.m, self.q)


@dataclass(frozen=True)
class LarmanValue:
    d: int
    n: int
    value: int


def make_params(alpha: int, beta: int) -> BoundParams:
    return BoundParams(alpha, beta)


def exponent_base(p: BoundParams, d: int) -> Fraction:
    """beta + d/alpha, in lowest terms."""
    if d < 0:
        raise ValueError(f"d must be nonnegative, got {d}")
    return Fraction(p.alpha * p.beta + d, p.alpha)


def check_superlinearity(p: BoundParams, l: int) -> bool:
    """True iff beta + l/alpha > 2, i.e. f(l, .) grows faster than linearly.

    The base is nondecreasing in d, so a True answer at l holds for all d >= l.
    """
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    return p.alpha * p.beta + l > 2 * p.alpha


def larman_value(d: int, n: int) -> LarmanValue:
    """Generalized Larman bound 2^(d-3) * n, exactly."""
    if d < 3 or n < d:
        raise ValueError(f"need n >= d >= 3, got (d, n) = ({d}, {n})")
    return LarmanValue(d, n, n << (d - 3))


def power_of_two_exponent(x: int) -> int | None:
    """s with x == 2**s, or None."""
    if x > 0 and x & (x - 1) == 0:
        return x.bit_length() - 1
    return None


def exact_power_value(m: int, q: Fraction) -> Fraction | None:
    """m^log2(q) as an exact rational, when it is one of the algebraic cases.

    Covered: m in {0, 1}; m = 2^s (value q^s); q = 2^t for integer t >= 0
    (value m^t).  Returns None otherwise.
    """
    if m == 0:
        return Fraction(0)
    if m == 1:
        return Fraction(1)
    s = power_of_two_exponent(m)
    if s is not None:
        return Fraction(q) ** s
    if q.denominator == 1:
        t = power_of_two_exponent(q.numerator)
        if t is not None:
            return Fraction(m**t)
    return None


# -- non-certifying binary64 replica of the published C routines -------------

def bound_ours_float(p: BoundParams, d: int, n: int) -> float:
    """f in binary64, evaluated exactly as ``pow(1.0*(n-d), log(1.0*d/A+B)/log(2))``.

    Not rigorous. Only used to reproduce the decimal printouts of the
    reference program.
    """
    return math.pow(1.0 * (n - d), math.log(1.0 * d / p.alpha + p.beta) / math.log(2))


def bound_larman_float(d: int, n: int) -> float:
    return n * math.pow(2.0, d - 3)
