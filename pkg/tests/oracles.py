"""Reference implementations used only by the tests.

None of these import the package under test.
"""

from fractions import Fraction
from functools import lru_cache
import sys

import mpmath
import sympy

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


@lru_cache(maxsize=None)
def naive_tilde(d: int, n: int) -> int:
    """Straight recursion on (d, n), memoized."""
    if d == 3:
        return n - 3
    if n < 2 * d:
        return naive_tilde(d - 1, n - 1)
    return naive_tilde(d - 1, n - 1) + 2 * naive_tilde(d, n // 2) + 2


def reference_power(m: int, q: Fraction, bits: int = 4096):
    """m^log2(q) at ``bits`` of working precision."""
    with mpmath.workprec(bits):
        if m == 0:
            return mpmath.mpf(0)
        qq = mpmath.mpf(q.numerator) / q.denominator
        return mpmath.exp(mpmath.log(m) * mpmath.log(qq) / mpmath.log(2))


def reference_sign(V: int, m: int, q: Fraction, bits: int = 4096):
    """Sign of V - m^log2(q); None when the reference itself cannot separate them."""
    with mpmath.workprec(bits):
        val = reference_power(m, q, bits)
        diff = mpmath.mpf(V) - val
        tol = mpmath.mpf(2) ** (-(bits - 64)) * max(abs(val), 1)
        if abs(diff) <= tol:
            return None
        return 1 if diff > 0 else -1


def exact_reference_power(m: int, q: Fraction):
    """Exact value by algebra, for the power-of-two cases only."""
    if m in (0, 1):
        return Fraction(m)
    if m & (m - 1) == 0:
        return Fraction(q) ** (m.bit_length() - 1)
    if q.denominator == 1 and q.numerator & (q.numerator - 1) == 0:
        return Fraction(m) ** (q.numerator.bit_length() - 1)
    return None


def sympy_poly(coeffs_low_to_high):
    x = sympy.Symbol("x")
    return sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * x**k
                          for k, c in enumerate(coeffs_low_to_high)), x), x


def sympy_roots_above(coeffs_low_to_high, x0: Fraction) -> int:
    """Distinct real roots in (x0, oo), counted by sympy."""
    poly, x = sympy_poly(coeffs_low_to_high)
    poly = sympy.Poly(sympy.sqf_part(poly.as_expr()), x)
    r0 = sympy.Rational(x0.numerator, x0.denominator)
    count = poly.count_roots(inf=r0)
    if poly.eval(r0) == 0:
        count -= 1
    return count


def bisection_roots_above(coeffs_low_to_high, x0: Fraction, upper: Fraction, steps: int = 4000) -> int:
    """Sign changes of the polynomial on a fine rational grid over (x0, upper].

    A lower bound for the root count; sufficient when roots are simple and
    well separated.
    """
    def ev(x):
        acc = Fraction(0)
        for c in reversed(coeffs_low_to_high):
            acc = acc * x + c
        return acc

    h = (upper - x0) / steps
    signs = []
    for k in range(1, steps + 1):
        v = ev(x0 + k * h)
        if v != 0:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def inductive_gap_reference(terms, d: int, n: int) -> Fraction:
    """p(d-1, n-1) + 2 p(d, n // 2) + 2 - p(d, n) for p = sum c d^i n^j."""
    def p(x, y):
        return sum(Fraction(c) * Fraction(x) ** i * Fraction(y) ** j for i, j, c in terms)

    return p(d - 1, n - 1) + 2 * p(d, n // 2) + 2 - p(d, n)
