import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given, settings, strategies as st

from oracles import exact_reference_power, reference_power, reference_sign
from diambound.bounds import BoundParams
from diambound.compare import (
    AdaptiveInterval,
    ComparisonStats,
    ProvenEqual,
    ProvenGreater,
    ProvenLess,
    bound_enclosure,
    check_inductive_inequality,
    compare_int_vs_power,
    compare_power_vs_power,
    convexity_margin_ok,
    float_estimate,
    larman_vs_bound,
    power_enclosure,
    precision_ladder,
    tilde_vs_bound,
    threshold_holds_at,
)
from diambound.errors import Undecidable

SIGN = {ProvenLess: -1, ProvenEqual: 0, ProvenGreater: 1}


def test_golden_comparisons():
    assert compare_int_vs_power(98, 18, Fraction(3)) is ProvenGreater
    assert compare_int_vs_power(6, 4, Fraction(2)) is ProvenGreater
    assert compare_int_vs_power(4, 4, Fraction(2)) is ProvenEqual
    assert compare_int_vs_power(736, 39, Fraction(7, 2)) is ProvenLess
    assert compare_int_vs_power(720, 38, Fraction(7, 2)) is ProvenGreater
    assert compare_int_vs_power(1469922992914, 6892, Fraction(9)) is ProvenGreater


def test_enclosures_bracket_known_values():
    e = bound_enclosure(BoundParams(2, 0), 6, 24)
    assert e.lower > Fraction(9762, 100) and e.upper < Fraction(9763, 100)
    e = bound_enclosure(BoundParams(2, 0), 7, 46)
    assert e.lower > Fraction(75096, 100) and e.upper < Fraction(75097, 100)
    assert e.outward_decimal(2) == ("750.96", "750.97")


def test_zero_and_exact_cases():
    assert compare_int_vs_power(0, 0, Fraction(3)) is ProvenEqual
    assert compare_int_vs_power(1, 0, Fraction(3)) is ProvenGreater
    assert compare_int_vs_power(0, 5, Fraction(3)) is ProvenLess
    assert compare_int_vs_power(1, 1, Fraction(7, 3)) is ProvenEqual
    # 16^log2(7/2) = (7/2)^4
    assert compare_int_vs_power(150, 16, Fraction(7, 2)) is ProvenLess
    assert compare_int_vs_power(151, 16, Fraction(7, 2)) is ProvenGreater


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 40), st.integers(1, 2000), st.integers(1, 64), st.integers(-3, 3))
def test_exact_equality_cases_algebraic(s, num, den, shift):
    # m = 2^s: value q^s; q = 2^t: value m^t
    q = Fraction(num, den)
    m = 1 << s
    val = exact_reference_power(m, q)
    assert val == q**s
    if val.denominator == 1:
        V = max(0, val.numerator + shift)
        assert SIGN[compare_int_vs_power(V, m, q)] == (V > val) - (V < val)
    t = s % 8
    m2 = num + 2
    val2 = Fraction(m2) ** t
    V2 = max(0, int(val2) + shift)
    assert SIGN[compare_int_vs_power(V2, m2, Fraction(1 << t))] == (V2 > val2) - (V2 < val2)


@settings(max_examples=400, deadline=None)
@given(st.integers(2, 10**12), st.integers(1, 400), st.integers(1, 64), st.integers(-5, 5))
def test_agrees_with_reference_near_ties(m, num, den, shift):
    q = Fraction(num, den)
    assume(exact_reference_power(m, q) is None)
    ref = reference_power(m, q, 256)
    assume(ref < 10**200)
    V = max(0, int(ref) + shift)
    want = reference_sign(V, m, q)
    assume(want is not None)
    assert SIGN[compare_int_vs_power(V, m, q)] == want


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 10**9), st.integers(2, 300), st.integers(1, 30), st.integers(-2, 2))
def test_precision_monotonicity(m, num, den, shift):
    q = Fraction(num, den)
    assume(exact_reference_power(m, q) is None)
    V = max(0, int(float_estimate(m, q)) + shift)
    decided = {}
    for cap in (128, 256, 1024, 8192):
        try:
            decided[cap] = compare_int_vs_power(V, m, q, max_precision=cap)
        except Undecidable:
            pass
    outcomes = set(decided.values())
    assert len(outcomes) <= 1
    caps = sorted(decided)
    if caps:
        # once decided at some cap, every larger cap decides too
        assert caps == [c for c in (128, 256, 1024, 8192) if c >= caps[0]]


def test_undecidable_at_tiny_cap():
    # the value is ~1e63, far beyond what 128 bits resolve to the unit
    m, q = 10**40 + 7, Fraction(3)
    V = int(reference_power(m, q, 1024))
    with pytest.raises(Undecidable) as info:
        compare_int_vs_power(V, m, q, max_precision=128)
    assert info.value.precision == 128
    assert compare_int_vs_power(V, m, q) is ProvenLess


def test_stats_track_precision():
    stats = ComparisonStats()
    compare_int_vs_power(98, 18, Fraction(3), stats=stats)
    compare_int_vs_power(4, 4, Fraction(2), stats=stats)
    assert stats.comparisons == 2
    assert stats.max_precision == 128


def test_precision_ladder():
    assert list(precision_ladder(1000)) == [128, 256, 512, 1000]
    assert list(precision_ladder(8192))[-1] == 8192


def test_interval_arithmetic_encloses():
    prec = 64
    a = AdaptiveInterval.exact(Fraction(1, 3), prec)
    b = AdaptiveInterval.log_of(7, prec)
    for iv, val in [
        (a + b, 1 / 3 + math.log(7)),
        (a - b, 1 / 3 - math.log(7)),
        (a * b, math.log(7) / 3),
        (b / a, 3 * math.log(7)),
        (b.exp(), 7.0),
        (-a, -1 / 3),
    ]:
        assert iv.lower <= val + 1e-12 and iv.upper >= val - 1e-12
        assert iv.width() < 1e-15 * max(1, abs(val)) * 100
    with pytest.raises(ValueError):
        AdaptiveInterval.log_of(0, prec)


def test_negation_and_floor_keep_full_precision():
    # these used to drop to gmpy2's 53-bit default context
    iv = AdaptiveInterval.log_of(Fraction(11, 2), 128)
    assert iv.width() < 1e-35
    with mpmath.workprec(400):
        ref = mpmath.log(mpmath.mpf(11) / 2)
    exact_ref = Fraction(int(ref.man)) * Fraction(2) ** int(ref.exp)
    lo, hi = (Fraction(*x.as_integer_ratio()) for x in (iv.lower, iv.upper))
    assert lo <= exact_ref <= hi
    big = power_enclosure(10**6 + 3, Fraction(37, 4), 256)
    ref = reference_power(10**6 + 3, Fraction(37, 4), 1024)
    assert big.floor_lower() <= ref <= big.ceil_upper()
    assert big.ceil_upper() - big.floor_lower() <= 2


def test_power_vs_power():
    assert compare_power_vs_power(8, Fraction(3), 27, Fraction(2)) is ProvenEqual
    assert compare_power_vs_power(18, Fraction(3), 18, Fraction(7, 2)) is ProvenLess
    assert compare_power_vs_power(100, Fraction(5), 99, Fraction(5)) is ProvenGreater


def test_convexity_margin():
    # (2,0), d=7, crossing at n=46: increment ~35.2 >= 16
    assert convexity_margin_ok(39, Fraction(7, 2), 16)
    assert not convexity_margin_ok(2, Fraction(3), 100)
    assert convexity_margin_ok(1, Fraction(4), 3)  # 4 - 1 = 3 exactly


def test_larman_and_tilde_helpers():
    p = BoundParams(2, 0)
    assert larman_vs_bound(p, 7, 45) is ProvenGreater
    assert larman_vs_bound(p, 7, 46) is ProvenLess
    assert tilde_vs_bound(p, 6, 24, 98) is ProvenGreater
    assert tilde_vs_bound(p, 7, 24, 0) is ProvenLess


def test_inductive_inequality_domain_and_values():
    p = BoundParams(2, 0)
    assert check_inductive_inequality(p, 10, 52)
    assert check_inductive_inequality(BoundParams(8, 16), 8, (1 << 17) + 8)
    with pytest.raises(ValueError):
        check_inductive_inequality(p, 10, 19)
    with pytest.raises(ValueError):
        check_inductive_inequality(p, 10, 41)


def test_threshold_pointwise():
    p = BoundParams(2, 0)
    assert threshold_holds_at(p, 10)
    assert not threshold_holds_at(p, 9)
    assert threshold_holds_at(BoundParams(8, 16), 8)
    with pytest.raises(ValueError):
        threshold_holds_at(p, 0)


def test_power_enclosure_rejects_bad_input():
    with pytest.raises(ValueError):
        power_enclosure(-1, Fraction(2))
    with pytest.raises(ValueError):
        compare_int_vs_power(-1, 3, Fraction(2))
