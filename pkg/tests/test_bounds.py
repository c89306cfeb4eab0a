from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from diambound.bounds import (
    BoundParams,
    bound_larman_float,
    bound_ours_float,
    check_superlinearity,
    exact_power_value,
    exponent_base,
    larman_value,
    make_params,
    power_of_two_exponent,
)
from diambound.errors import InvalidParams


def test_params_validation():
    assert make_params(2, 0) == BoundParams(2, 0)
    for bad in [(0, 0), (-1, 3), (2, -1)]:
        with pytest.raises(InvalidParams):
            BoundParams(*bad)
    with pytest.raises(InvalidParams):
        BoundParams(True, 0)
    with pytest.raises(InvalidParams):
        BoundParams(2.0, 0)
    # InvalidParams is a ValueError so generic callers can catch it
    with pytest.raises(ValueError):
        BoundParams(0, 0)


def test_step2_width_and_str():
    assert BoundParams(2, 0).step2_width == 32
    assert BoundParams(4, 0).step2_width == 512
    assert BoundParams(8, 16).step2_width == 1 << 17
    assert str(BoundParams(8, 16)) == "(8,16)"


def test_exponent_base_is_exact():
    assert exponent_base(BoundParams(2, 0), 6) == 3
    assert exponent_base(BoundParams(8, 16), 3) == Fraction(131, 8)
    assert exponent_base(BoundParams(4, 0), 37) == Fraction(37, 4)


def test_superlinearity_threshold():
    p = BoundParams(2, 0)
    assert not check_superlinearity(p, 3)
    assert not check_superlinearity(p, 4)  # base exactly 2: linear, not superlinear
    assert check_superlinearity(p, 5)
    assert check_superlinearity(BoundParams(4, 0), 9)
    assert not check_superlinearity(BoundParams(4, 0), 8)
    assert check_superlinearity(BoundParams(8, 16), 1)


@given(st.integers(3, 200), st.integers(1, 10**6))
def test_larman_doubles_with_d(d, extra):
    n = d + extra
    assert larman_value(d + 1, n).value == 2 * larman_value(d, n).value
    assert larman_value(d, n).value == n * 2 ** (d - 3)


def test_larman_rejects_bad_pairs():
    with pytest.raises(ValueError):
        larman_value(2, 5)
    with pytest.raises(ValueError):
        larman_value(5, 4)


def test_power_of_two_exponent():
    assert power_of_two_exponent(1) == 0
    assert power_of_two_exponent(1024) == 10
    assert power_of_two_exponent(0) is None
    assert power_of_two_exponent(12) is None


def test_exact_power_value_cases():
    assert exact_power_value(0, Fraction(3)) == 0
    assert exact_power_value(1, Fraction(7, 3)) == 1
    assert exact_power_value(8, Fraction(3)) == 27  # 8^log2 3 = 3^3
    assert exact_power_value(18, Fraction(4)) == 324  # q = 4: m^2
    assert exact_power_value(18, Fraction(3)) is None
    assert exact_power_value(4, Fraction(7, 2)) == Fraction(49, 4)


def test_float_replica_matches_reference_print():
    p = BoundParams(2, 0)
    assert f"{bound_ours_float(p, 6, 24):.1f}" == "97.6"
    assert f"{bound_ours_float(BoundParams(4, 0), 36, 6928):.1f}" == "1469828390203.3"
    assert bound_larman_float(7, 46) == 736.0
