from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import inductive_gap_reference
from diambound.bounds import BoundParams
from diambound.compare import check_inductive_inequality
from diambound.errors import NotFound
from diambound.falsifier import BivariatePolynomial, evaluate_inductive_gap, find_violation, probe_pairs

HIRSCH = BivariatePolynomial.parse("0:1:1 1:0:-1")
LINEAR = BivariatePolynomial.parse("0:1:1 0:0:0")
SQUARE = BivariatePolynomial.parse("0:2:1")


def test_parse_and_evaluate():
    assert HIRSCH(4, 8) == 4
    assert str(HIRSCH) == "0:1:1 1:0:-1"
    p = BivariatePolynomial.parse("1:1:1/2 0:0:3")
    assert p(2, 5) == 8
    assert p.n_degree == 1 and p.g(1) == {1: Fraction(1, 2)}
    for bad in ["1:2", "a:1:1", "0:1:0.5", "0:-1:1"]:
        with pytest.raises(ValueError):
            BivariatePolynomial.parse(bad)


def test_gap_values():
    # (n-1) - (d-1) + 2 (n//2 - d) + 2 - (n - d) at (4, 8)
    assert evaluate_inductive_gap(HIRSCH, 4, 8) == 2
    assert evaluate_inductive_gap(LINEAR, 5, 10) == 11
    assert evaluate_inductive_gap(BivariatePolynomial(), 7, 30) == 2
    with pytest.raises(ValueError):
        evaluate_inductive_gap(HIRSCH, 4, 7)


def test_violations():
    assert find_violation(HIRSCH, 4, 8) == (4, 8)
    assert find_violation(LINEAR, 5, 10) == (5, 10)
    assert find_violation(SQUARE, 10, 20, budget=1) == (10, 20)


def test_probe_grid_doubles():
    pts = []
    for k, pt in enumerate(probe_pairs(3, 6)):
        pts.append(pt)
        if k == 5:
            break
    assert pts == [(3, 6), (3, 12), (6, 12), (3, 24), (6, 24), (12, 24)]


def test_not_found_for_negative_leading_term():
    with pytest.raises(NotFound):
        find_violation(BivariatePolynomial.parse("0:2:-1 0:0:-100"), 2, 4, budget=50)
    with pytest.raises(ValueError):
        find_violation(HIRSCH, 4, 8, budget=0)


terms = st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3),
                           st.fractions(min_value=-5, max_value=5, max_denominator=7)), max_size=5)


@settings(max_examples=80, deadline=None)
@given(terms, st.integers(1, 30), st.integers(0, 100))
def test_gap_matches_reference(ts, d, extra):
    p = BivariatePolynomial(ts)
    n = 2 * d + extra
    assert evaluate_inductive_gap(p, d, n) == inductive_gap_reference(ts, d, n)


@settings(max_examples=60, deadline=None)
@given(terms, st.integers(1, 6))
def test_returned_pair_is_a_violation(ts, d_min):
    p = BivariatePolynomial(ts)
    try:
        d, n = find_violation(p, d_min, 2 * d_min, budget=200)
    except NotFound:
        return
    assert d >= d_min and n >= 2 * d
    assert inductive_gap_reference(ts, d, n) > 0


@settings(max_examples=60, deadline=None)
@given(terms, st.integers(1, 20), st.integers(0, 50), st.fractions(min_value=1, max_value=50, max_denominator=9))
def test_scaling_keeps_violation(ts, d, extra, c):
    p = BivariatePolynomial(ts)
    n = 2 * d + extra
    if evaluate_inductive_gap(p, d, n) > 2:
        assert evaluate_inductive_gap(p.scale(c), d, n) > 0


def test_bound_family_passes_where_polynomials_fail():
    p = BoundParams(2, 0)
    probes = [(d, n) for d, n in [(10, 42), (10, 84), (20, 80), (20, 160), (40, 320), (80, 1280)]]
    for d, n in probes:
        assert check_inductive_inequality(p, d, max(n, d + 32))
        assert find_violation(HIRSCH, d, n, budget=1) == (d, n)
