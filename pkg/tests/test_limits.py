from decimal import Decimal
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from consecprimes import (
    NoThreshold,
    PrecisionError,
    Relation,
    a_value,
    check_triple,
    deviation_bound,
    epsilon_threshold,
)
from consecprimes.limits import TAIL_CAVEAT, as_rational

from oracles import a_fraction, brute_epsilon_threshold


def test_a_value_examples(table):
    s = a_value(1, 1, table=table)
    assert s.value == 1 and s.deviation == 1 and s.exact
    s = a_value(4, 2, table=table)
    assert s.value == Fraction(170, 169)
    assert s.deviation == Fraction(168, 169)
    for n in (1, 7, 500):
        s = a_value(n, 0, table=table)
        assert s.value == 2 and s.deviation == 0


def test_a_value_negative_integer_k(table):
    s = a_value(4, -1, table=table)
    assert s.value == Fraction(13, 11) + Fraction(13, 7)
    assert s.value > 2


def test_a_value_accepts_integral_strings_and_fractions(table):
    assert a_value(4, "2", table=table).value == Fraction(170, 169)
    assert a_value(4, Fraction(4, 2), table=table).k == 2
    with pytest.raises(TypeError):
        a_value(4, 2.5, table=table)


@pytest.mark.parametrize("k", ["0.5", "2.5", "-1.5", "1/3"])
def test_a_value_real_k_encloses_the_truth(table, k):
    s = a_value(10, k, table=table, precision=200)
    assert not s.exact
    p, p1, p2 = table.slice(10, 12).tolist()
    with mpmath.workprec(400):
        e = mpmath.mpf(Fraction(k).numerator) / Fraction(k).denominator
        truth = mpmath.power(mpmath.mpf(p1) / p2, e) + mpmath.power(mpmath.mpf(p) / p2, e)
        assert abs(s.value - truth) <= s.error_bound
    assert s.error_bound < mpmath.mpf(2) ** -190


def test_a_value_real_k_max_error(table):
    with pytest.raises(PrecisionError):
        a_value(10, "2.5", table=table, precision=20, max_error=mpmath.mpf(10) ** -30)


def test_real_k_near_integer_agrees_with_exact(table):
    exact = a_value(100, 3, table=table).value
    approx = a_value(100, "3.0000000000000000000000000001", table=table, precision=200)
    with mpmath.workprec(200):
        assert abs(approx.value - mpmath.mpf(exact.numerator) / exact.denominator) < mpmath.mpf(10) ** -20


@pytest.mark.parametrize("n, k, expected", [(1, 1, Fraction(6, 5)), (4, 2, Fraction(240, 169))])
def test_deviation_bound_examples(table, n, k, expected):
    assert deviation_bound(n, k, table=table) == expected
    assert deviation_bound(n, k, table=table) >= a_value(n, k, table=table).deviation


def test_deviation_bound_rejects_nonpositive_k(table):
    with pytest.raises(ValueError):
        deviation_bound(3, 0, table=table)
    with pytest.raises(ValueError):
        deviation_bound(3, "-0.5", table=table)


@given(st.integers(1, 5000), st.sampled_from(["0.5", "1.5", "2.25", "7/3"]))
@settings(max_examples=80, deadline=None)
def test_deviation_bound_dominates_real_k(table, n, k):
    b = deviation_bound(n, k, table=table)
    s = a_value(n, k, table=table)
    assert s.deviation - s.error_bound <= b
    assert b < 2


@given(st.integers(1, 10_000), st.integers(1, 6))
@settings(max_examples=200, deadline=None)
def test_limit_properties_integer_k(table, n, k):
    t = table.triple(n)
    s = a_value(n, k, table=table)
    assert s.value == a_fraction(t.p, t.p1, t.p2, k)
    assert 0 < s.value < 2
    assert deviation_bound(n, k, table=table) >= s.deviation
    assert (s.value > 1) == (check_triple(t, k).relation is Relation.LHS_GREATER)


@given(st.integers(1, 5000), st.integers(-5, -1))
@settings(max_examples=100, deadline=None)
def test_negative_k_exceeds_two(table, n, k):
    assert a_value(n, k, table=table).value > 2


def test_epsilon_threshold_examples(table):
    r = epsilon_threshold(2, "1/2", 10_000, table=table)
    assert r.threshold == 16
    assert r.caveat == TAIL_CAVEAT
    assert r.epsilon == Fraction(1, 2)
    assert epsilon_threshold(1, "1.5", 1000, table=table).threshold == 1
    assert epsilon_threshold(2, 2, 777, table=table).threshold == 1
    assert epsilon_threshold(0, "0.001", 50, table=table).threshold == 1


@pytest.mark.parametrize("k, eps, n_max", [(2, "0.5", 10_000), (1, "0.3", 3000), (3, "0.25", 3000), (-2, "0.5", 3000), (5, "1", 2000)])
def test_epsilon_threshold_matches_oracle(table, k, eps, n_max):
    primes = table.slice(1, n_max + 2).tolist()
    expected = brute_epsilon_threshold(primes, k, Fraction(eps), n_max)
    assert epsilon_threshold(k, eps, n_max, table=table).threshold == expected


def test_epsilon_threshold_boundary_is_exact(table):
    # deviation at n = 1, k = 1 is exactly 1: epsilon = 1 must count it as a failure
    with pytest.raises(NoThreshold):
        epsilon_threshold(1, "1", 1, table=table)
    assert epsilon_threshold(1, "1.0000000000000000000001", 1, table=table).threshold == 1


def test_epsilon_threshold_real_k(table):
    r = epsilon_threshold("2.5", "0.5", 1000, table=table)
    primes = table.slice(1, 1002).tolist()
    last = 0
    with mpmath.workprec(200):
        for n in range(1, 1001):
            p, p1, p2 = primes[n - 1 : n + 2]
            a = mpmath.power(mpmath.mpf(p1) / p2, 2.5) + mpmath.power(mpmath.mpf(p) / p2, 2.5)
            if not abs(a - 2) < 0.5:
                last = n
    assert r.threshold == last + 1
    assert r.k == "2.5"


def test_epsilon_threshold_errors(table):
    with pytest.raises(ValueError):
        epsilon_threshold(2, "0", 10, table=table)
    with pytest.raises(ValueError):
        epsilon_threshold(2, "-1", 10, table=table)
    with pytest.raises(TypeError):
        epsilon_threshold(2, 0.5, 10, table=table)
    with pytest.raises(NoThreshold):
        epsilon_threshold(2, "0.001", 100, table=table)


def test_as_rational():
    assert as_rational("0.1") == Fraction(1, 10)
    assert as_rational(Decimal("2.50")) == Fraction(5, 2)
    assert as_rational(" 3/7 ") == Fraction(3, 7)
    with pytest.raises(TypeError):
        as_rational(0.1)
