import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from consecprimes import PrimeTable, PrimeTriple, PrimeResourceError, nth_prime, sieve_upto, triple_stream
from consecprimes.primes import SEGMENT_SIZE_ENV, first_primes, iter_primes, nth_prime_upper

from oracles import is_prime_trial, primes_trial


@pytest.mark.parametrize(
    "limit, expected",
    [
        (0, []),
        (1, []),
        (2, [2]),
        (10, [2, 3, 5, 7]),
        (30, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]),
    ],
)
def test_sieve_small(limit, expected):
    assert sieve_upto(limit).tolist() == expected


def test_sieve_matches_trial_division_at_every_limit_below_2000(small_primes):
    for limit in range(2000):
        expected = [q for q in small_primes if q <= limit]
        assert sieve_upto(limit, segment_size=64).tolist() == expected


@given(st.integers(0, 100_000), st.integers(2, 5000))
@settings(max_examples=60, deadline=None)
def test_sieve_oracle_equivalence_any_segment_size(small_primes, limit, segment_size):
    got = sieve_upto(limit, segment_size=segment_size)
    assert got.tolist() == [q for q in small_primes if q <= limit]


def test_sieve_independent_of_workers_and_segments():
    ref = sieve_upto(300_000)
    assert np.array_equal(ref, sieve_upto(300_000, segment_size=1000, workers=3))
    assert np.array_equal(ref, sieve_upto(300_000, segment_size=7))


def test_sieve_rejects_bad_arguments():
    with pytest.raises(ValueError):
        sieve_upto(-1)
    with pytest.raises(ValueError):
        sieve_upto(10, segment_size=1)
    with pytest.raises(ValueError):
        sieve_upto(10, workers=0)


def test_sieve_memory_budget():
    with pytest.raises(PrimeResourceError):
        sieve_upto(10**7, memory_budget=10_000)
    with pytest.raises(MemoryError):
        sieve_upto(10**13)


def test_segment_size_env(monkeypatch):
    monkeypatch.setenv(SEGMENT_SIZE_ENV, "97")
    assert sieve_upto(1000).tolist() == primes_trial(1000)
    monkeypatch.setenv(SEGMENT_SIZE_ENV, "1")
    with pytest.raises(ValueError):
        sieve_upto(10)


@pytest.mark.parametrize("n, p", [(1, 2), (2, 3), (6, 13), (10, 29), (100, 541), (1000, 7919)])
def test_nth_prime(n, p):
    assert nth_prime(n) == p
    assert nth_prime(n, segment_size=50) == p


def test_nth_prime_agrees_with_trial_division(small_primes):
    for n in range(1, 3000, 37):
        assert nth_prime(n, segment_size=512) == small_primes[n - 1]


def test_nth_prime_rejects_zero():
    with pytest.raises(ValueError):
        nth_prime(0)


@pytest.mark.parametrize("n", [1, 5, 6, 7, 100, 12345, 10**6])
def test_nth_prime_upper_bound_is_an_upper_bound(n, table):
    assert table(n) <= nth_prime_upper(n)


def test_triple_stream_examples():
    assert list(triple_stream(1)) == [PrimeTriple(1, 2, 3, 5)]
    assert list(triple_stream(2))[-1] == (2, 3, 5, 7)
    assert list(triple_stream(4))[-1] == (4, 7, 11, 13)


def test_triple_stream_rejects_zero():
    with pytest.raises(ValueError):
        list(triple_stream(0))


def test_triple_stream_invariants(small_primes):
    triples = list(triple_stream(5000, segment_size=300))
    assert len(triples) == 5000
    for t, nxt in zip(triples, triples[1:]):
        assert (t.p1, t.p2) == (nxt.p, nxt.p1)
        assert nxt.n == t.n + 1
    for t in triples:
        assert t.p < t.p1 < t.p2
        assert (t.p, t.p1, t.p2) == tuple(small_primes[t.n - 1 : t.n + 2])
    assert all(is_prime_trial(v) for v in (triples[-1].p, triples[-1].p1, triples[-1].p2))


def test_triple_stream_deterministic_across_segment_sizes():
    a = list(triple_stream(3000, segment_size=16))
    b = list(triple_stream(3000, segment_size=1 << 18))
    assert a == b


def test_iter_primes_unbounded_prefix(small_primes):
    it = iter_primes(segment_size=10)
    assert [next(it) for _ in range(2000)] == small_primes[:2000]


def test_first_primes():
    assert first_primes(0).tolist() == []
    assert first_primes(5).tolist() == [2, 3, 5, 7, 11]


def test_prime_table(small_primes):
    t = PrimeTable(segment_size=1000)
    assert t(1) == 2
    assert t.triple(3) == (3, 5, 7, 11)
    assert t.slice(10, 12).tolist() == small_primes[9:12]
    assert len(t) >= 12
    with pytest.raises(ValueError):
        t(0)
    with pytest.raises(ValueError):
        t.slice(5, 2)
    view = t.slice(1, 3)
    with pytest.raises(ValueError):
        view[0] = 4
