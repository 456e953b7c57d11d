"""Prime generation: a segmented sieve of Eratosthenes and consecutive-triple streams.

Indexing is 1-based throughout (``p_1 = 2``). Prime values stay machine-width
(``int64``) while sieving; callers widen to Python ints before raising them to
powers.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .errors import PrimeResourceError

DEFAULT_SEGMENT_SIZE = 1 << 18
DEFAULT_MEMORY_BUDGET = 1 << 30  # bytes of prime output a single call may materialize
SEGMENT_SIZE_ENV = "CONSECPRIMES_SEGMENT_SIZE"


def default_segment_size() -> int:
    raw = os.environ.get(SEGMENT_SIZE_ENV)
    if raw is None:
        return DEFAULT_SEGMENT_SIZE
    size = int(raw)
    if size < 2:
        raise ValueError(f"{SEGMENT_SIZE_ENV} must be >= 2, got {raw!r}")
    return size


class PrimeTriple(NamedTuple):
    """Three consecutive primes ``(p_n, p_{n+1}, p_{n+2})`` at 1-based index ``n``."""

    n: int
    p: int
    p1: int
    p2: int


def _simple_sieve(limit: int) -> np.ndarray:
    """All primes <= limit, unsegmented. Only used for the small base primes."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for q in range(3, math.isqrt(limit) + 1, 2):
        if flags[q]:
            flags[q * q :: 2 * q] = False
    return np.flatnonzero(flags).astype(np.int64)


def _sieve_segment(lo: int, hi: int, base: np.ndarray) -> np.ndarray:
    """Primes in ``[lo, hi)`` given every prime up to ``isqrt(hi - 1)`` in ``base``."""
    flags = np.ones(hi - lo, dtype=bool)
    if lo < 2:
        flags[: 2 - lo] = False
    for q in base.tolist():
        if q * q >= hi:
            break
        start = max(q * q, -(-lo // q) * q)
        flags[start - lo :: q] = False
    return np.flatnonzero(flags).astype(np.int64) + lo


def _segments(lo: int, hi: int, size: int) -> list[tuple[int, int]]:
    return [(a, min(a + size, hi)) for a in range(lo, hi, size)]


def _check_segment_size(segment_size: int) -> None:
    if segment_size < 2:
        raise ValueError(f"segment_size must be >= 2, got {segment_size}")


def prime_count_upper(x: int) -> int:
    """Upper bound on pi(x), good for every x >= 2 (Rosser-Schoenfeld)."""
    if x < 2:
        return 0
    if x < 17:
        return 6
    return int(1.25506 * x / math.log(x)) + 1


def nth_prime_upper(n: int) -> int:
    """Upper bound on p_n valid for all n >= 1."""
    if n < 6:
        return 13
    ln = math.log(n)
    return int(n * (ln + math.log(ln))) + 1


def sieve_upto(
    limit: int,
    *,
    segment_size: int | None = None,
    workers: int = 1,
    memory_budget: int = DEFAULT_MEMORY_BUDGET,
) -> np.ndarray:
    """Return every prime <= ``limit`` as a strictly increasing ``int64`` array.

    Segments are sieved independently (optionally by ``workers`` threads) and
    concatenated in order, so the output does not depend on either knob.
    Raises :class:`PrimeResourceError` if the result would exceed ``memory_budget``.
    """
    if limit < 0:
        raise ValueError(f"limit must be nonnegative, got {limit}")
    segment_size = default_segment_size() if segment_size is None else segment_size
    _check_segment_size(segment_size)
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    needed = 8 * prime_count_upper(limit) + segment_size
    if needed > memory_budget:
        raise PrimeResourceError(
            f"sieving to {limit} needs ~{needed} bytes, budget is {memory_budget}; "
            "lower the limit or raise the budget"
        )
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    base = _simple_sieve(math.isqrt(limit))
    spans = _segments(0, limit + 1, segment_size)
    if workers == 1:
        parts = [_sieve_segment(a, b, base) for a, b in spans]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda ab: _sieve_segment(ab[0], ab[1], base), spans))
    return np.concatenate(parts)


def first_primes(count: int, **kwargs) -> np.ndarray:
    """The first ``count`` primes, ``p_1 .. p_count``."""
    if count < 0:
        raise ValueError(f"count must be nonnegative, got {count}")
    if count == 0:
        return np.empty(0, dtype=np.int64)
    primes = sieve_upto(nth_prime_upper(count), **kwargs)
    return primes[:count]


def iter_primes(*, segment_size: int | None = None) -> Iterator[int]:
    """Unbounded ascending stream of primes, memory bounded by the segment size."""
    segment_size = default_segment_size() if segment_size is None else segment_size
    _check_segment_size(segment_size)
    base_limit = 0
    base = np.empty(0, dtype=np.int64)
    lo = 0
    while True:
        hi = lo + segment_size
        root = math.isqrt(hi - 1)
        if root > base_limit:
            base_limit = max(root, 2 * base_limit)
            base = _simple_sieve(base_limit)
        yield from _sieve_segment(lo, hi, base).tolist()
        lo = hi


def nth_prime(n: int, *, segment_size: int | None = None) -> int:
    """The ``n``-th prime, 1-based (``nth_prime(1) == 2``).

    Counts segment by segment up to an analytic upper bound on ``p_n``, so only
    one segment of flags is alive at a time.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    segment_size = default_segment_size() if segment_size is None else segment_size
    _check_segment_size(segment_size)
    limit = nth_prime_upper(n)
    base = _simple_sieve(math.isqrt(limit))
    seen = 0
    for a, b in _segments(0, limit + 1, segment_size):
        seg = _sieve_segment(a, b, base)
        if seen + len(seg) >= n:
            return int(seg[n - seen - 1])
        seen += len(seg)
    raise AssertionError(f"upper bound {limit} for p_{n} was too small")


def triple_stream(n_max: int, *, segment_size: int | None = None) -> Iterator[PrimeTriple]:
    """Yield the triples for ``n = 1 .. n_max`` in index order."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    it = iter_primes(segment_size=segment_size)
    p, p1 = next(it), next(it)
    for n in range(1, n_max + 1):
        p2 = next(it)
        yield PrimeTriple(n, p, p1, p2)
        p, p1 = p1, p2


@dataclass
class PrimeTable:
    """Random access to ``p_n`` backed by a sieve that grows on demand.

    Grows geometrically, so repeated lookups past the end stay cheap.
    """

    segment_size: int | None = None
    workers: int = 1

    def __post_init__(self) -> None:
        self._primes = np.empty(0, dtype=np.int64)

    def __len__(self) -> int:
        return len(self._primes)

    def ensure(self, count: int) -> None:
        if count <= len(self._primes):
            return
        target = max(count, 2 * len(self._primes))
        self._primes = first_primes(target, segment_size=self.segment_size, workers=self.workers)
        self._primes.setflags(write=False)

    def __call__(self, n: int) -> int:
        """``p_n`` as a Python int."""
        if n < 1:
            raise ValueError(f"index must be >= 1, got {n}")
        self.ensure(n)
        return int(self._primes[n - 1])

    def slice(self, n_from: int, n_to: int) -> np.ndarray:
        """Read-only view of ``p_{n_from} .. p_{n_to}`` inclusive."""
        if not 1 <= n_from <= n_to + 1:
            raise ValueError(f"bad index range [{n_from}, {n_to}]")
        self.ensure(n_to)
        return self._primes[n_from - 1 : n_to]

    def triple(self, n: int) -> PrimeTriple:
        a, b, c = self.slice(n, n + 2).tolist()
        return PrimeTriple(n, a, b, c)
