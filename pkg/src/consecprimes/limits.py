"""The ratio sequence ``a_n^k = (p_{n+1}/p_{n+2})^k + (p_n/p_{n+2})^k`` and its approach to 2.

Integer exponents are handled with exact rationals. Other real exponents go
through mpmath interval arithmetic: every value carries an enclosure, and a
comparison the enclosure cannot settle raises :class:`PrecisionError`.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from numbers import Rational

import mpmath

from .errors import NoThreshold, PrecisionError
from .primes import PrimeTable

TAIL_CAVEAT = (
    "threshold is relative to the scanned window [1, n_max]; "
    "indices n > n_max were not examined and no effective bound for them is known"
)
DEFAULT_PRECISION = 128  # bits, for non-integer exponents

Exponent = int | Fraction | str


@contextmanager
def _iv_prec(bits: int):
    ctx = mpmath.iv
    saved = ctx.prec
    ctx.prec = bits
    try:
        yield ctx
    finally:
        ctx.prec = saved


@dataclass(frozen=True)
class LimitSample:
    n: int
    k: Exponent
    value: Fraction | mpmath.mpf
    deviation: Fraction | mpmath.mpf
    error_bound: Fraction | mpmath.mpf = Fraction(0)

    @property
    def exact(self) -> bool:
        return isinstance(self.value, Fraction)


@dataclass(frozen=True)
class EpsilonThreshold:
    k: Exponent
    epsilon: Fraction
    n_max: int
    threshold: int
    caveat: str = TAIL_CAVEAT


def as_rational(x) -> Fraction:
    """Exact rational from an int, Fraction, Decimal or decimal string. Floats are refused."""
    if isinstance(x, float):
        raise TypeError("pass epsilon as a decimal string or Fraction, not a float")
    if isinstance(x, (int, Rational, Decimal)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as an exact rational")


def _integer_exponent(k) -> int | None:
    if isinstance(k, bool):
        raise TypeError("k must be a number")
    if isinstance(k, int):
        return k
    if isinstance(k, float):
        raise TypeError("pass a non-integer exponent as a decimal string or Fraction, not a float")
    q = as_rational(k)
    return q.numerator if q.denominator == 1 else None


def _label(k) -> str:
    return k.strip() if isinstance(k, str) else str(as_rational(k))


def _interval_exponent(k):
    if isinstance(k, str):
        return mpmath.iv.mpf(k.strip())
    q = as_rational(k)
    return mpmath.iv.mpf(q.numerator) / q.denominator


def _exact_value(p: int, p1: int, p2: int, k: int) -> Fraction:
    if k >= 0:
        return Fraction(p1**k + p**k, p2**k)
    m = -k
    return Fraction(p2**m * (p**m + p1**m), (p * p1) ** m)


def _interval_value(p: int, p1: int, p2: int, k, prec: int):
    with _iv_prec(prec):
        e = _interval_exponent(k)
        v = mpmath.iv.mpf(p1) / p2
        w = mpmath.iv.mpf(p) / p2
        return mpmath.iv.exp(e * mpmath.iv.log(v)) + mpmath.iv.exp(e * mpmath.iv.log(w))


def _midpoint_sample(n: int, k, enclosure, prec: int, max_error) -> LimitSample:
    with mpmath.workprec(prec):
        lo, hi = mpmath.mpf(enclosure.a), mpmath.mpf(enclosure.b)
        mid = (lo + hi) / 2
        # half-width plus one ulp of slack for rounding the midpoint
        err = mpmath.fsub(hi, lo, rounding="u") / 2 + mpmath.ldexp(abs(mid), 1 - prec)
        if max_error is not None and err > max_error:
            raise PrecisionError(f"a_{n} for k={k} only known to +/-{err} at {prec} bits")
        return LimitSample(n=n, k=k, value=mid, deviation=abs(mid - 2), error_bound=err)


def a_value(
    n: int,
    k: Exponent,
    *,
    table: PrimeTable | None = None,
    precision: int = DEFAULT_PRECISION,
    max_error=None,
) -> LimitSample:
    """``a_n^k`` and its distance from 2.

    Exact for integer ``k``. For other ``k`` the value is the midpoint of a
    rigorous enclosure and ``error_bound`` its half-width; ``max_error``
    turns an overly wide enclosure into :class:`PrecisionError`.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    table = table if table is not None else PrimeTable()
    _, p, p1, p2 = table.triple(n)
    ki = _integer_exponent(k)
    if ki is not None:
        value = _exact_value(p, p1, p2, ki)
        return LimitSample(n=n, k=ki, value=value, deviation=abs(value - 2))
    return _midpoint_sample(n, _label(k), _interval_value(p, p1, p2, k, precision), precision, max_error)


def deviation_bound(
    n: int, k: Exponent, *, table: PrimeTable | None = None, precision: int = DEFAULT_PRECISION
) -> Fraction | mpmath.mpf:
    """Upper bound ``2 (1 - (p_n / p_{n+2})^k)`` on ``|a_n^k - 2|`` for ``k > 0``.

    Follows from ``a_n^k >= 2 (p_n / p_{n+2})^k``. For real ``k`` the upper end of
    the enclosure is returned, so the bound stays rigorous.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    table = table if table is not None else PrimeTable()
    _, p, _, p2 = table.triple(n)
    ki = _integer_exponent(k)
    if ki is not None:
        if ki <= 0:
            raise ValueError(f"k must be positive, got {k!r}")
        return 2 * (1 - Fraction(p**ki, p2**ki))
    with _iv_prec(precision):
        e = _interval_exponent(k)
        if not e.a > 0:
            raise ValueError(f"k must be positive, got {k!r}")
        ratio = mpmath.iv.exp(e * mpmath.iv.log(mpmath.iv.mpf(p) / p2))
        bound = 2 * (1 - ratio)
    with mpmath.workprec(precision):
        return mpmath.mpf(bound.b)


def _deviation_below(p: int, p1: int, p2: int, k: int, eps: Fraction) -> bool:
    """Exact test of ``|a_n^k - 2| < eps`` for integer ``k``.

    Positive ``k`` cross-multiplies: with ``eps = a/b`` this is
    ``b (2 p_{n+2}^k - p_{n+1}^k - p_n^k) < a p_{n+2}^k`` (the sum is below ``2 p_{n+2}^k``).
    The upper side ``p_{n+1}^k + p_n^k < (2 + eps) p_{n+2}^k`` is checked too.
    """
    a, b = eps.numerator, eps.denominator
    if k > 0:
        s = p1**k + p**k
        r = p2**k
        if not b * s < (2 * b + a) * r:
            raise AssertionError(f"upper inequality failed for ({p}, {p1}, {p2}), k={k}")
        return b * (2 * r - s) < a * r
    return abs(_exact_value(p, p1, p2, k) - 2) < eps


def _real_deviation_below(p: int, p1: int, p2: int, k, eps: Fraction, prec: int) -> bool:
    enclosure = _interval_value(p, p1, p2, k, prec)
    with _iv_prec(prec):
        gap = mpmath.iv.mpf(2) - enclosure
        e = mpmath.iv.mpf(eps.numerator) / eps.denominator
        # deviation = |value - 2|; enclosure may sit on either side of 2
        dev = abs(gap)
        if dev.b < e.a:
            return True
        if dev.a >= e.b:
            return False
    raise PrecisionError(
        f"cannot decide |a_n - 2| < {eps} for ({p}, {p1}, {p2}), k={k} at {prec} bits"
    )


def epsilon_threshold(
    k: Exponent,
    epsilon,
    n_max: int,
    *,
    table: PrimeTable | None = None,
    precision: int = DEFAULT_PRECISION,
) -> EpsilonThreshold:
    """Smallest ``N`` with ``|a_n^k - 2| < epsilon`` for all ``n`` in ``[N, n_max]``.

    Window-relative: the result says nothing about ``n > n_max``, which the
    attached caveat records.
    """
    eps = as_rational(epsilon)
    if eps <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon!r}")
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    table = table if table is not None else PrimeTable()
    primes = table.slice(1, n_max + 2).tolist()
    ki = _integer_exponent(k)
    if ki == 0:
        return EpsilonThreshold(k=0, epsilon=eps, n_max=n_max, threshold=1)
    if ki is not None:
        below = lambda p, p1, p2: _deviation_below(p, p1, p2, ki, eps)  # noqa: E731
        k_out: Exponent = ki
    else:
        below = lambda p, p1, p2: _real_deviation_below(p, p1, p2, k, eps, precision)  # noqa: E731
        k_out = _label(k)
    last_bad = 0
    for i in range(n_max):
        if not below(primes[i], primes[i + 1], primes[i + 2]):
            last_bad = i + 1
    if last_bad == n_max:
        raise NoThreshold(f"|a_n - 2| >= {eps} at n_max={n_max} for k={k}", n_max=n_max)
    return EpsilonThreshold(k=k_out, epsilon=eps, n_max=n_max, threshold=last_bad + 1)
