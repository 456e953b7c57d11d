"""Polynomial certificates that turn a prime-gap bound into a power inequality.

Given a premise ``p_{m+1} - p_m - 1 < p_m / c`` for all ``m > n0`` we relax it to
``p_{m+1} < alpha * p_m + 1`` with ``alpha = (c + 1) / c``. Applying it at ``n``
and ``n + 1``, and using that ``x -> (alpha x + 1)^k - x^k`` increases,

    p_{n+1}^k + p_n^k - p_{n+2}^k > p^k + (alpha p + 1)^k - (alpha^2 p + alpha + 1)^k

with ``p = p_n``. Scaling by ``c^(2k)`` clears every denominator and gives an
integer polynomial ``Q``; once ``Q(p_n) > 0`` the inequality holds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import HeadGap, WeakBound
from .primes import PrimeTable
from .scanner import scan

Poly = list  # ascending coefficients


@dataclass(frozen=True)
class GapBound:
    """Premise ``p_{m+1} - p_m - 1 < p_m / c`` for every ``m > n0``; not proved here."""

    name: str
    c: int
    n0: int
    provenance: str = ""

    def __post_init__(self) -> None:
        if not isinstance(self.c, int) or isinstance(self.c, bool) or self.c < 2:
            raise ValueError(f"gap bound {self.name!r}: c must be an integer >= 2, got {self.c!r}")
        if not isinstance(self.n0, int) or isinstance(self.n0, bool) or self.n0 < 1:
            raise ValueError(f"gap bound {self.name!r}: n0 must be an integer >= 1, got {self.n0!r}")


NAGURA = GapBound("Nagura", 5, 9, "J. Nagura, Proc. Japan Acad. 28 (1952) 177-181")
ROHRBACH_WEIS = GapBound(
    "Rohrbach-Weis", 13, 118, "H. Rohrbach and J. Weis, J. Reine Angew. Math. 214/215 (1964) 432-440"
)
BUILTIN_GAP_BOUNDS = (NAGURA, ROHRBACH_WEIS)


@dataclass(frozen=True)
class Certificate:
    """``Q`` with ``scale * (p_{n+1}^k + p_n^k - p_{n+2}^k) > Q(p_n)`` under the gap bound."""

    k: int
    c: int
    coeffs: tuple[int, ...]
    scale: int
    alpha: Fraction

    def __call__(self, p: int) -> int:
        return poly_eval(self.coeffs, p)

    @property
    def leading(self) -> int:
        return self.coeffs[-1]


@dataclass(frozen=True)
class TheoremReport:
    k: int
    gap_bound: GapBound
    certificate: Certificate
    positivity_threshold: int
    analytic_from: int
    verified_head: tuple[int, int]
    n_min: int | None
    status: str  # "complete" or "head_gap"

    @property
    def conditional_on(self) -> str:
        return self.gap_bound.name

    @property
    def final_statement(self) -> str:
        k = self.k
        if self.n_min is None:
            return (
                f"incomplete: exhaustive check reached n={self.verified_head[1]}, "
                f"analytic argument starts at n={self.analytic_from}"
            )
        return (
            f"p_(n+2)^{k} < p_(n+1)^{k} + p_n^{k} for all n >= {self.n_min} "
            f"(conditional on {self.gap_bound.name})"
        )


# --- exact polynomial helpers ---------------------------------------------


def poly_eval(coeffs: Sequence, x):
    acc = 0
    for a in reversed(coeffs):
        acc = acc * x + a
    return acc


def _trim(a: Poly) -> Poly:
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _binomial_power(slope: Fraction, offset: Fraction, k: int) -> Poly:
    """Ascending coefficients of ``(slope * x + offset)^k``."""
    return [math.comb(k, j) * slope**j * offset ** (k - j) for j in range(k + 1)]


def _derivative(a: Poly) -> Poly:
    return _trim([i * a[i] for i in range(1, len(a))] or [0])


def _poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    a = [Fraction(x) for x in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and any(a):
        factor = a[-1] / b[-1]
        shift = len(a) - len(b)
        q[shift] = factor
        for i, bi in enumerate(b):
            a[shift + i] -= factor * bi
        a.pop()
        if not a:
            a = [Fraction(0)]
    return _trim(q), _trim(a)


def _poly_rem(a: Poly, b: Poly) -> Poly:
    return _poly_divmod(a, b)[1]


def _is_zero(a: Poly) -> bool:
    return len(a) == 1 and a[0] == 0


def squarefree_part(coeffs: Sequence) -> Poly:
    """``Q / gcd(Q, Q')``: same distinct roots, all simple."""
    a, b = _trim(list(coeffs)), _derivative(list(coeffs))
    if _is_zero(b):
        return a
    while not _is_zero(b):
        a, b = b, _poly_rem(a, b)
    quotient, rem = _poly_divmod(coeffs, a)
    assert _is_zero(rem)
    return quotient


def sturm_chain(coeffs: Sequence[int]) -> list[Poly]:
    """Sturm sequence of the squarefree part, so counts are exact even at shared roots."""
    coeffs = squarefree_part(coeffs)
    chain = [coeffs, _derivative(coeffs)]
    while not _is_zero(chain[-1]):
        r = _poly_rem(chain[-2], chain[-1])
        if _is_zero(r):
            break
        chain.append([-x for x in r])
    return chain


def _sign_changes(chain: list[Poly], x) -> int:
    signs = [s for s in (_sign(poly_eval(p, x)) for p in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def cauchy_bound(coeffs: Sequence[int]) -> int:
    """Integer ``B`` exceeding the modulus of every complex root."""
    lead = abs(coeffs[-1])
    top = max((abs(a) for a in coeffs[:-1]), default=0)
    return 1 + -(-top // lead)


def _count_roots(chain: list[Poly], a, b) -> int:
    """Distinct real roots in the half-open interval ``(a, b]``."""
    return _sign_changes(chain, a) - _sign_changes(chain, b)


def real_root_floors(coeffs: Sequence[int], lo: int, hi: int) -> list[int]:
    """``floor(r)`` for each distinct real root ``r`` in ``(lo, hi]``, ascending.

    Bisects on integers with Sturm counts until every isolating interval has
    unit width.
    """
    chain = sturm_chain(coeffs)
    floors: list[int] = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        count = _count_roots(chain, a, b)
        if count == 0:
            continue
        if b - a == 1:
            # roots in (a, a+1]; a root exactly at b has floor b
            at_b = poly_eval(coeffs, b) == 0
            if at_b:
                floors.append(b)
            if count - at_b:
                floors.append(a)
            continue
        mid = (a + b) // 2
        stack.append((a, mid))
        stack.append((mid, b))
    return sorted(floors)


# --- certificate construction ---------------------------------------------


def is_weak(k: int, c: int) -> bool:
    """True iff ``c^(2k) + c^k (c+1)^k <= (c+1)^(2k)``, i.e. ``alpha^k`` is at least the golden ratio."""
    return c ** (2 * k) + c**k * (c + 1) ** k <= (c + 1) ** (2 * k)


def deficit_lower_bound(p, k: int, alpha: Fraction) -> Fraction:
    """``p^k + (alpha p + 1)^k - (alpha^2 p + alpha + 1)^k`` evaluated exactly."""
    return p**k + (alpha * p + 1) ** k - (alpha * alpha * p + alpha + 1) ** k


def derive_certificate(k: int, g: GapBound | int) -> Certificate:
    """Expand the relaxed deficit bound for exponent ``k`` and clear denominators.

    Raises :class:`WeakBound` when the resulting leading coefficient is not
    positive, since no polynomial tail argument exists then.
    """
    if not isinstance(k, int) or isinstance(k, bool) or k < 2:
        raise ValueError(f"k must be an integer >= 2, got {k!r}")
    c = g.c if isinstance(g, GapBound) else g
    if isinstance(c, bool) or not isinstance(c, int) or c < 2:
        raise ValueError(f"c must be an integer >= 2, got {c!r}")
    alpha = Fraction(c + 1, c)
    one = Fraction(1)
    base = [Fraction(0)] * k + [one]
    middle = _binomial_power(alpha, one, k)
    outer = _binomial_power(alpha * alpha, alpha + 1, k)
    scale = c ** (2 * k)
    coeffs = []
    for j in range(k + 1):
        v = (base[j] + middle[j] - outer[j]) * scale
        if v.denominator != 1:
            raise AssertionError(f"coefficient of p^{j} is not integral: {v}")
        coeffs.append(v.numerator)
    if coeffs[-1] <= 0:
        raise WeakBound(
            f"gap constant c={c} cannot certify exponent k={k}: leading coefficient {coeffs[-1]}",
            k=k,
            c=c,
            leading_coefficient=coeffs[-1],
        )
    return Certificate(k=k, c=c, coeffs=tuple(coeffs), scale=scale, alpha=alpha)


def positivity_threshold(coeffs: Certificate | Sequence[int]) -> int:
    """Smallest integer ``M >= 1`` with ``Q(p) > 0`` for every integer ``p >= M``.

    Any integer with ``Q <= 0`` lies in a closed interval ending at a real root,
    so the last such integer is ``floor(r)`` for some root ``r`` below the
    Cauchy bound.
    """
    if isinstance(coeffs, Certificate):
        coeffs = coeffs.coeffs
    coeffs = _trim(list(coeffs))
    if coeffs[-1] <= 0:
        raise ValueError("leading coefficient must be positive")
    if len(coeffs) == 1:
        return 1
    bound = cauchy_bound(coeffs)
    last_bad = 0
    for f in reversed(real_root_floors(coeffs, 0, bound)):
        if f >= 1 and poly_eval(coeffs, f) <= 0:
            last_bad = f
            break
    return last_bad + 1


def gap_bound_holds(n: int, c: int, table: PrimeTable | None = None) -> bool:
    """``c * (p_{n+1} - p_n - 1) < p_n`` in exact integers."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    table = table if table is not None else PrimeTable()
    p, p1 = table.slice(n, n + 1).tolist()
    return c * (p1 - p - 1) < p


@dataclass(frozen=True)
class GapCheckResult:
    """Indices in ``[1, n_max]`` where ``c (p_{n+1} - p_n - 1) < p_n`` fails."""

    c: int
    n_max: int
    failures: tuple[int, ...]

    @property
    def empirical_n0(self) -> int:
        """Smallest ``n0`` for which the bound holds at every scanned ``m > n0`` (0 if none fail)."""
        return self.failures[-1] if self.failures else 0


def gap_check(c: int, n_max: int, *, table: PrimeTable | None = None) -> GapCheckResult:
    """Probe a gap constant empirically over the first ``n_max`` indices."""
    if isinstance(c, bool) or not isinstance(c, int) or c < 1:
        raise ValueError(f"c must be a positive integer, got {c!r}")
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    table = table if table is not None else PrimeTable()
    primes = table.slice(1, n_max + 1)
    p, p1 = primes[:-1], primes[1:]
    # c * gap fits int64 comfortably at desk scale; guard anyway
    if int(primes[-1]) * c >= 1 << 62:
        bad = [i + 1 for i, (a, b) in enumerate(zip(p.tolist(), p1.tolist())) if not c * (b - a - 1) < a]
    else:
        bad = (np.flatnonzero(~(c * (p1 - p - 1) < p)) + 1).tolist()
    return GapCheckResult(c=c, n_max=n_max, failures=tuple(bad))


def assemble_theorem(
    k: int,
    g: GapBound,
    scan_budget: int,
    *,
    table: PrimeTable | None = None,
    raise_on_gap: bool = False,
) -> TheoremReport:
    """Combine the certificate tail with an exhaustive head scan.

    The analytic part covers every ``n >= analytic_from``: the first index past
    ``g.n0`` whose prime reaches the positivity threshold. Indices below it are
    scanned directly. If ``scan_budget`` is too small the report has status
    ``head_gap`` (or :class:`HeadGap` is raised when ``raise_on_gap``).
    """
    cert = derive_certificate(k, g)
    m = positivity_threshold(cert)
    table = table if table is not None else PrimeTable()
    n_star = g.n0 + 1
    while table(n_star) < m:
        n_star += 1
    if scan_budget < n_star:
        if raise_on_gap:
            raise HeadGap(
                f"scan budget {scan_budget} < analytic start {n_star}",
                analytic_from=n_star,
                scan_budget=scan_budget,
            )
        return TheoremReport(
            k=k,
            gap_bound=g,
            certificate=cert,
            positivity_threshold=m,
            analytic_from=n_star,
            verified_head=(1, scan_budget),
            n_min=None,
            status="head_gap",
        )
    summary = scan(k, 1, n_star, table=table)
    n_min = summary.exceptions[-1] + 1 if summary.exceptions else 1
    return TheoremReport(
        k=k,
        gap_bound=g,
        certificate=cert,
        positivity_threshold=m,
        analytic_from=n_star,
        verified_head=(1, n_star),
        n_min=n_min,
        status="complete",
    )
