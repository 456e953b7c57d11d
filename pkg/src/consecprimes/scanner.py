"""Exact comparison of ``p_{n+1}^k + p_n^k`` against ``p_{n+2}^k`` over index ranges."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

from .errors import NoThreshold
from .primes import PrimeTable, PrimeTriple


class Relation(str, Enum):
    LHS_GREATER = "lhs_greater"
    EQUAL = "equal"
    RHS_GREATER = "rhs_greater"


@dataclass(frozen=True)
class TripleVerdict:
    n: int
    k: int
    lhs: int
    rhs: int
    relation: Relation


@dataclass(frozen=True)
class ScanSummary:
    """Outcome of an exhaustive scan over ``[n_from, n_to]``.

    ``exceptions`` lists every index where the strict inequality fails;
    ``equalities`` and ``violations`` split it by relation.
    """

    k: int
    n_from: int
    n_to: int
    lhs_greater: int
    equal: int
    rhs_greater: int
    exceptions: tuple[int, ...] = ()
    equalities: tuple[int, ...] = ()
    violations: tuple[int, ...] = ()

    @property
    def counts(self) -> dict[str, int]:
        return {
            Relation.LHS_GREATER.value: self.lhs_greater,
            Relation.EQUAL.value: self.equal,
            Relation.RHS_GREATER.value: self.rhs_greater,
        }


@dataclass(frozen=True)
class ThresholdResult:
    k: int
    n_max: int
    threshold: int
    failures: tuple[int, ...]


@dataclass(frozen=True)
class TheoremCheck:
    """Pass/fail report for one of the three consecutive-prime inequalities."""

    theorem: int
    n_max: int
    claimed_from: int
    strict: bool
    passed: bool
    violations: tuple[int, ...]
    equalities: tuple[int, ...]
    summary: ScanSummary = field(repr=False)

    @property
    def claim(self) -> str:
        k = self.summary.k
        op = "<" if self.strict else "<="
        lhs, rhs = (f"p_(n+2)^{k}", f"p_(n+1)^{k} + p_n^{k}") if k > 1 else ("p_(n+2)", "p_(n+1) + p_n")
        return f"{lhs} {op} {rhs} for n >= {self.claimed_from}"

    @property
    def outcome(self) -> str:
        return f"{'confirmed' if self.passed else 'REFUTED'} for all n <= {self.n_max}"


# theorem id -> (exponent, first index claimed, strict comparison)
THEOREMS = {1: (1, 1, False), 2: (2, 4, True), 3: (3, 9, True)}


def _relation(lhs: int, rhs: int) -> Relation:
    if lhs > rhs:
        return Relation.LHS_GREATER
    if lhs == rhs:
        return Relation.EQUAL
    return Relation.RHS_GREATER


def _check_k(k: int) -> None:
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")


def check_triple(t: PrimeTriple, k: int) -> TripleVerdict:
    _check_k(k)
    n, p, p1, p2 = (int(v) for v in t)
    lhs = p1**k + p**k
    rhs = p2**k
    return TripleVerdict(n, k, lhs, rhs, _relation(lhs, rhs))


def _scan_primes(k: int, n_from: int, primes: list[int]) -> ScanSummary:
    """Scan triples drawn from ``primes``, where ``primes[0] == p_{n_from}``."""
    equalities: list[int] = []
    violations: list[int] = []
    exceptions: list[int] = []
    count = len(primes) - 2
    if k == 1:
        for i in range(count):
            s = primes[i] + primes[i + 1]
            r = primes[i + 2]
            if s <= r:
                n = n_from + i
                exceptions.append(n)
                (equalities if s == r else violations).append(n)
    else:
        powers = [q**k for q in primes]
        for i in range(count):
            s = powers[i] + powers[i + 1]
            r = powers[i + 2]
            if s <= r:
                n = n_from + i
                exceptions.append(n)
                (equalities if s == r else violations).append(n)
    return ScanSummary(
        k=k,
        n_from=n_from,
        n_to=n_from + count - 1,
        lhs_greater=count - len(exceptions),
        equal=len(equalities),
        rhs_greater=len(violations),
        exceptions=tuple(exceptions),
        equalities=tuple(equalities),
        violations=tuple(violations),
    )


def _scan_chunk(args: tuple[int, int, list[int]]) -> ScanSummary:
    return _scan_primes(*args)


def merge_summaries(parts: list[ScanSummary]) -> ScanSummary:
    """Concatenate summaries of adjacent ranges, given in index order."""
    if not parts:
        raise ValueError("nothing to merge")
    k = parts[0].k
    for a, b in zip(parts, parts[1:]):
        if b.k != k or b.n_from != a.n_to + 1:
            raise ValueError(f"summaries not adjacent: [{a.n_from},{a.n_to}] then [{b.n_from},{b.n_to}]")
    return ScanSummary(
        k=k,
        n_from=parts[0].n_from,
        n_to=parts[-1].n_to,
        lhs_greater=sum(s.lhs_greater for s in parts),
        equal=sum(s.equal for s in parts),
        rhs_greater=sum(s.rhs_greater for s in parts),
        exceptions=tuple(n for s in parts for n in s.exceptions),
        equalities=tuple(n for s in parts for n in s.equalities),
        violations=tuple(n for s in parts for n in s.violations),
    )


def scan(
    k: int,
    n_from: int,
    n_to: int,
    *,
    table: PrimeTable | None = None,
    workers: int = 1,
    chunk_size: int = 1 << 17,
) -> ScanSummary:
    """Exhaustively classify every triple with index in ``[n_from, n_to]``.

    With ``workers > 1`` the range is split into chunks scanned in separate
    processes; chunks are merged back in index order so the result is the
    same for any partitioning.
    """
    _check_k(k)
    if not 1 <= n_from <= n_to:
        raise ValueError(f"need 1 <= n_from <= n_to, got [{n_from}, {n_to}]")
    if workers < 1 or chunk_size < 1:
        raise ValueError("workers and chunk_size must be positive")
    table = table if table is not None else PrimeTable()
    primes = table.slice(n_from, n_to + 2)
    if workers == 1:
        return _scan_primes(k, n_from, primes.tolist())
    jobs = []
    for a in range(n_from, n_to + 1, chunk_size):
        b = min(a + chunk_size - 1, n_to)
        jobs.append((k, a, primes[a - n_from : b - n_from + 3].tolist()))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_scan_chunk, jobs))
    return merge_summaries(parts)


def find_threshold(
    k: int, n_max: int, *, table: PrimeTable | None = None, workers: int = 1
) -> ThresholdResult:
    """Smallest ``N`` such that the strict inequality holds on all of ``[N, n_max]``.

    Only the window is checked; nothing is claimed about ``n > n_max``.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    summary = scan(k, 1, n_max, table=table, workers=workers)
    failures = summary.exceptions
    if failures and failures[-1] == n_max:
        raise NoThreshold(
            f"p_(n+1)^{k} + p_n^{k} > p_(n+2)^{k} fails at n_max={n_max}", n_max=n_max
        )
    threshold = failures[-1] + 1 if failures else 1
    return ThresholdResult(k=k, n_max=n_max, threshold=threshold, failures=failures)


def verify_theorem(
    theorem: int, n_max: int, *, table: PrimeTable | None = None, workers: int = 1
) -> TheoremCheck:
    """Check one of the three inequalities at every index of its claimed range up to ``n_max``.

    Id 1 is the non-strict ``p_{n+2} <= p_{n+1} + p_n`` for all n; equality
    cases are reported but do not fail it. Ids 2 and 3 are the strict square
    and cube versions, claimed from n >= 4 and n >= 9.
    """
    if theorem not in THEOREMS:
        raise ValueError(f"theorem must be one of {sorted(THEOREMS)}, got {theorem!r}")
    if n_max < 10:
        raise ValueError(f"n_max must be >= 10, got {n_max}")
    k, start, strict = THEOREMS[theorem]
    summary = scan(k, 1, n_max, table=table, workers=workers)
    bad = summary.exceptions if strict else summary.violations
    violations = tuple(n for n in bad if n >= start)
    return TheoremCheck(
        theorem=theorem,
        n_max=n_max,
        claimed_from=start,
        strict=strict,
        passed=not violations,
        violations=violations,
        equalities=summary.equalities,
        summary=summary,
    )
