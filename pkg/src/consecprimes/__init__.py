"""Exact verification of power inequalities between three consecutive primes."""

from .certificate import (
    BUILTIN_GAP_BOUNDS,
    NAGURA,
    ROHRBACH_WEIS,
    Certificate,
    GapBound,
    GapCheckResult,
    TheoremReport,
    assemble_theorem,
    derive_certificate,
    gap_bound_holds,
    gap_check,
    positivity_threshold,
)
from .errors import HeadGap, NoThreshold, PrecisionError, PrimeResourceError, WeakBound
from .limits import EpsilonThreshold, LimitSample, a_value, deviation_bound, epsilon_threshold
from .primes import PrimeTable, PrimeTriple, first_primes, nth_prime, sieve_upto, triple_stream
from .report import emit_report, load_gap_bounds, parse_report
from .scanner import (
    Relation,
    ScanSummary,
    TheoremCheck,
    ThresholdResult,
    TripleVerdict,
    check_triple,
    find_threshold,
    scan,
    verify_theorem,
)

__version__ = "0.1.0"
