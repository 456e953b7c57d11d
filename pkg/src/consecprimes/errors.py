"""Exception types shared across the package."""

from __future__ import annotations


class PrimeResourceError(MemoryError):
    """A sieve request would exceed the configured memory budget."""


class NoThreshold(ValueError):
    """The property fails at the top of the scan window, so no threshold exists there."""

    def __init__(self, message: str, *, n_max: int):
        super().__init__(message)
        self.n_max = n_max


class WeakBound(ValueError):
    """A gap bound is too weak to certify the requested exponent.

    ``leading_coefficient`` is the (non-positive) top coefficient of the
    would-be certificate polynomial.
    """

    def __init__(self, message: str, *, k: int, c: int, leading_coefficient: int):
        super().__init__(message)
        self.k = k
        self.c = c
        self.leading_coefficient = leading_coefficient


class HeadGap(RuntimeError):
    """The exhaustive scan budget stops short of where the analytic argument starts."""

    def __init__(self, message: str, *, analytic_from: int, scan_budget: int):
        super().__init__(message)
        self.analytic_from = analytic_from
        self.scan_budget = scan_budget


class PrecisionError(ArithmeticError):
    """A real-exponent comparison could not be resolved at the working precision."""
