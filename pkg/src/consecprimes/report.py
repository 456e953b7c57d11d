"""Report serialization (JSON, CSV, text) and gap-bound configuration loading.

JSON reports carry ``schema_version`` and a ``type`` tag. Integers that can
outgrow 64 bits (powers, coefficients, scales) are written as decimal strings,
rationals as ``{"numerator": ..., "denominator": ...}`` and binary floats as an
exact ``mantissa * 2**exponent`` pair. CSV is one headerless row per record
with the columns listed in :data:`CSV_COLUMNS`.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any, Callable, Iterable

import mpmath

from .certificate import (
    BUILTIN_GAP_BOUNDS,
    Certificate,
    GapBound,
    GapCheckResult,
    TheoremReport,
)
from .errors import NoThreshold, WeakBound
from .limits import EpsilonThreshold, LimitSample
from .scanner import Relation, ScanSummary, TheoremCheck, ThresholdResult, TripleVerdict

SCHEMA_VERSION = 1
FORMATS = ("json", "csv", "text")


class ReportFormatError(ValueError):
    pass


class GapBoundConfigError(ValueError):
    """Malformed gap-bound file; ``entry`` is the offending item when there is one."""

    def __init__(self, message: str, entry: Any = None):
        super().__init__(message)
        self.entry = entry


# --- scalar codecs ----------------------------------------------------------


def _ints(v) -> tuple[int, ...]:
    if isinstance(v, str):
        return tuple(int(x) for x in v.split())
    return tuple(int(x) for x in v)


def _bool(v) -> bool:
    if isinstance(v, bool):
        return v
    if v in ("true", "false"):
        return v == "true"
    raise ReportFormatError(f"not a boolean: {v!r}")


def _opt_int(v) -> int | None:
    return None if v in (None, "") else int(v)


def _rational(q: Fraction) -> dict:
    return {"numerator": str(q.numerator), "denominator": str(q.denominator)}


def _unrational(d: dict) -> Fraction:
    return Fraction(int(d["numerator"]), int(d["denominator"]))


def _number(x) -> dict:
    if isinstance(x, Fraction):
        return _rational(x)
    man, exp = x.man_exp
    return {"mantissa": str(man), "exponent": str(exp), "decimal": mpmath.nstr(x, 30)}


def _unnumber(d: dict):
    if "numerator" in d:
        return _unrational(d)
    man, exp = int(d["mantissa"]), int(d["exponent"])
    with mpmath.workprec(max(53, man.bit_length() + 1)):
        return mpmath.ldexp(mpmath.mpf(man), exp)


def _exponent(k):
    return k if isinstance(k, int) else str(k)


def _unexponent(v):
    if isinstance(v, int):
        return v
    try:
        return int(v)
    except ValueError:
        return v


# --- per-type encoders --------------------------------------------------------


def _enc_verdict(v: TripleVerdict) -> dict:
    return {"n": v.n, "k": v.k, "lhs": str(v.lhs), "rhs": str(v.rhs), "relation": v.relation.value}


def _dec_verdict(d: dict) -> TripleVerdict:
    return TripleVerdict(int(d["n"]), int(d["k"]), int(d["lhs"]), int(d["rhs"]), Relation(d["relation"]))


def _enc_summary(s: ScanSummary) -> dict:
    return {
        "k": s.k,
        "n_from": s.n_from,
        "n_to": s.n_to,
        "counts": s.counts,
        "exceptions": list(s.exceptions),
        "equalities": list(s.equalities),
        "violations": list(s.violations),
    }


def _dec_summary(d: dict) -> ScanSummary:
    counts = d["counts"]
    return ScanSummary(
        k=int(d["k"]),
        n_from=int(d["n_from"]),
        n_to=int(d["n_to"]),
        lhs_greater=int(counts["lhs_greater"]),
        equal=int(counts["equal"]),
        rhs_greater=int(counts["rhs_greater"]),
        exceptions=_ints(d["exceptions"]),
        equalities=_ints(d["equalities"]),
        violations=_ints(d["violations"]),
    )


def _enc_threshold(t: ThresholdResult) -> dict:
    return {"k": t.k, "n_max": t.n_max, "threshold": t.threshold, "failures": list(t.failures)}


def _dec_threshold(d: dict) -> ThresholdResult:
    return ThresholdResult(int(d["k"]), int(d["n_max"]), int(d["threshold"]), _ints(d["failures"]))


def _enc_check(c: TheoremCheck) -> dict:
    return {
        "theorem": c.theorem,
        "claim": c.claim,
        "outcome": c.outcome,
        "n_max": c.n_max,
        "claimed_from": c.claimed_from,
        "strict": c.strict,
        "passed": c.passed,
        "violations": list(c.violations),
        "equalities": list(c.equalities),
        "summary": _enc_summary(c.summary),
    }


def _dec_check(d: dict) -> TheoremCheck:
    return TheoremCheck(
        theorem=int(d["theorem"]),
        n_max=int(d["n_max"]),
        claimed_from=int(d["claimed_from"]),
        strict=_bool(d["strict"]),
        passed=_bool(d["passed"]),
        violations=_ints(d["violations"]),
        equalities=_ints(d["equalities"]),
        summary=_dec_summary(d["summary"]),
    )


def _enc_certificate(c: Certificate) -> dict:
    return {
        "k": c.k,
        "c": c.c,
        "scale": str(c.scale),
        "coeffs": [str(a) for a in c.coeffs],
        "alpha": _rational(c.alpha),
    }


def _dec_certificate(d: dict) -> Certificate:
    coeffs = d["coeffs"]
    coeffs = coeffs.split() if isinstance(coeffs, str) else coeffs
    return Certificate(
        k=int(d["k"]),
        c=int(d["c"]),
        coeffs=tuple(int(a) for a in coeffs),
        scale=int(d["scale"]),
        alpha=_unrational(d["alpha"]),
    )


def _enc_theorem(r: TheoremReport) -> dict:
    g = r.gap_bound
    return {
        "k": r.k,
        "c": g.c,
        "n0": g.n0,
        "gap_bound": g.name,
        "provenance": g.provenance,
        "scale": str(r.certificate.scale),
        "coeffs": [str(a) for a in r.certificate.coeffs],
        "alpha": _rational(r.certificate.alpha),
        "positivity_threshold": str(r.positivity_threshold),
        "analytic_from": r.analytic_from,
        "verified_head": list(r.verified_head),
        "n_min": r.n_min,
        "status": r.status,
        "final_statement": r.final_statement,
    }


def _dec_theorem(d: dict) -> TheoremReport:
    g = GapBound(d["gap_bound"], int(d["c"]), int(d["n0"]), d["provenance"])
    cert = _dec_certificate(d)
    head = _ints(d["verified_head"])
    return TheoremReport(
        k=int(d["k"]),
        gap_bound=g,
        certificate=cert,
        positivity_threshold=int(d["positivity_threshold"]),
        analytic_from=int(d["analytic_from"]),
        verified_head=(head[0], head[1]),
        n_min=_opt_int(d["n_min"]),
        status=d["status"],
    )


def _enc_gapcheck(g: GapCheckResult) -> dict:
    return {"c": g.c, "n_max": g.n_max, "failures": list(g.failures), "empirical_n0": g.empirical_n0}


def _dec_gapcheck(d: dict) -> GapCheckResult:
    return GapCheckResult(int(d["c"]), int(d["n_max"]), _ints(d["failures"]))


def _enc_sample(s: LimitSample) -> dict:
    return {
        "n": s.n,
        "k": _exponent(s.k),
        "value": _number(s.value),
        "deviation": _number(s.deviation),
        "error_bound": _number(s.error_bound),
    }


def _dec_sample(d: dict) -> LimitSample:
    return LimitSample(
        n=int(d["n"]),
        k=_unexponent(d["k"]),
        value=_unnumber(d["value"]),
        deviation=_unnumber(d["deviation"]),
        error_bound=_unnumber(d["error_bound"]),
    )


def _enc_epsilon(e: EpsilonThreshold) -> dict:
    return {
        "k": _exponent(e.k),
        "epsilon": _rational(e.epsilon),
        "n_max": e.n_max,
        "threshold": e.threshold,
        "caveat": e.caveat,
    }


def _dec_epsilon(d: dict) -> EpsilonThreshold:
    return EpsilonThreshold(
        k=_unexponent(d["k"]),
        epsilon=_unrational(d["epsilon"]),
        n_max=int(d["n_max"]),
        threshold=int(d["threshold"]),
        caveat=d["caveat"],
    )


def _enc_weak(e: WeakBound) -> dict:
    return {"k": e.k, "c": e.c, "leading_coefficient": str(e.leading_coefficient), "message": str(e)}


def _dec_weak(d: dict) -> WeakBound:
    return WeakBound(d["message"], k=int(d["k"]), c=int(d["c"]), leading_coefficient=int(d["leading_coefficient"]))


def _enc_nothreshold(e: NoThreshold) -> dict:
    return {"n_max": e.n_max, "message": str(e)}


def _dec_nothreshold(d: dict) -> NoThreshold:
    return NoThreshold(d["message"], n_max=int(d["n_max"]))


_CODECS: dict[type, tuple[str, Callable, Callable]] = {
    TripleVerdict: ("TripleVerdict", _enc_verdict, _dec_verdict),
    ScanSummary: ("ScanSummary", _enc_summary, _dec_summary),
    ThresholdResult: ("ThresholdResult", _enc_threshold, _dec_threshold),
    TheoremCheck: ("TheoremCheck", _enc_check, _dec_check),
    Certificate: ("Certificate", _enc_certificate, _dec_certificate),
    TheoremReport: ("TheoremReport", _enc_theorem, _dec_theorem),
    GapCheckResult: ("GapCheckResult", _enc_gapcheck, _dec_gapcheck),
    LimitSample: ("LimitSample", _enc_sample, _dec_sample),
    EpsilonThreshold: ("EpsilonThreshold", _enc_epsilon, _dec_epsilon),
    WeakBound: ("WeakBound", _enc_weak, _dec_weak),
    NoThreshold: ("NoThreshold", _enc_nothreshold, _dec_nothreshold),
}
_BY_TAG = {tag: (cls, dec) for cls, (tag, _, dec) in _CODECS.items()}

# headerless CSV column order per record type (nested keys are dotted)
CSV_COLUMNS: dict[str, tuple[str, ...]] = {
    "TripleVerdict": ("n", "k", "lhs", "rhs", "relation"),
    "ScanSummary": (
        "k", "n_from", "n_to", "counts.lhs_greater", "counts.equal", "counts.rhs_greater",
        "exceptions", "equalities", "violations",
    ),
    "ThresholdResult": ("k", "n_max", "threshold", "failures"),
    "TheoremCheck": (
        "theorem", "n_max", "claimed_from", "strict", "passed", "violations", "equalities",
        "summary.k", "summary.n_from", "summary.n_to", "summary.counts.lhs_greater",
        "summary.counts.equal", "summary.counts.rhs_greater", "summary.exceptions",
        "summary.equalities", "summary.violations",
    ),
    "Certificate": ("k", "c", "scale", "coeffs", "alpha.numerator", "alpha.denominator"),
    "TheoremReport": (
        "k", "c", "n0", "gap_bound", "provenance", "scale", "coeffs", "alpha.numerator",
        "alpha.denominator", "positivity_threshold", "analytic_from", "verified_head", "n_min",
        "status", "final_statement",
    ),
    "GapCheckResult": ("c", "n_max", "failures", "empirical_n0"),
    "EpsilonThreshold": ("k", "epsilon.numerator", "epsilon.denominator", "n_max", "threshold", "caveat"),
    "WeakBound": ("k", "c", "leading_coefficient", "message"),
    "NoThreshold": ("n_max", "message"),
}


def _codec(obj) -> tuple[str, Callable, Callable]:
    for cls, codec in _CODECS.items():
        if type(obj) is cls:
            return codec
    raise ReportFormatError(f"no report encoding for {type(obj).__name__}")


def to_dict(result) -> dict:
    """Tagged, JSON-ready dict for any report type."""
    tag, enc, _ = _codec(result)
    return {"schema_version": SCHEMA_VERSION, "type": tag, **enc(result)}


def from_dict(d: dict):
    if d.get("schema_version") != SCHEMA_VERSION:
        raise ReportFormatError(f"unsupported schema_version {d.get('schema_version')!r}")
    try:
        _, dec = _BY_TAG[d["type"]]
    except KeyError:
        raise ReportFormatError(f"unknown report type {d.get('type')!r}") from None
    return dec(d)


# --- flat forms for CSV and text ----------------------------------------------


def _flatten(d: dict, prefix: str = "") -> dict[str, str]:
    out: dict[str, str] = {}
    for key, v in d.items():
        name = prefix + key
        if isinstance(v, dict):
            out.update(_flatten(v, name + "."))
        elif isinstance(v, list):
            out[name] = " ".join(str(x) for x in v)
        elif isinstance(v, bool):
            out[name] = "true" if v else "false"
        elif v is None:
            out[name] = ""
        else:
            out[name] = str(v)
    return out


def _unflatten(flat: dict[str, str]) -> dict:
    out: dict = {}
    for key, v in flat.items():
        *parents, leaf = key.split(".")
        node = out
        for part in parents:
            node = node.setdefault(part, {})
        node[leaf] = v
    return out


def _csv_row(result) -> list[str]:
    d = to_dict(result)
    tag = d["type"]
    if tag not in CSV_COLUMNS:
        raise ReportFormatError(f"{tag} has no CSV form; use json")
    flat = _flatten(d)
    return [flat[c] for c in CSV_COLUMNS[tag]]


def _text_lines(result) -> list[str]:
    flat = _flatten(to_dict(result))
    width = max(len(k) for k in flat)
    return [f"{k.ljust(width)}  {v}" for k, v in flat.items()]


def emit_report(result, fmt: str = "json") -> bytes:
    """Serialize one result (or a list of same-typed results) to bytes.

    Output is byte-stable for equal inputs.
    """
    items = list(result) if isinstance(result, (list, tuple)) else None
    if fmt == "json":
        if items is not None:
            payload = {"schema_version": SCHEMA_VERSION, "type": "list", "items": [to_dict(r) for r in items]}
        else:
            payload = to_dict(result)
        return (json.dumps(payload, indent=2, ensure_ascii=False) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for r in items if items is not None else [result]:
            writer.writerow(_csv_row(r))
        return buf.getvalue().encode()
    if fmt == "text":
        blocks = ["\n".join(_text_lines(r)) for r in (items if items is not None else [result])]
        return ("\n\n".join(blocks) + "\n").encode()
    raise ReportFormatError(f"unsupported format {fmt!r}; choose from {', '.join(FORMATS)}")


def parse_report(data: bytes | str, fmt: str = "json", *, type_tag: str | None = None):
    """Inverse of :func:`emit_report` for the json and csv formats.

    CSV carries no type information, so ``type_tag`` (e.g. ``"TripleVerdict"``)
    is required there. Multi-row CSV and JSON lists come back as lists.
    """
    text = data.decode() if isinstance(data, bytes) else data
    if fmt == "json":
        d = json.loads(text)
        if d.get("type") == "list":
            return [from_dict(x) for x in d["items"]]
        return from_dict(d)
    if fmt == "csv":
        if type_tag not in CSV_COLUMNS:
            raise ReportFormatError(f"csv parsing needs a known type_tag, got {type_tag!r}")
        cols = CSV_COLUMNS[type_tag]
        rows = list(csv.reader(io.StringIO(text)))
        out = []
        for row in rows:
            if len(row) != len(cols):
                raise ReportFormatError(f"expected {len(cols)} columns, got {len(row)}")
            d = _unflatten(dict(zip(cols, row)))
            out.append(from_dict({"schema_version": SCHEMA_VERSION, "type": type_tag, **d}))
        return out[0] if len(out) == 1 else out
    raise ReportFormatError(f"cannot parse format {fmt!r}")


# --- gap-bound configuration --------------------------------------------------


def _gap_bound_from_entry(entry: Any) -> GapBound:
    if not isinstance(entry, dict):
        raise GapBoundConfigError("gap-bound entry must be an object", entry)
    unknown = set(entry) - {"name", "c", "n0", "provenance"}
    if unknown:
        raise GapBoundConfigError(f"unknown keys {sorted(unknown)}", entry)
    try:
        name, c, n0 = entry["name"], entry["c"], entry["n0"]
    except KeyError as e:
        raise GapBoundConfigError(f"missing key {e.args[0]!r}", entry) from None
    if not isinstance(name, str) or not name:
        raise GapBoundConfigError("name must be a non-empty string", entry)
    try:
        return GapBound(name, c, n0, str(entry.get("provenance", "")))
    except ValueError as e:
        raise GapBoundConfigError(str(e), entry) from None


def build_registry(entries: Iterable[Any]) -> dict[str, GapBound]:
    registry = {g.name: g for g in BUILTIN_GAP_BOUNDS}
    for entry in entries:
        g = _gap_bound_from_entry(entry)
        if g.name in registry:
            raise GapBoundConfigError(f"duplicate gap bound name {g.name!r}", entry)
        registry[g.name] = g
    return registry


def load_gap_bounds(path) -> dict[str, GapBound]:
    """Built-in bounds plus those listed in a JSON array file, keyed by name."""
    with open(path, encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise GapBoundConfigError(f"{path}: {e}") from None
    if not isinstance(data, list):
        raise GapBoundConfigError(f"{path}: expected a JSON array of gap bounds")
    return build_registry(data)
