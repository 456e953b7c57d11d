# Turning a prime-gap bound into a polynomial certificate.
#
# A premise p_{m+1} - p_m - 1 < p_m / c (for m > n0) bounds the deficit
# p_{n+1}^k + p_n^k - p_{n+2}^k from below by Q(p_n) / c^(2k). Once Q is
# positive the inequality holds for good; the indices before that are scanned.
#
# Run with:  python demos/03_certificates.py

from consecprimes import (
    NAGURA,
    ROHRBACH_WEIS,
    GapBound,
    PrimeTable,
    WeakBound,
    assemble_theorem,
    derive_certificate,
    gap_check,
    positivity_threshold,
)

cert = derive_certificate(2, NAGURA)
print("c=5, k=2: Q coefficients (ascending)", cert.coeffs, "scale", cert.scale)
print("  Q(11) =", cert(11), " Q(12) =", cert(12), " -> positive from", positivity_threshold(cert))

cert3 = derive_certificate(3, ROHRBACH_WEIS)
print("c=13, k=3:", cert3.coeffs, "scale", cert3.scale, "positive from", positivity_threshold(cert3))

# c = 5 is too loose for cubes: ((c+1)/c)^3 exceeds the golden ratio
try:
    derive_certificate(3, 5)
except WeakBound as e:
    print("weak bound:", e)

table = PrimeTable()
for k, g in ((2, NAGURA), (3, ROHRBACH_WEIS)):
    rep = assemble_theorem(k, g, scan_budget=1000, table=table)
    print(rep.status, "|", rep.final_statement, "| analytic from n =", rep.analytic_from)

# a user-supplied premise is accepted as-is; conclusions stay conditional on it
custom = GapBound("custom", 7, 30, "user supplied")
print(assemble_theorem(2, custom, 1000, table=table).final_statement)

# the premises themselves can be probed (not proved) over a finite range
for c in (5, 13):
    res = gap_check(c, 1_000_000, table=table)
    print(f"c={c}: last failing index below 10^6 is {res.empirical_n0}")
