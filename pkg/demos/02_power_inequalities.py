# Comparing p_{n+1}^k + p_n^k with p_{n+2}^k exactly, for whole ranges of n.
#
# Run with:  python demos/02_power_inequalities.py

import time

from consecprimes import PrimeTable, PrimeTriple, check_triple, find_threshold, scan, verify_theorem

# one triple at a time: lhs and rhs are exact Python ints
print(check_triple(PrimeTriple(3, 5, 7, 11), 2))   # 74 < 121
print(check_triple(PrimeTriple(4, 7, 11, 13), 2))  # 170 > 169

table = PrimeTable()

# k = 1: the sum of two consecutive primes is never below the next prime.
# n = 1 is an equality (2 + 3 = 5).
s = scan(1, 1, 100_000, table=table)
print("k=1 counts:", s.counts, "| equalities at", s.equalities)

# where does the strict inequality start for each exponent?
for k in range(2, 7):
    r = find_threshold(k, 100_000, table=table)
    print(f"k={k}: holds on [{r.threshold}, {r.n_max}], failures {r.failures}")

# the three claims, checked over the first million indices
t0 = time.perf_counter()
for theorem in (1, 2, 3):
    check = verify_theorem(theorem, 1_000_000, table=table)
    print(check.claim, "->", check.outcome)
print(f"({time.perf_counter() - t0:.1f}s for all three)")
