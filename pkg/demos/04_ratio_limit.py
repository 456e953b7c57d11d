# The ratio sequence a_n^k = (p_{n+1}/p_{n+2})^k + (p_n/p_{n+2})^k tends to 2.
#
# Run with:  python demos/04_ratio_limit.py

from consecprimes import PrimeTable, a_value, deviation_bound, epsilon_threshold

table = PrimeTable()

# integer k gives exact rationals
s = a_value(4, 2, table=table)
print(s.value, "deviation", s.deviation, "bound", deviation_bound(4, 2, table=table))

# other real k use interval arithmetic; error_bound is a rigorous half-width
s = a_value(1000, "2.5", table=table, precision=160)
print(s.value, "+/-", s.error_bound)

# negative exponents approach 2 from above
print(a_value(1000, -2, table=table).value > 2)

# empirical n(k, eps): the last index in the window where |a_n - 2| >= eps, plus one
for k, eps in ((1, "0.1"), (2, "1/2"), (2, "0.05"), ("0.5", "0.01")):
    r = epsilon_threshold(k, eps, 100_000, table=table)
    print(f"k={k}, eps={r.epsilon}: threshold {r.threshold}")
print("caveat:", r.caveat)
