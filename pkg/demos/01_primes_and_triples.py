# Generating primes and walking consecutive triples.
#
# Run with:  python demos/01_primes_and_triples.py

import time

import numpy as np

from consecprimes import PrimeTable, nth_prime, sieve_upto, triple_stream

# sieve_upto returns an int64 array of every prime up to the limit
print(sieve_upto(30))

# the sieve works segment by segment; the segment length never changes the answer
a = sieve_upto(1_000_000)
b = sieve_upto(1_000_000, segment_size=1000, workers=2)
print("segment-size independent:", np.array_equal(a, b), "| primes below 10^6:", len(a))

# p_n is 1-based: p_1 = 2
t0 = time.perf_counter()
print("p_1000000 =", nth_prime(1_000_000), f"({time.perf_counter() - t0:.2f}s)")

# triples (n, p_n, p_{n+1}, p_{n+2}) come out in index order, each sharing two primes with the next
for t in triple_stream(5):
    print(t)

# a PrimeTable gives random access and is what the scanners share
table = PrimeTable()
print("p_10..p_12:", table.slice(10, 12).tolist(), "| triple at n=9:", table.triple(9))
