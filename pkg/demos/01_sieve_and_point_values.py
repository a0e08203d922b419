"""
Liouville and Moebius values from a segmented sieve
====================================================

Point evaluation factors a single n; the sieve produces whole blocks at once.
"""

import numpy as np

from liouville import lambda_point, mu_point, omega, sieve_segment

# Omega counts prime factors with multiplicity, lambda is its parity sign
for n in (1, 2, 4, 6, 8, 16, 60):
    print(f"Omega({n}) = {omega(n)}, lambda({n}) = {lambda_point(n):+d}, mu({n}) = {mu_point(n):+d}")

# a block of the sieve agrees with the point functions
seg = sieve_segment(1, 30)
print("lambda(1..30):", seg.lambda_vals.tolist())
print("mu(1..30):    ", seg.mu_vals.tolist())

# blocks far from the origin are just as cheap
lo = 10**12
block = sieve_segment(lo, lo + 10**6 - 1)
print(f"sum of lambda over [{lo}, {block.hi}] = {int(block.lambda_vals.sum(dtype=np.int64))}")
print("spot check:", block.lambda_vals[12] == lambda_point(lo + 12))

# 64-bit inputs: 2^64 - 1 has seven prime factors
print("Omega(2^64 - 1) =", omega(2**64 - 1))
