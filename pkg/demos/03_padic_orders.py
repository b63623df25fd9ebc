#!/usr/bin/env python3
"""The p-adic order mechanism behind period growth.

For the stabilizer matrix of sqrt(2), the least k with p^n dividing the
lower-left entry of the k-th power settles into k = const * p^n; the ratio
k/p^n is the growth rate of closed-orbit lengths along the p-power chain.
The fast path jumps to the answer; a linear scan confirms it.
"""

from fractions import Fraction

from qcf import RationalMat, e_ratio_trace, k_order, k_order_bruteforce, k_order_multi

delta = RationalMat(3, 4, 2, 3)  # multiplication by 3+2sqrt(2) on (sqrt2, 1)

print("== orders of the sqrt(2) stabilizer ==")
for p in (2, 3, 5, 7):
    trace, stable = e_ratio_trace(delta, p, 6)
    ks = [int(t * p ** (i + 1)) for i, t in enumerate(trace)]
    print(f"  p={p}: k over n=1..6 -> {ks}, ratio {trace[-1]} (constant from n={stable})")

print("\n== fast path against the linear-scan oracle ==")
for p, n in [(5, 1), (5, 2), (5, 3), (7, 2), (2, 8)]:
    fast = k_order(delta, p, n)
    brute = k_order_bruteforce(delta, p, n)
    print(f"  p={p} n={n}: fast {fast}, oracle {brute}")

print("\n== a unipotent example with an exact closed form ==")
nil = RationalMat(1, 0, 9, 1)
print("  I + 9 E21 at p=3:", [k_order(nil, 3, n) for n in range(1, 9)],
      "  (p^max(0, n-2))")

print("\n== composite heights combine by lcm ==")
for h in (5, 6, 10, 15, 30):
    print(f"  h={h:2d}: k = {k_order_multi(delta, h)}")

print("\n== denominators swap the congruence corner ==")
m = RationalMat(1, 25, 1, 26)
print(f"  [[1,25],[1,26]] at h=5, numerator side: {k_order_multi(m, 5)}")
print(f"  same matrix, denominator side:        {k_order_multi(m, 5, swap_primes={5})}")
