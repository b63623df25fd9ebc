#!/usr/bin/env python3
"""Exact continued fractions of quadratic irrationals.

Walks through the basic objects: canonical surds, exact Gauss steps,
period detection, pattern frequencies against the Gauss-Kuzmin cylinder
masses, and the scalar discrepancy that measures how far an orbit is from
the generic statistics.
"""

from qcf import cylinder, expand, gauss_step, mk_surd, nu_discrepancy, pattern_freq

print("== canonical representations ==")
for p, d, q in [(0, 2, 1), (0, 8, 2), (1, 5, 2), (1, 2, 2)]:
    print(f"  ({p}+sqrt({d}))/{q}  ->  {mk_surd(p, d, q)}")

print("\n== one exact Gauss step never leaves the integers ==")
x = mk_surd(-1, 2, 1)  # sqrt(2) - 1
digit, nxt = gauss_step(x)
print(f"  S({x}) = ({digit}, {nxt})   <- a fixed point with digit 2")

print("\n== periods ==")
for p, d, q in [(0, 2, 1), (0, 3, 1), (0, 19, 1), (0, 50, 1), (0, 2, 3)]:
    cf = expand(mk_surd(p, d, q))
    print(f"  ({p}+sqrt({d}))/{q}: a0={cf.a0} preperiod={list(cf.preperiod)} "
          f"period={list(cf.period)}")

print("\n== pattern frequencies vs cylinder masses ==")
cf = expand(mk_surd(0, 1000006, 1))  # a long, generic-looking orbit
print(f"  period length of sqrt(1000006): {len(cf.period)}")
for w in [(1,), (2,), (1, 1), (2, 1)]:
    freq = pattern_freq(cf, w)
    mass = cylinder(w).gauss_mass
    print(f"  w={w}: frequency {float(freq):.5f}  mass {mass:.5f}  "
          f"gap {abs(float(freq) - mass):.5f}")

print("\n== how non-generic can an orbit be? ==")
for d in (1000006, 50):
    disc = nu_discrepancy(expand(mk_surd(0, d, 1)))
    print(f"  discrepancy of sqrt({d}): {disc:.3f}")
print("  (sqrt(50) = 5 sqrt(2) is a single atom: the worst case)")
