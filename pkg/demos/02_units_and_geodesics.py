#!/usr/bin/env python3
"""Fundamental units, negative Pell, and closed-orbit lengths.

Every quadratic irrational alpha fixes a module Z + Z*alpha; the smallest
power of the totally positive fundamental unit that stabilizes it gives an
integral matrix fixing alpha and the length t_alpha of the associated
closed orbit.  Scaling alpha changes the conductor and multiplies the
length by an exactly computable integer.
"""

from qcf import field_data, geodesic_data, mk_surd, order_of, split_type

print("== fields ==")
for d in (2, 3, 5, 13, 61):
    fd = field_data(d)
    w = "(1+sqrt(d))/2" if d % 4 == 1 else "sqrt(d)"
    print(f"  d={d:3d}: eps = {fd.eps[0]}+{fd.eps[1]}w  (w = {w}, norm {fd.eps_norm:+d}), "
          f"t0 = {fd.t0:.5f}, negative Pell: {fd.neg_pell}")

print("\n== conductors and stabilizers ==")
for p, d, q in [(0, 2, 1), (0, 50, 1), (0, 8, 1), (-1, 5, 2)]:
    alpha = mk_surd(p, d, q)
    f, disc = order_of(alpha)
    geo = geodesic_data(alpha)
    g = geo.gamma_alpha
    print(f"  alpha = {alpha}: conductor {f}, order disc {disc}, "
          f"gamma = [[{g.a},{g.b}],[{g.c},{g.d}]], unit power {geo.k_alpha}, "
          f"t = {geo.t_alpha:.5f}")

print("\n== scaling sqrt(2) by 2^n multiplies the length by 2^(n-1) ==")
for n in range(0, 6):
    geo = geodesic_data(mk_surd(0, 2 * 4**n, 1))
    print(f"  2^{n} sqrt(2): unit power {geo.k_alpha:4d}, t = {geo.t_alpha:9.4f}")

print("\n== splitting of small primes in Q(sqrt(2)) ==")
for p in (2, 3, 5, 7, 11, 13, 17, 23):
    print(f"  p={p:2d}: {split_type(2, p).value}")
