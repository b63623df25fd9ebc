#!/usr/bin/env python3
"""Hecke spheres, height decompositions, and the degenerate direction.

Primitive index-h sublattices of Z^2 form the sphere of radius h; any
integer matrix of height h factors through diag(h,1) between unimodular
matrices, and the right factor mod h decides which branch of the sphere
tower the matrix walks.  Negative-Pell units supply rationals of huge
height whose scaled surds keep a one-digit period: the orbit measures
refuse to spread out along that direction.
"""

from qcf import (
    RationalMat,
    decompose,
    degenerate_sequence,
    expand,
    mk_surd,
    nu_discrepancy,
    same_branch_at_depth,
    sphere_reps,
)

print("== sphere sizes h * prod(1 + 1/p) ==")
for h in (1, 2, 3, 4, 6, 12, 30, 60):
    print(f"  h={h:3d}: {len(sphere_reps(h)):4d} primitive sublattices")

print("\n== height decomposition ==")
g = RationalMat(10, 3, 4, 2)
u1, h, u2 = decompose(g)
print(f"  [[10,3],[4,2]] = u1 diag({h},1) u2 with")
print(f"  u1 = [[{u1.a},{u1.b}],[{u1.c},{u1.d}]], u2 = [[{u2.a},{u2.b}],[{u2.c},{u2.d}]]")

print("\n== branch agreement at different depths ==")
g1 = RationalMat.of(4, 0, 0, 1)
g2 = RationalMat.of(4, 0, 0, 1) * RationalMat(1, 0, 2, 1)
for depth in (1, 2, 4):
    print(f"  depth {depth}: same branch = {same_branch_at_depth(g1, g2, depth)}")

print("\n== the degenerate sequence for d=2 ==")
print("  odd powers of 1+sqrt(2) solve x^2 - 2y^2 = -1:")
for pt in degenerate_sequence(2, 5):
    cf = expand(mk_surd(0, 2 * pt.n * pt.n, 1))
    disc = nu_discrepancy(cf)
    print(f"  j={pt.j}: {pt.k}+{pt.n} sqrt(2)  ->  period of {pt.n} sqrt(2) is "
          f"{list(cf.period)}, discrepancy {disc:.3f}")
print("  heights explode, periods stay length 1: no equidistribution this way")
