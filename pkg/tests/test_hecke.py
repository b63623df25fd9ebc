import math

import pytest

from qcf.cfe import expand
from qcf.errors import InvalidRadius, NoNegativePell
from qcf.hecke import (
    decompose,
    degenerate_sequence,
    same_branch_at_depth,
    sphere_reps,
)
from qcf.surd import RationalMat, mk_surd


def count_primitive_sublattices(h: int) -> int:
    """Oracle: distinct kernels of surjections (Z/h)^2 -> Z/h.

    A primitive index-h sublattice contains h*Z^2 with cyclic quotient, so
    it is the kernel of such a surjection (u, v); two pairs give the same
    kernel exactly when they differ by a unit mod h.
    """
    units = [u for u in range(1, h + 1) if math.gcd(u, h) == 1]
    seen = set()
    for u in range(h):
        for v in range(h):
            if math.gcd(math.gcd(u, v), h) != 1:
                continue
            canon = min(((lam * u) % h, (lam * v) % h) for lam in units)
            seen.add(canon)
    return len(seen)


class TestSphereReps:
    def test_radius_one(self):
        reps = sphere_reps(1)
        assert len(reps) == 1 and reps[0].mat == RationalMat.identity()

    def test_examples(self):
        assert len(sphere_reps(2)) == 3
        assert len(sphere_reps(4)) == 6

    def test_rejects_bad_radius(self):
        with pytest.raises(InvalidRadius):
            sphere_reps(0)

    def test_reps_are_valid_and_distinct(self):
        for h in (6, 12, 30):
            reps = sphere_reps(h)
            seen = set()
            for r in reps:
                assert r.a * r.e == h and r.mat.c == 0
                assert 0 <= r.b < r.e
                assert math.gcd(math.gcd(r.a, r.b), r.e) == 1
                seen.add((r.a, r.b, r.e))
            assert len(seen) == len(reps)

    def test_counts_match_kernel_oracle(self):
        for h in range(1, 31):
            assert len(sphere_reps(h)) == count_primitive_sublattices(h), h


class TestDecompose:
    def test_trivial_diagonals(self):
        ident = RationalMat.identity()
        assert decompose(RationalMat.of(6, 0, 0, 1)) == (ident, 6, ident)
        sw = RationalMat.swap()
        assert decompose(RationalMat.of(1, 0, 0, 6)) == (sw, 6, sw)

    def test_unimodular_height_one(self, rng):
        from conftest import rand_unimodular

        for _ in range(20):
            m = rand_unimodular(rng)
            _, h, _ = decompose(m)
            assert h == 1

    def test_round_trip_random(self, rng):
        for _ in range(300):
            while True:
                e = [rng.randint(-50, 50) for _ in range(4)]
                if e[0] * e[3] - e[1] * e[2] != 0:
                    break
            g = RationalMat.of(*e)
            u1, h, u2 = decompose(g)
            assert u1.is_unimodular() and u2.is_unimodular()
            assert h == g.height()
            assert (u1 * RationalMat.of(h, 0, 0, 1) * u2).entries() == g.entries()


class TestSameBranch:
    def test_reflexive(self):
        g = RationalMat.of(4, 0, 0, 1)
        assert same_branch_at_depth(g, g, 4)

    def test_spec_pair(self):
        g1 = RationalMat.of(4, 0, 0, 1)
        g2 = RationalMat.of(4, 0, 0, 1) * RationalMat(1, 0, 2, 1)
        assert same_branch_at_depth(g1, g2, 2)
        assert not same_branch_at_depth(g1, g2, 4)

    def test_equivalence_relation_at_fixed_depth(self, rng):
        from conftest import rand_unimodular

        h = 6
        # elements of height 12 compared at depth 6 | 12
        pool = [RationalMat.of(12, 0, 0, 1) * rand_unimodular(rng) for _ in range(12)]
        for a in pool:
            assert same_branch_at_depth(a, a, h)
        for a in pool:
            for b in pool:
                assert same_branch_at_depth(a, b, h) == same_branch_at_depth(b, a, h)
        for a in pool:
            for b in pool:
                for c in pool:
                    if same_branch_at_depth(a, b, h) and same_branch_at_depth(b, c, h):
                        assert same_branch_at_depth(a, c, h)

    def test_agreement_coarsens_to_divisors(self, rng):
        from conftest import rand_unimodular

        found = 0
        while found < 10:
            g1 = RationalMat.of(12, 0, 0, 1) * rand_unimodular(rng)
            g2 = RationalMat.of(12, 0, 0, 1) * rand_unimodular(rng)
            if same_branch_at_depth(g1, g2, 12):
                found += 1
                for div in (1, 2, 3, 4, 6):
                    assert same_branch_at_depth(g1, g2, div)


class TestDegenerateSequence:
    def test_d2_matches_unit_powers(self):
        pts = degenerate_sequence(2, 5)
        assert [(p.k, p.n) for p in pts[:3]] == [(1, 1), (7, 5), (41, 29)]
        for p in pts:
            cf = expand(p.alpha)
            assert cf.period == (2 * p.k,)
            assert cf.preperiod == ()
            # the scaled point n*sqrt(d) shares the same single-digit period
            cf2 = expand(mk_surd(0, p.n * p.n * 2, 1))
            assert cf2.period == (2 * p.k,)

    def test_heights_blow_up_periods_stay_bounded(self):
        pts = degenerate_sequence(2, 6)
        ns = [p.n for p in pts]
        assert all(b >= 5 * a for a, b in zip(ns, ns[1:]))
        assert all(len(expand(p.alpha).period) == 1 for p in pts)

    def test_d13(self):
        pts = degenerate_sequence(13, 2)
        assert (pts[0].k, pts[0].n) == (18, 5)
        assert expand(pts[0].alpha).period == (36,)

    def test_no_negative_pell(self):
        with pytest.raises(NoNegativePell):
            degenerate_sequence(3, 2)
