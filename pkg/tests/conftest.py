import random

import pytest

from qcf.surd import RationalMat, Surd, mk_surd
from qcf._intmath import is_square


def rand_surd(rng: random.Random, dmax: int = 100_000, span: int = 300) -> Surd:
    while True:
        d = rng.randint(2, dmax)
        if is_square(d):
            continue
        p = rng.randint(-span, span)
        q = rng.randint(-span, span)
        if q == 0:
            continue
        return mk_surd(p, d, q)


def rand_unimodular(rng: random.Random, steps: int = 6) -> RationalMat:
    """Random element of GL2(Z) as a short product of elementary matrices."""
    m = RationalMat.identity()
    for _ in range(steps):
        n = rng.randint(-4, 4)
        kind = rng.randrange(4)
        if kind == 0:
            m = m * RationalMat(1, n, 0, 1)
        elif kind == 1:
            m = m * RationalMat(1, 0, n, 1)
        elif kind == 2:
            m = m * RationalMat.swap()
        else:
            m = m * RationalMat(-1, 0, 0, 1)
    return m


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260810)
