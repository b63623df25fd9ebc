"""Integer utilities shared across the package.

Everything here is exact big-integer arithmetic: square detection,
factoring (trial division + Pollard rho), p-adic valuations, Kronecker
symbols, and logarithms of huge quadratic integers computed through bit
lengths rather than floats.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

LN2 = math.log(2)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for 64-bit-ish inputs, probabilistic above."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # These bases are a proven deterministic set below 3.3 * 10^24.
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        x = rng.randrange(2, n)
        y = x
        c = rng.randrange(1, n)
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def factorint(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {prime: exponent}; factorint(0) raises."""
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    out: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n == 1:
        return out
    rng = random.Random(0xC0FFEE ^ n)
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack.extend((r, r))
            continue
        d = _pollard_rho(m, rng)
        stack.extend((d, m // d))
    return dict(sorted(out.items()))


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of |n|."""
    ds = [1]
    for p, e in factorint(n).items():
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def squarefree_kernel(n: int) -> int:
    """Largest squarefree d0 with n = d0 * s^2 (n > 0)."""
    if n <= 0:
        raise ValueError("positive input required")
    d0 = 1
    for p, e in factorint(n).items():
        if e % 2:
            d0 *= p
    return d0


def valuation(n: int, p: int) -> int:
    """v_p(n) for n != 0."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n)."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -1
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v % 2 and a % 2 == 0:
        return 0
    if v % 2 and abs(a) % 8 in (3, 5):
        sign = -sign
    a %= n
    # Jacobi symbol on the odd part.
    t = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                t = -t
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            t = -t
        a %= n
    if n != 1:
        return 0
    return sign * t


def sqrt_scaled(d: int, bits: int) -> int:
    """floor(2^bits * sqrt(d)) computed exactly."""
    return math.isqrt(d << (2 * bits))


def log_big(n: int) -> float:
    """log of a huge positive integer without overflowing floats."""
    if n <= 0:
        raise ValueError("positive input required")
    s = n.bit_length() - 53
    if s <= 0:
        return math.log(n)
    return math.log(n >> s) + s * LN2


def log_quadratic(x: Fraction, y: Fraction, d: int) -> float:
    """log(x + y*sqrt(d)) for a value > 1, exact integers underneath.

    Scales everything by 2^64 so small or enormous units both come out with
    full double precision.
    """
    bits = 64
    q = x.denominator * y.denominator
    a = x.numerator * y.denominator  # x = a/q
    b = y.numerator * x.denominator  # y = b/q
    if b < 0:
        # x + y*sqrt(d) = (a - |b| sqrt(d)) / q = (a^2 - b^2 d)/(q (a + |b| sqrt d))
        nn = a * a - b * b * d
        scaled = (a << bits) + (-b) * sqrt_scaled(d, bits)
        return log_big(nn) - log_big(q) - (log_big(scaled) - bits * LN2)
    scaled = (a << bits) + b * sqrt_scaled(d, bits)
    return (log_big(scaled) - bits * LN2) - log_big(q)
