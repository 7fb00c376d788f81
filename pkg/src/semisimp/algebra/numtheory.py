"""Small integer helpers shared by the algebra layer."""

from __future__ import annotations

import math
from fractions import Fraction

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for n < 3.3e24 and very likely beyond."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
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


def primes_from(start: int = 2):
    """Yield the primes >= start in increasing order."""
    n = max(start, 2)
    while True:
        if is_prime(n):
            yield n
        n += 1


def primes_between(lo: int, hi: int) -> list[int]:
    """Primes p with lo <= p <= hi."""
    return [n for n in range(max(lo, 2), hi + 1) if is_prime(n)]


def factor_int(n: int) -> dict[int, int]:
    """Factor a small positive integer by trial division."""
    out: dict[int, int] = {}
    n = abs(n)
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def iroot_ceil(a: int, k: int) -> int:
    """Smallest integer r >= 0 with r**k >= a (a >= 0)."""
    if a <= 0:
        return 0
    r = int(round(a ** (1.0 / k))) if a.bit_length() < 1000 else 1 << (a.bit_length() // k + 1)
    while r ** k < a:
        r += 1
    while r > 0 and (r - 1) ** k >= a:
        r -= 1
    return r


def balanced(a: int, m: int) -> int:
    """Representative of a mod m in (-m/2, m/2]."""
    a %= m
    return a - m if 2 * a > m else a


def rational_reconstruct(a: int, m: int, num_bound: int | None = None,
                         den_bound: int | None = None) -> Fraction | None:
    """Find n/d = a (mod m) with |n| <= num_bound and 0 < d <= den_bound.

    Defaults to the symmetric bounds floor(sqrt(m/2)), which make the answer
    unique when it exists. Returns None if no such fraction exists.
    """
    if num_bound is None or den_bound is None:
        b = math.isqrt(m // 2)
        num_bound = b if num_bound is None else num_bound
        den_bound = b if den_bound is None else den_bound
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > num_bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > den_bound:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    if math.gcd(s1, m) != 1:
        return None
    return Fraction(r1, s1)


def multiplicative_order(a: int, n: int) -> int:
    """Order of a in (Z/nZ)^*."""
    if math.gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    k, x = 1, a % n
    while x != 1 % n:
        x = x * a % n
        k += 1
    return k
