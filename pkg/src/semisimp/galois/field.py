"""Number fields given by a monic integer polynomial."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice

from ..algebra import gfp
from ..algebra.numtheory import primes_from
from ..algebra.poly import IntPoly


@dataclass(frozen=True)
class NumberFieldDesc:
    f: IntPoly
    disc_radical_hint: tuple = ()
    irreducibility_assumed: bool = False

    @classmethod
    def from_poly(cls, f: IntPoly, disc_radical_hint=(), screen_primes: int = 40) -> "NumberFieldDesc":
        """Validate f and record whether irreducibility was proved or assumed."""
        if not f.is_monic():
            raise ValueError("defining polynomial must be monic")
        if f.degree < 1:
            raise ValueError("defining polynomial must have positive degree")
        proved = irreducibility_screen(f, screen_primes)
        return cls(f, tuple(disc_radical_hint), not proved)

    @property
    def degree(self) -> int:
        return self.f.degree


def _has_rational_root(f: IntPoly) -> bool:
    c0 = f[0]
    if c0 == 0:
        return True
    c0 = abs(c0)
    small = [d for d in range(1, min(c0, 10 ** 6) + 1) if c0 % d == 0]
    if c0 > 10 ** 6:
        small.append(c0)
    return any(f(s) == 0 for d in small for s in (d, -d))


def irreducibility_screen(f: IntPoly, screen_primes: int = 40) -> bool:
    """True if f is proved irreducible over Q; raises if a rational root is found.

    Proof comes either from an irreducible reduction, or from the degree
    pattern: a factor of degree k over Q would have, modulo every good prime,
    a subset of the factor degrees summing to k.
    """
    n = f.degree
    if n == 1:
        return True
    if _has_rational_root(f):
        raise ValueError("polynomial has a rational root, so it is reducible")
    possible = set(range(1, n))
    for p in islice((p for p in primes_from(2) if f[n] % p), 4 * screen_primes):
        red = gfp.from_ints(f.coeffs, p)
        if len(gfp.gcd(red, gfp.deriv(red, p), p)) > 1:
            continue
        degs = [i for i, g in gfp.distinct_degree(gfp.monic(red, p), p) for _ in range((len(g) - 1) // i)]
        if len(degs) == 1:
            return True
        sums = {0}
        for d in degs:
            sums |= {s + d for s in sums}
        possible &= sums
        if not possible:
            return True
        screen_primes -= 1
        if screen_primes == 0:
            break
    return False


def normality_obstruction(f: IntPoly, screen_primes: int = 40) -> tuple[int, list[int]] | None:
    """A good prime where f has irreducible factors of unequal degree, if any.

    Such a prime proves Q[x]/(f) is not Galois over Q. None means the screen
    found nothing (it is not a proof of normality).
    """
    n = f.degree
    for p in islice((p for p in primes_from(2) if f[n] % p), 4 * screen_primes):
        red = gfp.from_ints(f.coeffs, p)
        if len(gfp.gcd(red, gfp.deriv(red, p), p)) > 1:
            continue
        degs = sorted(i for i, g in gfp.distinct_degree(gfp.monic(red, p), p) for _ in range((len(g) - 1) // i))
        if len(set(degs)) > 1:
            return p, degs
        screen_primes -= 1
        if screen_primes == 0:
            break
    return None
