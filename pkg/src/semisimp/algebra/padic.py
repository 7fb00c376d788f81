"""Unramified extensions of Z_q truncated at q^k, and Hensel lifting of roots.

The ring is Z[z]/(q^k, T(z)) with T the canonical tower polynomial of the
residue field F_{q^d}; elements are d-tuples of ints in [0, q^k).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm
from typing import Sequence

from . import gfp
from .finite_field import FFDesc, roots_in_extension
from .poly import IntPoly


class NotSeparableError(ValueError):
    pass


@dataclass(frozen=True)
class PadicRing:
    q: int
    k: int
    tower: tuple  # monic, degree d; (0, 1) when d == 1
    modulus: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "modulus", self.q ** self.k)

    @classmethod
    def of(cls, q: int, d: int, k: int) -> "PadicRing":
        fd = FFDesc.of(q, d)
        return cls(q, k, (0, 1) if d == 1 else fd.tower_poly.coeffs)

    @property
    def d(self) -> int:
        return len(self.tower) - 1

    @property
    def residue_field(self) -> FFDesc:
        return FFDesc.of(self.q, self.d)

    def with_precision(self, k: int) -> "PadicRing":
        return PadicRing(self.q, k, self.tower)

    def zero(self):
        return (0,) * self.d

    def one(self):
        return (1,) + (0,) * (self.d - 1)

    def from_int(self, a: int):
        return (a % self.modulus,) + (0,) * (self.d - 1)

    def reduce(self, a):
        M = self.modulus
        return tuple(x % M for x in a)

    def add(self, a, b):
        M = self.modulus
        return tuple((x + y) % M for x, y in zip(a, b))

    def sub(self, a, b):
        M = self.modulus
        return tuple((x - y) % M for x, y in zip(a, b))

    def neg(self, a):
        M = self.modulus
        return tuple(-x % M for x in a)

    def scale(self, a, c: int):
        M = self.modulus
        return tuple(x * c % M for x in a)

    def mul(self, a, b):
        M = self.modulus
        d = len(a)
        if d == 1:
            return (a[0] * b[0] % M,)
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        t = self.tower
        for i in range(2 * d - 2, d - 1, -1):
            c = prod[i]
            if c:
                for j in range(d):
                    if t[j]:
                        prod[i - d + j] -= c * t[j]
        return tuple(c % M for c in prod[:d])

    def pow(self, a, e: int):
        result = self.one()
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def residue(self, a):
        """Image in the residue field F_{q^d} (an int when d == 1)."""
        return self.residue_field.element([x % self.q for x in a]) if self.d > 1 else a[0] % self.q

    def residue_key(self, a) -> tuple:
        return tuple(x % self.q for x in a)

    def inv(self, a):
        fd = self.residue_field
        r = fd.inv(self.residue(a))
        v = (r,) if fd.d == 1 else tuple(r)
        prec = 1
        two = self.from_int(2)
        while prec < self.k:
            prec = min(2 * prec, self.k)
            sub = self.with_precision(prec)
            v = sub.mul(v, sub.sub(two, sub.mul(a, v)))
        return self.reduce(v)

    def eval(self, coeffs: Sequence[int], a):
        """Evaluate an integer polynomial (constant term first) at a."""
        M = self.modulus
        acc = self.zero()
        for c in reversed(coeffs):
            acc = self.mul(acc, a)
            acc = ((acc[0] + c) % M,) + acc[1:]
        return acc

    def is_integer(self, a) -> bool:
        return not any(a[1:])


@dataclass(frozen=True)
class PadicRootSet:
    f: IntPoly
    ring: PadicRing
    roots: tuple

    @property
    def q(self) -> int:
        return self.ring.q

    @property
    def d(self) -> int:
        return self.ring.d

    @property
    def k(self) -> int:
        return self.ring.k

    def residues(self) -> list[tuple]:
        return [self.ring.residue_key(r) for r in self.roots]

    def as_ints(self) -> list[int]:
        if self.d != 1:
            raise ValueError("roots are not rational when d > 1")
        return [r[0] for r in self.roots]

    def relift(self, k: int) -> "PadicRootSet":
        """The same roots at precision q^k (k may exceed the current precision)."""
        if k <= self.k:
            ring = self.ring.with_precision(k)
            return PadicRootSet(self.f, ring, tuple(ring.reduce(r) for r in self.roots))
        ring = self.ring.with_precision(k)
        lifted = tuple(_newton(self.f, ring, r, self.k) for r in self.roots)
        return PadicRootSet(self.f, ring, lifted)

    def index_of(self, a) -> int:
        """Label of the root congruent to a modulo q."""
        key = self.ring.residue_key(a)
        for i, r in enumerate(self.roots):
            if self.ring.residue_key(r) == key:
                return i
        raise KeyError("element does not reduce to a root")


def _newton(f: IntPoly, ring: PadicRing, r, start: int):
    """Lift r, a root correct mod q^start, to the precision of ring."""
    df = f.derivative().coeffs
    fc = f.coeffs
    prec = start
    v = ring.with_precision(prec).inv(ring.with_precision(prec).eval(df, r))
    while prec < ring.k:
        prec = min(2 * prec, ring.k)
        sub = ring.with_precision(prec)
        r = sub.sub(r, sub.mul(sub.eval(fc, r), v))
        v = sub.mul(v, sub.sub(sub.from_int(2), sub.mul(sub.eval(df, r), v)))
    return ring.reduce(r)


def residue_degrees(f: IntPoly, q: int, seed: int = 0) -> list[int] | None:
    """Degrees of the irreducible factors of f mod q, or None if f is not
    separable mod q (or drops degree)."""
    red = gfp.from_ints(f.coeffs, q)
    if len(red) != len(f.coeffs):
        return None
    if len(gfp.gcd(red, gfp.deriv(red, q), q)) > 1:
        return None
    return sorted(len(g) - 1 for g, _ in gfp.factor(red, q, seed))


def hensel_lift_roots(f: IntPoly, q: int, d: int | None = None, k: int = 1,
                      seed: int = 0) -> PadicRootSet:
    """All roots of f in the degree-d unramified extension of Q_q, mod q^k."""
    degs = residue_degrees(f, q, seed)
    if degs is None:
        raise NotSeparableError("ramified/index prime, choose another q")
    need = lcm(*degs) if degs else 1
    if d is None:
        d = need
    if d % need:
        raise ValueError(f"extension degree {d} does not contain all roots (need a multiple of {need})")
    ring = PadicRing.of(q, d, k)
    fd = ring.residue_field
    red = gfp.monic(gfp.from_ints(f.coeffs, q), q)
    base = roots_in_extension(red, fd, seed)
    start = ring.with_precision(1)
    roots = []
    for r0 in base:
        vec = (r0,) if d == 1 else tuple(r0)
        roots.append(_newton(f, ring, start.reduce(vec), 1) if k > 1 else start.reduce(vec))
    return PadicRootSet(f, ring, tuple(roots))
