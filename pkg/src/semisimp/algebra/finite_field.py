"""Finite fields F_{p^d} and polynomials over them.

Elements of the prime field are plain ints. Elements of a proper extension
F_p[z]/(T) are d-tuples of ints (constant coordinate first), where T is the
lexicographically smallest monic irreducible of degree d.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterator, Sequence

from . import gfp
from .numtheory import is_prime
from .poly import IntPoly


@lru_cache(maxsize=None)
def smallest_irreducible(p: int, d: int) -> tuple[int, ...]:
    """Monic irreducible of degree d over F_p, smallest in lexicographic order
    of the coefficient vector (constant term first)."""
    if d == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=d):
        if low[0] == 0:
            continue
        cand = list(low) + [1]
        if gfp.is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # unreachable


@dataclass(frozen=True)
class FFDesc:
    p: int
    tower_poly: IntPoly | None = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        t = self.tower_poly
        if t is not None:
            red = t.reduce_mod(self.p)
            if len(red) != len(t.coeffs) or red[-1] != 1:
                raise ValueError("tower polynomial must be monic")
            if t.degree < 2 or not gfp.is_irreducible(list(red), self.p):
                raise ValueError("tower polynomial is not irreducible mod p")
            object.__setattr__(self, "tower_poly", IntPoly(red))

    @classmethod
    def of(cls, p: int, d: int = 1) -> "FFDesc":
        if d < 1:
            raise ValueError("extension degree must be positive")
        return cls(p) if d == 1 else cls(p, IntPoly(smallest_irreducible(p, d)))

    @property
    def d(self) -> int:
        return 1 if self.tower_poly is None else self.tower_poly.degree

    @property
    def size(self) -> int:
        return self.p ** self.d

    @property
    def _tower(self) -> list:
        return list(self.tower_poly.coeffs)

    # element arithmetic -----------------------------------------------------
    @property
    def zero(self):
        return 0 if self.d == 1 else (0,) * self.d

    @property
    def one(self):
        return 1 if self.d == 1 else (1,) + (0,) * (self.d - 1)

    def element(self, value) -> object:
        """Coerce an int or coordinate sequence into a reduced element."""
        p, d = self.p, self.d
        if d == 1:
            if isinstance(value, (tuple, list)):
                value = value[0] if value else 0
            return int(value) % p
        if isinstance(value, int):
            return (value % p,) + (0,) * (d - 1)
        vec = gfp.rem(gfp.from_ints(value, p), self._tower, p)
        return tuple(vec) + (0,) * (d - len(vec))

    def _vec(self, a) -> list:
        return gfp.strip(list(a))

    def _pad(self, v: list):
        return tuple(v) + (0,) * (self.d - len(v))

    def add(self, a, b):
        if self.d == 1:
            return (a + b) % self.p
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        if self.d == 1:
            return (a - b) % self.p
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        if self.d == 1:
            return -a % self.p
        return tuple(-x % self.p for x in a)

    def mul(self, a, b):
        if self.d == 1:
            return a * b % self.p
        prod = gfp.mul(self._vec(a), self._vec(b), self.p)
        return self._pad(gfp.rem(prod, self._tower, self.p))

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.d == 1:
            return pow(a, -1, self.p)
        return self._pad(gfp.invmod(self._vec(a), self._tower, self.p))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        if self.d == 1:
            return pow(a, e, self.p)
        return self._pad(gfp.powmod(self._vec(a), e, self._tower, self.p))

    def is_zero(self, a) -> bool:
        return a == 0 if self.d == 1 else not any(a)

    def frobenius(self, a, times: int = 1):
        return self.pow(a, self.p ** times)

    def elements(self) -> Iterator:
        if self.d == 1:
            yield from range(self.p)
        else:
            yield from itertools.product(range(self.p), repeat=self.d)

    def random_element(self, rng: random.Random):
        if self.d == 1:
            return rng.randrange(self.p)
        return tuple(rng.randrange(self.p) for _ in range(self.d))

    def generator(self):
        """A primitive element (smallest in enumeration order)."""
        n = self.size - 1
        primes = [q for q in range(2, n + 1) if n % q == 0 and is_prime(q)]
        for a in self.elements():
            if self.is_zero(a):
                continue
            if all(self.pow(a, n // q) != self.one for q in primes):
                return a
        raise AssertionError("no generator")  # unreachable


@dataclass(frozen=True)
class FFPoly:
    field: FFDesc
    coeffs: tuple = dc_field(default=())

    def __post_init__(self):
        fd = self.field
        cs = [fd.element(c) for c in self.coeffs]
        while cs and fd.is_zero(cs[-1]):
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_intpoly(cls, f: IntPoly, field: FFDesc) -> "FFPoly":
        return cls(field, tuple(f.coeffs))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else IntPoly(()).degree

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "FFPoly") -> "FFPoly":
        fd = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        z = fd.zero
        return FFPoly(fd, tuple(fd.add(self.coeffs[i] if i < len(self.coeffs) else z,
                                       other.coeffs[i] if i < len(other.coeffs) else z)
                                for i in range(n)))

    def __neg__(self) -> "FFPoly":
        return FFPoly(self.field, tuple(self.field.neg(c) for c in self.coeffs))

    def __sub__(self, other: "FFPoly") -> "FFPoly":
        return self + (-other)

    def __mul__(self, other: "FFPoly") -> "FFPoly":
        fd = self.field
        if fd.d == 1:
            return FFPoly(fd, tuple(gfp.mul(list(self.coeffs), list(other.coeffs), fd.p)))
        if not self.coeffs or not other.coeffs:
            return FFPoly(fd, ())
        out = [fd.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if fd.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = fd.add(out[i + j], fd.mul(a, b))
        return FFPoly(fd, tuple(out))

    def scale(self, c) -> "FFPoly":
        return FFPoly(self.field, tuple(self.field.mul(c, a) for a in self.coeffs))

    def monic(self) -> "FFPoly":
        if not self.coeffs:
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def divmod(self, other: "FFPoly") -> tuple["FFPoly", "FFPoly"]:
        fd = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if fd.d == 1:
            q, r = gfp.divmod_(list(self.coeffs), list(other.coeffs), fd.p)
            return FFPoly(fd, tuple(q)), FFPoly(fd, tuple(r))
        r = list(self.coeffs)
        db = other.degree
        inv = fd.inv(other.coeffs[-1])
        q = [fd.zero] * max(len(r) - db, 0)
        for i in range(len(r) - 1, db - 1, -1):
            c = fd.mul(r[i], inv)
            if fd.is_zero(c):
                continue
            q[i - db] = c
            for j in range(db + 1):
                r[i - db + j] = fd.sub(r[i - db + j], fd.mul(c, other.coeffs[j]))
        return FFPoly(fd, tuple(q)), FFPoly(fd, tuple(r[:db]))

    def __mod__(self, other: "FFPoly") -> "FFPoly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "FFPoly") -> "FFPoly":
        return self.divmod(other)[0]

    def gcd(self, other: "FFPoly") -> "FFPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def powmod(self, e: int, m: "FFPoly") -> "FFPoly":
        result = FFPoly(self.field, (self.field.one,)) % m
        base = self % m
        while e:
            if e & 1:
                result = (result * base) % m
            e >>= 1
            if e:
                base = (base * base) % m
        return result

    def __call__(self, x):
        fd = self.field
        acc = fd.zero
        for c in reversed(self.coeffs):
            acc = fd.add(fd.mul(acc, x), c)
        return acc

    def derivative(self) -> "FFPoly":
        fd = self.field
        return FFPoly(fd, tuple(fd.mul(fd.element(i), c) for i, c in enumerate(self.coeffs) if i))

    def key(self) -> tuple:
        """Sort key: degree, then coefficient vector constant term first."""
        flat = tuple(c if isinstance(c, tuple) else (c,) for c in self.coeffs)
        return (len(self.coeffs), flat)

    def to_intpoly(self) -> IntPoly:
        if self.field.d != 1:
            raise ValueError("only prime-field polynomials map to IntPoly")
        return IntPoly(self.coeffs)

    def __str__(self):
        if self.field.d == 1:
            return str(IntPoly(self.coeffs))
        return " + ".join(f"{c}*x^{i}" for i, c in enumerate(self.coeffs) if any(c)) or "0"


class Factorization(list):
    """List of (FFPoly, multiplicity) pairs that also records its seed and unit."""

    def __init__(self, items, seed: int, unit: int):
        super().__init__(items)
        self.seed = seed
        self.unit = unit


def factor_mod_p(f: IntPoly, field: FFDesc, seed: int = 0) -> Factorization:
    """Factor f over the prime field into monic irreducibles.

    Output is sorted by degree, then by coefficient vector. The product of
    the factors with multiplicity times ``unit`` equals f mod p.
    """
    if field.d != 1:
        raise ValueError("factor_mod_p works over prime fields only")
    p = field.p
    red = gfp.from_ints(f.coeffs, p)
    if not red:
        raise ValueError("zero input")
    unit = red[-1]
    pieces = gfp.factor(red, p, seed) if len(red) > 1 else []
    return Factorization([(FFPoly(field, tuple(g)), e) for g, e in pieces], seed, unit)


def roots_in_extension(g: Sequence[int], field: FFDesc, seed: int = 0) -> list:
    """All roots in ``field`` of a squarefree g over its prime subfield whose
    irreducible factors have degree dividing field.d. Sorted by coordinates."""
    p = field.p
    rng = random.Random(seed)
    out = []
    for h, _ in gfp.factor(gfp.from_ints(g, p), p, seed):
        e = len(h) - 1
        if field.d % e:
            raise ValueError(f"factor of degree {e} has no roots in F_{p}^{field.d}")
        root = _one_root(FFPoly(field, tuple(h)), field, rng)
        r = root
        for _ in range(e):
            out.append(r)
            r = field.frobenius(r)
    return sorted(out, key=lambda a: a if isinstance(a, tuple) else (a,))


def _one_root(h: FFPoly, field: FFDesc, rng: random.Random):
    Q = field.size
    one = FFPoly(field, (field.one,))
    while h.degree > 1:
        if field.p == 2:
            # absolute trace of c*x splits the roots by the trace of c*root
            t = FFPoly(field, (field.zero, field.random_element(rng))) % h
            b = t
            for _ in range(field.d - 1):
                t = (t * t) % h
                b = b + t
        else:
            a = FFPoly(field, (field.random_element(rng), field.one))
            b = a.powmod((Q - 1) // 2, h) - one
        d = b.gcd(h)
        if 0 < d.degree < h.degree:
            h = d if 2 * d.degree <= h.degree else (h // d).monic()
    return field.neg(h.monic().coeffs[0])
