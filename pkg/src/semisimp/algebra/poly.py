"""Dense univariate polynomials over Z and Q.

Coefficients are stored constant term first. The zero polynomial has the
empty coefficient tuple and degree ``ZERO_DEGREE`` (minus infinity), so that
``deg(a*b) == deg(a) + deg(b)`` holds without special cases.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2

ZERO_DEGREE = -math.inf


def _strip(coeffs: Sequence) -> tuple:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


def poly_mul(a: Sequence, b: Sequence) -> list:
    """Schoolbook product of coefficient lists."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def kron_mul(a: Sequence[int], b: Sequence[int]) -> list:
    """Product of integer coefficient lists via Kronecker substitution."""
    if not a or not b:
        return []
    if min(len(a), len(b)) < 8:
        return poly_mul(a, b)
    bound = max(abs(x) for x in a).bit_length() + max(abs(x) for x in b).bit_length()
    slot = bound + min(len(a), len(b)).bit_length() + 2
    nb = (slot + 7) // 8
    slot = 8 * nb
    pa = _pack_signed(a, nb)
    pb = _pack_signed(b, nb)
    count = len(a) + len(b) - 1
    half = 1 << (slot - 1)
    offset = int.from_bytes((bytes(nb - 1) + b"\x80") * count, "little")  # half in every slot
    prod = int(gmpy2.mpz(pa) * gmpy2.mpz(pb)) if slot * count > 20000 else pa * pb
    raw = (prod + offset).to_bytes(nb * count + 1, "little")
    return [int.from_bytes(raw[i * nb:(i + 1) * nb], "little") - half for i in range(count)]


def _pack_signed(a: Sequence[int], nb: int) -> int:
    pos = b"".join((x if x > 0 else 0).to_bytes(nb, "little") for x in a)
    neg = b"".join((-x if x < 0 else 0).to_bytes(nb, "little") for x in a)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def poly_rem_monic(a: list, m: Sequence[int]) -> list:
    """Remainder of a modulo the monic integer polynomial m."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            base = i - dm
            for j in range(dm):
                if m[j]:
                    a[base + j] -= c * m[j]
            a[i] = 0
    del a[dm:]
    return a


def mulmod_monic(a: Sequence[int], b: Sequence[int], m: Sequence[int]) -> list:
    return poly_rem_monic(kron_mul(a, b), m)


def vanishes_at_quotient(f: "IntPoly", num: "IntPoly", den: "IntPoly") -> bool:
    """Exact test of f(num/den) = 0 in Q[x]/(f), for f monic and den a unit there.

    Evaluates den^n * f(num/den) = sum_k f_k num^k den^(n-k) by Horner's rule
    modulo f, entirely over the integers.
    """
    m = f.coeffs
    n = len(m) - 1
    dpows = [[1]]
    dc = poly_rem_monic(list(den.coeffs), m)
    for _ in range(n):
        dpows.append(mulmod_monic(dpows[-1], dc, m))
    hc = poly_rem_monic(list(num.coeffs), m)
    acc = [m[n]]
    for k in range(n - 1, -1, -1):
        acc = mulmod_monic(acc, hc, m)
        if m[k]:
            term = dpows[n - k]
            acc = acc + [0] * (len(term) - len(acc))
            for i, c in enumerate(term):
                acc[i] += m[k] * c
    return not any(acc)


@dataclass(frozen=True)
class _Poly:
    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(tuple(self._coerce(c) for c in self.coeffs)))

    @staticmethod
    def _coerce(c):
        return c

    @classmethod
    def from_roots(cls, roots: Iterable):
        out = [1]
        for r in roots:
            out = poly_mul(out, [-r, 1])
        return cls(tuple(out))

    @classmethod
    def x(cls):
        return cls((0, 1))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def _wrap(self, other):
        if isinstance(other, _Poly):
            return other
        return type(self)((other,))

    def __add__(self, other):
        other = self._wrap(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return self._result(other)([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return type(self)(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if not isinstance(other, _Poly):
            return type(self)(tuple(c * other for c in self.coeffs))
        return self._result(other)(poly_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = type(self)((1,))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def _result(self, other):
        return RatPoly if RatPoly in (type(self), type(other)) else type(self)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_mod(self, x: int, m: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % m
        return acc

    def derivative(self):
        return type(self)(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def compose(self, other):
        acc = type(other)(())
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and c == 1:
                s = mono
            elif mono and c == -1:
                s = "-" + mono
            else:
                s = f"({c})" if isinstance(c, Fraction) and c.denominator != 1 else str(c)
                s = s + ("*" + mono if mono else "")
            terms.append(s)
        return " + ".join(terms).replace("+ -", "- ")


class IntPoly(_Poly):
    """Polynomial with arbitrary-precision integer coefficients."""

    @staticmethod
    def _coerce(c):
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise ValueError(f"non-integral coefficient {c}")
            return c.numerator
        if not isinstance(c, int):
            raise TypeError(f"integer coefficient expected, got {type(c).__name__}")
        return int(c)

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
        return g

    def divmod_monic(self, m: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        if not m.is_monic():
            raise ValueError("divisor must be monic")
        a = list(self.coeffs)
        dm = m.degree
        q = [0] * max(len(a) - dm, 0)
        for i in range(len(a) - 1, dm - 1, -1):
            c = a[i]
            if c:
                q[i - dm] = c
                for j in range(dm + 1):
                    a[i - dm + j] -= c * m.coeffs[j]
        return IntPoly(tuple(q)), IntPoly(tuple(a[:dm]))

    def __mod__(self, m: "IntPoly") -> "IntPoly":
        return self.divmod_monic(m)[1]

    def reduce_mod(self, p: int) -> tuple[int, ...]:
        return _strip(tuple(c % p for c in self.coeffs))

    def to_record(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_record(cls, rec: dict) -> "IntPoly":
        try:
            raw = rec["coeffs"]
        except (KeyError, TypeError):
            raise ValueError("polynomial record needs a 'coeffs' field") from None
        try:
            return cls(tuple(int(str(c)) for c in raw))
        except ValueError as exc:
            raise ValueError(f"malformed 'coeffs' entry: {exc}") from None

    def dumps(self) -> str:
        return json.dumps(self.to_record())

    @classmethod
    def loads(cls, text: str) -> "IntPoly":
        return cls.from_record(json.loads(text))


class RatPoly(_Poly):
    """Polynomial with exact rational coefficients in lowest terms."""

    @staticmethod
    def _coerce(c):
        return c if isinstance(c, Fraction) else Fraction(c)

    def denominator(self) -> int:
        d = 1
        for c in self.coeffs:
            d = math.lcm(d, c.denominator)
        return d

    def numerator_poly(self) -> tuple[IntPoly, int]:
        """(P, D) with self = P / D, P integral and D > 0 minimal."""
        d = self.denominator()
        return IntPoly(tuple((c * d).numerator for c in self.coeffs)), d

    def divmod(self, other: "_Poly"):
        other = other if isinstance(other, RatPoly) else RatPoly(other.coeffs)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        a = list(self.coeffs)
        db = other.degree
        inv = 1 / other.lc
        q = [Fraction(0)] * max(len(a) - db, 0)
        for i in range(len(a) - 1, db - 1, -1):
            c = a[i] * inv
            if c:
                q[i - db] = c
                for j in range(db + 1):
                    a[i - db + j] -= c * other.coeffs[j]
        return RatPoly(tuple(q)), RatPoly(tuple(a[:db]))

    def __mod__(self, other):
        return self.divmod(other)[1]

    def reduce_mod(self, p: int) -> tuple[int, ...]:
        out = []
        for c in self.coeffs:
            if c.denominator % p == 0:
                raise ZeroDivisionError(f"denominator divisible by {p}")
            out.append(c.numerator * pow(c.denominator, -1, p) % p)
        return _strip(tuple(out))

    def to_record(self) -> dict:
        return {"coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs]}

    @classmethod
    def from_record(cls, rec: dict) -> "RatPoly":
        return cls(tuple(Fraction(str(c)) for c in rec["coeffs"]))


def as_intpoly(obj) -> IntPoly:
    """Accept an IntPoly, a coefficient sequence, or a record dict."""
    if isinstance(obj, IntPoly):
        return obj
    if isinstance(obj, dict):
        return IntPoly.from_record(obj)
    return IntPoly(tuple(obj))
