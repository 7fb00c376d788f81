"""Coefficient fields Q and Q(i), their residue maps, and the
congruent-eigenvalue test."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..algebra import gfp
from ..algebra.numtheory import is_prime


class ValuationError(ValueError):
    pass


@dataclass(frozen=True)
class Gaussian:
    """Exact element a + b i of Q(i)."""
    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def of(cls, x) -> "Gaussian":
        if isinstance(x, Gaussian):
            return x
        if isinstance(x, str):
            return parse_gaussian(x)
        if isinstance(x, complex):
            raise TypeError("floating-point input is not accepted")
        return cls(Fraction(x))

    def __add__(self, o):
        o = Gaussian.of(o)
        return Gaussian(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-Gaussian.of(o))

    def __rsub__(self, o):
        return Gaussian.of(o) - self

    def __mul__(self, o):
        o = Gaussian.of(o)
        return Gaussian(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = Gaussian.of(o)
        nrm = o.re * o.re + o.im * o.im
        if nrm == 0:
            raise ZeroDivisionError("division by zero")
        return self * Gaussian(o.re / nrm, -o.im / nrm)

    def __pow__(self, e: int):
        out = Gaussian(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, o):
        try:
            o = Gaussian.of(o)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re or self.im)

    def __str__(self):
        if not self.im:
            return str(self.re)
        im = "" if self.im == 1 else "-" if self.im == -1 else str(self.im)
        if not self.re:
            return f"{im}i"
        sign = "+" if self.im > 0 else ""
        return f"{self.re}{sign}{im}i"


_GAUSS = re.compile(r"^\s*([+-]?\d+(?:/\d+)?)?\s*(?:([+-])\s*(\d+(?:/\d+)?)?\s*\*?\s*i)?\s*$")
_PURE_IM = re.compile(r"^\s*([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*i\s*$")


def parse_gaussian(text: str) -> Gaussian:
    """Parse "a", "a+bi", "a-bi", "bi", "-i" (a, b decimal integers or fractions)."""
    m = _PURE_IM.match(text)
    if m:
        b = Fraction(m.group(2) or 1)
        return Gaussian(0, -b if m.group(1) == "-" else b)
    m = _GAUSS.match(text)
    if not m or (m.group(1) is None and m.group(2) is None):
        raise ValueError(f"cannot parse gaussian rational {text!r}")
    a = Fraction(m.group(1) or 0)
    b = Fraction(0)
    if m.group(2):
        b = Fraction(m.group(3) or 1)
        if m.group(2) == "-":
            b = -b
    return Gaussian(a, b)


def _v(x: int, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


@dataclass(frozen=True)
class LocalFieldDesc:
    p: int
    base: str = "rational"      # "rational" (Q at p) or "gaussian" (Q(i) at 1+i, p = 2)

    def __post_init__(self):
        if self.base not in ("rational", "gaussian"):
            raise ValueError(f"unknown base {self.base!r}")
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.base == "gaussian" and self.p != 2:
            raise ValueError("the gaussian base is only supported at p = 2")

    @property
    def residue_q(self) -> int:
        return self.p

    @property
    def uniformizer_note(self) -> str:
        return "1+i" if self.base == "gaussian" else str(self.p)

    @property
    def uniformizer(self):
        return Gaussian(1, 1) if self.base == "gaussian" else Fraction(self.p)

    def coerce(self, x):
        if self.base == "gaussian":
            return Gaussian.of(x)
        if isinstance(x, Gaussian):
            if x.im:
                raise ValueError(f"non-rational coefficient {x} for a rational base")
            return x.re
        if isinstance(x, str):
            return Fraction(x.strip())
        if isinstance(x, float):
            raise TypeError("floating-point input is not accepted")
        return Fraction(x)

    def valuation(self, x) -> float:
        """Normalized valuation of x (infinity for 0)."""
        x = self.coerce(x)
        if not x:
            return float("inf")
        if self.base == "rational":
            return _v(x.numerator, self.p) - _v(x.denominator, self.p)
        # v_{1+i}(a + bi) = v_2(a^2 + b^2)
        nrm = x.re * x.re + x.im * x.im
        return _v(nrm.numerator, 2) - _v(nrm.denominator, 2)

    def reduce(self, x) -> int:
        """Image in the residue field F_p of an integral element."""
        x = self.coerce(x)
        if self.valuation(x) < 0:
            raise ValuationError("valuation violation")
        if self.base == "rational":
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        # Z_(2)[i]/(1+i) = F_2 and i maps to 1
        s = x.re + x.im
        return s.numerator * pow(s.denominator, -1, 2) % 2


@dataclass(frozen=True)
class CharPolyRecord:
    t: int
    coeffs: tuple     # constant term first, monic

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def check(self, local: LocalFieldDesc, n: int) -> "CharPolyRecord":
        cs = tuple(local.coerce(c) for c in self.coeffs)
        if len(cs) != n + 1 or cs[-1] != 1:
            raise ValueError(f"record at t={self.t} is not monic of degree {n}")
        return CharPolyRecord(self.t, cs)


def rescale(coeffs: Sequence, local: LocalFieldDesc, v: int) -> list:
    """Coefficients of u^{-nv} P(u^v X), i.e. eigenvalues divided by u^v."""
    n = len(coeffs) - 1
    u = local.uniformizer
    out = []
    for k, c in enumerate(coeffs):
        e = v * (k - n)
        f = u ** abs(e)
        out.append(c * f if e >= 0 else c / f)
    return out


def residue_power_root(coeffs: Sequence, local: LocalFieldDesc, n: int, v: int = 0) -> int | None:
    """lam if the reduction of P is (X - lam)^n, else None.

    A polynomial (X - lam)^n with coefficients in F_q forces lam to be fixed
    by Frobenius, so the root always lies in the base residue field and it
    suffices to factor over F_q.
    """
    cs = [local.coerce(c) for c in coeffs]
    if v:
        cs = rescale(cs, local, v)
    red = gfp.strip([local.reduce(c) for c in cs])
    p = local.residue_q
    if len(red) != n + 1:
        return None
    fac = gfp.factor(red, p)
    if len(fac) != 1 or fac[0][1] != n or len(fac[0][0]) != 2:
        return None
    return (-fac[0][0][0]) % p


def congruent_eigenvalues(P1: CharPolyRecord, P2: CharPolyRecord, local: LocalFieldDesc, n: int,
                          v: int = 0) -> dict:
    l1 = residue_power_root(P1.coeffs, local, n, v)
    l2 = residue_power_root(P2.coeffs, local, n, v)
    ok = l1 is not None and l1 == l2
    return {"pass": ok, "lambda_residue": l1 if ok else None}
