"""Numerology of the construction: tower depth and the a-priori rank bound."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import gcd

from ..algebra.numtheory import is_prime


@dataclass(frozen=True)
class PlanReport:
    n: int
    p: int
    edeg: int
    m: int
    epsilon: int
    N: int
    r: int
    lambda_steps: int
    depth: int

    def as_dict(self) -> dict:
        return asdict(self)

    def render(self) -> str:
        return (f"n={self.n} p={self.p} edeg={self.edeg} m={self.m} epsilon={self.epsilon} "
                f"N={self.N} r={self.r} lambda={self.lambda_steps} depth={self.depth}")


def min_exponent(p: int, n: int) -> int:
    """Least m with p^m >= n."""
    m, pm = 0, 1
    while pm < n:
        m += 1
        pm *= p
    return m


def ceil_log2(r: int) -> int:
    """Least l with 2^l >= r (r >= 1)."""
    return (r - 1).bit_length()


def plan(n: int, p: int, edeg: int) -> PlanReport:
    if n < 2:
        raise ValueError("n must be at least 2")
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if edeg < 1:
        raise ValueError("edeg must be at least 1")
    m = min_exponent(p, n)
    eps = 1 if p == 2 else 0
    N = n * edeg
    r = N ** (2 * (1 + eps)) * N * (N - 1) // 2
    lam = ceil_log2(r)
    return PlanReport(n, p, edeg, m, eps, N, r, lam, lam + eps + m)


def gcd_condition(n: int, residue_q: int) -> bool:
    """Is x -> x^n a bijection of the multiplicative group of the residue field?"""
    return gcd(n, residue_q - 1) == 1


def gl_order(n: int, q: int) -> int:
    out = 1
    qn = q ** n
    for i in range(n):
        out *= qn - q ** i
    return out


def residual_extension_degrees(n: int, residue_q: int, p: int) -> list[int]:
    """Degrees d that a residual image extension could have: d divides
    #GL(n, F_q), is prime to p, and is at most (q^n - 1)/(q - 1)."""
    q = residue_q
    bound = (q ** n - 1) // (q - 1)
    order = gl_order(n, q)
    return [d for d in range(1, bound + 1) if order % d == 0 and d % p]
