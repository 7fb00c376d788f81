"""Exact integral LLL reduction and algebraic-dependency reconstruction."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .poly import RatPoly


class DegenerateBasisError(ValueError):
    pass


@dataclass(frozen=True)
class IntLatticeBasis:
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("lattice rows must share one dimension")
        object.__setattr__(self, "rows", rows)

    @property
    def dim(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def gram_determinant(self) -> int:
        """det(B B^T), the squared covolume; exact via fraction-free elimination."""
        g = [[_dot(a, b) for b in self.rows] for a in self.rows]
        return _bareiss_det(g)


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _bareiss_det(m: list[list[int]]) -> int:
    m = [list(r) for r in m]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def lll_reduce(basis: IntLatticeBasis, delta: Fraction = Fraction(3, 4)) -> IntLatticeBasis:
    """Integral LLL (all Gram-Schmidt data kept as exact integers).

    Uses the subdeterminants d_i and scaled coefficients lambda_{k,j} = d_j mu_{k,j},
    so no rational arithmetic is needed.
    """
    b = [list(r) for r in basis.rows]
    n = len(b)
    if n == 0:
        return basis
    a_num, a_den = delta.numerator, delta.denominator
    d = [1] * (n + 1)          # d[0] = 1, d[i+1] = det Gram of first i+1 rows
    lam = [[0] * n for _ in range(n)]

    def gram_row(k: int):
        for j in range(k + 1):
            u = _dot(b[k], b[j])
            for i in range(j):
                u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
            if j < k:
                lam[k][j] = u
            else:
                if u == 0:
                    raise DegenerateBasisError("degenerate basis")
                d[k + 1] = u

    def red(k: int, l: int):
        if 2 * abs(lam[k][l]) > d[l + 1]:
            q = (2 * lam[k][l] + d[l + 1]) // (2 * d[l + 1])
            b[k] = [x - q * y for x, y in zip(b[k], b[l])]
            lam[k][l] -= q * d[l + 1]
            for i in range(l):
                lam[k][i] -= q * lam[l][i]

    def swap(k: int, kmax: int):
        b[k], b[k - 1] = b[k - 1], b[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lm = lam[k][k - 1]
        B = (d[k - 1] * d[k + 1] + lm * lm) // d[k]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - lm * t) // d[k]
            lam[i][k - 1] = (B * t + lm * lam[i][k]) // d[k + 1]
        d[k] = B

    gram_row(0)
    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            gram_row(k)
        red(k, k - 1)
        lk = lam[k][k - 1]
        if a_den * d[k + 1] * d[k - 1] < a_num * d[k] * d[k] - a_den * lk * lk:
            swap(k, kmax)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    return IntLatticeBasis(tuple(tuple(r) for r in b))


def algdep_reconstruct(powers: Sequence[Sequence[int]], target: Sequence[int], q: int, k: int,
                       denom_bound: int, verify: Callable[[RatPoly], bool] | None = None,
                       weight: int | None = None) -> RatPoly | None:
    """Find g of degree < m with g(alpha) = beta modulo q^k.

    ``powers`` are alpha^0..alpha^{m-1} and ``target`` is beta, each given as
    a coordinate vector in the unramified ring mod q^k. The relation lattice
    has m coefficient slots, one target slot and one congruence row per
    coordinate. ``verify`` (exact check of the candidate) is applied before a
    result is returned; None means the precision was insufficient.
    """
    m = len(powers)
    dcoords = len(target)
    M = q ** k
    W = weight if weight is not None else M
    rows = []
    for i in range(m + 1):
        vec = powers[i] if i < m else [-c for c in target]
        row = [0] * (m + 1) + [W * (c % M) for c in vec]
        row[i] = 1
        rows.append(row)
    for j in range(dcoords):
        row = [0] * (m + 1 + dcoords)
        row[m + 1 + j] = W * M
        rows.append(row)
    try:
        red = lll_reduce(IntLatticeBasis(tuple(rows)))
    except DegenerateBasisError:
        return None
    for row in sorted(red.rows, key=lambda r: _dot(r, r)):
        if any(row[m + 1:]):
            continue
        den = row[m]
        if den == 0 or abs(den) > denom_bound:
            continue
        g = RatPoly(tuple(Fraction(c, den) for c in row[:m]))
        if verify is None or verify(g):
            return g
        break
    return None
