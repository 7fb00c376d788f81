"""Characteristic polynomials from power traces (Newton's identities)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def _div(x, k: int):
    if isinstance(x, int):
        return Fraction(x, k)
    return x / k


def _normalize(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def newton_charpoly(power_traces: Sequence, det=None, n: int | None = None) -> list:
    """Monic degree-n polynomial (constant term first) with the given power sums.

    With ``det`` given, traces of M^1..M^{n-1} suffice and the constant term
    is fixed by the determinant; without it, traces up to M^n are needed.
    """
    if n is None:
        n = len(power_traces) + (1 if det is not None else 0)
    need = n - 1 if det is not None else n
    if len(power_traces) < need:
        raise ValueError(f"need {need} power traces for degree {n}")
    p = list(power_traces)
    e = [1]
    for k in range(1, need + 1):
        acc = 0
        for i in range(1, k + 1):
            term = e[k - i] * p[i - 1]
            acc = acc + term if i % 2 else acc - term
        e.append(_div(acc, k))
    if det is not None:
        e.append(det)
    # X^n - e1 X^{n-1} + e2 X^{n-2} - ...
    coeffs = [None] * (n + 1)
    for k in range(n + 1):
        c = e[k] if k % 2 == 0 else -e[k]
        coeffs[n - k] = _normalize(c)
    return coeffs
