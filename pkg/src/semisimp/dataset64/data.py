from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from functools import lru_cache

from ..algebra.poly import IntPoly
from ..criterion.local import Gaussian

F64_TEXT = r"""
x^{64} - 16x^{61} - 96x^{60} + 144x^{59} + 640x^{58} + 1424x^{57} + 1184x^{56} - 18960x^{55} - 41760x^{54} +
1376x^{53} + 197184x^{52} + 686112x^{51} + 503136x^{50} - 361488x^{49} - 32684x^{48} - 422688x^{47} +
3328944x^{46} + 194144x^{45} - 9106992x^{44} + 12742688x^{43} - 13880240x^{42} - 2172064x^{41} +
42205032x^{40} - 81439424x^{39} + 70223264x^{38} + 5170976x^{37} - 112924176x^{36} + 181443744x^{35} -
120283616x^{34} - 73923872x^{33} + 288559592x^{32} - 363513856x^{31} + 215744096x^{30} + 79679200x^{29} -
318677792x^{28} + 319483168x^{27} - 79843680x^{26} - 217273248x^{25} + 333944272x^{24} - 161711328x^{23} -
190908864x^{22} + 496539520x^{21} - 579760224x^{20} + 422942592x^{19} - 146636736x^{18} - 98472864x^{17} +
232483000x^{16} - 266632896x^{15} + 254039136x^{14} - 234357888x^{13} + 215933024x^{12} -
190302336x^{11} + 152557600x^{10} - 108211328x^9 + 67231888x^8 - 36439104x^7 + 17140160x^6 -
6942400x^5 + 2395872x^4 - 691136x^3 + 159168x^2 - 26240x + 2308
"""

# sha256 of the comma-joined decimal coefficients, constant term first
F64_SHA256 = "b1ddd07e25cbdc7973dd542fed3522fb5aaee94c589c3ac58b72aa550eae08a6"

T_CHARPOLY = (5, 7, 11, 17, 23, 31)
T_TRACES = (5, 7, 11, 13, 17, 19, 23, 31, 73, 137, 257, 337)
CYCLIC_TUPLES = (
    (1, 5, 137, 13),
    (1, 7, 257, 7),
    (1, 11, 73, 19),
    (1, 17, 337, 17),
    (1, 23, 257, 23),
    (1, 31),
)
CENTRAL_PRIME = 337

_TERM = re.compile(r"([+-]?)\s*(\d*)\s*(x(?:\^\{?(\d+)\}?)?)?")


def parse_polynomial_text(text: str) -> IntPoly:
    """Integer polynomial from text like "x^{3} - 2x + 5" (also x^3 and 2*x)."""
    s = re.sub(r"\s+", "", text).replace("*", "").rstrip(".")
    if not s:
        raise ValueError("empty polynomial text")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise ValueError(f"cannot parse polynomial near {s[pos:pos + 20]!r}")
        c = int(m.group(2)) if m.group(2) else 1
        if m.group(1) == "-":
            c = -c
        e = (int(m.group(4)) if m.group(4) else 1) if m.group(3) else 0
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
    deg = max(coeffs)
    return IntPoly(tuple(coeffs.get(i, 0) for i in range(deg + 1)))


def coefficient_digest(f: IntPoly) -> str:
    return hashlib.sha256(",".join(str(c) for c in f.coeffs).encode()).hexdigest()


@lru_cache(maxsize=1)
def f64() -> IntPoly:
    f = parse_polynomial_text(F64_TEXT)
    if f.degree != 64 or f.coeffs[-1] != 1 or f.coeffs[0] != 2308:
        raise AssertionError("embedded degree-64 polynomial is corrupted")
    if coefficient_digest(f) != F64_SHA256:
        raise AssertionError("embedded degree-64 polynomial does not match its checksum")
    return f


def surrogate_charpoly(t: int, n: int = 3) -> tuple:
    """Stand-in characteristic polynomial at t, constant term first.

    The published trace data are not reproduced here. At t = 7 the cubic
    X^3 - (1+4i)X^2 + 7(1+4i)X - 7^3 is used; elsewhere X^3 - X^2 + tX - t^3.
    Both reduce to (X - 1)^3 modulo 1+i. For n = 4 the cubic is multiplied
    by (X - t).
    """
    if t == 7:
        a = Gaussian(1, 4)
        cubic = [Gaussian(-343), 7 * a, -a, Gaussian(1)]
    else:
        cubic = [Gaussian(-t ** 3), Gaussian(t), Gaussian(-1), Gaussian(1)]
    if n == 3:
        return tuple(cubic)
    if n == 4:
        out = [Gaussian(0)] * 5
        for i, c in enumerate(cubic):
            out[i + 1] = out[i + 1] + c
            out[i] = out[i] - c * t
        return tuple(out)
    raise ValueError("surrogate data exist only for n = 3 and n = 4")


@dataclass(frozen=True)
class Dataset:
    f64: IntPoly
    T_charpoly: tuple = T_CHARPOLY
    T_traces: tuple = T_TRACES
    cyclic_tuples: tuple = CYCLIC_TUPLES
    expected: dict = field(default_factory=lambda: {
        "order": 64, "center_order": 2, "max_cyclic_classes": 6, "exponent": 4,
        "central_prime": CENTRAL_PRIME,
    })
    # recorded, not verified here
    tower_metadata: dict = field(default_factory=lambda: {"K1": 4, "K2": 32, "K3": 64})
    catalogue_label: str = "[64, 34] (unverified)"
    excluded_degrees: dict = field(default_factory=lambda: {3: (3, 7), 4: (3, 5, 7, 9, 15)})
    checksum: str = F64_SHA256


def dataset() -> Dataset:
    return Dataset(f64())
