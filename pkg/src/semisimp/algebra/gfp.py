"""Fast routines for polynomials over a prime field F_p.

Polynomials are plain lists of ints in [0, p), constant term first, with no
trailing zeros (the zero polynomial is ``[]``). These are the workhorses
behind factorization; the typed wrappers live in ``finite_field``.
"""

from __future__ import annotations

import random

_KRONECKER_MIN = 12


def strip(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def from_ints(coeffs, p: int) -> list:
    return strip([c % p for c in coeffs])


def add(a: list, b: list, p: int) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return strip(out)


def sub(a: list, b: list, p: int) -> list:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return strip(out)


def scale(a: list, c: int, p: int) -> list:
    c %= p
    if not c:
        return []
    return [x * c % p for x in a]


def _slot_bytes(p: int, n: int) -> int:
    bits = 2 * (p - 1).bit_length() + n.bit_length() + 1
    return (bits + 7) // 8


def _pack(a: list, nb: int) -> int:
    return int.from_bytes(b"".join(c.to_bytes(nb, "little") for c in a), "little")


def _unpack(x: int, nb: int, count: int, p: int) -> list:
    raw = x.to_bytes(nb * count, "little")
    return [int.from_bytes(raw[i * nb:(i + 1) * nb], "little") % p for i in range(count)]


def mul(a: list, b: list, p: int) -> list:
    if not a or not b:
        return []
    if min(len(a), len(b)) < _KRONECKER_MIN:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return strip([c % p for c in out])
    nb = _slot_bytes(p, min(len(a), len(b)))
    prod = _pack(a, nb) * _pack(b, nb)
    return strip(_unpack(prod, nb, len(a) + len(b) - 1, p))


def sqr(a: list, p: int) -> list:
    return mul(a, a, p)


def divmod_(a: list, b: list, p: int) -> tuple[list, list]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], list(a)
    r = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i] % p
        if c:
            c = c * inv % p
            q[i - db] = c
            base = i - db
            for j in range(db):
                if b[j]:
                    r[base + j] -= c * b[j]
        r[i] = 0
    return strip(q), strip([x % p for x in r[:db]])


def rem(a: list, b: list, p: int) -> list:
    if len(a) < len(b):
        return list(a)
    return divmod_(a, b, p)[1]


def monic(a: list, p: int) -> list:
    if not a or a[-1] == 1:
        return list(a)
    return scale(a, pow(a[-1], -1, p), p)


def gcd(a: list, b: list, p: int) -> list:
    a, b = list(a), list(b)
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def xgcd(a: list, b: list, p: int) -> tuple[list, list, list]:
    """(g, s, t) with s*a + t*b = g monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    if not r0:
        return [], [], []
    inv = pow(r0[-1], -1, p)
    return scale(r0, inv, p), scale(s0, inv, p), scale(t0, inv, p)


def invmod(a: list, m: list, p: int) -> list:
    g, s, _ = xgcd(a, m, p)
    if g != [1]:
        raise ZeroDivisionError("not invertible modulo the given polynomial")
    return s


def powmod(a: list, e: int, m: list, p: int) -> list:
    result = [1]
    base = rem(a, m, p)
    while e:
        if e & 1:
            result = rem(mul(result, base, p), m, p)
        e >>= 1
        if e:
            base = rem(sqr(base, p), m, p)
    return rem(result, m, p)


def deriv(a: list, p: int) -> list:
    return strip([i * a[i] % p for i in range(1, len(a))])


def evaluate(a: list, x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def compose_mod(a: list, b: list, m: list, p: int) -> list:
    """a(b) mod m by Horner."""
    acc: list = []
    for c in reversed(a):
        acc = rem(mul(acc, b, p), m, p)
        if c:
            acc = add(acc, [c], p)
    return acc


def pth_root(a: list, p: int) -> list:
    """b with b(x)^p = a(x), assuming a is a polynomial in x^p over F_p."""
    return strip([a[i] for i in range(0, len(a), p)])


# -- factorization -----------------------------------------------------------

def squarefree_decomposition(f: list, p: int) -> list[tuple[list, int]]:
    """Monic squarefree parts with multiplicities (Yun, adapted to char p)."""
    f = monic(f, p)
    out: list[tuple[list, int]] = []

    def rec(g: list, mult: int):
        if len(g) <= 1:
            return
        dg = deriv(g, p)
        if not dg:
            rec(pth_root(g, p), mult * p)
            return
        c = gcd(g, dg, p)
        w = divmod_(g, c, p)[0]
        i = 1
        while len(w) > 1:
            y = gcd(w, c, p)
            z = divmod_(w, y, p)[0]
            if len(z) > 1:
                out.append((monic(z, p), i * mult))
            i += 1
            w = y
            c = divmod_(c, y, p)[0]
        if len(c) > 1:
            rec(pth_root(c, p), mult * p)

    rec(f, 1)
    merged: dict[tuple, int] = {}
    for g, e in out:
        merged[tuple(g)] = merged.get(tuple(g), 0) + e
    return [(list(g), e) for g, e in merged.items()]


def distinct_degree(f: list, p: int) -> list[tuple[int, list]]:
    """Split a monic squarefree f into (degree, product of all factors of that degree)."""
    out = []
    f = list(f)
    h = [0, 1]
    i = 0
    while len(f) - 1 >= 2 * (i + 1):
        i += 1
        h = powmod(h, p, f, p)
        g = gcd(sub(h, [0, 1], p), f, p)
        if len(g) > 1:
            out.append((i, g))
            f = divmod_(f, g, p)[0]
            h = rem(h, f, p)
    if len(f) > 1:
        out.append((len(f) - 1, f))
    return out


def _split_attempt(g: list, i: int, p: int, rng: random.Random) -> list:
    n = len(g) - 1
    a = strip([rng.randrange(p) for _ in range(n)])
    if len(a) <= 1:
        return []
    if p == 2:
        t = list(a)
        acc = list(a)
        for _ in range(i - 1):
            t = rem(sqr(t, p), g, p)
            acc = add(acc, t, p)
        b = acc
    else:
        b = sub(powmod(a, (p ** i - 1) // 2, g, p), [1], p)
    return gcd(b, g, p)


def equal_degree(g: list, i: int, p: int, rng: random.Random) -> list[list]:
    """Cantor-Zassenhaus splitting of a product of degree-i irreducibles."""
    n = len(g) - 1
    if n == i:
        return [g]
    while True:
        d = _split_attempt(g, i, p, rng)
        if 1 < len(d) < len(g):
            break
    return equal_degree(d, i, p, rng) + equal_degree(divmod_(g, d, p)[0], i, p, rng)


def factor(f: list, p: int, seed: int = 0) -> list[tuple[list, int]]:
    """Monic irreducible factors with multiplicities, sorted by (degree, coefficients)."""
    if not f:
        raise ValueError("zero input")
    rng = random.Random(seed)
    out = []
    for part, e in squarefree_decomposition(f, p):
        for i, g in distinct_degree(part, p):
            for h in equal_degree(g, i, p, rng):
                out.append((h, e))
    out.sort(key=lambda fe: (len(fe[0]), fe[0], fe[1]))
    return out


def is_irreducible(f: list, p: int) -> bool:
    """Rabin's test."""
    n = len(f) - 1
    if n < 1:
        return False
    f = monic(f, p)
    if n == 1:
        return True
    primes = [q for q in range(2, n + 1) if n % q == 0 and all(q % r for r in range(2, q))]
    h = [0, 1]
    powers = {}
    for j in range(1, n + 1):
        h = powmod(h, p, f, p)
        powers[j] = h
    if powers[n] != [0, 1]:
        return False
    for q in primes:
        if len(gcd(sub(powers[n // q], [0, 1], p), f, p)) > 1:
            return False
    return True

