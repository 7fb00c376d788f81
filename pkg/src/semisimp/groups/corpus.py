"""Standard group families and the seeded random corpus of small 2-groups."""

from __future__ import annotations

import random
from typing import Callable, Sequence

from .core import Perm, PermGroupData, closure, direct_product
from .pgroup import fingerprint


def cyclic(n: int) -> PermGroupData:
    return closure([tuple((i + 1) % n for i in range(n))], p_hint=None)


def dihedral(order: int) -> PermGroupData:
    """Symmetries of a regular (order/2)-gon; order 4 gives the Klein group."""
    n = order // 2
    if order % 2 or n < 2:
        raise ValueError("dihedral order must be even and at least 4")
    if n == 2:
        return elementary_abelian(2, 2)
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple(-i % n for i in range(n))
    return closure([rot, ref])


def regular(elements: Sequence, op: Callable, gens: Sequence) -> PermGroupData:
    """Right regular representation of an abstract group given by a product."""
    idx = {e: i for i, e in enumerate(elements)}
    perms = [tuple(idx[op(x, g)] for x in elements) for g in gens]
    return closure(perms)


def quaternion(order: int = 8) -> PermGroupData:
    """Generalized quaternion group <a, b | a^{2k} = 1, b^2 = a^k, b^-1 a b = a^-1>."""
    k = order // 4
    if order % 4 or k < 2 or k & (k - 1):
        raise ValueError("quaternion order must be a power of 2, at least 8")
    n = 2 * k
    # elements (i, j) = a^i b^j
    elems = [(i, j) for j in range(2) for i in range(n)]

    def op(x, y):
        i, j = x
        u, v = y
        if j:  # a^i b a^u b^v = a^{i-u} b^{1+v}
            i2 = i - u
            if v:
                return ((i2 + k) % n, 0)
            return (i2 % n, 1)
        return ((i + u) % n, v)

    return regular(elems, op, [(1, 0), (0, 1)])


def elementary_abelian(p: int, k: int) -> PermGroupData:
    gens = []
    for j in range(k):
        img = list(range(p * k))
        for i in range(p):
            img[j * p + i] = j * p + (i + 1) % p
        gens.append(tuple(img))
    return closure(gens, degree=p * k)


def heisenberg(p: int) -> PermGroupData:
    """Unitriangular 3x3 matrices over F_p, order p^3."""
    elems = [(a, b, c) for a in range(p) for b in range(p) for c in range(p)]

    def op(x, y):
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p)

    return regular(elems, op, [(1, 0, 0), (0, 1, 0)])


def sylow2_s8() -> PermGroupData:
    """Iterated wreath product C2 wr C2 wr C2 on 8 points, order 128."""
    return closure([
        Perm.from_cycles(8, (0, 1)),
        Perm.from_cycles(8, (0, 2), (1, 3)),
        Perm.from_cycles(8, (0, 4), (1, 5), (2, 6), (3, 7)),
    ])


def sylow2_s12() -> PermGroupData:
    """Sylow 2-subgroup of S12: the S8 one times D8 on the last four points."""
    return closure([
        Perm.from_cycles(12, (0, 1)),
        Perm.from_cycles(12, (0, 2), (1, 3)),
        Perm.from_cycles(12, (0, 4), (1, 5), (2, 6), (3, 7)),
        Perm.from_cycles(12, (8, 9)),
        Perm.from_cycles(12, (8, 10), (9, 11)),
    ])


def standard_families() -> list[tuple[str, PermGroupData]]:
    out = []
    for n in (2, 4, 8, 16, 3, 9, 27):
        out.append((f"C{n}", cyclic(n)))
    for n in (8, 16, 32):
        out.append((f"D{n}", dihedral(n)))
    for n in (8, 16):
        out.append((f"Q{n}", quaternion(n)))
    for p, k in ((2, 2), (2, 3), (2, 4), (3, 2), (3, 3)):
        out.append((f"E{p}^{k}", elementary_abelian(p, k)))
    out.append(("Heis3", heisenberg(3)))
    out.append(("C4xC2", direct_product(cyclic(4), cyclic(2))))
    out.append(("C9xC3", direct_product(cyclic(9), cyclic(3))))
    return out


def random_2groups(seed: int = 2024, tries: int = 1500, max_order: int = 64,
                   target: int = 60) -> list[PermGroupData]:
    """Subgroups generated by at most 3 random 2-power-order permutations,
    de-duplicated by fingerprint.

    The permutations are drawn from a Sylow 2-subgroup, so every generated
    group is a 2-group. All tries are spent on 8 points first; if that yields
    fewer than ``target`` types, drawing continues on 12 points.
    """
    rng = random.Random(seed)
    found: dict[tuple, PermGroupData] = {}
    seen: set[tuple] = set()
    for pool_group, budget in ((sylow2_s8(), tries), (sylow2_s12(), 4 * tries)):
        pool = pool_group.elements
        for _ in range(budget):
            if len(found) >= target and pool_group.degree > 8:
                break
            k = rng.randint(1, 3)
            gens = [pool[rng.randrange(1, len(pool))] for _ in range(k)]
            G = closure(gens, p_hint=2)
            if G.order > max_order or G.elements in seen:
                continue
            seen.add(G.elements)
            fp = fingerprint(G)
            if fp not in found:
                found[fp] = G
    return [found[fp] for fp in sorted(found, key=repr)]
