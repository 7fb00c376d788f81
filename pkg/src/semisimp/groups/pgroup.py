"""p-group structure: power subgroups, Frattini subgroup, powerful groups,
rank, maximal cyclic subgroups."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product

from .core import NotAPGroup, PermGroupData, bits, popcount, prime_power

RANK_ENUMERATION_BOUND = 1 << 10


class InvariantViolation(RuntimeError):
    pass


def _require_p(G: PermGroupData, p: int | None = None) -> int:
    pp = prime_power(G.order)
    if pp is None:
        raise NotAPGroup(f"group of order {G.order} is not a p-group")
    q = p or G.p_hint or (pp[0] if pp[0] > 1 else None)
    if q is None:
        raise NotAPGroup("trivial group needs an explicit prime")
    if pp[0] not in (1, q):
        raise NotAPGroup(f"group of order {G.order} is not a {q}-group")
    return q


def log_p(n: int, p: int) -> int:
    e = 0
    while n > 1:
        if n % p:
            raise ValueError(f"{n} is not a power of {p}")
        n //= p
        e += 1
    return e


# agemo ---------------------------------------------------------------------

def agemo_mask(G: PermGroupData, m: int, p: int | None = None, within: int | None = None) -> int:
    p = _require_p(G, p)
    return G.power_mask(G.full_mask if within is None else within, p ** m)


def agemo(G: PermGroupData, m: int, p: int | None = None) -> PermGroupData:
    """Subgroup generated by all p^m-th powers. Finite groups need no closure step."""
    mask = agemo_mask(G, m, p)
    if not G.is_normal(mask):
        raise InvariantViolation("power subgroup is not normal")
    return G.subgroup(mask)


def agemo_triviality_witness(G: PermGroupData, m: int, p: int | None = None) -> dict:
    """Does every coset of the power subgroup hold an element of order dividing p^m?"""
    p = _require_p(G, p)
    S = agemo_mask(G, m, p)
    label = G.cosets(S)
    good = set()
    orders = G.orders()
    e = p ** m
    for x in range(G.order):
        if e % orders[x] == 0:
            good.add(label[x])
    return {"premise_holds": len(good) == max(label) + 1, "agemo_trivial": S == 1}


# Frattini ----------------------------------------------------------------------

def frattini_by_commutators(G: PermGroupData, p: int | None = None, within: int | None = None) -> int:
    p = _require_p(G, p)
    H = G.full_mask if within is None else within
    return G.product_mask(G.commutator_mask(H, H), G.power_mask(H, p))


def maximal_subgroup_masks(G: PermGroupData, p: int | None = None) -> list[int]:
    """Index-p subgroups, as kernels of the surjections onto Z/p.

    Every assignment of residues to a generating set is propagated over the
    Cayley graph; consistent assignments are the homomorphisms.
    """
    p = _require_p(G, p)
    gens = G.generators_of(G.full_mask)
    kernels = set()
    for vals in product(range(p), repeat=len(gens)):
        if not any(vals):
            continue
        phi = [-1] * G.order
        phi[0] = 0
        frontier = [0]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g, a in zip(gens, vals):
                    y = G.mul(x, g)
                    v = (phi[x] + a) % p
                    if phi[y] < 0:
                        phi[y] = v
                        nxt.append(y)
                    elif phi[y] != v:
                        ok = False
                        break
                if not ok:
                    break
            frontier = nxt
        if ok:
            kernels.add(sum(1 << x for x in range(G.order) if phi[x] == 0))
    return sorted(kernels)


def frattini_mask(G: PermGroupData, p: int | None = None) -> int:
    p = _require_p(G, p)
    b = frattini_by_commutators(G, p)
    maxes = maximal_subgroup_masks(G, p)
    a = G.full_mask
    for M in maxes:
        a &= M
    if a != b:
        raise InvariantViolation("Frattini subgroup: intersection of maximal subgroups "
                                 "differs from [G,G]G^p")
    return a


def frattini(G: PermGroupData, p: int | None = None) -> PermGroupData:
    return G.subgroup(frattini_mask(G, p))


def min_generators(G: PermGroupData, p: int | None = None) -> int:
    p = _require_p(G, p)
    return log_p(G.order // popcount(frattini_by_commutators(G, p)), p)


# powerful groups -------------------------------------------------------------

def is_powerful_mask(G: PermGroupData, H: int, p: int) -> bool:
    P = G.power_mask(H, 4 if p == 2 else p)
    gens = G.generators_of(H)
    inv = G.inverses()
    for i, a in enumerate(gens):
        for b in gens[i + 1:]:
            c = G.mul(G.mul(inv[a], inv[b]), G.mul(a, b))
            if not P >> c & 1:
                return False
    return True


def is_powerful(G: PermGroupData, p: int | None = None) -> bool:
    p = _require_p(G, p)
    return is_powerful_mask(G, G.full_mask, p)


@dataclass(frozen=True)
class Filtration:
    chain: tuple          # PermGroupData, G_0 = G first
    terminal_powerful: bool

    @property
    def t(self) -> int:
        return len(self.chain) - 1

    @property
    def orders(self) -> list[int]:
        return [H.order for H in self.chain]


def powerful_filtration(G: PermGroupData, p: int | None = None) -> Filtration:
    """Frattini series G_{i+1} = [G_i, G_i] G_i^p, stopped at the first powerful term."""
    p = _require_p(G, p)
    masks = [G.full_mask]
    while not is_powerful_mask(G, masks[-1], p):
        H = masks[-1]
        K = frattini_by_commutators(G, p, within=H)
        if K == H:
            raise InvariantViolation("Frattini series stalled")
        # quotient H/K elementary abelian: K normal in H, p-th powers and commutators in K
        for h in G.generators_of(H):
            if not K >> G.power(h, p) & 1:
                raise InvariantViolation("quotient has exponent larger than p")
        masks.append(K)
    return Filtration(tuple(G.subgroup(m) for m in masks), True)


# subgroup lattice ---------------------------------------------------------------

def all_subgroups(G: PermGroupData, p: int | None = None) -> dict[int, int] | None:
    """Every subgroup of a p-group, mapped to its minimal number of generators.

    Builds the lattice layer by layer: each subgroup K of order p^{i+1} is
    <H, g> for a maximal H, g normalizing H with g^p in H. Counting the
    maximal subgroups c of K gives d(K) from c = (p^d - 1)/(p - 1).
    Returns None above the enumeration bound.
    """
    p = _require_p(G, p)
    if G.order > RANK_ENUMERATION_BOUND:
        return None
    cached = G._cache.get(("subgroups", p))
    if cached is not None:
        return cached
    n = G.order
    layer = {1: []}           # mask -> generators
    counts = {1: 0}
    result = {}
    while layer:
        nxt: dict[int, list[int]] = {}
        for H, hgens in layer.items():
            done = H
            for g in range(n):
                if done >> g & 1:
                    continue
                if not all(H >> G.conj(g, h) & 1 for h in hgens):
                    continue
                if not H >> G.power(g, p) & 1:
                    continue
                K = H
                x = g
                while not H >> x & 1:
                    for h in bits(H):
                        K |= 1 << G.mul(h, x)
                    x = G.mul(x, g)
                done |= K
                if K in counts:
                    counts[K] += 1
                else:
                    counts[K] = 1
                    nxt[K] = hgens + [g]
        for H in layer:
            c = counts[H]
            result[H] = log_p((p - 1) * c + 1, p)
        layer = nxt
    G._cache[("subgroups", p)] = result
    return result


def rank(G: PermGroupData, p: int | None = None) -> int | None:
    subs = all_subgroups(G, p)
    return None if subs is None else max(subs.values())


def normal_subgroup_masks(G: PermGroupData, p: int | None = None) -> list[int] | None:
    subs = all_subgroups(G, p)
    if subs is None:
        return None
    return sorted(m for m in subs if G.is_normal(m))


# maximal cyclic subgroups --------------------------------------------------------

@dataclass(frozen=True)
class CyclicClass:
    order: int
    representative: int       # mask of the chosen subgroup
    generator: int            # smallest element index generating the representative
    members: tuple            # masks of all conjugates


def _key(mask: int) -> tuple:
    return tuple(bits(mask & ~1))


def _conj_mask(G: PermGroupData, mask: int, g: int) -> int:
    out = 0
    for x in bits(mask):
        out |= 1 << G.conj(g, x)
    return out


def maximal_cyclic_classes(G: PermGroupData) -> list[CyclicClass]:
    cached = G._cache.get("maxcyc")
    if cached is not None:
        return cached
    cyc: dict[int, int] = {}
    for x in range(G.order):
        m = G.generated([x])
        cyc.setdefault(m, x)
    masks = sorted(cyc, key=popcount)
    maximal = [m for m in masks
               if not any(o != m and o & m == m for o in masks if popcount(o) > popcount(m))]
    gens = G.generator_indices()
    seen: set[int] = set()
    classes = []
    for m in maximal:
        if m in seen:
            continue
        orbit = [m]
        seen.add(m)
        for s in orbit:
            for g in gens:
                t = _conj_mask(G, s, g)
                if t not in seen:
                    seen.add(t)
                    orbit.append(t)
        rep = min(orbit, key=_key)
        classes.append(CyclicClass(popcount(rep), rep, cyc[rep], tuple(sorted(orbit, key=_key))))
    classes.sort(key=lambda c: (c.order, _key(c.representative)))
    G._cache["maxcyc"] = classes
    return classes


def covers_maximal_cyclic(G: PermGroupData, elems) -> dict:
    classes = maximal_cyclic_classes(G)
    where = {m: k for k, c in enumerate(classes) for m in c.members}
    hit = set()
    for e in elems:
        e = int(e)
        if not 0 <= e < G.order:
            raise IndexError(f"element index {e} out of range")
        k = where.get(G.generated([e]))
        if k is not None:
            hit.add(k)
    missing = [k for k in range(len(classes)) if k not in hit]
    return {"covered": not missing, "missing": missing}


# reports ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StructureReport:
    order: int
    exponent: int
    center_order: int
    num_classes: int
    min_generators: int | None
    rank: int | None

    def as_dict(self) -> dict:
        return {k: ("not computed" if v is None else v) for k, v in self.__dict__.items()}

    def render(self) -> str:
        return "\n".join(f"{k}: {v}" for k, v in self.as_dict().items())


def structure_report(G: PermGroupData, with_rank: bool = True) -> StructureReport:
    pg = G.is_p_group() and G.order > 1
    return StructureReport(
        order=G.order,
        exponent=G.exponent(),
        center_order=popcount(G.center_mask()),
        num_classes=len(G.conjugacy_classes()),
        min_generators=min_generators(G) if pg else None,
        rank=rank(G) if pg and with_rank else None,
    )


def fingerprint(G: PermGroupData) -> tuple:
    """Isomorphism invariants used to tell corpus groups apart."""
    orders = G.orders()
    classes = G.conjugacy_classes()
    pg = G.is_p_group() and G.order > 1
    return (
        G.order,
        tuple(sorted(Counter(orders).items())),
        popcount(G.center_mask()),
        tuple(sorted(Counter((orders[c[0]], len(c)) for c in classes).items())),
        popcount(G.commutator_mask(G.full_mask, G.full_mask)),
        min_generators(G) if pg else None,
        tuple(sorted(c.order for c in maximal_cyclic_classes(G))),
    )
