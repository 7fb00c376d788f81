"""Finite groups as explicit sets of permutations.

Elements are image tuples, kept in lexicographic order so the identity has
index 0. The product ``a * b`` means "apply a, then b". Subgroups are
bitmasks over element indices of the parent group.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd, lcm
from typing import Iterable, Iterator, Sequence

DEFAULT_BOUND = 1 << 20


class GroupTooLarge(ValueError):
    pass


class NotAPGroup(ValueError):
    pass


@dataclass(frozen=True)
class Perm:
    images: tuple

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError("images do not form a bijection")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Perm":
        img = list(range(n))
        for c in cycles:
            for a, b in zip(c, c[1:] + c[:1]):
                img[a] = b
        return cls(tuple(img))

    def __mul__(self, other: "Perm") -> "Perm":
        return Perm(_mul(self.images, other.images))

    def __len__(self):
        return len(self.images)


def _mul(a: tuple, b: tuple) -> tuple:
    return tuple(map(b.__getitem__, a))


def perm_order(a: tuple) -> int:
    """lcm of the cycle lengths."""
    seen = [False] * len(a)
    out = 1
    for i in range(len(a)):
        if not seen[i]:
            k, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = a[j]
                k += 1
            out = lcm(out, k)
    return out


def _as_tuple(g) -> tuple:
    return g.images if isinstance(g, Perm) else tuple(g)


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def prime_power(n: int) -> tuple[int, int] | None:
    """(p, e) with n = p^e, or None. n = 1 gives (1, 0)."""
    if n == 1:
        return (1, 0)
    p = 2
    while p * p <= n and n % p:
        p += 1
    if n % p:
        p = n
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return (p, e) if n == 1 else None


@dataclass(frozen=True, eq=False)
class PermGroupData:
    generators: tuple
    elements: tuple
    p_hint: int | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    # construction ------------------------------------------------------------
    @classmethod
    def from_elements(cls, elems: Iterable, generators: Sequence = (), p_hint: int | None = None) -> "PermGroupData":
        es = tuple(sorted({_as_tuple(e) for e in elems}))
        gens = tuple(_as_tuple(g) for g in generators) or es[1:]
        return cls(gens, es, p_hint)

    @property
    def degree(self) -> int:
        return len(self.elements[0])

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> dict:
        c = self._cache.get("index")
        if c is None:
            c = {e: i for i, e in enumerate(self.elements)}
            self._cache["index"] = c
        return c

    @property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    @property
    def p(self) -> int:
        if self.p_hint:
            return self.p_hint
        pp = prime_power(self.order)
        if pp is None or pp[0] == 1:
            raise NotAPGroup(f"group of order {self.order} is not a nontrivial p-group")
        return pp[0]

    def is_p_group(self) -> bool:
        pp = prime_power(self.order)
        return pp is not None and (self.p_hint is None or pp[0] in (1, self.p_hint))

    def mul_table(self) -> list[list[int]]:
        c = self._cache.get("mul")
        if c is None:
            idx = self.index
            els = self.elements
            c = [[idx[_mul(a, b)] for b in els] for a in els]
            self._cache["mul"] = c
        return c

    def table_affordable(self) -> bool:
        # the full table costs order^2 * degree tuple operations
        return self.order * self.order * max(self.degree, 1) <= 1 << 26

    def mul(self, i: int, j: int) -> int:
        try:
            return self._cache["mul"][i][j]
        except KeyError:
            pass
        if self.table_affordable():
            return self.mul_table()[i][j]
        return self.index[_mul(self.elements[i], self.elements[j])]

    def inverses(self) -> list[int]:
        c = self._cache.get("inv")
        if c is None:
            idx = self.index
            out = []
            for e in self.elements:
                inv = [0] * len(e)
                for i, x in enumerate(e):
                    inv[x] = i
                out.append(idx[tuple(inv)])
            c = self._cache["inv"] = out
        return c

    def power(self, i: int, e: int) -> int:
        if e < 0:
            i, e = self.inverses()[i], -e
        out, base = 0, i
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def orders(self) -> list[int]:
        c = self._cache.get("orders")
        if c is None:
            c = [perm_order(e) for e in self.elements]
            self._cache["orders"] = c
        return c

    def conj(self, g: int, x: int) -> int:
        """g^-1 x g."""
        return self.mul(self.mul(self.inverses()[g], x), g)

    # element-level invariants ----------------------------------------------
    def exponent(self) -> int:
        return lcm(*self.orders())

    def is_abelian(self) -> bool:
        return self.is_abelian_mask(self.full_mask)

    def is_abelian_mask(self, mask: int) -> bool:
        gens = self.generators_of(mask)
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)

    def center_mask(self) -> int:
        gens = self.generator_indices()
        m = 0
        for x in range(self.order):
            if all(self.mul(x, g) == self.mul(g, x) for g in gens):
                m |= 1 << x
        return m

    def generator_indices(self) -> list[int]:
        c = self._cache.get("gidx")
        if c is None:
            c = self._cache["gidx"] = [self.index[g] for g in self.generators] or [0]
        return c

    def conjugacy_classes(self) -> list[list[int]]:
        """Classes sorted by (element order, smallest member index)."""
        c = self._cache.get("classes")
        if c is None:
            seen = [False] * self.order
            classes = []
            gens = self.generator_indices()
            for x in range(self.order):
                if seen[x]:
                    continue
                cls_ = [x]
                seen[x] = True
                for y in cls_:
                    for g in gens:
                        z = self.conj(g, y)
                        if not seen[z]:
                            seen[z] = True
                            cls_.append(z)
                classes.append(sorted(cls_))
            orders = self.orders()
            classes.sort(key=lambda cl: (orders[cl[0]], cl[0]))
            c = self._cache["classes"] = classes
        return c

    def class_id(self, x: int) -> int:
        c = self._cache.get("class_of")
        if c is None:
            c = [0] * self.order
            for k, cl in enumerate(self.conjugacy_classes()):
                for y in cl:
                    c[y] = k
            self._cache["class_of"] = c
        return c[x]

    # subgroups as masks -------------------------------------------------------
    def generated(self, gens: Iterable[int]) -> int:
        # generators already in the current subgroup are skipped, so the
        # closure only ever runs over a short irredundant list
        mul = self.mul
        mask = 1
        used: list[int] = []
        for g in sorted(set(gens)):
            if mask >> g & 1:
                continue
            used.append(g)
            frontier = list(bits(mask))
            while frontier:
                nxt = []
                for x in frontier:
                    for h in used:
                        y = mul(x, h)
                        if not mask >> y & 1:
                            mask |= 1 << y
                            nxt.append(y)
                frontier = nxt
        return mask

    def generators_of(self, mask: int) -> list[int]:
        """A small generating set of the subgroup, chosen greedily by index."""
        out: list[int] = []
        cur = 1
        for x in bits(mask):
            if not cur >> x & 1:
                out.append(x)
                cur = self.generated(out)
                if cur == mask:
                    break
        return out

    def is_normal(self, mask: int) -> bool:
        sub_gens = self.generators_of(mask)
        return all(mask >> self.conj(g, h) & 1 for g in self.generator_indices() for h in sub_gens)

    def commutator(self, x: int, y: int) -> int:
        inv = self.inverses()
        return self.mul(self.mul(inv[x], inv[y]), self.mul(x, y))

    def commutator_mask(self, a: int, b: int) -> int:
        """[A, B] for subgroups A, B normalizing each other (e.g. both normal):
        the normal closure in <A, B> of the commutators of generators."""
        ga, gb = self.generators_of(a), self.generators_of(b)
        mask = self.generated({self.commutator(x, y) for x in ga for y in gb})
        outer = ga + gb
        while True:
            new = [self.conj(g, h) for g in outer for h in self.generators_of(mask)]
            if all(mask >> z & 1 for z in new):
                return mask
            mask = self.generated(list(bits(mask)) + new)

    def power_mask(self, mask: int, e: int) -> int:
        """Subgroup generated by the e-th powers of the elements of the subgroup."""
        return self.generated({self.power(x, e) for x in bits(mask)})

    def product_mask(self, a: int, b: int) -> int:
        return self.generated(list(bits(a)) + list(bits(b)))

    def subgroup(self, mask: int) -> "PermGroupData":
        gens = [self.elements[i] for i in self.generators_of(mask)]
        return PermGroupData(tuple(gens), tuple(self.elements[i] for i in bits(mask)), self.p_hint)

    def mask_of(self, sub: "PermGroupData") -> int:
        m = 0
        for e in sub.elements:
            m |= 1 << self.index[e]
        return m

    def cosets(self, mask: int) -> list[int]:
        """Coset label (right cosets Nx) of every element, numbered by first appearance."""
        label = [-1] * self.order
        k = 0
        for x in range(self.order):
            if label[x] >= 0:
                continue
            for h in bits(mask):
                label[self.mul(h, x)] = k
            k += 1
        return label

    # serialization -------------------------------------------------------------
    def to_record(self) -> dict:
        return {"degree": self.degree, "generators": [list(g) for g in self.generators]}

    @classmethod
    def from_record(cls, rec: dict, bound: int = DEFAULT_BOUND) -> "PermGroupData":
        try:
            n = int(rec["degree"])
            gens = [tuple(int(x) for x in g) for g in rec["generators"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed group record: {exc!r}") from None
        for g in gens:
            if len(g) != n:
                raise ValueError("generator length does not match 'degree'")
            Perm(g)
        return closure(gens, bound, degree=n)

    def dumps(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True) + "\n"


def closure(gens: Sequence, bound: int = DEFAULT_BOUND, p_hint: int | None = None,
            degree: int | None = None) -> PermGroupData:
    """Breadth-first closure of the generators."""
    gens = [_as_tuple(g) for g in gens]
    if degree is None:
        if not gens:
            raise ValueError("need a degree or at least one generator")
        degree = len(gens[0])
    if any(len(g) != degree for g in gens):
        raise ValueError("all permutations must have the same degree")
    ident = tuple(range(degree))
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _mul(x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        if len(elems) > bound:
            raise GroupTooLarge("group too large")
        frontier = nxt
    return PermGroupData(tuple(gens), tuple(sorted(elems)), p_hint)


def quotient(G: PermGroupData, N: int) -> tuple[PermGroupData, list[int]]:
    """G/N acting regularly on the cosets of a normal subgroup N, plus the
    map from element indices of G to element indices of the quotient."""
    label = G.cosets(N)
    k = max(label) + 1
    reps = [label.index(c) for c in range(k)]

    def action(x: int) -> tuple:
        return tuple(label[G.mul(r, x)] for r in reps)

    images = [action(x) for x in range(G.order)]
    Q = PermGroupData.from_elements(images, [images[g] for g in G.generator_indices()], G.p_hint)
    return Q, [Q.index[im] for im in images]


def direct_product(A: PermGroupData, B: PermGroupData) -> PermGroupData:
    na, nb = A.degree, B.degree
    ia, ib = tuple(range(na)), tuple(range(nb))
    gens = [g + tuple(x + na for x in ib) for g in A.generators]
    gens += [ia + tuple(x + na for x in g) for g in B.generators]
    elems = [a + tuple(x + na for x in b) for a in A.elements for b in B.elements]
    p = A.p_hint if A.p_hint == B.p_hint else None
    return PermGroupData.from_elements(elems, gens, p)


def gcd_all(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
