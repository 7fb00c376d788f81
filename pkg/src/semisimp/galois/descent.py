"""Automorphism permutations of a Galois field by descent through central quotients.

Roots of f are lifted q-adically in an unramified extension ("master" ring).
Every automorphism sigma acts on the roots as a permutation that commutes
with the q-adic Frobenius; its interpolation numerator h = f'(x) g(x) mod f
has integer coefficients of bounded size, which is what we test for.

A q-adic Frobenius acts on the roots like a left translation of the group,
while automorphism polynomials act like right translations, so a Frobenius
permutation is an automorphism permutation exactly when it is central. The
descent therefore looks for a central element z of prime order (as a power
of a Frobenius at some helper prime t), passes to the fixed field of <z>
(a block polynomial whose roots are sums over the orbits of z), solves that
field recursively, and lifts the generators back by a meet-in-the-middle
search over the few choices that commute with Frobenius and z.
"""

from __future__ import annotations

import bisect
import itertools
import time
from dataclasses import dataclass
from math import comb, lcm
from typing import Sequence

from ..algebra import gfp
from ..algebra.numtheory import balanced, iroot_ceil, primes_from
from ..algebra.padic import PadicRing, PadicRootSet, hensel_lift_roots, residue_degrees
from ..algebra.poly import IntPoly

Perm = tuple


class DescentFailure(RuntimeError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class _NeedPrecision(Exception):
    def __init__(self, bits: int):
        super().__init__(bits)
        self.bits = bits


# -- bounds -------------------------------------------------------------------

def root_bound(F: IntPoly) -> int:
    """Integer upper bound for the absolute value of every complex root (Fujiwara)."""
    n = F.degree
    lc = abs(F.lc)
    best = 0
    for k in range(1, n + 1):
        a = abs(F[n - k])
        if not a:
            continue
        if k == n:
            a = (a + 1) // 2
        best = max(best, iroot_ceil(-(-a // lc), k))
    return max(1, 2 * best)


def numerator_bound(F: IntPoly, R: int | None = None) -> int:
    """Bound on the coefficients of F'(x) g(x) mod F for any g permuting the roots."""
    R = root_bound(F) if R is None else R
    n = F.degree
    c = F.coeffs
    best = 0
    for j in range(n):
        s = sum(abs(c[k]) * R ** (k - j - 1) for k in range(j + 1, n + 1))
        best = max(best, s)
    return n * R * best


def bits_for(bound: int, margin: int = 80) -> int:
    return bound.bit_length() + margin


def precision_for(q: int, bits: int) -> int:
    k = 1
    while q.bit_length() * k < bits + 2:
        k += 1
    while (q ** k).bit_length() <= bits + 1:
        k += 1
    return k


# -- permutations -------------------------------------------------------------

def perm_mul(a: Perm, b: Perm) -> Perm:
    """Apply a first, then b."""
    return tuple(b[i] for i in a)


def perm_pow(a: Perm, e: int) -> Perm:
    out = tuple(range(len(a)))
    for _ in range(e):
        out = perm_mul(out, a)
    return out


def perm_order(a: Perm) -> int:
    seen = [False] * len(a)
    o = 1
    for i in range(len(a)):
        if not seen[i]:
            c, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = a[j]
                c += 1
            o = lcm(o, c)
    return o


def perm_closure(gens: Sequence[Perm], n: int, limit: int) -> list[Perm]:
    ident = tuple(range(n))
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = perm_mul(x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
                    if len(elems) > limit:
                        raise DescentFailure("permutation closure exceeds the field degree")
        frontier = nxt
    return sorted(elems)


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_order_powers(phi: Perm) -> list[tuple[Perm, int]]:
    o = perm_order(phi)
    return [(perm_pow(phi, o // ell), ell) for ell in _prime_factors(o)]


# -- q-adic interpolation -------------------------------------------------------

class Interpolator:
    """h_pi(x) = sum_i rho_{pi(i)} F(x)/(x - rho_i), evaluated coefficientwise."""

    def __init__(self, F: IntPoly, ring: PadicRing, roots: Sequence):
        self.F = F
        self.ring = ring
        self.roots = list(roots)
        n = F.degree
        c = F.coeffs
        self.quots = []
        for r in self.roots:
            qc = [None] * n
            acc = ring.zero()
            for j in range(n, 0, -1):
                acc = ring.mul(acc, r)
                acc = ((acc[0] + c[j]) % ring.modulus,) + acc[1:]
                qc[j - 1] = acc
            self.quots.append(qc)

    def coefficient(self, perm: Perm, j: int):
        ring = self.ring
        acc = ring.zero()
        for i, img in enumerate(perm):
            acc = ring.add(acc, ring.mul(self.roots[img], self.quots[i][j]))
        return acc

    def numerator(self, perm: Perm, bound: int) -> IntPoly | None:
        """The integer numerator polynomial, or None if some coefficient is not a
        rational integer of absolute value <= bound."""
        ring = self.ring
        M = ring.modulus
        out = []
        for j in range(self.F.degree - 1, -1, -1):
            v = self.coefficient(perm, j)
            if any(v[1:]):
                return None
            b = balanced(v[0], M)
            if abs(b) > bound:
                return None
            out.append(b)
        return IntPoly(tuple(reversed(out)))


def trace_pairing(ring: PadicRing, roots: Sequence, perm: Perm, e: int = 1):
    acc = ring.zero()
    for i, img in enumerate(perm):
        acc = ring.add(acc, ring.mul(ring.pow(roots[i], e), roots[img]))
    return acc


def frobenius_perm(ring: PadicRing, roots: Sequence) -> Perm:
    """Permutation induced by the q-adic Frobenius on distinct-mod-q roots."""
    fd = ring.residue_field
    keys = {ring.residue_key(r): i for i, r in enumerate(roots)}
    if len(keys) != len(roots):
        raise DescentFailure("roots are not distinct modulo q")
    out = []
    for r in roots:
        a = fd.frobenius(ring.residue(r))
        key = (a,) if fd.d == 1 else tuple(a)
        out.append(keys[key])
    return tuple(out)


def transfer(h: IntPoly, F: IntPoly, ring: PadicRing, roots: Sequence) -> Perm | None:
    """Permutation of the given roots induced by x -> h(x)/F'(x)."""
    low = ring.with_precision(1)
    dF = F.derivative().coeffs
    keys = {ring.residue_key(r): i for i, r in enumerate(roots)}
    out = []
    for r in roots:
        r1 = low.reduce(r)
        val = low.mul(low.eval(h.coeffs, r1), low.inv(low.eval(dF, r1)))
        j = keys.get(low.residue_key(val))
        if j is None:
            return None
        out.append(j)
    return tuple(out) if len(set(out)) == len(out) else None


# -- the descent ------------------------------------------------------------------

@dataclass
class DescentConfig:
    seed: int = 0
    helper_limit: int = 60
    search_limit: int = 1 << 20
    deadline: float | None = None

    def check_time(self):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded("time budget exceeded")


@dataclass
class DescentLog:
    levels: list

    def add(self, **kw):
        self.levels.append(kw)


def _orbits(n: int, gens: Sequence[Perm]) -> list[list[int]]:
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        orb = [s]
        seen[s] = True
        for x in orb:
            for g in gens:
                y = g[x]
                if not seen[y]:
                    seen[y] = True
                    orb.append(y)
        out.append(sorted(orb))
    return out


class _Level:
    def __init__(self, F: IntPoly, ring: PadicRing, roots: Sequence, cfg: DescentConfig, log: DescentLog):
        self.F = F
        self.n = F.degree
        self.ring = ring
        self.roots = list(roots)
        self.cfg = cfg
        self.log = log
        self.R = root_bound(F)
        self.Bh = numerator_bound(F, self.R)
        self.Bs = [self.n * self.R ** (e + 1) for e in (1, 2)]
        if bits_for(self.Bh) > ring.modulus.bit_length():
            raise _NeedPrecision(bits_for(self.Bh))
        self.phi = frobenius_perm(ring, self.roots)
        self._interp = None

    @property
    def interp(self) -> Interpolator:
        if self._interp is None:
            self._interp = Interpolator(self.F, self.ring, self.roots)
        return self._interp

    # central elements ------------------------------------------------------
    def _test_candidate(self, ring, roots, perm, interp_factory) -> IntPoly | None:
        M = ring.modulus
        s = trace_pairing(ring, roots, perm)
        if any(s[1:]) or abs(balanced(s[0], M)) > self.Bs[0]:
            return None
        return interp_factory().numerator(perm, self.Bh)

    def find_central(self) -> tuple[Perm, int, str] | None:
        for cand, ell in prime_order_powers(self.phi):
            h = self._test_candidate(self.ring, self.roots, cand, lambda: self.interp)
            if h is not None:
                return cand, ell, f"master q={self.ring.q}"
        tried = 0
        k_lo_bits = bits_for(2 * self.Bs[0], 40)
        k_hi_bits = bits_for(self.Bh)
        for t in primes_from(3):
            self.cfg.check_time()
            if t == self.ring.q:
                continue
            tried += 1
            if tried > self.cfg.helper_limit:
                return None
            degs = residue_degrees(self.F, t, self.cfg.seed)
            if degs is None or degs[-1] == 1:
                continue
            d_t = lcm(*degs)
            rs = hensel_lift_roots(self.F, t, d_t, precision_for(t, k_lo_bits), self.cfg.seed)
            phi_t = frobenius_perm(rs.ring, rs.roots)
            for cand, ell in prime_order_powers(phi_t):
                s = trace_pairing(rs.ring, rs.roots, cand)
                if any(s[1:]) or abs(balanced(s[0], rs.ring.modulus)) > self.Bs[0]:
                    continue
                hi = rs.relift(precision_for(t, k_hi_bits))
                h = Interpolator(self.F, hi.ring, hi.roots).numerator(cand, self.Bh)
                if h is None:
                    continue
                z = transfer(h, self.F, self.ring, self.roots)
                if z is not None and perm_order(z) == ell:
                    return z, ell, f"helper t={t}"
        return None

    # quotient by <z> -------------------------------------------------------
    def quotient(self, z: Perm, ell: int) -> tuple[IntPoly, list, list[list[int]]]:
        ring = self.ring
        M = ring.modulus
        blocks = _orbits(self.n, [z])
        m = len(blocks)
        for e in range(1, 4 * self.n + 2):
            pw = [ring.pow(r, e) for r in self.roots]
            theta = []
            for B in blocks:
                acc = ring.zero()
                for i in B:
                    acc = ring.add(acc, pw[i])
                theta.append(acc)
            if len({ring.residue_key(t) for t in theta}) == m:
                break
        else:
            raise DescentFailure("no separating block sum found")
        Rt = ell * self.R ** e
        bound = max(comb(m, k) * Rt ** k for k in range(m + 1))
        if bits_for(bound, 2) > M.bit_length():
            raise _NeedPrecision(bits_for(bound, 40))
        coeffs = [ring.one()]
        for t in theta:
            nt = ring.neg(t)
            new = [ring.zero()] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                new[i + 1] = ring.add(new[i + 1], c)
                new[i] = ring.add(new[i], ring.mul(c, nt))
            coeffs = new
        ints = []
        for c in coeffs:
            if any(c[1:]):
                raise DescentFailure("block polynomial is not rational; z is not central")
            b = balanced(c[0], M)
            if abs(b) > bound:
                raise DescentFailure("block polynomial coefficient out of range")
            ints.append(b)
        return IntPoly(tuple(ints)), theta, blocks

    # lifting ---------------------------------------------------------------
    def lift(self, gbar: Perm, z: Perm, blocks: list[list[int]]) -> Perm:
        block_of = [0] * self.n
        for b, B in enumerate(blocks):
            for i in B:
                block_of[i] = b
        gens = [self.phi, z]
        orbits = _orbits(self.n, gens)
        ring = self.ring
        M = ring.modulus
        pw = [[ring.pow(r, e) for r in self.roots] for e in (1, 2)]
        options = []
        for orb in orbits:
            rep = orb[0]
            opts = []
            for s in blocks[gbar[block_of[rep]]]:
                pi = _extend(rep, s, gens, block_of, gbar)
                if pi is None:
                    continue
                sums = []
                for e in (0, 1):
                    acc = ring.zero()
                    for x, y in pi.items():
                        acc = ring.add(acc, ring.mul(pw[e][x], self.roots[y]))
                    if any(acc[1:]):
                        break
                    sums.append(acc[0])
                else:
                    opts.append((tuple(sums), pi))
            if not opts:
                raise DescentFailure("no Frobenius-compatible lift of a quotient element")
            options.append(opts)
        options[0] = options[0][:1]
        for choice in _small_sum_search([[o[0] for o in opts] for opts in options], M, self.Bs, self.cfg):
            perm = [0] * self.n
            for opts, c in zip(options, choice):
                for x, y in opts[c][1].items():
                    perm[x] = y
            perm = tuple(perm)
            if self.interp.numerator(perm, self.Bh) is not None:
                return perm
        raise DescentFailure("no integral lift found for a quotient generator")


def _extend(rep: int, img: int, gens, block_of, gbar) -> dict | None:
    pi = {rep: img}
    queue = [rep]
    for x in queue:
        for g in gens:
            y, w = g[x], g[pi[x]]
            if y in pi:
                if pi[y] != w:
                    return None
            else:
                if block_of[w] != gbar[block_of[y]]:
                    return None
                pi[y] = w
                queue.append(y)
    return pi


def _small_sum_search(options: list[list[tuple]], M: int, bounds: Sequence[int], cfg: DescentConfig):
    """Yield index tuples whose summed values are all small modulo M.

    Meet in the middle on the first coordinate; the others are checked on hits.
    """
    half = len(options) // 2
    left, right = options[:half], options[half:]

    def enumerate_side(side):
        size = 1
        for o in side:
            size *= len(o)
        if size > cfg.search_limit:
            raise DescentFailure("lift search space too large")
        out = []
        for idx in itertools.product(*[range(len(o)) for o in side]):
            sums = [0] * len(bounds)
            for o, i in zip(side, idx):
                for c in range(len(bounds)):
                    sums[c] += o[i][c]
            out.append((sums[0] % M, tuple(s % M for s in sums), idx))
        return out

    L = enumerate_side(left)
    Rs = enumerate_side(right)
    Rs.sort(key=lambda x: x[0])
    keys = [x[0] for x in Rs]
    B0 = bounds[0]
    for l0, lsum, lidx in L:
        cfg.check_time()
        lo = (-B0 - l0) % M
        hi = lo + 2 * B0
        ranges = [(lo, hi)] if hi < M else [(lo, M - 1), (0, hi - M)]
        for a, b in ranges:
            for pos in range(bisect.bisect_left(keys, a), bisect.bisect_right(keys, b)):
                _, rsum, ridx = Rs[pos]
                if all(abs(balanced(lsum[c] + rsum[c], M)) <= bounds[c] for c in range(len(bounds))):
                    yield lidx + ridx


def _solve(level: _Level, depth: int) -> list[Perm]:
    """Generators (as permutations of the level's roots) of the level's group."""
    level.cfg.check_time()
    if level.n == 1:
        return []
    found = level.find_central()
    if found is None:
        raise DescentFailure(f"no central Frobenius power found at degree {level.n}")
    z, ell, source = found
    Fq, theta, blocks = level.quotient(z, ell)
    level.log.add(depth=depth, degree=level.n, central_order=ell, source=source,
                  quotient_degree=Fq.degree)
    sub = _Level(Fq, level.ring, theta, level.cfg, level.log)
    sub_gens = _solve(sub, depth + 1)
    gens = [level.lift(g, z, blocks) for g in sub_gens] + [z]
    elems = perm_closure(gens, level.n, level.n)
    if len(elems) != level.n:
        raise DescentFailure(f"lifted group has order {len(elems)}, expected {level.n}")
    return _irredundant(gens, level.n)


def _irredundant(gens: list[Perm], n: int) -> list[Perm]:
    out: list[Perm] = []
    size = 1
    for g in gens:
        s = len(perm_closure(out + [g], n, n))
        if s > size:
            out.append(g)
            size = s
    return out


def descent_generators(rs: PadicRootSet, cfg: DescentConfig) -> tuple[list[Perm], PadicRootSet, DescentLog]:
    """Generators of the automorphism permutations on the roots of rs.f.

    The root set is re-lifted as the descent discovers it needs more precision.
    """
    while True:
        log = DescentLog([])
        try:
            top = _Level(rs.f, rs.ring, rs.roots, cfg, log)
            return _solve(top, 0), rs, log
        except _NeedPrecision as need:
            rs = rs.relift(max(precision_for(rs.q, need.bits), rs.k + 1))


def first_split_prime(f: IntPoly, bound: int = 10 ** 5, start: int = 3) -> int:
    """Smallest prime q >= start with f separable mod q and split into linear factors."""
    n = f.degree
    for q in primes_from(start):
        if q > bound:
            raise DescentFailure(f"no auxiliary prime below {bound}")
        red = gfp.from_ints(f.coeffs, q)
        if len(red) != n + 1:
            continue
        red = gfp.monic(red, q)
        if len(gfp.gcd(red, gfp.deriv(red, q), q)) > 1:
            continue
        xq = gfp.powmod([0, 1], q, red, q)
        if len(gfp.gcd(gfp.sub(xq, [0, 1], q), red, q)) == n + 1:
            return q
    raise AssertionError("unreachable")
