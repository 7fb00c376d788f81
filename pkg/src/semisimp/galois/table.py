"""Automorphism tables and Frobenius elements."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm

from ..algebra import gfp
from ..algebra.finite_field import FFDesc, factor_mod_p
from ..algebra.lattice import algdep_reconstruct
from ..algebra.numtheory import balanced, is_prime, rational_reconstruct
from ..algebra.padic import PadicRootSet, hensel_lift_roots
from ..algebra.poly import IntPoly, RatPoly, mulmod_monic, poly_rem_monic, vanishes_at_quotient
from .descent import (BudgetExceeded, DescentConfig, DescentFailure, Interpolator, bits_for,
                      descent_generators, first_split_prime, numerator_bound, perm_closure,
                      perm_order, precision_for, root_bound, transfer)
from .field import NumberFieldDesc, normality_obstruction


class GaloisError(RuntimeError):
    pass


class FrobeniusUndefined(ValueError):
    pass


@dataclass(frozen=True)
class Automorphism:
    g: RatPoly
    perm: tuple


@dataclass(frozen=True)
class AutomorphismTable:
    field: NumberFieldDesc
    autos: tuple
    identity_index: int
    root_set: PadicRootSet
    method: str = "descent"

    @property
    def q(self) -> int:
        return self.root_set.q

    @property
    def f(self) -> IntPoly:
        return self.field.f

    @property
    def perms(self) -> list[tuple]:
        return [a.perm for a in self.autos]

    def index_of_perm(self, perm) -> int:
        return self._perm_index()[tuple(perm)]

    def _perm_index(self) -> dict:
        cache = self.__dict__.get("_pidx")
        if cache is None:
            cache = {a.perm: i for i, a in enumerate(self.autos)}
            object.__setattr__(self, "_pidx", cache)
        return cache

    def group(self):
        from ..groups import PermGroupData
        cache = self.__dict__.get("_group")
        if cache is None:
            cache = PermGroupData.from_elements(self.perms)
            object.__setattr__(self, "_group", cache)
        return cache

    def power(self, index: int, e: int) -> int:
        """Index of the e-th power of the automorphism with the given index."""
        return self.group().power(index, e)

    # serialization ---------------------------------------------------------
    def to_record(self) -> dict:
        return {
            "f": [str(c) for c in self.f.coeffs],
            "q": self.q,
            "d": self.root_set.d,
            "k": self.root_set.k,
            "method": self.method,
            "identity_index": self.identity_index,
            "irreducibility_assumed": self.field.irreducibility_assumed,
            "autos": [{"g": RatPoly.to_record(a.g)["coeffs"], "perm": list(a.perm)} for a in self.autos],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_record(), indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_record(cls, rec: dict) -> "AutomorphismTable":
        try:
            f = IntPoly(tuple(int(c) for c in rec["f"]))
            q, d, k = int(rec["q"]), int(rec["d"]), int(rec["k"])
            autos = tuple(Automorphism(RatPoly.from_record({"coeffs": a["g"]}), tuple(int(x) for x in a["perm"]))
                          for a in rec["autos"])
            ident = int(rec["identity_index"])
            method = str(rec.get("method", "descent"))
            assumed = bool(rec.get("irreducibility_assumed", False))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed automorphism table: {exc!r}") from None
        field = NumberFieldDesc(f, (), assumed)
        rs = hensel_lift_roots(f, q, d, k)
        table = cls(field, autos, ident, rs, method)
        _check_perms_mod_q(table)
        return table

    @classmethod
    def loads(cls, text: str) -> "AutomorphismTable":
        return cls.from_record(json.loads(text))


@dataclass(frozen=True)
class FrobeniusResult:
    t: int
    element: int
    class_id: int
    order: int
    residue_degree: int
    via: str = "defining polynomial"


# -- construction ---------------------------------------------------------------

def _rational_inverse(f: IntPoly, a: IntPoly, q: int, max_doublings: int = 12) -> tuple[IntPoly, int]:
    """(U, D) with U/D = 1/a in Q[x]/(f), found q-adically and verified exactly."""
    m = f.coeffs
    n = f.degree
    red_f = gfp.from_ints(m, q)
    u = gfp.invmod(gfp.from_ints(a.coeffs, q), red_f, q)
    ar = poly_rem_monic(list(a.coeffs), m)
    prec = 1
    target = 64
    for _ in range(max_doublings + 6):
        while prec < target:
            prec = min(2 * prec, target)
            M = q ** prec
            au = [c % M for c in mulmod_monic(ar, u, m)]
            two_minus = [(-c) % M for c in au] + [0] * (n - len(au))
            two_minus[0] = (two_minus[0] + 2) % M
            u = [c % M for c in mulmod_monic(u, two_minus, m)]
        M = q ** prec
        fracs = [rational_reconstruct(c, M) for c in u]
        if all(x is not None for x in fracs):
            D = 1
            for x in fracs:
                D = lcm(D, x.denominator)
            U = [int(x * D) for x in fracs]
            check = poly_rem_monic(mulmod_monic(U, ar, m), m)
            if check[:1] == [D] and not any(check[1:]):
                return IntPoly(tuple(U)), D
        target *= 2
    raise GaloisError("inverse of f' could not be reconstructed")


def _g_from_numerator(h: IntPoly, U: IntPoly, D: int, f: IntPoly) -> RatPoly:
    P = mulmod_monic(list(h.coeffs), list(U.coeffs), f.coeffs)
    return RatPoly(tuple(Fraction(c, D) for c in P))


def _check_perms_mod_q(table: AutomorphismTable):
    rs = table.root_set
    ring = rs.ring.with_precision(1)
    for a in table.autos:
        num, D = a.g.numerator_poly()
        if D % rs.q == 0:
            raise GaloisError("automorphism denominator divisible by the auxiliary prime")
        inv = pow(D, -1, rs.q)
        for i, r in enumerate(rs.roots):
            v = ring.scale(ring.eval(num.coeffs, ring.reduce(r)), inv)
            if ring.residue_key(v) != ring.residue_key(rs.roots[a.perm[i]]):
                raise GaloisError("automorphism permutation does not match its polynomial")


def _finish(field: NumberFieldDesc, pairs: list[tuple[RatPoly, tuple]], rs: PadicRootSet,
            method: str) -> AutomorphismTable:
    n = field.degree
    pairs.sort(key=lambda gp: gp[1])
    perms = [p for _, p in pairs]
    if len(set(perms)) != n:
        raise GaloisError("field not Galois or reconstruction failed")
    closed = perm_closure(perms, n, n)
    if closed != perms:
        raise GaloisError("automorphism permutations are not closed under composition")
    autos = tuple(Automorphism(g, p) for g, p in pairs)
    table = AutomorphismTable(field, autos, 0, rs, method)
    _check_perms_mod_q(table)
    return table


def automorphisms(field: NumberFieldDesc | IntPoly, seed: int = 0, method: str = "auto",
                  q_bound: int = 10 ** 5, budget: float | None = None) -> AutomorphismTable:
    """All automorphisms of the Galois field Q[x]/(f), each verified exactly.

    method: "descent" (central quotients, scales to degree 64 and beyond for
    nilpotent groups), "lattice" (one lattice reduction per root) or "auto"
    (descent, falling back to the lattice route when no central element exists).
    """
    if isinstance(field, IntPoly):
        field = NumberFieldDesc.from_poly(field)
    if method not in ("auto", "descent", "lattice"):
        raise ValueError(f"unknown method {method!r}")
    deadline = None if budget is None else time.monotonic() + budget
    f = field.f
    n = field.degree
    bad = normality_obstruction(f)
    if bad is not None:
        raise GaloisError(f"field is not Galois: f mod {bad[0]} has factor degrees {bad[1]}")
    q = first_split_prime(f, q_bound)
    if n == 1:
        rs = hensel_lift_roots(f, q, 1, 1)
        return _finish(field, [(RatPoly((0, 1)), (0,))], rs, "trivial")
    if method in ("auto", "descent"):
        cfg = DescentConfig(seed=seed, deadline=deadline)
        rs = hensel_lift_roots(f, q, 1, precision_for(q, bits_for(numerator_bound(f))), seed)
        try:
            gens, rs, _ = descent_generators(rs, cfg)
        except DescentFailure:
            if method == "descent":
                raise
        else:
            return _table_from_perms(field, perm_closure(gens, n, n), rs, cfg)
    return _lattice_route(field, q, seed, deadline)


def _table_from_perms(field: NumberFieldDesc, perms: list[tuple], rs: PadicRootSet,
                      cfg: DescentConfig) -> AutomorphismTable:
    f = field.f
    n = field.degree
    if len(perms) != n:
        raise GaloisError("field not Galois or reconstruction failed")
    Bh = numerator_bound(f)
    interp = Interpolator(f, rs.ring, rs.roots)
    U, D = _rational_inverse(f, f.derivative(), rs.q)
    df = f.derivative()
    pairs = []
    for perm in perms:
        cfg.check_time()
        h = interp.numerator(perm, Bh)
        if h is None or not vanishes_at_quotient(f, h, df):
            raise GaloisError("field not Galois or reconstruction failed")
        if transfer(h, f, rs.ring, rs.roots) != perm:
            raise GaloisError("numerator polynomial does not induce its permutation")
        pairs.append((_g_from_numerator(h, U, D, f), perm))
    return _finish(field, pairs, rs, "descent")


def _lattice_route(field: NumberFieldDesc, q: int, seed: int, deadline: float | None) -> AutomorphismTable:
    f = field.f
    n = field.degree
    k = precision_for(q, 128)
    found: dict[int, RatPoly] = {}
    rs = None
    for _ in range(9):
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceeded("time budget exceeded")
        rs = hensel_lift_roots(f, q, 1, k, seed) if rs is None else rs.relift(k)
        ring = rs.ring
        powers = [ring.pow(rs.roots[0], i) for i in range(n)]

        def verify(g: RatPoly) -> bool:
            num, den = g.numerator_poly()
            return vanishes_at_quotient(f, num, IntPoly((den,)))

        bound = int(ring.modulus ** 0.5) if ring.modulus < 1 << 1000 else 1 << (ring.modulus.bit_length() // 2)
        for j in range(n):
            if j in found:
                continue
            g = algdep_reconstruct(powers, rs.roots[j], q, k, bound, verify)
            if g is not None:
                found[j] = g
        if len(found) == n:
            break
        k *= 2
    else:
        raise GaloisError("field not Galois or reconstruction failed")
    low = rs.ring.with_precision(1)
    pairs = []
    for j, g in found.items():
        num, den = g.numerator_poly()
        inv = pow(den, -1, q)
        perm = []
        for r in rs.roots:
            v = low.scale(low.eval(num.coeffs, low.reduce(r)), inv)
            perm.append(rs.index_of(v))
        pairs.append((g, tuple(perm)))
    return _finish(field, pairs, rs, "lattice")


# -- Frobenius ------------------------------------------------------------------

def conj_class_of(table: AutomorphismTable, element_index: int) -> int:
    return table.group().class_id(element_index)


def frobenius(table: AutomorphismTable, t: int, allow_auxiliary: bool = True) -> FrobeniusResult:
    """Frobenius element above t, canonical for the smallest irreducible factor.

    If f is not separable mod t (t divides the index of Z[alpha]), an auxiliary
    generator theta of the field with separable reduction is used instead,
    when one is found. None exists when t ramifies, or when t is a common
    index divisor (too few irreducible polynomials over F_t of the residue
    degree to separate the primes above t).
    """
    if not is_prime(t):
        raise ValueError(f"{t} is not prime")
    f = table.f
    red = gfp.from_ints(f.coeffs, t)
    separable = len(gfp.gcd(red, gfp.deriv(red, t), t)) == 1
    if not separable:
        if allow_auxiliary:
            return _frobenius_auxiliary(table, t)
        raise FrobeniusUndefined("t divides index or discriminant; Frobenius undefined here")
    fac = factor_mod_p(f, FFDesc.of(t))
    degs = {g.degree for g, _ in fac}
    if len(degs) != 1:
        raise FrobeniusUndefined("t divides index or discriminant; Frobenius undefined here")
    h = list(fac[0][0].coeffs)
    xt = gfp.powmod([0, 1], t, h, t)
    hits = []
    for j, a in enumerate(table.autos):
        try:
            gj = list(a.g.reduce_mod(t))
        except ZeroDivisionError:
            raise FrobeniusUndefined("bad reduction prime for automorphism table") from None
        if gfp.rem(gj, h, t) == xt:
            hits.append(j)
    if len(hits) != 1:
        raise GaloisError(f"expected one Frobenius match at {t}, found {len(hits)}")
    j = hits[0]
    return FrobeniusResult(t, j, conj_class_of(table, j), perm_order(table.autos[j].perm),
                           degs.pop(), "defining polynomial")


def _auxiliary_candidates(n: int):
    for c in (1, 2, -1, 3, -2):
        for j in range(1, n):
            yield j, c


def _frobenius_auxiliary(table: AutomorphismTable, t: int, max_tries: int = 40) -> FrobeniusResult:
    f = table.f
    n = f.degree
    R = root_bound(f)
    rs = table.root_set
    for tries, (j, c) in enumerate(_auxiliary_candidates(n)):
        if tries >= max_tries:
            break
        Rt = (1 + abs(c)) * R
        cbound = max(comb(n, k) * Rt ** k for k in range(n + 1))
        perm_j = table.autos[j].perm
        # exact integer characteristic polynomial of theta = alpha + c*sigma_j(alpha)
        need = max(bits_for(cbound, 4), 0)
        if rs.ring.modulus.bit_length() <= need:
            rs = rs.relift(precision_for(rs.q, need))
        ring = rs.ring
        theta = [ring.add(rs.roots[i], ring.scale(rs.roots[perm_j[i]], c)) for i in range(n)]
        Ftheta = _charpoly_from_roots(ring, theta, cbound)
        if Ftheta is None:
            continue
        red = gfp.from_ints(Ftheta.coeffs, t)
        if len(gfp.gcd(red, gfp.deriv(red, t), t)) > 1:
            continue
        fac = factor_mod_p(Ftheta, FFDesc.of(t))
        degs = {g.degree for g, _ in fac}
        if len(degs) != 1:
            continue
        deg = degs.pop()
        hfac = list(fac[0][0].coeffs)
        dF = gfp.rem(gfp.from_ints(Ftheta.derivative().coeffs, t), hfac, t)
        target = gfp.rem(gfp.mul(gfp.powmod([0, 1], t, hfac, t), dF, t), hfac, t)
        Bh = numerator_bound(Ftheta, Rt)
        need = bits_for(Bh)
        if ring.modulus.bit_length() <= need:
            rs = rs.relift(precision_for(rs.q, need))
            ring = rs.ring
            theta = [ring.add(rs.roots[i], ring.scale(rs.roots[perm_j[i]], c)) for i in range(n)]
        interp = Interpolator(Ftheta, ring, theta)
        for s, a in enumerate(table.autos):
            if perm_order(a.perm) != deg:
                continue
            hs = interp.numerator(a.perm, Bh)
            if hs is None:
                raise GaloisError("auxiliary numerator is not integral")
            if gfp.rem(gfp.from_ints(hs.coeffs, t), hfac, t) == target:
                return FrobeniusResult(t, s, conj_class_of(table, s), perm_order(a.perm), deg,
                                       f"auxiliary element alpha{c:+d}*sigma_{j}(alpha)")
        raise GaloisError(f"no Frobenius match at {t} with an auxiliary element")
    raise FrobeniusUndefined(f"t divides index or discriminant and no auxiliary generator "
                             f"with separable reduction mod {t} was found")


def _charpoly_from_roots(ring, roots, bound: int) -> IntPoly | None:
    M = ring.modulus
    coeffs = [ring.one()]
    for r in roots:
        nr = ring.neg(r)
        new = [ring.zero()] * (len(coeffs) + 1)
        for i, cc in enumerate(coeffs):
            new[i + 1] = ring.add(new[i + 1], cc)
            new[i] = ring.add(new[i], ring.mul(cc, nr))
        coeffs = new
    out = []
    for cc in coeffs:
        if any(cc[1:]):
            return None
        b = balanced(cc[0], M)
        if abs(b) > bound:
            return None
        out.append(b)
    return IntPoly(tuple(out))
