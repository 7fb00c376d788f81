"""Finite-level soundness harness: 2-groups of matrices over Z/2^k.

A random group G of n x n matrices that are unipotent mod 2 plays the role
of the Galois group; rho1 is the inclusion and rho2 a conjugate of it, or
a twist of it by a nontrivial sign character (which changes some
characteristic polynomial at a covering element when n is odd).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..groups import PermGroupData, closure, maximal_cyclic_classes, maximal_subgroup_masks
from .local import CharPolyRecord, LocalFieldDesc
from .matrices import charpoly, mat_mul
from .verdict import Attestation, GaloisData, RepComparisonBundle, Verdict, compare


@dataclass(frozen=True)
class MatrixGroup:
    k: int
    mats: tuple            # element i of ``group`` is mats[i]
    group: PermGroupData

    @property
    def modulus(self) -> int:
        return 1 << self.k


def _key(M) -> tuple:
    return tuple(x for row in M for x in row)


def _unkey(t: tuple, n: int) -> list[list[int]]:
    return [list(t[i * n:(i + 1) * n]) for i in range(n)]


def random_unipotent_mod2(n: int, k: int, rng: random.Random) -> list[list[int]]:
    mod = 1 << k
    M = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                M[i][j] = (1 + 2 * rng.randrange(mod // 2)) % mod
            elif i < j:
                M[i][j] = rng.randrange(mod)
            else:
                M[i][j] = 2 * rng.randrange(mod // 2) % mod
    return M


def matrix_group(gens, k: int, bound: int = 256) -> MatrixGroup | None:
    """Closure of matrices mod 2^k as a permutation group (right regular action).
    None if the group has more than ``bound`` elements."""
    mod = 1 << k
    n = len(gens[0])
    ident = _key([[int(i == j) for j in range(n)] for i in range(n)])
    keys = [_key(g) for g in gens]
    elems = {ident: 0}
    order = [ident]
    for x in order:
        X = _unkey(x, n)
        for g in gens:
            y = _key(mat_mul(X, g, mod))
            if y not in elems:
                if len(order) >= bound:
                    return None
                elems[y] = len(order)
                order.append(y)
    perms = []
    for g in keys:
        G = _unkey(g, n)
        perms.append(tuple(elems[_key(mat_mul(_unkey(x, n), G, mod))] for x in order))
    P = closure(perms, p_hint=2)
    start = elems[ident]
    mats = tuple(_unkey(order[perm[start]], n) for perm in P.elements)
    return MatrixGroup(k, mats, P)


def random_matrix_group(n: int, rng: random.Random, bound: int = 256, tries: int = 200) -> MatrixGroup:
    for _ in range(tries):
        k = rng.choice((2, 3))
        gens = [random_unipotent_mod2(n, k, rng) for _ in range(rng.choice((1, 2)))]
        mg = matrix_group(gens, k, bound)
        if mg is not None and mg.group.order > 2:
            return mg
    raise RuntimeError("no small random matrix group found")


def random_invertible(n: int, k: int, rng: random.Random) -> list[list[int]]:
    """Uniformly random matrix over Z/2^k with odd determinant."""
    mod = 1 << k
    while True:
        A = [[rng.randrange(mod) for _ in range(n)] for _ in range(n)]
        d = charpoly(A)[0] * (-1) ** n
        if d % 2:
            return A


def _inverse_mod(A, k: int) -> list[list[int]]:
    """Inverse over Z/2^k by Gauss-Jordan (odd pivots exist since det is odd)."""
    mod = 1 << k
    n = len(A)
    M = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        piv = next(r for r in range(c, n) if M[r][c] % 2)
        M[c], M[piv] = M[piv], M[c]
        inv = pow(M[c][c], -1, mod)
        M[c] = [x * inv % mod for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [(x - f * y) % mod for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


def covering_elements(G: PermGroupData) -> list[int]:
    """One generator per maximal cyclic class."""
    return [c.generator for c in maximal_cyclic_classes(G)]


def sign_character(G: PermGroupData, rng: random.Random) -> list[int]:
    """+1/-1 on each element: a random nontrivial homomorphism to {+-1}."""
    maxes = maximal_subgroup_masks(G, 2)
    ker = rng.choice(maxes)
    return [1 if ker >> i & 1 else -1 for i in range(G.order)]


def build_bundle(mg: MatrixGroup, rho2_mats, label: str) -> RepComparisonBundle:
    G = mg.group
    mod = mg.modulus
    frob_elems = covering_elements(G)
    # labels 1, 2, ... stand in for test primes
    labels = list(range(1, len(frob_elems) + 1))
    rho1, rho2 = {}, {}
    for lab, e in zip(labels, frob_elems):
        rho1[lab] = CharPolyRecord(lab, tuple(c % mod for c in charpoly(mg.mats[e])))
        rho2[lab] = CharPolyRecord(lab, tuple(c % mod for c in charpoly(rho2_mats[e])))
    n = len(mg.mats[0])
    return RepComparisonBundle(
        n=n, local=LocalFieldDesc(2, "rational"),
        galois=GaloisData(G, dict(zip(labels, frob_elems)), label),
        T=tuple(labels), rho1=rho1, rho2=rho2,
        condition1=Attestation("asserted", "finite matrix group: image is a 2-group by construction"),
    )


@dataclass(frozen=True)
class TrialResult:
    seed: int
    kind: str               # "conjugate" or "twisted"
    order: int
    verdict: Verdict
    all_charpolys_agree: bool


def run_trial(seed: int, kind: str, n: int = 3) -> TrialResult:
    rng = random.Random(seed)
    mg = random_matrix_group(n, rng)
    mod = mg.modulus
    if kind == "conjugate":
        A = random_invertible(n, mg.k, rng)
        Ai = _inverse_mod(A, mg.k)
        rho2 = [mat_mul(mat_mul(A, M, mod), Ai, mod) for M in mg.mats]
    elif kind == "twisted":
        chi = sign_character(mg.group, rng)
        rho2 = [[[c * x % mod for x in row] for row in M] for c, M in zip(chi, mg.mats)]
    else:
        raise ValueError(f"unknown trial kind {kind!r}")
    agree = all(
        [c % mod for c in charpoly(a)] == [c % mod for c in charpoly(b)]
        for a, b in zip(mg.mats, rho2)
    )
    verdict = compare(build_bundle(mg, rho2, f"{kind} seed {seed}"))
    return TrialResult(seed, kind, mg.group.order, verdict, agree)
