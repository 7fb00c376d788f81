from functools import lru_cache
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st
from sympy.combinatorics import Permutation, PermutationGroup

from semisimp.groups import (GroupTooLarge, InvariantViolation, NotAPGroup, Perm, PermGroupData, agemo,
                             agemo_mask, agemo_triviality_witness, all_subgroups, closure,
                             covers_maximal_cyclic, direct_product, fingerprint, frattini, frattini_mask,
                             is_powerful, maximal_cyclic_classes, min_generators, normal_subgroup_masks,
                             powerful_filtration, quotient, rank, structure_report)
from semisimp.groups.core import bits, popcount
from semisimp.groups.corpus import (cyclic, dihedral, elementary_abelian, heisenberg, quaternion,
                                    random_2groups, standard_families)
from semisimp.groups.pgroup import frattini_by_commutators


@lru_cache(maxsize=None)
def twos() -> tuple:
    return tuple(random_2groups())


@pytest.fixture(scope="module")
def corpus():
    return list(twos()) + [G for _, G in standard_families()]


def sympy_group(G: PermGroupData) -> PermutationGroup:
    return PermutationGroup([Permutation(list(g)) for g in G.generators])


def lam(r: int) -> int:
    return max(0, (r - 1).bit_length())


# -- brute-force oracles ---------------------------------------------------------

def brute_subgroups(G: PermGroupData) -> set[int]:
    subs = {1}
    frontier = {1}
    while frontier:
        nxt = set()
        for H in frontier:
            for x in range(G.order):
                if not H >> x & 1:
                    K = G.generated(list(bits(H)) + [x])
                    if K not in subs:
                        subs.add(K)
                        nxt.add(K)
        frontier = nxt
    return subs


def brute_frattini(G: PermGroupData) -> int:
    subs = brute_subgroups(G)
    proper = [H for H in subs if H != G.full_mask]
    maximal = [H for H in proper if not any(K != H and K & H == H for K in proper)]
    out = G.full_mask
    for H in maximal:
        out &= H
    return out


def brute_maximal_cyclic(G: PermGroupData) -> list[tuple[int, int]]:
    cyc = {G.generated([x]) for x in range(G.order)}
    maximal = [C for C in cyc if not any(D != C and D & C == C for D in cyc)]
    seen, classes = set(), []
    for C in sorted(maximal):
        if C in seen:
            continue
        conj = {sum(1 << G.conj(g, x) for x in bits(C)) for g in range(G.order)}
        seen |= conj
        classes.append((popcount(C), len(conj)))
    return sorted(classes)


# -- construction ------------------------------------------------------------------

def test_closure_examples():
    assert closure([Perm.from_cycles(3, (0, 1)).images]).order == 2
    S3 = closure([(1, 0, 2), (0, 2, 1)])
    assert S3.order == 6
    assert len(S3.conjugacy_classes()) == 3
    assert S3.elements[0] == (0, 1, 2)


def test_closure_bound():
    with pytest.raises(GroupTooLarge):
        closure([(1, 2, 3, 4, 5, 6, 0), (1, 0, 2, 3, 4, 5, 6)], bound=1000)


def test_non_p_group_is_refused():
    S3 = closure([(1, 0, 2), (0, 2, 1)])
    with pytest.raises(NotAPGroup):
        frattini(S3)


def test_perm_product_applies_left_factor_first():
    a = Perm.from_cycles(3, (0, 1))
    b = Perm.from_cycles(3, (1, 2))
    assert (a * b).images == tuple(b.images[a.images[i]] for i in range(3))


def test_record_roundtrip():
    G = quaternion(8)
    H = PermGroupData.from_record(G.to_record())
    assert H.elements == G.elements


# -- examples ---------------------------------------------------------------------

def test_cyclic_four_report():
    r = structure_report(cyclic(4))
    assert (r.order, r.exponent, r.center_order, r.min_generators, r.rank) == (4, 4, 4, 1, 1)


def test_dihedral_eight_report():
    D = dihedral(8)
    r = structure_report(D)
    assert (r.order, r.center_order, r.min_generators, r.rank) == (8, 2, 2, 2)
    assert len(all_subgroups(D)) == 10


def test_conjugacy_class_counts():
    assert len(quaternion(8).conjugacy_classes()) == 5
    C = cyclic(8)
    assert all(len(c) == 1 for c in C.conjugacy_classes())


def test_maximal_cyclic_examples():
    assert len(maximal_cyclic_classes(cyclic(4))) == 1
    Q = maximal_cyclic_classes(quaternion(8))
    assert [c.order for c in Q] == [4, 4, 4]
    C4 = cyclic(4)
    g = next(i for i in range(4) if C4.orders()[i] == 4)
    assert covers_maximal_cyclic(C4, [g])["covered"]
    assert not covers_maximal_cyclic(C4, [C4.power(g, 2)])["covered"]


def test_agemo_examples():
    assert agemo(elementary_abelian(2, 3), 1).order == 1
    assert agemo(cyclic(8), 1).order == 4
    D = dihedral(8)
    assert agemo_mask(D, 1) == frattini_mask(D) == D.center_mask()
    assert frattini(elementary_abelian(3, 2)).order == 1
    assert frattini(cyclic(9)).order == 3
    assert frattini(D).order == 2


def test_powerful_examples():
    assert is_powerful(cyclic(8)) and is_powerful(elementary_abelian(2, 3))
    assert not is_powerful(dihedral(8)) and not is_powerful(quaternion(8))
    assert powerful_filtration(cyclic(16)).t == 0
    fl = powerful_filtration(dihedral(8))
    assert fl.t == 1 and fl.orders == [8, 2]


def test_witness_examples():
    w = agemo_triviality_witness(elementary_abelian(2, 2), 1)
    assert w["premise_holds"] and w["agemo_trivial"]
    w = agemo_triviality_witness(cyclic(8), 1)
    assert not w["premise_holds"] and not w["agemo_trivial"]


def test_heisenberg_is_odd_p_group():
    H = heisenberg(3)
    r = structure_report(H)
    assert (r.order, r.exponent, r.center_order, r.min_generators) == (27, 3, 3, 2)
    assert agemo(H, 1).order == 1
    assert frattini(H).order == 3


def test_generalized_quaternion():
    Q = quaternion(16)
    assert Q.order == 16 and Q.center_mask().bit_count() == 2
    assert len([x for x in range(16) if Q.orders()[x] == 2]) == 1


# -- corpus ------------------------------------------------------------------------

def test_corpus_size_and_types(corpus):
    groups = twos()
    assert len(groups) >= 50
    assert all(G.is_p_group() and G.p == 2 and G.order <= 64 for G in groups)
    assert len({fingerprint(G) for G in groups}) == len(groups)
    assert random_2groups()[7].elements == groups[7].elements      # seeded


def test_structure_matches_sympy(corpus):
    for G in corpus[::3]:
        S = sympy_group(G)
        r = structure_report(G, with_rank=False)
        assert r.order == S.order()
        assert r.center_order == S.center().order()
        assert r.num_classes == len(S.conjugacy_classes())
        assert r.exponent == max(p.order() for p in S.elements)


def test_frattini_matches_brute_force(corpus):
    for G in corpus:
        if G.order <= 32:
            assert frattini_mask(G) == brute_frattini(G)


def test_maximal_cyclic_matches_brute_force(corpus):
    for G in corpus:
        got = sorted((c.order, len(c.members)) for c in maximal_cyclic_classes(G))
        assert got == brute_maximal_cyclic(G)


def test_agemo_is_frattini_for_2groups(corpus):
    for G in corpus:
        if G.p == 2:
            assert agemo_mask(G, 1) == frattini_mask(G)
        assert frattini_by_commutators(G) == frattini_mask(G)


def test_agemo_quotient_and_maximality(corpus):
    for G in corpus:
        p = G.p
        for m in (1, 2):
            S = agemo_mask(G, m)
            Q, img = quotient(G, S)
            assert (p ** m) % Q.exponent() == 0
            for N in normal_subgroup_masks(G):
                QN, imgN = quotient(G, N)
                image = 0
                for x in bits(S):
                    image |= 1 << imgN[x]
                assert agemo_mask(QN, m, p) == image
                if (p ** m) % QN.exponent() == 0:
                    assert S & N == S


def test_agemo_distributes_over_products(corpus):
    small = [G for G in corpus if G.order <= 8 and G.p == 2]
    for A, B in combinations(small[:6], 2):
        P = direct_product(A, B)
        SA, SB = agemo(A, 1), agemo(B, 1)
        SP = agemo(P, 1)
        assert SP.order == SA.order * SB.order
        na = A.degree
        for e in SP.elements:
            assert e[:na] in SA.index
            assert tuple(x - na for x in e[na:]) in SB.index


def test_witness_implication(corpus):
    for G in corpus:
        for m in (1, 2, 3):
            w = agemo_triviality_witness(G, m)
            assert not w["premise_holds"] or w["agemo_trivial"]


def test_filtration_length_bound(corpus):
    for G in corpus:
        r = rank(G)
        eps = 1 if G.p == 2 else 0
        fl = powerful_filtration(G)
        assert fl.t <= lam(r) + eps
        for A, B in zip(fl.chain, fl.chain[1:]):
            a, b = G.mask_of(A), G.mask_of(B)
            assert b & a == b
            # normal in the previous term, elementary abelian quotient
            assert all(b >> G.conj(g, x) & 1 for g in bits(a) for x in bits(b))
            assert all(b >> G.power(g, G.p) & 1 for g in bits(a))
            assert all(b >> G.commutator(g, h) & 1 for g in bits(a) for h in bits(a))
        assert is_powerful(fl.chain[-1], G.p)
        assert min_generators(G) <= r


def test_rank_not_computed_when_large():
    G = direct_product(direct_product(dihedral(16), dihedral(16)), cyclic(8))
    assert G.order > 1024
    assert rank(G) is None
    assert structure_report(G).as_dict()["rank"] == "not computed"


@settings(max_examples=25)
@given(st.data())
def test_random_subgroup_closure_properties(data):
    pool = twos()
    G = data.draw(st.sampled_from(pool))
    xs = data.draw(st.lists(st.integers(0, G.order - 1), min_size=1, max_size=3))
    H = G.generated(xs)
    elems = list(bits(H))
    assert 0 in elems
    for a in elems:
        assert H >> G.inverses()[a] & 1
        for b in elems:
            assert H >> G.mul(a, b) & 1
    assert G.order % popcount(H) == 0


def test_invariant_violation_is_exported():
    assert issubclass(InvariantViolation, RuntimeError)
