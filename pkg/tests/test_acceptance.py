"""Acceptance criteria 1-9, one PASS/FAIL line each."""

import time
from contextlib import contextmanager
from math import gcd

import sympy

from conftest import BUILD_SECONDS
from semisimp.algebra import IntPoly
from semisimp.algebra.numtheory import multiplicative_order
from semisimp.cli import main
from semisimp.criterion import (CharPolyRecord, LocalFieldDesc, congruent_eigenvalues, parse_gaussian, plan,
                                residual_extension_degrees)
from semisimp.criterion.harness import run_trial
from semisimp.dataset64 import CYCLIC_TUPLES, reproduce
from semisimp.groups import (agemo, agemo_mask, agemo_triviality_witness, covers_maximal_cyclic, direct_product,
                             frattini_mask, is_powerful, maximal_cyclic_classes, normal_subgroup_masks,
                             powerful_filtration, quotient, rank, structure_report)
from semisimp.groups.core import bits
from semisimp.galois import automorphisms, frobenius
from semisimp.groups.corpus import random_2groups, standard_families

BUDGET_30_MIN = 30 * 60


@contextmanager
def criterion(k: int, capsys, limit: float | None = None, carried: float = 0.0):
    # carried: seconds already spent in shared fixtures this criterion depends on
    start = time.perf_counter() - carried
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        within = limit is None or elapsed <= limit
        with capsys.disabled():
            verdict = "PASS" if ok and within else "FAIL"
            note = "" if within else f" (took {elapsed:.1f}s, limit {limit}s)"
            print(f"\ncriterion {k}: {verdict} [{elapsed:.2f}s]{note}")
        assert within, f"criterion {k} exceeded its {limit}s budget"


def frob_index(table, t):
    G = table.group()
    return G.index[table.autos[frobenius(table, t).element].perm]


def test_criterion_1_plan(capsys):
    with criterion(1, capsys, limit=0.5):
        a, b = plan(3, 2, 2), plan(2, 2, 1)
        assert (a.m, a.epsilon, a.N, a.r, a.lambda_steps, a.depth) == (2, 1, 6, 19440, 15, 18)
        assert (b.m, b.epsilon, b.N, b.r, b.lambda_steps, b.depth) == (1, 1, 2, 16, 4, 6)


def test_criterion_2_cyclotomic_oracle(capsys):
    with criterion(2, capsys, limit=10):
        f = IntPoly((1,) + (0,) * 7 + (1,))
        T = automorphisms(f)
        expect = set()
        for k in range(1, 16, 2):
            g = IntPoly((0,) * k + (1,)) % f
            expect.add(tuple(g.coeffs))
        assert {tuple(int(c) for c in a.g.coeffs) for a in T.autos} == expect
        for t in sympy.primerange(3, 100):
            r = frobenius(T, t)
            xt = IntPoly((0,) * (t % 16) + (1,)) % f
            assert tuple(int(c) for c in T.autos[r.element].g.coeffs) == tuple(xt.coeffs)
            assert r.order == multiplicative_order(t, 16)


def test_criterion_3_group_fingerprint(capsys, f64_table):
    with criterion(3, capsys, limit=BUDGET_30_MIN, carried=BUILD_SECONDS.get("f64", 0.0)):
        assert len(f64_table.autos) == 64
        G = f64_table.group()
        r = structure_report(G, with_rank=False)
        assert (r.order, r.exponent, r.center_order) == (64, 4, 2)
        assert sorted(c.order for c in maximal_cyclic_classes(G)) == [2, 4, 4, 4, 4, 4]


def test_criterion_4_frobenius_table(capsys, f64_table):
    with criterion(4, capsys, limit=120):
        G = f64_table.group()
        T = (5, 7, 11, 17, 23, 31)
        assert tuple(frobenius(f64_table, t).order for t in T) == (4, 4, 4, 4, 4, 2)
        for tup in CYCLIC_TUPLES:
            g = frob_index(f64_table, tup[1])
            for i in range(1, len(tup)):
                assert G.class_id(frob_index(f64_table, tup[i])) == G.class_id(G.power(g, i))
        assert G.class_id(frob_index(f64_table, 137)) == G.class_id(G.power(frob_index(f64_table, 5), 2))
        f7 = frob_index(f64_table, 7)
        assert G.class_id(G.power(f7, 3)) == G.class_id(f7)
        assert G.generated([frob_index(f64_table, 337)]) == G.center_mask()
        assert covers_maximal_cyclic(G, [frob_index(f64_table, t) for t in T])["covered"]
        cov = covers_maximal_cyclic(G, [frob_index(f64_table, t) for t in T if t != 31])
        classes = maximal_cyclic_classes(G)
        assert not cov["covered"] and [classes[k].order for k in cov["missing"]] == [2]


def test_criterion_5_pgroup_suite(capsys):
    with criterion(5, capsys, limit=120):
        twos = random_2groups()
        corpus = list(twos) + [G for _, G in standard_families()]
        assert len(twos) >= 50
        for G in corpus:
            p = G.p
            if p == 2:
                assert agemo_mask(G, 1) == frattini_mask(G)
            for m in (1, 2, 3):
                w = agemo_triviality_witness(G, m)
                assert not w["premise_holds"] or w["agemo_trivial"]
            S = agemo_mask(G, 1)
            for N in normal_subgroup_masks(G):
                Q, img = quotient(G, N)
                image = 0
                for x in bits(S):
                    image |= 1 << img[x]
                assert agemo_mask(Q, 1, p) == image
            r = rank(G)
            fl = powerful_filtration(G)
            assert fl.t <= max(0, (r - 1).bit_length()) + (1 if p == 2 else 0)
            assert is_powerful(fl.chain[-1], p)
        small = [G for G in twos if G.order <= 8][:5]
        for A in small:
            for B in small:
                assert agemo(direct_product(A, B), 1).order == agemo(A, 1).order * agemo(B, 1).order


def test_criterion_6_soundness_harness(capsys):
    with criterion(6, capsys, limit=60):
        for s in range(20):
            r = run_trial(s, "conjugate")
            assert r.verdict.passed, (s, r.verdict)
        for s in range(20):
            r = run_trial(1000 + s, "twisted")
            assert r.verdict.result == "fail" and r.verdict.failed_prime is not None, (s, r.verdict)


def test_criterion_7_congruent_eigenvalues(capsys):
    with criterion(7, capsys, limit=0.5):
        P7 = CharPolyRecord(7, tuple(map(parse_gaussian, ["-343", "7+28i", "-1-4i", "1"])))
        out = congruent_eigenvalues(P7, P7, LocalFieldDesc(2, "gaussian"), 3)
        assert out == {"pass": True, "lambda_residue": 1}
        Q = CharPolyRecord(0, (1, -1, 1))
        assert not congruent_eigenvalues(Q, Q, LocalFieldDesc(2), 2)["pass"]


def test_criterion_8_residual_degrees(capsys):
    with criterion(8, capsys, limit=0.5):
        assert residual_extension_degrees(3, 2, 2) == [1, 3, 7]
        # independent count: odd divisors of 168 up to 7
        assert [d for d in range(1, 8) if 168 % d == 0 and gcd(d, 2) == 1] == [1, 3, 7]


def test_criterion_9_end_to_end(capsys, f64_table):
    with criterion(9, capsys, limit=BUDGET_30_MIN, carried=BUILD_SECONDS.get("f64", 0.0)):
        rep = reproduce(table=f64_table)
        assert rep.passed, rep.render()
        assert main(["check", "f64_n3"]) == 0
        out = capsys.readouterr().out
        rows = [line for line in out.splitlines() if "covered by Frob(" in line]
        assert len(rows) == 6 and "not covered" not in out
        assert main(["check", "f64_n3_mismatch"]) == 1
        out = capsys.readouterr().out
        assert "failed_condition: charpoly_mismatch" in out and "failed_prime: 31" in out
        assert main(["check", "f64_n3_drop31"]) == 1
        out = capsys.readouterr().out
        assert "failed_condition: coverage" in out and "order 2" in out
