import json
import re
from pathlib import Path

import pytest
import sympy

from semisimp.cli import builtin_bundle_path
from semisimp.criterion import LocalFieldDesc, compare, dump_bundle, load_bundle
from semisimp.criterion.local import Gaussian
from semisimp.dataset64 import (CYCLIC_TUPLES, T_CHARPOLY, T_TRACES, dataset, example_bundle, f64,
                                parse_polynomial_text, reproduce, surrogate_charpoly)
from semisimp.dataset64.data import F64_SHA256, coefficient_digest
from semisimp.dataset64.replay import SKIPPED

SOURCE = Path(__file__).resolve().parents[1] / "paper.md"
X = sympy.Symbol("X")


def source_text() -> str:
    return SOURCE.read_text()


# -- constants against the source document ------------------------------------------

def test_polynomial_matches_source_document():
    text = source_text()
    m = re.search(r"\\begin\{aligned\}\s*&\s*(x\^\{64\}.*?)\\end\{aligned\}", text, re.S)
    raw = m.group(1).replace("&", "").replace("\\\\", " ")
    assert parse_polynomial_text(raw) == f64()


def test_prime_lists_match_source_document():
    text = source_text()
    for T in (T_TRACES, T_CHARPOLY):
        assert "\\{" + ", ".join(map(str, T)) + "\\}" in text
    tuples = "; ".join("(" + ", ".join(map(str, t)) + ")" for t in CYCLIC_TUPLES)
    assert tuples in text
    assert "Frob}(337)" in text


def test_dataset_constants():
    ds = dataset()
    assert ds.expected["order"] == 64
    assert ds.T_charpoly == (5, 7, 11, 17, 23, 31)
    assert ds.cyclic_tuples[5] == (1, 31)
    f = ds.f64
    assert f.degree == 64 and f.coeffs[-1] == 1 and f.coeffs[0] == 2308
    assert coefficient_digest(f) == F64_SHA256 == ds.checksum


def test_polynomial_parser():
    assert parse_polynomial_text("x^{3} - 2x + 1").coeffs == (1, -2, 0, 1)
    assert parse_polynomial_text("x^2+1").coeffs == (1, 0, 1)
    assert parse_polynomial_text("-x^2 + 7").coeffs == (7, 0, -1)
    with pytest.raises(ValueError):
        parse_polynomial_text("x^2 + y")


# -- surrogate characteristic polynomials ---------------------------------------------

def to_sympy(coeffs):
    return sum((c.re + sympy.I * c.im) * X ** k for k, c in enumerate(coeffs))


@pytest.mark.parametrize("n", [3, 4])
def test_surrogates_reduce_to_unipotent(n):
    local = LocalFieldDesc(2, "gaussian")
    target = [1, 1, 1, 1] if n == 3 else [1, 0, 0, 0, 1]      # (X - 1)^n over F_2
    for t in T_TRACES:
        cs = surrogate_charpoly(t, n)
        assert cs[-1] == Gaussian(1) and len(cs) == n + 1
        assert [local.reduce(c) for c in cs] == target


def test_surrogate_at_seven_and_quartic_factor():
    a = 1 + 4 * sympy.I
    p7 = X ** 3 - a * X ** 2 + 7 * a * X - 343
    assert sympy.expand(to_sympy(surrogate_charpoly(7, 3)) - p7) == 0
    for t in (5, 7, 31):
        quart = to_sympy(surrogate_charpoly(t, 4))
        assert sympy.expand(quart - to_sympy(surrogate_charpoly(t, 3)) * (X - t)) == 0
    with pytest.raises(ValueError):
        surrogate_charpoly(5, 2)


# -- end to end (uses the session table) -----------------------------------------------

@pytest.mark.parametrize("name,n,tamper", [("f64_n3", 3, None), ("f64_n4", 4, None),
                                           ("f64_n3_mismatch", 3, "mismatch"),
                                           ("f64_n3_drop31", 3, "drop31")])
def test_shipped_bundles_are_regenerable(f64_table, name, n, tamper):
    shipped = builtin_bundle_path(name).read_text()
    assert dump_bundle(example_bundle(f64_table, n, tamper)) == shipped


def test_shipped_bundle_verdicts():
    v = compare(load_bundle(builtin_bundle_path("f64_n3")))
    assert v.passed
    cov = v.certificate["coverage"]
    assert len(cov) == 6 and all(row["prime"] in T_CHARPOLY for row in cov)
    v = compare(load_bundle(builtin_bundle_path("f64_n3_mismatch")))
    assert (v.failed_condition, v.failed_prime) == ("charpoly_mismatch", 31)
    v = compare(load_bundle(builtin_bundle_path("f64_n3_drop31")))
    assert v.failed_condition == "coverage" and "order 2" in v.detail
    assert compare(load_bundle(builtin_bundle_path("f64_n4"))).passed


def test_full_reproduction(f64_table, tmp_path):
    out = tmp_path / "report.tsv"
    rep = reproduce(table=f64_table, report_path=out)
    assert rep.passed, rep.render()
    c = rep.counts()
    assert c["fail"] == 0 and c[SKIPPED] == 0 and c["info"] == 1
    assert rep.item("Frob(3)").status == "info"
    # tuple positions fix the orders: p_1 has the tuple length, later entries divide it
    assert rep.item("frobenius at trace primes").detail == (
        "5:4 7:4 11:4 13:4 17:4 19:4 23:4 31:2 73:2 137:2 257:2 337:2")
    text = out.read_text()
    assert text == rep.render()
    assert text.splitlines()[-1] == "overall: pass"
    # every item carries a provenance tag
    for line in text.splitlines()[2:-2]:
        status, name, source, detail = line.split("\t")
        assert source in ("derived", "informational") or source.startswith("published: ")


def test_reproduction_is_deterministic(f64_table):
    assert reproduce(table=f64_table).render() == reproduce(table=f64_table).render()


def test_budget_marks_remaining_items_skipped(f64_table):
    rep = reproduce(budget=0.0, table=f64_table)
    assert not rep.passed
    statuses = [i.status for i in rep.items]
    assert SKIPPED in statuses
    first_skip = statuses.index(SKIPPED)
    assert all(s == SKIPPED for s in statuses[first_skip:])
    assert len(rep.items) == len(reproduce(table=f64_table).items)


def test_bundle_json_is_self_describing():
    rec = json.loads(builtin_bundle_path("f64_n3").read_text())
    assert rec["base"] == "gaussian" and rec["p"] == 2 and rec["T"] == list(T_CHARPOLY)
    assert rec["condition1"]["degrees_ruled_out"] == [3, 7]
