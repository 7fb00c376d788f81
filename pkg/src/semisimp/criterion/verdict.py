"""Comparison bundles and the semi-simplification verdict."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..groups import PermGroupData, closure, covers_maximal_cyclic, maximal_cyclic_classes
from .local import CharPolyRecord, LocalFieldDesc, congruent_eigenvalues
from .plan import gcd_condition, residual_extension_degrees


class BundleError(ValueError):
    pass


@dataclass(frozen=True)
class Attestation:
    mode: str                    # "asserted" or "degree_list"
    evidence: str = ""
    degrees_ruled_out: tuple = ()


@dataclass(frozen=True)
class GaloisData:
    """A finite Galois group with chosen Frobenius elements (element indices)."""
    group: PermGroupData
    frobenius: dict
    source: str = "inline"


@dataclass(frozen=True)
class RepComparisonBundle:
    n: int
    local: LocalFieldDesc
    galois: GaloisData
    T: tuple
    rho1: dict
    rho2: dict
    condition1: Attestation | None = None
    v: int = 0


@dataclass(frozen=True)
class Verdict:
    result: str                        # "isomorphic_ss" or "fail"
    failed_condition: str | None = None
    detail: str = ""
    failed_prime: int | None = None
    certificate: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.result == "isomorphic_ss"

    def to_record(self) -> dict:
        return {
            "result": self.result,
            "failed_condition": self.failed_condition,
            "failed_prime": self.failed_prime,
            "detail": self.detail,
            "certificate": self.certificate,
        }

    def render(self) -> str:
        lines = [f"result: {self.result}"]
        if self.failed_condition:
            lines.append(f"failed_condition: {self.failed_condition}")
        if self.failed_prime is not None:
            lines.append(f"failed_prime: {self.failed_prime}")
        if self.detail:
            lines.append(f"detail: {self.detail}")
        cov = self.certificate.get("coverage")
        if cov:
            lines.append("coverage:")
            for row in cov:
                what = "not covered" if row["prime"] is None else f"covered by Frob({row['prime']})"
                lines.append(f"  class {row['class']} (order {row['order']}): {what}")
        per = self.certificate.get("primes")
        if per:
            lines.append("primes:")
            for row in per:
                lines.append("  t={t} frob_order={frob_order} congruent={congruent} "
                             "lambda={lambda_residue} charpoly_equal={charpoly_equal}".format(**row))
        return "\n".join(lines) + "\n"


def _attestation_ok(att: Attestation | None, n: int, local: LocalFieldDesc) -> tuple[bool, str]:
    if att is None:
        return False, "no attestation record"
    if att.mode == "asserted":
        return (bool(att.evidence.strip()), "asserted without evidence text")
    if att.mode == "degree_list":
        need = [d for d in residual_extension_degrees(n, local.residue_q, local.p) if d > 1]
        missing = [d for d in need if d not in set(att.degrees_ruled_out)]
        if missing:
            return False, f"degrees not ruled out: {missing}"
        return True, ""
    return False, f"unknown attestation mode {att.mode!r}"


def compare(bundle: RepComparisonBundle) -> Verdict:
    """Decide whether the two representations have isomorphic semi-simplifications.

    Checks, in order: gcd condition, attestation for the residual condition,
    congruent eigenvalues at each test prime, Frobenius coverage of every
    maximal cyclic class, and equality of characteristic polynomials.
    """
    n, local = bundle.n, bundle.local
    G = bundle.galois.group
    T = tuple(bundle.T)
    for t in T:
        if t not in bundle.rho1 or t not in bundle.rho2 or t not in bundle.galois.frobenius:
            raise BundleError(f"incomplete bundle: no data for t={t}")
    rho1 = {t: bundle.rho1[t].check(local, n) for t in T}
    rho2 = {t: bundle.rho2[t].check(local, n) for t in T}
    frob = {t: int(bundle.galois.frobenius[t]) for t in T}
    orders = G.orders()

    classes = maximal_cyclic_classes(G)
    where = {m: k for k, c in enumerate(classes) for m in c.members}
    cover_rows = []
    for k, c in enumerate(classes):
        who = next((t for t in sorted(T) if where.get(G.generated([frob[t]])) == k), None)
        cover_rows.append({"class": k, "order": c.order, "prime": who})
    prime_rows = []
    for t in T:
        ce = congruent_eigenvalues(rho1[t], rho2[t], local, n, bundle.v)
        prime_rows.append({"t": t, "frob_order": orders[frob[t]], "congruent": ce["pass"],
                           "lambda_residue": ce["lambda_residue"],
                           "charpoly_equal": rho1[t].coeffs == rho2[t].coeffs})
    cert = {"coverage": cover_rows, "primes": prime_rows}

    if not gcd_condition(n, local.residue_q):
        return Verdict("fail", "gcd", f"gcd({n}, {local.residue_q - 1}) != 1", None, cert)
    ok, why = _attestation_ok(bundle.condition1, n, local)
    if not ok:
        return Verdict("fail", "attestation_missing", why, None, cert)
    for row in prime_rows:
        if not row["congruent"]:
            return Verdict("fail", "congruence", f"eigenvalues not congruent at t={row['t']}",
                           row["t"], cert)
    cov = covers_maximal_cyclic(G, frob.values())
    if not cov["covered"]:
        desc = ", ".join(f"class {k} (order {classes[k].order})" for k in cov["missing"])
        return Verdict("fail", "coverage", f"maximal cyclic classes not covered: {desc}", None, cert)
    for row in prime_rows:
        if not row["charpoly_equal"]:
            return Verdict("fail", "charpoly_mismatch",
                           f"characteristic polynomials differ at t={row['t']}", row["t"], cert)
    return Verdict("isomorphic_ss", None, "", None, cert)


# -- file format ------------------------------------------------------------------------

def _records(raw, local: LocalFieldDesc, name: str) -> dict:
    if not isinstance(raw, dict):
        raise BundleError(f"field {name!r} must map primes to coefficient lists")
    out = {}
    for key, coeffs in raw.items():
        try:
            t = int(key)
            out[t] = CharPolyRecord(t, tuple(local.coerce(c) for c in coeffs))
        except (TypeError, ValueError) as exc:
            raise BundleError(f"field {name!r}, entry {key!r}: {exc}") from None
    return out


def _galois_from_record(raw: dict, base_dir: Path | None, T) -> GaloisData:
    if not isinstance(raw, dict):
        raise BundleError("field 'galois' must be an object")
    if "table" in raw:
        from ..galois import AutomorphismTable, frobenius
        path = Path(raw["table"])
        if not path.is_absolute() and base_dir is not None:
            path = base_dir / path
        try:
            table = AutomorphismTable.loads(path.read_text())
        except OSError as exc:
            raise BundleError(f"field 'galois.table': {exc}") from None
        G = table.group()
        frob = {}
        for t in T:
            res = frobenius(table, t)
            frob[t] = G.index[table.autos[res.element].perm]
        return GaloisData(G, frob, str(path))
    try:
        degree = int(raw["degree"])
        gens = raw["generators"]
        frob_raw = raw["frobenius"]
    except (KeyError, TypeError, ValueError) as exc:
        raise BundleError(f"field 'galois' is missing {exc}") from None
    try:
        G = PermGroupData.from_record({"degree": degree, "generators": gens})
    except ValueError as exc:
        raise BundleError(f"field 'galois.generators': {exc}") from None
    frob = {}
    for key, perm in frob_raw.items():
        idx = G.index.get(tuple(int(x) for x in perm))
        if idx is None:
            raise BundleError(f"field 'galois.frobenius', entry {key!r}: not an element of the group")
        frob[int(key)] = idx
    return GaloisData(G, frob, "inline")


def bundle_from_record(rec: dict, base_dir: Path | None = None) -> RepComparisonBundle:
    if not isinstance(rec, dict):
        raise BundleError("bundle must be an object")
    for key in ("n", "p", "base", "T", "galois", "rho1", "rho2"):
        if key not in rec:
            raise BundleError(f"missing field {key!r}")
    try:
        n, p = int(rec["n"]), int(rec["p"])
        local = LocalFieldDesc(p, str(rec["base"]))
        T = tuple(int(t) for t in rec["T"])
    except (TypeError, ValueError) as exc:
        raise BundleError(f"bad header field: {exc}") from None
    att = None
    if rec.get("condition1") is not None:
        c = rec["condition1"]
        try:
            att = Attestation(str(c["mode"]), str(c.get("evidence", "")),
                              tuple(int(d) for d in c.get("degrees_ruled_out", ())))
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise BundleError(f"field 'condition1': {exc!r}") from None
    return RepComparisonBundle(
        n=n, local=local,
        galois=_galois_from_record(rec["galois"], base_dir, T),
        T=T,
        rho1=_records(rec["rho1"], local, "rho1"),
        rho2=_records(rec["rho2"], local, "rho2"),
        condition1=att,
        v=int(rec.get("v", 0)),
    )


def load_bundle(path) -> RepComparisonBundle:
    path = Path(path)
    try:
        rec = json.loads(path.read_text())
    except OSError as exc:
        raise BundleError(str(exc)) from None
    except json.JSONDecodeError as exc:
        raise BundleError(f"malformed bundle file: {exc}") from None
    return bundle_from_record(rec, path.parent)


def bundle_to_record(b: RepComparisonBundle) -> dict:
    G = b.galois.group
    return {
        "n": b.n, "p": b.local.p, "base": b.local.base, "T": list(b.T), "v": b.v,
        "galois": {
            "degree": G.degree,
            "generators": [list(g) for g in G.generators],
            "frobenius": {str(t): list(G.elements[i]) for t, i in sorted(b.galois.frobenius.items())},
        },
        "rho1": {str(t): [str(c) for c in r.coeffs] for t, r in sorted(b.rho1.items())},
        "rho2": {str(t): [str(c) for c in r.coeffs] for t, r in sorted(b.rho2.items())},
        "condition1": None if b.condition1 is None else {
            "mode": b.condition1.mode, "evidence": b.condition1.evidence,
            "degrees_ruled_out": list(b.condition1.degrees_ruled_out)},
    }


def dump_bundle(b: RepComparisonBundle) -> str:
    return json.dumps(bundle_to_record(b), indent=1, sort_keys=True) + "\n"
