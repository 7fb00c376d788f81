"""Command-line front end.

Exit codes: 0 success or pass, 1 criterion fail, 2 usage or computation error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from importlib import resources
from pathlib import Path

from .algebra.numtheory import is_prime
from .algebra.poly import IntPoly
from .criterion import BundleError, compare, load_bundle, plan
from .dataset64 import f64, parse_polynomial_text, reproduce
from .galois import AutomorphismTable, FrobeniusUndefined, GaloisError, automorphisms, frobenius
from .galois.descent import BudgetExceeded, DescentFailure
from .groups import maximal_cyclic_classes, structure_report

log = logging.getLogger("semisimp")

DEFAULT_BUDGET = 1800.0

BUILTIN_POLYS = {
    "f64": f64,
    "phi16": lambda: IntPoly((1, 0, 0, 0, 0, 0, 0, 0, 1)),
    "phi32": lambda: IntPoly((1,) + (0,) * 15 + (1,)),
}

BUILTIN_BUNDLES = ("f64_n3", "f64_n4", "f64_n3_mismatch", "f64_n3_drop31")


class UsageError(Exception):
    pass


def builtin_bundle_path(name: str) -> Path:
    return Path(str(resources.files("semisimp.dataset64") / "bundles" / f"{name}.json"))


def _poly(arg: str) -> IntPoly:
    if arg in BUILTIN_POLYS:
        return BUILTIN_POLYS[arg]()
    path = Path(arg)
    text = path.read_text() if path.is_file() else arg
    try:
        return parse_polynomial_text(text)
    except ValueError as exc:
        raise UsageError(f"--poly: {exc}") from None


def _prime_range(arg: str) -> list[int]:
    try:
        lo, hi = (int(x) for x in arg.split(".."))
    except ValueError:
        raise UsageError(f"--primes: expected A..B, got {arg!r}") from None
    if lo > hi:
        raise UsageError(f"--primes: empty range {arg!r}")
    return [t for t in range(max(lo, 2), hi + 1) if is_prime(t)]


def _need_file(path, flag: str) -> Path:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"{flag}: no such file {str(p)!r}")
    return p


def _need_parent(path, flag: str) -> Path:
    p = Path(path)
    if not p.parent.is_dir():
        raise UsageError(f"{flag}: directory {str(p.parent)!r} does not exist")
    return p


def _table(args) -> AutomorphismTable:
    f = _poly(args.poly)
    if args.table:
        table = AutomorphismTable.loads(_need_file(args.table, "--table").read_text())
        if table.f != f:
            raise UsageError("--table: table was computed for a different polynomial")
        return table
    log.info("computing automorphisms of a degree-%d polynomial", f.degree)
    return automorphisms(f, seed=args.seed, budget=args.budget)


def _emit(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


# -- subcommands ---------------------------------------------------------------

def cmd_plan(args) -> int:
    try:
        rep = plan(args.n, args.p, args.edeg)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(rep.render())
    return 0


def cmd_group(args) -> int:
    if args.output:
        _need_parent(args.output, "--output")
    if args.table_out:
        _need_parent(args.table_out, "--table-out")
    table = _table(args)
    G = table.group()
    lines = [f"polynomial degree: {table.f.degree}",
             f"automorphisms: {len(table.autos)} (verified exactly, {table.method})",
             structure_report(G, with_rank=not args.no_rank).render(),
             "maximal cyclic classes:"]
    for k, c in enumerate(maximal_cyclic_classes(G)):
        lines.append(f"  class {k}: order {c.order}, {len(c.members)} conjugates, generator {c.generator}")
    _emit("\n".join(lines) + "\n", args.output)
    if args.table_out:
        Path(args.table_out).write_text(table.dumps())
    return 0


def _frob_line(table, G, classes, t) -> str:
    try:
        r = frobenius(table, t)
    except FrobeniusUndefined as exc:
        return f"t={t} undefined ({exc})"
    e = G.index[table.autos[r.element].perm]
    where = {m: k for k, c in enumerate(classes) for m in c.members}
    k = where.get(G.generated([e]))
    mc = "-" if k is None else str(k)
    return f"t={t} order={r.order} class={G.class_id(e)} maxcyclic={mc} residue_degree={r.residue_degree}"


def cmd_frobenius(args) -> int:
    bad = [t for t in args.t if not is_prime(t)]
    if bad:
        raise UsageError(f"-t: not prime: {bad}")
    table = _table(args)
    G = table.group()
    classes = maximal_cyclic_classes(G)
    for t in args.t:
        print(_frob_line(table, G, classes, t))
    return 0


def cmd_cover(args) -> int:
    primes = _prime_range(args.primes)
    table = _table(args)
    G = table.group()
    classes = maximal_cyclic_classes(G)
    where = {m: k for k, c in enumerate(classes) for m in c.members}
    chosen, covered = [], {}
    # greedy, ascending: keep a prime when it reaches a new maximal cyclic class
    for t in primes:
        if len(covered) == len(classes):
            break
        try:
            r = frobenius(table, t)
        except FrobeniusUndefined:
            log.info("skipping %d: Frobenius undefined", t)
            continue
        k = where.get(G.generated([G.index[table.autos[r.element].perm]]))
        if k is not None and k not in covered:
            covered[k] = t
            chosen.append(t)
    print("primes: " + " ".join(map(str, chosen)))
    for k, c in enumerate(classes):
        print(f"class {k} (order {c.order}): " + (f"Frob({covered[k]})" if k in covered else "uncovered"))
    ok = len(covered) == len(classes)
    print("covered: " + ("yes" if ok else "no"))
    return 0 if ok else 1


def cmd_check(args) -> int:
    path = Path(args.bundle)
    if not path.is_file() and args.bundle in BUILTIN_BUNDLES:
        path = builtin_bundle_path(args.bundle)
    _need_file(path, "BUNDLE")
    if args.output:
        _need_parent(args.output, "--output")
    verdict = compare(load_bundle(path))
    _emit(verdict.render(), args.output)
    return 0 if verdict.passed else 1


def cmd_reproduce(args) -> int:
    if args.output:
        _need_parent(args.output, "--output")
    table = None
    if args.table:
        table = AutomorphismTable.loads(_need_file(args.table, "--table").read_text())
    report = reproduce(budget=args.budget, table=table)
    _emit(report.render(), args.output)
    if args.output:
        print("overall: " + ("pass" if report.passed else "fail"))
    return 0 if report.passed else 1


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="semisimp",
                                 description="Finite criteria for semi-simplifications of mod-p representations.")
    ap.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", help="planning numbers for n, p and [E:Q_p]")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--edeg", type=int, required=True)
    p.set_defaults(func=cmd_plan)

    def field_opts(q):
        q.add_argument("--poly", required=True,
                       help="builtin name (" + ", ".join(BUILTIN_POLYS) + "), file or polynomial text")
        q.add_argument("--table", help="reuse an automorphism table written by 'group --table-out'")
        q.add_argument("--seed", type=int, default=0)
        q.add_argument("--budget", type=float, default=DEFAULT_BUDGET, help="seconds")

    p = sub.add_parser("group", help="automorphisms and structure report")
    field_opts(p)
    p.add_argument("-o", "--output", help="report file (default: stdout)")
    p.add_argument("--table-out", help="write the automorphism table as JSON")
    p.add_argument("--no-rank", action="store_true", help="skip the subgroup enumeration behind rank")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("frobenius", help="Frobenius class and order per prime")
    field_opts(p)
    p.add_argument("-t", type=int, nargs="+", required=True)
    p.set_defaults(func=cmd_frobenius)

    p = sub.add_parser("cover", help="greedy prime set covering every maximal cyclic class")
    field_opts(p)
    p.add_argument("--primes", required=True, help="range A..B")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("check", help="verdict for a comparison bundle")
    p.add_argument("bundle", help="bundle file or builtin name (" + ", ".join(BUILTIN_BUNDLES) + ")")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("reproduce", help="replay the degree-64 example")
    p.add_argument("--budget", type=float, default=DEFAULT_BUDGET, help="seconds")
    p.add_argument("--table", help="reuse a precomputed automorphism table")
    p.add_argument("-o", "--output", help="report file (default: stdout)")
    p.set_defaults(func=cmd_reproduce)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"semisimp {args.command}: {exc}", file=sys.stderr)
        return 2
    except (BundleError, ValueError, GaloisError, DescentFailure, BudgetExceeded, OSError) as exc:
        print(f"semisimp {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
