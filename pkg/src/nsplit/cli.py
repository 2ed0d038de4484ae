"""Command-line front end: ``nsplit <command> ...``.

Exit codes: 0 success or valid, 1 invalid but well formed, 2 usage, parse or
precondition error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .catalog import load, manifest, resolve
from .classify import default_sweep_names, discrepancies, sweep
from .decompose import (
    coset_partition,
    frobenius_coset_construction,
    load_decomposition,
    maximal_abelian_construction,
    save_decomposition,
    ti_cover_construction,
    to_json,
    validate,
)
from .errors import BudgetExceeded, InfeasibleError, NSplitError
from .graph import build, components, export_dot
from .group import Group, SubgroupRef, abelian_subgroups_up_to_conjugacy, center
from .minimize import DEFAULT_BUDGET, audit, exact_min_fixed_A, maximal_abelian, min_over_all_A

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

A_HELP = ("abelian subgroup A: comma-separated generator cycle strings such as '(1 2 3 4)', "
          "or one of center, trivial, klein, auto. auto means: for ti-cover, a largest-order "
          "maximal abelian subgroup; for min, iterate every abelian subgroup representative")


class UsageError(NSplitError):
    pass


def _split_gens(text: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out


def parse_A(G: Group, spec: str) -> SubgroupRef | None:
    """Resolve an A specifier; ``None`` stands for auto."""
    key = spec.strip().lower()
    if key == "auto":
        return None
    if key == "center":
        return center(G)
    if key == "trivial":
        return G.subgroup([0])
    if key == "klein":
        kleins = [H for H in abelian_subgroups_up_to_conjugacy(G)
                  if H.order == 4 and all(int(G.element_orders[x]) <= 2 for x in H.members)]
        if not kleins:
            raise UsageError(f"{G.name} has no Klein four subgroup")
        normal = [H for H in kleins if H.is_normal]
        return (normal or kleins)[0]
    try:
        gens = [G.index_of(s) for s in _split_gens(spec)]
    except (ValueError, KeyError, IndexError) as exc:
        raise UsageError(f"cannot read A generators {spec!r}: {exc}") from exc
    H = G.subgroup(G.generate(gens).tolist())
    if not H.is_abelian:
        raise UsageError("A is not abelian")
    return H


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    else:
        print(text)


def cmd_decompose(args) -> int:
    G = resolve(args.group)
    A = parse_A(G, args.A)
    method = args.method
    if method.startswith("coset:"):
        if A is None:
            raise UsageError("coset:g needs an explicit A")
        g = G.index_of(method[6:])
        if g in A:
            raise UsageError("g lies in A; choose a representative of a nontrivial coset")
        parts = coset_partition(G, A.members, g)
        payload = {"group": G.name, "A": [G.cycle_string(a) for a in A.members],
                   "coset_rep": G.cycle_string(g),
                   "parts": [[G.cycle_string(x) for x in p] for p in parts]}
        _emit(json.dumps(payload, indent=1), args.out)
        if args.out:
            print(f"coset A{G.cycle_string(g)} split into {len(parts)} noncommuting sets "
                  f"of size {len(parts[0])}")
        return EXIT_OK
    if method == "maximal-abelian":
        A = A if A is not None else max(maximal_abelian(G), key=lambda H: (H.order, [-m for m in H.members]))
        D = maximal_abelian_construction(G, A)
    elif method == "frobenius":
        if A is None:
            raise UsageError("frobenius needs an explicit A")
        D = frobenius_coset_construction(G, A)
    elif method == "ti-cover":
        D = ti_cover_construction(G, None if A is None else A.members)
    else:
        raise UsageError(f"unknown method {method!r}")
    rep = validate(D)
    if args.out:
        save_decomposition(D, args.out)
    else:
        print(to_json(D))
    print(rep.summary())
    return EXIT_OK if rep.valid else EXIT_INVALID


def cmd_min(args) -> int:
    G = resolve(args.group)
    A = None if args.over_all_A else parse_A(G, args.A or "auto")
    strict = args.strict
    try:
        if A is None:
            res = min_over_all_A(G, strict=strict, budget=args.budget)
        else:
            res = exact_min_fixed_A(G, A.members, strict=strict, budget=args.budget)
    except BudgetExceeded as exc:
        print(json.dumps({"group": G.name, "error": "budget", "message": str(exc)}))
        return EXIT_BUDGET
    except InfeasibleError as exc:
        print(json.dumps({"group": G.name, "error": "infeasible", "message": str(exc)}))
        return EXIT_INVALID
    if args.out:
        save_decomposition(res.decomposition, args.out)
    print(res.to_json(args.out))
    return EXIT_OK if res.proven_exact else EXIT_BUDGET


def cmd_verify(args) -> int:
    D = load_decomposition(args.file)
    rep = validate(D)
    print(rep.summary())
    return EXIT_OK if rep.valid else EXIT_INVALID


def cmd_audit(args) -> int:
    D = load_decomposition(args.file)
    rep = validate(D)
    if not rep.valid:
        print(rep.summary())
        return EXIT_INVALID
    report = audit(D.parent, D)
    for line in report.lines():
        print(line)
    return EXIT_OK if report.passed else EXIT_INVALID


def cmd_sweep(args) -> int:
    names = args.groups.split(",") if args.groups else default_sweep_names()
    records = sweep(names, n=args.n, budget=args.budget)
    out = [r.to_json() for r in records]
    bad = discrepancies(records)
    if args.out:
        Path(args.out).write_text("\n".join(out) + "\n", encoding="utf-8")
    elif args.verbose:
        print("\n".join(out))
    feasible = sum(1 for r in records if r.solved)
    print(f"n={args.n}: {len(records)} pairs, {feasible} feasible, {len(bad)} discrepancies")
    for r in bad:
        print(r.to_json())
    if any(r.status == "unresolved" for r in bad):
        return EXIT_BUDGET
    return EXIT_OK if not bad else EXIT_INVALID


def cmd_graph(args) -> int:
    G = resolve(args.group)
    if args.vertices == "all":
        verts = range(G.order)
    elif args.vertices == "nonidentity":
        verts = range(1, G.order)
    else:
        A = parse_A(G, args.A or "trivial")
        if A is None:
            raise UsageError("graph needs an explicit A")
        verts = sorted(set(range(G.order)) - set(A.members))
    Gamma = build(G, verts)
    text = export_dot(Gamma, args.out)
    if not args.out:
        sys.stdout.write(text)
    sizes = sorted((len(c) for c in components(Gamma)), reverse=True)
    print(f"// {len(Gamma)} vertices, {Gamma.edge_count()} edges, {len(sizes)} components",
          file=sys.stderr)
    return EXIT_OK


def cmd_catalog(args) -> int:
    for e in manifest().values():
        if args.max_order and e.order > args.max_order:
            continue
        line = f"{e.name:12s} order={e.order:<6d} center={e.center_order:<4d} {e.source}"
        print(line)
    if args.check:
        for name in manifest():
            load(name)
        print("all catalog entries load with matching orders")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nsplit", description="Strict n-split decompositions of finite groups.")
    p.add_argument("--version", action="version", version=f"nsplit {__version__}")
    p.add_argument("--threads", type=int, default=1,
                   help="cap on worker threads (the search is single-threaded, so values above 1 have no effect)")
    sub = p.add_subparsers(dest="command", required=True)
    group_help = "group source: catalog:NAME, spec:FAMILY(...), file:PATH, or a bare catalog name"

    d = sub.add_parser("decompose", help="build a decomposition by a named construction")
    d.add_argument("--group", required=True, help=group_help)
    d.add_argument("--A", default="auto", help=A_HELP)
    d.add_argument("--method", required=True,
                   help="maximal-abelian, frobenius, ti-cover, or coset:g with g a cycle string")
    d.add_argument("--out", help="output file (default stdout)")
    d.set_defaults(func=cmd_decompose)

    m = sub.add_parser("min", help="exact minimal n over a fixed A or over all A")
    m.add_argument("--group", required=True, help=group_help)
    sel = m.add_mutually_exclusive_group()
    sel.add_argument("--A", help=A_HELP)
    sel.add_argument("--over-all-A", dest="over_all_A", action="store_true", help="minimize over every abelian A")
    m.add_argument("--strict", dest="strict", action="store_true", default=True)
    m.add_argument("--non-strict", dest="strict", action="store_false")
    m.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node budget")
    m.add_argument("--out", help="write the witness decomposition here")
    m.set_defaults(func=cmd_min)

    v = sub.add_parser("verify", help="validate a decomposition file")
    v.add_argument("file")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("audit", help="run the structural audit checks on a decomposition file")
    a.add_argument("file")
    a.set_defaults(func=cmd_audit)

    s = sub.add_parser("sweep", help="compare the classifier with the exact solver")
    s.add_argument("--n", type=int, required=True, choices=(1, 2, 3))
    s.add_argument("--groups", help="comma-separated catalog names (default: the standard sweep set)")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--out", help="write one JSON record per line here")
    s.add_argument("-v", "--verbose", action="store_true", help="print every record")
    s.set_defaults(func=cmd_sweep)

    g = sub.add_parser("graph", help="commuting graph in DOT format")
    g.add_argument("--group", required=True, help=group_help)
    g.add_argument("--vertices", choices=("all", "nonidentity", "complement"), default="nonidentity",
                   help="vertex set: all of G, G minus 1, or G minus A")
    g.add_argument("--A", help="A for --vertices complement")
    g.add_argument("--out", help="DOT output file (default stdout)")
    g.set_defaults(func=cmd_graph)

    c = sub.add_parser("catalog", help="list the named groups")
    c.add_argument("--max-order", type=int, default=0)
    c.add_argument("--check", action="store_true", help="load every entry and verify its order")
    c.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.threads < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (NSplitError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
