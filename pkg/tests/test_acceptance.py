"""Acceptance criteria. Each test prints exactly one PASS or FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see every line.
"""

import json
import time
from pathlib import Path

import pytest

import nsplit
import oracles
from nsplit.catalog import load, small_nonabelian_names
from nsplit.classify import default_sweep_names, discrepancies, sweep
from nsplit.decompose import (
    coset_partition,
    commute_coset_criterion,
    frobenius_coset_construction,
    load_decomposition,
    maximal_abelian_construction,
    promote,
    validate,
)
from nsplit.errors import InfeasibleError, NotPromotableError, PreconditionError
from nsplit.group import abelian_subgroups_up_to_conjugacy, center
from nsplit.minimize import (
    abelian_overlap_certificates,
    audit,
    exact_min_fixed_A,
    maximal_abelian,
    min_over_all_A,
    ti_pair_certificates,
)

FIX = Path(nsplit.__file__).parent / "data" / "fixtures"


def report(capsys, k, ok, detail):
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {k}: {detail}")
    assert ok, detail


def proper_reps(G):
    return [A for A in abelian_subgroups_up_to_conjugacy(G) if A.order < G.order]


MIN_TABLE = [("S3", 1), ("D10", 1), ("D8", 2), ("Q8", 2), ("A4", 2), ("S4", 2),
             ("A5", 4), ("PGL2_5", 5), ("L2_7", 6), ("L2_9", 8)]


def test_criterion_1_min_table(capsys):
    t0 = time.perf_counter()
    got, bad = {}, []
    for name, want in MIN_TABLE:
        r = min_over_all_A(load(name))
        rep = validate(r.decomposition)
        got[name] = r.n
        if not (r.n == want and r.proven_exact and rep.valid and rep.strict and r.decomposition.n == want):
            bad.append(f"{name}: got {r.n} proven={r.proven_exact}, want {want}")
    dt = time.perf_counter() - t0
    ok = not bad and dt <= 60
    report(capsys, 1, ok, f"min table {got} in {dt:.1f}s" + (f"; {bad}" if bad else ""))


def test_criterion_2_extraspecial(capsys):
    t0 = time.perf_counter()
    bad, seen = [], {}
    for name, p in [("D8", 2), ("Q8", 2), ("He3", 3), ("M27", 3), ("He5", 5), ("M125", 5)]:
        G = load(name)
        r = min_over_all_A(G)
        seen[name] = r.n
        if r.n != p * (p - 1) or not r.proven_exact or not validate(r.decomposition).valid:
            bad.append(name)
        if p == 5:
            # no abelian A avoids an abelian-overlap bound of 20
            worst = min(max(c.bound for c in abelian_overlap_certificates(G, A.members))
                        for A in proper_reps(G) if set(center(G).members) <= set(A.members))
            if worst < 20 or r.certificate.kind != "abelian-overlap" or r.certificate.bound != 20:
                bad.append(f"{name} certificate {r.certificate.kind}:{r.certificate.bound}, floor {worst}")
    dt = time.perf_counter() - t0
    ok = not bad and dt <= 120
    report(capsys, 2, ok, f"extraspecial minima {seen} in {dt:.1f}s" + (f"; bad {bad}" if bad else ""))


@pytest.mark.slow
def test_criterion_3_suzuki(capsys):
    t0 = time.perf_counter()
    G = load("Sz8")
    lb = max(c.bound for c in ti_pair_certificates(G))
    r = exact_min_fixed_A(G, [0])
    rep = validate(r.decomposition)
    dt = time.perf_counter() - t0
    ok = lb == 15 and r.n == 15 and r.proven_exact and rep.valid and rep.strict and dt <= 600
    report(capsys, 3, ok, f"Sz(8): ti-pair bound {lb}, strict split over A=1 with n={r.n}, "
                          f"valid={rep.valid} in {dt:.1f}s")


def test_criterion_4_sweeps(capsys):
    t0 = time.perf_counter()
    names = default_sweep_names()
    summary, bad = [], []
    for n in (1, 2, 3):
        recs = sweep(names, n=n)
        d = discrepancies(recs)
        bad.extend(d)
        summary.append(f"n={n}: {len(recs)} pairs, {sum(r.solved for r in recs)} feasible, {len(d)} discrepancies")
    dt = time.perf_counter() - t0
    ok = not bad and dt <= 300
    report(capsys, 4, ok, f"{len(names)} groups; " + "; ".join(summary) + f" in {dt:.1f}s")


def test_criterion_5_fixtures(capsys):
    index = json.loads((FIX / "index.json").read_text())
    bad = []
    printed = [k for k, v in index.items() if v["printed"]]
    for key, meta in index.items():
        G = load(meta["group"])
        rep = validate(load_decomposition(FIX / f"{key}.json", G))
        if meta["printed"] and not (rep.valid and rep.strict and rep.n == meta["n"]):
            bad.append(f"{key}: {rep.violations[0] if rep.violations else 'not strict or wrong n'}")
        if not validate(load_decomposition(FIX / f"{key}_tampered.json", G)).valid:
            continue
        bad.append(f"{key}_tampered accepted")
    ok = not bad
    report(capsys, 5, ok, f"{len(printed)} printed tables and {len(index)} tampered variants"
                          + (f"; failures: {bad}" if bad else ""))


def test_criterion_6_constructions(capsys):
    t0 = time.perf_counter()
    counts = dict(criterion=0, partitions=0, maxab=0, frob=0, promote=0)
    bad = []
    for name in small_nonabelian_names(24):
        G = load(name)
        for A in proper_reps(G):
            Aset = set(A.members)
            for g in range(G.order):
                if g in Aset:
                    continue
                for a1 in A.members:
                    ag1 = G.mul(a1, g)
                    for a2 in A.members:
                        counts["criterion"] += 1
                        if commute_coset_criterion(G, A.members, g, a1, a2) != G.commute(ag1, G.mul(a2, g)):
                            bad.append(f"{name} criterion")
                parts = coset_partition(G, A.members, g)
                cab = sum(1 for a in A.members if G.commute(a, g))
                coset = sorted(G.mul(a, g) for a in A.members)
                counts["partitions"] += 1
                if (len(parts) != cab or any(len(p) != A.order // cab for p in parts)
                        or sorted(x for p in parts for x in p) != coset):
                    bad.append(f"{name} coset partition")
            produced = []
            if G.centralizer_of_set(A.members).size == A.order:
                D = maximal_abelian_construction(G, A)
                rep = validate(D)
                counts["maxab"] += 1
                if not (rep.valid and rep.strict and D.n >= G.order // A.order - 1):
                    bad.append(f"{name} maximal-abelian")
                produced.append(D)
            try:
                D = frobenius_coset_construction(G, A)
            except PreconditionError:
                pass
            else:
                rep = validate(D)
                counts["frob"] += 1
                if not (rep.valid and rep.strict and D.n == G.order // A.order - 1):
                    bad.append(f"{name} frobenius")
                produced.append(D)
            for D in produced:
                try:
                    P = promote(D)
                except NotPromotableError:
                    continue
                counts["promote"] += 1
                rep = validate(P)
                if not (rep.valid and rep.strict and P.n == D.n + 1 and P.A == D.A):
                    bad.append(f"{name} promote")
    dt = time.perf_counter() - t0
    ok = not bad and dt <= 120 and all(counts.values())
    report(capsys, 6, ok, f"checked {counts} in {dt:.1f}s" + (f"; bad {sorted(set(bad))}" if bad else ""))


def _produced_decompositions():
    """Everything the package builds for the catalog up to order 24, plus the table witnesses."""
    out = []
    for name in small_nonabelian_names(24):
        G = load(name)
        Z = set(center(G).members)
        for A in proper_reps(G):
            for strict in (True, False):
                if strict and not Z <= set(A.members):
                    continue
                try:
                    out.append(exact_min_fixed_A(G, A.members, strict=strict).decomposition)
                except InfeasibleError:
                    pass
        for A in maximal_abelian(G):
            if A.order < G.order:
                out.append(maximal_abelian_construction(G, A))
        for A in proper_reps(G):
            try:
                out.append(frobenius_coset_construction(G, A))
            except PreconditionError:
                pass
    for name in ("A5", "PGL2_5", "L2_7", "He3", "M27"):
        out.append(min_over_all_A(load(name)).decomposition)
    promoted = []
    for D in out:
        if D.strict:
            try:
                promoted.append(promote(D))
            except NotPromotableError:
                pass
    index = json.loads((FIX / "index.json").read_text())
    for key, meta in index.items():
        D = load_decomposition(FIX / f"{key}.json", load(meta["group"]))
        if validate(D).valid:
            out.append(D)
    return out + promoted


def test_criterion_7_audit(capsys):
    t0 = time.perf_counter()
    decs = _produced_decompositions()
    failures, warns = [], 0
    for D in decs:
        rep = audit(D.parent, D)
        if not rep.passed:
            failures.append(f"{D.parent.name} n={D.n} |A|={len(D.A)}: "
                            + ", ".join(c.name for c in rep.checks if c.status == "fail"))
        warns += len(rep.warnings)
    S4 = load("S4")
    arb = exact_min_fixed_A(S4, [0])
    vii = next(c for c in audit(S4, arb.decomposition).checks if c.name.startswith("(vii)"))
    dt = time.perf_counter() - t0
    ok = not failures and arb.n == 3 and arb.proven_exact and vii.status == "warn"
    report(capsys, 7, ok, f"{len(decs)} decompositions audited in {dt:.1f}s, {warns} check (vii) warnings; "
                          f"S4 over A=1 has exact strict minimum {arb.n} so (vii) is {vii.status}"
                          + (f"; failures {failures[:5]}" if failures else ""))


def test_criterion_8_oracle(capsys):
    t0 = time.perf_counter()
    checked, bad = 0, []
    for name in small_nonabelian_names(12):
        G = load(name)
        tup = [tuple(int(v) for v in G.perms[i]) for i in range(G.order)]
        index = {t: i for i, t in enumerate(tup)}
        for Aset in oracles.abelian_subgroups(tup):
            if len(Aset) == G.order:
                continue
            A = sorted(index[t] for t in Aset)
            for strict in (False, True):
                want = oracles.min_split(tup, Aset, strict)
                try:
                    got = exact_min_fixed_A(G, A, strict=strict).n
                except InfeasibleError:
                    got = None
                checked += 1
                if got != want:
                    bad.append(f"{name} |A|={len(A)} strict={strict}: {got} vs {want}")
    dt = time.perf_counter() - t0
    ok = not bad and dt <= 120
    report(capsys, 8, ok, f"{checked} (group, A, strictness) cases agree with brute force in {dt:.1f}s"
                          + (f"; bad {bad}" if bad else ""))
