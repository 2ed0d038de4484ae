import json

import pytest

from nsplit.catalog import load, small_nonabelian_names
from nsplit.classify import SWEEP_EXTRA, default_sweep_names, discrepancies, predict, sweep
from nsplit.errors import PreconditionError
from nsplit.group import abelian_subgroups_up_to_conjugacy, center, is_frobenius_with_kernel


def sub(G, *gens):
    return G.subgroup(G.generate([G.index_of(g) for g in gens]).tolist())


def test_d10_index_two_via_normal_clause_one():
    G = load("D10")
    A = G.subgroup([x for x in range(10) if int(G.element_orders[x]) in (1, 5)])
    assert predict(G, A, 2) == (True, "n2-normal-1")
    assert predict(G, A, 1) == (True, "n1-frobenius-index-2")


def test_s3_order_two():
    G = load("S3")
    assert predict(G, sub(G, "(1 2)"), 2) == (True, "n2-nonnormal-1")
    assert predict(G, sub(G, "(1 2)"), 1) == (False, "none")


def test_q8_center_three_split():
    G = load("Q8")
    assert predict(G, center(G), 3) == (True, "n3-even-3")


def test_s4_klein_two_split():
    G = load("S4")
    V = sub(G, "(1 2)(3 4)", "(1 3)(2 4)")
    assert predict(G, V, 2) == (True, "n2-normal-4")
    assert predict(G, sub(G, "(1 2)", "(3 4)"), 2)[0] is False


def test_order72_three_split():
    assert predict(load("paper72"), _sylow3(load("paper72")), 3) == (True, "n3-odd-8b")
    assert predict(load("Q8Frob72"), _sylow3(load("Q8Frob72")), 3) == (True, "n3-odd-9")


def _sylow3(G):
    return G.subgroup([x for x in range(G.order) if int(G.element_orders[x]) in (1, 3)])


def test_errors():
    with pytest.raises(PreconditionError):
        predict(load("S3"), [0], 4)
    C = load("S3")
    with pytest.raises(PreconditionError):
        predict(C, list(range(6)), 2)


@pytest.mark.parametrize("name", small_nonabelian_names(24))
def test_n1_equals_frobenius_index_two_odd(name):
    G = load(name)
    for A in abelian_subgroups_up_to_conjugacy(G):
        if A.order == G.order:
            continue
        expected = (A.order > 1 and is_frobenius_with_kernel(G, A)
                    and G.order == 2 * A.order and A.order % 2 == 1)
        assert predict(G, A, 1)[0] == expected


@pytest.mark.parametrize("name", ["S4", "A4", "SL2_3", "D12", "C3xS3"])
def test_predict_conjugation_invariant(name):
    G = load(name)
    for A in abelian_subgroups_up_to_conjugacy(G):
        if A.order == G.order:
            continue
        for g in range(0, G.order, 5):
            B = G.subgroup(sorted(G.conjugate_members(A.members, g)))
            for n in (1, 2, 3):
                assert predict(G, A, n) == predict(G, B, n)


def test_sweep_records_and_json():
    recs = sweep(["S3", "A4"], n=2)
    assert recs and not discrepancies(recs)
    doc = json.loads(recs[0].to_json())
    assert set(doc) == {"group", "A", "order_A", "n", "predicted", "solved", "case_id", "status"}


def test_sweep_budget_marks_unresolved():
    recs = sweep(["S4"], n=3, budget=1)
    assert {r.status for r in recs} <= {"agree", "unresolved"}
    assert discrepancies(recs) == [r for r in recs if r.status == "unresolved"]
    assert all(r.solved is None for r in recs if r.status == "unresolved")


def test_s4_two_split_only_over_klein():
    recs = sweep(["S4"], n=2)
    feasible = [r for r in recs if r.solved]
    assert len(feasible) == 1 and feasible[0].order_A == 4 and feasible[0].case_id == "n2-normal-4"


def test_default_sweep_set():
    names = default_sweep_names()
    assert set(SWEEP_EXTRA) <= set(names)
    assert len(names) == len(set(names))
