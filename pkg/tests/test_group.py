import random

import numpy as np
import pytest

import oracles
from nsplit.catalog import load, small_nonabelian_names
from nsplit.errors import ResourceError
from nsplit.group import (
    abelian_subgroups_up_to_conjugacy,
    all_abelian_subgroups,
    center,
    centralizer,
    close_generators,
    conjugacy_classes,
    element_order,
    group_from_cycle_strings,
    is_frobenius_with_kernel,
    maximal_abelian_subgroups,
    subgroup_conjugacy_orbit,
)
from nsplit.perm import Permutation

SMALL = small_nonabelian_names(24)


def as_tuples(G):
    return {tuple(int(v) for v in row) for row in G.perms}


def d8():
    return group_from_cycle_strings(4, ["(1 2 3 4)", "(1 3)"], name="D8")


def test_closure_orders():
    assert group_from_cycle_strings(3, ["(1 2 3)"]).order == 3
    assert d8().order == 8
    assert group_from_cycle_strings(5, ["(1 2 3 4 5)", "(3 4 5)"]).order == 60


def test_closure_is_deterministic_bfs():
    G = d8()
    H = d8()
    assert np.array_equal(G.perms, H.perms)
    assert np.array_equal(G.perms[0], np.arange(4))
    assert tuple(G.perms[1].tolist()) == Permutation.from_cycles(4, [(0, 1, 2, 3)]).images


def test_closure_cap():
    with pytest.raises(ResourceError):
        close_generators(5, [(1, 2, 3, 4, 0), (1, 0, 2, 3, 4)], cap=50)


@pytest.mark.parametrize("name", SMALL + ["A5", "L2_7", "PGL2_5"])
def test_closure_matches_oracle(name):
    G = load(name)
    gens = [tuple(int(v) for v in G.perms[g]) for g in G.generators]
    assert oracles.closure(gens) == as_tuples(G)


@pytest.mark.parametrize("name", ["S4", "A5", "D12", "Q16", "SD16"])
def test_associativity_on_random_triples(name):
    G = load(name)
    rng = random.Random(7)
    for _ in range(1000):
        a, b, c = (rng.randrange(G.order) for _ in range(3))
        assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))


def test_multiplication_matches_permutation_product():
    G = load("S4")
    for i in range(G.order):
        for j in range(G.order):
            assert G.element(G.mul(i, j)) == G.element(i) * G.element(j)
        assert G.mul(i, G.inv(i)) == 0


def test_centralizer_examples():
    G = d8()
    assert centralizer(G, [0]).order == 8
    assert centralizer(G, []).order == 8
    assert centralizer(G, [G.index_of("(1 3)")]).order == 4
    S3 = load("S3")
    c = centralizer(S3, [S3.index_of("(1 2 3)")])
    assert c.order == 3 and c.is_abelian


def test_center_examples():
    assert center(d8()).order == 2
    assert center(load("S4")).order == 1
    C = group_from_cycle_strings(5, ["(1 2 3 4 5)"])
    assert center(C).order == 5


@pytest.mark.parametrize("name", SMALL)
def test_centralizers_and_center_match_oracle(name):
    G = load(name)
    elems = as_tuples(G)
    for x in range(G.order):
        tx = tuple(int(v) for v in G.perms[x])
        got = {tuple(int(v) for v in G.perms[y]) for y in G.centralizer_of(x)}
        assert got == oracles.centralizer(elems, [tx])
    Z = {tuple(int(v) for v in G.perms[z]) for z in center(G).members}
    assert Z == oracles.centralizer(elems, elems)


def test_element_orders():
    G = d8()
    assert element_order(G, 0) == 1
    assert element_order(G, G.index_of("(1 2 3 4)")) == 4
    E = load("He3")
    assert set(E.element_orders.tolist()) == {1, 3}
    for name in SMALL:
        H = load(name)
        for g in range(H.order):
            o = int(H.element_orders[g])
            assert H.order % o == 0
            assert o == oracles.order_of(tuple(int(v) for v in H.perms[g]))


def test_conjugacy_class_examples():
    assert sorted(len(c) for c in conjugacy_classes(load("S3"))) == [1, 2, 3]
    assert sorted(len(c) for c in conjugacy_classes(load("S4"))) == [1, 3, 6, 6, 8]
    C = group_from_cycle_strings(4, ["(1 2 3 4)"])
    assert all(len(c) == 1 for c in conjugacy_classes(C))


@pytest.mark.parametrize("name", SMALL + ["A5"])
def test_conjugacy_classes_match_oracle(name):
    G = load(name)
    classes = conjugacy_classes(G)
    assert sum(len(c) for c in classes) == G.order
    assert all(G.order % len(c) == 0 for c in classes)
    assert [c[0] for c in classes] == sorted(c[0] for c in classes)
    assert sorted(len(c) for c in classes) == oracles.conjugacy_class_sizes(as_tuples(G))


def test_abelian_subgroup_representative_examples():
    assert [H.order for H in abelian_subgroups_up_to_conjugacy(load("S3"))] == [1, 2, 3]
    assert len(abelian_subgroups_up_to_conjugacy(d8())) == 7
    E = load("He3")
    maxi = [M for M in maximal_abelian_subgroups(E)]
    assert len(maxi) == 4 and all(M.order == 9 for M in maxi)


@pytest.mark.parametrize("name", SMALL)
def test_abelian_subgroups_complete_and_classes_exact(name):
    G = load(name)
    elems = as_tuples(G)
    expected = {frozenset(s) for s in oracles.abelian_subgroups(elems)}
    got = {frozenset(tuple(int(v) for v in G.perms[x]) for x in H) for H in all_abelian_subgroups(G)}
    assert got == expected
    reps = abelian_subgroups_up_to_conjugacy(G)
    owner = {}
    for i, R in enumerate(reps):
        for K in subgroup_conjugacy_orbit(G, R.members):
            assert K not in owner
            owner[K] = i
    # every abelian subgroup and every conjugate of a representative has exactly one owner
    for H in all_abelian_subgroups(G):
        assert tuple(sorted(int(x) for x in H)) in owner
    for R in reps:
        for g in range(G.order):
            K = tuple(sorted(G.conjugate_members(R.members, g)))
            assert K in owner


@pytest.mark.parametrize("name", SMALL + ["A5", "L2_7"])
def test_maximal_abelian_are_self_centralizing(name):
    G = load(name)
    for M in maximal_abelian_subgroups(G):
        assert M.is_abelian
        assert sorted(G.centralizer_of_set(M.members).tolist()) == list(M.members)


def test_maximal_abelian_examples():
    assert sorted(M.order for M in maximal_abelian_subgroups(load("S3"))) == [2, 2, 2, 3]
    assert sorted({M.order for M in maximal_abelian_subgroups(load("A5"))}) == [3, 4, 5]
    C = group_from_cycle_strings(4, ["(1 2 3 4)"])
    assert [M.order for M in maximal_abelian_subgroups(C)] == [4]


def test_subgroup_flags_match_oracle():
    G = load("S4")
    elems = as_tuples(G)
    for H in oracles.abelian_subgroups(elems):
        idx = [G.index_of(h) for h in H]
        ref = G.subgroup(idx)
        assert ref.is_abelian
        assert ref.is_normal == oracles.is_normal(elems, H)


def test_frobenius_examples():
    S3 = load("S3")
    C3 = S3.subgroup(S3.generate([S3.index_of("(1 2 3)")]).tolist())
    assert is_frobenius_with_kernel(S3, C3)
    A4 = load("A4")
    V = A4.subgroup(A4.generate([A4.index_of("(1 2)(3 4)"), A4.index_of("(1 3)(2 4)")]).tolist())
    assert is_frobenius_with_kernel(A4, V)
    G = d8()
    C4 = G.subgroup(G.generate([G.index_of("(1 2 3 4)")]).tolist())
    assert not is_frobenius_with_kernel(G, C4)
