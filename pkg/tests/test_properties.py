"""Randomized properties over permutation algebra, small generated groups and decompositions."""

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

import oracles
from nsplit.catalog import load, small_nonabelian_names
from nsplit.decompose import SplitDecomposition, commute_coset_criterion, coset_partition, promote, validate
from nsplit.errors import InfeasibleError, NotPromotableError
from nsplit.graph import build, components
from nsplit.group import abelian_subgroups_up_to_conjugacy, center, close_generators, maximal_abelian_subgroups
from nsplit.minimize import audit, exact_min_fixed_A
from nsplit.perm import Permutation, parse_cycles

SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
SMALL = small_nonabelian_names(24)


def perms(degree):
    return st.permutations(list(range(degree))).map(lambda p: Permutation(tuple(p)))


@SETTINGS
@given(st.integers(2, 7).flatmap(lambda d: st.tuples(perms(d), perms(d), perms(d))))
def test_permutation_group_axioms(triple):
    a, b, c = triple
    assert (a * b) * c == a * (b * c)
    assert (a * a.inverse()).is_identity()
    assert parse_cycles(a.to_cycle_string(), a.degree) == a
    assert (a ** a.order()).is_identity()
    assert tuple(oracles.compose(a.images, b.images)) == (a * b).images


@SETTINGS
@given(st.integers(3, 5).flatmap(lambda d: st.lists(perms(d), min_size=1, max_size=3)))
def test_random_groups_match_oracle(gens):
    d = gens[0].degree
    G = close_generators(d, gens)
    elems = {tuple(int(v) for v in row) for row in G.perms}
    assert elems == oracles.closure([g.images for g in gens])
    Z = set(center(G).members)
    for x in range(G.order):
        c = set(G.centralizer_of(x).tolist())
        assert Z <= c
        assert set(G.generate([x]).tolist()) <= c
    for M in maximal_abelian_subgroups(G):
        assert sorted(G.centralizer_of_set(M.members).tolist()) == list(M.members)


@SETTINGS
@given(st.sampled_from(SMALL), st.data())
def test_coset_splitting_on_random_instances(name, data):
    G = load(name)
    reps = [A for A in abelian_subgroups_up_to_conjugacy(G) if A.order < G.order]
    A = data.draw(st.sampled_from(reps))
    g = data.draw(st.sampled_from([x for x in range(G.order) if x not in A]))
    a1 = data.draw(st.sampled_from(A.members))
    a2 = data.draw(st.sampled_from(A.members))
    assert commute_coset_criterion(G, A.members, g, a1, a2) == G.commute(G.mul(a1, g), G.mul(a2, g))
    parts = coset_partition(G, A.members, g)
    cab = sum(1 for a in A.members if G.commute(a, g))
    assert len(parts) == cab and all(len(p) == A.order // cab for p in parts)
    graph = build(G, [x for p in parts for x in p])
    assert all(graph.is_independent(p) for p in parts)


@SETTINGS
@given(st.sampled_from(SMALL), st.data())
def test_solver_output_is_valid_and_audited(name, data):
    G = load(name)
    reps = [A for A in abelian_subgroups_up_to_conjugacy(G) if A.order < G.order]
    A = data.draw(st.sampled_from(reps))
    strict = data.draw(st.booleans())
    try:
        r = exact_min_fixed_A(G, A.members, strict=strict)
    except InfeasibleError:
        assert strict
        return
    rep = validate(r.decomposition)
    assert rep.valid and r.proven_exact
    assert r.decomposition.n == r.n
    if strict:
        assert rep.strict and audit(G, r.decomposition).passed
        try:
            P = promote(r.decomposition)
        except NotPromotableError:
            return
        assert P.n == r.n + 1 and validate(P).valid and P.strict and P.A == r.decomposition.A


@SETTINGS
@given(st.sampled_from(["S4", "A4", "D12", "SL2_3", "C3xS3"]), st.data())
def test_tampering_is_always_detected(name, data):
    G = load(name)
    reps = [A for A in abelian_subgroups_up_to_conjugacy(G)
            if A.order < G.order and set(center(G).members) <= set(A.members)]
    A = data.draw(st.sampled_from(reps))
    try:
        D = exact_min_fixed_A(G, A.members).decomposition
    except InfeasibleError:
        return
    parts = [list(p) for p in D.parts]
    i = data.draw(st.integers(0, len(parts) - 1))
    x = data.draw(st.sampled_from(parts[i]))
    kind = data.draw(st.sampled_from(["drop", "duplicate", "into-A"]))
    if kind == "drop":
        parts[i].remove(x)
        T = SplitDecomposition(G, D.A, parts)
    elif kind == "duplicate":
        j = (i + 1) % len(parts)
        if j == i:
            parts.append([x])
        else:
            parts[j].append(x)
        T = SplitDecomposition(G, D.A, parts)
    else:
        parts[i].remove(x)
        T = SplitDecomposition(G, list(D.A) + [x], parts)
    assert not validate(T).valid


@SETTINGS
@given(st.sampled_from(SMALL))
def test_commuting_graph_degree_formula(name):
    G = load(name)
    graph = build(G, range(1, G.order))
    for v in graph.vertex_ids:
        assert graph.degree(v) == G.centralizer_of(v).size - 2
    assert sum(len(c) for c in components(graph)) == G.order - 1
