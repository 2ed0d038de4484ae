"""Exact minimal n for split decompositions, lower-bound certificates and audits.

The search graph is the commuting graph on G - A.  Colour classes are
noncommuting sets, so a (strict) n-split decomposition over A is a colouring
of that graph with exactly n classes (each of size >= 2 when strict).
Components are coloured separately and merged class-by-class; strictness is
decided by a dynamic programme over components or, for large components, by a
constraint search over the whole vertex set.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .decompose import (
    SplitDecomposition,
    frobenius_coset_construction,
    maximal_abelian_construction,
    ti_cover_construction,
    ti_family,
    validate,
)
from .errors import BudgetExceeded, InfeasibleError, NSplitError, PreconditionError
from .graph import build, components
from .group import (
    Group,
    SubgroupRef,
    abelian_subgroups_up_to_conjugacy,
    center,
    is_frobenius_with_kernel,
    mask_of,
    maximal_abelian_subgroups,
    prime_factors,
    subgroup_conjugacy_orbit,
)

DEFAULT_BUDGET = 10**8
PROFILE_VERTEX_LIMIT = 12
CSP_VERTEX_LIMIT = 800


class Budget:
    """Shared node counter; raises BudgetExceeded once the cap is passed."""

    def __init__(self, limit: int = DEFAULT_BUDGET):
        self.limit = int(limit)
        self.used = 0

    def tick(self, k: int = 1) -> None:
        self.used += k
        if self.used > self.limit:
            raise BudgetExceeded(f"search budget of {self.limit} nodes exhausted")


def _as_budget(budget) -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(DEFAULT_BUDGET if budget is None else budget)


def _cache(G: Group) -> dict:
    c = G.__dict__.get("_nsplit_cache")
    if c is None:
        c = {}
        G.__dict__["_nsplit_cache"] = c
    return c


def maximal_abelian(G: Group) -> list[SubgroupRef]:
    c = _cache(G)
    if "maxab" not in c:
        c["maxab"] = maximal_abelian_subgroups(G)
    return c["maxab"]


def _members(A) -> tuple[int, ...]:
    if isinstance(A, SubgroupRef):
        return tuple(A.members)
    return tuple(sorted(int(a) for a in A))


# ---- certificates ------------------------------------------------------

@dataclass(frozen=True)
class BoundCertificate:
    kind: str
    bound: int
    scope: str
    witnesses: tuple = ()
    note: str = ""

    def to_dict(self, G: Group | None = None) -> dict:
        def fmt(W):
            if G is None:
                return list(W)
            return [G.cycle_string(x) for x in W]

        return {
            "kind": self.kind,
            "bound": self.bound,
            "scope": self.scope,
            "witnesses": [fmt(W) for W in self.witnesses],
            "note": self.note,
        }


def abelian_overlap_certificates(G: Group, A) -> list[BoundCertificate]:
    """|U - A| <= n for every abelian U not inside A, over maximal abelian U."""
    Aset = set(_members(A))
    out = []
    for U in maximal_abelian(G):
        inter = len(Aset.intersection(U.members))
        if inter == U.order:
            continue
        out.append(BoundCertificate("abelian-overlap", U.order - inter, "fixed-A", (U.members,)))
    out.sort(key=lambda c: (-c.bound, c.witnesses))
    return out


def fixed_A_lower_bound(G: Group, A) -> int:
    certs = abelian_overlap_certificates(G, A)
    return max([1] + [c.bound for c in certs])


def _cross_centralizer_mask(G: Group, H: SubgroupRef) -> int:
    parts = [G.centralizer_of(x) for x in H.members[1:]]
    return mask_of(np.unique(np.concatenate(parts))) if parts else 1


def ti_pair_certificates(G: Group) -> list[BoundCertificate]:
    """Pairs H, K of maximal abelian subgroups with no commuting nonidentity x in H, y in K.

    Any abelian A then misses H or K, so some |H - A| or |K - A| is
    min(|H|, |K|) - 1.  One certificate per conjugacy class of H (best K).
    """
    maxab = maximal_abelian(G)
    by_order = sorted(maxab, key=lambda s: (-s.order, s.members))
    masks = {s.members: mask_of(s.members) for s in maxab}
    done = set()
    out = []
    for H in by_order:
        if H.members in done:
            continue
        done.update(subgroup_conjugacy_orbit(G, H.members))
        cross = _cross_centralizer_mask(G, H)
        for K in by_order:
            if masks[K.members] & cross == 1:
                out.append(BoundCertificate("ti-pair", min(H.order, K.order) - 1, "global",
                                            (H.members, K.members)))
                break
    out.sort(key=lambda c: (-c.bound, c.witnesses))
    return out


def order_bound(G: Group) -> BoundCertificate | None:
    from .catalog import SIMPLE_GROUPS

    if G.name not in SIMPLE_GROUPS:
        return None
    n = 1
    while G.order > (n + 1) ** (n + 1):
        n += 1
    return BoundCertificate("order-bound", n, "global", (), f"|G| = {G.order} <= {n + 1}^{n + 1}")


def certificates(G: Group, A=None) -> list[BoundCertificate]:
    out = []
    if A is not None:
        out.extend(abelian_overlap_certificates(G, A))
    out.extend(ti_pair_certificates(G))
    ob = order_bound(G)
    if ob is not None:
        out.append(ob)
    return out


# ---- colouring primitives ------------------------------------------------------

def _bits(m: int):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def _popcount(m: int) -> int:
    return bin(m).count("1")


def _greedy_clique(adj: list[int]) -> list[int]:
    deg = [_popcount(a) for a in adj]
    best: list[int] = []
    for v in sorted(range(len(adj)), key=lambda v: (-deg[v], v)):
        if deg[v] + 1 <= len(best):
            break
        clique = [v]
        cand = adj[v]
        while cand:
            u = max(_bits(cand), key=lambda u: (deg[u], -u))
            clique.append(u)
            cand &= adj[u]
        if len(clique) > len(best):
            best = clique
    return sorted(best)


def _dsatur(adj: list[int]) -> list[int]:
    n = len(adj)
    deg = [_popcount(a) for a in adj]
    color = [-1] * n
    sat = [0] * n
    todo = set(range(n))
    while todo:
        v = max(todo, key=lambda v: (_popcount(sat[v]), deg[v], -v))
        todo.discard(v)
        s = sat[v]
        c = 0
        while s >> c & 1:
            c += 1
        color[v] = c
        for u in _bits(adj[v]):
            sat[u] |= 1 << c
    return color


def _classes(color: list[int]) -> list[list[int]]:
    k = max(color) + 1 if color else 0
    out = [[] for _ in range(k)]
    for v, c in enumerate(color):
        out[c].append(v)
    return out


def exact_coloring(adj: list[int], budget: Budget, clique=None, good_enough: int = 0):
    """Branch-and-bound DSATUR.  Returns (colour list, proven optimal).

    Stops early once a colouring with <= max(clique size, good_enough) colours
    is known; the result is then optimal only if it meets the clique bound.
    """
    n = len(adj)
    if n == 0:
        return [], True
    clique = _greedy_clique(adj) if clique is None else clique
    lb = len(clique)
    best_col = _dsatur(adj)
    best = max(best_col) + 1
    if best <= max(lb, good_enough):
        return best_col, best == lb
    deg = [_popcount(a) for a in adj]
    color = [-1] * n
    sat = [0] * n
    for i, v in enumerate(clique):
        color[v] = i
        for u in _bits(adj[v]):
            sat[u] |= 1 << i
    state = {"best": best, "col": best_col}

    def rec(ncol: int, remaining: int) -> None:
        budget.tick()
        if remaining == 0:
            state["best"] = ncol
            state["col"] = color[:]
            return
        v = -1
        key = None
        for u in range(n):
            if color[u] < 0:
                k = (_popcount(sat[u]), deg[u], -u)
                if key is None or k > key:
                    key, v = k, u
        limit = min(ncol + 1, state["best"] - 1)
        for c in range(limit):
            if sat[v] >> c & 1:
                continue
            color[v] = c
            bit = 1 << c
            changed = [u for u in _bits(adj[v]) if not sat[u] & bit]
            for u in changed:
                sat[u] |= bit
            rec(max(ncol, c + 1), remaining - 1)
            for u in changed:
                sat[u] &= ~bit
            color[v] = -1
            if state["best"] <= max(lb, good_enough):
                return
            limit = min(limit, state["best"] - 1)

    rec(lb, n - lb)
    return state["col"], state["best"] == lb or state["best"] > good_enough


@dataclass
class _Component:
    verts: list[int]
    adj: list[int]
    clique: list[int]
    is_clique: bool
    classes: list[list[int]] = None
    proven: bool = False

    @property
    def size(self) -> int:
        return len(self.verts)

    @property
    def n_classes(self) -> int:
        return len(self.classes)


class SearchInstance:
    """The commuting graph on G - A, split into components."""

    def __init__(self, G: Group, A):
        self.G = G
        self.A = _members(A)
        Aset = set(self.A)
        self.V = [x for x in range(G.order) if x not in Aset]
        self.graph = build(G, self.V)
        self.adjacency = self.graph.adjacency
        self.comps: list[_Component] = []
        for comp in components(self.graph):
            pos = {v: i for i, v in enumerate(comp)}
            adj = []
            for v in comp:
                m = 0
                for w in self.adjacency[v]:
                    m |= 1 << pos[w]
                adj.append(m)
            full = all(_popcount(a) == len(comp) - 1 for a in adj)
            clique = list(range(len(comp))) if full else _greedy_clique(adj)
            c = _Component(list(comp), adj, clique, full)
            if full:
                c.classes = [[i] for i in range(len(comp))]
                c.proven = True
            self.comps.append(c)

    @property
    def clique_bound(self) -> int:
        return max((len(c.clique) for c in self.comps), default=0)

    def color_components(self, budget: Budget, target: int = 0) -> tuple[int, bool]:
        """Colour every component; returns (max colours used, all optimal).

        ``target`` lets a component stop once it uses at most that many colours.
        """
        target = max(target, self.clique_bound)
        for c in self.comps:
            if c.classes is not None and (c.proven or c.n_classes <= target):
                continue
            col, proven = exact_coloring(c.adj, budget, c.clique, good_enough=target)
            c.classes = _classes(col)
            c.proven = proven
        k = max((c.n_classes for c in self.comps), default=0)
        # a component that stopped early at <= k colours cannot raise the maximum
        proven = all(c.proven or c.n_classes <= k for c in self.comps)
        if not proven:
            # settle the components that might still need more than k colours
            for c in self.comps:
                if not c.proven and c.n_classes > k:
                    col, ok = exact_coloring(c.adj, budget, c.clique)
                    c.classes, c.proven = _classes(col), ok
            k = max(c.n_classes for c in self.comps)
            proven = all(c.proven or c.n_classes <= k for c in self.comps)
        return k, proven

    def chromatic_number(self, budget: Budget) -> tuple[int, bool]:
        k, proven = self.color_components(budget)
        big = [c for c in self.comps if c.n_classes == k]
        return k, proven and all(c.proven for c in big)

    def greedy_fill(self) -> None:
        for c in self.comps:
            if c.classes is None:
                c.classes = _classes(_dsatur(c.adj))

    def _global(self, c: _Component, cls) -> list[int]:
        return [c.verts[i] for i in cls]

    def merge(self, n: int) -> list[list[int]] | None:
        """Index-aligned merge of per-component classes into n labels."""
        if any(c.n_classes > n for c in self.comps):
            return None
        labels: list[list[int]] = [[] for _ in range(n)]
        order = sorted(self.comps, key=lambda c: (-c.n_classes, -c.size, c.verts[0]))
        for c in order:
            classes = sorted((self._global(c, cl) for cl in c.classes), key=lambda s: (-len(s), s[0]))
            slots = sorted(range(n), key=lambda L: (len(labels[L]), L))
            for cl, L in zip(classes, slots):
                labels[L].extend(cl)
        return labels

    def repair(self, labels: list[list[int]]) -> bool:
        """Move single vertices from labels of size >= 3 into labels below 2."""
        n = len(labels)
        while True:
            short = [L for L in range(n) if len(labels[L]) < 2]
            if not short:
                return True
            L = short[0]
            target = set(labels[L])
            moved = False
            for M in sorted(range(n), key=lambda M: (-len(labels[M]), M)):
                if len(labels[M]) < 3:
                    break
                for v in sorted(labels[M]):
                    if target.isdisjoint(self.adjacency[v]):
                        labels[M].remove(v)
                        labels[L].append(v)
                        moved = True
                        break
                if moved:
                    break
            if not moved:
                return False

    # -- exact strictness decision ------------------------------------------------

    def _profiles(self, c: _Component, n: int, budget: Budget) -> dict:
        """(singletons, big classes) -> local classes, for partitions into <= n independent sets."""
        if c.is_clique:
            return {(c.size, 0): [[i] for i in range(c.size)]} if c.size <= n else {}
        m = c.size
        out: dict = {}
        classes: list[list[int]] = []
        cmask: list[int] = []

        def rec(v: int) -> None:
            budget.tick()
            if v == m:
                a = sum(1 for cl in classes if len(cl) == 1)
                key = (a, len(classes) - a)
                if key not in out:
                    out[key] = [list(cl) for cl in classes]
                return
            for i in range(len(classes)):
                if not cmask[i] & c.adj[v]:
                    classes[i].append(v)
                    cmask[i] |= 1 << v
                    rec(v + 1)
                    cmask[i] &= ~(1 << v)
                    classes[i].pop()
            if len(classes) < n:
                classes.append([v])
                cmask.append(1 << v)
                rec(v + 1)
                classes.pop()
                cmask.pop()

        rec(0)
        return out

    def _dp(self, n: int, budget: Budget) -> list[list[int]] | None | bool:
        """Exact decision via profiles; False when infeasible, labels when feasible."""
        profs = [self._profiles(c, n, budget) for c in self.comps]
        if any(not p for p in profs):
            return False
        layers = []
        states = {(n, 0): None}
        for p in profs:
            new: dict = {}
            for (z, o) in states:
                t = n - z - o
                for (a, b) in p:
                    for b0 in range(min(b, z) + 1):
                        for s0 in range(min(a, z - b0) + 1):
                            rest = a - s0 + b - b0
                            if rest > o + t:
                                continue
                            c1 = min(o, rest)
                            key = (z - s0 - b0, o + s0 - c1)
                            if key not in new:
                                new[key] = ((z, o), (a, b), s0, b0)
                    budget.tick()
            # drop dominated states: fewer empty labels and fewer unfinished labels is better
            keep = {}
            for s in sorted(new, key=lambda s: (s[0] + s[1], s[0])):
                if not any(k[0] <= s[0] and k[0] + k[1] <= s[0] + s[1] for k in keep):
                    keep[s] = new[s]
            layers.append(keep)
            states = keep
        if (0, 0) not in states:
            return False
        choices = []
        s = (0, 0)
        for layer in reversed(layers):
            prev, prof, s0, b0 = layer[s]
            choices.append((prof, s0, b0))
            s = prev
        choices.reverse()
        zero, one, two = list(range(n)), [], []
        labels: list[list[int]] = [[] for _ in range(n)]
        for c, p, (prof, s0, b0) in zip(self.comps, profs, choices):
            cls = [self._global(c, cl) for cl in p[prof]]
            singles = [cl for cl in cls if len(cl) == 1]
            bigs = [cl for cl in cls if len(cl) > 1]
            to_two_from_zero = zero[:b0]
            to_one = zero[b0:b0 + s0]
            zero = zero[b0 + s0:]
            for cl, L in zip(bigs[:b0], to_two_from_zero):
                labels[L].extend(cl)
            for cl, L in zip(singles[:s0], to_one):
                labels[L].extend(cl)
            rest = singles[s0:] + bigs[b0:]
            c1 = min(len(one), len(rest))
            promoted = one[:c1]
            for cl, L in zip(rest[:c1], promoted):
                labels[L].extend(cl)
            for cl, L in zip(rest[c1:], two):
                labels[L].extend(cl)
            one = one[c1:] + to_one
            two = two + to_two_from_zero + promoted
        return labels

    def _csp(self, n: int, budget: Budget) -> list[list[int]] | None:
        """Direct search for exactly n independent classes of size >= 2."""
        V = self.V
        pos = {v: i for i, v in enumerate(V)}
        N = len(V)
        adj = []
        for v in V:
            m = 0
            for w in self.adjacency[v]:
                m |= 1 << pos[w]
            adj.append(m)
        deg = [_popcount(a) for a in adj]
        lab = [0] * n          # members
        nb = [0] * n           # union of members' neighbourhoods
        size = [0] * n
        assign = [-1] * N
        state = {"used": 0, "free": (1 << N) - 1}

        def feasible() -> bool:
            free = state["free"]
            cnt = _popcount(free)
            used = state["used"]
            need = 2 * (n - used)
            for L in range(used):
                d = 2 - size[L]
                if d > 0:
                    need += d
                    if _popcount(free & ~nb[L]) < d:
                        return False
            return need <= cnt

        def rec() -> bool:
            budget.tick()
            free = state["free"]
            if not free:
                return state["used"] == n and all(s >= 2 for s in size)
            if not feasible():
                return False
            used = state["used"]
            best_v, best_opts = -1, None
            for v in _bits(free):
                opts = [L for L in range(used) if not nb[L] >> v & 1 and not lab[L] & adj[v]]
                if used < n:
                    opts.append(used)
                key = (len(opts), -deg[v], v)
                if best_opts is None or key < best_key:
                    best_v, best_opts, best_key = v, opts, key
                    if not opts:
                        return False
            v = best_v
            # prefer classes that still need members
            best_opts.sort(key=lambda L: (size[L] >= 2 if L < used else 1, L))
            for L in best_opts:
                new = L == used
                if new:
                    state["used"] += 1
                old_nb = nb[L]
                lab[L] |= 1 << v
                nb[L] |= adj[v]
                size[L] += 1
                assign[v] = L
                state["free"] ^= 1 << v
                if rec():
                    return True
                state["free"] ^= 1 << v
                assign[v] = -1
                size[L] -= 1
                nb[L] = old_nb
                lab[L] &= ~(1 << v)
                if new:
                    state["used"] -= 1
            return False

        if not rec():
            return None
        out = [[] for _ in range(n)]
        for i, L in enumerate(assign):
            out[L].append(V[i])
        return out

    def strict_at(self, n: int, budget: Budget):
        """Decide a strict n-split over A: (True, labels) / (False, None) / (None, None)."""
        if n < 1 or len(self.V) < 2 * n:
            return False, None
        if not set(center(self.G).members) <= set(self.A):
            return False, None
        if self.clique_bound > n:
            return False, None
        try:
            k, proven = self.color_components(budget, target=n)
        except BudgetExceeded:
            return None, None
        if k > n:
            return (False, None) if proven else (None, None)
        labels = self.merge(n)
        if labels is not None and self.repair(labels):
            return True, labels
        try:
            if all(c.is_clique or c.size <= PROFILE_VERTEX_LIMIT for c in self.comps):
                res = self._dp(n, budget)
                return (False, None) if res is False else (True, res)
            if len(self.V) <= CSP_VERTEX_LIMIT:
                res = self._csp(n, budget)
                return (False, None) if res is None else (True, res)
        except BudgetExceeded:
            return None, None
        return None, None

    def decomposition(self, labels) -> SplitDecomposition:
        return SplitDecomposition(self.G, self.A, [sorted(L) for L in labels])


# ---- results -------------------------------------------------------

EXHAUSTIVE = BoundCertificate("exhaustive", 0, "search", (), "every smaller n refuted by exhaustive search")


@dataclass
class MinResult:
    n: int
    decomposition: SplitDecomposition
    certificate: BoundCertificate
    proven_exact: bool
    strict: bool
    searched: list = field(default_factory=list)

    @property
    def A(self) -> tuple[int, ...]:
        return self.decomposition.A

    def to_dict(self, decomposition_file=None) -> dict:
        G = self.decomposition.parent
        return {
            "group": G.name,
            "A": [G.cycle_string(a) for a in self.A],
            "strict": self.strict,
            "n": self.n,
            "proven": self.proven_exact,
            "certificate": self.certificate.to_dict(G),
            "decomposition_file": None if decomposition_file is None else str(decomposition_file),
        }

    def to_json(self, decomposition_file=None) -> str:
        return json.dumps(self.to_dict(decomposition_file), indent=1)


def _search_fixed(G: Group, A, strict: bool, budget: Budget, n_lo: int = 1, n_hi: int | None = None,
                  inst: SearchInstance | None = None):
    """Smallest feasible n in [n_lo, n_hi].

    Returns (n or None, decomposition or None, proven) where proven means every
    n below the returned value (or up to n_hi when none was found) is refuted.
    """
    inst = inst or SearchInstance(G, A)
    if not inst.V:
        return None, None, True
    if not strict:
        try:
            k, proven = inst.chromatic_number(budget)
        except BudgetExceeded:
            inst.greedy_fill()
            k, proven = max(c.n_classes for c in inst.comps), False
        if n_hi is not None and k > n_hi:
            return None, None, proven
        labels = inst.merge(k)
        return k, inst.decomposition(labels), proven
    proven = True
    n = max(n_lo, inst.clique_bound, 1)
    top = len(inst.V) // 2 if n_hi is None else min(n_hi, len(inst.V) // 2)
    while n <= top:
        status, labels = inst.strict_at(n, budget)
        if status:
            return n, inst.decomposition(labels), proven
        if status is None:
            proven = False
        n += 1
    return None, None, proven


def exact_min_fixed_A(G: Group, A, strict: bool = True, budget=DEFAULT_BUDGET) -> MinResult:
    budget = _as_budget(budget)
    Amem = _members(A)
    if not G.is_abelian_set(Amem) or not G.is_subgroup(Amem):
        raise PreconditionError("A must be an abelian subgroup")
    if len(Amem) == G.order:
        raise InfeasibleError("A = G leaves nothing to decompose")
    if strict:
        if G.order - len(Amem) < 2:
            raise InfeasibleError("fewer than 2 elements outside A")
        if not set(center(G).members) <= set(Amem):
            raise InfeasibleError("Z(G) is not contained in A, so no strict decomposition exists")
    lb = fixed_A_lower_bound(G, Amem)
    n, D, proven = _search_fixed(G, Amem, strict, budget, n_lo=lb)
    if n is None:
        if proven:
            raise InfeasibleError("no strict decomposition over this A")
        raise BudgetExceeded("budget exhausted before any decomposition was found")
    certs = abelian_overlap_certificates(G, Amem)
    if certs and certs[0].bound == n:
        cert = certs[0]
    else:
        cert = EXHAUSTIVE
    return MinResult(n, D, cert, proven or cert.bound == n, strict)


def _constructions(G: Group, A: SubgroupRef, strict: bool):
    """Cheap constructive decompositions over A (validated)."""
    out = []
    if G.centralizer_of_set(A.members).size == A.order:
        out.append(maximal_abelian_construction(G, A))
    if A.order > 1 and is_frobenius_with_kernel(G, A):
        out.append(frobenius_coset_construction(G, A))
    return [D for D in out if validate(D).valid and (D.strict or not strict)]


def min_over_all_A(G: Group, strict: bool = True, budget=DEFAULT_BUDGET) -> MinResult:
    """min(G): the smallest n over abelian subgroup representatives."""
    budget = _as_budget(budget)
    if G.is_abelian():
        raise PreconditionError("G is abelian")
    reps = abelian_subgroups_up_to_conjugacy(G, include_trivial=True)
    Z = set(center(G).members)
    cand = []
    for A in reps:
        if A.order == G.order:
            continue
        if strict and (not Z <= set(A.members) or G.order - A.order < 2):
            continue
        cand.append((fixed_A_lower_bound(G, A), A))
    cand.sort(key=lambda t: (t[0], -t[1].order, t[1].members))
    glob = ti_pair_certificates(G)
    ob = order_bound(G)
    if ob is not None:
        glob.append(ob)
    glob.sort(key=lambda c: -c.bound)
    per_A = min(lb for lb, _ in cand)
    L = per_A
    cert = BoundCertificate("abelian-overlap", per_A, "every-A", (), "minimum over representatives of the fixed-A bound")
    if glob and glob[0].bound >= L:
        L, cert = glob[0].bound, glob[0]

    best = None  # (n, D)
    insts = {}

    def consider(n, D):
        nonlocal best
        if D is not None and (best is None or n < best[0]):
            best = (n, D)

    # pass 1: constructions and the cheap merge at each representative's bound
    if strict:
        try:
            fam = ti_family(G)
        except NSplitError:
            fam = None
        if fam is not None:
            try:
                D = ti_cover_construction(G, None)
                if validate(D).valid:
                    consider(D.n, D)
            except NSplitError:
                pass
    for lb, A in cand:
        if best is not None and best[0] <= L:
            break
        for D in _constructions(G, A, strict):
            consider(D.n, D)
        if best is not None and lb >= best[0]:
            continue
        inst = insts.setdefault(A.members, SearchInstance(G, A.members))
        try:
            k, _ = inst.color_components(Budget(10**5), target=lb)
        except BudgetExceeded:
            continue
        if k <= lb:
            labels = inst.merge(lb) if strict else inst.merge(k)
            if labels is not None and (not strict or inst.repair(labels)):
                D = inst.decomposition(labels)
                consider(D.n, D)
    if best is not None and best[0] <= L:
        n, D = best
        return MinResult(n, D, cert, True, strict)

    # pass 2: exact search below the best known value
    proven = True
    for lb, A in cand:
        hi = None if best is None else best[0] - 1
        if hi is not None and lb > hi:
            continue
        inst = insts.setdefault(A.members, SearchInstance(G, A.members))
        n, D, ok = _search_fixed(G, A.members, strict, budget, n_lo=lb, n_hi=hi, inst=inst)
        if n is not None:
            consider(n, D)
            # values below n were refuted for this A only if ok
        if not ok:
            proven = False
    if best is None:
        raise InfeasibleError("no abelian subgroup admits a strict decomposition")
    n, D = best
    if n <= L:
        return MinResult(n, D, cert, True, strict)
    return MinResult(n, D, EXHAUSTIVE if proven else cert, proven, strict)


def strict_decomposition_at(G: Group, A, n: int, budget=DEFAULT_BUDGET) -> SplitDecomposition | None:
    inst = SearchInstance(G, A)
    status, labels = inst.strict_at(n, _as_budget(budget))
    return inst.decomposition(labels) if status else None


def strict_feasible(G: Group, A, n: int, budget=DEFAULT_BUDGET):
    """True / False / None (budget) for a strict n-split over A, plus the witness."""
    inst = SearchInstance(G, A)
    status, labels = inst.strict_at(n, _as_budget(budget))
    return status, (inst.decomposition(labels) if status else None)


# ---- audit -------------------------------------------------------

@dataclass
class AuditCheck:
    name: str
    status: str      # pass | fail | warn | n/a
    detail: str = ""


@dataclass
class AuditReport:
    n: int
    checks: list[AuditCheck]

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    @property
    def warnings(self) -> list[AuditCheck]:
        return [c for c in self.checks if c.status == "warn"]

    def lines(self) -> list[str]:
        return [f"{c.name}: {c.status}" + (f" ({c.detail})" if c.detail else "") for c in self.checks]


def _index_bound(n: int) -> int:
    # the factorial bound is stated for n >= 2; n = 1 forces index 2
    return 2 if n == 1 else math.factorial(n * n)


def audit(G: Group, D: SplitDecomposition) -> AuditReport:
    n = D.n
    A = set(D.A)
    N = G.order
    inA = np.zeros(N, dtype=bool)
    inA[list(A)] = True
    orders = G.element_orders
    if G.table is None:
        G.all_centralizers()
    checks = []

    worst = None
    for U in maximal_abelian(G):
        outside = U.order - int(inA[list(U.members)].sum())
        if outside and (worst is None or outside > worst[0]):
            worst = (outside, U)
    if worst is None or worst[0] <= n:
        checks.append(AuditCheck("(i) abelian overlap", "pass", f"max |U - A| = {0 if worst is None else worst[0]}"))
    else:
        checks.append(AuditCheck("(i) abelian overlap", "fail", f"|U - A| = {worst[0]} > n"))

    bad2, bad3o, bad3c, bad4 = [], [], [], []
    normal = G.is_normal_set(sorted(A))
    for b in range(N):
        if inA[b]:
            continue
        cab = int(inA[G.centralizer_of(b)].sum())
        o = int(orders[b])
        powers = [b]
        while len(powers) < o:
            powers.append(G.mul(powers[-1], b))
        meets = any(inA[p] for p in powers[:-1])
        if not meets and (o - 1) * cab > n:
            bad2.append(b)
        if cab > n:
            bad3c.append(b)
        if o > 2 * n:
            bad3o.append(b)
        if normal:
            k = next(k for k in range(1, o + 1) if inA[powers[k - 1]])
            if k > n + 1:
                bad4.append(b)

    def report(name, bad):
        if bad:
            checks.append(AuditCheck(name, "fail", "e.g. " + G.cycle_string(bad[0])))
        else:
            checks.append(AuditCheck(name, "pass"))

    report("(ii) trivial-meet elements", bad2)
    report("(iii) centralizer in A and element order", bad3c + bad3o)
    if normal:
        report("(iv) order in G/A", bad4)
    else:
        checks.append(AuditCheck("(iv) order in G/A", "n/a", "A not normal"))

    Z = set(center(G).members)
    if D.strict:
        ok = Z <= A and len(Z) <= n
        checks.append(AuditCheck("(v) center", "pass" if ok else "fail", f"|Z| = {len(Z)}"))
    else:
        checks.append(AuditCheck("(v) center", "n/a", "not strict"))

    bad6 = []
    for p in prime_factors(N):
        pk = 1
        while N % (pk * p) == 0:
            pk *= p
        forced = p >= n + 2 or (p * p > 2 * n and pk >= p * p)
        if not forced:
            continue
        pel = [x for x in range(1, N) if _is_p_power(int(orders[x]), p)]
        if any(not inA[x] for x in pel):
            bad6.append(p)
    checks.append(AuditCheck("(vi) p-subgroups inside A", "fail" if bad6 else "pass",
                             f"p = {bad6[0]}" if bad6 else ""))

    if len(A) == 1:
        ok = N <= math.factorial(n)
        checks.append(AuditCheck("(vii) |G| <= n! for A = 1", "pass" if ok else "warn",
                                 "" if ok else f"|G| = {N} > {n}! (known counterexample: S4 strict 3-split over 1)"))
    else:
        checks.append(AuditCheck("(vii) |G| <= n! for A = 1", "n/a"))

    if A == Z and len(A) == n:
        ok = N // len(A) <= 2 * n
        checks.append(AuditCheck("(viii) |G:A| <= 2n for A = Z, |A| = n", "pass" if ok else "fail"))
    else:
        checks.append(AuditCheck("(viii) |G:A| <= 2n for A = Z, |A| = n", "n/a"))

    ok = N // len(A) <= _index_bound(n)
    checks.append(AuditCheck("(ix) index bound", "pass" if ok else "fail", f"|G:A| = {N // len(A)}"))
    return AuditReport(n, checks)


def _is_p_power(o: int, p: int) -> bool:
    if o == 1:
        return False
    while o % p == 0:
        o //= p
    return o == 1
