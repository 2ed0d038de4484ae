"""Predicates for strict n-split decompositions with n = 1, 2, 3 and a catalog sweep."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from itertools import product

from .catalog import load, small_nonabelian_names
from .errors import PreconditionError
from .group import (
    Group,
    SubgroupRef,
    abelian_subgroups_up_to_conjugacy,
    center,
    commutator_subgroup_of_action,
    is_frobenius_with_kernel,
    sylow_subgroup,
)
from .iso import small_iso_type, subgroup_as_group
from .minimize import DEFAULT_BUDGET, Budget, SearchInstance

SWEEP_EXTRA = ["D32", "Q32", "SD32", "S3xS3", "paper72", "Q8Frob72", "C3xD10", "C15:C4", "C3^3:V4"]


def default_sweep_names() -> list[str]:
    return small_nonabelian_names(24) + SWEEP_EXTRA


def _ref(G: Group, A) -> SubgroupRef:
    if isinstance(A, SubgroupRef):
        return A
    return G.subgroup(A)


def _is(G: Group, order: int, target: str) -> bool:
    return G.order == order and small_iso_type(G, target)


def _sylow2_type(G: Group, S: SubgroupRef) -> str:
    if S.order == 1:
        return "1"
    H = subgroup_as_group(G, S)
    if S.order == 2:
        return "C2"
    if S.order == 4:
        return "C4" if small_iso_type(H, "C4") else "klein"
    if S.order == 8:
        for t in ("D8", "Q8"):
            if small_iso_type(H, t):
                return t
    return "other"


def _frobenius(G: Group, A: SubgroupRef) -> bool:
    return A.order > 1 and is_frobenius_with_kernel(G, A)


def _cent_in(G: Group, A: SubgroupRef, g: int) -> list[int]:
    return sorted(set(G.centralizer_of(g).tolist()).intersection(A.members))


def _involutions(G: Group, S: SubgroupRef) -> list[int]:
    return [x for x in S.members if int(G.element_orders[x]) == 2]


def _elementary_abelian(G: Group, A: SubgroupRef, p: int) -> bool:
    return all(int(G.element_orders[a]) in (1, p) for a in A.members)


def _internal_direct(G: Group, A: SubgroupRef, factors) -> bool:
    """A is the internal direct product of the given subgroups of A."""
    total = 1
    for f in factors:
        total *= len(f)
    if total != A.order:
        return False
    gens = [x for f in factors for x in f]
    return G.generate(gens).size == A.order


def _z3_times_frobenius(G: Group, A: SubgroupRef, S: SubgroupRef) -> bool:
    """G = Z x F with |Z| = 3 central and F Frobenius with kernel A n F, complement S."""
    Z = center(G)
    if Z.order != 3 or not set(Z.members) <= set(A.members):
        return False
    t = _involutions(G, S)[0]
    K = commutator_subgroup_of_action(G, A, [t])
    if K.order == 1:
        return False
    F = G.generate(list(K.members) + [t])
    if F.size * 3 != G.order or set(F.tolist()) & set(Z.members) != {0}:
        return False
    Fref = G.subgroup(F.tolist(), check=False)
    if not Fref.is_normal:
        return False
    FG = subgroup_as_group(G, Fref)
    pos = {m: i for i, m in enumerate(sorted(F.tolist()))}
    kernel = FG.subgroup([pos[k] for k in K.members], check=False)
    return set(K.members) == set(A.members) & set(F.tolist()) and _frobenius(FG, kernel) and F.size == 2 * K.order


def _paper72_relations(G: Group, A: SubgroupRef, S: SubgroupRef) -> bool:
    """x, y in S and u, v in A with x^4 = y^2 = 1, x^y = x^-1, u^x = v, v^x = u^-1, u^y = u, v^y = v^-1."""
    if A.order != 9 or not _elementary_abelian(G, A, 3):
        return False
    orders = G.element_orders
    xs = [x for x in S.members if int(orders[x]) == 4]
    ys = [y for y in S.members if int(orders[y]) == 2]
    for x, y in product(xs, ys):
        if G.conj(x, y) != G.inv(x):
            continue
        for u in A.members[1:]:
            if G.conj(u, y) != u:
                continue
            v = G.conj(u, x)
            if v == u or G.conj(v, x) != G.inv(u) or G.conj(v, y) != G.inv(v):
                continue
            if G.generate([u, v]).size == 9:
                return True
    return False


def _n1(G, A):
    if A.order % 2 == 1 and G.order == 2 * A.order and _frobenius(G, A):
        return "n1-frobenius-index-2"
    return None


def _n2(G, A):
    idx = G.order // A.order
    if A.is_normal:
        if idx == 2 and center(G).order <= 2 and A.order >= 4:
            return "n2-normal-1"
        if idx == 3 and _frobenius(G, A):
            return "n2-normal-2"
        if idx == 4 and (_is(G, 8, "D8") or _is(G, 8, "Q8")):
            return "n2-normal-3"
        if idx == 6:
            if A.order == 1 and _is(G, 6, "S3"):
                return "n2-normal-4"
            if A.order == 4 and _is(G, 24, "S4"):
                return "n2-normal-4"
        return None
    if A.order == 2 and _is(G, 6, "S3"):
        return "n2-nonnormal-1"
    if A.order == 2 and _is(G, 12, "A4"):
        return "n2-nonnormal-2"
    return None


def _n3_odd(G, A):
    S = sylow_subgroup(G, 2)
    st = _sylow2_type(G, S)
    idx = G.order // A.order
    fro = _frobenius(G, A)
    if st == "1" and fro and idx == 3:
        return "n3-odd-1"
    if st == "C2":
        if fro and A.order >= 7 and idx == 2:
            return "n3-odd-2"
        if _z3_times_frobenius(G, A, S):
            return "n3-odd-3"
    if st == "C4":
        if fro and idx == 4:
            return "n3-odd-4"
        if G.order == A.order * 4:
            s = next(x for x in S.members if int(G.element_orders[x]) == 4)
            t = G.mul(s, s)
            AS = commutator_subgroup_of_action(G, A, [s])
            At = commutator_subgroup_of_action(G, A, [t])
            CAt = _cent_in(G, A, t)
            if (AS.order == A.order and len(CAt) == 3 and At.order > 1
                    and _internal_direct(G, A, [CAt, At.members])):
                return "n3-odd-5"
    if st == "klein":
        if A.order == 1 and _is(G, 12, "A4"):
            return "n3-odd-6"
        if G.order == A.order * 4 and A.order in (9, 27) and _elementary_abelian(G, A, 3):
            if A.order == 9 and _is(G, 36, "S3xS3"):
                return "n3-odd-7"
            invs = _involutions(G, S)
            cents = [_cent_in(G, A, s) for s in invs]
            if all(len(c) == 3 for c in cents) and _internal_direct(G, A, cents):
                return "n3-odd-7"
    if st == "D8":
        if A.order == 1 and _is(G, 24, "S4"):
            return "n3-odd-8a"
        if G.order == A.order * 8 and _paper72_relations(G, A, S):
            return "n3-odd-8b"
    if st == "Q8" and G.order == A.order * 8 and fro:
        return "n3-odd-9"
    return None


def _n3_even(G, A):
    idx = G.order // A.order
    if idx == 3 and _frobenius(G, A):
        return "n3-even-1"
    if idx == 2 and A.order >= 6 and center(G).order == 2:
        return "n3-even-2"
    if (_is(G, 8, "D8") or _is(G, 8, "Q8")) and set(A.members) == set(center(G).members):
        return "n3-even-3"
    if A.order == 4 and _is(G, 24, "S4"):
        return "n3-even-4"
    return None


def _n3(G, A):
    if not A.is_normal:
        if A.order in (2, 3) and _is(G, 12, "A4"):
            return "n3-nonnormal-1"
        if A.order in (2, 3, 4) and _is(G, 24, "S4"):
            return "n3-nonnormal-2"
        return None
    if A.order % 2 == 1:
        return _n3_odd(G, A)
    return _n3_even(G, A)


RULES = {1: _n1, 2: _n2, 3: _n3}


def predict(G: Group, A, n: int) -> tuple[bool, str]:
    """Whether the classification predicts a strict n-split over A, with the matched clause."""
    if n not in RULES:
        raise PreconditionError("predictions exist for n = 1, 2, 3 only")
    if G.is_abelian():
        raise PreconditionError("G must be nonabelian")
    A = _ref(G, A)
    if not A.is_abelian:
        raise PreconditionError("A must be abelian")
    case = RULES[n](G, A)
    return (case is not None), (case or "none")


@dataclass
class SweepRecord:
    group: str
    A: list[str]
    order_A: int
    n: int
    predicted: bool
    solved: bool | None
    case_id: str
    status: str

    def to_json(self) -> str:
        return json.dumps(asdict(self))


def sweep(names=None, n: int = 1, budget: int = DEFAULT_BUDGET) -> list[SweepRecord]:
    """Compare predict with the exact solver on every (group, A representative)."""
    names = default_sweep_names() if names is None else list(names)
    out = []
    for name in names:
        G = load(name) if isinstance(name, str) else name
        if G.is_abelian():
            continue
        for A in abelian_subgroups_up_to_conjugacy(G):
            if A.order == G.order:
                continue
            pred, case = predict(G, A, n)
            inst = SearchInstance(G, A.members)
            status, _ = inst.strict_at(n, Budget(budget))
            if status is None:
                verdict = "unresolved"
            else:
                verdict = "agree" if status == pred else "DISAGREE"
            gens = G.small_generating_set(A.members)
            out.append(SweepRecord(G.name, [G.cycle_string(g) for g in gens] or ["()"], A.order,
                                   n, pred, status, case, verdict))
    return out


def discrepancies(records) -> list[SweepRecord]:
    return [r for r in records if r.status != "agree"]
