"""Split decompositions G = A + B_1 + ... + B_n: constructions and validation."""

from __future__ import annotations

import json
from itertools import combinations
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import NotPromotableError, ParseError, PreconditionError
from .group import (
    Group,
    SubgroupRef,
    commutator_subgroup_of_action,
    is_frobenius_with_kernel,
    mask_of,
    maximal_abelian_subgroups,
    subgroup_conjugacy_orbit,
)


@dataclass
class SplitDecomposition:
    parent: Group
    A: tuple[int, ...]
    parts: list[tuple[int, ...]]
    strict: bool = field(default=None)

    def __post_init__(self):
        self.A = tuple(sorted(int(a) for a in self.A))
        self.parts = [tuple(sorted(int(x) for x in p)) for p in self.parts]
        if self.strict is None:
            self.strict = all(len(p) >= 2 for p in self.parts)

    @property
    def n(self) -> int:
        return len(self.parts)

    def part_sizes(self) -> list[int]:
        return [len(p) for p in self.parts]

    def subgroup(self) -> SubgroupRef:
        return self.parent.subgroup(self.A, check=False)


@dataclass
class ValidationReport:
    n: int
    strict: bool
    violations: list[str]

    @property
    def valid(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        head = "valid" if self.valid else f"invalid ({len(self.violations)} violations)"
        kind = "strict" if self.strict else "non-strict"
        return f"{head}, {kind}, n = {self.n}"


def _cyc(G: Group, x: int) -> str:
    return G.cycle_string(x)


def validate(D: SplitDecomposition) -> ValidationReport:
    """Check every decomposition invariant; violations are listed, not raised."""
    G = D.parent
    out = []
    N = G.order
    if G.table is None and N > 4096:
        G.all_centralizers()
    seen = {}
    for label, block in [("A", D.A)] + [(f"B{i + 1}", p) for i, p in enumerate(D.parts)]:
        for x in block:
            if not 0 <= x < N:
                out.append(f"{label}: index {x} is not an element")
                continue
            if x in seen:
                out.append(f"{_cyc(G, x)} appears in both {seen[x]} and {label}")
            else:
                seen[x] = label
    missing = [x for x in range(N) if x not in seen]
    if missing:
        shown = ", ".join(_cyc(G, x) for x in missing[:5])
        more = "" if len(missing) <= 5 else f" and {len(missing) - 5} more"
        out.append(f"not covered: {shown}{more}")
    A = [a for a in D.A if 0 <= a < N]
    if A and not G.is_subgroup(A):
        out.append("A is not a subgroup")
    if not A:
        out.append("A is empty")
    for i, a in enumerate(A):
        for b in A[i + 1:]:
            if not G.commute(a, b):
                out.append(f"A is not abelian: {_cyc(G, a)} and {_cyc(G, b)} do not commute")
                break
        else:
            continue
        break
    for i, p in enumerate(D.parts):
        if not p:
            out.append(f"B{i + 1} is empty")
        valid = sorted(set(x for x in p if 0 <= x < N))
        inside = np.zeros(N, dtype=bool)
        inside[valid] = True
        for x in valid:
            c = G.centralizer_of(x)
            for y in c[inside[c]].tolist():
                if y > x:
                    out.append(f"B{i + 1}: {_cyc(G, x)} and {_cyc(G, y)} commute")
    actual_strict = all(len(p) >= 2 for p in D.parts)
    if D.strict and not actual_strict:
        out.append("marked strict but some part has fewer than 2 elements")
    if not D.strict and actual_strict:
        out.append("marked non-strict but every part has at least 2 elements")
    return ValidationReport(D.n, actual_strict, out)


# ---- coset splitting ----------------------------------------------------

def _as_members(A) -> tuple[int, ...]:
    return tuple(A.members) if isinstance(A, SubgroupRef) else tuple(sorted(int(a) for a in A))


def _centralizer_in(G: Group, A, g: int) -> list[int]:
    c = G.centralizer_of(g)
    return sorted(set(c.tolist()).intersection(A))


def commute_coset_criterion(G: Group, A, g: int, a1: int, a2: int) -> bool:
    """Whether a1*g and a2*g commute, decided by C_A(g) a1 == C_A(g) a2."""
    A = _as_members(A)
    if a1 not in A or a2 not in A:
        raise PreconditionError("a1 and a2 must lie in A")
    ca = set(_centralizer_in(G, A, g))
    return G.mul(a2, G.inv(a1)) in ca


def _transversal(G: Group, A, C) -> list[int]:
    """Least-index representatives of the cosets of C in the abelian group A."""
    remaining = set(A)
    reps = []
    for a in sorted(A):
        if a in remaining:
            reps.append(a)
            remaining.difference_update(G.mul(c, a) for c in C)
    return reps


def coset_partition(G: Group, A, g: int) -> list[tuple[int, ...]]:
    """Split Ag into |C_A(g)| noncommuting sets of size |A : C_A(g)|."""
    A = _as_members(A)
    if g in set(A):
        raise PreconditionError("g must lie outside A")
    C = _centralizer_in(G, A, g)
    T = _transversal(G, A, C)
    return [tuple(sorted(G.mul(G.mul(c, a), g) for a in T)) for c in C]


def _right_coset_reps(G: Group, A) -> list[int]:
    Aarr = np.asarray(A, dtype=np.int64)
    covered = np.zeros(G.order, dtype=bool)
    reps = []
    for g in range(G.order):
        if not covered[g]:
            reps.append(g)
            covered[G.mul_many(Aarr, g)] = True
    return reps


def _ref(G: Group, A) -> SubgroupRef:
    return A if isinstance(A, SubgroupRef) else G.subgroup(A)


def maximal_abelian_construction(G: Group, A) -> SplitDecomposition:
    A = _ref(G, A)
    if not A.is_abelian:
        raise PreconditionError("A is not abelian")
    if G.centralizer_of_set(A.members).size != A.order:
        raise PreconditionError("A is not a maximal abelian subgroup")
    parts = []
    for g in _right_coset_reps(G, A.members)[1:]:
        parts.extend(coset_partition(G, A.members, g))
    return SplitDecomposition(G, A.members, parts)


def frobenius_coset_construction(G: Group, A) -> SplitDecomposition:
    A = _ref(G, A)
    if not A.is_abelian or not is_frobenius_with_kernel(G, A):
        raise PreconditionError("A is not an abelian Frobenius kernel of G")
    Aarr = np.asarray(A.members, dtype=np.int64)
    parts = [tuple(sorted(G.mul_many(Aarr, g).tolist())) for g in _right_coset_reps(G, A.members)[1:]]
    return SplitDecomposition(G, A.members, parts)


def promote(D: SplitDecomposition) -> SplitDecomposition:
    """Strict n-split to strict (n+1)-split over the same A, when possible."""
    if not all(len(p) >= 2 for p in D.parts):
        raise PreconditionError("promote needs a strict decomposition")
    G = D.parent
    for i, p in enumerate(D.parts):
        if len(p) >= 4:
            h = (len(p) + 1) // 2
            parts = D.parts[:i] + [p[:h], p[h:]] + D.parts[i + 1:]
            return SplitDecomposition(G, D.A, parts)
    best = None
    big = [i for i, p in enumerate(D.parts) if len(p) >= 3]
    for ii, i in enumerate(big):
        for j in big[ii + 1:]:
            for x in D.parts[i]:
                for y in D.parts[j]:
                    if not G.commute(x, y) and (best is None or (x, y) < best[0]):
                        best = ((x, y), i, j)
    if best is None:
        raise NotPromotableError("no part of size >= 4 and no noncommuting pair between parts of size >= 3")
    (x, y), i, j = best
    parts = [tuple(e for e in p if e not in (x, y)) for p in D.parts]
    parts.append((x, y))
    return SplitDecomposition(G, D.A, parts)


# ---- TI covers -----------------------------------------------------------

def _is_ti(G: Group, H: SubgroupRef) -> bool:
    orbit = subgroup_conjugacy_orbit(G, H.members)
    masks = [mask_of(K) for K in orbit]
    return all(bin(masks[i] & masks[j]).count("1") == 1
               for i in range(len(masks)) for j in range(i + 1, len(masks)))


def ti_family(G: Group) -> list[list[tuple[int, ...]]] | None:
    """Conjugacy classes of TI maximal abelian subgroups partitioning G minus 1.

    Some TI classes can overlap others (in L2(7) the Klein fours share their
    involutions with the cyclic subgroups of order 4), so the smallest
    subfamily of classes that covers every nonidentity element exactly once
    is chosen, preferring larger subgroups.  Returns the classes (each a
    sorted list of member tuples) or None when no such subfamily exists.
    """
    classes = []
    done = set()
    for M in maximal_abelian_subgroups(G):
        if M.members in done:
            continue
        orbit = subgroup_conjugacy_orbit(G, M.members)
        done.update(orbit)
        if _is_ti(G, M):
            classes.append(orbit)
    classes.sort(key=lambda orb: (-len(orb[0]), orb[0]))
    masks = []
    for orbit in classes:
        m = 0
        for K in orbit:
            m |= mask_of(K[1:])
        masks.append(m)
    target = mask_of(range(1, G.order))
    for size in range(1, len(classes) + 1):
        for combo in combinations(range(len(classes)), size):
            total = sum(len(classes[i]) * (len(classes[i][0]) - 1) for i in combo)
            if total != G.order - 1:
                continue
            acc = 0
            for i in combo:
                acc |= masks[i]
            if acc == target:
                return [classes[i] for i in combo]
    return None


def ti_cover_construction(G: Group, A=None) -> SplitDecomposition:
    """Layered decomposition from a TI partition by maximal abelian subgroups.

    ``A`` must be a member of the partition; ``None`` picks a largest one.
    Layer i takes the i-th nonidentity element of every conjugate (other than
    A) in each class, and layer i of every class goes into part i.  When an
    element's centralizer is nonabelian, layers can contain commuting pairs;
    those decompositions are recoloured at the same n by the exact solver.
    """
    family = ti_family(G)
    if family is None:
        raise PreconditionError("TI cover inapplicable: TI maximal abelian subgroups do not partition G - 1")
    members = {K for orb in family for K in orb}
    if A is None:
        Amem = family[0][0]
    else:
        Amem = _as_members(A)
        if Amem not in members:
            raise PreconditionError("TI cover inapplicable: A is not a member of the TI partition")
    n = max(len(orb[0]) - 1 for orb in family)
    layers = [[] for _ in range(n)]
    for orb in family:
        for K in orb:
            if K == Amem:
                continue
            for i, x in enumerate(K[1:]):
                layers[i].append(x)
    D = SplitDecomposition(G, Amem, layers)
    if validate(D).valid:
        return D
    from .minimize import strict_decomposition_at

    fixed = strict_decomposition_at(G, Amem, n)
    if fixed is None:
        raise PreconditionError(f"TI cover layering could not be repaired at n = {n}")
    return fixed


# ---- specialised constructions used by the fixtures ------------------------

def commutator_set(G: Group, A, g: int) -> list[int]:
    """[A, g] = {a^-1 a^g : a in A} for abelian A normalized by g."""
    return sorted({G.mul(G.inv(a), G.conj(a, g)) for a in _as_members(A)})


def product_set(G: Group, S, *elems: int) -> list[int]:
    out = []
    for s in S:
        x = s
        for e in elems:
            x = G.mul(x, e)
        out.append(x)
    return sorted(out)


# ---- file format -----------------------------------------------------

def to_json(D: SplitDecomposition) -> str:
    G = D.parent
    doc = {
        "group": G.name,
        "A": [G.cycle_string(a) for a in sorted(D.A)],
        "parts": [[G.cycle_string(x) for x in sorted(p)] for p in D.parts],
    }
    return json.dumps(doc, indent=1)


def save_decomposition(D: SplitDecomposition, path) -> None:
    Path(path).write_text(to_json(D) + "\n", encoding="utf-8")


def from_json(text: str, group: Group | None = None) -> SplitDecomposition:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(doc, dict) or not {"group", "A", "parts"} <= set(doc):
        raise ParseError("decomposition needs 'group', 'A' and 'parts'")
    if group is None:
        from .catalog import resolve

        group = resolve(doc["group"])
    G = group

    def idx(s):
        try:
            return G.index_of(s)
        except KeyError:
            raise ParseError(f"{s!r} is not an element of {G.name}") from None

    A = [idx(s) for s in doc["A"]]
    parts = [[idx(s) for s in p] for p in doc["parts"]]
    # keep the listed order of parts; strictness is recomputed from sizes
    return SplitDecomposition(G, A, parts, strict=all(len(p) >= 2 for p in parts))


def load_decomposition(path, group: Group | None = None) -> SplitDecomposition:
    return from_json(Path(path).read_text(encoding="utf-8"), group)
