"""Isomorphism recognition for small groups by generator-image backtracking."""

from __future__ import annotations

from collections import Counter

import numpy as np

from .errors import PreconditionError, ResourceError
from .group import Group, SubgroupRef, center

RECOGNITION_CAP = 100


def subgroup_as_group(G: Group, H, name: str = "H") -> Group:
    """Standalone Group on the members of a subgroup (identity stays first)."""
    members = list(H.members if isinstance(H, SubgroupRef) else H)
    members = sorted(int(m) for m in members)
    sub = Group(G.perms[members], name=name)
    gens = G.small_generating_set(members)
    pos = {m: i for i, m in enumerate(members)}
    sub.generators = tuple(pos[g] for g in gens)
    return sub


def _invariants(G: Group):
    return (
        G.order,
        tuple(sorted(Counter(G.element_orders.tolist()).items())),
        center(G).order,
        len(G.classes),
    )


def _schreier_words(H: Group, gens):
    """BFS over H by right multiplication: list of (element, parent, gen position)."""
    seen = {0: None}
    order = [0]
    steps = []
    head = 0
    while head < len(order):
        x = order[head]
        head += 1
        for k, g in enumerate(gens):
            y = H.mul(x, g)
            steps.append((x, k, y))
            if y not in seen:
                seen[y] = (x, k)
                order.append(y)
    return order, seen, steps


def find_isomorphism(H: Group, G: Group) -> dict[int, int] | None:
    """An isomorphism H -> G as an index map, or None."""
    if H.order != G.order:
        return None
    if max(H.order, G.order) > RECOGNITION_CAP:
        raise ResourceError(f"isomorphism search limited to order {RECOGNITION_CAP}")
    if _invariants(H) != _invariants(G):
        return None
    gens = H.small_generating_set(range(H.order))
    order, parent, steps = _schreier_words(H, gens)
    horders = [int(H.element_orders[g]) for g in gens]
    gorders = G.element_orders
    cands = [np.flatnonzero(gorders == o).tolist() for o in horders]

    def attempt(images):
        phi = {0: 0}
        for x in order[1:]:
            px, k = parent[x]
            phi[x] = G.mul(phi[px], images[k])
        for x, k, y in steps:
            if G.mul(phi[x], images[k]) != phi[y]:
                return None
        if len(set(phi.values())) != H.order:
            return None
        return phi

    def partial_ok(images):
        # the images chosen so far must satisfy the orders of pairwise products
        j = len(images) - 1
        for i in range(j):
            if int(H.element_orders[H.mul(gens[i], gens[j])]) != int(gorders[G.mul(images[i], images[j])]):
                return False
        return True

    def rec(images):
        if len(images) == len(gens):
            return attempt(images)
        for c in cands[len(images)]:
            if c in images:
                continue
            images.append(c)
            if partial_ok(images):
                res = rec(images)
                if res is not None:
                    return res
            images.pop()
        return None

    return rec([])


def is_isomorphic(H: Group, G: Group) -> bool:
    return find_isomorphism(H, G) is not None


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % k for k in range(2, int(n**0.5) + 1))


def _model(target: str, order: int) -> Group | None:
    from . import catalog

    t = target.strip()
    low = t.lower().replace("₈", "8").replace("₃", "3").replace("₄", "4").replace(" ", "")
    fixed = {
        "d8": lambda: catalog.dihedral(8),
        "q8": lambda: catalog.generalized_quaternion(8),
        "klein": catalog.klein,
        "v4": catalog.klein,
        "s3": lambda: catalog.symmetric(3),
        "s4": lambda: catalog.symmetric(4),
        "a4": lambda: catalog.alternating(4),
        "s3xs3": lambda: catalog.direct_product(catalog.symmetric(3), catalog.symmetric(3)),
    }
    if low in fixed:
        return fixed[low]()
    if low.startswith("c") and low[1:].isdigit():
        return catalog.cyclic(int(low[1:]))
    if low in ("dihedral", "dihedral-2k"):
        return catalog.dihedral(order) if order >= 4 and order % 2 == 0 else None
    if low in ("generalized_quaternion", "generalized-quaternion", "generalized-quaternion-2^k", "quaternion"):
        return catalog.generalized_quaternion(order) if order >= 8 and order & (order - 1) == 0 else None
    if low in ("semidihedral", "semidihedral-2^k"):
        return catalog.semidihedral(order) if order >= 16 and order & (order - 1) == 0 else None
    raise PreconditionError(f"unknown recognition target {target!r}")


def small_iso_type(G: Group, target: str) -> bool:
    """Whether G is isomorphic to the named type.

    ``target`` is one of C<k>, D8, Q8, Klein, S3, S4, A4, S3xS3 or a family
    name (cyclic, elementary-abelian-p, dihedral, generalized_quaternion,
    semidihedral) whose order is taken from G.
    """
    if G.order > RECOGNITION_CAP:
        raise ResourceError(f"recognition limited to order {RECOGNITION_CAP}")
    low = target.lower()
    if low == "cyclic":
        return bool(np.any(G.element_orders == G.order))
    if low.startswith("elementary"):
        n = G.order
        p = next((k for k in range(2, n + 1) if n % k == 0), None)
        if p is None:
            return True
        if not _is_prime(p):
            return False
        return G.is_abelian() and set(G.element_orders.tolist()) <= {1, p}
    M = _model(target, G.order)
    if M is None or M.order != G.order:
        return False
    return is_isomorphic(M, G)
