"""Finite permutation groups held as fully enumerated element lists.

Elements are addressed by index; index 0 is always the identity.  Groups of
order at most ``TABLE_LIMIT`` carry a full multiplication table; larger ones
compose permutations on demand and look the result up through a hash of the
image vector.
"""

from __future__ import annotations

import copy
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from math import gcd

import numpy as np

from .errors import PreconditionError, ResourceError
from .perm import Permutation, format_cycles, parse_cycles

TABLE_LIMIT = 4096
DEFAULT_ELEMENT_CAP = 10**6
DEFAULT_SUBGROUP_CAP = 100_000

_KEY_SEED = 20240611


def mask_of(indices) -> int:
    """Bitmask (Python int) with bit i set for every index i."""
    idx = np.asarray(list(indices) if not isinstance(indices, np.ndarray) else indices, dtype=np.int64)
    if idx.size == 0:
        return 0
    bits = np.zeros(int(idx.max()) + 1, dtype=bool)
    bits[idx] = True
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def indices_of(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        low = (mask & -mask).bit_length() - 1 if mask else 0
        if low > 0:
            mask >>= low
            i += low
        else:
            mask >>= 1
            i += 1
    return out


@dataclass(frozen=True)
class SubgroupRef:
    """A subgroup of a parent group, given by sorted element indices."""

    members: tuple[int, ...]
    is_abelian: bool
    is_normal: bool

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, g) -> bool:
        return g in self.member_set

    @cached_property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    @cached_property
    def mask(self) -> int:
        return mask_of(self.members)

    @cached_property
    def array(self) -> np.ndarray:
        return np.asarray(self.members, dtype=np.int64)


class Group:
    """Immutable concrete group of permutations.

    Build one with :func:`close_generators` rather than calling the
    constructor directly; the constructor trusts that ``perms`` is closed.
    """

    def __init__(self, perms: np.ndarray, name: str = "G", generators=(), labels=None):
        perms = np.ascontiguousarray(perms, dtype=np.int64)
        if perms.ndim != 2 or perms.shape[0] == 0:
            raise ValueError("perms must be a nonempty 2-d array")
        if not np.array_equal(perms[0], np.arange(perms.shape[1])):
            raise ValueError("element 0 must be the identity")
        perms.setflags(write=False)
        self.perms = perms
        self.name = name
        self.generators = tuple(int(g) for g in generators)
        self.labels = dict(labels or {})
        self._build_index()
        self.inverse = self.lookup(np.argsort(perms, axis=1))
        self.inverse.setflags(write=False)
        self.table = self._build_table() if self.order <= TABLE_LIMIT else None
        self._centralizers = None
        self._single_cent = {}
        self._classes = None
        self._class_of = None
        self._transporter = None
        self._conj_maps = None
        self._orders = None

    # ---- basic structure -------------------------------------------------

    @property
    def order(self) -> int:
        return self.perms.shape[0]

    @property
    def degree(self) -> int:
        return self.perms.shape[1]

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"Group({self.name!r}, order={self.order}, degree={self.degree})"

    def element(self, i: int) -> Permutation:
        return Permutation(tuple(int(x) for x in self.perms[i]))

    def cycle_string(self, i: int) -> str:
        return self.element(i).to_cycle_string()

    def index_of(self, p) -> int:
        """Index of a Permutation, image sequence, or 1-based cycle string."""
        if isinstance(p, str):
            p = parse_cycles(p, self.degree)
        images = p.images if isinstance(p, Permutation) else p
        row = np.asarray(images, dtype=np.int64)
        if row.shape != (self.degree,):
            raise KeyError(f"degree mismatch for {p}")
        return int(self.lookup(row[None, :])[0])

    def _build_index(self):
        rng = np.random.default_rng(_KEY_SEED)
        while True:
            w = rng.integers(1, 2**62, size=self.degree, dtype=np.int64)
            keys = self.perms @ w
            order = np.argsort(keys, kind="stable")
            sk = keys[order]
            if np.all(sk[1:] != sk[:-1]):
                break
        self._w = w
        self._sorted_keys = sk
        self._sorted_idx = order

    def lookup(self, rows: np.ndarray) -> np.ndarray:
        """Indices of the given image rows; raises KeyError for non-members."""
        rows = np.asarray(rows, dtype=np.int64)
        keys = rows @ self._w
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, self.order - 1)
        idx = self._sorted_idx[pos]
        if not (np.all(self._sorted_keys[pos] == keys) and np.array_equal(self.perms[idx], rows)):
            raise KeyError("permutation is not an element of the group")
        return idx

    def _build_table(self) -> np.ndarray:
        n = self.order
        table = np.empty((n, n), dtype=np.int32)
        for i in range(n):
            # row i: (i * j) applies i first, so take j's images at i's images
            table[i] = self.lookup(self.perms[:, self.perms[i]])
        table.setflags(write=False)
        return table

    def mul(self, i: int, j: int) -> int:
        if self.table is not None:
            return int(self.table[i, j])
        return int(self.lookup(self.perms[j][self.perms[i]][None, :])[0])

    def mul_many(self, left, right) -> np.ndarray:
        """Elementwise products left[k] * right[k] (arrays broadcast)."""
        left, right = np.broadcast_arrays(np.asarray(left, dtype=np.int64), np.asarray(right, dtype=np.int64))
        if self.table is not None:
            return self.table[left, right].astype(np.int64)
        shape = left.shape
        lf, rt = left.ravel(), right.ravel()
        rows = np.take_along_axis(self.perms[rt], self.perms[lf], axis=1)
        return self.lookup(rows).reshape(shape)

    def inv(self, i: int) -> int:
        return int(self.inverse[i])

    def conj(self, x: int, g: int) -> int:
        """x ** g = g^-1 x g."""
        return self.mul(self.mul(self.inv(g), x), g)

    def conj_many(self, xs, g: int) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        if self.table is not None:
            return self.table[self.table[self.inverse[g], xs], g].astype(np.int64)
        gp = self.perms[g]
        ginv = self.perms[self.inverse[g]]
        rows = gp[self.perms[xs][:, ginv]]
        return self.lookup(rows)

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv(x), -k
        result, base = 0, x
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def commute(self, x: int, y: int) -> bool:
        if self.table is not None:
            return self.table[x, y] == self.table[y, x]
        px, py = self.perms[x], self.perms[y]
        return bool(np.array_equal(py[px], px[py]))

    @property
    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            ident = np.arange(self.degree)
            cur = self.perms.copy()
            orders = np.zeros(self.order, dtype=np.int64)
            k = 1
            while True:
                hit = (orders == 0) & np.all(cur == ident, axis=1)
                orders[hit] = k
                if np.all(orders):
                    break
                cur = np.take_along_axis(self.perms, cur, axis=1)
                k += 1
            orders.setflags(write=False)
            self._orders = orders
        return self._orders

    def is_abelian(self) -> bool:
        gens = self.generators or tuple(range(self.order))
        return all(self.commute(a, b) for a in gens for b in gens)

    # ---- conjugation -------------------------------------------------

    def conj_maps(self) -> list[np.ndarray]:
        """For each generator h, the index map x -> x ** h over all elements."""
        if self._conj_maps is None:
            maps = []
            all_idx = np.arange(self.order)
            for h in self.generators:
                m = self.conj_many(all_idx, h)
                m.setflags(write=False)
                maps.append(m)
            self._conj_maps = maps
        return self._conj_maps

    def _compute_classes(self):
        n = self.order
        maps = self.conj_maps()
        class_of = np.full(n, -1, dtype=np.int64)
        transporter = np.zeros(n, dtype=np.int64)
        classes = []
        for x in range(n):
            if class_of[x] >= 0:
                continue
            cid = len(classes)
            members = [x]
            class_of[x] = cid
            q = deque([x])
            while q:
                y = q.popleft()
                for h, m in zip(self.generators, maps):
                    z = int(m[y])
                    if class_of[z] < 0:
                        class_of[z] = cid
                        transporter[z] = self.mul(int(transporter[y]), h)
                        members.append(z)
                        q.append(z)
            classes.append(tuple(sorted(members)))
        self._classes = classes
        self._class_of = class_of
        self._transporter = transporter

    @property
    def classes(self) -> list[tuple[int, ...]]:
        if self._classes is None:
            self._compute_classes()
        return self._classes

    @property
    def class_of(self) -> np.ndarray:
        if self._class_of is None:
            self._compute_classes()
        return self._class_of

    # ---- centralizers ------------------------------------------------

    def _compute_centralizers(self):
        n = self.order
        cents: list = [None] * n
        if self.table is not None:
            t = self.table
            for x in range(n):
                c = np.flatnonzero(t[x] == t[:, x])
                c.setflags(write=False)
                cents[x] = c
        else:
            self.classes  # ensure transporters
            rep_cent = {}
            for cls in self._classes:
                r = cls[0]
                pr = self.perms[r]
                hit = np.all(self.perms[:, pr] == pr[self.perms], axis=1)
                rep_cent[r] = np.flatnonzero(hit)
            for cls in self._classes:
                r = cls[0]
                base = rep_cent[r]
                for x in cls:
                    t = int(self._transporter[x])
                    c = base if t == 0 else np.sort(self.conj_many(base, t))
                    c.setflags(write=False)
                    cents[x] = c
        self._centralizers = cents

    def centralizer_of(self, x: int) -> np.ndarray:
        """Sorted indices of C_G(x)."""
        if self._centralizers is None:
            if self.table is not None:
                self._compute_centralizers()
            else:
                c = self._single_cent.get(x)
                if c is None:
                    px = self.perms[x]
                    c = np.flatnonzero(np.all(self.perms[:, px] == px[self.perms], axis=1))
                    c.setflags(write=False)
                    self._single_cent[x] = c
                return c
        return self._centralizers[x]

    def all_centralizers(self) -> list[np.ndarray]:
        """Centralizers of every element (bulk computation via classes)."""
        if self._centralizers is None:
            self._compute_centralizers()
        return self._centralizers

    def renamed(self, name: str) -> "Group":
        other = copy.copy(self)
        other.name = name
        return other

    def centralizer_of_set(self, xs) -> np.ndarray:
        xs = list(xs)
        if not xs:
            return np.arange(self.order)
        cur = self.centralizer_of(xs[0])
        for x in xs[1:]:
            if cur.size == 1:
                break
            cur = np.intersect1d(cur, self.centralizer_of(x), assume_unique=True)
        return cur

    # ---- subgroups ---------------------------------------------------

    def generate(self, gens) -> np.ndarray:
        """Sorted indices of the subgroup generated by the given indices."""
        gens = [int(g) for g in gens if int(g) != 0]
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return np.array(sorted(seen), dtype=np.int64)

    def small_generating_set(self, members) -> list[int]:
        """Greedy generating set of the subgroup with the given members."""
        members = sorted(int(m) for m in members)
        target = len(members)
        gens: list[int] = []
        span = {0}
        by_order = sorted(members, key=lambda m: (-int(self.element_orders[m]), m))
        for m in by_order:
            if len(span) == target:
                break
            if m not in span:
                gens.append(m)
                span = set(self.generate(gens).tolist())
        return gens

    def is_subgroup(self, members) -> bool:
        s = sorted(set(int(m) for m in members))
        if not s or s[0] != 0:
            return False
        span = self.generate(self.small_generating_set(s))
        return span.size == len(s) and span.tolist() == s

    def is_normal_set(self, members) -> bool:
        s = set(int(m) for m in members)
        arr = np.fromiter(s, dtype=np.int64)
        maps = self.conj_maps()
        return all(s.issuperset(m[arr].tolist()) for m in maps)

    def is_abelian_set(self, members) -> bool:
        arr = np.asarray(sorted(int(m) for m in members), dtype=np.int64)
        gens = self.small_generating_set(arr) if len(arr) > 8 else arr.tolist()
        return all(self.commute(a, b) for i, a in enumerate(gens) for b in gens[i + 1:])

    def subgroup(self, members, check: bool = True) -> SubgroupRef:
        mem = tuple(sorted(set(int(m) for m in members)))
        if check and not self.is_subgroup(mem):
            raise PreconditionError("element set is not a subgroup")
        return SubgroupRef(mem, self.is_abelian_set(mem), self.is_normal_set(mem))

    def conjugate_members(self, members, g: int) -> tuple[int, ...]:
        return tuple(sorted(self.conj_many(np.asarray(members, dtype=np.int64), g).tolist()))

    def format_element(self, i: int) -> str:
        return self.cycle_string(i)


def close_generators(degree: int, gens, name: str = "G", cap: int = DEFAULT_ELEMENT_CAP,
                     labels: dict | None = None) -> Group:
    """Enumerate the group generated by ``gens`` (Permutations or image lists).

    Elements appear in breadth-first discovery order starting from the
    identity, multiplying on the right by generators in the given order.
    ``labels`` maps names to generator positions and is rewritten to element
    indices on the result.
    """
    rows = []
    for g in gens:
        images = g.images if isinstance(g, Permutation) else tuple(g)
        if len(images) != degree:
            raise ValueError(f"generator degree {len(images)} != {degree}")
        if sorted(images) != list(range(degree)):
            raise ValueError("generator is not a permutation")
        rows.append(np.asarray(images, dtype=np.int64))
    ident = np.arange(degree, dtype=np.int64)
    elements = [ident]
    seen = {ident.tobytes(): 0}
    gen_index = []
    for r in rows:
        key = r.tobytes()
        if key not in seen:
            seen[key] = len(elements)
            elements.append(r)
        gen_index.append(seen[key])
    # redo discovery in strict BFS order so the ordering depends only on gens
    elements = [ident]
    seen = {ident.tobytes(): 0}
    head = 0
    while head < len(elements):
        x = elements[head]
        head += 1
        for r in rows:
            y = r[x]
            key = y.tobytes()
            if key not in seen:
                if len(elements) >= cap:
                    raise ResourceError(f"closure exceeds element cap {cap}")
                seen[key] = len(elements)
                elements.append(y)
    gen_index = [seen[r.tobytes()] for r in rows]
    lab = {k: gen_index[v] for k, v in (labels or {}).items()}
    return Group(np.array(elements), name=name, generators=gen_index, labels=lab)


def group_from_cycle_strings(degree: int, gens: list[str], name: str = "G", **kw) -> Group:
    return close_generators(degree, [parse_cycles(g, degree) for g in gens], name=name, **kw)


# ---- derived queries ---------------------------------------------------

def centralizer(G: Group, S) -> SubgroupRef:
    """C_G(S); the empty set gives the whole group."""
    c = G.centralizer_of_set(S)
    return G.subgroup(c.tolist(), check=False)


def center(G: Group) -> SubgroupRef:
    gens = G.generators or range(G.order)
    return G.subgroup(G.centralizer_of_set(gens).tolist(), check=False)


def element_order(G: Group, g: int) -> int:
    return int(G.element_orders[g])


def conjugacy_classes(G: Group) -> list[tuple[int, ...]]:
    """Conjugacy classes, ordered by least member index."""
    return sorted(G.classes, key=lambda c: c[0])


def _abelian_closure_add(G: Group, H: np.ndarray, g: int) -> np.ndarray:
    """<H, g> for g centralizing the abelian subgroup H: the product set H<g>."""
    cyc = [0]
    y = g
    while y != 0:
        cyc.append(y)
        y = G.mul(y, g)
    prod = G.mul_many(H[:, None], np.asarray(cyc)[None, :])
    return np.unique(prod)


def all_abelian_subgroups(G: Group, cap: int = DEFAULT_SUBGROUP_CAP) -> list[np.ndarray]:
    """Every abelian subgroup of G (trivial included), smallest first.

    Grown from the trivial group by adjoining centralizing elements of
    prime-power order, which reaches every abelian subgroup.
    """
    orders = G.element_orders
    pp = np.array([_is_prime_power(int(o)) for o in orders])
    start = np.array([0], dtype=np.int64)
    seen = {mask_of(start)}
    found = [start]
    head = 0
    while head < len(found):
        H = found[head]
        head += 1
        C = G.centralizer_of_set(H)
        cand = np.setdiff1d(C, H, assume_unique=True)
        cand = cand[pp[cand]]
        done_cyclic = set()
        for g in cand.tolist():
            if g in done_cyclic:
                continue
            K = _abelian_closure_add(G, H, g)
            # skip other generators that give the same extension of H
            o = int(orders[g])
            done_cyclic.update(G.power(g, k) for k in range(1, o) if gcd(k, o) == 1)
            m = mask_of(K)
            if m not in seen:
                if len(found) >= cap:
                    raise ResourceError(f"abelian subgroup count exceeds cap {cap}")
                seen.add(m)
                found.append(K)
    found.sort(key=lambda a: (len(a), a.tolist()))
    return found


def _is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1
        p += 1
    return True


def subgroup_conjugacy_orbit(G: Group, members) -> list[tuple[int, ...]]:
    start = tuple(sorted(int(m) for m in members))
    maps = G.conj_maps()
    seen = {start}
    q = deque([start])
    while q:
        H = q.popleft()
        arr = np.asarray(H, dtype=np.int64)
        for m in maps:
            K = tuple(sorted(m[arr].tolist()))
            if K not in seen:
                seen.add(K)
                q.append(K)
    return sorted(seen)


def abelian_subgroups_up_to_conjugacy(G: Group, include_trivial: bool = True,
                                      cap: int = DEFAULT_SUBGROUP_CAP) -> list[SubgroupRef]:
    """One representative per conjugacy class of abelian subgroups.

    The representative is the lexicographically least member tuple in its
    class; results are sorted by (order, members).
    """
    subs = all_abelian_subgroups(G, cap=cap)
    assigned = set()
    reps = []
    for H in subs:
        key = tuple(H.tolist())
        if key in assigned:
            continue
        orbit = subgroup_conjugacy_orbit(G, key)
        assigned.update(orbit)
        rep = orbit[0]
        reps.append(SubgroupRef(rep, True, len(orbit) == 1))
    reps.sort(key=lambda s: (s.order, s.members))
    if not include_trivial:
        reps = [r for r in reps if r.order > 1]
    return reps


def maximal_abelian_subgroups(G: Group) -> list[SubgroupRef]:
    """All maximal abelian subgroups (the full list, not up to conjugacy).

    A maximal abelian subgroup M satisfies C_G(M) = M.  Abelian element
    centralizers are maximal; the remaining ones consist solely of elements
    with nonabelian centralizers and are found by a search restricted to
    those elements.
    """
    n = G.order
    if G.is_abelian():
        return [SubgroupRef(tuple(range(n)), True, True)]
    G.all_centralizers()
    found: dict[int, np.ndarray] = {}
    abelian_cent = np.zeros(n, dtype=bool)
    cent_masks: dict[int, bool] = {}
    for x in range(1, n):
        c = G.centralizer_of(x)
        m = mask_of(c)
        ab = cent_masks.get(m)
        if ab is None:
            ab = G.is_abelian_set(c)
            cent_masks[m] = ab
            if ab:
                found[m] = c
        abelian_cent[x] = ab
    restricted = ~abelian_cent
    restricted[0] = True
    visited = set()
    stack = []
    for x in range(1, n):
        if abelian_cent[x]:
            continue
        H = G.generate([x])
        if not restricted[H].all():
            continue
        m = mask_of(H)
        if m not in visited:
            visited.add(m)
            stack.append(H)
    while stack:
        H = stack.pop()
        C = G.centralizer_of_set(H)
        if C.size == H.size:
            found.setdefault(mask_of(H), H)
            continue
        extra = np.setdiff1d(C, H, assume_unique=True)
        for g in extra.tolist():
            if not restricted[g]:
                continue
            K = _abelian_closure_add(G, H, g)
            if not restricted[K].all():
                continue
            m = mask_of(K)
            if m not in visited:
                visited.add(m)
                stack.append(K)
    out = []
    for c in found.values():
        mem = tuple(c.tolist())
        out.append(SubgroupRef(mem, True, G.is_normal_set(mem)))
    out.sort(key=lambda s: (s.order, s.members))
    return out


def is_frobenius_with_kernel(G: Group, A: SubgroupRef) -> bool:
    """True iff A is a normal proper nontrivial subgroup, coprime to its index,
    with C_A(g) = 1 for every g outside A."""
    a, n = A.order, G.order
    if not (1 < a < n) or not A.is_normal or gcd(a, n // a) != 1:
        return False
    amask = np.zeros(n, dtype=bool)
    amask[list(A.members)] = True
    for g in range(n):
        if amask[g]:
            continue
        c = G.centralizer_of(g)
        if np.count_nonzero(amask[c]) != 1:
            return False
    return True


def commutator_subgroup_of_action(G: Group, A: SubgroupRef, elems) -> SubgroupRef:
    """[A, S]: subgroup generated by a^-1 a^s for a in A, s in elems."""
    gens = set()
    for s in elems:
        for a in A.members:
            gens.add(G.mul(G.inv(a), G.conj(a, s)))
    return G.subgroup(G.generate(sorted(gens)).tolist(), check=False)


def sylow_subgroup(G: Group, p: int) -> SubgroupRef:
    """Some Sylow p-subgroup (deterministic)."""
    n = G.order
    pk = 1
    while n % (pk * p) == 0:
        pk *= p
    if pk == 1:
        return G.subgroup([0], check=False)
    orders = G.element_orders
    P = np.array([0], dtype=np.int64)
    while P.size < pk:
        # the normalizer of a non-Sylow p-subgroup P contains p-elements outside P
        pset = set(P.tolist())
        grown = False
        for g in range(n):
            o = int(orders[g])
            if g in pset or not _is_power_of(o, p):
                continue
            if all(G.conj(x, g) in pset for x in P.tolist()):
                K = G.generate(P.tolist() + [g])
                if _is_power_of(K.size, p):
                    P = K
                    grown = True
                    break
        if not grown:
            raise RuntimeError("failed to grow p-subgroup")  # cannot happen for a group
    return G.subgroup(P.tolist(), check=False)


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def format_subgroup(G: Group, H) -> str:
    return "{" + ", ".join(G.cycle_string(i) for i in H) + "}"
