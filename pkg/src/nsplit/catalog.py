"""Constructors for the group families used throughout the package.

Every constructor returns a :class:`~nsplit.group.Group` realized as a
permutation group.  Families are addressed by a :class:`GroupSpec`, which can
be written as a call-like string, e.g. ``dihedral(10)``,
``direct_product(symmetric(3), symmetric(3))`` or
``frobenius_semidirect([5], [[[-1]]], 2)``.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import product
from math import gcd, prod
from pathlib import Path

import numpy as np

from .errors import ParseError, ValidationError
from .ffield import FiniteField, is_prime
from .group import Group, center, close_generators
from .perm import Permutation, parse_cycles


@dataclass(frozen=True)
class GroupSpec:
    family: str
    params: tuple = ()

    def __str__(self) -> str:
        return f"{self.family}({', '.join(_fmt_param(p) for p in self.params)})"


def _fmt_param(p) -> str:
    if isinstance(p, GroupSpec):
        return str(p)
    if isinstance(p, str):
        return p
    return repr(p).replace("(", "[").replace(")", "]") if isinstance(p, tuple) else repr(p)


def parse_spec(text: str) -> GroupSpec:
    """Parse ``family(arg, ...)``; bare names such as ``klein`` are allowed."""
    try:
        node = ast.parse(text.strip(), mode="eval").body
    except SyntaxError as exc:
        raise ParseError(f"bad group spec {text!r}: {exc.msg}") from None
    return _spec_from_node(node, text)


def _spec_from_node(node, text):
    if isinstance(node, ast.Name):
        return GroupSpec(node.id, ())
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
        args = []
        for a in node.args:
            if isinstance(a, (ast.Call,)) or (isinstance(a, ast.Name) and a.id in FAMILIES):
                args.append(_spec_from_node(a, text))
            elif isinstance(a, ast.Name):
                args.append(a.id.replace("_", "-"))
            else:
                try:
                    args.append(_freeze(ast.literal_eval(a)))
                except ValueError:
                    raise ParseError(f"bad argument in group spec {text!r}") from None
        return GroupSpec(node.func.id, tuple(args))
    raise ParseError(f"bad group spec {text!r}")


def _freeze(v):
    if isinstance(v, list):
        return tuple(_freeze(x) for x in v)
    return v


# ---- permutation builders ------------------------------------------------

def _perm(images) -> Permutation:
    return Permutation(tuple(int(i) for i in images))


def _regular_group(elements, right_mul_gens, name: str) -> Group:
    """Right-regular representation: point x goes to x * g."""
    index = {e: i for i, e in enumerate(elements)}
    gens = [_perm(index[f(e)] for e in elements) for f in right_mul_gens]
    return close_generators(len(elements), gens, name=name)


def cyclic(k: int) -> Group:
    if k < 1:
        raise ValidationError("cyclic order must be positive")
    if k == 1:
        return close_generators(1, [], name="C1")
    return close_generators(k, [_perm([(i + 1) % k for i in range(k)])], name=f"C{k}")


def dihedral(order: int) -> Group:
    """Dihedral group of the given order 2k (k >= 2) acting on k points."""
    if order < 4 or order % 2:
        raise ValidationError("dihedral order must be even and at least 4")
    k = order // 2
    if k == 2:
        return klein().renamed("D4")
    r = _perm([(i + 1) % k for i in range(k)])
    s = _perm([(-i) % k for i in range(k)])
    return close_generators(k, [r, s], name=f"D{order}")


def metacyclic(m: int, s: int, t: int, r: int, name: str | None = None) -> Group:
    """<a, b | a^m = 1, b^s = a^t, a^b = a^r> of order m*s (regular action).

    Requires r^s = 1 and t*r = t (mod m) so that the presentation has the
    stated order.
    """
    if pow(r, s, m) != 1 % m or (t * r - t) % m or gcd(r, m) != 1:
        raise ValidationError(f"inconsistent metacyclic parameters {(m, s, t, r)}")
    rinv = pow(r, -1, m)
    elems = [(i, j) for j in range(s) for i in range(m)]

    def times_a(e):
        i, j = e
        return ((i + pow(rinv, j, m)) % m, j)

    def times_b(e):
        i, j = e
        return (i, j + 1) if j + 1 < s else ((i + t) % m, 0)

    G = _regular_group(elems, [times_a, times_b], name or f"Meta({m},{s},{t},{r})")
    if G.order != m * s:
        raise ValidationError("metacyclic presentation collapsed")
    return G


def generalized_quaternion(order: int) -> Group:
    if order < 8 or order & (order - 1):
        raise ValidationError("generalized quaternion order must be a power of 2, at least 8")
    m = order // 2
    return metacyclic(m, 2, m // 2, m - 1, name=f"Q{order}")


def semidihedral(order: int) -> Group:
    if order < 16 or order & (order - 1):
        raise ValidationError("semidihedral order must be a power of 2, at least 16")
    m = order // 2
    return metacyclic(m, 2, 0, m // 2 - 1, name=f"SD{order}")


def symmetric(k: int) -> Group:
    if k < 1:
        raise ValidationError("degree must be positive")
    if k == 1:
        return close_generators(1, [], name="S1")
    gens = [_perm([(i + 1) % k for i in range(k)]), _perm([1, 0] + list(range(2, k)))]
    return close_generators(k, gens, name=f"S{k}")


def alternating(k: int) -> Group:
    if k < 3:
        return close_generators(max(k, 1), [], name=f"A{k}")
    gens = []
    for i in range(k - 2):
        img = list(range(k))
        img[i], img[i + 1], img[i + 2] = i + 1, i + 2, i
        gens.append(_perm(img))
    return close_generators(k, gens, name=f"A{k}")


def klein() -> Group:
    return close_generators(4, [_perm([1, 0, 3, 2]), _perm([2, 3, 0, 1])], name="V4")


def generated(degree: int, *gens: str, name: str | None = None) -> Group:
    """Group generated by explicit 1-based cycle strings."""
    return close_generators(degree, [parse_cycles(g, degree) for g in gens], name=name or "G")


def direct_product(*groups: Group, name: str | None = None) -> Group:
    """External direct product acting on the disjoint union of the point sets."""
    degree = sum(G.degree for G in groups)
    gens = []
    offset = 0
    for G in groups:
        for g in G.generators:
            img = list(range(degree))
            for p, q in enumerate(G.perms[g]):
                img[offset + p] = offset + int(q)
            gens.append(_perm(img))
        offset += G.degree
    return close_generators(degree, gens, name=name or "x".join(G.name for G in groups))


# ---- affine groups: abelian kernel extended by automorphisms -----------------

class AbelianKernel:
    """Z_{n1} x ... x Z_{nk} with elements enumerated in lexicographic order."""

    def __init__(self, invariants):
        self.inv = tuple(int(n) for n in invariants)
        if not self.inv or any(n < 2 for n in self.inv):
            raise ValidationError(f"bad kernel invariants {invariants}")
        self.elements = list(product(*(range(n) for n in self.inv)))
        self.index = {e: i for i, e in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    def add(self, x, y):
        return tuple((a + b) % n for a, b, n in zip(x, y, self.inv))

    def apply(self, M, x):
        """Image of x under the endomorphism whose column j is the image of e_j."""
        return tuple(sum(M[i][j] * x[j] for j in range(len(x))) % self.inv[i] for i in range(len(x)))

    def elem_order(self, x) -> int:
        o = 1
        for a, n in zip(x, self.inv):
            o = o * (n // gcd(a, n)) // gcd(o, n // gcd(a, n))
        return o

    def check_automorphism(self, M):
        k = len(self.inv)
        if len(M) != k or any(len(row) != k for row in M):
            raise ValidationError("action matrix has the wrong shape")
        for j in range(k):
            col = tuple(M[i][j] % self.inv[i] for i in range(k))
            if self.inv[j] % self.elem_order(col):
                raise ValidationError("action matrix is not a well-defined endomorphism")
        images = {self.apply(M, x) for x in self.elements}
        if len(images) != self.order:
            raise ValidationError("action matrix is not invertible on the kernel")


def affine(invariants, matrices, complement_order: int | None = None,
           require_fpf: bool = False, name: str | None = None, labels=None) -> Group:
    """Kernel K (abelian, given by invariants) extended by the automorphisms.

    Acts on the points of K: translations x -> x + e_i and x -> M x.  The
    complement is the group generated by the matrices; if
    ``complement_order`` is given it must match, and ``require_fpf`` asks
    that every nontrivial complement element fix only 0 (Frobenius).
    """
    K = AbelianKernel(invariants)
    mats = [tuple(tuple(int(v) for v in row) for row in M) for M in matrices]
    for M in mats:
        K.check_automorphism(M)
    trans = []
    for i in range(len(K.inv)):
        e = tuple(1 if j == i else 0 for j in range(len(K.inv)))
        trans.append(_perm(K.index[K.add(x, e)] for x in K.elements))
    lin = [_perm(K.index[K.apply(M, x)] for x in K.elements) for M in mats]
    if lin:
        C = close_generators(K.order, lin)
        corder = C.order
        if complement_order is not None and corder != complement_order:
            raise ValidationError(f"action generates a complement of order {corder}, expected {complement_order}")
        if require_fpf:
            fixed_only_zero = all(
                np.count_nonzero(C.perms[g] == np.arange(K.order)) == 1 for g in range(1, C.order)
            )
            if not fixed_only_zero:
                raise ValidationError("action is not fixed-point-free")
    elif complement_order not in (None, 1):
        raise ValidationError("complement order given without an action")
    G = close_generators(K.order, trans + lin, name=name or "Aff", labels=labels)
    return G


def frobenius_semidirect(invariants, matrices, complement_order: int | None = None,
                         name: str | None = None) -> Group:
    return affine(invariants, matrices, complement_order, require_fpf=True, name=name or "Frob")


def extraspecial_p3(p: int, kind: str = "exponent-p") -> Group:
    """Extraspecial group of order p^3.

    Odd p: ``exponent-p`` (Heisenberg) or ``exponent-p2`` (metacyclic).
    p = 2: ``D8`` or ``Q8`` (the exponent names map to D8 and Q8).
    """
    if not is_prime(p):
        raise ValidationError(f"{p} is not prime")
    kind = kind.lower().replace("_", "-").replace("²", "2").replace("^", "")
    if p == 2:
        if kind in ("d8", "dihedral", "exponent-p"):
            return dihedral(8)
        if kind in ("q8", "quaternion", "exponent-p2"):
            return generalized_quaternion(8)
        raise ValidationError(f"unknown extraspecial type {kind!r} for p = 2")
    if kind == "exponent-p":
        elems = [(a, b, c) for c in range(p) for b in range(p) for a in range(p)]

        def heis(g):
            a2, b2, c2 = g
            return lambda e: ((e[0] + a2) % p, (e[1] + b2) % p, (e[2] + c2 + e[0] * b2) % p)

        return _regular_group(elems, [heis((1, 0, 0)), heis((0, 1, 0))], f"He{p}")
    if kind == "exponent-p2":
        return metacyclic(p * p, p, 0, 1 + p, name=f"M{p}^3")
    raise ValidationError(f"unknown extraspecial type {kind!r}")


def paper72() -> Group:
    """(C3 x C3) : D8 with u^x = v, v^x = u^-1, u^y = u, v^y = v^-1.

    Generators are labelled u, v, x, y in ``Group.labels``.
    """
    X = ((0, -1), (1, 0))
    Y = ((1, 0), (0, -1))
    return affine([3, 3], [X, Y], 8, name="C3^2:D8", labels={"u": 0, "v": 1, "x": 2, "y": 3})


def q8_frobenius() -> Group:
    """(C3 x C3) : Q8 with Q8 acting fixed-point-freely."""
    i = ((0, 1), (2, 0))
    j = ((1, 1), (1, 2))
    return affine([3, 3], [i, j], 8, require_fpf=True, name="C3^2:Q8",
                  labels={"u": 0, "v": 1, "i": 2, "j": 3})


# ---- projective line groups --------------------------------------------

def _mobius_group(F: FiniteField, scale: int, name: str) -> Group:
    q = F.q
    inf = q

    def act(fn):
        return _perm(fn(z) for z in range(q + 1))

    def translate(z):
        return inf if z == inf else F.add(z, 1)

    def dilate(z):
        return inf if z == inf else F.mul(scale, z)

    def invert(z):
        if z == inf:
            return 0
        if z == 0:
            return inf
        return F.neg(F.inv(z))

    gens = [act(translate), act(dilate), act(invert)]
    if F.m > 1:
        # translations by the other basis vectors keep generation independent of scale
        for k in range(1, F.m):
            b = F.p**k
            gens.append(act(lambda z, b=b: inf if z == inf else F.add(z, b)))
    return close_generators(q + 1, gens, name=name)


def psl2(F: FiniteField) -> Group:
    if F.q < 4:
        raise ValidationError("psl2 needs q >= 4")
    w = F.generator
    scale = F.mul(w, w) if F.p != 2 else w
    G = _mobius_group(F, scale, f"L2({F.q})")
    expected = F.q * (F.q**2 - 1) // gcd(2, F.q - 1)
    if G.order != expected:
        raise ValidationError(f"psl2 closure has order {G.order}, expected {expected}")
    return G


def pgl2(F: FiniteField) -> Group:
    if F.q < 4:
        raise ValidationError("pgl2 needs q >= 4")
    G = _mobius_group(F, F.generator, f"PGL2({F.q})")
    if G.order != F.q * (F.q**2 - 1):
        raise ValidationError(f"pgl2 closure has order {G.order}")
    return G


def matrix_group(p: int, *matrices, name: str | None = None) -> Group:
    """Matrices over GF(p) acting on the nonzero vectors of GF(p)^k."""
    if not is_prime(p):
        raise ValidationError(f"{p} is not prime")
    k = len(matrices[0])
    vecs = [v for v in product(range(p), repeat=k) if any(v)]
    index = {v: i for i, v in enumerate(vecs)}
    gens = []
    for M in matrices:
        img = [index[tuple(sum(M[i][j] * v[j] for j in range(k)) % p for i in range(k))]
               for v in vecs]
        try:
            gens.append(_perm(img))
        except ValueError:
            raise ValidationError("singular matrix") from None
    return close_generators(len(vecs), gens, name=name or "Mat")


def _field_arg(q):
    if isinstance(q, FiniteField):
        return q
    q = int(q)
    for p in range(2, q + 1):
        if q % p == 0:
            m = 0
            while q % p == 0:
                q //= p
                m += 1
            if q != 1:
                raise ValidationError("field order must be a prime power")
            return FiniteField(p, m)
    raise ValidationError("field order must be a prime power")


FAMILIES = {
    "cyclic": cyclic,
    "dihedral": dihedral,
    "generalized_quaternion": generalized_quaternion,
    "quaternion": generalized_quaternion,
    "semidihedral": semidihedral,
    "symmetric": symmetric,
    "alternating": alternating,
    "klein": klein,
    "metacyclic": metacyclic,
    "extraspecial_p3": extraspecial_p3,
    "direct_product": direct_product,
    "affine": affine,
    "frobenius_semidirect": frobenius_semidirect,
    "paper72": paper72,
    "q8_frobenius": q8_frobenius,
    "psl2": lambda q: psl2(_field_arg(q)),
    "pgl2": lambda q: pgl2(_field_arg(q)),
    "matrix_group": matrix_group,
    "generated": generated,
}


def make(spec: GroupSpec | str, name: str | None = None) -> Group:
    if isinstance(spec, str):
        spec = parse_spec(spec)
    fn = FAMILIES.get(spec.family)
    if fn is None:
        raise ValidationError(f"unknown group family {spec.family!r}")
    args = [make(a) if isinstance(a, GroupSpec) else a for a in spec.params]
    try:
        G = fn(*args)
    except TypeError as exc:
        raise ValidationError(f"bad parameters for {spec.family}: {exc}") from None
    return G.renamed(name) if name else G


# ---- group files -------------------------------------------------------

def save_group_file(G: Group, path) -> None:
    lines = [f"name: {G.name}", f"degree: {G.degree}"]
    for g in G.generators:
        lines.append(f"gen: {G.cycle_string(g)}")
    for label, g in sorted(G.labels.items()):
        if g in G.generators:
            lines.append(f"label: {label} {G.generators.index(g) + 1}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def parse_group_text(text: str) -> Group:
    name = None
    degree = None
    gens = []
    labels = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'key: value', got {line!r}", lineno)
        key, value = key.strip().lower(), value.strip()
        if key == "name":
            name = value
        elif key == "degree":
            try:
                degree = int(value)
            except ValueError:
                raise ParseError(f"degree must be an integer, got {value!r}", lineno) from None
            if degree < 1:
                raise ParseError("degree must be positive", lineno)
        elif key == "gen":
            if degree is None:
                raise ParseError("gen before degree", lineno)
            try:
                gens.append(parse_cycles(value, degree))
            except ParseError as exc:
                raise ParseError(str(exc), lineno) from None
        elif key == "label":
            parts = value.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError(f"bad label line {line!r}", lineno)
            labels[parts[0]] = int(parts[1]) - 1
        else:
            raise ParseError(f"unknown key {key!r}", lineno)
    if name is None or degree is None:
        raise ParseError("missing name or degree header")
    if any(v >= len(gens) for v in labels.values()):
        raise ParseError("label refers to a missing generator")
    return close_generators(degree, gens, name=name, labels=labels)


def load_group_file(path) -> Group:
    return parse_group_text(Path(path).read_text(encoding="utf-8"))


# ---- named catalog -----------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    name: str
    order: int
    center_order: int
    source: str

    @property
    def is_file(self) -> bool:
        return self.source.startswith("file:")


def _data_dir():
    return resources.files("nsplit") / "data"


@lru_cache(maxsize=None)
def manifest() -> dict[str, CatalogEntry]:
    text = (_data_dir() / "manifest.txt").read_text(encoding="utf-8")
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(",", 3)]
        if len(parts) != 4:
            raise ParseError("manifest line needs 4 fields", lineno)
        name, order, zorder, source = parts
        out[name] = CatalogEntry(name, int(order), int(zorder), source)
    return out


def catalog_names() -> list[str]:
    return list(manifest())


def small_nonabelian_names(max_order: int = 24) -> list[str]:
    """Catalog names of the nonabelian groups of order at most ``max_order``
    that are shipped as generator files."""
    return [e.name for e in manifest().values() if e.is_file and e.order <= max_order]


SIMPLE_GROUPS = {"A5", "L2_4", "L2_5", "L2_7", "L2_8", "L2_9", "A6", "A7", "Sz8"}


@lru_cache(maxsize=None)
def load(name: str) -> Group:
    entries = manifest()
    if name not in entries:
        raise ValidationError(f"unknown catalog group {name!r}")
    e = entries[name]
    if e.is_file:
        G = parse_group_text((_data_dir() / e.source[5:]).read_text(encoding="utf-8"))
    else:
        G = make(e.source)
    G = G.renamed(name)
    if G.order != e.order:
        raise ValidationError(f"{name}: order {G.order} does not match manifest {e.order}")
    z = center(G).order
    if z != e.center_order:
        raise ValidationError(f"{name}: center order {z} does not match manifest {e.center_order}")
    return G


def resolve(source: str) -> Group:
    """``catalog:NAME``, ``spec:FAMILY(...)``, ``file:PATH``, or a bare catalog name / path."""
    if source.startswith("catalog:"):
        return load(source[8:])
    if source.startswith("spec:"):
        return make(source[5:])
    if source.startswith("file:"):
        return load_group_file(source[5:])
    if source in manifest():
        return load(source)
    if Path(source).exists():
        return load_group_file(source)
    return make(source)
