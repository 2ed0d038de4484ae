"""Write the Sz(8) generator file (degree-65 action on the Suzuki ovoid).

The ovoid in PG(3, 8) is {(1, x, y, z) : z = xy + x^(t+2) + y^t} plus the
point (0, 0, 0, 1), where t is the field automorphism x -> x^4 (t^2 is the
Frobenius).  The stabilizer of the extra point is generated by translations
and a diagonal torus; a coordinate-reversing involution preserving the ovoid
completes a generating set.  Every generator is checked to preserve the
ovoid and the closure is checked to have order 29120.
"""

from itertools import permutations
from pathlib import Path

from nsplit.catalog import save_group_file
from nsplit.ffield import FiniteField
from nsplit.group import close_generators
from nsplit.perm import Permutation

F = FiniteField(2, 3)


def t(a):
    return F.pow(a, 4)


def add(*xs):
    out = 0
    for x in xs:
        out = F.add(out, x)
    return out


def mul(*xs):
    out = 1
    for x in xs:
        out = F.mul(out, x)
    return out


def normalize(v):
    for c in v:
        if c:
            inv = F.inv(c)
            return tuple(F.mul(inv, x) for x in v)
    raise ValueError("zero vector")


def ovoid():
    pts = []
    for x in range(8):
        for y in range(8):
            z = add(mul(x, y), mul(F.pow(x, 2), t(x)), t(y))
            pts.append((1, x, y, z))
    pts.append((0, 0, 0, 1))
    return pts


def translation(a, b):
    def f(v):
        w, x, y, z = v
        return (
            w,
            add(mul(a, w), x),
            add(mul(b, w), mul(t(a), x), y),
            add(mul(add(mul(a, b), mul(F.pow(a, 2), t(a)), t(b)), w), mul(add(b, mul(a, t(a))), x), mul(a, y), z),
        )
    return f


def diagonal(k):
    d = (1, k, mul(k, t(k)), mul(k, k, t(k)))
    return lambda v: tuple(F.mul(c, x) for c, x in zip(d, v))


def induced(fn, pts, index):
    img = []
    for p in pts:
        q = normalize(fn(p))
        if q not in index:
            return None
        img.append(index[q])
    return Permutation(tuple(img))


def main(out):
    pts = ovoid()
    index = {p: i for i, p in enumerate(pts)}
    assert len(index) == 65
    w = F.generator
    gens = [induced(translation(1, 0), pts, index), induced(translation(0, 1), pts, index),
            induced(diagonal(w), pts, index)]
    assert all(g is not None for g in gens)
    inf = index[(0, 0, 0, 1)]
    for sigma in permutations(range(4)):
        g = induced(lambda v: tuple(v[s] for s in sigma), pts, index)
        if g is not None and g(inf) != inf and (g * g).is_identity():
            gens.append(g)
            break
    else:
        raise SystemExit("no ovoid-preserving coordinate involution found")
    G = close_generators(65, gens, name="Sz8")
    assert G.order == 8 * 8 * 7 * 65, G.order
    save_group_file(G, out)
    print(f"wrote {out}: order {G.order}")


if __name__ == "__main__":
    main(Path(__file__).resolve().parents[1] / "src" / "nsplit" / "data" / "groups" / "Sz8.grp")
