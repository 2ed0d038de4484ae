"""Write the decomposition fixtures (printed tables and rule-based ones) and tampered copies.

Tables are transcribed in the compact notation used in print, e.g. "(1234)",
"(12)(34)", "(1)" for the identity; pairs "((12),(123))" refer to S3 x S3
with the second factor acting on points 4..6.
"""

from __future__ import annotations

import json
import re
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from nsplit.catalog import load  # noqa: E402
from nsplit.decompose import (  # noqa: E402
    SplitDecomposition,
    commutator_set,
    product_set,
    save_decomposition,
    validate,
)

OUT = ROOT / "src" / "nsplit" / "data" / "fixtures"


def cyc(text: str, shift: int = 0) -> str:
    """'(1234)(56)' -> '(1 2 3 4)(5 6)'; '(1)' and '1' -> '()'."""
    text = text.strip()
    if text in ("1", "(1)", "()"):
        return "()"
    out = []
    for body in re.findall(r"\(([0-9]+)\)", text):
        out.append("(" + " ".join(str(int(d) + shift) for d in body) + ")")
    return "".join(out)


def pair(text: str) -> str:
    """'((12),(123))' or '(1,(12))' -> element of S3 x S3."""
    inner = text.strip()[1:-1]
    depth = 0
    for i, ch in enumerate(inner):
        depth += ch == "("
        depth -= ch == ")"
        if ch == "," and depth == 0:
            left, right = inner[:i], inner[i + 1:]
            break
    a, b = cyc(left), cyc(right, 3)
    s = (a if a != "()" else "") + (b if b != "()" else "")
    return s or "()"


def split_items(text: str) -> list[str]:
    items, depth, cur = [], 0, ""
    for ch in text:
        if ch == "," and depth == 0:
            items.append(cur.strip())
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    if cur.strip():
        items.append(cur.strip())
    return items


def table(group: str, A: str, parts: list[str], conv=cyc) -> SplitDecomposition:
    G = load(group)
    idx = lambda s: G.index_of(conv(s))  # noqa: E731
    return SplitDecomposition(G, [idx(s) for s in split_items(A)],
                              [[idx(s) for s in split_items(p)] for p in parts])


TABLES = {
    "s4_lemma44": ("S4", "(1),(12)(34),(13)(24),(14)(23)", [
        "(123),(124),(134),(234),(1234),(1243),(1324),(12),(13),(14)",
        "(132),(142),(143),(243),(1432),(1342),(1423),(34),(24),(23)",
    ], "2-split of S4 over the normal Klein subgroup"),
    "s3_order2": ("S3", "1,(12)", ["(13),(123)", "(23),(132)"], "2-split of S3 over a subgroup of order 2"),
    "s3_trivial": ("S3", "1", ["(12),(13),(123)", "(23),(132)"], "2-split of S3 over the trivial subgroup"),
    "a4_order2": ("A4", "(1),(12)(34)", [
        "(13)(24),(123),(124),(134),(234)",
        "(14)(23),(132),(142),(143),(243)",
    ], "2-split of A4 over a nonnormal subgroup of order 2"),
    "s4_trivial": ("S4", "(1)", [
        "(12)(34),(13),(14),(1234),(1243),(123),(142),(234)",
        "(13)(24),(12),(23),(1324),(1342),(132),(134),(243)",
        "(14)(23),(34),(24),(1423),(1432),(124),(143)",
    ], "3-split of S4 over the trivial subgroup"),
    "a4_trivial": ("A4", "(1)", [
        "(12)(34),(123),(142),(234)",
        "(13)(24),(132),(134),(243)",
        "(14)(23),(124),(143)",
    ], "3-split of A4 over the trivial subgroup"),
    "a4_order3": ("A4", "1,(123),(132)", [
        "(12)(34),(124),(234)",
        "(13)(24),(142),(143)",
        "(14)(23),(134),(243)",
    ], "3-split of A4 over a subgroup of order 3"),
    "s4_order2_double": ("S4", "(1),(12)(34)", [
        "(13)(24),(123),(134),(234),(1243),(1324),(12),(14)",
        "(14)(23),(132),(142),(143),(1432),(1423),(34),(24)",
        "(1234),(1342),(124),(243),(13),(23)",
    ], "3-split of S4 over <(12)(34)>"),
    "s4_order2_transposition": ("S4", "(1),(24)", [
        "(13)(24),(123),(134),(234),(1243),(1324),(12),(14)",
        "(14)(23),(132),(142),(143),(1432),(1423),(34)",
        "(12)(34),(1234),(1342),(124),(243),(13),(23)",
    ], "3-split of S4 over <(24)>"),
    "s4_order3": ("S4", "(1),(123),(132)", [
        "(13)(24),(134),(234),(1243),(1324),(12),(14)",
        "(14)(23),(142),(143),(1432),(1423),(34),(24)",
        "(12)(34),(1234),(1342),(124),(243),(13),(23)",
    ], "3-split of S4 over a subgroup of order 3"),
    "s4_klein_nonnormal": ("S4", "(1),(12),(34),(12)(34)", [
        "(13)(24),(123),(134),(234),(1243),(1324),(14)",
        "(14)(23),(132),(142),(143),(1432),(1423),(24)",
        "(1234),(1342),(124),(243),(13),(23)",
    ], "3-split of S4 over a nonnormal Klein subgroup"),
    "s4_cyclic4": ("S4", "1,(1234),(13)(24),(1432)", [
        "(13),(23),(123),(124),(1243),(1324)",
        "(34),(14),(12)(34),(132),(243),(143),(1342)",
        "(12),(24),(14)(23),(134),(234),(142),(1423)",
    ], "3-split of S4 over a cyclic subgroup of order 4 (as printed)"),
    # as printed, B2 holds the commuting pair (34), (12)(34); moving (34) to B1 repairs it
    "s4_cyclic4_corrected": ("S4", "1,(1234),(13)(24),(1432)", [
        "(13),(23),(123),(124),(1243),(1324),(34)",
        "(14),(12)(34),(132),(243),(143),(1342)",
        "(12),(24),(14)(23),(134),(234),(142),(1423)",
    ], "3-split of S4 over a cyclic subgroup of order 4, with (34) moved from B2 to B1"),
}

PRINTED = set(TABLES) - {"s4_cyclic4_corrected"} | {"s3xs3_a3xa3", "paper72_3split", "q8frob72_3split"}

_T = "((12),(12)),((12),(13)),((12),(23)),((13),(12)),((13),(13)),((13),(23)),((23),(12)),((23),(13)),((23),(23))"
S3XS3 = ("S3xS3", "(1,1),((123),1),((132),1),(1,(123)),(1,(132)),((123),(123)),((123),(132)),((132),(123)),((132),(132))", [
    "((12),1),((13),1),((23),1),((123),(12)),((123),(13)),((123),(23))",
    "((12),(123)),((13),(123)),((23),(123)),(1,(12)),(1,(13)),(1,(23))",
    "((12),(132)),((13),(132)),((23),(132)),((132),(12)),((132),(13)),((132),(23))," + _T,
], "3-split of S3 x S3 over A3 x A3")


def paper72() -> SplitDecomposition:
    G = load("paper72")
    u, v, x, y = (G.labels[k] for k in "uvxy")
    A = sorted(G.generate([u, v]).tolist())
    x2, x3 = G.mul(x, x), G.mul(G.mul(x, x), x)
    xy, x2y, x3y = G.mul(x, y), G.mul(x2, y), G.mul(x3, y)
    uu, vv = G.mul(u, u), G.mul(v, v)
    C = {g: commutator_set(G, A, g) for g in (y, xy, x2y, x3y)}
    B1 = (product_set(G, A, x) + product_set(G, C[y], y) + product_set(G, C[xy], xy)
          + product_set(G, C[x2y], v, x2y) + product_set(G, C[x3y], u, v, x3y))
    B2 = (product_set(G, A, x2) + product_set(G, C[y], u, y) + product_set(G, C[xy], uu, v, xy)
          + product_set(G, C[x2y], vv, x2y) + product_set(G, C[x3y], uu, vv, x3y))
    B3 = (product_set(G, A, x3) + product_set(G, C[y], uu, y) + product_set(G, C[xy], u, vv, xy)
          + product_set(G, C[x2y], x2y) + product_set(G, C[x3y], x3y))
    return SplitDecomposition(G, A, [B1, B2, B3])


def q8frob72() -> SplitDecomposition:
    G = load("Q8Frob72")
    u, v, i, j = (G.labels[k] for k in "uvij")
    A = sorted(G.generate([u, v]).tolist())
    m1 = G.mul(i, i)
    k = G.mul(i, j)
    neg = lambda g: G.mul(g, m1)  # noqa: E731
    B1 = product_set(G, A, m1)
    B2 = product_set(G, A, i) + product_set(G, A, j) + product_set(G, A, k)
    B3 = product_set(G, A, neg(i)) + product_set(G, A, neg(j)) + product_set(G, A, neg(k))
    return SplitDecomposition(G, A, [B1, B2, B3])


def cyclic_sylow4() -> SplitDecomposition:
    """B1 = As u [A,t]zt, B2 = [A,t]t, B3 = As^3 u [A,t]z^2 t in C15:C4."""
    G = load("C15:C4")
    orders = G.element_orders
    A = sorted(x for x in range(G.order) if 15 % int(orders[x]) == 0)
    s = min(x for x in range(G.order) if int(orders[x]) == 4)
    t = G.mul(s, s)
    s3 = G.mul(t, s)
    cat = sorted(set(G.centralizer_of(t).tolist()) & set(A))
    z = next(a for a in cat if int(orders[a]) == 3)
    At = commutator_set(G, A, t)
    B1 = product_set(G, A, s) + product_set(G, At, z, t)
    B2 = product_set(G, At, t)
    B3 = product_set(G, A, s3) + product_set(G, At, G.mul(z, z), t)
    return SplitDecomposition(G, A, [B1, B2, B3])


def tamper(D: SplitDecomposition) -> SplitDecomposition:
    """Move an element of B1 into B2 next to an element it commutes with."""
    G = D.parent
    for x in D.parts[0]:
        if any(G.commute(x, y) for y in D.parts[1]):
            parts = [list(p) for p in D.parts]
            parts[0].remove(x)
            parts[1].append(x)
            return SplitDecomposition(G, D.A, parts, strict=True)
    parts = [list(p) for p in D.parts]
    parts[0].append(parts[1][0])  # duplicate: partition violation
    return SplitDecomposition(G, D.A, parts, strict=True)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    fixtures = {k: (table(g, a, p), desc) for k, (g, a, p, desc) in TABLES.items()}
    g, a, p, desc = S3XS3
    fixtures["s3xs3_a3xa3"] = (table(g, a, p, conv=pair), desc)
    fixtures["paper72_3split"] = (paper72(), "3-split of (C3 x C3):D8 over C3 x C3, coset rule")
    fixtures["q8frob72_3split"] = (q8frob72(), "3-split of (C3 x C3):Q8 over C3 x C3, coset rule")
    fixtures["c15c4_3split"] = (cyclic_sylow4(), "3-split for a cyclic Sylow 2-subgroup of order 4, coset rule")
    index = {}
    for name, (D, desc) in fixtures.items():
        rep = validate(D)
        status = "ok" if rep.valid and rep.strict else "INVALID: " + "; ".join(rep.violations[:3])
        print(f"{name:26s} n={D.n} sizes={D.part_sizes()} {status}")
        save_decomposition(D, OUT / f"{name}.json")
        T = tamper(D)
        assert not validate(T).valid, name
        save_decomposition(T, OUT / f"{name}_tampered.json")
        index[name] = {"group": D.parent.name, "n": D.n, "printed": name in PRINTED,
                       "description": desc}
    (OUT / "index.json").write_text(json.dumps(index, indent=1) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
