"""Regenerate the shipped generator files and the catalog manifest.

Small groups are written as generator files so the catalog does not depend
on the constructors staying bit-for-bit stable; larger named groups are
listed by constructor spec.
"""

from pathlib import Path

from nsplit.catalog import make, save_group_file
from nsplit.group import center

DATA = Path(__file__).resolve().parents[1] / "src" / "nsplit" / "data"

# every nonabelian group of order <= 24, as (name, constructor spec)
SMALL = [
    ("S3", "symmetric(3)"),
    ("D8", "dihedral(8)"),
    ("Q8", "generalized_quaternion(8)"),
    ("D10", "dihedral(10)"),
    ("D12", "dihedral(12)"),
    ("A4", "alternating(4)"),
    ("Dic12", "metacyclic(6, 2, 3, 5)"),
    ("D14", "dihedral(14)"),
    ("D16", "dihedral(16)"),
    ("Q16", "generalized_quaternion(16)"),
    ("SD16", "semidihedral(16)"),
    ("M16", "metacyclic(8, 2, 0, 5)"),
    ("C4:C4", "metacyclic(4, 4, 0, 3)"),
    ("C2xD8", "direct_product(cyclic(2), dihedral(8))"),
    ("C2xQ8", "direct_product(cyclic(2), generalized_quaternion(8))"),
    ("C4xC2:C2", "affine([4, 2], [[[1, 0], [1, 1]]], 2)"),
    ("C4oD8", "affine([4, 2], [[[1, 2], [0, 1]]], 2)"),
    ("D18", "dihedral(18)"),
    ("C3xS3", "direct_product(cyclic(3), symmetric(3))"),
    ("C3^2:C2", "affine([3, 3], [[[2, 0], [0, 2]]], 2)"),
    ("Dic20", "metacyclic(10, 2, 5, 9)"),
    ("F20", "affine([5], [[[2]]], 4)"),
    ("D20", "dihedral(20)"),
    ("F21", "affine([7], [[[2]]], 3)"),
    ("D22", "dihedral(22)"),
    ("C3:C8", "metacyclic(3, 8, 0, 2)"),
    ("SL2_3", "matrix_group(3, [[1, 1], [0, 1]], [[1, 0], [1, 1]])"),
    ("Dic24", "metacyclic(12, 2, 6, 11)"),
    ("C4xS3", "direct_product(cyclic(4), symmetric(3))"),
    ("D24", "dihedral(24)"),
    ("C2xDic12", "direct_product(cyclic(2), metacyclic(6, 2, 3, 5))"),
    ("C3:D8", "generated(7, '(1 2 3)', '(1 2)(4 5 6 7)', '(5 7)')"),
    ("C3xD8", "direct_product(cyclic(3), dihedral(8))"),
    ("C3xQ8", "direct_product(cyclic(3), generalized_quaternion(8))"),
    ("S4", "symmetric(4)"),
    ("C2xA4", "direct_product(cyclic(2), alternating(4))"),
    ("C2^2xS3", "direct_product(cyclic(2), cyclic(2), symmetric(3))"),
]

# larger named groups, built by constructor on load
NAMED = [
    ("S3xS3", "direct_product(symmetric(3), symmetric(3))"),
    ("D32", "dihedral(32)"),
    ("Q32", "generalized_quaternion(32)"),
    ("SD32", "semidihedral(32)"),
    ("He3", "extraspecial_p3(3, exponent_p)"),
    ("M27", "extraspecial_p3(3, exponent_p2)"),
    ("He5", "extraspecial_p3(5, exponent_p)"),
    ("M125", "extraspecial_p3(5, exponent_p2)"),
    ("paper72", "paper72"),
    ("Q8Frob72", "q8_frobenius"),
    ("C3xD10", "direct_product(cyclic(3), dihedral(10))"),
    ("C15:C4", "affine([15], [[[2]]], 4)"),
    ("C3^3:V4", "affine([3, 3, 3], [[[1, 0, 0], [0, 2, 0], [0, 0, 2]], [[2, 0, 0], [0, 1, 0], [0, 0, 2]]], 4)"),
    ("A5", "alternating(5)"),
    ("L2_4", "psl2(4)"),
    ("L2_5", "psl2(5)"),
    ("S5", "symmetric(5)"),
    ("PGL2_5", "pgl2(5)"),
    ("L2_7", "psl2(7)"),
    ("L2_8", "psl2(8)"),
    ("L2_9", "psl2(9)"),
    ("A6", "alternating(6)"),
    ("A7", "alternating(7)"),
]


def main():
    lines = ["# name, order, |Z|, source (file:... under data/ or a constructor spec)"]
    for name, spec in SMALL:
        G = make(spec, name=name)
        fname = "groups/" + name.replace(":", "_").replace("^", "") + ".grp"
        save_group_file(G, DATA / fname)
        lines.append(f"{name}, {G.order}, {center(G).order}, file:{fname}")
    for name, spec in NAMED:
        G = make(spec, name=name)
        lines.append(f"{name}, {G.order}, {center(G).order}, {spec}")
    lines.append("Sz8, 29120, 1, file:groups/Sz8.grp")
    (DATA / "manifest.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
