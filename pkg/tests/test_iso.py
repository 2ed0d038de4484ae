import pytest

from nsplit.catalog import direct_product, load, make, symmetric
from nsplit.errors import PreconditionError
from nsplit.iso import is_isomorphic, small_iso_type, subgroup_as_group


def test_q8_recognized_by_unique_involution():
    Q = load("Q8")
    assert small_iso_type(Q, "Q8")
    assert not small_iso_type(Q, "D8")
    assert not small_iso_type(load("D8"), "Q8")


def test_direct_product_s3xs3():
    G = direct_product(symmetric(3), symmetric(3))
    assert small_iso_type(G, "S3xS3")


@pytest.mark.parametrize("name,target", [("S4", "S4"), ("A4", "A4"), ("S3", "S3"), ("D16", "dihedral"),
                                         ("Q16", "generalized_quaternion"), ("SD16", "semidihedral")])
def test_named_types(name, target):
    assert small_iso_type(load(name), target)


def test_negative_cases():
    assert not small_iso_type(load("SL2_3"), "S4")
    assert not small_iso_type(load("D16"), "semidihedral")
    assert not small_iso_type(load("Dic12"), "dihedral")


def test_cyclic_and_elementary():
    C = make("cyclic(6)")
    assert small_iso_type(C, "C6") and small_iso_type(C, "cyclic")
    V = make("klein")
    assert small_iso_type(V, "Klein") and small_iso_type(V, "elementary-abelian-p")
    assert not small_iso_type(C, "elementary-abelian-p")


def test_subgroup_as_group_and_isomorphism():
    S4 = load("S4")
    H = S4.subgroup(S4.generate([S4.index_of("(1 2 3)"), S4.index_of("(1 2)(3 4)")]).tolist())
    A = subgroup_as_group(S4, H)
    assert A.order == 12 and is_isomorphic(A, load("A4"))
    assert not is_isomorphic(A, load("D12"))


def test_unknown_target():
    with pytest.raises(PreconditionError):
        small_iso_type(load("S3"), "M24")
