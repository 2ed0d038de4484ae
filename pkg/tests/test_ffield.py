import pytest

from nsplit.errors import ValidationError
from nsplit.ffield import ff_make


def test_gf4_x_squared():
    F = ff_make(2, 2, [1, 1, 1])
    x = F.x()
    assert F.coeffs(F.mul(x, x)) == F.coeffs(F.add(x, 1))


def test_gf9_x_squared_is_minus_one():
    F = ff_make(3, 2, [1, 0, 1])
    assert F.mul(F.x(), F.x()) == F.neg(1) == 2


def test_gf8_x_cubed():
    F = ff_make(2, 3, [1, 1, 0, 1])
    assert F.pow(F.x(), 3) == F.add(F.x(), 1)


@pytest.mark.parametrize("p,m", [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2)])
def test_field_axioms_and_cyclic_units(p, m):
    F = ff_make(p, m)
    q = p ** m
    els = list(F.elements)
    assert len(els) == q
    for a in els[1:]:
        assert F.mul(a, F.inv(a)) == 1
    assert max(F.mult_order(a) for a in els[1:]) == q - 1
    for a in els:
        for b in els:
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
            assert F.sub(F.add(a, b), b) == a


def test_reducible_modulus_rejected():
    with pytest.raises(ValidationError):
        ff_make(2, 2, [1, 0, 1])  # x^2 + 1 = (x + 1)^2 over GF(2)
