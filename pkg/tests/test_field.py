import itertools

import pytest
from hypothesis import given, strategies as st

from grassmann_rsets.field import FieldElement, FieldError, field_arith, field_from_json, frobenius, make_field

SMALL = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]


def test_prime_fields_list_their_residues():
    assert list(make_field(2).elements) == [0, 1]
    assert list(make_field(3).elements) == [0, 1, 2]


def test_gf4_uses_x2_x_1():
    assert make_field(2, 2).modulus == (1, 1, 1)


def test_gf3_arithmetic():
    F = make_field(3)
    two = F.element(2)
    assert field_arith("add", two, two).value == 1
    assert field_arith("inv", two).value == 2
    assert field_arith("pow", two, 2).value == 1


def test_gf4_generator_squares_to_a_plus_one(gf4):
    a = gf4.element(2)
    assert field_arith("mul", a, a).value == 3
    assert frobenius(a, 1).value == 3


@pytest.mark.parametrize("p,e", SMALL)
def test_frobenius_order_divides_e(p, e):
    F = make_field(p, e)
    for x in F.elements:
        assert F.frobenius(x, e) == x
        assert F.frobenius(x, 0) == x


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_prime_field_frobenius_is_trivial(p):
    F = make_field(p)
    assert all(F.frobenius(x, j) == x for x in F.elements for j in range(4))


@pytest.mark.parametrize("p,e", [pe for pe in SMALL if pe[0] ** pe[1] <= 9])
def test_field_axioms_exhaustive(p, e):
    F = make_field(p, e)
    E = list(F.elements)
    for x, y in itertools.product(E, repeat=2):
        assert F.add[x][y] == F.add[y][x]
        assert F.mul[x][y] == F.mul[y][x]
        fx, fy = F.frobenius(x, 1), F.frobenius(y, 1)
        assert F.frobenius(F.mul[x][y], 1) == F.mul[fx][fy]
        assert F.frobenius(F.add[x][y], 1) == F.add[fx][fy]
        for z in E:
            assert F.add[F.add[x][y]][z] == F.add[x][F.add[y][z]]
            assert F.mul[F.mul[x][y]][z] == F.mul[x][F.mul[y][z]]
            assert F.mul[x][F.add[y][z]] == F.add[F.mul[x][y]][F.mul[x][z]]


@pytest.mark.parametrize("p,e", [(2, 2), (2, 3), (3, 2), (5, 2), (3, 3), (7, 2)])
def test_every_nonzero_element_has_an_inverse(p, e):
    F = make_field(p, e)
    q = F.q
    assert all(F.mul[x][F.inv[x]] == 1 for x in F.units)
    # A primitive element generates the unit group.
    assert len({F.pow(F.primitive, i) for i in range(q - 1)}) == q - 1


def test_rejects_bad_parameters():
    for p, e in [(4, 1), (1, 1), (11, 2), (2, 4), (2, 0)]:
        with pytest.raises(FieldError):
            make_field(p, e)


def test_elements_of_different_fields_do_not_mix():
    with pytest.raises(FieldError):
        make_field(3).element(1) + make_field(5).element(1)


def test_json_round_trip():
    for p, e in SMALL:
        F = make_field(p, e)
        assert field_from_json(F.to_json()) is F


@given(st.sampled_from(SMALL), st.data())
def test_division_inverts_multiplication(pe, data):
    F = make_field(*pe)
    x = FieldElement(F, data.draw(st.integers(0, F.q - 1)))
    y = FieldElement(F, data.draw(st.integers(1, F.q - 1)))
    assert (x * y) / y == x
    assert x - x == FieldElement(F, 0)
