import pytest
from hypothesis import given, settings, strategies as st

from pathcoalg.errors import DegreeOutOfRange, DivisionByZero, FieldMismatch, NonPrime, SizeCapExceeded
from pathcoalg.field import field_make, is_irreducible, parse_field, smallest_irreducible

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2)]


def test_gf2_basics():
    F = field_make(2)
    assert [x.value for x in F.elements()] == [0, 1]
    assert F.add(1, 1) == 0
    assert F.mul(1, 1) == 1


def test_gf3_inverse_of_two():
    F = field_make(3)
    assert F.inv(2) == 2
    assert F(2).inverse() == F(2)


def test_gf4_modulus_and_generator():
    F = field_make(2, 2)
    assert F.modulus == (1, 1, 1)  # x^2 + x + 1
    t = F.gen
    assert t * t == t + F.one
    assert t.inverse() == t + 1
    assert t * (t + 1) == F.one


def test_smallest_irreducible_is_lexicographically_first():
    # coefficients compared from the constant term up, so 1+x^2+x^3 beats 1+x+x^3
    assert smallest_irreducible(2, 3) == (1, 0, 1, 1)
    assert is_irreducible((1, 1, 0, 1), 2)
    assert smallest_irreducible(3, 2) == (1, 0, 1)  # x^2 + 1
    assert not is_irreducible((1, 0, 1), 2)  # (x+1)^2


@pytest.mark.parametrize("text,q", [("2^1", 2), ("3^1", 3), ("2^2", 4), ("7", 7), (" 3 ^ 2 ", 9)])
def test_parse_field(text, q):
    assert parse_field(text).q == q


@pytest.mark.parametrize("text", ["4^1", "x", "2^0", "", "1^1"])
def test_parse_field_rejects(text):
    with pytest.raises(ValueError):
        parse_field(text)


def test_errors():
    with pytest.raises(NonPrime):
        field_make(6)
    with pytest.raises(DegreeOutOfRange):
        field_make(2, 0)
    with pytest.raises(SizeCapExceeded):
        field_make(2, 17)
    assert field_make(2, 17, size_cap=2 ** 17).q == 2 ** 17
    with pytest.raises(DivisionByZero):
        field_make(5).inv(0)
    with pytest.raises(FieldMismatch):
        field_make(2).one + field_make(3).one


@pytest.mark.parametrize("p,n", SMALL_FIELDS + [(2, 4), (13, 1)])
def test_full_tables(p, n):
    """Integral domain, Lagrange, and the table laws, by full enumeration."""
    F = field_make(p, n)
    q = F.q
    els = list(range(q))
    assert [x.value for x in F.elements()] == els
    assert len(els) == q
    for a in els[1:]:
        assert F.pow(a, q - 1) == 1
        assert F.mul(a, F.inv(a)) == 1
        for b in els[1:]:
            assert F.mul(a, b) != 0
    for a in els:
        assert F.add(a, F.neg(a)) == 0
        for b in els:
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
            for c in els:
                assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
                assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))


@pytest.mark.parametrize("p,n", SMALL_FIELDS)
def test_multiplicative_group_is_cyclic(p, n):
    F = field_make(p, n)
    orders = []
    for a in range(1, F.q):
        k, x = 1, a
        while x != 1:
            x, k = F.mul(x, a), k + 1
        orders.append(k)
    assert max(orders) == F.q - 1


@st.composite
def field_and_elements(draw, count=3):
    p, n = draw(st.sampled_from(SMALL_FIELDS + [(7, 1), (2, 5), (5, 2)]))
    F = field_make(p, n)
    return F, [draw(st.integers(0, F.q - 1)) for _ in range(count)]


@given(field_and_elements())
def test_distributive(data):
    F, (a, b, c) = data
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


@given(field_and_elements())
def test_sub_div_roundtrip(data):
    F, (a, b, _) = data
    assert F.add(F.sub(a, b), b) == a
    if b:
        assert F.mul(F.div(a, b), b) == a


@settings(max_examples=50)
@given(field_and_elements(count=2))
def test_element_wrapper_matches_codes(data):
    F, (a, b) = data
    x, y = F(a), F(b)
    assert (x + y).value == F.add(a, b)
    assert (x * y).value == F.mul(a, b)
    assert (x - y).value == F.sub(a, b)
    assert (-x).value == F.neg(a)
    assert F.from_coeffs(x.coeffs) == x
    assert F.encode(F.coeffs(a)) == a
