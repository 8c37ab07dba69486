import pickle

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import K, P, any_polys, fields, polys
from qlagrange.algebra import (
    NEG_INF,
    Poly,
    default_modulus,
    diff_degree,
    enumerate_polys,
    field,
    field_arith,
    field_of_order,
    format_poly,
    parse_poly,
    poly_divmod,
    poly_gcd,
    prime_power,
)
from qlagrange.errors import CoefficientOutOfRange, DivisionByZero, InvalidField, InversionOfZero, ParseError


def test_char2_add():
    assert field_arith(K(2), "add", 1, 1) == 0


def test_inverse_in_f3():
    assert field_arith(K(3), "inv", 2) == 2


def test_f4_square_of_generator():
    ctx = field(2, 2, (1, 1, 1))
    assert field_arith(ctx, "mul", 2, 2) == 3


def test_default_modulus_is_smallest_irreducible():
    assert default_modulus(2, 2) == (1, 1, 1)
    assert default_modulus(2, 3) == (1, 1, 0, 1)
    assert default_modulus(3, 2) == (1, 0, 1)


def test_inversion_of_zero():
    with pytest.raises(InversionOfZero):
        field_arith(K(5), "inv", 0)


def test_out_of_range_code():
    with pytest.raises(CoefficientOutOfRange):
        field_arith(K(3), "add", 3, 1)


@pytest.mark.parametrize("q", [1, 6, 12, 2048])
def test_invalid_orders(q):
    with pytest.raises(InvalidField):
        field_of_order(q)


def test_reducible_modulus_rejected():
    with pytest.raises(InvalidField):
        field(2, 2, (1, 0, 1))


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16, 25, 27])
def test_field_tables(q):
    ctx = K(q)
    assert ctx.q == q
    units = list(ctx.units())
    assert len(units) == q - 1
    for x in units:
        assert ctx.mul(x, ctx.inv(x)) == 1
        assert ctx.add(x, ctx.neg(x)) == 0
    if ctx.p == 2:
        assert all(ctx.neg(x) == x for x in range(q))


def test_large_field_builds():
    ctx = field_of_order(1024)
    assert prime_power(1024) == (2, 10)
    x = 777
    assert ctx.mul(x, ctx.inv(x)) == 1


@given(fields, st.data())
def test_field_axioms(ctx, data):
    x, y, z = (data.draw(st.integers(0, ctx.q - 1)) for _ in range(3))
    add, mul = ctx.add, ctx.mul
    assert add(add(x, y), z) == add(x, add(y, z))
    assert mul(mul(x, y), z) == mul(x, mul(y, z))
    assert add(x, y) == add(y, x) and mul(x, y) == mul(y, x)
    assert mul(x, add(y, z)) == add(mul(x, y), mul(x, z))
    assert ctx.sub(add(x, y), y) == x


def test_neg_inf_sentinel():
    assert NEG_INF < -(10**9)
    assert NEG_INF + 5 is NEG_INF and 5 + NEG_INF is NEG_INF
    assert Poly.zero(K(2)).deg is NEG_INF
    assert Poly.constant(K(3), 2).deg == 0
    assert pickle.loads(pickle.dumps(NEG_INF)) is NEG_INF


def test_divmod_examples():
    q, r = poly_divmod(P("Y^2+1"), P("Y"))
    assert (q, r) == (P("Y"), P("1"))
    a = P("Y^3+2*Y+1", 3)
    assert poly_divmod(a, a) == (P("1", 3), Poly.zero(K(3)))
    q, r = poly_divmod(P("Y^3+2*Y", 3), P("Y^2+1", 3))
    assert (q, r) == (P("Y", 3), P("Y", 3))


def test_divide_by_zero():
    with pytest.raises(DivisionByZero):
        poly_divmod(P("Y"), Poly.zero(K(2)))


@given(fields, st.data())
def test_divmod_identity(ctx, data):
    a = data.draw(any_polys(ctx, 5))
    b = data.draw(polys(ctx, 0, 3))
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.deg < b.deg


@given(fields, st.data())
def test_degree_of_product(ctx, data):
    a = data.draw(polys(ctx, 0, 4))
    b = data.draw(polys(ctx, 0, 4))
    assert (a * b).deg == a.deg + b.deg
    assert (a + b).deg <= max(a.deg, b.deg)
    assert diff_degree(a, b) == (a - b).deg


@given(fields, st.data())
def test_gcd_divides(ctx, data):
    c = data.draw(polys(ctx, 0, 2))
    a = data.draw(polys(ctx, 0, 3)) * c
    b = data.draw(polys(ctx, 0, 3)) * c
    g = poly_gcd(a, b)
    assert g.leading == 1
    assert (a % g).is_zero() and (b % g).is_zero()
    assert (g % c.monic()).is_zero()


def test_enumeration_examples():
    assert [str(p) for p in enumerate_polys(K(2), 1, 1)] == ["Y", "Y+1"]
    assert len(list(enumerate_polys(K(2), 1, 2))) == 6
    assert len(list(enumerate_polys(K(3), 1, 1))) == 6
    with pytest.raises(ValueError):
        list(enumerate_polys(K(2), 0, 1))


@pytest.mark.parametrize("q,k", [(2, 1), (2, 3), (3, 2), (4, 2), (5, 1)])
def test_enumeration_count_and_order(q, k):
    ps = list(enumerate_polys(K(q), 1, k))
    assert len(ps) == q ** (k + 1) - q
    assert len(set(ps)) == len(ps)
    keys = [(p.deg, tuple(reversed(p.coeffs))) for p in ps]
    assert keys == sorted(keys)


def test_parse_examples():
    assert P("Y^2+1").coeffs == (1, 0, 1)
    assert P("2*Y+2", 3).coeffs == (2, 2)
    z = P("Y+Y")
    assert z.is_zero() and format_poly(z) == "0"
    assert P(" y ^ 2 + 1 ") == P("Y^2+1")
    assert format_poly(P("Y^3+2*Y^2+2", 3)) == "Y^3+2*Y^2+2"


@pytest.mark.parametrize("text", ["Y^", "2*", "Y++1", "Z", "", "Y^2 1"])
def test_parse_errors(text):
    with pytest.raises(ParseError) as exc:
        P(text, 3)
    assert exc.value.position >= 0


def test_parse_coefficient_range():
    with pytest.raises(CoefficientOutOfRange):
        P("3*Y", 3)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_parse_format_round_trip(q):
    ctx = K(q)
    for p in enumerate_polys(ctx, 1, 3):
        assert parse_poly(format_poly(p), ctx) == p


def test_pickle_round_trip():
    p = P("Y^2+2*Y+1", 3)
    assert pickle.loads(pickle.dumps(p)) == p
    assert pickle.loads(pickle.dumps(K(9))) is K(9)


def test_mixed_fields_rejected():
    with pytest.raises(ValueError):
        P("Y", 2) + P("Y", 3)
