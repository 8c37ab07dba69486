import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import K, P, W, fields, polys, words
from qlagrange.algebra import Poly
from qlagrange.cfword import minimal_polynomial
from qlagrange.errors import InsufficientPrecision, PrecisionExhausted
from qlagrange.laurent import LaurentSeries, cf_from_series, deepen, series_arith, series_from_cf


def S(text, q=2, prec=-20):
    return LaurentSeries.from_poly(P(text, q), prec)


def test_inverse_of_monomial():
    y_inv = LaurentSeries.monomial(K(2), -1, -20)
    inv = series_arith("inv", y_inv)
    assert inv.top_deg == 1 and inv.coeffs[0] == 1
    assert inv.format(down_to=-5) == "Y + O(Y^-6)"


def test_char2_addition():
    s = series_arith("add", S("Y+1"), S("Y"))
    assert s.top_deg == 0 and s.coeff(0) == 1


def test_geometric_series():
    inv = series_arith("inv", S("Y+1"))
    assert all(inv.coeff(k) == 1 for k in range(-1, inv.prec - 1, -1))
    back = inv * S("Y+1")
    assert back.top_deg == 0 and back.coeff(0) == 1
    assert all(back.coeff(k) == 0 for k in range(-1, back.prec - 1, -1))


def test_polynomial_part_examples():
    f = S("Y+1") + LaurentSeries.monomial(K(2), -1, -10)
    assert f.polynomial_part() == P("Y+1")
    g = LaurentSeries.monomial(K(2), -1, -10) + LaurentSeries.monomial(K(2), -2, -10)
    assert g.polynomial_part().is_zero()
    h = S("2*Y^2", 3) + LaurentSeries.monomial(K(3), -3, -10)
    assert h.polynomial_part() == P("2*Y^2", 3)


def test_polynomial_part_needs_constant_term():
    f = LaurentSeries(K(2), 3, (1,), 2)
    with pytest.raises(InsufficientPrecision):
        f.polynomial_part()


def test_series_from_cf_examples():
    a = series_from_cf(W("[0;|Y]"), -8)
    assert a.valuation == 1
    f = series_from_cf(W("[Y;Y]"), -10)
    assert f.format() == "Y + Y^-1 + O(Y^-11)"
    A, B, C = minimal_polynomial(W("[0;|Y]"))
    residual = a * a * A + a * B + C
    # zero through degree -7, so the valuation is at least 8
    assert not residual.is_certified_nonzero() and residual.prec <= -7


def test_cf_from_series_examples():
    f = LaurentSeries.from_rational(P("Y^2+1"), P("Y"), -20)
    assert cf_from_series(f, 5) == [P("Y"), P("Y")]
    g = LaurentSeries.monomial(K(2), -1, -20)
    assert cf_from_series(g, 5) == [Poly.zero(K(2)), P("Y")]
    h = series_from_cf(W("[0;|Y]"), -30)
    assert cf_from_series(h, 11) == [Poly.zero(K(2))] + [P("Y")] * 10


def test_strict_cf_reports_certified_count():
    h = series_from_cf(W("[0;|Y]"), -6)
    with pytest.raises(InsufficientPrecision) as exc:
        cf_from_series(h, 40, strict=True)
    assert 1 <= exc.value.certified < 40


def test_uncertified_leading_term():
    z = S("Y") - S("Y")
    assert not z.is_certified_nonzero()
    with pytest.raises(InsufficientPrecision):
        z.abs_exponent
    with pytest.raises(InsufficientPrecision):
        z.inverse()


def test_precision_of_sum_is_the_coarser_one():
    f = LaurentSeries.from_poly(P("Y"), -5)
    g = LaurentSeries.from_poly(P("1"), -9)
    assert (f + g).prec == -5


def test_deepen_doubles_until_certified():
    seen = []

    def compute(prec):
        seen.append(prec)
        return LaurentSeries.monomial(K(2), -12, prec) if prec <= -13 else LaurentSeries(K(2), prec - 1, (), prec)

    s = deepen(compute, 4)
    assert s.top_deg == -12 and seen == [-4, -8, -16]
    with pytest.raises(PrecisionExhausted):
        deepen(lambda prec: LaurentSeries(K(2), prec - 1, (), prec), 4, cap=64)


@st.composite
def series(draw, ctx):
    top = draw(st.integers(-4, 4))
    n = draw(st.integers(1, 12))
    coeffs = [draw(st.integers(1, ctx.q - 1))] + draw(
        st.lists(st.integers(0, ctx.q - 1), min_size=n - 1, max_size=n - 1)
    )
    return LaurentSeries(ctx, top, coeffs, top - n + 1)


@given(fields, st.data())
def test_ultrametric(ctx, data):
    f, g = data.draw(series(ctx)), data.draw(series(ctx))
    s = f + g
    if s.is_certified_nonzero():
        assert s.abs_exponent <= max(f.abs_exponent, g.abs_exponent)
    if f.abs_exponent != g.abs_exponent:
        assert s.abs_exponent == max(f.abs_exponent, g.abs_exponent)


@given(fields, st.data())
def test_product_absolute_value(ctx, data):
    f, g = data.draw(series(ctx)), data.draw(series(ctx))
    fg = f * g
    assert fg.abs_exponent == f.abs_exponent + g.abs_exponent
    one = f * f.inverse()
    assert one.abs_exponent == 0 and one.coeff(0) == 1


@given(fields, st.data())
def test_rational_expansion_matches_polynomial_product(ctx, data):
    num = data.draw(polys(ctx, 0, 4))
    den = data.draw(polys(ctx, 0, 3))
    f = LaurentSeries.from_rational(num, den, -15)
    back = f * LaurentSeries.from_poly(den, -40)
    assert back.agrees_with(LaurentSeries.from_poly(num, -40))


@given(words(max_len=3, hi=2))
def test_cf_round_trip(w):
    f = series_from_cf(w, -40)
    letters = cf_from_series(f, 6)
    assert len(letters) >= 2
    assert letters == [w.letter(i) for i in range(len(letters))]


@given(words(max_len=3, hi=3))
def test_minimal_polynomial_residual(w):
    f = series_from_cf(w, -30)
    A, B, C = minimal_polynomial(w)
    residual = f * f * A + f * B + C
    assert not residual.is_certified_nonzero()
