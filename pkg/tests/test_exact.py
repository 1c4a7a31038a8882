"""Exact scalar/polynomial/rational-function/series arithmetic."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qjfrac.exact import QPolynomial, QRationalFn, QSeries

from conftest import parse

ONE = QRationalFn.one()
Q = QRationalFn.q()


class TestQPolynomial:
    def test_difference_of_squares(self):
        assert QPolynomial((1, -1)) * QPolynomial((1, 1)) == QPolynomial((1, 0, -1))

    def test_gcd_common_factor_monic(self):
        g = QPolynomial.gcd(QPolynomial((1, 0, -1)), QPolynomial((1, -1)))
        # the common factor (1-q), normalized monic: q - 1
        assert g == QPolynomial((-1, 1))
        assert g.leading_coefficient == 1

    def test_divmod_geometric_factorization(self):
        quo, rem = QPolynomial((1, 0, 0, 0, -1)).divmod(QPolynomial((1, -1)))
        assert quo == QPolynomial((1, 1, 1, 1))
        assert rem.is_zero()

    def test_division_by_zero_polynomial(self):
        with pytest.raises(ZeroDivisionError):
            QPolynomial((1,)).divmod(QPolynomial.zero())

    def test_trailing_zeros_stripped(self):
        p = QPolynomial((1, 2, 0, 0))
        assert p.degree == 1
        assert QPolynomial((0, 0)).is_zero()
        assert QPolynomial.zero().degree == -1

    def test_gcd_of_zero(self):
        p = QPolynomial((2, 4))
        assert QPolynomial.gcd(p, QPolynomial.zero()) == QPolynomial((Fraction(1, 2), 1))
        assert QPolynomial.gcd(QPolynomial.zero(), QPolynomial.zero()).is_zero()

    def test_evaluate(self):
        p = QPolynomial((1, -2, 1))  # (1-q)^2
        assert p.evaluate(Fraction(1, 2)) == Fraction(1, 4)

    def test_string_form(self):
        assert str(QPolynomial((1, -2, 1, -1))) == "1 - 2*q + q^2 - q^3"
        assert str(QPolynomial.zero()) == "0"


class TestQRationalFn:
    def test_partial_fractions(self):
        lhs = ONE / (ONE - Q) - ONE / (ONE + Q)
        assert lhs == (2 * Q) / (ONE - Q * Q)

    def test_c1_reduction(self):
        # (q-1)/(q^2-1) reduces to 1/(1+q)
        assert (Q - ONE) / (Q * Q - ONE) == ONE / (ONE + Q)

    def test_self_division_is_one(self):
        x = parse("(3-q^2)/(1+5*q)")
        assert (x / x).is_one()

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            ONE / QRationalFn.zero()

    def test_canonical_form_monic_denominator(self):
        r = parse("-2*q/((1-q)^2*(1+q))")
        assert r.den.leading_coefficient == 1
        assert QPolynomial.gcd(r.num, r.den).degree == 0

    def test_qpow_negative(self):
        assert QRationalFn.qpow(-2) * QRationalFn.qpow(2) == ONE

    def test_reduction_idempotent(self):
        r = parse("(1-q^4)/(1-q)")
        again = QRationalFn(r.num, r.den)
        assert again == r


class TestTaylor:
    def test_geometric(self):
        assert list((ONE / (ONE - Q)).taylor(4)) == [1, 1, 1, 1]

    def test_divisor_approximant_expansion(self):
        # The tabulated degree-4/degree-4 approximant expands to d(1)..d(5)
        # starting at q^0 (the n-th coefficient is d(n+1); the accompanying
        # claim that it starts 1 + d(1) q is off by one factor of q, which the
        # exact expansion here pins down).
        f = parse("(1+4*q+8*q^2+11*q^3+10*q^4)/(1+2*q+2*q^2-2*q^4)")
        assert list(f.taylor(5)) == [1, 2, 2, 3, 2]

    def test_sigma_approximant_expansion(self):
        f = parse("q*(1+3*q+3*q^2)/((1-q)*(1+q))")
        assert list(f.taylor(4)) == [0, 1, 3, 4]

    def test_pole_at_zero_rejected(self):
        with pytest.raises(ValueError, match="pole at q=0"):
            (ONE / Q).taylor(3)


class TestQSeries:
    def test_min_order_discipline(self):
        a = QSeries(5, [1, 2, 3, 4, 5])
        b = QSeries(3, [1, 1, 1])
        assert (a + b).order == 3
        assert (a * b).order == 3

    def test_reciprocal(self):
        s = QSeries(4, [1, -1])
        assert list(s.reciprocal()) == [1, 1, 1, 1]
        with pytest.raises(ZeroDivisionError):
            QSeries(3, [0, 1]).reciprocal()

    def test_shift(self):
        s = QSeries(4, [1, 2, 3, 4])
        assert list(s.shift(2)) == [0, 0, 1, 2]


class TestSerialization:
    def test_string_round_trip(self):
        cases = [
            "(-2*q)/(1 - q - q^2 + q^3)",
            "1",
            "0",
            "(1/2 + q)/(3 - q^5)",
            "q^7",
        ]
        for text in cases:
            r = parse(text)
            assert QRationalFn.parse(str(r)) == r

    def test_json_round_trip_bit_exact(self):
        r = parse("(1+5*q+14*q^2)/(2*(1+q+q^2)*(1+2*q+3*q^2))")
        assert QRationalFn.from_json(r.to_json()) == r
        data = r.to_json()
        assert all(isinstance(p, list) and len(p) == 2 for p in data["num"])

    def test_parser_grammar(self):
        assert parse("q^-1") == QRationalFn.qpow(-1)
        assert parse("1/2 + 1/2") == ONE
        assert parse("-(1-q)") == Q - ONE
        with pytest.raises(ValueError):
            parse("q +")
        with pytest.raises(ValueError):
            parse("(1")
        with pytest.raises(ValueError):
            parse("x + 1")


# -- property tests ----------------------------------------------------------

_small_fraction = st.fractions(
    min_value=-4, max_value=4, max_denominator=3
)


@st.composite
def ratfns(draw):
    num = draw(st.lists(_small_fraction, min_size=0, max_size=3))
    den = draw(st.lists(_small_fraction, min_size=1, max_size=3))
    den_poly = QPolynomial(den)
    if den_poly.is_zero():
        den_poly = QPolynomial.one()
    return QRationalFn(QPolynomial(num), den_poly)


@settings(max_examples=60, deadline=None)
@given(ratfns(), ratfns(), ratfns())
def test_field_axioms_sampled(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    if not x.is_zero():
        assert (x * (ONE / x)).is_one()


@settings(max_examples=40, deadline=None)
@given(ratfns(), ratfns())
def test_taylor_is_multiplicative(f, g):
    n = 6
    if f.den.coefficient(0) == 0 or g.den.coefficient(0) == 0:
        return
    assert (f * g).taylor(n) == f.taylor(n) * g.taylor(n)


@settings(max_examples=40, deadline=None)
@given(ratfns())
def test_normalization_idempotent(x):
    assert QRationalFn(x.num, x.den) == x
