from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bbcenter.errors import DimensionMismatch, NotDivisible
from bbcenter.series import EC_I, ExactComplex, MultiSeries


def ec(re, im=0):
    return ExactComplex(Fraction(re), Fraction(im))


def x_var(order=6, nvars=1):
    return MultiSeries.variable(nvars, order, 0)


# ---------------------------------------------------------------------------
# ExactComplex

def test_exact_complex_basics():
    a = ec(Fraction(1, 2), 3)
    b = ec(2, Fraction(-1, 3))
    assert (a + b) - b == a
    assert a * b == b * a
    assert (a / b) * b == a
    assert (-a) + a == ExactComplex(0)
    assert EC_I * EC_I == ExactComplex(-1)
    assert a.conjugate().conjugate() == a
    assert ec(3).as_integer() == 3
    assert ec(Fraction(1, 2)).as_integer() is None
    assert ec(0, 2).is_purely_imaginary()
    assert not ec(0, 0).is_purely_imaginary()


def test_exact_complex_rejects_floats():
    with pytest.raises(TypeError):
        ExactComplex(0.5)


def test_exact_complex_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ec(1) / ec(0)


def test_exact_complex_str():
    assert str(ec(0)) == "0"
    assert str(EC_I) == "i"
    assert str(ec(0, -1)) == "-i"
    assert str(ec(Fraction(1, 2), -3)) == "1/2-3i"


# ---------------------------------------------------------------------------
# arithmetic examples

def test_monomial_product():
    x = x_var(order=2)
    assert x * x == MultiSeries.monomial(1, 2, (2,), 1)


def test_polynomial_expansion_truncates():
    x = x_var(order=2)
    one = MultiSeries.constant(1, 2, 1)
    prod = (one + x) * (one - x)
    assert prod == MultiSeries(1, 2, {(0,): 1, (2,): ec(-1)})


def test_i_squared_in_series():
    x = x_var(order=4)
    ix = x * EC_I
    assert ix * ix == MultiSeries.monomial(1, 4, (2,), ec(-1))


def test_mul_order_is_min():
    a = MultiSeries.variable(1, 5, 0)
    b = MultiSeries.variable(1, 3, 0)
    assert (a * b).order == 3
    assert (a + b).order == 3


def test_nvars_mismatch():
    a = MultiSeries.variable(1, 5, 0)
    b = MultiSeries.variable(2, 5, 0)
    with pytest.raises(DimensionMismatch):
        a * b


# ---------------------------------------------------------------------------
# shear substitution

def test_shear_example_from_reduction():
    # u with shift -1 (the value p/(1-q) for p=1, q=2) becomes x*u - x
    s = MultiSeries.variable(2, 4, 1)
    out = s.shear_substitute(1, ec(-1))
    assert out == MultiSeries(2, 4, {(1, 1): 1, (1, 0): ec(-1)})


def test_shear_square():
    s = MultiSeries.monomial(2, 4, (0, 2), 1)
    out = s.shear_substitute(1, ec(-1))
    assert out == MultiSeries(2, 4, {(2, 2): 1, (2, 1): ec(-2), (2, 0): 1})


def test_shear_untouched_terms():
    s = MultiSeries.variable(2, 4, 0)
    assert s.shear_substitute(1, ec(5)) == s


def test_shear_index_errors():
    s = MultiSeries.variable(2, 4, 1)
    with pytest.raises(IndexError):
        s.shear_substitute(0, ec(1))
    with pytest.raises(IndexError):
        s.shear_substitute(2, ec(1))


# ---------------------------------------------------------------------------
# divide_by_x

def test_divide_by_x():
    s = MultiSeries(2, 3, {(2, 0): 1, (1, 1): 1})
    out = s.divide_by_x()
    assert out == MultiSeries(2, 2, {(1, 0): 1, (0, 1): 1})
    assert out.order == 2


def test_divide_by_x_monomial():
    s = MultiSeries.monomial(2, 5, (3, 2), 1)
    assert s.divide_by_x() == MultiSeries.monomial(2, 4, (2, 2), 1)


def test_divide_by_x_rejects():
    s = MultiSeries.variable(2, 3, 1)
    with pytest.raises(NotDivisible):
        s.divide_by_x()


# ---------------------------------------------------------------------------
# numeric evaluation

def test_eval_square():
    s = MultiSeries.monomial(1, 2, (2,), 1)
    assert s.eval_numeric([0.5]) == pytest.approx(0.25)


def test_eval_constant_plus_x():
    s = MultiSeries(1, 2, {(0,): 1, (1,): 1})
    assert s.eval_numeric([0.0]) == pytest.approx(1.0)


def test_eval_imaginary():
    s = MultiSeries.monomial(1, 2, (1,), EC_I)
    assert s.eval_numeric([1.0]) == pytest.approx(1j)


def test_eval_dimension_check():
    s = MultiSeries.variable(2, 2, 0)
    with pytest.raises(DimensionMismatch):
        s.eval_numeric([1.0])


# ---------------------------------------------------------------------------
# property tests

small_rational = st.fractions(
    min_value=Fraction(-3), max_value=Fraction(3), max_denominator=4)


@st.composite
def exact_complex(draw):
    return ExactComplex(draw(small_rational), draw(small_rational))


@st.composite
def multiseries(draw, nvars=2, order=8, max_terms=5):
    n_terms = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n_terms):
        exps = tuple(draw(st.integers(0, 3)) for _ in range(nvars))
        if sum(exps) > order:
            continue
        terms[exps] = draw(exact_complex())
    return MultiSeries(nvars, order, terms)


@settings(max_examples=60, deadline=None)
@given(multiseries(), multiseries(), multiseries())
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=40, deadline=None)
@given(multiseries())
def test_shear_zero_shift_moves_degrees(s):
    out = s.shear_substitute(1, ExactComplex(0))
    for exps, coeff in s.terms.items():
        new = (exps[0] + exps[1], exps[1])
        if sum(new) <= s.order:
            assert out.coeff(new) == coeff


@settings(max_examples=40, deadline=None)
@given(multiseries(nvars=2, order=7))
def test_divide_after_multiply_roundtrip(s):
    x = MultiSeries.variable(2, s.order + 1, 0)
    prod = x * s.with_order(s.order + 1)
    assert prod.divide_by_x() == s


@settings(max_examples=40, deadline=None)
@given(multiseries(nvars=2, order=6), st.fractions(min_value=Fraction(-2), max_value=Fraction(2), max_denominator=3),
       st.fractions(min_value=Fraction(-2), max_value=Fraction(2), max_denominator=3))
def test_eval_matches_exact_evaluation(s, p0, p1):
    # exact evaluation at a rational point
    exact = ExactComplex(0)
    for exps, coeff in s.terms.items():
        val = ExactComplex(p0 ** exps[0] * p1 ** exps[1])
        exact = exact + coeff * val
    approx = s.eval_numeric([float(p0), float(p1)])
    reference = exact.to_complex()
    assert abs(approx - reference) <= 1e-12 * max(1.0, abs(reference))


def test_substitute_chart_style():
    # f(x, y) = x*y substituted with x -> t*u, y -> t gives t^2*u
    f = MultiSeries.monomial(2, 6, (1, 1), 1)
    t = MultiSeries.variable(2, 6, 0)
    u = MultiSeries.variable(2, 6, 1)
    image = f.substitute([t * u, t])
    assert image == MultiSeries.monomial(2, 6, (2, 1), 1)


def test_substitute_rejects_constant():
    f = MultiSeries.variable(1, 4, 0)
    c = MultiSeries.constant(1, 4, 1)
    with pytest.raises(ValueError):
        f.substitute([c])


def test_reciprocal():
    # 1/(2 + x) = 1/2 - x/4 + x^2/8 - ...
    s = MultiSeries(1, 4, {(0,): 2, (1,): 1})
    inv = s.reciprocal()
    prod = s * inv
    assert prod == MultiSeries.constant(1, 4, 1)
    assert inv.coeff((1,)) == ec(Fraction(-1, 4))


def test_euler_derivative():
    s = MultiSeries(1, 4, {(1,): 1, (3,): 2})
    assert s.euler_derivative() == MultiSeries(1, 4, {(1,): 1, (3,): 6})
