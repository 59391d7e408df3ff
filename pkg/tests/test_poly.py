import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from syzcert.errors import BadRange, DegreeMismatch, NotHomogeneous, PolySyntaxError
from syzcert.poly import (
    HomPoly,
    Monomial,
    X,
    Y,
    Z,
    add,
    derivative,
    eval_point,
    gij,
    monomial_basis,
    mul,
    parse_poly,
    scale,
)
from strategies import hom_polys


def test_parse_free_quintic():
    f = parse_poly("x^5+x^2*y^3+y^4*z")
    assert f.degree == 5
    assert len(f.terms) == 3
    assert f.coefficient((2, 3, 0)) == 1


def test_parse_cancellation_keeps_degree():
    f = parse_poly("x-x")
    assert f.is_zero() and f.degree == 1


def test_parse_rejects_mixed_degrees():
    with pytest.raises(NotHomogeneous):
        parse_poly("x^2+y")


@pytest.mark.parametrize("text", ["x^", "x**", "(x+y", "x y", "2*", "x^y", "", "x+*y", "w"])
def test_parse_rejects_malformed(text):
    with pytest.raises(PolySyntaxError):
        parse_poly(text)


def test_parse_parentheses_and_powers():
    assert parse_poly("(x-y)^2") == X * X - (X * Y).scale(2) + Y * Y
    assert parse_poly("-3*x*(y+z)") == (X * Y + X * Z).scale(-3)


def test_parse_rational_coefficients():
    f = parse_poly("x^2/5+3/4*y*z")
    assert f.coefficient((2, 0, 0)) == Fraction(1, 5)
    assert f.coefficient((0, 1, 1)) == Fraction(3, 4)


def test_derivatives_of_free_quintic():
    f = parse_poly("x^5+x^2*y^3+y^4*z")
    # term-by-term differentiation
    assert derivative(f, "z") == parse_poly("y^4")
    assert derivative(f, "y") == parse_poly("3*x^2*y^2+4*y^3*z")
    assert derivative(f, "x") == parse_poly("5*x^4+2*x*y^3")
    assert derivative(f, "z").degree == 4


def test_derivative_of_linear_form_is_constant():
    assert derivative(X.scale(3) + Y, "x") == HomPoly.constant(3)


def test_mul_add_scale():
    assert mul(X, Y) == HomPoly.monomial((1, 1, 0))
    s = add(X * X, -(X * X))
    assert s.is_zero() and s.degree == 2
    assert scale(X + Y, Fraction(1, 2)).coefficient((0, 1, 0)) == Fraction(1, 2)
    with pytest.raises(DegreeMismatch):
        add(X, X * Y)


def test_gij_examples():
    assert gij(1, 1, "x", "y") == X - Y
    # (x-y)(x-2y) = x^2 - 3xy + 2y^2
    assert gij(1, 2, "x", "y") == parse_poly("x^2-3*x*y+2*y^2")
    # (x-2z)(x-3z) = x^2 - 5xz + 6z^2
    assert gij(2, 3, "x", "z") == parse_poly("x^2-5*x*z+6*z^2")
    assert mul(gij(1, 1, "x", "y"), gij(2, 2, "x", "y")) == gij(1, 2, "x", "y")


def test_gij_bad_range():
    with pytest.raises(BadRange):
        gij(3, 2, "x", "y")
    with pytest.raises(ValueError):
        gij(1, 2, "x", "x")


@pytest.mark.parametrize("i,j", [(1, 1), (1, 4), (2, 5), (3, 3)])
def test_gij_roots_and_degree(i, j):
    g = gij(i, j, "x", "z")
    assert g.degree == j - i + 1
    for k in range(i, j + 1):
        assert g.eval_point((k, 0, 1)) == 0
    assert g.eval_point((j + 1, 0, 1)) != 0


def test_gij_product_identity():
    for i in range(1, 8):
        for j in range(i, 8):
            for m in range(j + 1, 9):
                assert gij(i, j, "x", "y") * gij(j + 1, m, "x", "y") == gij(i, m, "x", "y")


def test_eval_point():
    assert eval_point(X - Y, (1, 1, 0)) == 0
    assert eval_point(gij(1, 2, "x", "y"), (2, 1, 0)) == 0
    assert eval_point(parse_poly("x^5+x^2*y^3+y^4*z"), (0, 0, 1)) == 0
    assert eval_point(parse_poly("x^5+x^2*y^3+y^4*z"), (1, 1, 1)) == 3


@pytest.mark.parametrize("k,n", [(0, 1), (1, 3), (2, 6), (4, 15), (10, 66)])
def test_monomial_basis_size(k, n):
    basis = monomial_basis(k)
    assert len(basis) == n
    assert all(m.degree == k for m in basis)
    assert len(set(basis)) == n


def test_monomial_basis_order():
    assert monomial_basis(0) == [Monomial(0, 0, 0)]
    assert monomial_basis(1) == [Monomial(1, 0, 0), Monomial(0, 1, 0), Monomial(0, 0, 1)]
    assert monomial_basis(2)[:3] == [Monomial(2, 0, 0), Monomial(1, 1, 0), Monomial(1, 0, 1)]


def test_terms_must_be_homogeneous():
    with pytest.raises(NotHomogeneous):
        HomPoly(2, {(1, 0, 0): 1})


def test_no_zero_coefficients_stored():
    f = HomPoly(1, {(1, 0, 0): 0, (0, 1, 0): 2})
    assert list(f.terms) == [Monomial(0, 1, 0)]


def test_divide_exact():
    f = gij(1, 3, "x", "y")
    assert f.divide_exact(X - Y) == gij(2, 3, "x", "y")
    with pytest.raises(ArithmeticError):
        f.divide_exact(X - Z)


def test_euler_relation_seeded_sweep():
    rng = random.Random(2024)
    for d in range(1, 13):
        basis = monomial_basis(d)
        for _ in range(100):
            terms = {rng.choice(basis): Fraction(rng.randint(-20, 20), rng.randint(1, 5)) for _ in range(6)}
            f = HomPoly(d, terms)
            fx, fy, fz = f.gradient()
            assert X * fx + Y * fy + Z * fz == f.scale(d)


@given(hom_polys(min_degree=1))
def test_euler_relation_property(f):
    fx, fy, fz = f.gradient()
    assert X * fx + Y * fy + Z * fz == f.scale(f.degree)


@given(hom_polys())
def test_print_parse_round_trip(f):
    assert parse_poly(f.to_text()) == f


@given(hom_polys(max_degree=4), hom_polys(max_degree=4))
def test_mul_degree_and_commutativity(f, g):
    assert (f * g).degree == f.degree + g.degree
    assert f * g == g * f


@given(hom_polys(min_degree=1, max_degree=5), st.sampled_from("xyz"))
def test_derivative_is_linear_and_lowers_degree(f, axis):
    g = f.scale(3) + f
    assert derivative(g, axis) == derivative(f, axis).scale(4)
    assert derivative(f, axis).degree == f.degree - 1


def test_homogeneity_preserved_by_operations():
    rng = random.Random(7)
    for _ in range(50):
        d = rng.randint(1, 5)
        basis = monomial_basis(d)
        f = HomPoly(d, {rng.choice(basis): rng.randint(-3, 3) for _ in range(4)})
        for g in (f + f, f * f, f.scale(5), f.derivative("y")):
            assert all(sum(m) == g.degree for m in g.terms)
