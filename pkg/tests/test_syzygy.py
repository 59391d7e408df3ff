from fractions import Fraction

import pytest

from syzcert import families as fam
from syzcert.errors import DegreeMismatch, DegreeSumMismatch, NonTrivialityError, NotASyzygy
from syzcert.milnor import hilbert_jacobian_quotient
from syzcert.poly import HomPoly, X, Y, Z, parse_poly
from syzcert.syzygy import (
    Syzygy,
    ar_dimension,
    ar_space,
    bookkeeping_dimension,
    free_ar_dimension,
    koszul_relations,
    mdr,
    saito_check,
    st_freeness,
    verify_second_order_relation,
    verify_syzygy,
)


def syz(a, b, c):
    return Syzygy(parse_poly(a), parse_poly(b), parse_poly(c))


RHO1 = ("0*x^2", "y^2", "-(3*x^2+4*y*z)")
RHO2 = ("9*y^2", "-15*x^2+20*y*z", "-(18*x*y+80*z^2)")


def test_ar_space_dimensions_free_quintic(free_quintic):
    # kernel solves at m = 0..3
    assert [len(ar_space(free_quintic, m)) for m in range(4)] == [0, 0, 2, 6]


def test_ar_space_fermat_quartic():
    f = parse_poly("x^4+y^4+z^4")
    assert ar_space(f, 2) == []
    basis = ar_space(f, 3)
    assert len(basis) == 3
    for s in basis:
        assert verify_syzygy(f, s)


def test_ar_space_elements_verify(free_quintic):
    for m in range(5):
        for s in ar_space(free_quintic, m):
            assert s.degree == m
            assert verify_syzygy(free_quintic, s)
            first = next(v for v in s.to_vector() if v)
            assert first == 1


def test_ar_space_canonical(free_quintic):
    assert ar_space(free_quintic, 3) == ar_space(free_quintic, 3)


@pytest.mark.parametrize(
    "text,expected",
    [("x^5+x^2*y^3+y^4*z", 2), ("x^5+x^4*y+y^4*z", 2), ("x^4+y^4+z^4", 3), ("x*y*z", 1), ("x*y*(x+y)", 0)],
)
def test_mdr_examples(text, expected):
    f = parse_poly(text)
    assert mdr(f) == expected
    assert mdr(f, modp=None) == expected


def test_mdr_bounded_by_d_minus_1():
    for text in ["x^3+y^3+z^3", "x^5+y^5+z^5", "x^2*y+y^2*z+z^2*x"]:
        f = parse_poly(text)
        assert mdr(f) <= f.degree - 1


def test_verify_syzygy_examples(free_quintic):
    assert verify_syzygy(free_quintic, syz(*RHO1))
    assert verify_syzygy(free_quintic, syz(*RHO2))
    fx, fy, fz = free_quintic.gradient()
    assert verify_syzygy(free_quintic, Syzygy(fy, -fx, HomPoly.zero(4)))
    assert not verify_syzygy(free_quintic, syz("0*x^2", "y^2", "-(3*x^2+5*y*z)"))


def test_koszul_relations_verify(free_quintic):
    for s in koszul_relations(free_quintic):
        assert verify_syzygy(free_quintic, s)


def test_syzygy_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        Syzygy(X, Y * Y, Z)


def test_saito_check_free_quintic(free_quintic):
    res = saito_check(free_quintic, syz(*RHO1), syz(*RHO2))
    assert res.passes
    # determinant expands to -45 f
    assert res.scalar == -45
    assert res.determinant == free_quintic.scale(-45)


def test_saito_check_repeated_row(free_quintic):
    r1 = syz(*RHO1)
    res = saito_check(free_quintic, r1, r1)
    assert not res.passes and res.determinant.is_zero()


def test_saito_check_errors(free_quintic):
    bogus = syz("x^2", "0*x^2", "0*x^2")
    with pytest.raises(NotASyzygy):
        saito_check(free_quintic, syz(*RHO1), bogus)
    with pytest.raises(DegreeSumMismatch):
        saito_check(free_quintic, syz(*RHO1), syz(*RHO1).times(Y))


def test_saito_thm11_d7():
    f, _ = fam.thm11_curve(7, 2)
    r1, r2 = fam.thm11_syzygies(7, 2)
    assert (r1.degree, r2.degree) == (2, 4)
    res = saito_check(f, r1, r2)
    assert res.passes and res.scalar != 0


def test_st_freeness(free_quintic):
    r1, r2 = syz(*RHO1), syz(*RHO2)
    assert st_freeness(free_quintic, r1, r2) == (2, 2)
    assert st_freeness(free_quintic, r2, r1) == (2, 2)
    # a shifted multiple is dependent (and also exceeds the degree bound)
    assert st_freeness(free_quintic, r1, r1.times(Y)) is None
    assert st_freeness(free_quintic, r1, r1.scale(3)) is None
    k1, k2, _ = koszul_relations(free_quintic)
    assert st_freeness(free_quintic, k1, k2) is None
    with pytest.raises(NotASyzygy):
        st_freeness(free_quintic, r1, syz("x^2", "0*x^2", "0*x^2"))


def test_second_order_relation_thm31_d5():
    w = fam.thm31_syzygies(5, 2)
    assert w.q == Fraction(1, 5)
    coeffs = (parse_poly("-x^2/5"), Z, Y)
    assert verify_second_order_relation(w.r1, w.r2, w.r3, coeffs)
    # r3 from expanding the closed form at d = 5, d1 = 2
    expected_r3 = syz("x^3/5+y^2*z", "-(x^3+4/5*x^2*y+5*y^2*z)", "16/5*x^2*z+20*y*z^2")
    assert w.r3 == expected_r3


def test_second_order_relation_rejects_zero_and_detects_breakage():
    w = fam.thm31_syzygies(5, 2)
    with pytest.raises(NonTrivialityError):
        verify_second_order_relation(w.r1, w.r2, w.r3, (HomPoly.zero(2), HomPoly.zero(1), HomPoly.zero(1)))
    broken = Syzygy(w.r3.a + parse_poly("x^3"), w.r3.b, w.r3.c)
    assert not verify_second_order_relation(w.r1, w.r2, broken, w.coeffs)
    with pytest.raises(DegreeMismatch):
        verify_second_order_relation(w.r1, w.r2, w.r3, (X, Z, Y))


FAMILY_SAMPLE = [
    fam.thm11_curve(6, 2)[0],
    fam.thm11_curve(9, 3)[0],
    fam.thm31_curve(7, 3)[0],
    fam.thm12_poly(6, 2),
    fam.thm34_poly(3, 4),
    fam.rmk32_curve(3, "odd")[0],
]


@pytest.mark.parametrize("f", FAMILY_SAMPLE, ids=lambda f: f"d{f.degree}")
def test_dimension_bookkeeping(f):
    d = f.degree
    for m in range(d + 1):
        assert ar_dimension(f, m) == bookkeeping_dimension(d, m, hilbert_jacobian_quotient(f, m + d - 1))


def test_free_resolution_dimension_formula():
    for d, d1 in [(5, 2), (7, 2), (8, 3), (9, 4)]:
        f, pred = fam.thm11_curve(d, d1)
        e1, e2 = pred.exponents
        for m in range(d + 1):
            assert ar_dimension(f, m) == free_ar_dimension(m, e1, e2)
