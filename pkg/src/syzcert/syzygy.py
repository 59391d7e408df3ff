"""Jacobian relations of a plane curve, degree by degree.

The graded piece AR(f)_m is the kernel of the linear map

    (a, b, c) in S_m^3  ->  a f_x + b f_y + c f_z in S_{m+d-1},

solved exactly with :mod:`syzcert.linalg`.  No Groebner bases are used.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .errors import DegreeMismatch, DegreeSumMismatch, NonTrivialityError, NotASyzygy
from .poly import HomPoly, Rational, X, Y, Z, monomial_basis, monomial_index


@dataclass(frozen=True)
class Syzygy:
    """A triple (a, b, c) of polynomials of one common degree."""

    a: HomPoly
    b: HomPoly
    c: HomPoly

    def __post_init__(self):
        if not (self.a.degree == self.b.degree == self.c.degree):
            raise DegreeMismatch(
                f"syzygy entries have degrees {self.a.degree}, {self.b.degree}, {self.c.degree}"
            )

    @classmethod
    def zero(cls, m: int) -> "Syzygy":
        z = HomPoly.zero(m)
        return cls(z, z, z)

    @classmethod
    def from_vector(cls, m: int, vec: Sequence[Rational]) -> "Syzygy":
        n = len(monomial_basis(m))
        if len(vec) != 3 * n:
            raise ValueError("vector length must be 3*C(m+2,2)")
        return cls(*(HomPoly.from_vector(m, vec[i * n:(i + 1) * n]) for i in range(3)))

    @property
    def degree(self) -> int:
        return self.a.degree

    @property
    def components(self) -> Tuple[HomPoly, HomPoly, HomPoly]:
        return (self.a, self.b, self.c)

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero() and self.c.is_zero()

    def to_vector(self) -> List[Fraction]:
        return self.a.to_vector() + self.b.to_vector() + self.c.to_vector()

    def scale(self, c: Rational) -> "Syzygy":
        return Syzygy(self.a.scale(c), self.b.scale(c), self.c.scale(c))

    def times(self, h: HomPoly) -> "Syzygy":
        return Syzygy(h * self.a, h * self.b, h * self.c)

    def __add__(self, other: "Syzygy") -> "Syzygy":
        return Syzygy(self.a + other.a, self.b + other.b, self.c + other.c)

    def __sub__(self, other: "Syzygy") -> "Syzygy":
        return Syzygy(self.a - other.a, self.b - other.b, self.c - other.c)

    def normalized(self) -> "Syzygy":
        """Scale so the first nonzero coefficient (a, then b, then c) is 1."""
        for v in self.to_vector():
            if v:
                return self.scale(1 / v)
        return self

    def apply(self, f: HomPoly) -> HomPoly:
        fx, fy, fz = f.gradient()
        return self.a * fx + self.b * fy + self.c * fz

    def to_text(self) -> str:
        return f"({self.a.to_text()}, {self.b.to_text()}, {self.c.to_text()})"

    def as_dict(self) -> dict:
        return {"degree": self.degree, "a": self.a.to_text(), "b": self.b.to_text(), "c": self.c.to_text()}


def koszul_relations(f: HomPoly) -> Tuple[Syzygy, Syzygy, Syzygy]:
    fx, fy, fz = f.gradient()
    m = f.degree - 1
    z = HomPoly.zero(m)
    return (Syzygy(fy, -fx, z), Syzygy(fz, z, -fx), Syzygy(z, fz, -fy))


def jacobian_map_matrix(f: HomPoly, m: int) -> linalg.RationalMatrix:
    """Matrix of (a, b, c) -> a f_x + b f_y + c f_z on S_m^3.

    Columns: coefficients of a, then b, then c, each in graded-lex order.
    Rows: monomials of degree m + d - 1 in graded-lex order.
    """
    d = f.degree
    target = monomial_index(m + d - 1)
    src = monomial_basis(m)
    n = len(src)
    rows: List[Dict[int, Fraction]] = [dict() for _ in range(len(target))]
    for block, g in enumerate(f.gradient()):
        for j, mu in enumerate(src):
            col = block * n + j
            for t, c in g.items():
                rows[target[mu.times(t)]][col] = c
    return linalg.RationalMatrix.from_sparse(rows, 3 * n)


def _integer_jacobian_rows(f: HomPoly, m: int) -> Tuple[List[Dict[int, int]], int]:
    # column-scaled integer version; same kernel dimension, used for the mod-p screen
    d = f.degree
    target = monomial_index(m + d - 1)
    src = monomial_basis(m)
    n = len(src)
    rows: List[Dict[int, int]] = [dict() for _ in range(len(target))]
    for block, g in enumerate(f.gradient()):
        lcm = g.denominator_lcm()
        for j, mu in enumerate(src):
            col = block * n + j
            for t, c in g.items():
                rows[target[mu.times(t)]][col] = int(c * lcm)
    return rows, 3 * n


def ar_space(f: HomPoly, m: int) -> List[Syzygy]:
    """Canonical basis of AR(f)_m, each element normalized.

    Its length is 3*C(m+2,2) - C(m+d+1,2) + dim (S/J_f)_{m+d-1}.
    """
    if m < 0:
        return []
    M = jacobian_map_matrix(f, m)
    return [Syzygy.from_vector(m, v).normalized() for v in linalg.kernel_basis(M)]


def ar_dimension(f: HomPoly, m: int) -> int:
    if m < 0:
        return 0
    M = jacobian_map_matrix(f, m)
    return M.cols - linalg.rank(M)


def _kernel_empty_modp(f: HomPoly, m: int, p: int) -> bool:
    rows, cols = _integer_jacobian_rows(f, m)
    return linalg.rank_modp_sparse(rows, cols, p) == cols


def mdr(f: HomPoly, modp: Optional[int] = linalg.DEFAULT_PRIME) -> int:
    """Minimal degree of a nonzero Jacobian relation of ``f``.

    With ``modp`` set, degrees whose matrix has full column rank modulo that
    prime are skipped (full rank mod p implies full rank over Q); every other
    degree is decided by an exact rational rank.
    """
    d = f.degree
    if d < 2:
        raise ValueError("mdr needs degree >= 2")
    for m in range(d):
        if modp and _kernel_empty_modp(f, m, modp):
            continue
        if ar_dimension(f, m) > 0:
            return m
    raise AssertionError("Koszul relations guarantee a relation in degree d-1")


def verify_syzygy(f: HomPoly, s: Syzygy) -> bool:
    return s.apply(f).is_zero()


@dataclass(frozen=True)
class SaitoResult:
    passes: bool
    scalar: Fraction
    determinant: HomPoly


def saito_matrix_det(s1: Syzygy, s2: Syzygy) -> HomPoly:
    a1, b1, c1 = s1.components
    a2, b2, c2 = s2.components
    return X * (b1 * c2 - c1 * b2) - Y * (a1 * c2 - c1 * a2) + Z * (a1 * b2 - b1 * a2)


def saito_check(f: HomPoly, s1: Syzygy, s2: Syzygy) -> SaitoResult:
    """Determinant test with rows (x, y, z), s1, s2: passes iff det = c*f, c != 0."""
    d = f.degree
    if s1.degree + s2.degree != d - 1:
        raise DegreeSumMismatch(f"syzygy degrees {s1.degree}+{s2.degree} != d-1 = {d - 1}")
    for s in (s1, s2):
        if not verify_syzygy(f, s):
            raise NotASyzygy(f"{s.to_text()} is not a Jacobian relation of {f}")
    det = saito_matrix_det(s1, s2)
    if det.is_zero():
        return SaitoResult(False, Fraction(0), det)
    lm, lc = f.leading_term()
    c = det.coefficient(lm) / lc
    return SaitoResult(bool(c) and det == f.scale(c), c, det)


def is_polynomial_multiple(s1: Syzygy, s2: Syzygy) -> bool:
    """Whether s2 = h*s1 for some polynomial h of degree deg s2 - deg s1."""
    e = s2.degree - s1.degree
    if e < 0:
        return False
    if s1.is_zero():
        return s2.is_zero()
    hbasis = monomial_basis(e)
    target = monomial_index(s2.degree)
    n = len(target)
    rows: List[Dict[int, Fraction]] = [dict() for _ in range(3 * n)]
    rhs: List[Fraction] = [Fraction(0)] * (3 * n)
    for comp, (p, q) in enumerate(zip(s1.components, s2.components)):
        for j, mu in enumerate(hbasis):
            for t, c in p.items():
                rows[comp * n + target[mu.times(t)]][j] = c
        for t, c in q.items():
            rhs[comp * n + target[t]] = c
    A = linalg.RationalMatrix.from_sparse(rows, len(hbasis))
    return linalg.solvable(A, rhs)


def proportional_over_fractions(s1: Syzygy, s2: Syzygy) -> bool:
    """True iff the cross product s1 x s2 vanishes."""
    a1, b1, c1 = s1.components
    a2, b2, c2 = s2.components
    return (b1 * c2 - c1 * b2).is_zero() and (a1 * c2 - c1 * a2).is_zero() and (a1 * b2 - b1 * a2).is_zero()


def st_freeness(f: HomPoly, s1: Syzygy, s2: Syzygy) -> Optional[Tuple[int, int]]:
    """Exponents (d1, d2) if two independent relations with d1 + d2 <= d - 1 are given."""
    for s in (s1, s2):
        if not verify_syzygy(f, s):
            raise NotASyzygy(f"{s.to_text()} is not a Jacobian relation of {f}")
    if s1.degree > s2.degree:
        s1, s2 = s2, s1
    if s1.degree + s2.degree > f.degree - 1:
        return None
    if s1.is_zero() or s2.is_zero():
        return None
    if is_polynomial_multiple(s1, s2) or is_polynomial_multiple(s2, s1):
        return None
    if proportional_over_fractions(s1, s2):
        return None
    return (s1.degree, s2.degree)


def verify_second_order_relation(
    r1: Syzygy, r2: Syzygy, r3: Syzygy, coeffs: Sequence[HomPoly]
) -> bool:
    """Whether coeffs[0]*r1 + coeffs[1]*r2 + coeffs[2]*r3 vanishes componentwise."""
    if len(coeffs) != 3:
        raise ValueError("need three coefficients")
    if all(h.is_zero() for h in coeffs):
        raise NonTrivialityError("all-zero coefficient triple gives a vacuous relation")
    degrees = {h.degree + r.degree for h, r in zip(coeffs, (r1, r2, r3))}
    if len(degrees) != 1:
        raise DegreeMismatch(f"relation terms have degrees {sorted(degrees)}")
    total = r1.times(coeffs[0]) + r2.times(coeffs[1]) + r3.times(coeffs[2])
    return total.is_zero()


def free_ar_dimension(m: int, d1: int, d2: int) -> int:
    """dim AR(f)_m for a free curve with exponents (d1, d2)."""
    return _c2(m - d1 + 2) + _c2(m - d2 + 2)


def bookkeeping_dimension(d: int, m: int, hilbert_value: int) -> int:
    """3*C(m+2,2) - C(m+d+1,2) + dim (S/J_f)_{m+d-1}."""
    return 3 * comb(m + 2, 2) - comb(m + d + 1, 2) + hilbert_value


def _c2(n: int) -> int:
    return comb(n, 2) if n >= 2 else 0
