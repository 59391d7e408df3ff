"""Explicit curve and arrangement families with their predicted certificates.

Each constructor returns the object together with a
:class:`PredictedCertificate`, so that verification is a plain comparison
with what :func:`syzcert.certifier.classify` computes.

Curve families (all cuspidal with a point of multiplicity d-1 at (0:0:1)):

* ``thm11``       x^d + x^d1 y^(d2+1) + y^(d-1) z, free (d1, d2), d2 = d-1-d1
* ``thm31``       x^d + x^(d2+1) y^(d1-1) + y^(d-1) z, nearly free (d1, d2), d2 = d-d1
* ``rmk32_even``  x^2k + x^k y^k + y^(2k-1) z, nearly free (k, k)
* ``rmk32_odd``   x^(2k+1) + x^(k+1) y^k + y^2k z, nearly free (k, k+1)
* ``cor33``       x^d + x^a y^b + y^(d-1) z with a + b = d

Arrangement families:

* ``thm12``  x * g_{1,d1}(x,y) * g_{1,d2}(x,z), free (d1, d2)
* ``thm34``  x (y - z) g_{1,d1-1}(x,y) g_{2,d2}(x,z), nearly free (d1, d2)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from .arrangements import LineArrangement, cross, defining_poly
from .errors import BadParams, UnrecognizedFamily
from .poly import HomPoly, X, Y, Z, gij, product
from .syzygy import Syzygy, ar_space, saito_check, verify_syzygy

FAMILY_IDS = ("thm11", "thm12", "thm31", "rmk32_even", "rmk32_odd", "cor33", "thm34")
CUSPIDAL_FAMILIES = ("thm11", "thm31", "rmk32_even", "rmk32_odd", "cor33")
ARRANGEMENT_FAMILIES = ("thm12", "thm34")

FAMILY_PARAMS = {
    "thm11": ("d", "d1"),
    "thm12": ("d", "d1"),
    "thm31": ("d", "d1"),
    "rmk32_even": ("k",),
    "rmk32_odd": ("k",),
    "cor33": ("d", "a"),
    "thm34": ("d1", "d2"),
}


def free_tau(d: int, d1: int, d2: int) -> int:
    return (d - 1) ** 2 - d1 * d2


def nearly_free_tau(d: int, d1: int, d2: int) -> int:
    return (d - 1) ** 2 - d1 * (d2 - 1) - 1


@dataclass(frozen=True)
class PredictedCertificate:
    kind: str  # "free" or "nearly_free"
    exponents: Tuple[int, int]
    tau: int
    degree: int

    def __post_init__(self):
        s = sum(self.exponents)
        if self.kind == "free" and s != self.degree - 1:
            raise ValueError("free exponents must sum to d-1")
        if self.kind == "nearly_free" and s != self.degree:
            raise ValueError("nearly free exponents must sum to d")

    @classmethod
    def free(cls, d: int, d1: int, d2: int) -> "PredictedCertificate":
        return cls("free", (d1, d2), free_tau(d, d1, d2), d)

    @classmethod
    def nearly_free(cls, d: int, d1: int, d2: int) -> "PredictedCertificate":
        return cls("nearly_free", (d1, d2), nearly_free_tau(d, d1, d2), d)

    def as_dict(self) -> dict:
        return {"kind": self.kind, "exponents": list(self.exponents), "tau": self.tau}


@dataclass(frozen=True)
class FamilySpec:
    family_id: str
    params: Dict[str, int] = field(hash=False)

    def label(self) -> str:
        return self.family_id + "(" + ",".join(f"{k}={v}" for k, v in self.params.items()) + ")"


@dataclass(frozen=True)
class FamilyInstance:
    spec: FamilySpec
    poly: HomPoly
    prediction: PredictedCertificate
    arrangement: Optional[LineArrangement] = None


def _curve(d: int, a: int, b: int) -> HomPoly:
    # x^d + x^a y^b + y^(d-1) z; repeated monomials are summed
    return HomPoly(d, [((d, 0, 0), 1), ((a, b, 0), 1), ((0, d - 1, 1), 1)])


# -- free cuspidal family ---------------------------------------------------

def _check_thm11(d: int, d1: int) -> int:
    if not (2 <= d1 and 2 * d1 < d):
        raise BadParams(f"thm11 needs 2 <= d1 < d/2, got d={d}, d1={d1}")
    return d - 1 - d1


def thm11_curve(d: int, d1: int) -> Tuple[HomPoly, PredictedCertificate]:
    d2 = _check_thm11(d, d1)
    return _curve(d, d1, d2 + 1), PredictedCertificate.free(d, d1, d2)


def thm11_first_syzygy(d: int, d1: int) -> Syzygy:
    """(0, y^d1, -((d2+1) x^d1 + (d-1) y^(d1-1) z)), of degree d1."""
    d2 = _check_thm11(d, d1)
    c = HomPoly(d1, {(d1, 0, 0): d2 + 1, (0, d1 - 1, 1): d - 1})
    return Syzygy(HomPoly.zero(d1), HomPoly.monomial((0, d1, 0)), -c)


def thm11_syzygies(d: int, d1: int) -> Tuple[Syzygy, Syzygy]:
    """The explicit degree-d1 relation and a degree-d2 companion from the kernel.

    The companion is the first canonical kernel vector of AR(f)_{d2} whose
    determinant against the first relation is nonzero.
    """
    f, _ = thm11_curve(d, d1)
    d2 = d - 1 - d1
    rho1 = thm11_first_syzygy(d, d1)
    for cand in ar_space(f, d2):
        try:
            res = saito_check(f, rho1, cand)
        except ValueError:
            continue
        if res.passes:
            return rho1, cand
    raise AssertionError(f"no degree-{d2} companion found for thm11(d={d}, d1={d1})")


def thm11_companion_formula(d: int, d1: int) -> Syzygy:
    """Closed-form degree-d2 companion.

    a = (d2+1)^2 y^d2
    b = -d ((d2+1) x^d2 - (d-1) x^(d2-d1) y^(d1-1) z)
    c = -(d1 (d2+1)^2 x^(d1-1) y^(d2-d1+1) + d (d-1)^2 x^(d2-d1) y^(d1-2) z^2)
    """
    d2 = _check_thm11(d, d1)
    a = HomPoly(d2, {(0, d2, 0): (d2 + 1) ** 2})
    b = HomPoly(d2, {(d2, 0, 0): -d * (d2 + 1), (d2 - d1, d1 - 1, 1): d * (d - 1)})
    c = HomPoly(d2, {(d1 - 1, d2 - d1 + 1, 0): -d1 * (d2 + 1) ** 2, (d2 - d1, d1 - 2, 2): -d * (d - 1) ** 2})
    return Syzygy(a, b, c)


def thm11_printed_companion_audit(d: int, d1: int) -> dict:
    """Audit of the uncorrected closed form for the degree-d2 companion.

    Without correction, the f_y coefficient carries (d-1) x^(d2-d1) y^(d1-1),
    of degree d2-1 beside siblings of degree d2, so the triple is not
    homogeneous.  Multiplying that term by z restores homogeneity; the audit
    reports the offending degrees and whether the corrected triple is an
    exact relation that passes the determinant test with the first one.
    """
    d2 = _check_thm11(d, d1)
    f, _ = thm11_curve(d, d1)
    printed_degrees = sorted({d2, (d2 - d1) + (d1 - 1)})
    corrected = thm11_companion_formula(d, d1)
    ok = verify_syzygy(f, corrected)
    saito = saito_check(f, thm11_first_syzygy(d, d1), corrected) if ok else None
    return {
        "printed_fy_term_degrees": printed_degrees,
        "printed_homogeneous": len(printed_degrees) == 1,
        "z_corrected_verifies": ok,
        "z_corrected_saito_passes": bool(saito and saito.passes),
    }


# -- free arrangement family ------------------------------------------------

def _check_thm12(d: int, d1: int) -> int:
    if not (d >= 3 and 1 <= d1 and 2 * d1 <= d - 1):
        raise BadParams(f"thm12 needs d >= 3 and 1 <= d1 <= (d-1)/2, got d={d}, d1={d1}")
    return d - 1 - d1


def thm12_arrangement(d: int, d1: int) -> Tuple[LineArrangement, PredictedCertificate]:
    d2 = _check_thm12(d, d1)
    forms = [(1, 0, 0)] + [(1, -i, 0) for i in range(1, d1 + 1)] + [(1, 0, -j) for j in range(1, d2 + 1)]
    return LineArrangement.from_forms(forms), PredictedCertificate.free(d, d1, d2)


def thm12_poly(d: int, d1: int) -> HomPoly:
    """x * g_{1,d1}(x, y) * g_{1,d2}(x, z), built from the g_{i,j} products."""
    d2 = _check_thm12(d, d1)
    return X * gij(1, d1, "x", "y") * gij(1, d2, "x", "z")


# -- nearly free cuspidal family --------------------------------------------

def _check_thm31(d: int, d1: int) -> int:
    if not (1 <= d1 and 2 * d1 <= d and d >= 2):
        raise BadParams(f"thm31 needs 1 <= d1 <= d/2, got d={d}, d1={d1}")
    return d - d1


def thm31_curve(d: int, d1: int) -> Tuple[HomPoly, PredictedCertificate]:
    d2 = _check_thm31(d, d1)
    return _curve(d, d2 + 1, d1 - 1), PredictedCertificate.nearly_free(d, d1, d2)


@dataclass(frozen=True)
class NearlyFreeWitness:
    r1: Syzygy
    r2: Syzygy
    r3: Syzygy
    coeffs: Tuple[HomPoly, HomPoly, HomPoly]
    q: Fraction


def thm31_syzygies(d: int, d1: int) -> NearlyFreeWitness:
    """Three generators of degrees d1, d2, d2 and their second-order relation.

    With k = d1 - 1 and q = (d-k) k / (d (d-1)) the relation is
    -q x^(d2-d1+1) r1 + z r2 + k y r3 = 0.
    """
    d2 = _check_thm31(d, d1)
    if d1 < 2:
        raise BadParams("explicit nearly free witnesses need d1 >= 2")
    k = d1 - 1
    q = Fraction((d - k) * k, d * (d - 1))
    r1 = Syzygy(
        HomPoly(k + 1, {(1, k, 0): k}),
        HomPoly(k + 1, {(k, 1, 0): -d, (0, k + 1, 0): -(d - k)}),
        HomPoly(k + 1, {(k, 0, 1): d * (d - 1), (0, k, 1): (d - 1) * (d - k)}),
    )
    r2 = Syzygy(
        HomPoly(d2, {(0, d2, 0): -k}),
        HomPoly(d2, {(k - 1, d - 2 * k, 0): d}),
        HomPoly(d2, {(d2, 0, 0): k * (d - k), (k - 1, d - 2 * k - 1, 1): -d * (d - 1)}),
    )
    a = HomPoly(d2, {(d - 2 * k, k - 1, 0): q, (0, d - k - 2, 1): 1})
    b = HomPoly(d2, {(d - k - 1, 0, 0): q * d, (d - 2 * k - 1, k, 0): q * (d - k), (k - 1, d - 2 * k - 1, 1): d}).scale(
        Fraction(-1, k)
    )
    c = HomPoly(d2, {(d - 2 * k - 1, k - 1, 1): q * (d - k), (k - 1, d - 2 * k - 2, 2): d}).scale(Fraction(d - 1, k))
    r3 = Syzygy(a, b, c)
    e = d2 - d1 + 1
    coeffs = (HomPoly(e, {(e, 0, 0): -q}), Z, Y.scale(k))
    return NearlyFreeWitness(r1, r2, r3, coeffs, q)


# -- special nearly free curves and the combined classification -------------

def rmk32_curve(k: int, parity: str) -> Tuple[HomPoly, PredictedCertificate]:
    if parity == "even":
        if k < 2:
            raise BadParams("even special curve needs k >= 2")
        d = 2 * k
        return _curve(d, k, k), PredictedCertificate.nearly_free(d, k, k)
    if parity == "odd":
        if k < 1:
            raise BadParams("odd special curve needs k >= 1")
        d = 2 * k + 1
        return _curve(d, k + 1, k), PredictedCertificate.nearly_free(d, k, k + 1)
    raise BadParams(f"parity must be 'even' or 'odd', got {parity!r}")


def cor33_exponents(d: int, a: int) -> Tuple[str, Tuple[int, int]]:
    b = d - a
    if a < b:
        return "free", (a, b - 1)
    if a >= b + 2:
        return "nearly_free", (b + 1, a - 1)
    return "nearly_free", (b, a)


def cor33_predict(d: int, a: int) -> Tuple[HomPoly, PredictedCertificate]:
    b = d - a
    if not (a >= 2 and b >= 1):
        raise BadParams(f"cor33 needs a >= 2 and b = d - a >= 1, got d={d}, a={a}")
    kind, (e1, e2) = cor33_exponents(d, a)
    pred = PredictedCertificate.free(d, e1, e2) if kind == "free" else PredictedCertificate.nearly_free(d, e1, e2)
    return _curve(d, a, b), pred


def cor33_collision_pairs(d: int) -> List[Tuple[Tuple[int, int], Tuple[int, int]]]:
    """The two (a, b) pairs of degree d that share exponents."""
    h = d // 2
    if d % 2 == 0:
        pairs = [(h, h), (h + 1, h - 1)]
    else:
        pairs = [(h + 1, h), (h + 2, h - 1)]
    if min(pairs[1][0], pairs[0][0]) < 2 or pairs[1][1] < 1:
        return []
    return [tuple(pairs)]


# -- nearly free arrangement family -----------------------------------------

def _check_thm34(d1: int, d2: int) -> int:
    if not (2 <= d1 <= d2):
        raise BadParams(f"thm34 needs 2 <= d1 <= d2, got d1={d1}, d2={d2}")
    return d1 + d2


def thm34_arrangement(d1: int, d2: int) -> Tuple[LineArrangement, PredictedCertificate]:
    d = _check_thm34(d1, d2)
    forms = (
        [(1, 0, 0), (0, 1, -1)]
        + [(1, -i, 0) for i in range(1, d1)]
        + [(1, 0, -j) for j in range(2, d2 + 1)]
    )
    return LineArrangement.from_forms(forms), PredictedCertificate.nearly_free(d, d1, d2)


def thm34_poly(d1: int, d2: int) -> HomPoly:
    _check_thm34(d1, d2)
    return X * (Y - Z) * gij(1, d1 - 1, "x", "y") * gij(2, d2, "x", "z")


def thm34_log_parts(d1: int, d2: int) -> Tuple[HomPoly, HomPoly]:
    """(P, Q) with f_y Q = f P, Q = (y - z) prod_{i<d1} (x - i y)."""
    f = thm34_poly(d1, d2)
    factors = [Y - Z] + [X - Y.scale(i) for i in range(1, d1)]
    Q = product(factors)
    P = (f.derivative("y") * Q).divide_exact(f)
    for L in factors:
        if _vanishes_on_line(P, L):
            raise AssertionError(f"P shares the factor {L} with Q")
    return P, Q


def _vanishes_on_line(P: HomPoly, L: HomPoly) -> bool:
    # P restricted to L is a binary form of degree deg P, so deg P + 2 points decide it
    ln = tuple(L.coefficient(m) for m in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    pts = [c for c in (cross(ln, e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))) if any(c)]
    u = pts[0]
    v = next(w for w in pts[1:] if any(cross(u, w)))
    samples = [v] + [tuple(u[i] + t * v[i] for i in range(3)) for t in range(P.degree + 1)]
    return all(P.eval_point(pt) == 0 for pt in samples)


def thm34_syzygy_R1(d1: int, d2: int) -> Syzygy:
    """(x P, y P - d Q, z P), a relation of degree d1."""
    d = _check_thm34(d1, d2)
    P, Q = thm34_log_parts(d1, d2)
    return Syzygy(X * P, Y * P - Q.scale(d), Z * P)


# -- dispatch -----------------------------------------------------------------

def build_family(family_id: str, params: Dict[str, int]) -> FamilyInstance:
    if family_id not in FAMILY_IDS:
        raise UnrecognizedFamily(f"unknown family {family_id!r}; expected one of {', '.join(FAMILY_IDS)}")
    needed = FAMILY_PARAMS[family_id]
    missing = [p for p in needed if params.get(p) is None]
    if missing:
        raise BadParams(f"family {family_id} needs parameter(s) {', '.join(missing)}")
    p = {k: int(params[k]) for k in needed}
    spec = FamilySpec(family_id, p)
    if family_id == "thm11":
        f, pred = thm11_curve(p["d"], p["d1"])
        return FamilyInstance(spec, f, pred)
    if family_id == "thm31":
        f, pred = thm31_curve(p["d"], p["d1"])
        return FamilyInstance(spec, f, pred)
    if family_id == "rmk32_even":
        f, pred = rmk32_curve(p["k"], "even")
        return FamilyInstance(spec, f, pred)
    if family_id == "rmk32_odd":
        f, pred = rmk32_curve(p["k"], "odd")
        return FamilyInstance(spec, f, pred)
    if family_id == "cor33":
        f, pred = cor33_predict(p["d"], p["a"])
        return FamilyInstance(spec, f, pred)
    if family_id == "thm12":
        A, pred = thm12_arrangement(p["d"], p["d1"])
    else:
        A, pred = thm34_arrangement(p["d1"], p["d2"])
    return FamilyInstance(spec, defining_poly(A), pred, A)


def family_parameters(family_id: str, max_d: int) -> List[Dict[str, int]]:
    """Every admissible parameter set of the family with degree <= max_d."""
    out: List[Dict[str, int]] = []
    if family_id == "thm11":
        out = [{"d": d, "d1": d1} for d in range(5, max_d + 1) for d1 in range(2, d) if 2 * d1 < d]
    elif family_id == "thm12":
        out = [{"d": d, "d1": d1} for d in range(3, max_d + 1) for d1 in range(1, d) if 2 * d1 <= d - 1]
    elif family_id == "thm31":
        out = [{"d": d, "d1": d1} for d in range(3, max_d + 1) for d1 in range(1, d) if 2 * d1 <= d]
    elif family_id == "rmk32_even":
        out = [{"k": k} for k in range(2, max_d // 2 + 1)]
    elif family_id == "rmk32_odd":
        out = [{"k": k} for k in range(1, (max_d - 1) // 2 + 1)]
    elif family_id == "cor33":
        out = [{"d": d, "a": a} for d in range(3, max_d + 1) for a in range(2, d)]
    elif family_id == "thm34":
        out = [{"d1": d1, "d2": d2} for d1 in range(2, max_d) for d2 in range(d1, max_d - d1 + 1)]
    else:
        raise UnrecognizedFamily(f"unknown family {family_id!r}")
    return out


def family_degree(family_id: str, params: Dict[str, int]) -> int:
    if family_id == "thm34":
        return params["d1"] + params["d2"]
    if family_id == "rmk32_even":
        return 2 * params["k"]
    if family_id == "rmk32_odd":
        return 2 * params["k"] + 1
    return params["d"]
