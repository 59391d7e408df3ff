"""Free / nearly free classification and family verification sweeps."""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import families as fam
from . import linalg
from .arrangements import (
    LineArrangement,
    c2_log_tangent,
    defining_poly,
    euler_complement,
    intersection_census,
    pair_count_holds,
    points_on_line,
    random_arrangement,
    tjurina_from_multiplicities,
    tjurina_from_nj,
)
from .errors import NotReduced, UnrecognizedFamily
from .milnor import DEFAULT_CAP_MULT, total_tjurina
from .poly import HomPoly, Monomial
from .syzygy import (
    mdr,
    saito_check,
    st_freeness,
    verify_second_order_relation,
    verify_syzygy,
)

FREE, NEARLY_FREE, OTHER = "free", "nearly_free", "other"

CERTIFICATE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "Certificate",
    "type": "object",
    "required": [
        "degree",
        "mdr",
        "tau",
        "kind",
        "exponents",
        "cone",
        "witness_syzygy_degrees",
        "hilbert_stabilized_at",
    ],
    "additionalProperties": False,
    "properties": {
        "degree": {"type": "integer"},
        "mdr": {"type": "integer"},
        "tau": {"type": "integer"},
        "kind": {"enum": [FREE, NEARLY_FREE, OTHER]},
        "exponents": {
            "oneOf": [
                {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
                {"type": "null"},
            ]
        },
        "cone": {"type": "boolean"},
        "witness_syzygy_degrees": {"type": "array", "items": {"type": "integer"}},
        "hilbert_stabilized_at": {"type": "integer"},
    },
}


@dataclass(frozen=True)
class Certificate:
    degree: int
    mdr: int
    tau: int
    kind: str
    exponents: Optional[Tuple[int, int]]
    cone: bool
    witness_syzygy_degrees: Tuple[int, ...]
    hilbert_stabilized_at: int

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "mdr": self.mdr,
            "tau": self.tau,
            "kind": self.kind,
            "exponents": list(self.exponents) if self.exponents else None,
            "cone": self.cone,
            "witness_syzygy_degrees": list(self.witness_syzygy_degrees),
            "hilbert_stabilized_at": self.hilbert_stabilized_at,
        }

    def matches(self, pred: fam.PredictedCertificate) -> bool:
        return self.kind == pred.kind and self.exponents == tuple(pred.exponents) and self.tau == pred.tau


def maximal_tau(d: int, r: int) -> int:
    """(d-1)^2 - r(d-1-r), the Tjurina number of a free curve with mdr r."""
    return (d - 1) ** 2 - r * (d - 1 - r)


def classify(f: HomPoly, modp: Optional[int] = linalg.DEFAULT_PRIME, cap_mult: int = DEFAULT_CAP_MULT) -> Certificate:
    """Decide free / nearly free / other from mdr(f) and tau(f).

    Free(r, d-1-r) when 2r <= d-1 and tau equals the maximal value, nearly
    free (r, d-r) when 2r <= d and tau is one below it, and ``other``
    otherwise.  A relation of degree 0 means a pencil of lines (a cone);
    it is reported as free with exponents (0, d-1) and ``cone=True``.
    """
    d = f.degree
    if d < 2:
        raise ValueError("classification needs degree >= 2")
    profile = total_tjurina(f, cap_mult)  # NonStabilized propagates
    tau = profile.tau
    r = mdr(f, modp)
    cone = r == 0
    if not cone and tau >= (d - 1) ** 2:
        raise NotReduced(f"tau = {tau} >= (d-1)^2 = {(d - 1) ** 2} without a degree-0 relation")
    T = maximal_tau(d, r)
    if 2 * r <= d - 1 and tau == T:
        kind, exps = FREE, (r, d - 1 - r)
    elif 2 * r <= d and tau == T - 1:
        kind, exps = NEARLY_FREE, (r, d - r)
    else:
        kind, exps = OTHER, None
    return Certificate(d, r, tau, kind, exps, cone, (r,), profile.stabilized_at)


# ---------------------------------------------------------------------------
# topology


@dataclass(frozen=True)
class TopologySummary:
    euler_complement: int
    milnor_fiber_b2: Optional[int] = None
    pi1_order: Optional[int] = None
    betti_complement: Optional[Tuple[int, int, int]] = None
    census_euler: Optional[int] = None

    def as_dict(self) -> dict:
        return {
            "euler_complement": self.euler_complement,
            "milnor_fiber_b2": self.milnor_fiber_b2,
            "pi1_order": self.pi1_order,
            "betti_complement": list(self.betti_complement) if self.betti_complement else None,
            "census_euler": self.census_euler,
        }


def multiplicity_at_001(f: HomPoly) -> int:
    """Order of vanishing of f at (0:0:1)."""
    return min(m.ex + m.ey for m in f.terms)


def complement_invariants(cert: Certificate, instance: fam.FamilyInstance) -> TopologySummary:
    """Closed-form invariants of the complement U = P^2 minus the curve.

    Cuspidal families (rational, one cusp, a point of multiplicity d-1):
    E(U) = 1, the Milnor fiber is a bouquet of d-1 two-spheres, and
    pi_1(U) = Z/d.  The free arrangement family has complement
    (C minus d1 points) x (C minus d2 points), hence Betti numbers
    (1, d1+d2, d1*d2); its Euler number is also recomputed from the census.
    """
    fid = instance.spec.family_id
    d = cert.degree
    if fid in fam.CUSPIDAL_FAMILIES:
        if multiplicity_at_001(instance.poly) != d - 1:
            raise UnrecognizedFamily("curve has no point of multiplicity d-1 at (0:0:1)")
        # E(F) = d * E(U) = d and F is a bouquet of S^2's
        return TopologySummary(euler_complement=1, milnor_fiber_b2=d - 1, pi1_order=d)
    if fid == "thm12":
        d1 = instance.spec.params["d1"]
        d2 = d - 1 - d1
        betti = (1, d1 + d2, d1 * d2)
        return TopologySummary(
            euler_complement=(1 - d1) * (1 - d2),
            betti_complement=betti,
            census_euler=euler_complement(instance.arrangement),
        )
    raise UnrecognizedFamily(f"no closed-form complement invariants for family {fid!r}")


# ---------------------------------------------------------------------------
# reports


@dataclass
class InstanceResult:
    label: str
    family_id: str
    params: Dict[str, int]
    checks: Dict[str, bool]
    predicted: Optional[dict] = None
    computed: Optional[dict] = None
    notes: List[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def failed_checks(self) -> List[str]:
        return [k for k, v in self.checks.items() if not v]

    def as_dict(self, timing: bool = False) -> dict:
        out = {
            "label": self.label,
            "family": self.family_id,
            "params": self.params,
            "passed": self.passed,
            "checks": self.checks,
            "predicted": self.predicted,
            "computed": self.computed,
            "notes": self.notes,
        }
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


@dataclass
class Report:
    family_id: str
    parameter_range: str
    instances: List[InstanceResult]
    notes: List[str] = field(default_factory=list)
    seed: Optional[int] = None
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.instances)

    def as_dict(self, timing: bool = False) -> dict:
        out = {
            "family": self.family_id,
            "parameter_range": self.parameter_range,
            "passed": self.passed,
            "num_instances": len(self.instances),
            "seed": self.seed,
            "notes": self.notes,
            "instances": [r.as_dict(timing) for r in self.instances],
        }
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


# ---------------------------------------------------------------------------
# per-family checks


def _family_checks(inst: fam.FamilyInstance, cert: Certificate) -> Tuple[Dict[str, bool], List[str]]:
    fid = inst.spec.family_id
    p = inst.spec.params
    f = inst.poly
    checks: Dict[str, bool] = {}
    notes: List[str] = []
    pred = inst.prediction
    checks["exponent_sum"] = sum(pred.exponents) == (cert.degree - 1 if pred.kind == FREE else cert.degree)
    if cert.kind == FREE:
        checks["tau_is_maximal"] = cert.tau == maximal_tau(cert.degree, cert.mdr)
    elif cert.kind == NEARLY_FREE:
        checks["tau_one_below_maximal"] = cert.tau == maximal_tau(cert.degree, cert.mdr) - 1

    if fid == "thm11":
        d, d1 = p["d"], p["d1"]
        rho1, rho2 = fam.thm11_syzygies(d, d1)
        checks["rho1_verifies"] = verify_syzygy(f, rho1)
        checks["rho2_verifies"] = verify_syzygy(f, rho2)
        saito = saito_check(f, rho1, rho2)
        checks["saito_nonzero_scalar"] = saito.passes and saito.scalar != 0
        checks["st_lemma_exponents"] = st_freeness(f, rho1, rho2) == pred.exponents
        checks["witness_degrees"] = (rho1.degree, rho2.degree) == cert.exponents
        audit = fam.thm11_printed_companion_audit(d, d1)
        checks["z_corrected_companion_verifies"] = audit["z_corrected_verifies"] and audit["z_corrected_saito_passes"]
        if not audit["printed_homogeneous"]:
            notes.append(
                "uncorrected closed-form companion is not homogeneous "
                f"(f_y coefficient degrees {audit['printed_fy_term_degrees']}); "
                "companion taken from the kernel, z-corrected form verified"
            )
    elif fid == "thm31":
        d, d1 = p["d"], p["d1"]
        if d1 >= 2:
            w = fam.thm31_syzygies(d, d1)
            checks["r1_verifies"] = verify_syzygy(f, w.r1)
            checks["r2_verifies"] = verify_syzygy(f, w.r2)
            checks["r3_verifies"] = verify_syzygy(f, w.r3)
            checks["second_order_relation"] = verify_second_order_relation(w.r1, w.r2, w.r3, w.coeffs)
            checks["witness_degrees"] = (w.r1.degree, w.r2.degree, w.r3.degree) == (d1, d - d1, d - d1)
        else:
            notes.append("d1 = 1: no explicit witnesses, classification by the generic engine")
    elif fid == "thm12":
        d, d1 = p["d"], p["d1"]
        d2 = d - 1 - d1
        c = intersection_census(inst.arrangement)
        high = sorted((m for _, m in c.points if m > 2), reverse=True)
        if d1 >= 2:
            checks["two_high_points"] = high == sorted([d1 + 1, d2 + 1], reverse=True)
        else:
            checks["at_most_two_high_points"] = len(high) <= 2
        mult = dict((pt.coords, m) for pt, m in c.points)
        A, B = (0, 0, 1), (0, 1, 0)
        checks["mult_at_A"] = mult.get(A, 0) == d1 + 1
        checks["mult_at_B"] = mult.get(B, 0) == d2 + 1
        nodes_expected = d1 * d2 + (1 if d1 == 1 else 0) + (1 if d2 == 1 else 0)
        checks["node_count"] = c.nj.get(2, 0) == nodes_expected
        checks["pair_count"] = pair_count_holds(c)
        checks["c2_equals_d1d2"] = c2_log_tangent(c, d) == d1 * d2
        checks["tau_census_vs_graded"] = tjurina_from_multiplicities(c) == tjurina_from_nj(c, d) == cert.tau
        topo = complement_invariants(cert, inst)
        checks["euler_census_vs_product"] = topo.census_euler == topo.euler_complement == (1 - d1) * (1 - d2)
    elif fid == "thm34":
        d1, d2 = p["d1"], p["d2"]
        d = d1 + d2
        c = intersection_census(inst.arrangement)
        mult = dict((pt.coords, m) for pt, m in c.points)
        checks["mult_at_A"] = mult.get((0, 0, 1)) == d1
        checks["mult_at_B"] = mult.get((0, 1, 0)) == d2
        on = points_on_line(c, (0, 1, -1))
        triples = [pt for pt, m in on if m == 3]
        doubles = [pt for pt, m in on if m == 2]
        checks["triples_on_y_minus_z"] = len(triples) == d1 - 2 and len(on) == len(triples) + len(doubles)
        checks["triple_locations"] = sorted(pt.coords for pt in triples) == sorted(
            (Fraction(1), Fraction(1, i), Fraction(1, i)) for i in range(2, d1)
        )
        checks["doubles_on_y_minus_z"] = len(doubles) == d2 - d1 + 3
        off_nodes = sum(
            1
            for pt, m in c.points
            if m == 2 and pt.coords[1] != pt.coords[2] and pt.coords[0] != 0
        )
        checks["extra_nodes"] = off_nodes == (d1 - 1) * (d2 - 1) - (d1 - 2)
        checks["pair_count"] = pair_count_holds(c)
        tau_formula = fam.nearly_free_tau(d, d1, d2)
        checks["tau_census_vs_formula"] = tjurina_from_multiplicities(c) == tjurina_from_nj(c, d) == tau_formula
        checks["tau_graded_vs_formula"] = cert.tau == tau_formula
        R1 = fam.thm34_syzygy_R1(d1, d2)
        checks["R1_verifies"] = verify_syzygy(f, R1)
        checks["witness_degree"] = R1.degree == cert.mdr == d1

    if fid in fam.CUSPIDAL_FAMILIES:
        topo = complement_invariants(cert, inst)
        d = cert.degree
        checks["topology"] = topo.euler_complement == 1 and topo.milnor_fiber_b2 == d - 1 and topo.pi1_order == d
        notes.append("irreducibility of the curve is assumed, not checked")
    return checks, notes


def verify_instance(
    family_id: str,
    params: Dict[str, int],
    modp: Optional[int] = linalg.DEFAULT_PRIME,
    cap_mult: int = DEFAULT_CAP_MULT,
) -> InstanceResult:
    t0 = time.perf_counter()
    inst = fam.build_family(family_id, params)
    cert = classify(inst.poly, modp, cap_mult)
    checks = {"certificate_matches_prediction": cert.matches(inst.prediction)}
    extra, notes = _family_checks(inst, cert)
    checks.update(extra)
    return InstanceResult(
        label=inst.spec.label(),
        family_id=family_id,
        params=dict(inst.spec.params),
        checks=checks,
        predicted=inst.prediction.as_dict(),
        computed=cert.to_json(),
        notes=notes,
        seconds=time.perf_counter() - t0,
    )


def _worker(args):
    return verify_instance(*args)


def sweep_threads() -> int:
    try:
        return max(1, int(os.environ.get("SYZ_CERT_THREADS", "1")))
    except ValueError:
        return 1


def _run_all(jobs: Sequence[tuple]) -> List[InstanceResult]:
    n = min(sweep_threads(), len(jobs))
    if n <= 1:
        return [_worker(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=n) as ex:
        return list(ex.map(_worker, jobs))


def verify_family(
    family_id: str,
    params_list: Sequence[Dict[str, int]],
    modp: Optional[int] = linalg.DEFAULT_PRIME,
    cap_mult: int = DEFAULT_CAP_MULT,
    parameter_range: str = "",
) -> Report:
    """Classify every instance and compare with the family's prediction."""
    t0 = time.perf_counter()
    jobs = [(family_id, dict(p), modp, cap_mult) for p in params_list]
    results = _run_all(jobs)
    notes = [] if results else ["empty parameter range: no instances"]
    return Report(family_id, parameter_range, results, notes, seconds=time.perf_counter() - t0)


def cor33_collision_results(max_d: int, modp=linalg.DEFAULT_PRIME, cap_mult=DEFAULT_CAP_MULT) -> List[InstanceResult]:
    """For each degree, the two (a, b) pairs sharing exponents classify identically."""
    out = []
    for d in range(3, max_d + 1):
        for (a1, _), (a2, _) in fam.cor33_collision_pairs(d):
            t0 = time.perf_counter()
            f1, p1 = fam.cor33_predict(d, a1)
            f2, p2 = fam.cor33_predict(d, a2)
            c1, c2 = classify(f1, modp, cap_mult), classify(f2, modp, cap_mult)
            h = d // 2
            target = (h, h) if d % 2 == 0 else (h, h + 1)
            out.append(
                InstanceResult(
                    label=f"cor33_collision(d={d},a={a1}|{a2})",
                    family_id="cor33",
                    params={"d": d, "a1": a1, "a2": a2},
                    checks={
                        "same_predicted_exponents": p1.exponents == p2.exponents == target,
                        "same_computed_exponents": c1.exponents == c2.exponents == target,
                    },
                    predicted=p1.as_dict(),
                    computed=c1.to_json(),
                    seconds=time.perf_counter() - t0,
                )
            )
    return out


# ---------------------------------------------------------------------------
# random arrangement searches

DEFAULT_SEED = 42


def prop35_negative_search(
    max_d: int = 6,
    trials: int = 200,
    seed: int = DEFAULT_SEED,
    modp: Optional[int] = linalg.DEFAULT_PRIME,
    cap_mult: int = DEFAULT_CAP_MULT,
) -> Report:
    """Look for nearly free arrangements with exponents (1, d-1) among random ones.

    One instance per degree 3 <= d <= max_d; it fails if any sampled
    arrangement certifies as nearly free with exponents (1, d-1).  Pencils
    (cones) are counted separately and excluded from the tally.
    """
    if max_d > 8:
        raise ValueError("random search is limited to max_d <= 8")
    t0 = time.perf_counter()
    rng = random.Random(seed)
    results = []
    for d in range(3, max_d + 1):
        t1 = time.perf_counter()
        tally: Dict[str, int] = {FREE: 0, NEARLY_FREE: 0, OTHER: 0, "cone": 0}
        exps: Dict[str, int] = {}
        bad = 0
        for _ in range(trials):
            A = random_arrangement(d, rng)
            cert = classify(defining_poly(A), modp, cap_mult)
            if cert.cone:
                tally["cone"] += 1
                continue
            tally[cert.kind] += 1
            if cert.exponents:
                key = f"{cert.kind}{list(cert.exponents)}"
                exps[key] = exps.get(key, 0) + 1
            if cert.kind == NEARLY_FREE and cert.exponents == (1, d - 1):
                bad += 1
        results.append(
            InstanceResult(
                label=f"prop35(d={d})",
                family_id="prop35",
                params={"d": d, "trials": trials},
                checks={"no_nearly_free_1_dminus1": bad == 0},
                computed={"tally": tally, "exponents": dict(sorted(exps.items()))},
                seconds=time.perf_counter() - t1,
            )
        )
    return Report("prop35", f"3 <= d <= {max_d}, {trials} trials per degree", results, seed=seed,
                  seconds=time.perf_counter() - t0)


def arrangement_consistency(
    count: int = 200,
    max_lines: int = 8,
    graded: int = 25,
    seed: int = DEFAULT_SEED,
    cap_mult: int = DEFAULT_CAP_MULT,
) -> Report:
    """Cross-formula identities on random arrangements.

    Every arrangement checks the pair-count identity, tau by multiplicities
    against tau by n_j, and c2 = (d-1)^2 - tau; the first ``graded`` of them
    also compare with the graded tau of the defining polynomial.
    """
    t0 = time.perf_counter()
    rng = random.Random(seed)
    results = []
    for i in range(count):
        t1 = time.perf_counter()
        d = rng.randint(2, max_lines)
        A = random_arrangement(d, rng)
        c = intersection_census(A)
        tau = tjurina_from_multiplicities(c)
        checks = {
            "pair_count": pair_count_holds(c),
            "tau_two_formulas": tau == tjurina_from_nj(c, d),
            "c2_identity": c2_log_tangent(c, d) == (d - 1) ** 2 - tau,
        }
        computed = {"d": d, "nj": {str(j): n for j, n in c.nj.items()}, "tau": tau}
        if i < graded:
            g = total_tjurina(defining_poly(A), cap_mult).tau
            checks["tau_graded"] = g == tau
            computed["tau_graded"] = g
        results.append(
            InstanceResult(f"random[{i}](d={d})", "random_arrangement", {"index": i, "d": d}, checks,
                           computed=computed, seconds=time.perf_counter() - t1)
        )
    return Report("random_arrangement", f"{count} arrangements, <= {max_lines} lines", results, seed=seed,
                  seconds=time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# sweep drivers

VERIFY_IDS = ("thm11", "thm12", "thm31", "rmk32", "cor33", "thm34", "prop35", "all")


def run_sweep(
    sweep_id: str,
    max_d: int,
    modp: Optional[int] = linalg.DEFAULT_PRIME,
    cap_mult: int = DEFAULT_CAP_MULT,
    seed: int = DEFAULT_SEED,
    trials: int = 200,
) -> List[Report]:
    if sweep_id not in VERIFY_IDS:
        raise UnrecognizedFamily(f"unknown sweep id {sweep_id!r}; expected one of {', '.join(VERIFY_IDS)}")
    ids = VERIFY_IDS[:-1] if sweep_id == "all" else (sweep_id,)
    reports = []
    for tid in ids:
        if tid == "prop35":
            reports.append(prop35_negative_search(min(max_d, 6), trials, seed, modp, cap_mult))
            continue
        fids = ("rmk32_even", "rmk32_odd") if tid == "rmk32" else (tid,)
        for fid in fids:
            params = fam.family_parameters(fid, max_d)
            rep = verify_family(fid, params, modp, cap_mult, parameter_range=f"degree <= {max_d}")
            if fid == "cor33":
                rep.instances.extend(cor33_collision_results(max_d, modp, cap_mult))
                if rep.instances:
                    rep.notes = []
            reports.append(rep)
    return reports


# ---------------------------------------------------------------------------
# coordinate changes


def random_unimodular(rng: random.Random, bound: int = 2) -> Tuple[Tuple[int, int, int], ...]:
    """A random 3x3 integer matrix of determinant +-1.

    Built as a product of a lower and an upper unitriangular matrix with a
    random row permutation, so the inverse is integral as well.
    """
    L = [[1, 0, 0], [rng.randint(-bound, bound), 1, 0], [rng.randint(-bound, bound), rng.randint(-bound, bound), 1]]
    U = [[1, rng.randint(-bound, bound), rng.randint(-bound, bound)], [0, 1, rng.randint(-bound, bound)], [0, 0, 1]]
    M = [[sum(L[i][k] * U[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    perm = list(range(3))
    rng.shuffle(perm)
    return tuple(tuple(M[p]) for p in perm)


def change_coordinates(f: HomPoly, M: Sequence[Sequence[int]]) -> HomPoly:
    """f(M (x, y, z)^T): substitute row i of M as the new i-th variable."""
    forms = [HomPoly.linear(*row) for row in M]
    return f.substitute(forms)
