import random

import jsonschema
import pytest

from syzcert import certifier, families as fam
from syzcert.certifier import (
    CERTIFICATE_SCHEMA,
    Certificate,
    change_coordinates,
    classify,
    complement_invariants,
    maximal_tau,
    random_unimodular,
    verify_family,
)
from syzcert.errors import NonStabilized, NotReduced, UnrecognizedFamily
from syzcert.poly import parse_poly


@pytest.mark.parametrize(
    "text,kind,exps,r,tau",
    [
        ("x^5+x^2*y^3+y^4*z", "free", (2, 2), 2, 12),
        ("x^5+x^4*y+y^4*z", "nearly_free", (2, 3), 2, 11),
        ("x^4+y^4+z^4", "other", None, 3, 0),
        ("x^3+y^3+z^3", "other", None, 2, 0),
        ("x*y*z", "free", (1, 1), 1, 3),
        ("x^2+y^2+z^2", "nearly_free", (1, 1), 1, 0),
    ],
)
def test_classify_examples(text, kind, exps, r, tau):
    c = classify(parse_poly(text))
    assert (c.kind, c.exponents, c.mdr, c.tau) == (kind, exps, r, tau)
    assert c.witness_syzygy_degrees == (r,)
    assert not c.cone


def test_classify_without_modp_screen():
    c = classify(parse_poly("x^5+x^2*y^3+y^4*z"), modp=None)
    assert (c.kind, c.exponents) == ("free", (2, 2))


def test_pencil_is_flagged_cone():
    c = classify(parse_poly("x*y*(x-y)*(x+y)"))
    assert c.cone and c.kind == "free" and c.exponents == (0, 3)
    assert c.tau == 9


def test_non_reduced_raises_non_stabilized():
    with pytest.raises(NonStabilized):
        classify(parse_poly("x^2*y"))


def test_not_reduced_guard(monkeypatch):
    # a curve with tau = (d-1)^2 but a positive relation degree trips the guard
    monkeypatch.setattr(certifier, "mdr", lambda f, modp=None: 1)
    with pytest.raises(NotReduced):
        classify(parse_poly("x*y*(x-y)"))


def test_classify_rejects_linear():
    with pytest.raises(ValueError):
        classify(parse_poly("x+y"))


def test_certificate_invariants_on_families():
    for fid in fam.FAMILY_IDS:
        for p in fam.family_parameters(fid, 7):
            c = classify(fam.build_family(fid, p).poly)
            d, r = c.degree, c.mdr
            if c.kind == "free":
                assert c.exponents == (r, d - 1 - r) and 2 * r <= d - 1 and c.tau == maximal_tau(d, r)
            elif c.kind == "nearly_free":
                assert c.exponents == (r, d - r) and 2 * r <= d and c.tau == maximal_tau(d, r) - 1
            else:
                assert c.exponents is None


def test_json_schema():
    for text in ["x^5+x^2*y^3+y^4*z", "x^4+y^4+z^4", "x*y*(x+y)"]:
        jsonschema.validate(classify(parse_poly(text)).to_json(), CERTIFICATE_SCHEMA)
    bad = classify(parse_poly("x*y*z")).to_json()
    bad["kind"] = "Free"
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(bad, CERTIFICATE_SCHEMA)


def test_complement_invariants_cuspidal():
    inst = fam.build_family("thm11", {"d": 5, "d1": 2})
    t = complement_invariants(classify(inst.poly), inst)
    assert (t.euler_complement, t.milnor_fiber_b2, t.pi1_order) == (1, 4, 5)


def test_complement_invariants_free_arrangement():
    inst = fam.build_family("thm12", {"d": 5, "d1": 2})
    t = complement_invariants(classify(inst.poly), inst)
    assert t.betti_complement == (1, 4, 4)
    assert t.euler_complement == t.census_euler == 1
    inst = fam.build_family("thm12", {"d": 3, "d1": 1})
    t = complement_invariants(classify(inst.poly), inst)
    assert t.betti_complement == (1, 2, 1)
    assert t.euler_complement == t.census_euler == 0


def test_complement_invariants_unrecognized():
    inst = fam.build_family("thm34", {"d1": 2, "d2": 2})
    with pytest.raises(UnrecognizedFamily):
        complement_invariants(classify(inst.poly), inst)


def test_verify_family_small_ranges():
    for fid in fam.FAMILY_IDS:
        rep = verify_family(fid, fam.family_parameters(fid, 7))
        assert rep.instances
        assert rep.passed, [(r.label, r.failed_checks()) for r in rep.instances if not r.passed]


def test_thm11_report_records_misprint():
    rep = verify_family("thm11", [{"d": 5, "d1": 2}])
    (inst,) = rep.instances
    assert any("not homogeneous" in n for n in inst.notes)
    assert inst.checks["saito_nonzero_scalar"] and inst.checks["st_lemma_exponents"]


def test_report_fails_when_an_instance_fails():
    rep = verify_family("thm11", [{"d": 5, "d1": 2}])
    rep.instances[0].checks["forced"] = False
    assert not rep.passed
    assert rep.as_dict()["passed"] is False


def test_empty_range_report():
    rep = verify_family("thm11", fam.family_parameters("thm11", 4))
    assert rep.passed and rep.instances == [] and rep.notes


def test_report_dict_has_no_timing_by_default():
    d = verify_family("thm12", [{"d": 3, "d1": 1}]).as_dict()
    assert "seconds" not in d and "seconds" not in d["instances"][0]
    d = verify_family("thm12", [{"d": 3, "d1": 1}]).as_dict(timing=True)
    assert "seconds" in d


def test_parallel_sweep_is_deterministic(monkeypatch):
    params = fam.family_parameters("thm31", 7)
    serial = [r.as_dict() for r in verify_family("thm31", params).instances]
    monkeypatch.setenv("SYZ_CERT_THREADS", "3")
    parallel = [r.as_dict() for r in verify_family("thm31", params).instances]
    assert serial == parallel


def test_prop35_small():
    rep = certifier.prop35_negative_search(max_d=4, trials=30, seed=1)
    assert rep.passed and [r.params["d"] for r in rep.instances] == [3, 4]
    again = certifier.prop35_negative_search(max_d=4, trials=30, seed=1)
    assert [r.computed for r in rep.instances] == [r.computed for r in again.instances]
    with pytest.raises(ValueError):
        certifier.prop35_negative_search(max_d=9)


def test_arrangement_consistency_small():
    rep = certifier.arrangement_consistency(count=20, graded=5, seed=3)
    assert rep.passed and len(rep.instances) == 20
    assert sum("tau_graded" in r.checks for r in rep.instances) == 5


def test_run_sweep_ids():
    reps = certifier.run_sweep("rmk32", 6)
    assert [r.family_id for r in reps] == ["rmk32_even", "rmk32_odd"]
    with pytest.raises(UnrecognizedFamily):
        certifier.run_sweep("thm99", 6)


def test_random_unimodular():
    rng = random.Random(0)
    for _ in range(20):
        M = random_unimodular(rng)
        a, b, c = M
        det = (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
               + a[2] * (b[0] * c[1] - b[1] * c[0]))
        assert det in (1, -1)


def test_coordinate_change_invariance_spot():
    rng = random.Random(5)
    f, _ = fam.thm31_curve(6, 2)
    base = classify(f)
    for _ in range(3):
        g = change_coordinates(f, random_unimodular(rng))
        c = classify(g)
        assert (c.mdr, c.tau, c.kind, c.exponents) == (base.mdr, base.tau, base.kind, base.exponents)


def test_certificate_matches():
    inst = fam.build_family("thm34", {"d1": 2, "d2": 3})
    assert classify(inst.poly).matches(inst.prediction)
    other = Certificate(5, 2, 0, "other", None, False, (2,), 9)
    assert not other.matches(inst.prediction)
