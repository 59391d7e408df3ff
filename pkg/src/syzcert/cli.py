"""Command-line front end: ``syzcert <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 parse error,
3 math guard (not reduced / Hilbert tail did not stabilize),
4 parameter error (bad family parameters, duplicate lines, bad prime).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import __version__
from . import certifier, families as fam, linalg
from .arrangements import (
    c2_log_tangent,
    defining_poly,
    euler_complement,
    intersection_census,
    pair_count_holds,
    read_arrangement,
    tjurina_from_multiplicities,
    tjurina_from_nj,
)
from .errors import (
    ArrangementFormatError,
    BadParams,
    BadPrime,
    DegreeMismatch,
    DuplicateLine,
    NonStabilized,
    NotHomogeneous,
    NotReduced,
    PolySyntaxError,
    UnrecognizedFamily,
)
from .milnor import DEFAULT_CAP_MULT, hilbert_series_prefix, total_tjurina
from .poly import HomPoly, parse_poly
from .syzygy import ar_space, mdr

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_MATH, EXIT_PARAM = 0, 1, 2, 3, 4

CERT_CSV_COLUMNS = [
    "degree",
    "mdr",
    "tau",
    "kind",
    "exponents",
    "cone",
    "witness_syzygy_degrees",
    "hilbert_stabilized_at",
]
VERIFY_CSV_COLUMNS = [
    "family",
    "label",
    "passed",
    "predicted_kind",
    "predicted_exponents",
    "predicted_tau",
    "kind",
    "exponents",
    "tau",
    "mdr",
    "failed_checks",
]


def _modp(text: str) -> Optional[int]:
    if text.lower() == "off":
        return None
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--modp expects 'off' or a prime, got {text!r}") from None
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def _cap(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("--hilbert-cap-mult must be positive")
    return v


def _read_poly(args) -> HomPoly:
    if args.poly is not None and args.file is not None:
        raise PolySyntaxError("give either --poly or --file, not both")
    if args.file is not None:
        text = Path(args.file).read_text()
    elif args.poly is not None:
        text = args.poly
    else:
        raise PolySyntaxError("no polynomial given (use --poly or --file)")
    return parse_poly(text.strip())


def _csv_text(columns: Sequence[str], rows: List[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def _pair(v) -> str:
    return "" if v is None else ";".join(str(x) for x in v)


def _exps(v) -> str:
    return "-" if v is None else "(" + ", ".join(str(x) for x in v) + ")"


def _cert_row(c: dict) -> dict:
    row = dict(c)
    row["exponents"] = _pair(c["exponents"])
    row["witness_syzygy_degrees"] = _pair(c["witness_syzygy_degrees"])
    row["cone"] = str(c["cone"]).lower()
    return row


def _table(pairs) -> str:
    width = max((len(k) for k, _ in pairs), default=0)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in pairs)


def format_certificate(cert: certifier.Certificate, fmt: str) -> str:
    c = cert.to_json()
    if fmt == "json":
        return json.dumps(c) + "\n"
    if fmt == "csv":
        return _csv_text(CERT_CSV_COLUMNS, [_cert_row(c)])
    shown = []
    for k, v in c.items():
        if isinstance(v, bool):
            v = str(v).lower()
        elif v is None or isinstance(v, list):
            v = _exps(v)
        shown.append((k, v))
    return _table(shown)


# ---------------------------------------------------------------------------
# commands


def cmd_certify(args) -> int:
    f = _read_poly(args)
    cert = certifier.classify(f, args.modp, args.hilbert_cap_mult)
    sys.stdout.write(format_certificate(cert, args.format))
    return EXIT_OK


def _family_params(args) -> dict:
    return {k: getattr(args, k) for k in ("d", "d1", "d2", "k", "a") if getattr(args, k) is not None}


def _family_syzygies(inst: fam.FamilyInstance) -> List[tuple]:
    """(name, syzygy, source) triples for the instance."""
    fid, p = inst.spec.family_id, inst.spec.params
    if fid == "thm11":
        r1, r2 = fam.thm11_syzygies(p["d"], p["d1"])
        return [("rho1", r1, "closed form"), ("rho2", r2, "kernel")]
    if fid == "thm31" and p["d1"] >= 2:
        w = fam.thm31_syzygies(p["d"], p["d1"])
        return [("r1", w.r1, "closed form"), ("r2", w.r2, "closed form"), ("r3", w.r3, "closed form")]
    if fid == "thm34":
        return [("R1", fam.thm34_syzygy_R1(p["d1"], p["d2"]), "closed form")]
    r = mdr(inst.poly)
    return [(f"kernel[{i}]", s, "kernel") for i, s in enumerate(ar_space(inst.poly, r))]


def cmd_family(args) -> int:
    inst = fam.build_family(args.family_id, _family_params(args))
    emit = args.emit
    out = {"family": inst.spec.label()}
    if emit in ("poly", "all"):
        out["poly"] = inst.poly.to_text()
        if inst.arrangement is not None:
            out["lines"] = [[str(v) for v in L] for L in inst.arrangement.lines]
    if emit in ("syzygies", "all"):
        out["syzygies"] = [dict(name=n, source=src, **s.as_dict()) for n, s, src in _family_syzygies(inst)]
    if emit in ("certificate", "all"):
        out["predicted"] = inst.prediction.as_dict()
        out["certificate"] = certifier.classify(inst.poly, args.modp, args.hilbert_cap_mult).to_json()

    if args.format == "json":
        sys.stdout.write(json.dumps(out) + "\n")
    elif args.format == "csv":
        rows = []
        if "poly" in out:
            rows.append({"item": "poly", "value": out["poly"]})
        for s in out.get("syzygies", []):
            rows.append({"item": s["name"], "value": f"({s['a']}, {s['b']}, {s['c']})"})
        if "certificate" in out:
            for k, v in _cert_row(out["certificate"]).items():
                rows.append({"item": k, "value": v})
        sys.stdout.write(_csv_text(["item", "value"], rows))
    else:
        pairs = [("family", out["family"])]
        if "poly" in out:
            pairs.append(("poly", out["poly"]))
        for s in out.get("syzygies", []):
            pairs.append((f"{s['name']} (deg {s['degree']}, {s['source']})", f"({s['a']}, {s['b']}, {s['c']})"))
        if "certificate" in out:
            pr = out["predicted"]
            pairs.append(("predicted", f"{pr['kind']} {_exps(pr['exponents'])} tau={pr['tau']}"))
            c = out["certificate"]
            pairs.append(("computed", f"{c['kind']} {_exps(c['exponents'])} tau={c['tau']} mdr={c['mdr']}"))
        sys.stdout.write(_table(pairs))
    return EXIT_OK


def _verify_rows(reports) -> List[dict]:
    rows = []
    for rep in reports:
        for r in rep.instances:
            pr, c = r.predicted or {}, r.computed or {}
            if "kind" not in c:
                c = {}
            rows.append(
                {
                    "family": rep.family_id,
                    "label": r.label,
                    "passed": str(r.passed).lower(),
                    "predicted_kind": pr.get("kind", ""),
                    "predicted_exponents": _pair(pr.get("exponents")),
                    "predicted_tau": pr.get("tau", ""),
                    "kind": c.get("kind", ""),
                    "exponents": _pair(c.get("exponents")),
                    "tau": c.get("tau", ""),
                    "mdr": c.get("mdr", ""),
                    "failed_checks": ";".join(r.failed_checks()),
                }
            )
    return rows


def cmd_verify(args) -> int:
    reports = certifier.run_sweep(
        args.sweep_id, args.max_d, args.modp, args.hilbert_cap_mult, args.seed, args.trials
    )
    ok = all(r.passed for r in reports)
    if args.format == "json":
        sys.stdout.write(json.dumps({"passed": ok, "reports": [r.as_dict(args.timings) for r in reports]}) + "\n")
    elif args.format == "csv":
        sys.stdout.write(_csv_text(VERIFY_CSV_COLUMNS, _verify_rows(reports)))
    else:
        lines = []
        for rep in reports:
            n_pass = sum(r.passed for r in rep.instances)
            head = f"== {rep.family_id}: {n_pass}/{len(rep.instances)} passed ({rep.parameter_range})"
            if args.timings:
                head += f" [{rep.seconds:.2f}s]"
            lines.append(head)
            for note in rep.notes:
                lines.append(f"   note: {note}")
            for r in rep.instances:
                c = r.computed or {}
                if "kind" in c:
                    what = f"{c['kind']} {_exps(c.get('exponents'))} tau={c['tau']}"
                else:
                    what = json.dumps(c.get("tally", {}))
                line = f"   {'PASS' if r.passed else 'FAIL'} {r.label}: {what}"
                if not r.passed:
                    line += " failed=" + ",".join(r.failed_checks())
                if args.timings:
                    line += f" [{r.seconds:.2f}s]"
                lines.append(line)
        lines.append("OVERALL: " + ("PASS" if ok else "FAIL"))
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_arrangement(args) -> int:
    if args.file is None:
        raise ArrangementFormatError("arrangement needs --file")
    A = read_arrangement(args.file)
    d = A.degree
    c = intersection_census(A)
    t1, t2 = tjurina_from_multiplicities(c), tjurina_from_nj(c, d)
    c2 = c2_log_tangent(c, d)
    out = {
        "num_lines": d,
        "nj": {str(j): n for j, n in c.nj.items()},
        "points": [[str(p), m] for p, m in c.points],
        "tau_multiplicities": t1,
        "tau_nj": t2,
        "c2": c2,
        "euler_complement": euler_complement(A),
        "pair_count_holds": pair_count_holds(c),
    }
    consistent = out["pair_count_holds"] and t1 == t2 and c2 == (d - 1) ** 2 - t1
    if args.classify:
        cert = certifier.classify(defining_poly(A), args.modp, args.hilbert_cap_mult)
        out["certificate"] = cert.to_json()
        consistent = consistent and cert.tau == t1
    out["consistent"] = consistent

    if args.format == "json":
        sys.stdout.write(json.dumps(out) + "\n")
    elif args.format == "csv":
        row = {k: v for k, v in out.items() if k not in ("points", "certificate")}
        row["nj"] = ";".join(f"{j}:{n}" for j, n in out["nj"].items())
        row["pair_count_holds"] = str(row["pair_count_holds"]).lower()
        row["consistent"] = str(row["consistent"]).lower()
        sys.stdout.write(_csv_text(list(row), [row]))
    else:
        pairs = [("lines", d)]
        pairs += [(f"n_{j}", n) for j, n in out["nj"].items()]
        pairs += [
            ("tau (multiplicities)", t1),
            ("tau (n_j)", t2),
            ("c2", c2),
            ("euler complement", out["euler_complement"]),
        ]
        if "certificate" in out:
            cc = out["certificate"]
            pairs.append(("certificate", f"{cc['kind']} {_exps(cc['exponents'])} tau={cc['tau']}"))
        pairs.append(("consistent", str(consistent).lower()))
        sys.stdout.write(_table(pairs))
    return EXIT_OK if consistent else EXIT_VERIFY


def cmd_hilbert(args) -> int:
    f = _read_poly(args)
    profile = total_tjurina(f, args.hilbert_cap_mult) if f.degree >= 2 else None
    upto = args.upto if args.upto is not None else (profile.values[-1][0] if profile else 3)
    rows = hilbert_series_prefix(f, upto)
    stab = profile.stabilized_at if profile else None
    if args.format == "json":
        out = {"degree": f.degree, "values": [list(r) for r in rows], "stabilized_at": stab,
               "tau": profile.tau if profile else None}
        sys.stdout.write(json.dumps(out) + "\n")
    elif args.format == "csv":
        sys.stdout.write(_csv_text(["k", "dim", "stable"], [
            {"k": k, "dim": v, "stable": str(stab is not None and k >= stab).lower()} for k, v in rows
        ]))
    else:
        lines = [f"{'k':>4}  dim"]
        for k, v in rows:
            mark = "  <- stabilized" if k == stab else ""
            lines.append(f"{k:>4}  {v}{mark}")
        if profile:
            lines.append(f"tau = {profile.tau} (stable from k = {stab})")
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table"), default="table")
    common.add_argument("--modp", type=_modp, default=linalg.DEFAULT_PRIME,
                        help="prime for the rank screen, or 'off' (default %(default)s)")
    common.add_argument("--hilbert-cap-mult", type=_cap, default=DEFAULT_CAP_MULT,
                        help="scan the Hilbert function up to k = MULT*d (default %(default)s)")

    parser = argparse.ArgumentParser(prog="syzcert", description="Certify free and nearly free plane curves.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", parents=[common], help="classify a polynomial")
    p.add_argument("--poly")
    p.add_argument("--file")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("family", parents=[common], help="build a family member")
    p.add_argument("family_id", choices=fam.FAMILY_IDS)
    for name in ("d", "d1", "d2", "k", "a"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--emit", choices=("poly", "syzygies", "certificate", "all"), default="poly")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("verify", parents=[common], help="run a verification sweep")
    p.add_argument("sweep_id", choices=certifier.VERIFY_IDS)
    p.add_argument("--max-d", type=int, default=12)
    p.add_argument("--seed", type=int, default=certifier.DEFAULT_SEED)
    p.add_argument("--trials", type=int, default=200, help="random arrangements per degree (prop35)")
    p.add_argument("--timings", action="store_true", help="include wall-clock times (output not reproducible)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("arrangement", parents=[common], help="analyse a line arrangement file")
    p.add_argument("--file")
    p.add_argument("--classify", action="store_true", help="also certify the defining polynomial")
    p.set_defaults(func=cmd_arrangement)

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert function of the Milnor algebra")
    p.add_argument("--poly")
    p.add_argument("--file")
    p.add_argument("--upto", type=int)
    p.set_defaults(func=cmd_hilbert)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PolySyntaxError, NotHomogeneous, DegreeMismatch, ArrangementFormatError, OSError) as exc:
        print(f"syzcert: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (NotReduced, NonStabilized) as exc:
        print(f"syzcert: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH
    except (BadParams, DuplicateLine, BadPrime, UnrecognizedFamily) as exc:
        print(f"syzcert: parameter error: {exc}", file=sys.stderr)
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
