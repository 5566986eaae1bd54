"""Command line front end: scenario runs, the testing-curve demo, suite emission.

A scenario is a JSON file::

    {"seed": 0, "field": "Q", "fields": {"k": {"tower": [...]}},
     "jobs": [{"kind": "theorem-check", "check": "4.6.1",
               "F": "Y^2", "G": "X^3", "Fstar": "Y", "Gstar": "X"}]}

Each job produces one record with a claim label, a status (pass, fail or
inconclusive) and the computed values.  Reports are deterministic; wall
clock times are only added with ``--timing``.
"""

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .errors import DegreeBoundExceeded, ReesvalError, TruncationExhausted
from .report import VerificationReport, _jsonable

KINDS = {
    "hypersurface-verify": ("d", "m", "forms"),
    "reduction-check": ("d", "m", "forms", "H", "p"),
    "valuation-eval": ("valuation", "f"),
    "contact": ("V", "W"),
    "pencil-resolve": ("F", "G"),
    "intersect": ("f", "g"),
    "theorem-check": ("check",),
    "testing-curve-demo": (),
    "probe-4.10": ("F", "G", "Fstar", "Gstar", "phi", "phistar"),
}

CHECKS = ("4.6.1", "4.6.2", "4.6.3")

PLANE_KEYS = ("F", "G", "Fstar", "Gstar", "f", "g", "phi", "phistar")


class SchemaError(Exception):
    pass


# -- scenario loading --------------------------------------------------------------

def load_scenario(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path} is not valid JSON: {e}") from None
    return data


def _field_table(scn):
    """Named field declarations plus the scenario default, all validated."""
    from .exactfield.fields import field_from_config
    table = {"Q": "Q"}
    table.update(scn.get("fields", {}))
    top = scn.get("field", "Q")
    if isinstance(top, str) and top in table:
        default = top
    else:
        default = top if isinstance(top, str) else "default"
        table[default] = top
    for name, cfg in table.items():
        try:
            field_from_config(cfg)
        except ReesvalError as e:
            raise SchemaError(f"field {name!r}: {e}") from None
    return table, default


def validate(scn):
    """Check the scenario shape; return the jobs with field configs resolved."""
    from .exactfield.fields import field_from_config
    from .exactfield.parse import parse_poly
    if not isinstance(scn, dict):
        raise SchemaError("scenario must be a JSON object")
    jobs = scn.get("jobs")
    if not isinstance(jobs, list) or not jobs:
        raise SchemaError("scenario needs a nonempty list 'jobs'")
    seed = scn.get("seed", 0)
    if not isinstance(seed, int) or seed < 0:
        raise SchemaError("seed must be a nonnegative integer")
    table, default = _field_table(scn)
    prepared = []
    for i, job in enumerate(jobs):
        where = f"job {i}"
        if not isinstance(job, dict):
            raise SchemaError(f"{where}: must be an object")
        kind = job.get("kind")
        if kind not in KINDS:
            raise SchemaError(f"{where}: unknown kind {kind!r}")
        where = f"job {i} ({kind})"
        for key in KINDS[kind]:
            if key not in job:
                raise SchemaError(f"{where}: missing parameter {key!r}")
        fname = job.get("field", default)
        if not isinstance(fname, str) or fname not in table:
            raise SchemaError(f"{where}: field {fname!r} is not declared")
        fcfg = table[fname]
        if kind == "theorem-check":
            check = str(job["check"])
            if check not in CHECKS:
                raise SchemaError(f"{where}: check must be one of {', '.join(CHECKS)}")
            need = ("I", "J") if check == "4.6.2" and "I" in job else ("F", "G", "Fstar", "Gstar")
            for key in need:
                if key not in job:
                    raise SchemaError(f"{where}: missing parameter {key!r}")
        field = field_from_config(fcfg)
        for key in PLANE_KEYS:
            if key in job:
                try:
                    parse_poly(str(job[key]), field, ("X", "Y"))
                except ReesvalError as e:
                    raise SchemaError(f"{where}: parameter {key!r}: {e}") from None
        prepared.append((i, job, fcfg))
    return prepared, seed


# -- job execution -------------------------------------------------------------------

def _family(job, field):
    from .hypersurface import HypersurfaceFamily
    return HypersurfaceFamily(job["d"], job["m"], job["forms"],
                              [tuple(e) for e in job.get("extras", [])], field=field)


def _valuation(cfg, field):
    from .plane import valuation_from_config
    if isinstance(cfg, dict):
        cfg = {k: v for k, v in cfg.items() if k != "field"}
    return valuation_from_config(cfg, field)


def _spec(comps, field):
    from .contact import CompleteIdealSpec
    return CompleteIdealSpec([(_valuation(c, field), c.get("n", 1)) for c in comps])


def _expect(report, job, value):
    if "expect" in job and value != job["expect"]:
        report.status = "fail"
        report.witness = {"expected": job["expect"], "got": _jsonable(value)}
    return report


def _job_hypersurface(job, field, seed):
    from .hypersurface import dicriticals, tangent_cone_reduced, verify_normality
    fam = _family(job, field)
    rep = verify_normality(fam, int(job.get("p_max", 2)), job.get("degree_bound"))
    rep.values["dicriticals"] = len(dicriticals(fam))
    rep.values["tangent_cone_reduced"] = tangent_cone_reduced(fam)
    rep.values["equation"] = str(fam.G)
    return rep


def _job_reduction(job, field, seed):
    from .hypersurface import reduction_report
    fam = _family(job, field)
    ps = job["p"] if isinstance(job["p"], list) else [job["p"]]
    reps = [reduction_report(fam, job["H"], int(p)) for p in ps]
    ok = all(r.passed for r in reps)
    rep = VerificationReport("(45)", "pass" if ok else "fail",
                             {"H": job["H"], "cases": [r.to_dict() for r in reps]})
    want = job.get("expect")
    if want is not None and bool(want) != ok:
        rep.status = "fail"
        rep.witness = {"expected": want, "got": ok}
    elif want is not None:
        rep.status = "pass"
    return rep


def _job_valuation(job, field, seed):
    from .exactfield.parse import parse_poly
    V = _valuation(job["valuation"], field)
    f = parse_poly(str(job["f"]), V.field, ("X", "Y"))
    v = V.value(f)
    nv = V.noether_value(f)
    rep = VerificationReport("value", "pass" if v == nv else "fail",
                             {"value": v, "noether_value": nv, "multiplicities": list(V.mult),
                              "chi": V.chi})
    return _expect(rep, job, v)


def _job_contact(job, field, seed):
    from .contact import contact_number
    V = _valuation(job["V"], field)
    W = _valuation(job["W"], field)
    method = job.get("method", "both")
    vals = {}
    if method in ("noether", "both"):
        vals["noether"] = contact_number(V, W, "noether")
    if method in ("curvette", "both"):
        vals["curvette"] = contact_number(V, W, "curvette")
    ok = len(set(vals.values())) == 1
    vals["value"] = next(iter(vals.values()))
    vals["chi"] = [V.chi, W.chi]
    rep = VerificationReport("c(V,W)", "pass" if ok else "fail", vals,
                             witness=None if ok else "methods disagree")
    return _expect(rep, job, vals["value"])


def _job_pencil(job, field, seed):
    from .contact import noether_contact
    from .local import colength
    from .pencil import Pencil, completion_values, resolve, zariski_exponents
    pen = Pencil(str(job["F"]), str(job["G"]), field=field)
    tree = resolve(pen, check=True)
    exps = zariski_exponents(pen, tree)
    iota = colength([pen.F, pen.G])
    sq = tree.multiplicity_square_sum()
    resub = all(sum(n * noether_contact(Vk, Vi) for Vi, n in exps) == completion_values(pen, Vk)
                for Vk, _ in exps)
    ok = resub and sq == iota
    return VerificationReport("resolve", "pass" if ok else "fail", {
        "dicriticals": [V.config()["steps"] for V, _ in exps],
        "exponents": [n for _, n in exps],
        "base_points": len(tree.points()),
        "multiplicity_square_sum": sq,
        "iota": iota,
    }, witness=None if ok else "re-substitution or multiplicity count failed")


def _job_intersect(job, field, seed):
    from .contact import generic_coordinates, intersection_multiplicity, intersection_resultant_oracle
    from .exactfield.parse import parse_poly
    f = parse_poly(str(job["f"]), field, ("X", "Y"))
    g = parse_poly(str(job["g"]), field, ("X", "Y"))
    iota = intersection_multiplicity(f, g)
    vals = {"iota": iota}
    ok = True
    if iota != float("inf"):
        f2, g2, lam = generic_coordinates(f, g, seed=seed)
        vals["oracle"] = intersection_resultant_oracle(f2, g2)
        vals["shear"] = lam
        ok = vals["oracle"] == iota
    rep = VerificationReport("iota", "pass" if ok else "fail", vals,
                             witness=None if ok else "colength and resultant disagree")
    return _expect(rep, job, iota)


def _job_theorem(job, field, seed):
    from .contact import completion_spec, verify_4_6_1, verify_4_6_2, verify_4_6_3
    from .exactfield.parse import parse_poly
    check = str(job["check"])
    if check == "4.6.2" and "I" in job:
        return verify_4_6_2(_spec(job["I"], field), _spec(job["J"], field))
    F, G, Fs, Gs = (parse_poly(str(job[k]), field, ("X", "Y")) for k in ("F", "G", "Fstar", "Gstar"))
    if check == "4.6.1":
        return verify_4_6_1(F, G, Fs, Gs)
    if check == "4.6.3":
        return verify_4_6_3(F, G, Fs, Gs)
    return verify_4_6_2(completion_spec(F, G), completion_spec(Fs, Gs))


def testing_curve_report(ts, catalog=None):
    from .plane import demo_testing_curve
    table = demo_testing_curve(ts, catalog)
    ok = True
    for delta, vals, tau in table.rows:
        if tau in table.ts:
            want = [2 if t == tau else 1 for t in table.ts]
        else:
            want = [1] * len(table.ts)
        ok = ok and vals == want
    return VerificationReport("(4.8)", "pass" if ok else "fail", table.to_dict()), table


def _job_testing(job, field, seed):
    ts = job.get("ts", ["0", "1", "2", "3", "inf"])
    return testing_curve_report([str(t) for t in ts], job.get("catalog"))[0]


def _job_probe(job, field, seed):
    from .contact import probe_special_members
    from .exactfield.parse import parse_poly
    polys = [parse_poly(str(job[k]), field, ("X", "Y"))
             for k in ("F", "G", "Fstar", "Gstar", "phi", "phistar")]
    return probe_special_members(*polys)


RUNNERS = {
    "hypersurface-verify": _job_hypersurface,
    "reduction-check": _job_reduction,
    "valuation-eval": _job_valuation,
    "contact": _job_contact,
    "pencil-resolve": _job_pencil,
    "intersect": _job_intersect,
    "theorem-check": _job_theorem,
    "testing-curve-demo": _job_testing,
    "probe-4.10": _job_probe,
}


def run_job(args):
    """Run one prepared job; returns a JSON-ready record."""
    from .exactfield.fields import field_from_config
    index, job, fcfg, seed, timing = args
    kind = job["kind"]
    t0 = time.perf_counter()
    expected_error = job.get("expect_error")
    try:
        field = field_from_config(fcfg)
        rep = RUNNERS[kind](job, field, seed)
        if expected_error:
            rep = VerificationReport(rep.claim, "fail", rep.values,
                                     witness={"expected_error": expected_error, "got": "no error"})
    except (TruncationExhausted, DegreeBoundExceeded) as e:
        rep = VerificationReport(kind, "inconclusive", {}, witness={"error": type(e).__name__,
                                                                     "message": str(e)})
    except ReesvalError as e:
        name = type(e).__name__
        if expected_error == name:
            rep = VerificationReport("error", "pass", {"error": name})
        else:
            rep = VerificationReport(kind, "fail", {}, witness={"error": name, "message": str(e)})
    out = {"job": index, "kind": kind}
    out.update(rep.to_dict())
    if rep.status != "pass" and "witness" not in out:
        out["witness"] = "claim not confirmed"
    if timing:
        out["ms"] = int(round((time.perf_counter() - t0) * 1000))
    return out


def run_scenario(scn, seed=None, jobs=1, timing=False):
    prepared, scn_seed = validate(scn)
    seed = scn_seed if seed is None else seed
    work = [(i, job, fcfg, seed, timing) for i, job, fcfg in prepared]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            records = list(ex.map(run_job, work))
    else:
        records = [run_job(w) for w in work]
    passed = sum(r["status"] == "pass" for r in records)
    return {"seed": seed, "jobs": records, "passed": passed, "total": len(records)}


def _summary(rec):
    skip = {"job", "kind", "claim", "status", "ms", "notes", "witness"}
    parts = []
    for k, v in rec.items():
        if k in skip or isinstance(v, (list, dict)):
            continue
        parts.append(f"{k}={v}")
    return " ".join(parts)


def report_table(report):
    lines = [f"{'#':>3}  {'kind':<20} {'claim':<10} {'status':<12} values"]
    for r in report["jobs"]:
        lines.append(f"{r['job']:>3}  {r['kind']:<20} {r['claim']:<10} {r['status']:<12} {_summary(r)}")
    lines.append(f"{report['passed']}/{report['total']} jobs passed (seed {report['seed']})")
    return "\n".join(lines)


def dumps(obj):
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


# -- entry points ----------------------------------------------------------------------

def cmd_run(args):
    try:
        scn = load_scenario(args.scenario)
        report = run_scenario(scn, seed=args.seed, jobs=args.jobs, timing=args.timing)
    except SchemaError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(dumps(report))
    if args.json:
        sys.stdout.write(dumps(report))
    else:
        print(report_table(report))
    return 0 if report["passed"] == report["total"] else 1


def cmd_demo(args):
    ts = [t.strip() for t in args.ts.split(",") if t.strip()]
    catalog = [c.strip() for c in args.catalog.split(",")] if args.catalog else None
    try:
        rep, table = testing_curve_report(ts, catalog)
    except ReesvalError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.json:
        sys.stdout.write(dumps(rep.to_dict()))
    else:
        print(table.text())
    return 0 if rep.passed else 1


def cmd_emit(args):
    from .suites import emit_suite
    try:
        scn = emit_suite(args.kind, args.seed, args.count)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    text = dumps(scn)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_probe(args):
    job = {"kind": "probe-4.10", "F": args.F, "G": args.G, "Fstar": args.Fstar,
           "Gstar": args.Gstar, "phi": args.phi, "phistar": args.phistar}
    return cmd_inline(job, args.json)


def cmd_inline(job, as_json):
    try:
        report = run_scenario({"jobs": [job]})
    except SchemaError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    sys.stdout.write(dumps(report) if as_json else report_table(report) + "\n")
    return 0 if report["passed"] == report["total"] else 1


def build_parser():
    p = argparse.ArgumentParser(prog="reesval", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run a scenario file")
    r.add_argument("scenario")
    r.add_argument("--jobs", type=int, default=1, help="worker processes")
    r.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    r.add_argument("--report", help="write the JSON report here")
    r.add_argument("--json", action="store_true", help="print JSON instead of the table")
    r.add_argument("--timing", action="store_true", help="add per-job milliseconds")
    r.set_defaults(func=cmd_run)

    d = sub.add_parser("demo", help="demonstrations")
    dsub = d.add_subparsers(dest="demo", required=True)
    tc = dsub.add_parser("testing-curve", help="values of the testing valuations")
    tc.add_argument("--ts", default="0,1,2,3,inf")
    tc.add_argument("--catalog", default=None, help="comma separated curves (default: tangent lines)")
    tc.add_argument("--json", action="store_true")
    tc.set_defaults(func=cmd_demo)

    e = sub.add_parser("emit-suite", help="write a generated scenario")
    e.add_argument("--kind", required=True)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--count", type=int, default=10)
    e.add_argument("--out", default=None)
    e.set_defaults(func=cmd_emit)

    pr = sub.add_parser("probe", help="compare i(phi, phistar) with the contact number")
    for name in ("F", "G", "Fstar", "Gstar", "phi", "phistar"):
        pr.add_argument(f"--{name}", required=True)
    pr.add_argument("--json", action="store_true")
    pr.set_defaults(func=cmd_probe)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
