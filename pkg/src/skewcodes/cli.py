"""Command-line front end: ``skewcodes <command> --input job.json``."""

import argparse
import json
import random
import sys

from . import descriptors as dj
from . import fplinalg
from .errors import DescriptorError, InvariantViolation, PreconditionError, SkewCodesError
from .galois import Level, make_tower
from .nrscode import (DISTANCE_CAP, NrsCode, check_multiplier_orbit, classical_dual,
                      double_q_dual, dual_orthogonality_failures, meets_singleton,
                      nrs_dimension, orbit_evaluation_vector, q_dual,
                      q_dual_by_intersection, sampled_min_weight, word_to_fp)
from .sampling import random_matrix, random_sqc_code
from .skewpoly import SkewPoly, is_total_divisor
from .smithform import SkewMatrix, smith_normal_form, snf_violations
from .sqccode import (SqcCode, SqcStructure, dual_structure, is_sqc, lifted_to_vector,
                      module_structure, phi, q_inner_product, star_dual)

COMMANDS = ("build-nrs", "analyze", "dual", "q-dual", "sqc-structure", "star-dual", "verify")
VERIFY_KINDS = ("snf", "structure", "nrs", "suite")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_build_nrs(job, args):
    T = dj.field_from_json(dj._require(job, "field", dict))
    reps = [dj.element_from_json(T, r) for r in dj._require(job, "reps", list)]
    if not reps:
        raise DescriptorError("need at least one coset representative")
    alpha = orbit_evaluation_vector(T, reps)
    code = NrsCode(T, alpha, dj._int(job, "k"), len(reps))
    return dj.code_to_json(code)


def analysis_report(code, cap, seed):
    dim = nrs_dimension(code)
    rep = meets_singleton(code, cap)
    out = {"n": code.n, "dimension": dim.dimension, "distance": rep.distance,
           "singleton": rep.bound, "meets_singleton": rep.meets,
           "orbit": code.orbit_layout is not None, "reason": rep.reason,
           "distance_exact": rep.exact, "blocks": list(dim.blocks)}
    if not rep.exact:
        out["distance_upper_estimate"] = sampled_min_weight(code, seed=seed)
    return out


def cmd_analyze(job, args):
    return analysis_report(dj.code_from_json(job), args.max_enum, args.seed)


def cmd_dual(job, args):
    code = dj.code_from_json(job)
    grs = classical_dual(code, seed=args.seed, cap=min(args.max_enum, 2**16))
    layout = code.orbit_layout
    return {"field": dj.field_to_json(code.tower),
            "alpha": [dj.element_to_json(a) for a in grs.alpha],
            "k": grs.k, "u": [dj.element_to_json(u) for u in grs.u],
            "orthogonality_failures": 0,
            "multipliers_follow_orbit": None if layout is None else check_multiplier_orbit(grs, layout)}


def cmd_q_dual(job, args):
    code = dj.code_from_json(job)
    T = code.tower
    basis = q_dual(code)
    formula = [word_to_fp(T, w) for w in basis]
    direct = [word_to_fp(T, w) for w in q_dual_by_intersection(code)]
    width = code.n * T.m
    agree = fplinalg.same_row_space(fplinalg.as_matrix(formula, width),
                                    fplinalg.as_matrix(direct, width), T.p)
    if not agree:
        raise InvariantViolation("q-dual formula disagrees with the direct intersection")
    recovers = fplinalg.same_row_space(double_q_dual(code), code.fp_basis, T.p)
    if not recovers:
        raise InvariantViolation("double q-dual does not recover the code")
    return {"field": dj.field_to_json(T), "ell": code.ell, "dimension": len(basis),
            "basis": [[dj.element_to_json(x) for x in w] for w in basis],
            "intersection_agrees": agree, "double_dual_recovers": recovers}


def structure_report(st):
    T = st.code.tower
    n = st.n
    xn1 = SkewPoly.x_power_minus_one(T, n, Level.MIDDLE)
    _, dual_vectors = star_dual(st)
    return {"field": dj.field_to_json(T), "n": n, "ell": st.code.ell,
            "normal_basis": dj.normal_basis_to_json(st.basis),
            "h": [dj.poly_to_json(h) for h in st.h_list],
            "d": [dj.poly_to_json(d) for d in st.d_list],
            "h_text": [str(h) for h in st.h_list],
            "d_text": [str(d) for d in st.d_list],
            "total_divisor": [is_total_divisor(h, xn1) for h in st.h_list],
            "dimension": st.dimension,
            "cardinality_exponent": T.a * st.dimension,
            "dual_generators": dj.rows_to_json(st.cdual_list),
            "dual_vectors": [[dj.poly_to_json(f) for f in v] for v in dual_vectors],
            "q": dj.rows_to_json(st.q_list),
            "q_inv": dj.rows_to_json(st.Q_inv.entries)}


def structure_from_report(job):
    """Rebuild an :class:`SqcStructure` from a persisted structure report."""
    T = dj.field_from_json(dj._require(job, "field", dict))
    n, ell = dj._int(job, "n"), dj._int(job, "ell")
    basis = dj.normal_basis_from_json(T, dj._require(job, "normal_basis"))
    hs = tuple(dj.poly_from_json(T, h, Level.MIDDLE) for h in dj._require(job, "h", list))
    ds = tuple(dj.poly_from_json(T, d, Level.MIDDLE) for d in dj._require(job, "d", list))
    qs = dj.rows_from_json(T, dj._require(job, "q", list))
    qinv = dj.rows_from_json(T, dj._require(job, "q_inv", list))
    w = len(qs)
    if len(hs) != w or len(ds) != w or len(qinv) != w or any(len(r) != w for r in qs + qinv):
        raise DescriptorError("structure report has inconsistent sizes")
    Q = SkewMatrix(T, w, w, qs)
    Q_inv = SkewMatrix(T, w, w, qinv)
    if not (Q @ Q_inv).is_identity() or not (Q_inv @ Q).is_identity():
        raise InvariantViolation("persisted q_inv is not the inverse of q")
    xn1 = SkewPoly.x_power_minus_one(T, n, Level.MIDDLE)
    for h, d in zip(hs, ds):
        if h * d != xn1 or d * h != xn1:
            raise InvariantViolation("persisted h, d do not multiply to X^n - 1")
    gens = []
    for h, q in zip(hs, qs):
        v = lifted_to_vector(tuple(h * x for x in q), basis, n)
        if any(f for f in v):
            gens.append(v)
    code = SqcCode(T, n, ell, tuple(gens))
    return SqcStructure(code, basis, qs, hs, ds, Q, Q_inv)


def cmd_sqc_structure(job, args):
    return structure_report(module_structure(dj.sqc_from_json(job)))


def cmd_star_dual(job, args):
    st = structure_from_report(job) if "q" in job else module_structure(dj.sqc_from_json(job))
    lifted, vectors = star_dual(st)
    ds = dual_structure(st)
    recovers = ds.cdual_list == st.c_list
    if not recovers:
        raise InvariantViolation("double *-dual does not return the original basis")
    T = st.code.tower
    return {"field": dj.field_to_json(T), "n": st.n, "ell": st.code.ell,
            "dual_generators": dj.rows_to_json(lifted),
            "dual_vectors": [[dj.poly_to_json(f) for f in v] for v in vectors],
            "dual_h": [dj.poly_to_json(h) for h in ds.h_list],
            "dual_d": [dj.poly_to_json(d) for d in ds.d_list],
            "dual_dimension": sum(int(d.degree) for d in ds.d_list),
            "double_dual_recovers": recovers}


# -- verification --------------------------------------------------------------

def verify_snf_job(job):
    T = dj.field_from_json(dj._require(job, "field", dict))
    M = dj.matrix_from_json(T, dj._require(job, "matrix", dict))
    res = dj.snf_from_json(T, job["result"]) if "result" in job else smith_normal_form(M)
    bad = snf_violations(M, res)
    if bad:
        raise InvariantViolation("SNF chain violation: " + "; ".join(bad))
    return {"kind": "snf", "ok": True, "diagonal": [dj.poly_to_json(e) for e in res.diagonal]}


def verify_structure_job(job, args):
    code = dj.sqc_from_json(job)
    st = module_structure(code)
    T = code.tower
    n = code.n
    xn1 = SkewPoly.x_power_minus_one(T, n, Level.MIDDLE)
    checks = {
        "total_divisors": all(is_total_divisor(h, xn1) for h in st.h_list),
        "cofactors": all(h * d == xn1 and d * h == xn1 for h, d in zip(st.h_list, st.d_list)),
        "cardinality": T.a * st.dimension == code.fp_dimension,
        "q_orthogonal": all(not q_inner_product(c, x, st.Q_inv, n)
                            for c in st.c_list for x in st.cdual_list),
        "double_dual": dual_structure(st).cdual_list == st.c_list,
    }
    failed = [k for k, ok in checks.items() if not ok]
    if failed:
        raise InvariantViolation("structure checks failed: " + ", ".join(failed))
    return {"kind": "structure", "ok": True, "checks": checks}


def verify_nrs_job(job, args):
    code = dj.code_from_json(job)
    rep = meets_singleton(code, args.max_enum)
    checks = {"singleton": rep.distance is None or rep.distance <= rep.bound}
    if code.k <= code.n:
        grs = classical_dual(code, seed=args.seed)
        checks["dual_orthogonal"] = dual_orthogonality_failures(code, grs, seed=args.seed) == 0
        if code.orbit_layout is not None:
            T = code.tower
            checks["double_q_dual"] = fplinalg.same_row_space(double_q_dual(code),
                                                              code.fp_basis, T.p)
            vecs = [phi(T, w, code.ell) for w in _canonical_words(code)]
            checks["sqc"] = is_sqc(vecs, T, code.n // code.ell, code.ell, Level.BASE)
    failed = [k for k, ok in checks.items() if not ok]
    if failed:
        raise InvariantViolation("nRS checks failed: " + ", ".join(failed))
    return {"kind": "nrs", "ok": True, "checks": checks}


def _canonical_words(code):
    layout = code.orbit_layout
    return [layout.to_canonical(row) for row in code.generator_matrix]


def verify_suite(args, count=20):
    rng = random.Random(args.seed)
    snf_ok = 0
    for p, a, m in ((2, 1, 2), (2, 2, 2), (2, 2, 4)):
        T = make_tower(p, a, m)
        for _ in range(count):
            M = random_matrix(rng, T)
            bad = snf_violations(M, smith_normal_form(M))
            if bad:
                raise InvariantViolation("SNF chain violation: " + "; ".join(bad))
            snf_ok += 1
    sqc_ok = 0
    for a in (1, 2):
        T = make_tower(2, a, 2)
        for _ in range(count):
            code = random_sqc_code(rng, T, 2, rng.randint(1, 2))
            st = module_structure(code)
            if dual_structure(st).cdual_list != st.c_list:
                raise InvariantViolation("double *-dual mismatch")
            sqc_ok += 1
    return {"kind": "suite", "ok": True, "seed": args.seed, "snf_checked": snf_ok,
            "structures_checked": sqc_ok}


def cmd_verify(job, args):
    kind = args.kind or (job or {}).get("kind") or ("suite" if job is None else None)
    if kind not in VERIFY_KINDS:
        raise PreconditionError("verify needs --kind one of %s" % ", ".join(VERIFY_KINDS))
    if kind == "suite":
        return verify_suite(args)
    if job is None:
        raise DescriptorError("verify --kind %s needs --input" % kind)
    if kind == "snf":
        return verify_snf_job(job)
    if kind == "structure":
        return verify_structure_job(job, args)
    return verify_nrs_job(job, args)


HANDLERS = {"build-nrs": cmd_build_nrs, "analyze": cmd_analyze, "dual": cmd_dual,
            "q-dual": cmd_q_dual, "sqc-structure": cmd_sqc_structure,
            "star-dual": cmd_star_dual, "verify": cmd_verify}


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

ANALYSIS_COLUMNS = ("n", "dimension", "distance", "singleton", "meets_singleton", "orbit")


def _cell(v):
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _table(header, rows):
    widths = [max([len(h)] + [len(r[i]) for r in rows]) for i, h in enumerate(header)]
    line = lambda cells: "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()  # noqa: E731
    out = [line(header), line(["-" * w for w in widths])]
    out += [line(r) for r in rows]
    return "\n".join(out) + "\n"


def render_report(report):
    """Deterministic plain-text table for a report produced by :func:`run`."""
    if "h" in report and "d" in report:
        ticks = report.get("total_divisor") or [None] * len(report["h"])
        htxt = report.get("h_text") or [json.dumps(h) for h in report["h"]]
        dtxt = report.get("d_text") or [json.dumps(d) for d in report["d"]]
        rows = [[str(i), h, d, _cell(t)] for i, (h, d, t) in enumerate(zip(htxt, dtxt, ticks))]
        text = _table(["i", "h_i", "d_i", "h_i || X^n-1"], rows)
        return text + "dimension: %s\n" % report.get("dimension")
    if not report or "n" in report and "dimension" in report:
        rows = [[_cell(report.get(c)) for c in ANALYSIS_COLUMNS]] if report else []
        return _table(list(ANALYSIS_COLUMNS), rows)
    rows = [[k, v if isinstance(v, str) else json.dumps(v, sort_keys=True)]
            for k, v in sorted(report.items())]
    return _table(["key", "value"], rows)


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(prog="skewcodes",
                                     description="Nonlinear RS and skew quasi-cyclic codes.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--input", "-i", help="JSON job file ('-' for stdin)")
    parser.add_argument("--output", "-o", help="write the report here instead of stdout")
    parser.add_argument("--max-enum", type=int, default=DISTANCE_CAP,
                        help="enumeration cap for brute-force computations")
    parser.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    parser.add_argument("--format", choices=("json", "table"), default="json")
    parser.add_argument("--kind", choices=VERIFY_KINDS, help="what verify should check")
    return parser


def _load(path):
    if path is None:
        return None
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise DescriptorError("cannot read %s: %s" % (path, exc)) from exc
    except json.JSONDecodeError as exc:
        raise DescriptorError("invalid JSON in %s: %s" % (path, exc)) from exc


def run(args):
    """Execute one job and return the rendered report text."""
    if args.max_enum < 1:
        raise PreconditionError("--max-enum must be positive")
    job = _load(args.input)
    if job is None and args.command != "verify":
        raise DescriptorError("%s needs --input" % args.command)
    if job is not None and not isinstance(job, dict):
        raise DescriptorError("job file must contain a JSON object")
    report = HANDLERS[args.command](job, args)
    if args.format == "table":
        return render_report(report)
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        text = run(args)
    except SkewCodesError as exc:
        err = {"error": exc.kind, "message": str(exc), "exit_code": exc.exit_code}
        sys.stderr.write(json.dumps(err, sort_keys=True) + "\n")
        return exc.exit_code
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
