"""Command line interface: one binary, nine subcommands, JSON reports.

Exit codes: 0 success / conditions hold, 1 verification failed / conditions
fail / bound exceeded, 2 usage or parse error, 3 budget exhausted.

JSON reports share an envelope (command, version, inputs echo, result,
exit_code).  Integers outside the signed 64-bit range are emitted as
decimal strings and the envelope gains `"numeric_as_string": true`.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__, designs, ekr, families, parameters, search
from .audit import DEFAULT_BUDGET as AUDIT_DEFAULT_BUDGET, audit as run_audit
from .errors import BudgetExceededError, NonIntegralError, ParseError, VerificationError

_INT64_MIN = -(2**63)
_INT64_MAX = 2**63 - 1


def _normalize(obj, flag: dict):
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        if obj > _INT64_MAX or obj < _INT64_MIN:
            flag["hit"] = True
            return str(obj)
        return obj
    if isinstance(obj, (list, tuple)):
        return [_normalize(x, flag) for x in obj]
    if isinstance(obj, dict):
        return {k: _normalize(v, flag) for k, v in obj.items()}
    return obj


def _envelope(command: str, inputs: dict, result: dict, exit_code: int) -> dict:
    flag = {"hit": False}
    body = {
        "command": command,
        "version": __version__,
        "inputs": _normalize(inputs, flag),
        "result": _normalize(result, flag),
        "exit_code": exit_code,
    }
    if flag["hit"]:
        body["numeric_as_string"] = True
    return body


def _default_threads() -> int:
    raw = os.environ.get("EKR_LATTICE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _element_strings(elements) -> list[str]:
    return [families.format_element(x) for x in elements]


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (exit_code, inputs, result, text_lines)


def _cmd_params(args):
    spec = families.parse_family_spec(args.family)
    top = spec.top_rank
    if args.r is not None and not 0 <= args.r <= top:
        raise ParseError(f"--r out of range 0..{top}")
    if args.s is not None and not 0 <= args.s <= top:
        raise ParseError(f"--s out of range 0..{top}")
    pairs = [
        (r, s)
        for r in range(top + 1)
        for s in range(r, top + 1)
        if (args.r is None or r == args.r) and (args.s is None or s == args.s)
    ]
    if not pairs:
        raise ParseError("--r/--s select no valid pair r <= s")
    rows = [
        {
            "r": r,
            "s": s,
            "mu": parameters.mu(spec, r, s),
            "nu": parameters.nu(spec, r, s),
            "theta_r": parameters.theta(spec, r),
            "alpha": parameters.alpha(spec, r, s),
        }
        for r, s in pairs
    ]
    lines = [f"family {spec} (top rank {top})"]
    lines += [
        f"r={row['r']} s={row['s']}: mu={row['mu']} nu={row['nu']} "
        f"theta(r)={row['theta_r']} alpha={row['alpha']}"
        for row in rows
    ]
    result = {"family": str(spec), "top_rank": top, "rows": rows}
    return 0, {"family": args.family, "r": args.r, "s": args.s}, result, lines


def _cmd_audit(args):
    spec = families.parse_family_spec(args.family)
    report = run_audit(spec, budget=args.budget)
    checks = [
        {
            "id": c.check_id,
            "passed": c.passed,
            "cases": c.cases,
            "elapsed": round(c.elapsed, 6),
            "counterexample": c.counterexample,
        }
        for c in report.checks
    ]
    lines = [f"audit {spec}"]
    for c in report.checks:
        mark = "pass" if c.passed else "FAIL"
        lines.append(f"  {c.check_id:16s} {mark}  ({c.cases} cases)")
        if c.counterexample:
            lines.append(f"    counterexample: {c.counterexample}")
    lines.append("all checks passed" if report.passed else "AUDIT FAILED")
    code = 0 if report.passed else 1
    result = {"family": str(spec), "passed": report.passed, "checks": checks}
    return code, {"family": args.family, "budget": args.budget}, result, lines


def _cmd_enumerate(args):
    spec = families.parse_family_spec(args.family)
    elements = _element_strings(families.enumerate_fiber(spec, args.rank))
    result = {
        "family": str(spec),
        "rank": args.rank,
        "count": len(elements),
        "elements": elements,
    }
    lines = elements + [f"count {len(elements)}"]
    return 0, {"family": args.family, "rank": args.rank}, result, lines


def _cmd_gen(args):
    if args.kind == "full-fiber":
        if not args.family:
            raise ParseError("gen --kind full-fiber requires --family")
        spec = families.parse_family_spec(args.family)
        cert = designs.full_fiber(spec, t=args.strength)
    else:
        if args.q is None or args.m is None:
            raise ParseError("gen --kind linear-oa requires --q and --m")
        cert = designs.generate_linear_oa(args.q, args.m)
    designs.save_design(cert, args.output)
    result = {
        "kind": args.kind,
        "family": str(cert.spec),
        "strength": cert.strength,
        "size": cert.size,
        "indices": list(cert.indices),
        "path": args.output,
    }
    lines = [f"wrote {cert.size} elements ({cert.spec}, strength {cert.strength}) to {args.output}"]
    inputs = {"kind": args.kind, "family": args.family, "q": args.q, "m": args.m, "strength": args.strength, "output": args.output}
    return 0, inputs, result, lines


def _cmd_check_design(args):
    spec, declared, elements = designs.read_design_file(args.design)
    t = args.strength if args.strength is not None else declared
    if not 0 <= t <= spec.top_rank:
        raise ParseError(f"strength {t} out of range 0..{spec.top_rank}")
    inputs = {"design": args.design, "strength": args.strength}
    lam = designs.is_design(spec, elements, t)
    if lam is None:
        (z1, c1), (z2, c2) = designs.design_witness(spec, elements, t)
        result = {
            "family": str(spec),
            "strength": t,
            "size": len(elements),
            "verified": False,
            "witness": {
                "element_1": families.format_element(z1),
                "count_1": c1,
                "element_2": families.format_element(z2),
                "count_2": c2,
            },
        }
        lines = [
            f"NOT a {t}-design: {families.format_element(z1)} covered {c1} times, "
            f"{families.format_element(z2)} covered {c2} times"
        ]
        return 1, inputs, result, lines
    indices = [designs.derive_index(spec, lam, t, j) for j in range(t + 1)]
    result = {
        "family": str(spec),
        "strength": t,
        "size": len(elements),
        "verified": True,
        "indices": indices,
    }
    lines = [
        f"{args.design}: {spec}, {len(elements)} elements, verified strength {t}, "
        f"indices {indices}"
    ]
    return 0, inputs, result, lines


def _load_cert(args):
    cert = designs.load_design(args.design)
    if getattr(args, "t", None) is not None:
        if not 0 <= args.t <= cert.strength:
            raise ParseError(f"--t must be at most the certificate strength {cert.strength}")
        cert = designs.restrict_strength(cert, args.t)
    return cert


def _condition_rows_json(report):
    return [
        {
            "r": row.r,
            "conditions": list(row.conditions),
            "lhs": row.lhs,
            "rhs": row.rhs,
            "theta_lhs": row.theta_lhs,
            "theta_rhs": row.theta_rhs,
            "holds": row.holds,
        }
        for row in report.rows
    ]


def _cmd_ekr_check(args):
    cert = _load_cert(args)
    report = ekr.check_conditions(cert, args.s)
    result = {
        "family": str(cert.spec),
        "s": report.s,
        "t": report.t,
        "design_size": cert.size,
        "indices": list(report.indices),
        "bound": report.bound,
        "cond1_vacuous": report.cond1_vacuous,
        "rows": _condition_rows_json(report),
        "theorem_form": report.theorem_form,
        "remark_rows": [
            {"r": row.r, "conditions": list(row.conditions), "lhs": row.lhs, "rhs": row.rhs, "holds": row.holds}
            for row in report.remark_rows
        ],
        "remark_form": report.remark_form,
        "remark_agrees": report.remark_agrees,
        "table1_form": report.table1_form,
        "table1_agrees": report.table1_agrees,
    }
    lines = [f"{cert.spec}: design of {cert.size} elements, s={report.s}, t={report.t}, bound lambda_s={report.bound}"]
    for row in report.rows:
        op = "<" if row.holds else ">="
        lines.append(
            f"  r={row.r} [{'+'.join(row.conditions)}] {row.lhs} {op} {row.rhs}"
            f"  (theta form: {row.theta_lhs} {op} {row.theta_rhs})"
        )
    if report.cond1_vacuous:
        lines.append("  cond1 range is empty (2s-t < 0)")
    lines.append(f"theorem conditions {'hold' if report.theorem_form else 'FAIL'}")
    lines.append(
        f"printed remark form: {report.remark_form}"
        + ("" if report.remark_agrees else "  (DISAGREES with the raw conditions)")
    )
    lines.append(
        f"closed-form threshold: {report.table1_form}"
        + ("" if report.table1_agrees else "  (DISAGREES with the raw conditions)")
    )
    code = 0 if report.theorem_form else 1
    return code, {"design": args.design, "s": args.s, "t": args.t}, result, lines


def _cmd_dr(args):
    cert = _load_cert(args)
    report = ekr.compute_dr(cert, args.s, args.r)
    within = None if report.d_r is None else report.d_r <= report.bound
    result = {
        "family": str(cert.spec),
        "s": report.s,
        "r": report.r,
        "d_r": report.d_r,
        "bound": report.bound,
        "within_bound": within,
        "witness": None
        if report.witness is None
        else {"x": families.format_element(report.witness[0]), "y": families.format_element(report.witness[1])},
    }
    if report.d_r is None:
        lines = [f"d_{report.r}: no pair attains meet rank {report.r}; bound {report.bound}"]
    else:
        x, y = report.witness
        lines = [
            f"d_{report.r} = {report.d_r} (bound {report.bound}, "
            f"witness x={families.format_element(x)}, y={families.format_element(y)})"
        ]
    return 0, {"design": args.design, "s": args.s, "r": args.r, "t": args.t}, result, lines


def _cmd_search_max(args):
    cert = _load_cert(args)
    result_obj = search.max_intersecting(
        cert,
        args.s,
        deterministic=args.deterministic,
        enumerate_all=args.all,
        node_budget=args.node_budget,
        threads=args.threads,
    )
    result = {
        "family": str(cert.spec),
        "s": args.s,
        "design_size": cert.size,
        "optimum": result_obj.optimum,
        "status": result_obj.status,
        "nodes": result_obj.nodes,
        "witness": _element_strings(result_obj.witness),
        "all_max": None
        if result_obj.all_max is None
        else [_element_strings(fam) for fam in result_obj.all_max],
        "all_max_overflow": result_obj.all_max_overflow,
    }
    lines = [
        f"maximum {args.s}-intersecting family size: {result_obj.optimum} ({result_obj.status}, {result_obj.nodes} nodes)",
        "witness: " + "; ".join(_element_strings(result_obj.witness)),
    ]
    if result_obj.all_max is not None:
        lines.append(f"maximum families: {len(result_obj.all_max)}")
    if result_obj.all_max_overflow:
        lines.append("maximum-family enumeration overflowed the cap; list omitted")
    code = 0 if result_obj.status == "proved-optimal" else 3
    inputs = {
        "design": args.design,
        "s": args.s,
        "all": args.all,
        "deterministic": args.deterministic,
        "node_budget": args.node_budget,
    }
    return code, inputs, result, lines


def _cmd_verify_extremal(args):
    cert = designs.load_design(args.design)
    spec, members = designs.read_family_file(args.family_file)
    if spec != cert.spec:
        raise ParseError(
            f"family file spec {spec} does not match design spec {cert.spec}"
        )
    verdict = ekr.verify_extremal(cert, members, args.s)
    result = {
        "family": str(cert.spec),
        "s": args.s,
        "size": verdict.size,
        "bound": verdict.bound,
        "status": verdict.status,
        "center": None if verdict.center is None else families.format_element(verdict.center),
    }
    line = f"family of {verdict.size} vs bound {verdict.bound}: {verdict.status}"
    if verdict.center is not None:
        line += f" (center {families.format_element(verdict.center)})"
    code = 1 if verdict.status == "exceeds-bound" else 0
    return code, {"design": args.design, "family_file": args.family_file, "s": args.s}, result, [line]


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report on stdout")
    common.add_argument("--quiet", action="store_true", help="suppress the human-readable report")
    common.add_argument(
        "--threads",
        type=int,
        default=_default_threads(),
        help="worker threads for search (default: EKR_LATTICE_THREADS or 1)",
    )

    parser = argparse.ArgumentParser(
        prog="ekrlattice",
        description="Exact designs, regularity audits, and intersection bounds in ranked meet-semilattices.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", parents=[common], help="print the mu/nu/theta/alpha table")
    p.add_argument("--family", required=True, help="family spec, e.g. johnson:v=7,m=3")
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--s", type=int, default=None)
    p.set_defaults(handler=_cmd_params)

    p = sub.add_parser("audit", parents=[common], help="exhaustively verify the regularity axioms")
    p.add_argument("--family", required=True)
    p.add_argument("--budget", type=int, default=AUDIT_DEFAULT_BUDGET)
    p.set_defaults(handler=_cmd_audit)

    p = sub.add_parser("enumerate", parents=[common], help="list one fiber in canonical order")
    p.add_argument("--family", required=True)
    p.add_argument("--rank", type=int, required=True)
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser("gen", parents=[common], help="generate a design file")
    p.add_argument("--kind", choices=("full-fiber", "linear-oa"), required=True)
    p.add_argument("--family", help="family spec (full-fiber)")
    p.add_argument("--strength", type=int, default=None, help="declared strength (full-fiber; default top rank)")
    p.add_argument("--q", type=int, default=None, help="prime alphabet size (linear-oa)")
    p.add_argument("--m", type=int, default=None, help="word length (linear-oa)")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(handler=_cmd_gen)

    p = sub.add_parser("check-design", parents=[common], help="re-verify a design file")
    p.add_argument("--design", required=True)
    p.add_argument("--strength", type=int, default=None, help="verify at this strength instead of the declared one")
    p.set_defaults(handler=_cmd_check_design)

    p = sub.add_parser("ekr-check", parents=[common], help="evaluate the bound's hypotheses")
    p.add_argument("--design", required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, default=None, help="use this strength (default: certificate strength)")
    p.set_defaults(handler=_cmd_ekr_check)

    p = sub.add_parser("dr", parents=[common], help="exact d_r statistic with its bound")
    p.add_argument("--design", required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--t", type=int, default=None)
    p.set_defaults(handler=_cmd_dr)

    p = sub.add_parser("search-max", parents=[common], help="exact maximum s-intersecting family")
    p.add_argument("--design", required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--all", action="store_true", help="enumerate every maximum family")
    p.add_argument("--deterministic", action="store_true", help="single thread, lexicographically least witness")
    p.add_argument("--node-budget", type=int, default=None)
    p.set_defaults(handler=_cmd_search_max)

    p = sub.add_parser("verify-extremal", parents=[common], help="classify a family against the bound")
    p.add_argument("--design", required=True)
    p.add_argument("--family-file", required=True)
    p.add_argument("--s", type=int, required=True)
    p.set_defaults(handler=_cmd_verify_extremal)

    return parser


def run(argv=None) -> int:
    """Parse argv, run one subcommand, print its report, return the exit code."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        code, inputs, result, lines = args.handler(args)
    except (ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (VerificationError, NonIntegralError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    if args.json:
        print(json.dumps(_envelope(args.command, inputs, result, code), indent=2, sort_keys=True))
    elif not args.quiet:
        for line in lines:
            print(line)
    return code


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
