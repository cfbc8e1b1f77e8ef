"""Command-line front end.

Exit codes: 0 success, 1 input error (a JSON error object is printed),
2 invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .blowfiber import BlowupLocalData, contractibility_suite, fiber_of_simple_blowup, verify_contractibility
from .degen import (
    DualGraph,
    NodeBlowup,
    SmoothPointBlowup,
    apply_blowup,
    euler_characteristic_fiber,
    good_reduction,
    is_semistable,
    load_graph,
    tate_ngon,
    validate,
    zeta_function,
)
from .errors import InvalidGraph, InvariantViolation, LogKNError
from .etalecmp import compare_log_point, group_cohomology_Zr_mod_n, mapping_torus_mod_n_report, torus_cohomology_mod_n
from .knfiber import (
    blowup_invariance,
    build_fiber,
    compare_with_oracle,
    fiber_homology,
    hopf_surface,
    monodromy,
    tate_gluing_check,
    total_space_homology,
)
from .monoid import FsMonoid, cokernel_of_gp, good_model_chart, groupification, is_exact, is_kummer, is_saturated, kn_local_model

NON_REDUCED_WARNING = "non-reduced: fiber surface omitted"


class CommandFailed(Exception):
    """Carries a report that must still be printed before exiting with ``code``."""

    def __init__(self, report: dict, code: int):
        super().__init__(code)
        self.report = report
        self.code = code


# reports ------------------------------------------------------------------------


def _load(path: str) -> DualGraph:
    g = load_graph(path)
    issues = validate(g)
    if issues:
        raise InvalidGraph(issues)
    return g


def analysis_report(g: DualGraph) -> dict:
    report: dict = {
        "input": {
            "name": g.name,
            "vertices": len(g.vertices),
            "edges": len(g.edges),
            "marks": g.total_marks,
            "first_betti": g.first_betti,
        },
        "semistable": is_semistable(g),
        "euler": euler_characteristic_fiber(g),
        "zeta": [list(p) for p in zeta_function(g)],
        "warnings": [],
    }
    if not report["semistable"]:
        report["warnings"].append(NON_REDUCED_WARNING)
        return report
    f = build_fiber(g)
    r = monodromy(f)
    report["fiber"] = {"genus": f.genus, "boundary": f.boundary}
    report["monodromy"] = r.to_json()
    report["total_homology"] = total_space_homology(f, r).to_json()
    report["fiber_homology"] = fiber_homology(f).to_json()
    report["oracle_agrees"] = compare_with_oracle(f, r.T).passed
    problems = r.violations(f)
    if problems:
        report["warnings"].extend(problems)
        raise CommandFailed(report, 2)
    return report


def tate_report(n: int) -> dict:
    report = analysis_report(tate_ngon(n))
    if n == 1:
        report["gluing_check"] = tate_gluing_check()
        if not report["gluing_check"]["passed"]:
            raise CommandFailed(report, 2)
    return report


def hopf_report() -> dict:
    fiber, total = hopf_surface()
    return {
        "fiber_homology": fiber.to_json(),
        "total_homology": total.to_json(),
        "fiber": str(fiber),
        "total": str(total),
    }


def blowfiber_report(samples: int, seed: int, max_size: int = 4) -> dict:
    rows = contractibility_suite(max_size, samples, seed)
    ok = all(r["passed"] and r["dimension"] == r["expected_dimension"] for r in rows)
    report = {"samples": samples, "seed": seed, "passed": ok, "cases": rows}
    if not ok:
        raise CommandFailed(report, 2)
    return report


def chart_report(generators: str | None, multiplicities: str | None) -> dict:
    if multiplicities is not None:
        a = [int(x) for x in multiplicities.split(",") if x.strip()]
        f = good_model_chart(a)
        model = kn_local_model(f.target)
        coker = cokernel_of_gp(f)
        return {
            "multiplicities": a,
            "exact": is_exact(f),
            "kummer": is_kummer(f),
            "cokernel_gp": {"rank": coker.rank, "torsion": list(coker.torsion)},
            "target": _monoid_json(f.target, model),
        }
    P = FsMonoid.parse(generators)
    return _monoid_json(P, kn_local_model(P))


def _monoid_json(P: FsMonoid, model) -> dict:
    gp = groupification(P)
    return {
        "generators": [list(g) for g in P.generators],
        "saturated": is_saturated(P),
        "groupification": {"rank": gp.rank, "torsion": list(gp.torsion)},
        "kn_local_model": {
            "cone_dim": model.cone_dim,
            "torus_rank": model.torus_rank,
            "components": model.components,
            "description": model.describe(),
        },
        "warnings": list(model.warnings),
    }


# rendering ------------------------------------------------------------------------


def _is_matrix(x) -> bool:
    return isinstance(x, list) and x and all(isinstance(r, list) and all(isinstance(v, int) for v in r) for r in x)


def render_text(obj, indent: int = 0) -> str:
    pad = " " * indent
    lines = []
    if isinstance(obj, dict):
        width = max((len(str(k)) for k in obj), default=0)
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not (isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)):
                if _is_matrix(v):
                    w = max(len(str(x)) for r in v for x in r)
                    lines.append(f"{pad}{str(k):<{width}} :")
                    lines.extend(f"{pad}  [ " + " ".join(f"{x:>{w}}" for x in r) + " ]" for r in v)
                else:
                    lines.append(f"{pad}{str(k):<{width}} :")
                    lines.append(render_text(v, indent + 2))
            else:
                lines.append(f"{pad}{str(k):<{width}} : {v}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict) and all(not isinstance(v, (dict, list)) or not v or all(
                not isinstance(x, (dict, list)) for x in v) for v in item.values()):
                lines.append(pad + "- " + "  ".join(f"{k}={v}" for k, v in item.items()))
            else:
                lines.append(pad + "-")
                lines.append(render_text(item, indent + 2))
    else:
        lines.append(f"{pad}{obj}")
    return "\n".join(lines)


def emit(obj, pretty: bool, stream=None) -> None:
    stream = stream or sys.stdout
    if pretty:
        print(render_text(obj), file=stream)
    else:
        print(json.dumps(obj, sort_keys=False), file=stream)


# commands -------------------------------------------------------------------------


def cmd_analyze(args) -> dict:
    return analysis_report(_load(args.path))


def cmd_blowup(args) -> dict:
    g = _load(args.path)
    if args.node is not None:
        move = NodeBlowup(args.node)
    else:
        move = SmoothPointBlowup(args.smooth_point, args.through_mark)
    h = apply_blowup(g, move)
    if not args.check:
        return h.to_json()
    inv = blowup_invariance(g, move)
    report = {"graph": h.to_json(), "invariance": inv.to_json()}
    if not inv.passed:
        raise CommandFailed(report, 2)
    return report


def cmd_chart(args) -> dict:
    return chart_report(args.generators, args.multiplicities)


def cmd_examples(args) -> dict:
    if args.name == "tate":
        return tate_report(args.n)
    if args.name == "good-reduction":
        return analysis_report(good_reduction(args.genus))
    if args.name == "hopf":
        return hopf_report()
    return blowfiber_report(args.samples, args.seed)


def cmd_compare_etale(args) -> dict:
    n = args.mod
    if args.log_point is not None:
        torus = torus_cohomology_mod_n(args.log_point, n)
        group = group_cohomology_Zr_mod_n(args.log_point, n)
        report = {
            "r": args.log_point,
            "modulus": n,
            "kn_torus": torus.to_json(),
            "group_Zr": group.to_json(),
            "agree": compare_log_point(args.log_point, n),
        }
    else:
        if args.path is None:
            raise ValueError("compare-etale needs a graph file or --log-point")
        g = _load(args.path)
        report = mapping_torus_mod_n_report(g, n).to_json()
        report["agree"] = report.pop("passed")
    if not report["agree"]:
        raise CommandFailed(report, 2)
    return report


def cmd_blowfiber(args) -> dict:
    L = frozenset(int(x) for x in args.l.split(",") if x.strip())
    model = fiber_of_simple_blowup(BlowupLocalData(args.i, L))
    cert = verify_contractibility(model, args.samples, args.seed)
    report = {
        "I": args.i,
        "L": sorted(L),
        "dimension": model.dimension,
        "certificate": cert.to_json(),
    }
    if not cert.passed:
        raise CommandFailed(report, 2)
    return report


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="aligned text instead of JSON")

    parser = argparse.ArgumentParser(prog="logkn", description="Kato-Nakayama fibers of curve degenerations.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="full report for a dual graph file")
    p.add_argument("path")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("blowup", parents=[common], help="apply a blowup move")
    p.add_argument("path")
    move = p.add_mutually_exclusive_group(required=True)
    move.add_argument("--node", metavar="EDGE")
    move.add_argument("--smooth-point", metavar="VERTEX")
    p.add_argument("--through-mark", action="store_true")
    p.add_argument("--check", action="store_true", help="also check invariance; exit 2 on failure")
    p.set_defaults(func=cmd_blowup)

    p = sub.add_parser("chart", parents=[common], help="monoid / chart diagnostics")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--generators", help='e.g. "1,0;1,1;1,2"')
    src.add_argument("--multiplicities", help='e.g. "1,2"')
    p.set_defaults(func=cmd_chart)

    p = sub.add_parser("examples", parents=[common], help="built-in scenarios")
    p.add_argument("name", choices=["tate", "good-reduction", "hopf", "blowfiber"])
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--genus", type=int, default=1)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_examples)

    p = sub.add_parser("compare-etale", parents=[common], help="finite-coefficient comparisons")
    p.add_argument("path", nargs="?")
    p.add_argument("--log-point", type=int, metavar="R")
    p.add_argument("--mod", type=int, required=True)
    p.set_defaults(func=cmd_compare_etale)

    p = sub.add_parser("blowfiber", parents=[common], help="one blowup fiber contractibility check")
    p.add_argument("--i", type=int, required=True, help="size of the center's coordinate set")
    p.add_argument("--l", default="", help="comma-separated log indices")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_blowfiber)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    pretty = getattr(args, "pretty", False)
    try:
        emit(args.func(args), pretty)
        return 0
    except CommandFailed as exc:
        emit(exc.report, pretty)
        return exc.code
    except InvariantViolation as exc:
        emit({"error": exc.code, "message": str(exc)}, pretty, sys.stdout)
        return 2
    except InvalidGraph as exc:
        emit({"error": exc.code, "issues": [{"code": i.code, "message": i.message} for i in exc.issues]}, pretty)
        return 1
    except LogKNError as exc:
        emit({"error": exc.code, "message": str(exc)}, pretty)
        return 1
    except (ValueError, OSError) as exc:
        emit({"error": type(exc).__name__, "message": str(exc)}, pretty)
        return 1


if __name__ == "__main__":
    sys.exit(main())
