"""Command-line front end: radius, verify, sharpness, table and lemmas.

Exit codes: 0 success, 1 no sharpness witness, 2 invalid arguments,
3 hypothesis violation, 4 no root, 5 inequality violated below the radius.
Set BOHR_LOG to a logging level name for diagnostics on stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from typing import List, Optional, Sequence

from .errors import DomainError, HypothesisViolation, NoRootError
from .functions import DEFAULT_A_GRID, DEFAULT_R_FRACTIONS, sharpness_probe, verify_grid
from .lemmas import run_lemma_suite
from .psi import parse_family
from .radius import (
    DEFAULT_TOL,
    PolynomialG,
    RadiusProblem,
    Theorem,
    closed_form_radius,
    solve_radius,
)
from .special import HypergeometricParams

log = logging.getLogger("bohrlab")

EXIT_NO_WITNESS = 1
EXIT_USAGE = 2
EXIT_HYPOTHESIS = 3
EXIT_NO_ROOT = 4
EXIT_VIOLATION = 5


def fmt(x):
    """Round floats to 15 significant digits for reproducible output."""
    if isinstance(x, float):
        return float(f"{x:.15g}")
    if isinstance(x, dict):
        return {k: fmt(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [fmt(v) for v in x]
    return x


def _floats(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma separated numbers, got {text!r}") from exc


def _hyp(text: str) -> HypergeometricParams:
    vals = _floats(text)
    if len(vals) != 3:
        raise argparse.ArgumentTypeError(f"expected a,b,c, got {text!r}")
    return HypergeometricParams(*vals)


def _problem(args, K: Optional[float] = None) -> RadiusProblem:
    return RadiusProblem(
        theorem=Theorem.parse(args.theorem),
        family=parse_family(args.family),
        K=args.K if K is None else K,
        p=args.p,
        G=PolynomialG(tuple(args.G)) if args.G else PolynomialG(),
        hyp=args.hyp,
    )


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(fmt(obj), indent=2) + "\n"


def _csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([f"{v:.15g}" if isinstance(v, float) else ("" if v is None else v)
                         for v in row])
    return buf.getvalue()


def _radius_record(problem: RadiusProblem, result) -> dict:
    return {
        "theorem": problem.theorem.value,
        "family": str(problem.psi_family),
        "K": float(problem.K),
        "p": float(problem.p),
        "G": list(problem.G.coefficients),
        "radius": result.radius,
        "residual": result.residual,
        "bracket": list(result.bracket),
        "constraint_radius_R": result.constraint_radius_R,
        "closed_form": closed_form_radius(problem),
        "iterations": result.iterations,
    }


def cmd_radius(args) -> int:
    problem = _problem(args)
    record = _radius_record(problem, solve_radius(problem, args.tol))
    if args.format == "csv":
        keys = [k for k in record if k not in ("G", "bracket")]
        _emit(_csv(keys, [[record[k] for k in keys]]), args.output)
    else:
        _emit(_json(record), args.output)
    return 0


def cmd_verify(args) -> int:
    problem = _problem(args)
    radius = solve_radius(problem, args.tol).radius
    if args.r_values:
        r_values = args.r_values
    else:
        r_values = [c * radius for c in args.r_fracs]
    bad = [r for r in r_values if not (0.0 <= r <= radius)]
    if bad:
        raise DomainError(f"r values {bad} are not below the radius {radius}")
    report = verify_grid(problem, args.a_grid, r_values, radius)
    if args.format == "csv":
        rows = [[row.a, row.r, row.lhs, row.rhs, row.margin] for row in report.rows]
        _emit(_csv(["a", "r", "lhs", "rhs", "margin"], rows), args.output)
    else:
        _emit(_json({
            **_radius_record(problem, solve_radius(problem, args.tol)),
            "passed": report.passed,
            "max_excess": report.max_excess,
            "rows": [{"a": row.a, "r": row.r, "lhs": row.lhs, "rhs": row.rhs,
                      "margin": row.margin} for row in report.rows],
        }), args.output)
    if not report.passed:
        log.error("inequality violated below the radius: max excess %.3g", report.max_excess)
        return EXIT_VIOLATION
    return 0


def cmd_sharpness(args) -> int:
    problem = _problem(args)
    radius = solve_radius(problem, args.tol).radius
    eps = args.eps if args.eps is not None else args.eps_frac * (1.0 - radius)
    if not eps > 0:
        raise DomainError(f"epsilon must be positive, got {eps}")
    witness = sharpness_probe(problem, eps, args.a_grid, radius)
    record = {"theorem": problem.theorem.value, "family": str(problem.psi_family),
              "K": float(problem.K), "p": float(problem.p), "radius": radius,
              "epsilon": eps, "witness": None}
    if witness is not None:
        record["witness"] = {"a": witness.a, "r": witness.r, "lhs": witness.lhs,
                             "rhs": witness.rhs}
    _emit(_json(record), args.output)
    return 0 if witness is not None else EXIT_NO_WITNESS


def cmd_table(args) -> int:
    rows = []
    for K in args.K_values:
        problem = _problem(args, K)
        result = solve_radius(problem, args.tol)
        rows.append(_radius_record(problem, result))
    keys = ["theorem", "family", "K", "p", "radius", "closed_form", "constraint_radius_R",
            "residual"]
    if args.format == "json":
        _emit(_json([{k: row[k] for k in keys} for row in rows]), args.output)
    else:
        _emit(_csv(keys, [[row[k] for k in keys] for row in rows]), args.output)
    return 0


def cmd_lemmas(args) -> int:
    report = run_lemma_suite(args.count, args.seed, args.max_zeros, args.order)
    _emit(_json({"count": report.count, "seed": report.seed, "passed": report.passed,
                 "tolerance": report.tolerance, "min_slack": report.min_slack,
                 "mobius_equality_gap": report.equality_gap}), args.output)
    return 0 if report.passed else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bohrlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def problem_flags(p, with_K=True):
        p.add_argument("--theorem", default="c1", choices=[t.value for t in Theorem])
        p.add_argument("--family", default="geometric",
                       help="geometric | harmonic | zeta2 | hyp:a,b,c")
        if with_K:
            p.add_argument("--K", type=float, default=1.0)
        p.add_argument("--p", type=float, default=1.0)
        p.add_argument("--G", type=_floats, default=None, help="c1,c2,... (T1/T2 only)")
        p.add_argument("--hyp", type=_hyp, default=None,
                       help="a,b,c for the convolution theorem (default 1,1,2)")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        p.add_argument("--output", default=None)

    p = sub.add_parser("radius", help="solve for the sharp radius")
    problem_flags(p)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("verify", help="check the inequality on Möbius atoms below the radius")
    problem_flags(p)
    p.add_argument("--a-grid", type=_floats, default=list(DEFAULT_A_GRID))
    p.add_argument("--r-fracs", type=_floats, default=list(DEFAULT_R_FRACTIONS))
    p.add_argument("--r-values", type=_floats, default=None,
                   help="absolute radii; each must not exceed the solved radius")
    p.add_argument("--format", choices=["json", "csv"], default="csv")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sharpness", help="find a violating Möbius atom beyond the radius")
    problem_flags(p)
    p.add_argument("--eps", type=float, default=None, help="absolute offset past the radius")
    p.add_argument("--eps-frac", type=float, default=0.05,
                   help="offset as a fraction of 1 - radius when --eps is absent")
    p.add_argument("--a-grid", type=_floats, default=[0.9, 0.99, 0.999, 0.9999])
    p.set_defaults(func=cmd_sharpness)

    p = sub.add_parser("table", help="radius versus K")
    problem_flags(p, with_K=False)
    p.add_argument("--K-values", type=_floats, default=[float(k) for k in range(1, 11)])
    p.add_argument("--format", choices=["json", "csv"], default="csv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("lemmas", help="coefficient lemma suite on random Blaschke products")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-zeros", type=int, default=4)
    p.add_argument("--order", type=int, default=512)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_lemmas)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=os.environ.get("BOHR_LOG", "WARNING").upper(),
                        format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except HypothesisViolation as exc:
        log.error("hypothesis violated: %s", exc)
        return EXIT_HYPOTHESIS
    except NoRootError as exc:
        log.error("no root: %s", exc)
        return EXIT_NO_ROOT
    except (DomainError, ValueError) as exc:
        log.error("invalid arguments: %s", exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
