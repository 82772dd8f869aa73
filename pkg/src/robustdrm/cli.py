"""Command line front-end.

Subcommands: bound, frontier, insurance-case, portfolio.  Domain errors are
reported as a JSON object with an "error" field and a non-zero exit code:
2 for usage errors, 3 for domain errors, 4 for numerical failures.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import UncertaintyBall, bound, frontier, reference_value, var_bounds
from .case_study import DEFAULT_ALPHAS, DEFAULT_EPS, insurance_case_study
from .distortions import build_weight, parse_measure
from .errors import NumericError, RobustDRMError, UsageError
from .extensions import (
    PortfolioProblem,
    estimate_ambiguity,
    portfolio_objective,
    portfolio_optimize,
    read_portfolio_json,
    read_returns_csv,
)
from .quantile import (
    DEFAULT_N,
    MomentSpec,
    ParametricReference,
    discretize,
    family_parameters,
    moments,
    read_quantile_csv,
)


def parse_reference(text: str, n: int):
    if text.startswith("file:"):
        q = read_quantile_csv(text[5:])
        return q
    parts = text.split(":")
    fam = parts[0]
    try:
        params = tuple(float(x) for x in parts[1:])
    except ValueError:
        raise UsageError(f"cannot parse reference {text!r}") from None
    names = family_parameters(fam)
    if len(params) != len(names):
        raise UsageError(f"reference {fam} expects {len(names)} parameters {names}")
    return discretize(ParametricReference(fam, params), n)


def parse_eps(text: str) -> float:
    if text.strip().lower() in ("inf", "+inf", "infinity"):
        return math.inf
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"cannot parse epsilon {text!r}") from None


def parse_eps_grid(text: str) -> np.ndarray:
    try:
        a, b, k = text.split(":")
        return np.linspace(float(a), float(b), int(k))
    except ValueError:
        raise UsageError("--eps-grid expects start:stop:steps") from None


def _float_list(text: str):
    try:
        return tuple(parse_eps(x) for x in text.split(",") if x.strip())
    except UsageError:
        raise UsageError(f"cannot parse list {text!r}") from None


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return repr(x) if math.isfinite(x) else ("inf" if x > 0 else "-inf" if x < 0 else "nan")
    return str(x)


def _write_csv(rows, out):
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    for r in rows:
        wr.writerow([_fmt(v) for v in r])
    _emit(buf.getvalue(), out)


def _emit(text: str, out):
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(type(o).__name__)


def _sanitize(o):
    if isinstance(o, dict):
        return {k: _sanitize(v) for k, v in o.items()}
    if isinstance(o, (list, tuple)):
        return [_sanitize(v) for v in o]
    if isinstance(o, np.ndarray):
        return _sanitize(o.tolist())
    if isinstance(o, (float, np.floating)) and not math.isfinite(o):
        return _fmt(float(o))
    return o


def _emit_json(obj, out):
    _emit(json.dumps(_sanitize(obj), indent=2, default=_json_default) + "\n", out)


def _ball_from_args(args):
    F = parse_reference(args.reference, args.grid_n)
    m = moments(F)
    target = MomentSpec(m.mu if args.mu is None else args.mu, m.sigma if args.sigma is None else args.sigma)
    return F, target


REPORT_FIELDS = ("measure", "side", "epsilon", "value", "attained", "lambda", "case", "epsilon_star", "c0",
                 "achieved_dW", "achieved_mu", "achieved_sigma")


def cmd_bound(args):
    F, target = _ball_from_args(args)
    spec = parse_measure(args.measure)
    ball = UncertaintyBall(F, target, parse_eps(args.eps))
    sides = ("worst", "best") if args.side == "both" else (args.side,)
    if spec.kind == "var":
        worst, best = var_bounds(spec.params[0], ball)
        reports = [r for r in (worst, best) if r.side in sides]
    else:
        w = None if spec.kind == "rvar" else build_weight(spec, F.n)
        reports = [bound(spec, ball, s, w) for s in sides]
    dicts = [r.as_dict(with_extremal=args.extremal) for r in reports]
    if args.format == "csv":
        _write_csv([REPORT_FIELDS] + [[d[k] for k in REPORT_FIELDS] for d in dicts], args.out)
    else:
        _emit_json(dicts[0] if len(dicts) == 1 else dicts, args.out)
    return 0


FRONTIER_FIELDS = ("epsilon", "best", "worst", "spread", "best_attained", "worst_attained", "error")


def cmd_frontier(args):
    F, target = _ball_from_args(args)
    spec = parse_measure(args.measure)
    rows = frontier(spec, F, target, parse_eps_grid(args.eps_grid))
    table = [[getattr(r, k) for k in FRONTIER_FIELDS] for r in rows]
    if args.format == "json":
        _emit_json({"measure": str(spec), "reference_value": reference_value(spec, F),
                    "rows": [dict(zip(FRONTIER_FIELDS, t)) for t in table]}, args.out)
    else:
        _write_csv([FRONTIER_FIELDS] + table, args.out)
    return 0


def read_frontier_csv(path):
    with open(path, encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))


def cmd_insurance(args):
    rep = insurance_case_study(args.a, args.b, args.d, args.grid_n, _float_list(args.alphas),
                               _float_list(args.eps_list))
    t2, t3 = list(rep.distance_rows()), list(rep.var_bound_rows())
    if args.format == "json":
        _emit_json({
            "reference_moments": {"mean": rep.raw_moments[0], "second_moment": rep.raw_moments[1],
                                  "sigma": rep.moments.sigma},
            "reference_var": {str(k): v for k, v in rep.reference_var.items()},
            "distances": [dict(zip(t2[0], r)) for r in t2[1:]],
            "var_bounds": [dict(zip(t3[0], r)) for r in t3[1:]],
            "provenance": rep.provenance,
        }, args.out)
        return 0
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        _write_csv(t2, out / "distances.csv")
        _write_csv(t3, out / "var_bounds.csv")
        _emit_json(rep.provenance, out / "provenance.json")
    else:
        _write_csv(t2, None)
        sys.stdout.write("\n")
        _write_csv(t3, None)
    return 0


def cmd_portfolio(args):
    data = read_portfolio_json(args.input)
    n_assets = len(data["means"])
    spec = parse_measure(args.measure)
    base = parse_reference(args.reference, args.grid_n)
    w = build_weight(spec, base.n)
    problem = PortfolioProblem(data["means"], data["covariance"], data.get("lower", 0.0),
                               data.get("upper", 1.0), w, base)
    A = args.A if args.A is not None else data.get("A")
    eps = None
    info = {}
    rule = data.get("eps_rule")
    if A is None and args.returns:
        R = read_returns_csv(args.returns)
        seeds = data.get("seed_portfolios") or ([list(np.full(n_assets, 1 / n_assets))]
                                                + [list(r) for r in np.eye(n_assets)])
        A_hat, per = estimate_ambiguity(R, seeds)
        info["A_hat"], info["A_hat_per_seed"] = A_hat, per
        A = min(A_hat, 1.0)
    if A is None and rule is not None:
        if rule.get("type") == "constant":
            eps = float(rule["eps"])
        elif rule.get("type") == "proportional":
            A = float(rule["A"])
        else:
            raise UsageError(f"unknown eps_rule {rule!r}")
    if A is None and eps is None:
        raise UsageError("portfolio input needs A, an eps_rule, or --returns")
    sol = portfolio_optimize(problem, A=A, eps=eps, starts=args.starts, seed=args.seed)
    mu_x, s_x = problem.moments_of(sol.x)
    _emit_json({"x": sol.x, "objective": sol.objective, "A": A, "eps": eps, "mu_x": mu_x, "sigma_x": s_x,
                "check_objective": portfolio_objective(problem, sol.x, A=A, eps=eps),
                "diagnostics": sol.diagnostics, **info}, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="robustdrm", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt):
        sp.add_argument("--measure", required=True, help="tvar:a | rvar:a:b | var:a | dualpower:b | wang:q0 | custom:PATH")
        sp.add_argument("--reference", default="normal:0:1", help="family:params or file:PATH")
        sp.add_argument("--mu", type=float, default=None)
        sp.add_argument("--sigma", type=float, default=None)
        sp.add_argument("--grid-n", type=int, default=DEFAULT_N)
        sp.add_argument("--out", default=None)
        sp.add_argument("--format", choices=("csv", "json"), default=fmt)

    b = sub.add_parser("bound", help="one worst/best-case bound")
    common(b, "json")
    b.add_argument("--eps", required=True)
    b.add_argument("--side", choices=("worst", "best", "both"), default="worst")
    b.add_argument("--extremal", action="store_true", help="include the extremal quantile values")
    b.set_defaults(func=cmd_bound)

    f = sub.add_parser("frontier", help="bounds over a grid of tolerances")
    common(f, "csv")
    f.add_argument("--eps-grid", required=True, help="start:stop:steps")
    f.set_defaults(func=cmd_frontier)

    ic = sub.add_parser("insurance-case", help="Pareto-Clayton case study tables")
    ic.add_argument("--a", type=float, default=10.0)
    ic.add_argument("--b", type=float, default=1.0)
    ic.add_argument("--d", type=float, default=100.0)
    ic.add_argument("--grid-n", type=int, default=100_000)
    ic.add_argument("--alphas", default=",".join(str(a) for a in DEFAULT_ALPHAS))
    ic.add_argument("--eps-list", default=",".join(str(e) for e in DEFAULT_EPS))
    ic.add_argument("--out", default=None, help="directory for distances.csv and var_bounds.csv")
    ic.add_argument("--format", choices=("csv", "json"), default="csv")
    ic.set_defaults(func=cmd_insurance)

    pf = sub.add_parser("portfolio", help="robust portfolio selection")
    pf.add_argument("--input", required=True, help="JSON with means, covariance, lower, upper, A or eps_rule")
    pf.add_argument("--measure", default="tvar:0.95")
    pf.add_argument("--reference", default="normal:0:1", help="location-scale base shape")
    pf.add_argument("--grid-n", type=int, default=DEFAULT_N)
    pf.add_argument("--A", type=float, default=None)
    pf.add_argument("--returns", default=None, help="return-history CSV for estimating A")
    pf.add_argument("--starts", type=int, default=8)
    pf.add_argument("--seed", type=int, default=0)
    pf.add_argument("--out", default=None)
    pf.set_defaults(func=cmd_portfolio)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except RobustDRMError as exc:
        sys.stdout.write(json.dumps({"error": exc.kind, "message": str(exc)}) + "\n")
        return exc.exit_code
    except (ArithmeticError, FloatingPointError, np.linalg.LinAlgError) as exc:
        sys.stdout.write(json.dumps({"error": "numeric", "message": str(exc)}) + "\n")
        return NumericError.exit_code


if __name__ == "__main__":
    sys.exit(main())
