"""Worst- and best-case RVaR projections for alpha = 0.6 and several beta.

For each beta the multiplier is solved at eps = 0.2 on a standard normal
reference; the projected weight functions and their breakpoints are written
as CSV, one column per beta.
"""
import argparse
import csv
from pathlib import Path

import numpy as np

from robustdrm.bounds import UncertaintyBall, rvar_best, rvar_projection, rvar_worst
from robustdrm.quantile import MomentSpec, ParametricReference, discretize


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=10_000)
    p.add_argument("--alpha", type=float, default=0.6)
    p.add_argument("--betas", default="0.61,0.85,0.99")
    p.add_argument("--eps", type=float, default=0.2)
    p.add_argument("--out", default="results/rvar_projections")
    args = p.parse_args()

    F = discretize(ParametricReference("normal", (0, 1)), args.n)
    ball = UncertaintyBall(F, MomentSpec(F.mean, F.std), args.eps)
    betas = [float(b) for b in args.betas.split(",")]
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for side, engine in (("worst", rvar_worst), ("best", rvar_best)):
        cols, meta = [], []
        for b in betas:
            rep, _ = engine(args.alpha, b, ball)
            k, bp = rvar_projection(args.alpha, b, F, rep.lam, side)
            cols.append(k)
            meta.append((b, rep.lam, bp.lower, bp.upper, bp.c, rep.value))
        with open(out / f"{side}.csv", "w", newline="", encoding="utf-8") as fh:
            wr = csv.writer(fh, lineterminator="\n")
            wr.writerow(["u"] + [f"beta={b:g}" for b in betas])
            for i, u in enumerate(F.grid):
                wr.writerow([repr(float(u))] + [repr(float(c[i])) for c in cols])
        with open(out / f"{side}_breakpoints.csv", "w", newline="", encoding="utf-8") as fh:
            wr = csv.writer(fh, lineterminator="\n")
            wr.writerow(["beta", "lambda", "lower", "upper", "c", "value"])
            wr.writerows([[repr(float(x)) for x in row] for row in meta])
        for row in meta:
            print(side, "beta={:g} lambda={:.4f} block=({:.4f}, {:.4f}] c={:.4f} value={:.4f}".format(*row))


if __name__ == "__main__":
    main()
