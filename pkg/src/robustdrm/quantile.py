"""Quantile functions on a uniform midpoint grid.

A distribution is represented by its quantile function sampled at
u_i = (i - 1/2)/n.  Every integral over (0, 1) becomes a plain grid mean,
so moments, inner products and the order-2 Wasserstein distance are all
averages of elementwise products.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy import special, stats

from .errors import (
    DegenerateDistributionError,
    DomainError,
    GridMismatchError,
    NumericError,
    UsageError,
)

DEFAULT_N = 10_000


def midpoint_grid(n: int) -> np.ndarray:
    if n < 2:
        raise UsageError(f"grid size must be at least 2, got {n}")
    return (np.arange(1, n + 1) - 0.5) / n


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class MomentSpec:
    mu: float
    sigma: float

    def __post_init__(self):
        if not (np.isfinite(self.mu) and np.isfinite(self.sigma)):
            raise DomainError("moments must be finite")
        if self.sigma <= 0:
            raise DegenerateDistributionError(f"sigma must be positive, got {self.sigma}")


@dataclass(frozen=True, eq=False)
class DiscreteQuantile:
    """Non-decreasing quantile function sampled at midpoints."""

    values: np.ndarray

    def __post_init__(self):
        v = _frozen(self.values)
        if v.ndim != 1 or v.size < 2:
            raise UsageError("a quantile grid needs a 1-D array with at least two values")
        if not np.all(np.isfinite(v)):
            raise DomainError("quantile values must be finite")
        if np.any(np.diff(v) < 0):
            i = int(np.argmax(np.diff(v) < 0))
            raise DomainError(f"quantile values decrease at index {i}: {v[i]!r} > {v[i + 1]!r}")
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def grid(self) -> np.ndarray:
        return midpoint_grid(self.n)

    @property
    def mean(self) -> float:
        return float(self.values.mean())

    @property
    def std(self) -> float:
        return float(self.values.std())

    def inner(self, other) -> float:
        other = other.values if isinstance(other, DiscreteQuantile) else np.asarray(other)
        _check_same_n(self.values, other)
        return float(np.mean(self.values * other))

    def affine(self, scale: float, shift: float) -> "DiscreteQuantile":
        if scale < 0:
            raise DomainError("a negative scale reverses the order of a quantile function")
        return DiscreteQuantile(scale * self.values + shift)

    def standardized(self) -> "DiscreteQuantile":
        m = moments(self)
        return DiscreteQuantile((self.values - m.mu) / m.sigma)

    def __len__(self):
        return self.n


def _check_same_n(a: np.ndarray, b: np.ndarray):
    if a.shape != b.shape:
        raise GridMismatchError(f"grid sizes differ: {a.shape[0]} vs {b.shape[0]}")


def _values(q) -> np.ndarray:
    return q.values if isinstance(q, DiscreteQuantile) else np.asarray(q, dtype=float)


# ---------------------------------------------------------------- parametric families

# family -> (parameter names, validity check)
_FAMILIES = {
    "normal": (("mu", "sigma"), lambda p: p[1] > 0),
    "pareto-clayton": (("a", "b", "d"), lambda p: p[0] > 2 and p[1] > 0 and p[2] > 0),
    "lognormal": (("mu", "sigma"), lambda p: p[1] > 0),
    "gamma": (("shape", "scale"), lambda p: p[0] > 0 and p[1] > 0),
    "weibull": (("scale", "shape"), lambda p: p[0] > 0 and p[1] > 0),
    "inverse-gaussian": (("mean", "shape"), lambda p: p[0] > 0 and p[1] > 0),
    "inverse-gamma": (("shape", "scale"), lambda p: p[0] > 2 and p[1] > 0),
    "inverse-weibull": (("scale", "shape"), lambda p: p[0] > 0 and p[1] > 2),
    "log-logistic": (("scale", "shape"), lambda p: p[0] > 0 and p[1] > 2),
}

_ALIASES = {
    "beta-second-kind": "pareto-clayton",
    "pc": "pareto-clayton",
    "ln": "lognormal",
    "ig": "inverse-gaussian",
    "invgauss": "inverse-gaussian",
    "invgamma": "inverse-gamma",
    "iw": "inverse-weibull",
    "ll": "log-logistic",
    "fisk": "log-logistic",
}


def canonical_family(name: str) -> str:
    fam = _ALIASES.get(name.lower(), name.lower())
    if fam not in _FAMILIES:
        raise UsageError(f"unknown reference family {name!r}")
    return fam


def family_parameters(name: str) -> tuple:
    return _FAMILIES[canonical_family(name)][0]


@dataclass(frozen=True)
class ParametricReference:
    """Built-in reference distribution.

    Parameter conventions:
      normal(mu, sigma); pareto-clayton(a, b, d) with S = b B/(1-B), B ~ Beta(d, a);
      lognormal(mu, sigma) of log S; gamma(shape, scale); weibull(scale, shape);
      inverse-gaussian(mean, shape); inverse-gamma(shape, scale);
      inverse-weibull(scale, shape) with cdf exp(-(scale/s)^shape);
      log-logistic(scale, shape) with cdf 1/(1 + (s/scale)^-shape).
    """

    family: str
    params: tuple = field(default=())

    def __post_init__(self):
        fam = canonical_family(self.family)
        names, ok = _FAMILIES[fam]
        params = tuple(float(p) for p in self.params)
        if len(params) != len(names):
            raise UsageError(f"{fam} expects parameters {names}, got {len(params)} values")
        if not all(np.isfinite(params)) or not ok(params):
            raise DomainError(f"parameters {params} outside the valid domain of {fam}")
        object.__setattr__(self, "family", fam)
        object.__setattr__(self, "params", params)

    def _dist(self):
        p = self.params
        f = self.family
        if f == "normal":
            return stats.norm(p[0], p[1])
        if f == "lognormal":
            return stats.lognorm(p[1], scale=math.exp(p[0]))
        if f == "gamma":
            return stats.gamma(p[0], scale=p[1])
        if f == "weibull":
            return stats.weibull_min(p[1], scale=p[0])
        if f == "inverse-gaussian":
            return stats.invgauss(p[0] / p[1], scale=p[1])
        if f == "inverse-gamma":
            return stats.invgamma(p[0], scale=p[1])
        if f == "inverse-weibull":
            return stats.invweibull(p[1], scale=p[0])
        if f == "log-logistic":
            return stats.fisk(p[1], scale=p[0])
        return None

    def quantile(self, u, upper=None) -> np.ndarray:
        """Quantile at u.  `upper` optionally supplies 1-u exactly for tail accuracy."""
        u = np.asarray(u, dtype=float)
        upper = 1.0 - u if upper is None else np.asarray(upper, dtype=float)
        lo = u <= 0.5
        out = np.empty_like(u)
        if self.family == "pareto-clayton":
            a, b, d = self.params
            # B ~ Beta(d, a) and 1-B ~ Beta(a, d); evaluate each in its accurate tail
            head, tail = stats.beta(d, a), stats.beta(a, d)
            bq = np.empty_like(u)
            cq = np.empty_like(u)
            bq[lo], cq[lo] = head.ppf(u[lo]), tail.isf(u[lo])
            bq[~lo], cq[~lo] = head.isf(upper[~lo]), tail.ppf(upper[~lo])
            out = b * bq / cq
        else:
            dist = self._dist()
            out[lo] = dist.ppf(u[lo])
            out[~lo] = dist.isf(upper[~lo])
        return out

    def raw_moment(self, k: int) -> float:
        """E(S^k), analytic."""
        p = self.params
        f = self.family
        if f == "normal":
            return float(stats.norm(p[0], p[1]).moment(k))
        if f == "pareto-clayton":
            a, b, d = p
            if k >= a:
                return math.inf
            return b ** k * math.exp(special.betaln(a - k, d + k) - special.betaln(d, a))
        if f == "lognormal":
            return math.exp(k * p[0] + 0.5 * k * k * p[1] ** 2)
        return float(self._dist().moment(k))

    @property
    def mean(self) -> float:
        return self.raw_moment(1)

    @property
    def variance(self) -> float:
        return self.raw_moment(2) - self.raw_moment(1) ** 2


def discretize(ref: ParametricReference, n: int = DEFAULT_N) -> DiscreteQuantile:
    u = midpoint_grid(n)
    vals = ref.quantile(u, upper=u[::-1].copy())
    if not np.all(np.isfinite(vals)):
        raise NumericError(f"{ref.family} quantile overflowed on the grid n={n}")
    # remove last-ulp noise from the special-function inverses
    vals = np.maximum.accumulate(vals)
    return DiscreteQuantile(vals)


# ---------------------------------------------------------------- grid calculus

def moments(q) -> MomentSpec:
    v = _values(q)
    s = float(v.std())
    if not s > 0:
        raise DegenerateDistributionError("constant quantile function has zero standard deviation")
    return MomentSpec(float(v.mean()), s)


def wasserstein(q1, q2) -> float:
    a, b = _values(q1), _values(q2)
    _check_same_n(a, b)
    return float(np.sqrt(np.mean((a - b) ** 2)))


def correlation(q1, q2) -> float:
    a, b = _values(q1), _values(q2)
    _check_same_n(a, b)
    da, db = a - a.mean(), b - b.mean()
    sa, sb = np.sqrt(np.mean(da * da)), np.sqrt(np.mean(db * db))
    if sa == 0 or sb == 0:
        raise DegenerateDistributionError("correlation with a constant grid function")
    return float(np.clip(np.mean(da * db) / (sa * sb), -1.0, 1.0))


def feasibility_floor(F, target: MomentSpec) -> float:
    m = moments(F)
    return (m.mu - target.mu) ** 2 + (m.sigma - target.sigma) ** 2


def scaled_reference(F, target: MomentSpec) -> DiscreteQuantile:
    """mu + sigma (F - mu_F)/sigma_F: the closest quantile with the target moments."""
    m = moments(F)
    return DiscreteQuantile(target.mu + target.sigma * (_values(F) - m.mu) / m.sigma)


def read_quantile_csv(path) -> DiscreteQuantile:
    """One column of non-decreasing midpoint samples; a header line is optional."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    return DiscreteQuantile(_read_column(text, path))


def _read_column(text: str, path) -> np.ndarray:
    vals = []
    for i, row in enumerate(csv.reader(text.splitlines())):
        if not row or not row[0].strip():
            continue
        try:
            vals.append(float(row[0]))
        except ValueError:
            if i == 0 and not vals:
                continue  # header
            raise UsageError(f"{path}: non-numeric entry on line {i + 1}: {row[0]!r}")
    return np.asarray(vals, dtype=float)
