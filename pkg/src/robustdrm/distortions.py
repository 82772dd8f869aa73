"""Weight functions of distortion risk measures and the Choquet integral.

A distortion g induces the weight gamma(u) = g'(1-u) and the risk value
H_g(G) = int_0^1 gamma(u) G^{-1}(u) du.  On the midpoint grid each weight is
the exact average of gamma over its cell, n [Gamma(i/n) - Gamma((i-1)/n)] with
Gamma(t) = 1 - g(1-t), so the weights integrate to one to rounding error and
integrable singularities at the end points are handled without sampling them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy import special

from .errors import (
    AssumptionViolation,
    DomainError,
    SquareIntegrabilityError,
    UnsupportedMeasureError,
    UsageError,
)
from .quantile import DiscreteQuantile, _check_same_n, _read_column, _values, moments

SQUARE_CAP = 1e12
MEAN_TOL = 1e-8

KINDS = ("dualpower", "wang", "tvar", "rvar", "var", "custom")


@dataclass(frozen=True)
class RiskMeasureSpec:
    kind: str
    params: tuple = field(default=())
    label: str = ""

    def __post_init__(self):
        kind = self.kind.lower().replace("-", "").replace("_", "")
        kind = {"dualpowerdistortion": "dualpower", "dp": "dualpower", "es": "tvar", "cvar": "tvar"}.get(kind, kind)
        if kind not in KINDS:
            raise UsageError(f"unknown risk measure {self.kind!r}")
        p = tuple(float(x) for x in self.params) if kind != "custom" else tuple(self.params)
        need = {"dualpower": 1, "wang": 1, "tvar": 1, "var": 1, "rvar": 2}.get(kind)
        if need is not None and len(p) != need:
            raise UsageError(f"{kind} expects {need} parameter(s), got {len(p)}")
        if kind == "dualpower" and not p[0] > 0:
            raise DomainError("dual power parameter must be positive")
        if kind == "wang" and not 0 < p[0] < 1:
            raise DomainError("Wang parameter q0 must lie in (0, 1)")
        if kind in ("tvar", "var") and not 0 < p[0] < 1:
            raise DomainError(f"{kind} level must lie in (0, 1)")
        if kind == "rvar" and not 0 < p[0] < p[1] <= 1:
            raise DomainError("rvar levels need 0 < alpha < beta <= 1")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "params", p)

    def __str__(self):
        if self.label:
            return self.label
        if self.kind == "custom":
            return "custom"
        return self.kind + ":" + ":".join(f"{x:g}" for x in self.params)


def parse_measure(text: str) -> RiskMeasureSpec:
    """Parse 'tvar:0.7', 'rvar:0.6:0.85', 'var:0.9', 'dualpower:2', 'wang:0.9'."""
    parts = text.split(":")
    if parts[0].lower() == "custom":
        if len(parts) < 2:
            raise UsageError("custom measure needs a file path: custom:PATH")
        return RiskMeasureSpec("custom", (":".join(parts[1:]),))
    try:
        params = tuple(float(x) for x in parts[1:])
    except ValueError:
        raise UsageError(f"cannot parse measure {text!r}") from None
    return RiskMeasureSpec(parts[0], params)


@dataclass(frozen=True, eq=False)
class WeightFunction:
    weights: np.ndarray
    spec: RiskMeasureSpec
    shape: str = ""

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        if not self.shape:
            slack = 1e-12 * max(1.0, float(np.abs(w).max()))
            shape = "nondecreasing" if np.all(np.diff(w) >= -slack) else "general"
            object.__setattr__(self, "shape", shape)

    @property
    def n(self) -> int:
        return self.weights.size

    @property
    def nondecreasing(self) -> bool:
        return self.shape == "nondecreasing"

    def __str__(self):
        return str(self.spec)


# ---------------------------------------------------------------- cumulative weights

def _cumulative(spec: RiskMeasureSpec):
    """(Gamma, 1 - Gamma) as functions of (t, 1 - t)."""
    k, p = spec.kind, spec.params
    if k == "dualpower":
        b = p[0]
        return (lambda t, s: t ** b), (lambda t, s: -np.expm1(b * np.log1p(-s)))
    if k == "wang":
        z = special.ndtri(p[0])
        return (lambda t, s: special.ndtr(special.ndtri(t) - z)), (lambda t, s: special.ndtr(special.ndtri(s) + z))
    if k == "tvar":
        a = p[0]
        return (lambda t, s: np.maximum(t - a, 0.0) / (1 - a)), (lambda t, s: np.minimum(s, 1 - a) / (1 - a))
    if k == "rvar":
        a, b = p
        lo = lambda t, s: np.clip((t - a) / (b - a), 0.0, 1.0)
        return lo, (lambda t, s: np.clip((b - 1 + s) / (b - a), 0.0, 1.0))
    raise UnsupportedMeasureError(f"no weight function for {spec}")


def build_weight(spec: RiskMeasureSpec, n: int, cap: float = SQUARE_CAP) -> WeightFunction:
    if spec.kind == "var":
        raise UnsupportedMeasureError("VaR has no weight function; use var_bounds")
    if spec.kind == "custom":
        return _check_custom_n(read_weight_csv(spec.params[0], cap=cap), n)
    if spec.kind in ("tvar", "rvar"):
        return _validated(_interval_weights(spec, n), spec, cap)
    G, Gc = _cumulative(spec)
    edges = np.arange(n + 1) / n
    upper = np.arange(n, -1, -1) / n  # 1 - edges, exact
    m = n // 2
    w = np.empty(n)
    lo = G(edges[: m + 1], upper[: m + 1])
    w[:m] = np.diff(lo)
    hi = Gc(edges[m:], upper[m:])
    w[m:] = -np.diff(hi)
    w *= n
    w = np.maximum(w, 0.0)
    return _validated(w, spec, cap)


def _snap(x: float) -> float:
    r = round(x)
    return float(r) if abs(x - r) < 1e-9 else x


def _interval_weights(spec: RiskMeasureSpec, n: int) -> np.ndarray:
    """Uniform density on (alpha, beta]: exact cell overlaps in index units."""
    a = spec.params[0]
    b = spec.params[1] if spec.kind == "rvar" else 1.0
    lo, hi = _snap(a * n), _snap(b * n)
    i = np.arange(1, n + 1, dtype=float)
    overlap = np.clip(np.minimum(i, hi) - np.maximum(i - 1, lo), 0.0, 1.0)
    return overlap / (hi - lo) * n


def _check_custom_n(w: WeightFunction, n: int) -> WeightFunction:
    if w.n != n:
        raise UsageError(f"custom weights have {w.n} entries but the grid has {n}")
    return w


def _validated(w: np.ndarray, spec: RiskMeasureSpec, cap: float) -> WeightFunction:
    if not np.all(np.isfinite(w)):
        raise DomainError("weights must be finite")
    if np.any(w < 0):
        raise DomainError("weights must be non-negative")
    if abs(w.mean() - 1) > MEAN_TOL:
        raise DomainError(f"weights must average to one, got {w.mean():.12g}")
    if np.mean(w * w) > cap:
        raise SquareIntegrabilityError(f"mean of squared weights {np.mean(w * w):.3g} exceeds cap {cap:.3g}")
    return WeightFunction(w, spec, _known_shape(spec))


def _known_shape(spec: RiskMeasureSpec) -> str:
    """Shape of the built-in families, known analytically; custom weights are inspected."""
    if spec.kind in ("wang", "tvar") or (spec.kind == "dualpower" and spec.params[0] >= 1):
        return "nondecreasing"
    if spec.kind in ("rvar", "dualpower"):
        return "general"
    return ""


def read_weight_csv(path, cap: float = SQUARE_CAP) -> WeightFunction:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    w = _read_column(text, path)
    if w.size < 2:
        raise UsageError(f"{path}: need at least two weights")
    return _validated(w, RiskMeasureSpec("custom", (str(path),)), cap)


def weight_from_array(weights, label: str = "custom", cap: float = SQUARE_CAP) -> WeightFunction:
    return _validated(np.asarray(weights, dtype=float), RiskMeasureSpec("custom", (label,), label=label), cap)


def gamma_at(spec: RiskMeasureSpec, u):
    """Pointwise weight gamma(u) of a built-in measure."""
    u = np.asarray(u, dtype=float)
    k, p = spec.kind, spec.params
    if k == "dualpower":
        return p[0] * u ** (p[0] - 1)
    if k == "wang":
        x = special.ndtri(1 - u)
        z = special.ndtri(p[0])
        return np.exp(-x * z - 0.5 * z * z)
    if k == "tvar":
        return np.where(u > p[0], 1 / (1 - p[0]), 0.0)
    if k == "rvar":
        return np.where((u > p[0]) & (u <= p[1]), 1 / (p[1] - p[0]), 0.0)
    raise UnsupportedMeasureError(f"no pointwise weight for {spec}")


def dual_weight(w: WeightFunction) -> WeightFunction:
    """Weights of the dual distortion 1 - g(1 - x), i.e. gamma(1 - u)."""
    spec = RiskMeasureSpec("custom", (f"dual of {w.spec}",), label=f"dual of {w.spec}")
    return WeightFunction(w.weights[::-1], spec)


def choquet_value(w: WeightFunction, q) -> float:
    v = _values(q)
    _check_same_n(w.weights, v)
    return float(np.mean(w.weights * v))


@dataclass(frozen=True)
class WeightStats:
    V: float
    C: float
    c0: float


def weight_statistics(w: WeightFunction, F) -> WeightStats:
    """Variance of gamma, its covariance with F^{-1} and their correlation."""
    f = _values(F)
    _check_same_n(w.weights, f)
    g = w.weights
    dg = g - g.mean()
    V = float(np.mean(dg * dg))
    if V <= 1e-28:
        raise AssumptionViolation("weight function is constant, the measure reduces to the mean")
    sF = moments(f).sigma
    C = float(np.mean(dg * (f - f.mean())))
    c0 = float(np.clip(C / (math.sqrt(V) * sF), -1.0, 1.0))
    return WeightStats(V, C, c0)
