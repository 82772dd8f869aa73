"""Worst- and best-case distortion risk over moment-constrained Wasserstein balls.

The uncertainty set holds every quantile function h with mean mu, standard
deviation sigma and d_W(F, h)^2 <= eps.  For a multiplier lam >= 0 the
extremal quantile is an affine rescaling of a monotone projection of
gamma +/- lam F^{-1}; lam is pinned down by the active distance constraint,
which is equivalent to corr(F^{-1}, h) = rho* with
rho* = 1 - (eps - floor)/(2 sigma sigma_F).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import optimize

from .distortions import (
    RiskMeasureSpec,
    WeightFunction,
    build_weight,
    choquet_value,
    weight_statistics,
)
from .errors import AssumptionViolation, DomainError, InfeasibleBallError, NumericError, UsageError
from .isotonic import is_constant, project_nondecreasing, project_nonincreasing
from .quantile import (
    DiscreteQuantile,
    MomentSpec,
    _check_same_n,
    correlation,
    feasibility_floor,
    moments,
    scaled_reference,
    wasserstein,
)

FLOOR_RTOL = 1e-12
C0_ONE = 1e-10
LAMBDA_RTOL = 1e-14
MAX_BISECTIONS = 400


@dataclass(frozen=True, eq=False)
class UncertaintyBall:
    reference: DiscreteQuantile
    target: MomentSpec
    epsilon: float

    def __post_init__(self):
        eps = float(self.epsilon)
        if math.isnan(eps) or eps < 0:
            raise DomainError(f"epsilon must be non-negative, got {self.epsilon}")
        object.__setattr__(self, "epsilon", eps)
        if eps < self.floor - self._slack:
            raise InfeasibleBallError(
                f"infeasible: epsilon {eps:.6g} is below the feasibility floor {self.floor:.6g}"
            )

    @property
    def n(self) -> int:
        return self.reference.n

    @property
    def ref_moments(self) -> MomentSpec:
        return moments(self.reference)

    @property
    def floor(self) -> float:
        return feasibility_floor(self.reference, self.target)

    @property
    def _slack(self) -> float:
        return FLOOR_RTOL * max(1.0, self.floor)

    @property
    def is_singleton(self) -> bool:
        return self.epsilon <= self.floor + self._slack

    def with_epsilon(self, eps: float) -> "UncertaintyBall":
        return UncertaintyBall(self.reference, self.target, eps)

    def epsilon_star(self, c0: float) -> float:
        m = self.ref_moments
        return self.floor + 2 * self.target.sigma * m.sigma * (1 - c0)

    def target_correlation(self) -> float:
        m = self.ref_moments
        return 1 - (self.epsilon - self.floor) / (2 * self.target.sigma * m.sigma)


@dataclass(frozen=True, eq=False)
class BoundReport:
    value: float
    extremal: DiscreteQuantile | None
    attained: bool
    lam: float
    case: str
    achieved_dw: float | None
    achieved_moments: MomentSpec | None
    epsilon_star: float
    c0: float
    side: str = "worst"
    measure: str = ""
    epsilon: float = math.nan
    diagnostics: dict = field(default_factory=dict)

    def as_dict(self, with_extremal: bool = False) -> dict:
        d = {
            "measure": self.measure,
            "side": self.side,
            "epsilon": self.epsilon,
            "value": self.value,
            "attained": self.attained,
            "lambda": self.lam,
            "case": self.case,
            "epsilon_star": self.epsilon_star,
            "c0": self.c0,
            "achieved_dW": self.achieved_dw,
            "achieved_mu": None if self.achieved_moments is None else self.achieved_moments.mu,
            "achieved_sigma": None if self.achieved_moments is None else self.achieved_moments.sigma,
            "diagnostics": {k: _jsonable(v) for k, v in self.diagnostics.items()},
        }
        if with_extremal and self.extremal is not None:
            d["extremal"] = self.extremal.values.tolist()
        return d


def _jsonable(v):
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    return v


@dataclass(frozen=True)
class BreakpointProjection:
    """Piecewise description of a projection with one pooled block.

    Worst case: the block (w0, w1] carries the constant c.  Best case: the
    block (z0, z1] carries -c in the non-increasing projection.  Breakpoints
    are crossing points refined by linear interpolation between grid nodes;
    the *_index fields give the block as half-open grid index ranges.
    """

    lam: float
    lower: float
    upper: float
    c: float
    lower_index: int
    upper_index: int
    side: str
    regime: dict = field(default_factory=dict)

    @property
    def w0(self):
        return self.lower

    @property
    def w1(self):
        return self.upper

    @property
    def z0(self):
        return self.lower

    @property
    def z1(self):
        return self.upper


# ---------------------------------------------------------------- shared helpers

def normalize(k: np.ndarray, target: MomentSpec, sign: int = 1) -> DiscreteQuantile:
    """mu + sign sigma (k - mean k)/std k."""
    dk = k - k.mean()
    b = math.sqrt(np.mean(dk * dk))
    if b == 0:
        raise NumericError("cannot rescale a constant vector")
    return DiscreteQuantile(target.mu + sign * target.sigma * dk / b)


def _finish(h: DiscreteQuantile | None, value, ball: UncertaintyBall, **kw) -> BoundReport:
    if h is not None:
        kw.setdefault("achieved_dw", wasserstein(ball.reference, h))
        kw.setdefault("achieved_moments", moments(h))
    else:
        kw.setdefault("achieved_dw", None)
        kw.setdefault("achieved_moments", None)
    return BoundReport(value=float(value), extremal=h, epsilon=ball.epsilon, **kw)


def _singleton(w, ball, side, label, c0, eps_star, value_of=None):
    h = scaled_reference(ball.reference, ball.target)
    value = choquet_value(w, h) if value_of is None else value_of(h)
    return _finish(h, value, ball, attained=True, lam=math.inf, case="singleton",
                   epsilon_star=eps_star, c0=c0, side=side, measure=label)


def explicit_lambda(V: float, C: float, ball: UncertaintyBall) -> float:
    """Closed-form multiplier for a non-decreasing weight function."""
    m = ball.ref_moments
    mu, sigma, eps = ball.target.mu, ball.target.sigma, ball.epsilon
    sF2 = m.sigma ** 2
    K = 0.5 * (m.mu ** 2 + sF2 + mu ** 2 + sigma ** 2 - 2 * mu * m.mu - eps)
    delta = K * K * (C * C - V * sF2) / (K * K - sigma * sigma * sF2)
    return (math.sqrt(max(delta, 0.0)) - C) / sF2


def solve_lambda(corr_at, rho: float, lam_low: float = 0.0, tol: float = LAMBDA_RTOL):
    """Smallest lam > lam_low with corr_at(lam) >= rho, by doubling and bisection.

    corr_at must be non-decreasing in lam.  Returns (lam, corr, iterations).
    """
    lo = lam_low
    hi = max(1.0, 2 * lam_low)
    c_hi = corr_at(hi)
    it = 0
    while c_hi < rho:
        lo, hi = hi, 2 * hi
        c_hi = corr_at(hi)
        it += 1
        if hi > 1e300 or it > 2000:
            raise NumericError("could not bracket the multiplier")
    best = (hi, c_hi)
    for _ in range(MAX_BISECTIONS):
        it += 1
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        c = corr_at(mid)
        if abs(c - rho) < abs(best[1] - rho):
            best = (mid, c)
        if c < rho:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol * max(1.0, hi) or c == rho:
            break
    return best[0], best[1], it


def bisection_lambda(w: WeightFunction, ball: UncertaintyBall) -> float:
    """Multiplier of the unprojected path gamma + lam F^{-1}, by bisection on d_W."""
    F = ball.reference.values
    g = w.weights
    eps = ball.epsilon

    def excess(lam):
        h = normalize(g + lam * F, ball.target)
        return eps - np.mean((h.values - F) ** 2)

    # d_W decreases in lam for comonotone gamma; bracket then bisect
    lo, hi = 0.0, 1.0
    if excess(lo) >= 0:
        return 0.0
    while excess(hi) < 0:
        lo, hi = hi, 2 * hi
    for _ in range(MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        if excess(mid) < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= LAMBDA_RTOL * max(1.0, hi):
            break
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------- non-decreasing weights

def concave_worst(w: WeightFunction, ball: UncertaintyBall) -> BoundReport:
    if not w.nondecreasing:
        raise AssumptionViolation("concave_worst needs non-decreasing weights; use general_worst")
    _check_same_n(w.weights, ball.reference.values)
    st = weight_statistics(w, ball.reference)
    eps_star = ball.epsilon_star(st.c0)
    label = str(w.spec)
    if ball.is_singleton:
        return _singleton(w, ball, "worst", label, st.c0, eps_star)
    mu, sigma = ball.target.mu, ball.target.sigma
    F = ball.reference.values
    if st.c0 >= 1 - C0_ONE or ball.epsilon >= eps_star:
        h = normalize(w.weights, ball.target)
        value = mu + sigma * math.sqrt(st.V)
        return _finish(h, value, ball, attained=True, lam=0.0, case="2", epsilon_star=eps_star,
                       c0=st.c0, side="worst", measure=label,
                       diagnostics={"choquet_of_extremal": choquet_value(w, h)})
    lam = explicit_lambda(st.V, st.C, ball)
    k = w.weights + lam * F
    b = math.sqrt(st.V + 2 * lam * st.C + lam * lam * ball.ref_moments.sigma ** 2)
    value = mu + sigma * (st.V + lam * st.C) / b
    h = normalize(k, ball.target)
    return _finish(h, value, ball, attained=True, lam=lam, case="1", epsilon_star=eps_star,
                   c0=st.c0, side="worst", measure=label,
                   diagnostics={"choquet_of_extremal": choquet_value(w, h)})


def tvar_worst(alpha: float, ball: UncertaintyBall) -> BoundReport:
    """Worst-case TVaR from the tail mean of the reference grid."""
    if not 0 < alpha < 1:
        raise DomainError("alpha must lie in (0, 1)")
    F = ball.reference.values
    n = F.size
    m = ball.ref_moments
    mu, sigma = ball.target.mu, ball.target.sigma
    # tail mean over (alpha, 1) with a fractional first cell
    start = alpha * n
    i0 = int(math.floor(start + 1e-9))
    frac = min(1.0, i0 + 1 - start)
    tail = (frac * F[i0] + F[i0 + 1:].sum()) / (n - start)
    tv_F = float(tail)
    V = alpha / (1 - alpha)
    C = tv_F - m.mu
    c0 = C / (math.sqrt(V) * m.sigma)
    eps_star = ball.epsilon_star(c0)
    label = f"tvar:{alpha:g}"
    w = build_weight(RiskMeasureSpec("tvar", (alpha,)), n)
    if ball.is_singleton:
        return _singleton(w, ball, "worst", label, c0, eps_star)
    lam = 0.0 if ball.epsilon >= eps_star else explicit_lambda(V, C, ball)
    value = mu + sigma * (V + lam * C) / math.sqrt(V + 2 * lam * C + lam * lam * m.sigma ** 2)
    h = normalize(w.weights + lam * F, ball.target)
    return _finish(h, value, ball, attained=True, lam=lam, case="1" if lam > 0 else "2",
                   epsilon_star=eps_star, c0=c0, side="worst", measure=label,
                   diagnostics={"reference_tvar": tv_F})


# ---------------------------------------------------------------- general weights

def _path(w: WeightFunction, F: np.ndarray, side: str):
    g = w.weights
    if side == "worst":
        return lambda lam: project_nondecreasing(g + lam * F).projected
    return lambda lam: project_nonincreasing(g - lam * F).projected


def _path_corr(k: np.ndarray, F: np.ndarray, sign: int) -> float:
    return sign * correlation(F, k)


def _onset(path, F, sign):
    """Grid multiplier at which the projection stops being constant, and the limiting c0."""
    lo, hi = 0.0, 1e-12
    while is_constant(path(hi)):
        lo, hi = hi, hi * 2
        if hi > 1e12:
            raise AssumptionViolation("projection stays constant for every multiplier")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        if is_constant(path(mid)):
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-13 * hi:
            break
    lam_up = hi
    d1 = max(1e-6 * lam_up, 1e-300)
    c1 = _path_corr(path(lam_up + d1), F, sign)
    c2 = _path_corr(path(lam_up + 0.1 * d1), F, sign)
    return lam_up, c2, abs(c1 - c2)


def _monotone_bound(w: WeightFunction, ball: UncertaintyBall, side: str) -> BoundReport:
    _check_same_n(w.weights, ball.reference.values)
    F = ball.reference.values
    sign = 1 if side == "worst" else -1
    path = _path(w, F, side)
    label = str(w.spec)
    mu = ball.target.mu
    k0 = path(0.0)
    diag = {}
    if is_constant(k0):
        lam_low, c0, richardson = _onset(path, F, sign)
        diag.update(lambda_onset=lam_low, c0_richardson_gap=richardson)
    else:
        lam_low, c0 = 0.0, _path_corr(k0, F, sign)
    eps_star = ball.epsilon_star(c0)
    if ball.is_singleton:
        return _singleton(w, ball, side, label, c0, eps_star)
    if c0 >= 1 - C0_ONE or ball.epsilon >= eps_star:
        if lam_low > 0:
            return _finish(None, mu, ball, attained=False, lam=0.0, case="2", epsilon_star=eps_star,
                           c0=c0, side=side, measure=label, diagnostics=diag)
        h = normalize(k0, ball.target, sign)
        return _finish(h, choquet_value(w, h), ball, attained=True, lam=0.0, case="2",
                       epsilon_star=eps_star, c0=c0, side=side, measure=label, diagnostics=diag)
    rho = ball.target_correlation()
    lam, corr, it = solve_lambda(lambda t: _path_corr(path(t), F, sign), rho, lam_low)
    h = normalize(path(lam), ball.target, sign)
    diag.update(bisection_steps=it, correlation_residual=corr - rho)
    return _finish(h, choquet_value(w, h), ball, attained=True, lam=lam, case="1",
                   epsilon_star=eps_star, c0=c0, side=side, measure=label, diagnostics=diag)


def general_worst(w: WeightFunction, ball: UncertaintyBall) -> BoundReport:
    return _monotone_bound(w, ball, "worst")


def general_best(w: WeightFunction, ball: UncertaintyBall) -> BoundReport:
    return _monotone_bound(w, ball, "best")


# ---------------------------------------------------------------- one pooled block

def single_drop_projection(v: np.ndarray, d: int):
    """Isotonic projection of a vector whose only descent is between d-1 and d.

    v[:d] and v[d:] must both be non-decreasing.  The projection pools
    {i < d: v_i > c} and {i >= d: v_i < c} into one block at level c, where c
    is the root of sum (v_left - c)_+ = sum (c - v_right)_+.
    Returns (projected, start, stop, c).
    """
    v = np.asarray(v, dtype=float)
    n = v.size
    if d <= 0 or d >= n or v[d - 1] <= v[d]:
        return v.copy(), d, d, math.nan
    left, right = v[:d], v[d:]
    slack = 1e-12 * max(1.0, float(np.abs(v).max()))
    if np.any(np.diff(left) < -slack) or np.any(np.diff(right) < -slack):
        raise DomainError("vector has more than one descent")

    def excess(c):
        return np.sum(np.maximum(left - c, 0.0)) - np.sum(np.maximum(c - right, 0.0))

    c = optimize.brentq(excess, right[0], left[-1], xtol=1e-15, rtol=4 * np.finfo(float).eps)
    start = int(np.searchsorted(left, c, side="right"))
    stop = d + int(np.searchsorted(right, c, side="left"))
    start = min(start, d - 1)
    stop = max(stop, d + 1)
    # the level is the block mean; recomputing it removes the root-finder tolerance
    level = float(v[start:stop].mean())
    out = v.copy()
    out[start:stop] = level
    return out, start, stop, level


def _crossing(u: np.ndarray, v: np.ndarray, i: int, c: float, lo_end: float, hi_end: float) -> float:
    """Position between nodes i-1 and i where the piecewise-linear interpolant of v equals c."""
    if i <= 0:
        return lo_end
    if i >= v.size:
        return hi_end
    a, b = v[i - 1], v[i]
    if b == a:
        return u[i - 1]
    t = min(max((c - a) / (b - a), 0.0), 1.0)
    return float(u[i - 1] + t * (u[i] - u[i - 1]))


def _level_index(level: float, n: int) -> int:
    x = level * n
    r = round(x)
    return int(r) if abs(x - r) < 1e-9 else int(math.floor(x))


def rvar_projection(alpha: float, beta: float, F, lam: float, side: str = "worst"):
    """Closed-form monotone projection for RVaR weights.

    Worst case: P_up(gamma + lam F).  Best case: the non-increasing
    projection of gamma - lam F, i.e. -P_up(lam F - gamma).
    Returns (k, BreakpointProjection).
    """
    F = np.asarray(F.values if isinstance(F, DiscreteQuantile) else F, dtype=float)
    n = F.size
    gam = build_weight(RiskMeasureSpec("rvar", (alpha, beta)), n).weights
    u = (np.arange(1, n + 1) - 0.5) / n
    ia, ib = _level_index(alpha, n), _level_index(beta, n)
    if side == "worst":
        v = gam + lam * F
        d = ib
    else:
        v = lam * F - gam
        d = ia
    out, start, stop, c = single_drop_projection(v, d)
    if stop == start:
        lower = upper = 1.0 if side == "worst" else alpha
    else:
        lower = _crossing(u, v[:d], start, c, 0.0, d / n)
        upper = _crossing(u[d:], v[d:], stop - d, c, d / n, 1.0)
        if stop == n:
            upper = 1.0
        if start == 0:
            lower = 0.0
        # a block edge on a jump of gamma sits exactly at the jump level
        jumps = {ia: alpha, ib: beta}
        lower = jumps.get(start, lower)
        upper = jumps.get(stop, upper)
    regime = {
        "no_drop": stop == start,
        "upper_at_one": stop == n,
        "lower_at_zero": start == 0,
        "lower_at_alpha": start == ia,
        "upper_at_beta": stop == ib,
    }
    if side == "worst":
        bp = BreakpointProjection(lam, lower, upper, c, start, stop, side, regime)
        return out, bp
    bp = BreakpointProjection(lam, lower, upper, c, start, stop, side, regime)
    return -out, bp


def _rvar_bound(alpha, beta, ball, side):
    n = ball.n
    F = ball.reference.values
    sign = 1 if side == "worst" else -1
    w = build_weight(RiskMeasureSpec("rvar", (alpha, beta)), n)
    label = str(w.spec)

    def path(lam):
        return rvar_projection(alpha, beta, F, lam, side)[0]

    k0 = path(0.0)
    if is_constant(k0):
        # only possible for the best case with beta = 1 (TVaR): defer to the general engine
        rep = _monotone_bound(w, ball, side)
        return rep, None
    c0 = _path_corr(k0, F, sign)
    eps_star = ball.epsilon_star(c0)
    if ball.is_singleton:
        return _singleton(w, ball, side, label, c0, eps_star), None
    if c0 >= 1 - C0_ONE or ball.epsilon >= eps_star:
        lam = 0.0
        case, diag = "2", {}
    else:
        rho = ball.target_correlation()
        lam, corr, it = solve_lambda(lambda t: _path_corr(path(t), F, sign), rho)
        case, diag = "1", {"bisection_steps": it, "correlation_residual": corr - rho}
    k, bp = rvar_projection(alpha, beta, F, lam, side)
    h = normalize(k, ball.target, sign)
    rep = _finish(h, choquet_value(w, h), ball, attained=True, lam=lam, case=case,
                  epsilon_star=eps_star, c0=c0, side=side, measure=label, diagnostics=diag)
    return rep, bp


def rvar_worst(alpha: float, beta: float, ball: UncertaintyBall):
    """(BoundReport, BreakpointProjection) for the worst-case RVaR."""
    if not 0 < alpha < beta <= 1:
        raise DomainError("rvar levels need 0 < alpha < beta <= 1")
    return _rvar_bound(alpha, beta, ball, "worst")


def rvar_best(alpha: float, beta: float, ball: UncertaintyBall):
    """(BoundReport, BreakpointProjection) for the best-case RVaR."""
    if not 0 < alpha < beta <= 1:
        raise DomainError("rvar levels need 0 < alpha < beta <= 1")
    return _rvar_bound(alpha, beta, ball, "best")


# ---------------------------------------------------------------- VaR

def var_index(alpha: float, n: int) -> int:
    """First grid cell lying above alpha; the cell before it carries VaR_alpha."""
    m = _level_index(alpha, n)
    return min(max(m, 1), n - 1)


def _var_path(F: np.ndarray, m: int, side: str):
    n = F.size
    spike = np.zeros(n)
    if side == "worst":
        spike[m] = n

        def path(lam):
            return single_drop_projection(lam * F + spike, m + 1)[0]
    else:
        spike[m - 1] = n

        def path(lam):
            return single_drop_projection(lam * F - spike, m - 1)[0]
    return path


def var_bounds(alpha: float, ball: UncertaintyBall):
    """(worst, best) reports for VaR at level alpha.

    The worst report carries the right quantile VaR+ (attained); plain VaR
    shares that value but is not attained.  The best report carries VaR
    (attained); VaR+ shares that value but is not attained.
    """
    if not 0 < alpha < 1:
        raise DomainError("alpha must lie in (0, 1)")
    F = ball.reference.values
    n = F.size
    m = var_index(alpha, n)
    reports = []
    for side, idx, sign in (("worst", m, 1), ("best", m - 1, -1)):
        path = _var_path(F, m, side)
        k0 = path(0.0)
        c0 = correlation(F, k0)
        eps_star = ball.epsilon_star(c0)
        label = f"var+:{alpha:g}" if side == "worst" else f"var:{alpha:g}"
        notes = ({"var_attained": False, "var_plus_attained": True} if side == "worst"
                 else {"var_attained": True, "var_plus_attained": False})
        if ball.is_singleton:
            h = scaled_reference(ball.reference, ball.target)
            reports.append(_finish(h, h.values[idx], ball, attained=True, lam=math.inf, case="singleton",
                                   epsilon_star=eps_star, c0=c0, side=side, measure=label,
                                   diagnostics=notes))
            continue
        if c0 >= 1 - C0_ONE or ball.epsilon >= eps_star:
            lam, case = 0.0, "2"
        else:
            rho = ball.target_correlation()
            lam, corr, it = solve_lambda(lambda t: correlation(F, path(t)), rho)
            case = "1"
            notes = dict(notes, bisection_steps=it, correlation_residual=corr - rho)
        h = normalize(path(lam), ball.target, 1)
        reports.append(_finish(h, h.values[idx], ball, attained=True, lam=lam, case=case,
                               epsilon_star=eps_star, c0=c0, side=side, measure=label,
                               diagnostics=notes))
    return reports[0], reports[1]


# ---------------------------------------------------------------- dispatch and frontier

def bound(spec: RiskMeasureSpec, ball: UncertaintyBall, side: str = "worst", weight: WeightFunction | None = None):
    """Route a measure to the matching engine; returns one BoundReport."""
    if side not in ("worst", "best"):
        raise UsageError(f"side must be 'worst' or 'best', got {side!r}")
    if spec.kind == "var":
        worst, best = var_bounds(spec.params[0], ball)
        return worst if side == "worst" else best
    if spec.kind == "rvar":
        a, b = spec.params
        return (rvar_worst if side == "worst" else rvar_best)(a, b, ball)[0]
    w = weight if weight is not None else build_weight(spec, ball.n)
    if side == "worst" and w.nondecreasing:
        return concave_worst(w, ball)
    return (general_worst if side == "worst" else general_best)(w, ball)


def reference_value(spec: RiskMeasureSpec, F: DiscreteQuantile, weight: WeightFunction | None = None) -> float:
    if spec.kind == "var":
        return float(F.values[var_index(spec.params[0], F.n) - 1])
    w = weight if weight is not None else build_weight(spec, F.n)
    return choquet_value(w, F)


@dataclass(frozen=True)
class FrontierRow:
    epsilon: float
    best: float
    worst: float
    spread: float
    best_attained: bool | None = None
    worst_attained: bool | None = None
    error: str = ""


def frontier(spec: RiskMeasureSpec, reference: DiscreteQuantile, target: MomentSpec, eps_grid,
             weight: WeightFunction | None = None) -> list[FrontierRow]:
    """Best and worst values over an increasing grid of tolerances."""
    eps_grid = np.asarray(eps_grid, dtype=float)
    if np.any(np.diff(eps_grid) <= 0):
        raise UsageError("the epsilon grid must be strictly increasing")
    if spec.kind not in ("var", "rvar") and weight is None:
        weight = build_weight(spec, reference.n)
    h_ref = reference_value(spec, reference, weight)
    rows = []
    for eps in eps_grid:
        try:
            ball = UncertaintyBall(reference, target, eps)
            if spec.kind == "var":
                worst, best = var_bounds(spec.params[0], ball)
            else:
                worst = bound(spec, ball, "worst", weight)
                best = bound(spec, ball, "best", weight)
        except InfeasibleBallError:
            rows.append(FrontierRow(float(eps), math.nan, math.nan, math.nan, error="infeasible"))
            continue
        spread = (worst.value - best.value) / h_ref if h_ref != 0 else math.nan
        rows.append(FrontierRow(float(eps), best.value, worst.value, spread, best.attained, worst.attained))
    return rows
