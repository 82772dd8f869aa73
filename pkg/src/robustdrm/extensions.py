"""Extensions: uncertain moments, Wasserstein-only balls and robust portfolios."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy import optimize, special

from .bounds import BoundReport, UncertaintyBall, bound, concave_worst, general_worst
from .distortions import WeightFunction, build_weight, choquet_value, parse_measure, weight_statistics
from .errors import AssumptionViolation, DomainError, NumericError, UnsupportedMeasureError, UsageError
from .isotonic import is_constant, project_nondecreasing
from .quantile import DiscreteQuantile, MomentSpec, correlation, discretize, midpoint_grid, moments, ParametricReference

# ---------------------------------------------------------------- moment regions


@dataclass(frozen=True)
class MomentRegion:
    """Set K of admissible (mu, sigma), anchored at the reference moments.

    marginal: params (mu_lo, mu_hi, sigma_lo, sigma_hi)
    circlic: params (r,)
    elliptical: params (c, d, r)
    """

    kind: str
    params: tuple
    anchor: tuple = (0.0, 1.0)

    def __post_init__(self):
        p = tuple(float(x) for x in self.params)
        object.__setattr__(self, "params", p)
        object.__setattr__(self, "anchor", tuple(float(x) for x in self.anchor))
        if self.kind == "marginal":
            if len(p) != 4:
                raise UsageError("marginal region needs (mu_lo, mu_hi, sigma_lo, sigma_hi)")
            lo, hi, slo, shi = p
            if not (lo <= hi and abs(lo) <= abs(hi) and 0 < slo <= shi):
                raise DomainError("marginal region needs mu_lo <= mu_hi, |mu_lo| <= |mu_hi|, 0 < sigma_lo <= sigma_hi")
        elif self.kind in ("circlic", "elliptical"):
            if self.kind == "circlic":
                if len(p) != 1:
                    raise UsageError("circlic region needs (r,)")
                p = (1.0, 1.0, p[0])
            if len(p) != 3 or min(p) <= 0:
                raise DomainError("elliptical region needs positive (c, d, r)")
            c, d, r = p
            if self.anchor[1] - d * r <= 0:
                raise DomainError("region must keep sigma > 0")
        else:
            raise UsageError(f"unknown region kind {self.kind!r}")

    @property
    def axes(self):
        """(c, d, r) for circlic and elliptical regions."""
        if self.kind == "circlic":
            return 1.0, 1.0, self.params[0]
        return self.params

    def contains(self, mu, sigma, tol=1e-12) -> bool:
        if self.kind == "marginal":
            lo, hi, slo, shi = self.params
            return lo - tol <= mu <= hi + tol and slo - tol <= sigma <= shi + tol
        c, d, r = self.axes
        mF, sF = self.anchor
        return ((mF - mu) / c) ** 2 + ((sF - sigma) / d) ** 2 <= r * r * (1 + tol) and sigma > 0

    def boundary_residual(self, mu, sigma) -> float:
        c, d, r = self.axes
        mF, sF = self.anchor
        return ((mF - mu) / c) ** 2 + ((sF - sigma) / d) ** 2 - r * r

    def sample(self, m: int = 64) -> np.ndarray:
        """Points on the boundary (and corners) used to check the case condition."""
        if self.kind == "marginal":
            lo, hi, slo, shi = self.params
            t = np.linspace(0, 1, m)
            edges = [np.c_[lo + (hi - lo) * t, np.full(m, s)] for s in (slo, shi)]
            edges += [np.c_[np.full(m, mm), slo + (shi - slo) * t] for mm in (lo, hi)]
            return np.vstack(edges)
        c, d, r = self.axes
        mF, sF = self.anchor
        th = np.linspace(0, 2 * np.pi, m, endpoint=False)
        return np.c_[mF + c * r * np.cos(th), sF + d * r * np.sin(th)]

    def boundary_point(self, s: float):
        """Point on the boundary at perimeter parameter s in [0, 1)."""
        s = s % 1.0
        if self.kind == "marginal":
            lo, hi, slo, shi = self.params
            corners = [(lo, slo), (hi, slo), (hi, shi), (lo, shi), (lo, slo)]
            j = min(int(s * 4), 3)
            t = s * 4 - j
            (m0, s0), (m1, s1) = corners[j], corners[j + 1]
            return m0 + t * (m1 - m0), s0 + t * (s1 - s0)
        c, d, r = self.axes
        mF, sF = self.anchor
        th = 2 * math.pi * s
        return mF + c * r * math.cos(th), sF + d * r * math.sin(th)

    def grid(self, m: int = 50) -> np.ndarray:
        if self.kind == "marginal":
            lo, hi, slo, shi = self.params
            M, S = np.meshgrid(np.linspace(lo, hi, m), np.linspace(slo, shi, m))
            return np.c_[M.ravel(), S.ravel()]
        c, d, r = self.axes
        mF, sF = self.anchor
        M, S = np.meshgrid(np.linspace(mF - c * r, mF + c * r, m), np.linspace(sF - d * r, sF + d * r, m))
        pts = np.c_[M.ravel(), S.ravel()]
        inside = ((mF - pts[:, 0]) / c) ** 2 + ((sF - pts[:, 1]) / d) ** 2 <= r * r * (1 + 1e-12)
        return pts[inside]


@dataclass(frozen=True, eq=False)
class MomentRegionResult:
    report: BoundReport
    mu_max: float
    sigma_max: float
    case: str
    iterations: int
    lam: float
    method: str = "fixed-point"


def _c0_of(w: WeightFunction, F: DiscreteQuantile) -> float:
    k0 = project_nondecreasing(w.weights).projected
    if is_constant(k0):
        return -1.0
    return correlation(F, k0)


def _maximizer(region: MomentRegion, lam: float, mean_z: float, cv: float):
    """Point of K maximizing mu E(Z) + sigma std(Z) corr(Z, k) for a fixed multiplier."""
    if region.kind == "marginal":
        lo, hi, slo, shi = region.params
        return (lo if mean_z < 0 else hi), shi
    c, d, r = region.axes
    mF, sF = region.anchor
    root = math.sqrt(1 + (d / c * cv) ** 2)
    sgn = -1.0 if mean_z < 0 else 1.0
    return mF + sgn * r * c / root, sF + r * d * d * abs(cv) / (c * root)


def _z_stats(w, F, lam):
    z = w.weights + lam * F.values
    k = project_nondecreasing(z).projected
    mean_z = float(z.mean())
    if is_constant(k):
        return mean_z, 0.0
    dz, dk = z - z.mean(), k - k.mean()
    # std(Z) corr(Z, k) = cov(Z, k)/std(k)
    slope = float(np.mean(dz * dk) / math.sqrt(np.mean(dk * dk)))
    return mean_z, slope


def worst_with_moment_region(w: WeightFunction, F: DiscreteQuantile, region: MomentRegion, eps: float,
                             damping: float = 0.5, tol: float = 1e-8, max_iter: int = 500,
                             n_check: int = 64, method: str = "fixed-point") -> MomentRegionResult:
    """Worst case when (mu, sigma) ranges over K.

    method="fixed-point" alternates between the multiplier of the current
    moments and the maximiser of mu E(Z) + sigma std(Z) corr(Z, k) over K for
    that multiplier.  method="boundary-search" instead maximises the
    fixed-moment worst-case value directly along the boundary of K.
    """
    if method not in ("fixed-point", "boundary-search"):
        raise UsageError(f"unknown method {method!r}")
    mF, sF = moments(F).mu, moments(F).sigma
    if region.anchor != (mF, sF) and region.kind != "marginal":
        region = MomentRegion(region.kind, region.params, (mF, sF))
    c0 = _c0_of(w, F)
    pts = region.sample(n_check)
    if region.kind != "marginal":
        pts = np.vstack([pts, [[mF, sF]]])
    floor = (mF - pts[:, 0]) ** 2 + (sF - pts[:, 1]) ** 2
    star = floor + 2 * pts[:, 1] * sF * (1 - c0)
    case1 = (floor < eps) & (eps < star)
    case2 = eps >= star
    if np.all(case2):
        k0 = project_nondecreasing(w.weights).projected
        if is_constant(k0):
            raise AssumptionViolation("projection of the weights is constant; the supremum is not attained")
        s = float(k0.std())
        mu_m, sig_m = _maximizer(region, 0.0, 1.0, s)
        rep = bound(w.spec, UncertaintyBall(F, MomentSpec(mu_m, sig_m), eps), "worst", w)
        return MomentRegionResult(rep, mu_m, sig_m, "2", 0, 0.0)
    if not np.all(case1):
        raise UnsupportedMeasureError(
            "unsupported configuration: the tolerance is in different regimes across the moment region"
        )
    if method == "boundary-search":
        return _boundary_search(w, F, region, eps)
    mu_c, sig_c = (region.params[1], region.params[3]) if region.kind == "marginal" else (mF, sF)
    lam = 0.0
    for it in range(1, max_iter + 1):
        rep = bound(w.spec, UncertaintyBall(F, MomentSpec(mu_c, sig_c), eps), "worst", w)
        lam = rep.lam
        mean_z, slope = _z_stats(w, F, lam)
        cv = slope / mean_z if mean_z != 0 else math.copysign(math.inf, slope)
        mu_n, sig_n = _maximizer(region, lam, mean_z, cv)
        step = max(abs(mu_n - mu_c), abs(sig_n - sig_c))
        if step < tol:
            mu_c, sig_c = mu_n, sig_n
            break
        mu_c = damping * mu_c + (1 - damping) * mu_n
        sig_c = damping * sig_c + (1 - damping) * sig_n
    else:
        raise NumericError("moment-region fixed point did not converge")
    rep = bound(w.spec, UncertaintyBall(F, MomentSpec(mu_c, sig_c), eps), "worst", w)
    return MomentRegionResult(rep, mu_c, sig_c, "1", it, rep.lam)


def _boundary_search(w, F, region, eps, m: int = 256):
    def value(s):
        mu, sig = region.boundary_point(s)
        return bound(w.spec, UncertaintyBall(F, MomentSpec(mu, sig), eps), "worst", w).value

    s_grid = np.arange(m) / m
    vals = np.array([value(s) for s in s_grid])
    s0 = s_grid[int(np.argmax(vals))]
    res = optimize.minimize_scalar(lambda s: -value(s), bounds=(s0 - 1 / m, s0 + 1 / m), method="bounded",
                                   options={"xatol": 1e-10})
    s_best = res.x if -res.fun >= vals.max() else s0
    mu, sig = region.boundary_point(s_best)
    rep = bound(w.spec, UncertaintyBall(F, MomentSpec(mu, sig), eps), "worst", w)
    return MomentRegionResult(rep, mu, sig, "1", m + res.nfev, rep.lam, "boundary-search")


def moment_region_grid_search(w: WeightFunction, F: DiscreteQuantile, region: MomentRegion, eps: float,
                              m: int = 50):
    """Brute-force maximum of the worst-case value over a grid of K; returns (value, mu, sigma)."""
    mF, sF = moments(F).mu, moments(F).sigma
    if region.kind != "marginal":
        region = MomentRegion(region.kind, region.params, (mF, sF))
    best = (-math.inf, math.nan, math.nan)
    for mu, sig in region.grid(m):
        rep = bound(w.spec, UncertaintyBall(F, MomentSpec(mu, sig), eps), "worst", w)
        if rep.value > best[0]:
            best = (rep.value, float(mu), float(sig))
    return best


# ---------------------------------------------------------------- Wasserstein-only ball


@dataclass(frozen=True, eq=False)
class WassersteinOnlyResult:
    mu: float
    sigma: float
    value: float
    extremal: DiscreteQuantile
    lam: float
    displayed_value: float
    report: BoundReport | None = None

    @property
    def discrepancy(self) -> float:
        return self.displayed_value - self.value


def optimal_moments(V: float, C: float, mu_F: float, sigma_F: float, eps: float):
    mu = mu_F + math.sqrt(eps / (1 + V))
    sigma = math.sqrt(sigma_F ** 2 + 2 * C * math.sqrt(eps) / math.sqrt(1 + V) + eps * V / (1 + V))
    return mu, sigma


def wasserstein_only_worst(w: WeightFunction, F: DiscreteQuantile, eps: float) -> WassersteinOnlyResult:
    """Worst case over all distributions within sqrt(eps) of F, moments free."""
    if not w.nondecreasing:
        raise UnsupportedMeasureError("the moment-free worst case is implemented for non-decreasing weights")
    if eps < 0:
        raise DomainError("epsilon must be non-negative")
    st = weight_statistics(w, F)
    m = moments(F)
    if eps == 0:
        v = choquet_value(w, F)
        return WassersteinOnlyResult(m.mu, m.sigma, v, F, math.inf, v)
    mu, sigma = optimal_moments(st.V, st.C, m.mu, m.sigma, eps)
    rep = concave_worst(w, UncertaintyBall(F, MomentSpec(mu, sigma), eps))
    lam = rep.lam
    if lam > 0 and math.isfinite(lam):
        shown = mu + sigma * math.sqrt(st.V) * correlation(w.weights, lam * F.values)
    else:
        shown = math.nan
    return WassersteinOnlyResult(mu, sigma, rep.value, rep.extremal, lam, shown, rep)


def concave_value(V: float, C: float, mu_F: float, sigma_F: float, mu, sigma, eps):
    """Worst-case value for non-decreasing weights as a function of the target moments.

    Vectorized over (mu, sigma); points outside the ball's feasible region give -inf.
    """
    mu, sigma = np.broadcast_arrays(np.asarray(mu, float), np.asarray(sigma, float))
    sF2 = sigma_F ** 2
    floor = (mu_F - mu) ** 2 + (sigma_F - sigma) ** 2
    K = 0.5 * (mu_F ** 2 + sF2 + mu ** 2 + sigma ** 2 - 2 * mu * mu_F - eps)
    c0 = C / (math.sqrt(V) * sigma_F)
    star = floor + 2 * sigma * sigma_F * (1 - c0)
    inner = np.maximum(sigma ** 2 - K ** 2 / sF2, 0.0)
    case1 = mu + C * K / sF2 + math.sqrt(max(V - C * C / sF2, 0.0)) * np.sqrt(inner)
    out = np.where(eps >= star, mu + sigma * math.sqrt(V), case1)
    return np.where((floor <= eps * (1 + 1e-12)) & (sigma > 0), out, -np.inf)


def wasserstein_only_grid_search(w: WeightFunction, F: DiscreteQuantile, eps: float, m: int = 200,
                                 polish: bool = True):
    """Maximize the fixed-moment worst case over the disk of admissible moments."""
    st = weight_statistics(w, F)
    mo = moments(F)
    r = math.sqrt(eps)
    M, S = np.meshgrid(np.linspace(mo.mu - r, mo.mu + r, m), np.linspace(mo.sigma - r, mo.sigma + r, m))
    vals = concave_value(st.V, st.C, mo.mu, mo.sigma, M, S, eps)
    i = int(np.argmax(vals))
    best = (float(vals.ravel()[i]), float(M.ravel()[i]), float(S.ravel()[i]))
    if polish:
        f = lambda p: -float(concave_value(st.V, st.C, mo.mu, mo.sigma, p[0], p[1], eps))
        res = optimize.minimize(f, [best[1], best[2]], method="Nelder-Mead",
                                options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 5000})
        if -res.fun > best[0]:
            best = (float(-res.fun), float(res.x[0]), float(res.x[1]))
    return best


# ---------------------------------------------------------------- portfolio


@dataclass(frozen=True, eq=False)
class PortfolioProblem:
    means: np.ndarray
    cov: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    weight: WeightFunction
    base: DiscreteQuantile
    V: float = field(init=False)
    c0: float = field(init=False)

    def __post_init__(self):
        mu = np.asarray(self.means, float)
        cov = np.asarray(self.cov, float)
        n = mu.size
        lo = np.broadcast_to(np.asarray(self.lower, float), (n,)).copy()
        hi = np.broadcast_to(np.asarray(self.upper, float), (n,)).copy()
        if cov.shape != (n, n):
            raise UsageError("covariance must be n x n")
        if not np.allclose(cov, cov.T, atol=1e-12):
            raise DomainError("covariance must be symmetric")
        if np.linalg.eigvalsh(cov).min() <= 0:
            raise DomainError("covariance must be positive definite")
        if np.any(lo > hi) or lo.sum() > 1 + 1e-12 or hi.sum() < 1 - 1e-12:
            raise DomainError("infeasible constraints: need lower <= upper and sum(lower) <= 1 <= sum(upper)")
        if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
            raise DomainError("box bounds must be finite")
        base = self.base.standardized()
        st = weight_statistics(self.weight, base)
        for name, val in (("means", mu), ("cov", cov), ("lower", lo), ("upper", hi), ("base", base),
                          ("V", st.V), ("c0", st.c0)):
            object.__setattr__(self, name, val)

    @property
    def n_assets(self) -> int:
        return self.means.size

    def moments_of(self, x):
        x = np.asarray(x, float)
        return float(x @ self.means), float(math.sqrt(x @ self.cov @ x))

    def check(self, x, tol=1e-9):
        x = np.asarray(x, float)
        if x.shape != self.means.shape:
            raise UsageError("portfolio has the wrong length")
        if abs(x.sum() - 1) > tol or np.any(x < self.lower - tol) or np.any(x > self.upper + tol):
            raise DomainError("portfolio violates the constraints")
        return x


def kappa(A: float, V: float, c0: float) -> float:
    """Coefficient of sigma_x in the robust objective with eps_x = 2 sigma_x^2 A."""
    if not 0 <= A <= 1:
        raise DomainError("A must lie in [0, 1]")
    if A >= 1 - c0:
        return math.sqrt(V)
    return math.sqrt(V) * (c0 * (1 - A) + math.sqrt(A * (2 - A)) * math.sqrt(max(1 - c0 * c0, 0.0)))


def robust_objective(mu_x: float, sigma_x: float, eps: float, V: float, c0: float) -> float:
    """-mu_x plus the worst-case risk of a location-scale loss with tolerance eps."""
    e = min(eps, 2 * sigma_x ** 2 * (1 - c0))
    return (-mu_x + (sigma_x - e / (2 * sigma_x)) * math.sqrt(V) * c0
            + math.sqrt(max(e - e * e / (4 * sigma_x ** 2), 0.0)) * math.sqrt(V * (1 - c0 * c0)))


def portfolio_objective(problem: PortfolioProblem, x, A: float | None = None, eps=None) -> float:
    """Robust objective of portfolio x, for ambiguity coefficient A or a tolerance eps (number or callable)."""
    x = problem.check(x)
    mu_x, s_x = problem.moments_of(x)
    if A is not None:
        return -mu_x + s_x * kappa(A, problem.V, problem.c0)
    if eps is None:
        raise UsageError("give either A or eps")
    e = float(eps(x) if callable(eps) else eps)
    if e < 0:
        raise DomainError("epsilon must be non-negative")
    return robust_objective(mu_x, s_x, e, problem.V, problem.c0)


def project_box_simplex(y: np.ndarray, lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    """Euclidean projection onto {sum x = 1, lower <= x <= upper}.

    The sum of clip(y - t, lower, upper) is piecewise linear and non-increasing
    in t; the shift t is located exactly among the sorted breakpoints.
    """
    y = np.asarray(y, float)
    bps = np.sort(np.concatenate([y - upper, y - lower]))
    total = lambda t: np.clip(y - t, lower, upper).sum()
    vals = np.array([total(t) for t in bps])
    j = int(np.searchsorted(-vals, -1.0, side="left"))  # first breakpoint with total <= 1
    if j == 0:
        t = bps[0]
    elif j == bps.size:
        t = bps[-1]
    else:
        t0, t1, v0, v1 = bps[j - 1], bps[j], vals[j - 1], vals[j]
        t = t0 if v0 == v1 else t0 + (v0 - 1.0) * (t1 - t0) / (v0 - v1)
    return np.clip(y - t, lower, upper)


@dataclass(frozen=True, eq=False)
class PortfolioSolution:
    x: np.ndarray
    objective: float
    diagnostics: dict


def _pg_minimize(f, grad, x0, lower, upper, tol=1e-12, max_iter=20_000):
    """Projected gradient: accelerated with backtracking, then fixed steps.

    Function-value line searches stall once decreases reach rounding level,
    so the final phase takes plain projected steps of the last accepted size,
    which only needs gradients.
    """
    x = project_box_simplex(x0, lower, upper)
    fx = f(x)
    y, t, step = x.copy(), 1.0, 1.0
    it = 0
    for it in range(max_iter):
        gy = grad(y)
        fy = f(y)
        while True:
            z = project_box_simplex(y - step * gy, lower, upper)
            d = z - y
            if f(z) <= fy + gy @ d + 0.5 / step * (d @ d) or step < 1e-12:
                break
            step *= 0.5
        fz = f(z)
        if fz > fx:  # restart momentum
            y, t = x.copy(), 1.0
            continue
        t_new = 0.5 * (1 + math.sqrt(1 + 4 * t * t))
        y = project_box_simplex(z + (t - 1) / t_new * (z - x), lower, upper)
        x, fx, t = z, fz, t_new
        if np.max(np.abs(x - project_box_simplex(x - grad(x), lower, upper))) < 1e-7:
            break
        step *= 1.2
    step = 0.5 * step
    for k in range(max_iter):
        g = grad(x)
        if np.max(np.abs(x - project_box_simplex(x - g, lower, upper))) < tol:
            break
        x = project_box_simplex(x - step * g, lower, upper)
    return x, f(x), it + k


def portfolio_optimize(problem: PortfolioProblem, A: float | None = None, eps=None, starts: int = 8,
                       seed: int = 0) -> PortfolioSolution:
    """Minimize the robust objective over the box-constrained simplex by projected gradient."""
    mu, cov = problem.means, problem.cov
    if A is not None:
        k = kappa(A, problem.V, problem.c0)

        def f(x):
            return float(-mu @ x + k * math.sqrt(x @ cov @ x))

        def grad(x):
            return -mu + k * (cov @ x) / math.sqrt(x @ cov @ x)
    else:
        if eps is None:
            raise UsageError("give either A or eps")

        def f(x):
            mx, sx = float(x @ mu), float(math.sqrt(x @ cov @ x))
            return robust_objective(mx, sx, float(eps(x) if callable(eps) else eps), problem.V, problem.c0)

        def grad(x):
            h = 1e-7
            e = np.eye(x.size)
            return np.array([(f(x + h * e[i]) - f(x - h * e[i])) / (2 * h) for i in range(x.size)])

    rng = np.random.default_rng(seed)
    n = problem.n_assets
    seeds = [np.full(n, 1.0 / n)] + [rng.dirichlet(np.ones(n)) for _ in range(max(starts - 1, 0))]
    runs = []
    for s in seeds:
        x0 = project_box_simplex(s, problem.lower, problem.upper)
        x, fx, it = _pg_minimize(f, grad, x0, problem.lower, problem.upper)
        runs.append((fx, x, it, f(x0)))
    fx, x, it, _ = min(runs, key=lambda r: r[0])
    kkt = float(np.max(np.abs(x - project_box_simplex(x - grad(x), problem.lower, problem.upper))))
    diag = {"kkt_residual": kkt, "iterations": it, "seed": seed, "starts": len(seeds),
            "start_objectives": [r[3] for r in runs], "run_objectives": [r[0] for r in runs],
            "kappa": kappa(A, problem.V, problem.c0) if A is not None else None,
            "V": problem.V, "c0": problem.c0}
    return PortfolioSolution(x, fx, diag)


def estimate_ambiguity(returns, portfolios, base: DiscreteQuantile | None = None):
    """Ambiguity coefficient from a return history.

    For each portfolio x the loss sample -R x is compared with the location-scale
    reference built from its sample mean and standard deviation; the squared
    quantile distance over 2 sigma^2 is maximised over the portfolios.
    Returns (A_hat, per-portfolio values).
    """
    R = np.asarray(returns, float)
    X = np.atleast_2d(np.asarray(portfolios, float))
    T = R.shape[0]
    if base is None:
        z = special.ndtri(midpoint_grid(T))
    else:
        if base.n != T:
            raise UsageError("base grid must have one point per observation")
        z = base.standardized().values
    vals = []
    for x in X:
        L = -R @ x
        m, s = L.mean(), L.std()
        if s <= 0:
            raise DomainError("portfolio loss has zero sample variance")
        d2 = float(np.mean((np.sort(L) - (m + s * z)) ** 2))
        vals.append(d2 / (2 * s * s))
    return max(vals), vals


def read_portfolio_json(path):
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read portfolio input {path}: {exc}") from exc
    for key in ("means", "covariance"):
        if key not in data:
            raise UsageError(f"portfolio input lacks {key!r}")
    return data


def read_returns_csv(path) -> np.ndarray:
    try:
        return np.loadtxt(path, delimiter=",", ndmin=2)
    except ValueError:
        return np.loadtxt(path, delimiter=",", ndmin=2, skiprows=1)
