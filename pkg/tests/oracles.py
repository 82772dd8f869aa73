"""Independent reference computations used by the tests.

None of these share code paths with the package engines: isotonic
regression via the max-min block-average formula, quadrature with
scipy.integrate, and direct constrained optimisation with SLSQP.
"""
import math

import numpy as np
from scipy import integrate, optimize, stats


def isotonic_minmax(y):
    """Isotonic regression by x_i = max_{s<=i} min_{t>=i} mean(y[s..t]); O(n^3)."""
    y = np.asarray(y, float)
    n = y.size
    c = np.concatenate([[0.0], np.cumsum(y)])
    out = np.empty(n)
    for i in range(n):
        best = -np.inf
        for s in range(i + 1):
            t = np.arange(i, n)
            m = ((c[t + 1] - c[s]) / (t + 1 - s)).min()
            best = max(best, m)
        out[i] = best
    return out


def antitonic_minmax(y):
    return -isotonic_minmax(-np.asarray(y, float))


def normal_tvar(alpha):
    return stats.norm.pdf(stats.norm.ppf(alpha)) / (1 - alpha)


def quad_tvar_normal(alpha):
    val, _ = integrate.quad(lambda u: stats.norm.ppf(u), alpha, 1, epsabs=1e-13, epsrel=1e-13, limit=200)
    return val / (1 - alpha)


def quad_rvar_cov_normal(alpha, beta):
    """cov(Phi^{-1}(U), gamma(U)) for RVaR weights = interval mean of Phi^{-1}."""
    val, _ = integrate.quad(lambda u: stats.norm.ppf(u), alpha, beta, epsabs=1e-13, epsrel=1e-13)
    return val / (beta - alpha)


def quad_wang_mean(q0):
    z = stats.norm.ppf(q0)
    f = lambda x: stats.norm.pdf(x + z)  # gamma(u) du with x = Phi^{-1}(1-u)
    val, _ = integrate.quad(f, -np.inf, np.inf, epsabs=1e-14)
    return val


def slsqp_worst(weights, F, mu, sigma, eps, starts=(), maxiter=2000):
    """Maximise mean(weights * h) over non-decreasing h with fixed mean/std and mean((h-F)^2) <= eps.

    h is parametrised as h0 + cumsum of non-negative increments.
    """
    g = np.asarray(weights, float)
    F = np.asarray(F, float)
    n = F.size

    def unpack(p):
        return p[0] + np.concatenate([[0.0], np.cumsum(p[1:])])

    cons = [
        {"type": "eq", "fun": lambda p: unpack(p).mean() - mu},
        {"type": "eq", "fun": lambda p: np.mean(unpack(p) ** 2) - (mu * mu + sigma * sigma)},
        {"type": "ineq", "fun": lambda p: eps - np.mean((unpack(p) - F) ** 2)},
    ]
    bounds = [(None, None)] + [(0, None)] * (n - 1)
    best = None
    inits = [mu + sigma * (F - F.mean()) / F.std()] + list(starts)
    for h0 in inits:
        h0 = np.maximum.accumulate(np.asarray(h0, float))
        p0 = np.concatenate([[h0[0]], np.diff(h0)])
        res = optimize.minimize(lambda p: -np.mean(g * unpack(p)), p0, method="SLSQP", bounds=bounds,
                                constraints=cons, options={"maxiter": maxiter, "ftol": 1e-14})
        h = unpack(res.x)
        feasible = (abs(h.mean() - mu) < 1e-6 and abs(h.std() - sigma) < 1e-6
                    and np.mean((h - F) ** 2) <= eps * (1 + 1e-6))
        if feasible and (best is None or -res.fun > best[0]):
            best = (-res.fun, h)
    return best
