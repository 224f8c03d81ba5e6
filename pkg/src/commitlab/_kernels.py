"""Hot numeric kernels.

Beliefs and payoffs are passed in flat encoded form so the same functions
compile under numba:

    belief  -> (bcode, bpar, xs, fs, cs)
    utility -> (ucode, ua, ub)

``xs``/``fs``/``cs`` hold the grid, density and CDF of a numeric belief and
are empty arrays for the closed-form families.

By the symmetry P(x, y) = 1 - P(y, x) a candidate's own win probability
depends only on its platform and the opponent's, not on which side it runs
on, so the best-response kernels take no side argument.

Every scalar kernel is written once in numba-compatible Python. The grid
objective has two implementations: a compiled loop and a vectorized numpy
version; ``COMMITLAB_DISABLE_NUMBA`` selects which one the solver uses.
"""
import math

import numpy as np

from ._accel import USE_NUMBA, njit

UNIFORM, TRIANGULAR, POWER, NUMERIC = 0, 1, 2, 3
QUADRATIC, EXPONENTIAL = 0, 1

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0


# ---------------------------------------------------------------- beliefs

def _cdf(bcode, bpar, xs, cs, x):
    if bcode == UNIFORM:
        return x
    if bcode == TRIANGULAR:
        if x <= bpar:
            if bpar <= 0.0:
                return 0.0
            return x * x / bpar
        return 1.0 - (1.0 - x) * (1.0 - x) / (1.0 - bpar)
    if bcode == POWER:
        return x ** bpar
    return np.interp(x, xs, cs)


def _density(bcode, bpar, xs, fs, x):
    if bcode == UNIFORM:
        return 1.0
    if bcode == TRIANGULAR:
        if x <= bpar:
            if bpar <= 0.0:
                return 2.0
            return 2.0 * x / bpar
        return 2.0 * (1.0 - x) / (1.0 - bpar)
    if bcode == POWER:
        if x == 0.0:
            if bpar < 1.0:
                return math.inf
            if bpar == 1.0:
                return 1.0
            return 0.0
        return bpar * x ** (bpar - 1.0)
    return np.interp(x, xs, fs)


cdf = njit(_cdf)
density = njit(_density)


def cdf_array(bcode, bpar, xs, cs, x):
    """Vectorized CDF (numpy only)."""
    x = np.asarray(x, dtype=float)
    if bcode == UNIFORM:
        return x.copy()
    if bcode == TRIANGULAR:
        lo = x * x / bpar if bpar > 0.0 else np.zeros_like(x)
        hi = 1.0 - (1.0 - x) ** 2 / (1.0 - bpar) if bpar < 1.0 else np.ones_like(x)
        return np.where(x <= bpar, lo, hi)
    if bcode == POWER:
        return x ** bpar
    return np.interp(x, xs, cs)


def density_array(bcode, bpar, xs, fs, x):
    x = np.asarray(x, dtype=float)
    if bcode == UNIFORM:
        return np.ones_like(x)
    if bcode == TRIANGULAR:
        with np.errstate(divide="ignore", invalid="ignore"):
            lo = 2.0 * x / bpar if bpar > 0.0 else np.full_like(x, 2.0)
            hi = 2.0 * (1.0 - x) / (1.0 - bpar) if bpar < 1.0 else np.full_like(x, 2.0)
        return np.where(x <= bpar, lo, hi)
    if bcode == POWER:
        with np.errstate(divide="ignore"):
            return bpar * x ** (bpar - 1.0)
    return np.interp(x, xs, fs)


# ---------------------------------------------------------------- payoffs

def _utility(ucode, ua, ub, x, t):
    if ucode == QUADRATIC:
        base = -(x - t) * (x - t)
    else:
        base = -math.exp(x - t) + x
    return ua * base + ub


def _utility_dx(ucode, ua, x, t):
    if ucode == QUADRATIC:
        return -2.0 * ua * (x - t)
    return ua * (1.0 - math.exp(x - t))


utility = njit(_utility)
utility_dx = njit(_utility_dx)


def utility_array(ucode, ua, ub, x, t):
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    if ucode == QUADRATIC:
        base = -(x - t) ** 2
    else:
        base = -np.exp(x - t) + x
    return ua * base + ub


# ---------------------------------------------------------------- contest

@njit
def win_prob(bcode, bpar, xs, cs, xl, xr):
    if xl < xr:
        return cdf(bcode, bpar, xs, cs, 0.5 * (xl + xr))
    if xl > xr:
        return 1.0 - cdf(bcode, bpar, xs, cs, 0.5 * (xl + xr))
    return 0.5


def win_prob_array(bcode, bpar, xs, cs, xl, xr):
    xl, xr = np.broadcast_arrays(np.asarray(xl, dtype=float), np.asarray(xr, dtype=float))
    F = cdf_array(bcode, bpar, xs, cs, 0.5 * (xl + xr))
    return np.where(xl < xr, F, np.where(xl > xr, 1.0 - F, 0.5))


@njit
def objective(x, opp, t, ucode, ua, ub, bcode, bpar, xs, cs):
    """Reduced best-response objective: own win probability times the payoff gap."""
    du = utility(ucode, ua, ub, x, t) - utility(ucode, ua, ub, opp, t)
    return win_prob(bcode, bpar, xs, cs, x, opp) * du


@njit
def objective_slope(x, opp, t, ucode, ua, ub, bcode, bpar, xs, fs, cs):
    du = utility(ucode, ua, ub, x, t) - utility(ucode, ua, ub, opp, t)
    m = 0.5 * (x + opp)
    if x == opp:
        return 0.5 * utility_dx(ucode, ua, x, t)
    F = cdf(bcode, bpar, xs, cs, m)
    if x < opp:
        p, toward = F, 1.0
    else:
        p, toward = 1.0 - F, -1.0
    dp = 0.0
    # 0 * inf guard for power beliefs with k < 1 at m = 0
    if du != 0.0:
        dp = toward * 0.5 * density(bcode, bpar, xs, fs, m) * du
    return dp + p * utility_dx(ucode, ua, x, t)


def _objective_grid_loop(grid, opp, t, ucode, ua, ub, bcode, bpar, xs, cs):
    out = np.empty(grid.shape[0])
    for i in range(grid.shape[0]):
        out[i] = objective(grid[i], opp, t, ucode, ua, ub, bcode, bpar, xs, cs)
    return out


def _objective_grid_numpy(grid, opp, t, ucode, ua, ub, bcode, bpar, xs, cs):
    du = utility_array(ucode, ua, ub, grid, t) - _utility(ucode, ua, ub, opp, t)
    return win_prob_array(bcode, bpar, xs, cs, grid, opp) * du


objective_grid = njit(_objective_grid_loop) if USE_NUMBA else _objective_grid_numpy


# ---------------------------------------------------------------- maximization

@njit
def golden_max(a, b, opp, t, ucode, ua, ub, bcode, bpar, xs, cs, tol):
    """Golden-section search for a maximizer of the reduced objective on [a, b]."""
    dist = b - a
    if dist <= tol:
        return 0.5 * (a + b)
    c = a + _INV_PHI2 * dist
    d = a + _INV_PHI * dist
    yc = objective(c, opp, t, ucode, ua, ub, bcode, bpar, xs, cs)
    yd = objective(d, opp, t, ucode, ua, ub, bcode, bpar, xs, cs)
    for _ in range(300):
        if dist <= tol:
            break
        if yc > yd:
            b = d
            d = c
            yd = yc
            dist = _INV_PHI * dist
            c = a + _INV_PHI2 * dist
            yc = objective(c, opp, t, ucode, ua, ub, bcode, bpar, xs, cs)
        else:
            a = c
            c = d
            yc = yd
            dist = _INV_PHI * dist
            d = a + _INV_PHI * dist
            yd = objective(d, opp, t, ucode, ua, ub, bcode, bpar, xs, cs)
    if yc > yd:
        return 0.5 * (a + d)
    return 0.5 * (c + b)


@njit
def slope_root(a, b, opp, t, ucode, ua, ub, bcode, bpar, xs, fs, cs):
    """Bisection on the objective slope; requires slope(a) > 0 > slope(b)."""
    for _ in range(200):
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:
            break
        if objective_slope(mid, opp, t, ucode, ua, ub, bcode, bpar, xs, fs, cs) > 0.0:
            a = mid
        else:
            b = mid
    return 0.5 * (a + b)


@njit
def refine(a, b, opp, t, ucode, ua, ub, bcode, bpar, xs, fs, cs, tol, tie_tol):
    xg = golden_max(a, b, opp, t, ucode, ua, ub, bcode, bpar, xs, cs, tol)
    vg = objective(xg, opp, t, ucode, ua, ub, bcode, bpar, xs, cs)
    sa = objective_slope(a, opp, t, ucode, ua, ub, bcode, bpar, xs, fs, cs)
    sb = objective_slope(b, opp, t, ucode, ua, ub, bcode, bpar, xs, fs, cs)
    if sa > 0.0 and sb < 0.0:
        xp = slope_root(a, b, opp, t, ucode, ua, ub, bcode, bpar, xs, fs, cs)
        vp = objective(xp, opp, t, ucode, ua, ub, bcode, bpar, xs, cs)
        if vp >= vg - tie_tol:
            return xp, vp
    best, vbest = xg, vg
    va = objective(a, opp, t, ucode, ua, ub, bcode, bpar, xs, cs)
    if va >= vbest:
        best, vbest = a, va
    vb = objective(b, opp, t, ucode, ua, ub, bcode, bpar, xs, cs)
    if vb >= vbest:
        best, vbest = b, vb
    return best, vbest


@njit
def best_response(opp, t, ucode, ua, ub, bcode, bpar, xs, fs, cs,
                  grid_size, refine_tol, tie_tol):
    """Smallest and largest maximizers of the reduced objective plus the optimal value.

    Scans ``grid_size`` points between ``t`` and ``opp``, refines every run of
    grid points within ``tie_tol`` of the maximum, and keeps all refined
    maximizers within ``tie_tol`` of the best refined value.
    """
    if opp == t:
        return t, t, 0.0
    lo = min(t, opp)
    hi = max(t, opp)
    grid = np.linspace(lo, hi, grid_size)
    vals = objective_grid(grid, opp, t, ucode, ua, ub, bcode, bpar, xs, cs)
    vmax = vals.max()
    n = grid_size
    cand_x = np.empty(n)
    cand_v = np.empty(n)
    k = 0
    i = 0
    while i < n:
        if vals[i] >= vmax - tie_tol:
            j = i
            while j + 1 < n and vals[j + 1] >= vmax - tie_tol:
                j += 1
            a = grid[max(i - 1, 0)]
            b = grid[min(j + 1, n - 1)]
            x, v = refine(a, b, opp, t, ucode, ua, ub, bcode, bpar, xs, fs, cs,
                          refine_tol, tie_tol)
            cand_x[k] = x
            cand_v[k] = v
            k += 1
            i = j + 1
        else:
            i += 1
    vbest = cand_v[:k].max()
    smallest = hi
    largest = lo
    for m in range(k):
        if cand_v[m] >= vbest - tie_tol:
            smallest = min(smallest, cand_x[m])
            largest = max(largest, cand_x[m])
    return smallest, largest, vbest


@njit
def best_response_many(opps, t, ucode, ua, ub, bcode, bpar, xs, fs, cs,
                       grid_size, refine_tol, tie_tol):
    n = opps.shape[0]
    small = np.empty(n)
    large = np.empty(n)
    value = np.empty(n)
    for i in range(n):
        s, l, v = best_response(opps[i], t, ucode, ua, ub, bcode, bpar, xs, fs, cs,
                                grid_size, refine_tol, tie_tol)
        small[i] = s
        large[i] = l
        value[i] = v
    return small, large, value
