"""Sampled certificates for the single-crossing and log-supermodularity conditions.

Each check enumerates every ordered tuple drawn from a jittered stratified
grid on (0, 1), so reports and witnesses are reproducible for a given
``samples``/``seed``. A pass only covers the tuples checked; scale ``samples``
for more confidence.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from itertools import combinations
from math import comb
from typing import Callable, Union

import numpy as np

from .beliefs import MedianBelief
from .contest import win_probability_grid
from .errors import DomainError
from .preferences import UtilitySpec

STRICT = 1e-12
MIN_DENOMINATOR = 1e-14

PayoffFn = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class CertificateReport:
    """Outcome of a sampled check.

    ``margin`` is the smallest observed slack minus the strictness threshold,
    so it is positive exactly when the check passed. Tuples whose antecedent
    fails count as checked and passing.
    """

    assumption: str
    passed: bool
    tuples_checked: int
    witness: tuple | None
    margin: float
    skipped: int = 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["witness"] = list(self.witness) if self.witness is not None else None
        if not np.isfinite(self.margin):
            d["margin"] = None
        return d


def stratified_points(n: int, seed: int = 0) -> np.ndarray:
    """One jittered point in each of ``n`` equal strata of (0, 1), increasing."""
    rng = np.random.default_rng(seed)
    return (np.arange(n) + rng.uniform(0.05, 0.95, n)) / n


def _ordered(n: int, size: int, ties: tuple[tuple[int, int], ...]) -> np.ndarray:
    """Index tuples i_0 < ... < i_{size-1}, plus variants where each listed pair of
    adjacent positions may coincide (a weak inequality)."""
    out = []
    for mask in range(1 << len(ties)):
        merged = [ties[b] for b in range(len(ties)) if mask >> b & 1]
        k = size - len(merged)
        base = np.array(list(combinations(range(n), k)), dtype=np.intp).reshape(-1, k)
        cols = []
        src = 0
        for pos in range(size):
            if any(pos == q for _, q in merged):
                cols.append(cols[-1])
            else:
                cols.append(base[:, src])
                src += 1
        out.append(np.column_stack(cols))
    return np.concatenate(out)


def _count(n: int, size: int, nties: int) -> int:
    return sum(comb(nties, j) * comb(n, size - j) for j in range(nties + 1))


def _grid_size(samples: int, size: int, nties: int, branches: int) -> int:
    if samples < 100:
        raise DomainError("samples must be at least 100")
    n = size
    while branches * _count(n, size, nties) < samples:
        n += 1
    return n


def _payoff_fn(utility) -> PayoffFn:
    if isinstance(utility, UtilitySpec):
        return utility
    if callable(utility):
        return lambda x, t: np.asarray(utility(x, t), dtype=float)
    raise DomainError(f"expected a UtilitySpec or callable payoff, got {type(utility).__name__}")


def _report(name, slack, active, tuples, skipped=0, checked=None) -> CertificateReport:
    """Summarize slack (only where ``active``) into a report."""
    checked = tuples.shape[0] if checked is None else checked
    live = slack[active]
    bad = np.nonzero(active & ~(slack > STRICT))[0]
    margin = float(live.min() - STRICT) if live.size else float("inf")
    witness = tuple(float(v) for v in tuples[bad[0]]) if bad.size else None
    return CertificateReport(name, witness is None, checked, witness, margin, skipped)


def sls_tuples(samples: int, seed: int = 0) -> np.ndarray:
    """Rows (t, t', x, x', y) in both admissible orderings."""
    n = _grid_size(samples, 5, 1, 2)
    pts = stratified_points(n, seed)
    # t < t' <= x < x' < y
    a = pts[_ordered(n, 5, ((1, 2),))]
    # y < x < x' <= t < t'
    b = pts[_ordered(n, 5, ((2, 3),))]
    right = np.column_stack([b[:, 3], b[:, 4], b[:, 1], b[:, 2], b[:, 0]])
    return np.concatenate([a, right])


def sls_slack(utility, tuples: np.ndarray):
    """Ratio gap for each (t, t', x, x', y) row and a mask of usable denominators."""
    u = _payoff_fn(utility)
    t, tp, x, xp, y = tuples.T
    den_hi = u(x, tp) - u(y, tp)
    den_lo = u(x, t) - u(y, t)
    ok = (np.abs(den_hi) >= MIN_DENOMINATOR) & (np.abs(den_lo) >= MIN_DENOMINATOR)
    with np.errstate(divide="ignore", invalid="ignore"):
        lhs = (u(xp, tp) - u(y, tp)) / den_hi
        rhs = (u(xp, t) - u(y, t)) / den_lo
    return np.where(ok, lhs - rhs, np.nan), ok


def check_sls(utility: Union[UtilitySpec, PayoffFn], samples: int = 10_000, seed: int = 0) -> CertificateReport:
    """Strict log-supermodularity of payoff differences in (platform, ideal).

    Tuples with a denominator below 1e-14 in magnitude are skipped and
    counted in ``skipped`` instead of raising.
    """
    tuples = sls_tuples(samples, seed)
    slack, ok = sls_slack(utility, tuples)
    return _report("sls", slack, ok, tuples, skipped=int((~ok).sum()))


def _U(u: PayoffFn, belief: MedianBelief, t, x_l, x_r):
    p = win_probability_grid(belief, x_l, x_r)
    return p * u(x_l, t) + (1.0 - p) * u(x_r, t)


def sscp_tuples(samples: int, seed: int = 0) -> np.ndarray:
    """Rows (t, t', x, x', y, y') with t <= x < x' < y < y' <= t'."""
    n = _grid_size(samples, 6, 2, 1)
    pts = stratified_points(n, seed)
    idx = _ordered(n, 6, ((0, 1), (4, 5)))
    rows = pts[idx]  # columns: t, x, x', y, y', t'
    return rows[:, [0, 5, 1, 2, 3, 4]]


def check_sscp(utility: Union[UtilitySpec, PayoffFn], belief: MedianBelief,
               samples: int = 10_000, seed: int = 0) -> CertificateReport:
    """Strict single crossing of expected payoffs for both candidates.

    Left (ideal t): if moving x -> x' weakly pays against y, it strictly pays
    against y'. Right (ideal t'): if moving y' -> y weakly pays against x',
    it strictly pays against x.
    """
    u = _payoff_fn(utility)
    tuples = sscp_tuples(samples, seed)
    t, tp, x, xp, y, yp = tuples.T
    ante_l = _U(u, belief, t, xp, y) - _U(u, belief, t, x, y) >= 0.0
    conc_l = _U(u, belief, t, xp, yp) - _U(u, belief, t, x, yp)
    ante_r = _U(u, belief, tp, xp, y) - _U(u, belief, tp, xp, yp) >= 0.0
    conc_r = _U(u, belief, tp, x, y) - _U(u, belief, tp, x, yp)
    both = np.concatenate([tuples, tuples])
    return _report("sscp", np.concatenate([conc_l, conc_r]), np.concatenate([ante_l, ante_r]), both,
                   checked=tuples.shape[0])


def shift_tuples(samples: int, seed: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Left rows (t_l, t_l', x_l, x_l', x_r) and right rows (x_l, x_r, x_r', t_r, t_r')."""
    n = _grid_size(samples, 5, 1, 2)
    pts = stratified_points(n, seed)
    left = pts[_ordered(n, 5, ((1, 2),))]    # t_l < t_l' <= x_l < x_l' < x_r
    right = pts[_ordered(n, 5, ((2, 3),))]   # x_l < x_r < x_r' <= t_r < t_r'
    return left, right


def check_sls_implies_shift(utility: Union[UtilitySpec, PayoffFn], belief: MedianBelief,
                            samples: int = 10_000, seed: int = 0) -> CertificateReport:
    """Raising the ideal policy turns a weakly profitable rightward shift into a strictly profitable one.

    Left: with t_l < t_l' <= x_l < x_l' < x_r, U_{t_l}(x_l', x_r) >= U_{t_l}(x_l, x_r)
    implies U_{t_l'}(x_l', x_r) > U_{t_l'}(x_l, x_r). Right mirrors it with
    x_l < x_r < x_r' <= t_r < t_r'.
    """
    u = _payoff_fn(utility)
    left, right = shift_tuples(samples, seed)
    tl, tlp, xl, xlp, xr = left.T
    ante_l = _U(u, belief, tl, xlp, xr) - _U(u, belief, tl, xl, xr) >= 0.0
    conc_l = _U(u, belief, tlp, xlp, xr) - _U(u, belief, tlp, xl, xr)
    a, r, rp, tr, trp = right.T
    ante_r = _U(u, belief, tr, a, rp) - _U(u, belief, tr, a, r) >= 0.0
    conc_r = _U(u, belief, trp, a, rp) - _U(u, belief, trp, a, r)
    tuples = np.concatenate([left, right])
    return _report("claim7", np.concatenate([conc_l, conc_r]), np.concatenate([ante_l, ante_r]), tuples)
