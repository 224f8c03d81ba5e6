"""Best responses and Nash equilibria of the platform game.

Equilibria under commitment are found by monotone iteration of the joint
best-response map from the bottom and top of the lattice [t_l, t_r]^2.
:func:`enumerate_equilibria` is an independent brute-force check: it scans the
whole square for approximate fixed points, which also surfaces intermediate
equilibria the iteration never visits.
"""
from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import ndimage

from . import _kernels as K
from .contest import LEFT, RIGHT, ElectionModel, IdealPair, PlatformProfile
from .errors import DomainError, check_unit

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class BROptions:
    grid_size: int = 2001
    refine_tol: float = 1e-10
    tie_tol: float = 1e-9

    def __post_init__(self):
        if self.grid_size < 101:
            raise DomainError("best-response grid_size must be at least 101")


@dataclass(frozen=True)
class SolverOptions:
    br: BROptions = field(default_factory=BROptions)
    fixpoint_tol: float = 1e-9
    max_iters: int = 10_000
    # backward steps larger than this set the ``clamped`` diagnostic
    monotone_tol: float = 1e-9


@dataclass(frozen=True)
class BestResponseSet:
    smallest: float
    largest: float
    value: float


@dataclass(frozen=True)
class EquilibriumReport:
    smallest: PlatformProfile
    largest: PlatformProfile
    iterations_smallest: int
    iterations_largest: int
    converged: bool
    clamped: bool = False

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> EquilibriumReport:
        return cls(
            smallest=PlatformProfile(**d["smallest"]),
            largest=PlatformProfile(**d["largest"]),
            iterations_smallest=int(d["iterations_smallest"]),
            iterations_largest=int(d["iterations_largest"]),
            converged=bool(d["converged"]),
            clamped=bool(d.get("clamped", False)),
        )


class _Kernel:
    """Encoded model bound to the compiled best-response routine."""

    def __init__(self, model: ElectionModel, br: BROptions):
        self.t_l = model.ideals.t_l
        self.t_r = model.ideals.t_r
        self.args = model.utility.encode() + model.belief.encode()
        self.br = br

    def respond(self, t: float, opp: float) -> tuple[float, float, float]:
        br = self.br
        return K.best_response(opp, t, *self.args, br.grid_size, br.refine_tol, br.tie_tol)

    def respond_many(self, t: float, opps: np.ndarray):
        br = self.br
        return K.best_response_many(np.ascontiguousarray(opps, dtype=float), t, *self.args,
                                    br.grid_size, br.refine_tol, br.tie_tol)


def best_response(model: ElectionModel, side: str, opponent_x: float,
                  opts: BROptions | None = None) -> BestResponseSet:
    """Smallest and largest maximizers of the candidate's expected payoff.

    The search runs over the closed interval between the candidate's ideal
    policy and ``opponent_x``; maximizers outside it are never optimal.
    """
    opponent_x = check_unit("opponent_x", opponent_x)
    t = model.ideals.of(side)
    if opponent_x == t:
        return BestResponseSet(t, t, 0.0)
    lo, hi, value = _Kernel(model, opts or BROptions()).respond(t, opponent_x)
    return BestResponseSet(float(lo), float(hi), float(value))


def _iterate(kern: _Kernel, start, pick: int, opts: SolverOptions):
    """Jacobi iteration of the joint best-response map. ``pick`` 0 = smallest selection, 1 = largest."""
    x_l, x_r = start
    up = pick == 0
    clamped = False
    for it in range(1, opts.max_iters + 1):
        new_l = kern.respond(kern.t_l, x_r)[pick]
        new_r = kern.respond(kern.t_r, x_l)[pick]
        back = max(x_l - new_l, x_r - new_r) if up else max(new_l - x_l, new_r - x_r)
        if back > opts.monotone_tol:
            clamped = True
            log.debug("monotone iterate stepped back by %.3g at iteration %d", back, it)
        if up:
            new_l, new_r = max(new_l, x_l), max(new_r, x_r)
        else:
            new_l, new_r = min(new_l, x_l), min(new_r, x_r)
        step = max(abs(new_l - x_l), abs(new_r - x_r))
        x_l, x_r = new_l, new_r
        if step < opts.fixpoint_tol:
            return (x_l, x_r), it, True, clamped
    return (x_l, x_r), opts.max_iters, False, clamped


def extremal_equilibria(model: ElectionModel, opts: SolverOptions | None = None) -> EquilibriumReport:
    """Smallest and largest Nash equilibria under commitment.

    The smallest is the limit of the smallest-selection best-response map
    started at (t_l, t_l); the largest is the limit of the largest-selection
    map started at (t_r, t_r). Check ``converged`` on the result: hitting
    ``max_iters`` returns the last iterate instead of raising.
    """
    opts = opts or SolverOptions()
    kern = _Kernel(model, opts.br)
    t_l, t_r = kern.t_l, kern.t_r
    low, it_low, ok_low, cl_low = _iterate(kern, (t_l, t_l), 0, opts)
    high, it_high, ok_high, cl_high = _iterate(kern, (t_r, t_r), 1, opts)
    if not (ok_low and ok_high):
        log.warning("equilibrium iteration did not converge for ideals (%g, %g)", t_l, t_r)
    return EquilibriumReport(
        smallest=PlatformProfile(*low),
        largest=PlatformProfile(*high),
        iterations_smallest=it_low,
        iterations_largest=it_high,
        converged=ok_low and ok_high,
        clamped=cl_low or cl_high,
    )


def _interval_distance(x, lo, hi):
    return np.maximum(np.maximum(lo - x, x - hi), 0.0)


def enumerate_equilibria(model: ElectionModel, resolution: int = 401, tol: float | None = None,
                         opts: BROptions | None = None) -> list[PlatformProfile]:
    """Approximate equilibria found by scanning a grid over [t_l, t_r]^2.

    A grid point qualifies when each coordinate lies within ``tol`` (default
    two grid steps) of the other candidate's best-response set. Connected
    groups of qualifying points are merged and nudged by one best-response
    round. Results are sorted by (x_l, x_r).
    """
    if resolution < 51:
        raise DomainError("resolution must be at least 51")
    kern = _Kernel(model, opts or BROptions())
    t_l, t_r = kern.t_l, kern.t_r
    grid = np.linspace(t_l, t_r, resolution)
    if tol is None:
        tol = 2.0 * (t_r - t_l) / (resolution - 1)
    lo_l, hi_l, _ = kern.respond_many(t_l, grid)  # left's reply to x_r = grid[j]
    lo_r, hi_r, _ = kern.respond_many(t_r, grid)  # right's reply to x_l = grid[i]
    # axis 0 indexes x_l, axis 1 indexes x_r
    d_l = _interval_distance(grid[:, None], lo_l[None, :], hi_l[None, :])
    d_r = _interval_distance(grid[None, :], lo_r[:, None], hi_r[:, None])
    hits = (d_l <= tol) & (d_r <= tol)
    labels, count = ndimage.label(hits, structure=np.ones((3, 3), dtype=bool))
    found = []
    for lab in range(1, count + 1):
        ii, jj = np.nonzero(labels == lab)
        c_l, c_r = grid[ii].mean(), grid[jj].mean()
        s_l, b_l, _ = kern.respond(t_l, c_r)
        s_r, b_r, _ = kern.respond(t_r, c_l)
        x_l = s_l if abs(s_l - c_l) <= abs(b_l - c_l) else b_l
        x_r = s_r if abs(s_r - c_r) <= abs(b_r - c_r) else b_r
        found.append(PlatformProfile(float(x_l), float(x_r)))
    return sorted(found, key=PlatformProfile.as_tuple)


def no_commitment_equilibrium(ideals: IdealPair) -> PlatformProfile:
    """Without commitment each candidate runs on their own ideal policy."""
    if not isinstance(ideals, IdealPair):
        ideals = IdealPair(*ideals)
    return PlatformProfile(ideals.t_l, ideals.t_r)


__all__ = [
    "LEFT", "RIGHT", "BROptions", "SolverOptions", "BestResponseSet", "EquilibriumReport",
    "best_response", "extremal_equilibria", "enumerate_equilibria", "no_commitment_equilibrium",
]
