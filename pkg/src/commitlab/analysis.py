"""Indirect expected policy, ideal-point sweeps and the commitment/no-commitment contrast."""
from __future__ import annotations

import csv
import enum
from dataclasses import dataclass, field

import numpy as np

from .beliefs import MedianBelief
from .contest import ElectionModel, IdealPair, PlatformProfile, expected_policy, win_probability
from .errors import DomainError, NonConvergence, check_unit
from .preferences import UtilitySpec
from .solver import SolverOptions, extremal_equilibria, no_commitment_equilibrium

CSV_HEADER = ("t_l", "t_r", "regime", "x_l", "x_r", "win_prob", "pi_star", "converged")


class Regime(str, enum.Enum):
    COMMITMENT_SMALLEST = "commitment-smallest"
    COMMITMENT_LARGEST = "commitment-largest"
    NO_COMMITMENT = "no-commitment"


@dataclass(frozen=True)
class SweepRow:
    t_l: float
    t_r: float
    regime: Regime
    x_l: float
    x_r: float
    win_prob: float
    pi_star: float
    converged: bool = True

    def csv_fields(self) -> list[str]:
        return [fmt(self.t_l), fmt(self.t_r), self.regime.value, fmt(self.x_l), fmt(self.x_r),
                fmt(self.win_prob), fmt(self.pi_star), str(self.converged).lower()]


def fmt(v: float) -> str:
    """12 significant digits, the precision of every emitted number."""
    return format(float(v), ".12g")


def _row(model: ElectionModel, regime: Regime, profile: PlatformProfile, converged=True) -> SweepRow:
    return SweepRow(model.ideals.t_l, model.ideals.t_r, regime, profile.x_l, profile.x_r,
                    win_probability(model.belief, profile), expected_policy(model.belief, profile),
                    converged)


def indirect_expected_policy(model: ElectionModel, regime: Regime | str,
                             opts: SolverOptions | None = None) -> SweepRow:
    """Expected policy evaluated at the regime's equilibrium platforms.

    Raises :class:`NonConvergence` (carrying the unconverged row as
    ``report``) if the commitment iteration hits its cap.
    """
    regime = Regime(regime)
    if regime is Regime.NO_COMMITMENT:
        return _row(model, regime, no_commitment_equilibrium(model.ideals))
    rep = extremal_equilibria(model, opts)
    profile = rep.smallest if regime is Regime.COMMITMENT_SMALLEST else rep.largest
    row = _row(model, regime, profile, rep.converged)
    if not rep.converged:
        raise NonConvergence(f"no equilibrium convergence at ideals ({model.ideals.t_l}, {model.ideals.t_r})", row)
    return row


def sweep_ideal(model: ElectionModel, vary: str, values, regime: Regime | str,
                opts: SolverOptions | None = None) -> list[SweepRow]:
    """One row per value of ``t_l`` (``vary="tl"``) or ``t_r`` (``vary="tr"``).

    Rows are solved independently, without warm starts. Non-converged rows are
    kept with ``converged=False``.
    """
    vary = vary.lower()
    if vary not in ("tl", "tr"):
        raise DomainError(f"vary must be 'tl' or 'tr', got {vary!r}")
    vals = [check_unit(vary, v) for v in values]
    if any(b < a for a, b in zip(vals, vals[1:])):
        raise DomainError("sweep values must be sorted")
    t_l, t_r = model.ideals.t_l, model.ideals.t_r
    pairs = [(v, t_r) if vary == "tl" else (t_l, v) for v in vals]
    for a, b in pairs:
        if not a < b:
            raise DomainError(f"sweep point t_l={a}, t_r={b} violates t_l < t_r")
    rows = []
    for a, b in pairs:
        try:
            rows.append(indirect_expected_policy(model.with_ideals(a, b), regime, opts))
        except NonConvergence as exc:
            rows.append(exc.report)
    return rows


def write_csv(rows, fh, extra: dict[str, list[float]] | None = None) -> None:
    """Write sweep rows with the standard header plus optional extra numeric columns."""
    extra = extra or {}
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(list(CSV_HEADER) + list(extra))
    for i, row in enumerate(rows):
        w.writerow(row.csv_fields() + [fmt(col[i]) for col in extra.values()])


# ------------------------------------------------- triangular counterexample

def triangular_pi_star_closed_form(t_l: float, t_r: float) -> float:
    """No-commitment expected policy for quadratic payoffs and a Triangular(0.5) median.

    Platforms equal ideals, so the left candidate wins with 2 s^2 (s the
    midpoint) when s <= 1/2 and with 1 - 2 (1 - s)^2 above it.
    """
    t_l, t_r = check_unit("t_l", t_l), check_unit("t_r", t_r)
    s = 0.5 * (t_l + t_r)
    if t_l <= 1.0 - t_r:
        p = 2.0 * s * s
        return p * t_l + (1.0 - p) * t_r
    if t_l < t_r:
        q = 2.0 * (1.0 - s) ** 2
        return (1.0 - q) * t_l + q * t_r
    if t_l == t_r:
        return t_r
    q = 2.0 * (1.0 - s) ** 2
    return q * t_l + (1.0 - q) * t_r


def triangular_pi_star_derivative(t_l: float, t_r: float) -> float:
    """d pi*/d t_l = (3 t_l^2 + 2 t_l t_r - t_r^2) / 2 on the branch t_l <= 1 - t_r.

    Vanishes at t_l = t_r / 3. The closed branch edge t_l = 1 - t_r is
    accepted as a one-sided derivative.
    """
    t_l, t_r = check_unit("t_l", t_l), check_unit("t_r", t_r)
    if t_l > 1.0 - t_r:
        raise DomainError(f"derivative formula only holds for t_l <= 1 - t_r, got t_l={t_l}, t_r={t_r}")
    return 0.5 * (3.0 * t_l * t_l + 2.0 * t_l * t_r - t_r * t_r)


def _upper_branch_slope(t_l: float, t_r: float) -> float:
    # pi* = t_l + q (t_r - t_l) with q = 2 (1 - s)^2 for 1 - t_r < t_l <= t_r
    s = 0.5 * (t_l + t_r)
    q = 2.0 * (1.0 - s) ** 2
    return 1.0 - q - 2.0 * (1.0 - s) * (t_r - t_l)


def counterexample_table(t_r: float, steps: int = 61):
    """No-commitment triangular sweep for t_l from 0 to t_r inclusive.

    Returns ``(rows, closed, slope)``: the numeric rows (computed through the
    belief/contest kernels), the closed-form pi*, and d pi*/d t_l.
    """
    t_r = float(t_r)
    if not 0.0 < t_r <= 1.0:
        raise DomainError(f"t_r must lie in (0, 1], got {t_r}")
    if steps < 2:
        raise DomainError("steps must be at least 2")
    belief = MedianBelief.triangular(0.5)
    model = ElectionModel(UtilitySpec.quadratic(), belief, IdealPair(0.0, t_r))
    rows, closed, slope = [], [], []
    for t_l in t_r * np.arange(steps) / (steps - 1):
        t_l = float(t_l)
        if t_l < t_r:
            rows.append(indirect_expected_policy(model.with_ideals(t_l, t_r), Regime.NO_COMMITMENT))
        else:
            # degenerate t_l = t_r endpoint: platforms coincide
            prof = PlatformProfile(t_r, t_r)
            rows.append(SweepRow(t_r, t_r, Regime.NO_COMMITMENT, t_r, t_r,
                                 win_probability(belief, prof), expected_policy(belief, prof)))
        closed.append(triangular_pi_star_closed_form(t_l, t_r))
        slope.append(triangular_pi_star_derivative(t_l, t_r) if t_l <= 1.0 - t_r
                     else _upper_branch_slope(t_l, t_r))
    return rows, closed, slope


# ------------------------------------------------- regime comparison

def policy_slopes(belief, profile: PlatformProfile, step: float = 1e-5) -> tuple[float, float]:
    """Finite-difference slopes of the expected policy in x_l and in x_r.

    Each platform is perturbed only within its own side of the opponent
    (x_l in [0, x_r), x_r in (x_l, 1]); differences become one-sided at the
    edges.
    """
    x_l, x_r = profile.x_l, profile.x_r

    def pi(a, b):
        return expected_policy(belief, (a, b))

    lo, hi = x_l - step, x_l + step
    if lo < 0.0:
        lo = x_l
    if hi >= x_r:
        hi = x_l
    d_l = (pi(hi, x_r) - pi(lo, x_r)) / (hi - lo)
    lo, hi = x_r - step, x_r + step
    if lo <= x_l:
        lo = x_r
    if hi > 1.0:
        hi = x_r
    d_r = (pi(x_l, hi) - pi(x_l, lo)) / (hi - lo)
    return d_l, d_r


@dataclass
class RegimeComparison:
    commitment_rows: list[SweepRow]
    no_commitment_row: SweepRow
    slopes: dict[Regime, tuple[float, float]] = field(default_factory=dict)
    on_increasing_segment: dict[Regime, bool] = field(default_factory=dict)


def regime_comparison(model: ElectionModel, opts: SolverOptions | None = None,
                      step: float = 1e-5) -> RegimeComparison:
    """Does each regime put both candidates where the expected policy rises in their own platform?

    Commitment equilibria always do; no-commitment platforms need not.
    """
    rows = [indirect_expected_policy(model, r, opts)
            for r in (Regime.COMMITMENT_SMALLEST, Regime.COMMITMENT_LARGEST)]
    nc = indirect_expected_policy(model, Regime.NO_COMMITMENT)
    out = RegimeComparison(rows, nc)
    for row in rows + [nc]:
        d = policy_slopes(model.belief, PlatformProfile(row.x_l, row.x_r), step)
        out.slopes[row.regime] = d
        out.on_increasing_segment[row.regime] = d[0] > 0.0 and d[1] > 0.0
    return out
