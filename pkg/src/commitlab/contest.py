"""Win probability, expected payoffs and the expected policy of a two-candidate race."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .beliefs import MedianBelief
from .errors import DomainError, check_unit
from .preferences import UtilitySpec

LEFT, RIGHT = "L", "R"


@dataclass(frozen=True)
class PlatformProfile:
    x_l: float
    x_r: float

    def __post_init__(self):
        object.__setattr__(self, "x_l", check_unit("x_l", self.x_l))
        object.__setattr__(self, "x_r", check_unit("x_r", self.x_r))

    def as_tuple(self) -> tuple[float, float]:
        return (self.x_l, self.x_r)


@dataclass(frozen=True)
class IdealPair:
    t_l: float
    t_r: float

    def __post_init__(self):
        t_l = check_unit("t_l", self.t_l)
        t_r = check_unit("t_r", self.t_r)
        if not t_l < t_r:
            raise DomainError(f"ideal policies need t_l < t_r, got t_l={t_l}, t_r={t_r}")
        object.__setattr__(self, "t_l", t_l)
        object.__setattr__(self, "t_r", t_r)

    def of(self, side: str) -> float:
        if side == LEFT:
            return self.t_l
        if side == RIGHT:
            return self.t_r
        raise DomainError(f"side must be 'L' or 'R', got {side!r}")


@dataclass(frozen=True)
class ElectionModel:
    utility: UtilitySpec
    belief: MedianBelief
    ideals: IdealPair

    def with_ideals(self, t_l: float, t_r: float) -> ElectionModel:
        return ElectionModel(self.utility, self.belief, IdealPair(t_l, t_r))


def _profile(profile) -> PlatformProfile:
    if isinstance(profile, PlatformProfile):
        return profile
    x_l, x_r = profile
    return PlatformProfile(x_l, x_r)


def win_probability(belief: MedianBelief, profile) -> float:
    """Probability that the left candidate wins; the right candidate wins otherwise."""
    p = _profile(profile)
    bcode, bpar, xs, _, cs = belief.encode()
    return float(K.win_prob(bcode, bpar, xs, cs, p.x_l, p.x_r))


def expected_payoff(model: ElectionModel, side: str, profile) -> float:
    p = _profile(profile)
    t = model.ideals.of(side)
    prob = win_probability(model.belief, p)
    u = model.utility
    return float(prob * u(p.x_l, t) + (1.0 - prob) * u(p.x_r, t))


def expected_policy(belief: MedianBelief, profile) -> float:
    """Win-probability weighted platform: the pre-election forecast of enacted policy."""
    p = _profile(profile)
    prob = win_probability(belief, p)
    return prob * p.x_l + (1.0 - prob) * p.x_r


def reduced_objective(model: ElectionModel, side: str, x: float, opponent_x: float) -> float:
    """Own win probability times u(x, t) - u(opponent_x, t).

    Differs from the expected payoff only by a term that does not depend on
    ``x``, and is continuous at ``x == opponent_x`` where both vanish.
    """
    x = check_unit("x", x)
    opponent_x = check_unit("opponent_x", opponent_x)
    t = model.ideals.of(side)
    ucode, ua, ub = model.utility.encode()
    bcode, bpar, xs, _, cs = model.belief.encode()
    return float(K.objective(x, opponent_x, t, ucode, ua, ub, bcode, bpar, xs, cs))


def win_probability_grid(belief: MedianBelief, x_l, x_r) -> np.ndarray:
    """Vectorized win probability over broadcast platform arrays."""
    bcode, bpar, xs, _, cs = belief.encode()
    return K.win_prob_array(bcode, bpar, xs, cs, x_l, x_r)
