"""Candidate beliefs about the median voter's ideal policy.

A :class:`MedianBelief` is a continuous, full-support distribution on [0, 1].
Uniform, triangular and power families have closed forms; anything else
(Beta shapes, empirical fits) goes through a sampled density.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .errors import DomainError, check_unit

_EMPTY = np.empty(0)
MIN_DENSITY = 1e-12


@dataclass(frozen=True, eq=False)
class MedianBelief:
    """Distribution F of the median voter's ideal policy.

    Build one with :meth:`uniform`, :meth:`triangular`, :meth:`power` or
    :meth:`numeric` rather than calling the constructor directly.
    """

    family: str
    mode: float | None = None
    k: float | None = None
    xs: np.ndarray = field(default=_EMPTY, repr=False)
    fs: np.ndarray = field(default=_EMPTY, repr=False)
    cs: np.ndarray = field(default=_EMPTY, repr=False)

    @classmethod
    def uniform(cls) -> MedianBelief:
        return cls("uniform")

    @classmethod
    def triangular(cls, mode: float = 0.5) -> MedianBelief:
        return cls("triangular", mode=check_unit("mode", mode))

    @classmethod
    def power(cls, k: float) -> MedianBelief:
        k = float(k)
        if not (k > 0.0 and np.isfinite(k)):
            raise DomainError(f"power exponent k={k!r} must be positive")
        return cls("power", k=k)

    @classmethod
    def numeric(cls, samples) -> MedianBelief:
        """Belief from ``(x, density)`` samples covering [0, 1].

        The density is linearly interpolated, integrated with the trapezoid
        rule and renormalized so the CDF ends exactly at 1.
        """
        arr = np.asarray(samples, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 2:
            raise DomainError("numeric belief needs a list of at least two [x, density] pairs")
        xs, fs = arr[:, 0].copy(), arr[:, 1].copy()
        if xs[0] != 0.0 or xs[-1] != 1.0:
            raise DomainError("numeric belief grid must start at 0 and end at 1")
        if np.any(np.diff(xs) <= 0.0):
            raise DomainError("numeric belief grid must be strictly increasing")
        if np.any(~np.isfinite(fs)) or np.any(fs < 0.0):
            raise DomainError("numeric belief density must be finite and nonnegative")
        if np.any(fs[1:-1] < MIN_DENSITY):
            raise DomainError("numeric belief density vanishes inside (0, 1): full support required")
        cum = np.concatenate(([0.0], np.cumsum(0.5 * (fs[1:] + fs[:-1]) * np.diff(xs))))
        total = cum[-1]
        fs = fs / total
        cs = cum / total
        cs[-1] = 1.0
        return cls("numeric", xs=xs, fs=fs, cs=cs)

    def encode(self):
        """Flat ``(bcode, bpar, xs, fs, cs)`` form consumed by the kernels."""
        if self.family == "uniform":
            return K.UNIFORM, 0.0, _EMPTY, _EMPTY, _EMPTY
        if self.family == "triangular":
            return K.TRIANGULAR, float(self.mode), _EMPTY, _EMPTY, _EMPTY
        if self.family == "power":
            return K.POWER, float(self.k), _EMPTY, _EMPTY, _EMPTY
        if self.family == "numeric":
            return K.NUMERIC, 0.0, self.xs, self.fs, self.cs
        raise DomainError(f"unknown belief family {self.family!r}")

    def to_dict(self) -> dict:
        if self.family == "triangular":
            return {"family": "triangular", "mode": self.mode}
        if self.family == "power":
            return {"family": "power", "k": self.k}
        if self.family == "numeric":
            return {"family": "numeric", "samples": np.column_stack([self.xs, self.fs]).tolist()}
        return {"family": self.family}

    @classmethod
    def from_dict(cls, d: dict) -> MedianBelief:
        family = d.get("family")
        if family == "uniform":
            return cls.uniform()
        if family == "triangular":
            return cls.triangular(d.get("mode", 0.5))
        if family == "power":
            if "k" not in d:
                raise DomainError("power belief needs 'k'")
            return cls.power(d["k"])
        if family == "numeric":
            if "samples" not in d:
                raise DomainError("numeric belief needs 'samples'")
            return cls.numeric(d["samples"])
        raise DomainError(f"unknown belief family {family!r}")


def _check_points(x):
    arr = np.asarray(x, dtype=float)
    if np.any(~((arr >= 0.0) & (arr <= 1.0))):
        raise DomainError(f"belief evaluated outside [0, 1]: {x!r}")
    return arr


def cdf(belief: MedianBelief, x):
    """F(x). Accepts a scalar or an array of points in [0, 1]."""
    arr = _check_points(x)
    bcode, bpar, xs, _, cs = belief.encode()
    out = K.cdf_array(bcode, bpar, xs, cs, arr)
    return float(out) if out.ndim == 0 else out


def density(belief: MedianBelief, x):
    """f(x). Accepts a scalar or an array of points in [0, 1]."""
    arr = _check_points(x)
    bcode, bpar, xs, fs, _ = belief.encode()
    out = K.density_array(bcode, bpar, xs, fs, arr)
    return float(out) if out.ndim == 0 else out


def counterexample_condition(belief: MedianBelief, grid_size: int = 101) -> float | None:
    """First interior grid point with x f(x) > F(x), or None.

    Any such point lets the no-commitment expected policy fall as the left
    candidate's ideal rises.
    """
    if grid_size < 3:
        raise DomainError("grid_size must be at least 3")
    xs = np.linspace(0.0, 1.0, grid_size)[1:-1]
    hits = np.nonzero(xs * density(belief, xs) > cdf(belief, xs) + 1e-12)[0]
    return float(xs[hits[0]]) if hits.size else None
