"""Candidate payoff families u(x, t), strictly concave in x and peaked at t."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .errors import DomainError


@dataclass(frozen=True)
class UtilitySpec:
    """Quadratic ``-(x-t)^2``, exponential ``-exp(x-t) + x``, or a positive affine map of either."""

    family: str
    a: float = 1.0
    b: float = 0.0
    base: UtilitySpec | None = None

    @classmethod
    def quadratic(cls) -> UtilitySpec:
        return cls("quadratic")

    @classmethod
    def exponential(cls) -> UtilitySpec:
        return cls("exponential")

    @classmethod
    def affine(cls, base: UtilitySpec, a: float, b: float = 0.0) -> UtilitySpec:
        a, b = float(a), float(b)
        if not (a > 0.0 and np.isfinite(a)) or not np.isfinite(b):
            raise DomainError(f"affine transform needs finite a > 0 and finite b, got a={a}, b={b}")
        return cls("affine", a=a, b=b, base=base)

    def encode(self):
        """Flatten nested affine maps to ``(ucode, a, b)``."""
        if self.family == "quadratic":
            return K.QUADRATIC, 1.0, 0.0
        if self.family == "exponential":
            return K.EXPONENTIAL, 1.0, 0.0
        if self.family == "affine":
            if self.base is None:
                raise DomainError("affine utility needs a base")
            code, a, b = self.base.encode()
            return code, self.a * a, self.a * b + self.b
        raise DomainError(f"unknown utility family {self.family!r}")

    def to_dict(self) -> dict:
        if self.family == "affine":
            return {"family": "affine", "a": self.a, "b": self.b, "base": self.base.to_dict()}
        return {"family": self.family}

    @classmethod
    def from_dict(cls, d: dict) -> UtilitySpec:
        family = d.get("family")
        if family in ("quadratic", "exponential"):
            return cls(family)
        if family == "affine":
            if not isinstance(d.get("base"), dict):
                raise DomainError("affine utility needs a 'base' object")
            return cls.affine(cls.from_dict(d["base"]), d.get("a", 1.0), d.get("b", 0.0))
        raise DomainError(f"unknown utility family {family!r}")

    def __call__(self, x, t):
        """Vectorized u(x, t) without domain checks."""
        code, a, b = self.encode()
        return K.utility_array(code, a, b, x, t)


def utility(spec: UtilitySpec, x, t):
    xa, ta = np.asarray(x, dtype=float), np.asarray(t, dtype=float)
    if np.any(~((xa >= 0) & (xa <= 1))) or np.any(~((ta >= 0) & (ta <= 1))):
        raise DomainError(f"utility evaluated outside [0, 1]: x={x!r}, t={t!r}")
    out = spec(xa, ta)
    return float(out) if out.ndim == 0 else out


@dataclass
class UtilityValidation:
    peaked_at_t: bool
    strictly_concave: bool
    witnesses: list

    @property
    def passed(self) -> bool:
        return self.peaked_at_t and self.strictly_concave


def validate_utility(spec: UtilitySpec, grid_size: int = 101, tol: float = 1e-12) -> UtilityValidation:
    """Check u(t,t) > u(x,t) and midpoint strict concavity for t in {0, 0.1, ..., 1}.

    Witnesses are ``("peak", x, t)`` or ``("concavity", x, x_mid, x_hi, t)`` tuples.
    """
    if grid_size < 5:
        raise DomainError("grid_size must be at least 5")
    xs = np.round(np.linspace(0.0, 1.0, grid_size), 12)
    witnesses = []
    peaked = concave = True
    for t in np.round(np.linspace(0.0, 1.0, 11), 12):
        ux = spec(xs, t)
        peak = float(spec(t, t))
        bad = np.nonzero((peak <= ux + tol) & (np.abs(xs - t) > 0))[0]
        if bad.size:
            peaked = False
            witnesses.append(("peak", float(xs[bad[0]]), float(t)))
        # midpoints of every symmetric triple x_i < x_{i+h} < x_{i+2h}
        for h in range(1, (grid_size - 1) // 2 + 1):
            lo, mid, hi = ux[:-2 * h], ux[h:grid_size - h], ux[2 * h:]
            bad = np.nonzero(mid <= 0.5 * (lo + hi) + tol)[0]
            if bad.size:
                concave = False
                i = bad[0]
                witnesses.append(("concavity", float(xs[i]), float(xs[i + h]), float(xs[i + 2 * h]), float(t)))
                break
    return UtilityValidation(peaked, concave, witnesses)
