"""The FGM dependence structure on the unit square.

C(u, v) = uv + theta * uv(1-u)(1-v) for theta in [-1, 1]. Outside that
range the density goes negative, so theta is validated once at
construction. All functions accept scalars or numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class FgmCopula:
    """One-parameter perturbation of independence; theta in [-1, 1]."""

    theta: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.theta) and -1.0 <= self.theta <= 1.0):
            raise DomainError(f"theta must lie in [-1, 1], got {self.theta}")


def _unit(name: str, x):
    xs = np.asarray(x, dtype=float)
    if np.any((xs < 0.0) | (xs > 1.0)):
        raise DomainError(f"{name} must lie in [0, 1]")
    return xs


def _ret(out):
    return out if out.ndim else float(out)


def _cdf_raw(theta: float, us, vs):
    return us * vs * (1.0 + theta * (1.0 - us) * (1.0 - vs))


def cdf(c: FgmCopula, u, v):
    """Copula CDF C(u, v)."""
    us, vs = _unit("u", u), _unit("v", v)
    return _ret(_cdf_raw(c.theta, us, vs))


def density(c: FgmCopula, u, v):
    """Copula density c(u, v) = 1 + theta(1-2u)(1-2v), nonnegative on the square."""
    us, vs = _unit("u", u), _unit("v", v)
    return _ret(1.0 + c.theta * (1.0 - 2.0 * us) * (1.0 - 2.0 * vs))


def survival(c: FgmCopula, u, v):
    """Joint survival P(U > u, V > v) = 1 - u - v + C(u, v)."""
    us, vs = _unit("u", u), _unit("v", v)
    return _ret(1.0 - us - vs + _cdf_raw(c.theta, us, vs))


def conditional_cdf(c: FgmCopula, v, given_u):
    """P(V <= v | U = u), the partial derivative of C in u."""
    vs, us = _unit("v", v), _unit("given_u", given_u)
    return _ret(vs + c.theta * vs * (1.0 - vs) * (1.0 - 2.0 * us))


def conditional_quantile(c: FgmCopula, w, given_u):
    """Inverse of conditional_cdf in v; the copula sampling kernel.

    With a = theta(1 - 2u) the conditional CDF is v + a*v(1-v) = w, a
    quadratic in v whose root in [0, 1] is evaluated in the cancellation-free
    form 2w / ((1+a) + sqrt((1+a)^2 - 4aw)).
    """
    ws, us = _unit("w", w), _unit("given_u", given_u)
    a = c.theta * (1.0 - 2.0 * us)
    disc = (1.0 + a) ** 2 - 4.0 * a * ws
    denom = (1.0 + a) + np.sqrt(np.maximum(disc, 0.0))
    # denom vanishes only at a = -1, w = 0, where the quantile is 0
    out = np.where(denom > 0.0, 2.0 * ws / np.where(denom > 0.0, denom, 1.0), 0.0)
    return _ret(np.clip(out, 0.0, 1.0))


def rectangle_mass(c: FgmCopula, u1, u2, v1, v2):
    """Probability mass of the rectangle [u1, u2] x [v1, v2].

    Nonnegative for every theta in [-1, 1] (the 2-increasing property).
    """
    u1s, u2s = _unit("u1", u1), _unit("u2", u2)
    v1s, v2s = _unit("v1", v1), _unit("v2", v2)
    if np.any(u1s > u2s) or np.any(v1s > v2s):
        raise DomainError("rectangle corners must satisfy u1 <= u2 and v1 <= v2")
    th = c.theta
    mass = (
        _cdf_raw(th, u2s, v2s)
        - _cdf_raw(th, u1s, v2s)
        - _cdf_raw(th, u2s, v1s)
        + _cdf_raw(th, u1s, v1s)
    )
    return _ret(mass)
