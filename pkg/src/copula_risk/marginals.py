"""Exponential and Pareto loss marginals with closed-form risk measures.

All single-risk measures (VaR, CTE, MoT) have exact closed forms for the
two families in scope, so nothing here touches the root solver. Functions
accept scalars or numpy arrays where that is useful for sampling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np

from .errors import DivergentTail, DomainError
from .numerics import exp_tail_integral, pareto_tail_integral


@dataclass(frozen=True)
class ExponentialMarginal:
    """Exponential loss severity with the given hazard rate."""

    rate: float

    def __post_init__(self) -> None:
        if not (self.rate > 0 and math.isfinite(self.rate)):
            raise DomainError(f"rate must be positive and finite, got {self.rate}")


@dataclass(frozen=True)
class ParetoMarginal:
    """Pareto loss severity with left endpoint x0 and tail exponent gamma."""

    x0: float
    gamma: float

    def __post_init__(self) -> None:
        if not (self.x0 > 0 and math.isfinite(self.x0)):
            raise DomainError(f"x0 must be positive and finite, got {self.x0}")
        if not (self.gamma > 0 and math.isfinite(self.gamma)):
            raise DomainError(
                f"gamma must be positive and finite, got {self.gamma}"
            )


Marginal = Union[ExponentialMarginal, ParetoMarginal]


@dataclass(frozen=True)
class Alpha:
    """Confidence level, strictly inside (0, 1)."""

    value: float

    def __post_init__(self) -> None:
        if not 0.0 < self.value < 1.0:
            raise DomainError(f"alpha must lie in (0, 1), got {self.value}")


AlphaLike = Union[Alpha, float]


def level_of(alpha: AlphaLike) -> float:
    """Return the bare confidence level of an Alpha or float, validated."""
    a = alpha.value if isinstance(alpha, Alpha) else float(alpha)
    if not 0.0 < a < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {a}")
    return a


class Method(str, Enum):
    """How a reported measure was computed."""

    CLOSED_FORM = "closed_form"
    ROOT_SOLVE = "root_solve"
    QUADRATURE = "quadrature"
    MONTE_CARLO = "monte_carlo"


@dataclass(frozen=True)
class RiskReport:
    """VaR, CTE and MoT of one risk at one confidence level."""

    alpha: Alpha
    var: float
    cte: float
    mot: float
    method: Method
    tolerance: float

    def __post_init__(self) -> None:
        # MoT sits strictly deeper in the tail than VaR, and the mean of the
        # tail exceeds its left endpoint, for every continuous family in scope
        if not self.var <= self.mot:
            raise DomainError(f"var={self.var} must not exceed mot={self.mot}")
        if not self.var < self.cte:
            raise DomainError(f"var={self.var} must lie below cte={self.cte}")


def _dispatch(m: Marginal):
    if isinstance(m, ExponentialMarginal):
        return "exp"
    if isinstance(m, ParetoMarginal):
        return "pareto"
    raise DomainError(f"unsupported marginal type: {type(m).__name__}")


def cdf(m: Marginal, x):
    """Distribution function; 0 below the support."""
    xs = np.asarray(x, dtype=float)
    if _dispatch(m) == "exp":
        out = np.where(xs > 0.0, -np.expm1(-m.rate * np.maximum(xs, 0.0)), 0.0)
    else:
        out = np.where(
            xs > m.x0, 1.0 - (m.x0 / np.maximum(xs, m.x0)) ** m.gamma, 0.0
        )
    return out if out.ndim else float(out)


def pdf(m: Marginal, x):
    """Density; 0 outside the support."""
    xs = np.asarray(x, dtype=float)
    if _dispatch(m) == "exp":
        out = np.where(
            xs >= 0.0, m.rate * np.exp(-m.rate * np.maximum(xs, 0.0)), 0.0
        )
    else:
        safe = np.maximum(xs, m.x0)
        out = np.where(
            xs >= m.x0, m.gamma * m.x0**m.gamma * safe ** (-m.gamma - 1.0), 0.0
        )
    return out if out.ndim else float(out)


def quantile(m: Marginal, p):
    """Left-continuous inverse CDF, exact; accepts p in [0, 1)."""
    ps = np.asarray(p, dtype=float)
    if np.any((ps < 0.0) | (ps >= 1.0)):
        raise DomainError("quantile level must lie in [0, 1)")
    if _dispatch(m) == "exp":
        out = -np.log1p(-ps) / m.rate
    else:
        out = m.x0 * (1.0 - ps) ** (-1.0 / m.gamma)
    return out if out.ndim else float(out)


def var(m: Marginal, alpha: AlphaLike) -> float:
    """Value at risk: the alpha-quantile, in closed form."""
    return quantile(m, level_of(alpha))


def cte(m: Marginal, alpha: AlphaLike) -> float:
    """Conditional tail expectation E[X | X > VaR], in closed form.

    Raises:
        DivergentTail: for a Pareto marginal with gamma <= 1.
    """
    a = level_of(alpha)
    q = var(m, a)
    if _dispatch(m) == "exp":
        return 1.0 / m.rate + q
    if m.gamma <= 1.0:
        raise DivergentTail(
            f"Pareto CTE requires gamma > 1, got gamma={m.gamma}"
        )
    return m.gamma / (m.gamma - 1.0) * q


def mot(m: Marginal, alpha: AlphaLike) -> float:
    """Median of the tail beyond VaR: the quantile at level (1 + alpha)/2."""
    a = level_of(alpha)
    return quantile(m, 0.5 * (1.0 + a))


def tail_expectation(m: Marginal, q: float) -> float:
    """Unnormalized tail integral int_q^inf x f(x) dx for this marginal."""
    if _dispatch(m) == "exp":
        return exp_tail_integral(m.rate, q)
    return pareto_tail_integral(m.x0, m.gamma, q)


def report(m: Marginal, alpha: AlphaLike) -> RiskReport:
    """All three measures of a single marginal at one confidence level."""
    a = Alpha(level_of(alpha))
    return RiskReport(
        alpha=a,
        var=var(m, a),
        cte=cte(m, a),
        mot=mot(m, a),
        method=Method.CLOSED_FORM,
        tolerance=0.0,
    )
