"""Risk measures of the minimum and maximum of two dependent losses.

The survival function of either extreme under FGM dependence is a signed
sum of primitive survival terms (exponential rates or Pareto exponents
built from the two marginal parameters), so VaR and MoT reduce to one
bracketed root solve on the composite CDF and CTE to a signed sum of
closed-form tail integrals.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union

from ._mixtures import ExpTermMixture, ParetoTermMixture, fgm_extreme_weights
from .copula import FgmCopula
from .errors import DivergentTail, DomainError
from .marginals import (
    Alpha,
    AlphaLike,
    ExponentialMarginal,
    Marginal,
    Method,
    ParetoMarginal,
    RiskReport,
    level_of,
)
from .numerics import DEFAULT_SETTINGS, SolverSettings, expand_bracket, solve_increasing


class ExtremeSelector(str, Enum):
    """Which order statistic of the pair: the minimum or the maximum."""

    MIN = "min"
    MAX = "max"


@dataclass(frozen=True)
class BivariatePortfolio:
    """Two same-family marginals coupled by an FGM copula."""

    m1: Marginal
    m2: Marginal
    copula: FgmCopula

    def __post_init__(self) -> None:
        if type(self.m1) is not type(self.m2):
            raise DomainError(
                "both marginals must belong to the same family, got "
                f"{type(self.m1).__name__} and {type(self.m2).__name__}"
            )
        if not isinstance(self.m1, (ExponentialMarginal, ParetoMarginal)):
            raise DomainError(
                f"unsupported marginal type: {type(self.m1).__name__}"
            )
        if isinstance(self.m1, ParetoMarginal) and self.m1.x0 != self.m2.x0:
            raise DomainError(
                "Pareto marginals must share the same left endpoint, got "
                f"x0={self.m1.x0} and x0={self.m2.x0}"
            )

    @property
    def support_left(self) -> float:
        return self.m1.x0 if isinstance(self.m1, ParetoMarginal) else 0.0


def _selector(s: Union[ExtremeSelector, str]) -> ExtremeSelector:
    try:
        return ExtremeSelector(s)
    except ValueError:
        raise DomainError(f"selector must be 'min' or 'max', got {s!r}") from None


def _mixture(p: BivariatePortfolio, s: ExtremeSelector):
    weights = fgm_extreme_weights(p.copula.theta, s.value)
    if isinstance(p.m1, ExponentialMarginal):
        p1, p2 = p.m1.rate, p.m2.rate
        return ExpTermMixture(
            tuple((w, i * p1 + j * p2) for w, (i, j) in weights)
        )
    p1, p2 = p.m1.gamma, p.m2.gamma
    return ParetoTermMixture(
        p.m1.x0, tuple((w, i * p1 + j * p2) for w, (i, j) in weights)
    )


def extreme_cdf(p: BivariatePortfolio, s, x: float) -> float:
    """CDF of min(X1, X2) or max(X1, X2) at x.

    Equals u + v - C(u, v) for the minimum and C(u, v) for the maximum,
    with u = F1(x), v = F2(x).
    """
    return _mixture(p, _selector(s)).cdf(x)


def extreme_pdf(p: BivariatePortfolio, s, x: float) -> float:
    """Density of the selected extreme at x."""
    return _mixture(p, _selector(s)).pdf(x)


def extreme_var(
    p: BivariatePortfolio,
    s,
    alpha: AlphaLike,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> float:
    """Value at risk of the selected extreme, by bracketed root solve."""
    a = level_of(alpha)
    mix = _mixture(p, _selector(s))
    lo, hi = expand_bracket(mix.cdf, a, p.support_left, settings)
    return solve_increasing(mix.cdf, a, lo, hi, settings)


def extreme_mot(
    p: BivariatePortfolio,
    s,
    alpha: AlphaLike,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> float:
    """Median of the tail beyond VaR: solves F(M) = (1 + alpha) / 2."""
    a = level_of(alpha)
    mix = _mixture(p, _selector(s))
    level = 0.5 * (1.0 + a)
    lo, hi = expand_bracket(mix.cdf, level, p.support_left, settings)
    return solve_increasing(mix.cdf, level, lo, hi, settings)


def _check_tail_exists(p: BivariatePortfolio, s: ExtremeSelector) -> None:
    if not isinstance(p.m1, ParetoMarginal):
        return
    g1, g2 = p.m1.gamma, p.m2.gamma
    if s is ExtremeSelector.MIN and g1 + g2 <= 1.0:
        raise DivergentTail(
            f"CTE of the minimum requires gamma1 + gamma2 > 1, got {g1 + g2}"
        )
    if s is ExtremeSelector.MAX and min(g1, g2) <= 1.0:
        raise DivergentTail(
            f"CTE of the maximum requires min(gamma1, gamma2) > 1, "
            f"got {min(g1, g2)}"
        )


def extreme_cte(
    p: BivariatePortfolio,
    s,
    alpha: AlphaLike,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> float:
    """Conditional tail expectation of the selected extreme.

    A signed sum of closed-form tail integrals divided by 1 - alpha.

    Raises:
        DivergentTail: for Pareto marginals whose tail exponents make the
            conditional expectation infinite.
    """
    sel = _selector(s)
    _check_tail_exists(p, sel)
    a = level_of(alpha)
    q = extreme_var(p, sel, a, settings)
    return _mixture(p, sel).tail_expectation(q) / (1.0 - a)


def extreme_report(
    p: BivariatePortfolio,
    s,
    alpha: AlphaLike,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> RiskReport:
    """All three measures of the selected extreme at one confidence level."""
    a = Alpha(level_of(alpha))
    return RiskReport(
        alpha=a,
        var=extreme_var(p, s, a, settings),
        cte=extreme_cte(p, s, a, settings),
        mot=extreme_mot(p, s, a, settings),
        method=Method.ROOT_SOLVE,
        tolerance=settings.abs_tol,
    )
