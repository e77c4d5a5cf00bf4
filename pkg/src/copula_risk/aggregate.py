"""Risk measures of the sum of two FGM-dependent exponential losses.

The convolution of the joint density has a four-bracket closed form whose
denominators vanish on the hyperplanes l1 = l2, l1 = 2*l2 and l2 = 2*l1.
Away from those the sum distribution is a signed exponential survival
mixture like the extremes; near them the module falls back to direct
numerical convolution so that equal-rate portfolios remain serviceable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._mixtures import ExpTermMixture
from .copula import FgmCopula
from .errors import DomainError, SingularParameters
from .marginals import (
    Alpha,
    AlphaLike,
    ExponentialMarginal,
    Method,
    RiskReport,
    level_of,
)
from .numerics import (
    DEFAULT_SETTINGS,
    SolverSettings,
    _quad_finite,
    expand_bracket,
    quad_tail,
    solve_increasing,
)

# relative scale below which a closed-form denominator counts as singular
_SINGULAR_RTOL = 1e-6

# the numerical convolution is an inner integrand of further quadrature and
# root solves, so it is resolved two orders tighter than the outer tolerance
_INNER_REL_TOL = 1e-12


@dataclass(frozen=True)
class AggregateExpPortfolio:
    """Two exponential marginals coupled by an FGM copula, summed."""

    m1: ExponentialMarginal
    m2: ExponentialMarginal
    copula: FgmCopula

    def __post_init__(self) -> None:
        if not isinstance(self.m1, ExponentialMarginal) or not isinstance(
            self.m2, ExponentialMarginal
        ):
            raise DomainError("aggregate risk requires exponential marginals")


def is_singular(p: AggregateExpPortfolio) -> bool:
    """True when the closed-form denominators are too small to trust."""
    l1, l2 = p.m1.rate, p.m2.rate
    tol = _SINGULAR_RTOL * max(l1, l2)
    if abs(l2 - l1) < tol:
        return True
    if p.copula.theta != 0.0 and (
        abs(l1 - 2.0 * l2) < tol or abs(2.0 * l1 - l2) < tol
    ):
        return True
    return False


def _sum_mixture(p: AggregateExpPortfolio) -> ExpTermMixture:
    """Survival-term mixture of X1 + X2 from the convolution closed form."""
    if is_singular(p):
        raise SingularParameters(
            f"closed form is singular for rates ({p.m1.rate}, {p.m2.rate}) "
            f"with theta={p.copula.theta}"
        )
    l1, l2 = p.m1.rate, p.m2.rate
    th = p.copula.theta
    a = l1 * l2 / (l1 - l2)
    terms = [
        (-a * (1.0 + th) / l1, l1),
        (a * (1.0 + th) / l2, l2),
    ]
    if th != 0.0:
        b = 2.0 * l1 * l2 / (l1 - 2.0 * l2)
        c = 2.0 * l1 * l2 / (2.0 * l1 - l2)
        d = 2.0 * a
        terms[0] = (terms[0][0] + th * b / l1, l1)
        terms[1] = (terms[1][0] - th * c / l2, l2)
        terms.append((th * (c - d) / (2.0 * l1), 2.0 * l1))
        terms.append((th * (d - b) / (2.0 * l2), 2.0 * l2))
    return ExpTermMixture(tuple(terms))


def joint_pdf(p: AggregateExpPortfolio, x1: float, x2: float) -> float:
    """Joint density of (X1, X2): copula density times the marginal densities.

    Scalar-math hot path: this sits inside nested adaptive quadrature on
    the singular fallback, so it avoids the array-polymorphic wrappers.
    """
    if x1 < 0.0 or x2 < 0.0:
        return 0.0
    l1, l2 = p.m1.rate, p.m2.rate
    s1 = math.exp(-l1 * x1)
    s2 = math.exp(-l2 * x2)
    # 1 - 2u = 2*exp(-l*x) - 1 for u = 1 - exp(-l*x)
    dens = 1.0 + p.copula.theta * (2.0 * s1 - 1.0) * (2.0 * s2 - 1.0)
    return l1 * s1 * l2 * s2 * dens


def _pdf_numeric(p: AggregateExpPortfolio, x: float) -> float:
    if x <= 0.0:
        return 0.0
    return _quad_finite(
        lambda t: joint_pdf(p, t, x - t), 0.0, x, _INNER_REL_TOL
    )


def _cdf_numeric(p: AggregateExpPortfolio, x: float) -> float:
    if x <= 0.0:
        return 0.0
    l1, l2 = p.m1.rate, p.m2.rate
    th = p.copula.theta

    def integrand(t: float) -> float:
        # f1(t) * P(X2 <= x - t | X1 = t) via the conditional copula CDF
        s1 = math.exp(-l1 * t)
        v = -math.expm1(-l2 * (x - t))
        cond = v + th * v * (1.0 - v) * (2.0 * s1 - 1.0)
        return l1 * s1 * cond

    val = _quad_finite(integrand, 0.0, x, _INNER_REL_TOL)
    return min(max(val, 0.0), 1.0)


def aggregate_pdf(p: AggregateExpPortfolio, x: float) -> float:
    """Density of X1 + X2 at x >= 0.

    Closed form off the singular hyperplanes; numerical convolution of the
    joint density otherwise.
    """
    if x < 0.0:
        raise DomainError(f"x must be nonnegative, got {x}")
    if is_singular(p):
        return _pdf_numeric(p, x)
    return _sum_mixture(p).pdf(x)


def aggregate_cdf(p: AggregateExpPortfolio, x: float) -> float:
    """Distribution function of X1 + X2 at x >= 0."""
    if x < 0.0:
        raise DomainError(f"x must be nonnegative, got {x}")
    if is_singular(p):
        return _cdf_numeric(p, x)
    return _sum_mixture(p).cdf(x)


def _solve_level(
    p: AggregateExpPortfolio, level: float, settings: SolverSettings
) -> float:
    f = (lambda x: _cdf_numeric(p, x)) if is_singular(p) else _sum_mixture(p).cdf
    lo, hi = expand_bracket(f, level, 0.0, settings)
    return solve_increasing(f, level, lo, hi, settings)


def aggregate_var(
    p: AggregateExpPortfolio,
    alpha: AlphaLike,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> float:
    """Value at risk of the aggregate, by bracketed root solve."""
    return _solve_level(p, level_of(alpha), settings)


def aggregate_mot(
    p: AggregateExpPortfolio,
    alpha: AlphaLike,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> float:
    """Median of the tail beyond VaR: solves F(M) = (1 + alpha) / 2."""
    return _solve_level(p, 0.5 * (1.0 + level_of(alpha)), settings)


def aggregate_cte(
    p: AggregateExpPortfolio,
    alpha: AlphaLike,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> float:
    """Conditional tail expectation of the aggregate.

    Signed sum of closed-form exponential tail integrals divided by
    1 - alpha; semi-infinite quadrature of x * f(x) on the singular
    fallback path.
    """
    a = level_of(alpha)
    q = _solve_level(p, a, settings)
    if is_singular(p):
        return quad_tail(lambda x: x * _pdf_numeric(p, x), q, settings) / (1.0 - a)
    return _sum_mixture(p).tail_expectation(q) / (1.0 - a)


def aggregate_report(
    p: AggregateExpPortfolio,
    alpha: AlphaLike,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> RiskReport:
    """All three measures of the aggregate at one confidence level."""
    a = Alpha(level_of(alpha))
    singular = is_singular(p)
    return RiskReport(
        alpha=a,
        var=aggregate_var(p, a, settings),
        cte=aggregate_cte(p, a, settings),
        mot=aggregate_mot(p, a, settings),
        method=Method.QUADRATURE if singular else Method.ROOT_SOLVE,
        tolerance=settings.quad_rel_tol if singular else settings.abs_tol,
    )
