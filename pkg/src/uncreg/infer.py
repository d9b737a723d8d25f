"""Error moments, forecasts and prediction intervals from a fitted model."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, InfeasibleError
from .models import ModelSpec
from .monotone import INCREASING, CompositeInverse, MonotoneSignature, check_nondecreasing, compose_inverse
from .quad import DEFAULT_RULE, QuadratureRule, integrate
from .regress import Dataset, residual_inverses
from .udist import CDF_TOL, Normal, Point, RegularDistribution, bisect_cdf

B_TOL = 1e-9
B_MAX = 1e9


@dataclass(frozen=True)
class ErrorMoments:
    e_hat: float
    sigma2_hat: float


@dataclass(frozen=True)
class ForecastResult:
    mu: float
    interval: tuple[float, float]
    level: float
    b: float


def _mean(inv: CompositeInverse, q: QuadratureRule) -> float:
    if inv.constant is not None:
        return inv.constant
    return integrate(inv.func, q)


def error_moments(
    data: Dataset,
    model: ModelSpec,
    beta,
    q: QuadratureRule = DEFAULT_RULE,
    strict_theorem_flip: bool = False,
) -> ErrorMoments:
    """Average residual expected value and average squared deviation from it."""
    residuals = residual_inverses(data, model, beta, strict_theorem_flip)
    n = len(residuals)
    e_hat = sum(_mean(r, q) for r in residuals) / n
    total = 0.0
    for r in residuals:
        if r.constant is not None:
            total += (r.constant - e_hat) ** 2
        else:
            f = r.func
            total += integrate(lambda a: (f(a) - e_hat) ** 2, q)
    return ErrorMoments(float(e_hat), max(0.0, total / n))


def _g_of(model: ModelSpec, beta):
    g = model.g

    def f(*xs):
        return g(xs, beta)

    return f


def forecast_value(
    model: ModelSpec,
    beta,
    x_new,
    e_hat: float,
    q: QuadratureRule = DEFAULT_RULE,
) -> float:
    """Expected value of ``g(x_new | beta)`` plus the estimated error mean."""
    beta = model.check(beta)
    inv = compose_inverse(_g_of(model, beta), tuple(x_new), model.signature(beta))
    return float(_mean(inv, q) + e_hat)


def forecast_inverse(model: ModelSpec, beta, x_new, err_dist: RegularDistribution) -> CompositeInverse:
    """Inverse distribution of ``g(x_new | beta) + error``, error independent of ``x_new``."""
    beta = model.check(beta)
    g = model.g
    sig = MonotoneSignature(model.signature(beta).directions + (INCREASING,))

    def f(*args):
        return g(args[:-1], beta) + args[-1]

    return compose_inverse(f, tuple(x_new) + (err_dist,), sig)


def default_error_distribution(moments: ErrorMoments) -> RegularDistribution:
    """``normal(e_hat, sqrt(sigma2_hat))``, or a point mass when the variance is zero."""
    if moments.sigma2_hat > 0:
        return Normal(moments.e_hat, math.sqrt(moments.sigma2_hat))
    return Point(moments.e_hat)


def coverage(psi_inv: CompositeInverse, lo: float, hi: float) -> float:
    """Belief that the forecast variable lies in ``[lo, hi]``."""
    if psi_inv.constant is not None:
        c = psi_inv.constant
        return 1.0 if lo <= c <= hi else 0.0
    f = psi_inv.func
    return bisect_cdf(f, hi, CDF_TOL) - bisect_cdf(f, lo, CDF_TOL, strict=True)


def prediction_interval(psi_inv: CompositeInverse, mu: float, level: float) -> ForecastResult:
    """Smallest symmetric interval around ``mu`` holding at least ``level``.

    The half-width is bracketed by doubling and then bisected; the
    returned ``b`` is the feasible end of the final bracket.

    Raises
    ------
    DomainError
        If ``level`` is not in (0, 1) or ``mu`` is not finite.
    InfeasibleError
        If no half-width up to 1e9 reaches ``level``.
    """
    level = float(level)
    if not 0.0 < level < 1.0:
        raise DomainError(f"level must lie in (0, 1), got {level!r}")
    mu = float(mu)
    if not math.isfinite(mu):
        raise DomainError(f"forecast value must be finite, got {mu!r}")
    check_nondecreasing(psi_inv)

    def ok(b):
        return coverage(psi_inv, mu - b, mu + b) >= level

    if ok(0.0):
        b = 0.0
    else:
        lo, hi = 0.0, 1.0
        while not ok(hi):
            if hi >= B_MAX:
                raise InfeasibleError(f"level {level} is not reached by any half-width up to {B_MAX:g}")
            lo, hi = hi, min(2.0 * hi, B_MAX)
        while hi - lo > B_TOL:
            mid = 0.5 * (lo + hi)
            if mid in (lo, hi):
                break
            if ok(mid):
                hi = mid
            else:
                lo = mid
        b = hi
    return ForecastResult(mu=mu, interval=(mu - b, mu + b), level=level, b=b)


def forecast(
    model: ModelSpec,
    beta,
    x_new,
    moments: ErrorMoments,
    level: float,
    err_dist: RegularDistribution | None = None,
    q: QuadratureRule = DEFAULT_RULE,
) -> ForecastResult:
    """Forecast value and ``level`` prediction interval for new predictors."""
    err = default_error_distribution(moments) if err_dist is None else err_dist
    mu = forecast_value(model, beta, x_new, moments.e_hat, q)
    return prediction_interval(forecast_inverse(model, beta, x_new, err), mu, level)
