"""Fit a model end to end: minimise the objective, then estimate error moments."""

from __future__ import annotations

from dataclasses import dataclass

from .files import FitRecord
from .infer import ErrorMoments, error_moments
from .models import ModelSpec
from .optim import OptimOptions, ParamEstimate, minimize
from .quad import DEFAULT_RULE, QuadratureRule
from .regress import Dataset, get_loss, objective


@dataclass(frozen=True)
class FitResult:
    model: ModelSpec
    loss: str
    estimate: ParamEstimate
    moments: ErrorMoments

    @property
    def beta(self) -> tuple[float, ...]:
        return self.estimate.beta

    @property
    def objective_value(self) -> float:
        return self.estimate.objective_value

    @property
    def converged(self) -> bool:
        return self.estimate.converged


def fit(
    data: Dataset,
    model: ModelSpec,
    loss: str = "lad",
    q: QuadratureRule = DEFAULT_RULE,
    opts: OptimOptions = OptimOptions(),
    strict_theorem_flip: bool = False,
) -> FitResult:
    loss = get_loss(loss).name
    obj = objective(data, model, loss, q, strict_theorem_flip)
    est = minimize(obj, model.dim, model.lower, opts)
    moments = error_moments(data, model, est.beta, q, strict_theorem_flip)
    return FitResult(model, loss, est, moments)


def to_record(result: FitResult, q: QuadratureRule, opts: OptimOptions, strict_theorem_flip: bool = False) -> FitRecord:
    return FitRecord(
        model=result.model.kind,
        predictors=result.model.p,
        loss=result.loss,
        beta=result.beta,
        objective_value=result.objective_value,
        converged=result.converged,
        e_hat=result.moments.e_hat,
        sigma2_hat=result.moments.sigma2_hat,
        quadrature={"scheme": q.scheme, "nodes": q.nodes, "panels": q.panels},
        optimizer={
            "starts": opts.starts,
            "max_iters": opts.max_iters,
            "xtol": opts.xtol,
            "ftol": opts.ftol,
            "init_box": None if opts.init_box is None else [list(iv) for iv in opts.init_box],
        },
        seed=opts.seed,
        strict_theorem_flip=strict_theorem_flip,
    )
