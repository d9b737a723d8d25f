"""Regression functions with their parameter constraints and monotonicity."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ConstraintError, ContractError
from .monotone import DECREASING, INCREASING, MonotoneSignature


@dataclass(frozen=True)
class ModelSpec:
    """A regression function ``g(x_1, ..., x_p | beta)``.

    ``g`` takes a sequence of ``p`` predictor values (floats or equally
    shaped arrays) and the parameter vector. ``signature`` maps a
    parameter vector to the direction of ``g`` in each predictor.
    ``lower`` holds an open lower bound per parameter (``None`` for
    unconstrained).
    """

    kind: str
    p: int
    dim: int
    g: Callable[[Sequence, np.ndarray], np.ndarray]
    signature: Callable[[np.ndarray], MonotoneSignature]
    lower: tuple[float | None, ...]
    names: tuple[str, ...]

    def __post_init__(self):
        if len(self.lower) != self.dim or len(self.names) != self.dim:
            raise ContractError("lower bounds and names must have one entry per parameter")

    def feasible(self, beta) -> bool:
        beta = np.asarray(beta, dtype=float)
        if beta.shape != (self.dim,) or not np.all(np.isfinite(beta)):
            return False
        return all(lo is None or b > lo for b, lo in zip(beta, self.lower))

    def check(self, beta) -> np.ndarray:
        """Return ``beta`` as a float array, raising if it is infeasible."""
        beta = np.asarray(beta, dtype=float)
        if beta.shape != (self.dim,):
            raise ContractError(f"{self.kind} model has {self.dim} parameters, got shape {beta.shape}")
        if not self.feasible(beta):
            bounds = ", ".join(f"{n} > {lo:g}" for n, lo in zip(self.names, self.lower) if lo is not None)
            raise ConstraintError(f"{self.kind} parameters {beta.tolist()} violate {bounds or 'finiteness'}")
        return beta


def _linear_g(xs, beta):
    out = beta[0]
    for j, x in enumerate(xs, start=1):
        out = out + beta[j] * x
    return out


def _linear_signature(beta):
    # beta_j == 0 takes the increasing branch
    return MonotoneSignature(tuple(INCREASING if b >= 0 else DECREASING for b in beta[1:]))


def linear(p: int = 1) -> ModelSpec:
    """``beta_0 + sum_j beta_j x_j``; direction in ``x_j`` follows the sign of ``beta_j``."""
    if p < 0:
        raise ContractError(f"predictor count must be >= 0, got {p}")
    return ModelSpec(
        kind="linear",
        p=p,
        dim=p + 1,
        g=_linear_g,
        signature=_linear_signature,
        lower=(None,) * (p + 1),
        names=tuple(f"beta{j}" for j in range(p + 1)),
    )


def _increasing_one(beta):
    return MonotoneSignature((INCREASING,))


def _mm_g(xs, beta):
    (x,) = xs
    return beta[0] * x / (beta[1] + x)


def michaelis_menten() -> ModelSpec:
    """``beta_1 x / (beta_2 + x)`` with ``beta_1, beta_2 > 0``."""
    return ModelSpec(
        kind="michaelis_menten",
        p=1,
        dim=2,
        g=_mm_g,
        signature=_increasing_one,
        lower=(0.0, 0.0),
        names=("beta1", "beta2"),
    )


def _gompertz_g(xs, beta):
    (x,) = xs
    return beta[0] * np.exp(-beta[1] * np.exp(-beta[2] * x))


def gompertz() -> ModelSpec:
    """``beta_1 exp(-beta_2 exp(-beta_3 x))`` with all parameters positive."""
    return ModelSpec(
        kind="gompertz",
        p=1,
        dim=3,
        g=_gompertz_g,
        signature=_increasing_one,
        lower=(0.0, 0.0, 0.0),
        names=("beta1", "beta2", "beta3"),
    )


def custom(g, signature, p: int, dim: int, lower=None, names=None) -> ModelSpec:
    """Wrap a user-supplied monotone regression function.

    ``signature`` may be a fixed :class:`MonotoneSignature` or a callable of
    ``beta``. Declared monotonicity is grid-checked on every residual build
    unless Python runs with ``-O``.
    """
    sig = signature if callable(signature) else (lambda beta, _s=signature: _s)
    return ModelSpec(
        kind="custom",
        p=p,
        dim=dim,
        g=g,
        signature=sig,
        lower=tuple(lower) if lower is not None else (None,) * dim,
        names=tuple(names) if names is not None else tuple(f"beta{j}" for j in range(dim)),
    )


KIND_ALIASES = {"linear": "linear", "mm": "michaelis_menten", "michaelis_menten": "michaelis_menten", "gompertz": "gompertz"}


def by_name(name: str, p: int = 1) -> ModelSpec:
    """Built-in model from its CLI or kind name."""
    kind = KIND_ALIASES.get(name)
    if kind is None:
        raise ContractError(f"unknown model {name!r}; expected one of linear, mm, gompertz")
    if kind == "linear":
        return linear(p)
    if p != 1:
        raise ContractError(f"{kind} model takes exactly one predictor, dataset has {p}")
    return michaelis_menten() if kind == "michaelis_menten" else gompertz()


def predict_crisp(model: ModelSpec, beta, x) -> float:
    """Fitted regression function at crisp predictor values ``x``."""
    beta = model.check(beta)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape != (model.p,):
        raise ContractError(f"model expects {model.p} predictor values, got {x.shape[0]}")
    return float(model.g(tuple(x), beta))
