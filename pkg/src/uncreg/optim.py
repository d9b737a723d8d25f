"""Multi-start Nelder-Mead for the non-smooth regression objectives.

Parameters with an open lower bound ``L`` are searched as
``beta = L + exp(theta)``, so every trial point is strictly feasible.
Starts are drawn from a seeded generator up front and run in index
order; the best point is then polished by restarted Nelder-Mead runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import minimize as _scipy_minimize

from .errors import ContractError, DomainError, InfeasibleError, NumericError

UNCONSTRAINED_BOX = (-50.0, 50.0)
POSITIVE_BOX = (1e-3, 100.0)
MAX_POLISH_ROUNDS = 20


@dataclass(frozen=True)
class OptimOptions:
    starts: int = 16
    seed: int = 42
    max_iters: int = 2000
    xtol: float = 1e-8
    ftol: float = 1e-10
    init_box: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self):
        if self.starts < 1:
            raise DomainError(f"starts must be >= 1, got {self.starts}")
        if self.max_iters < 1:
            raise DomainError(f"max_iters must be >= 1, got {self.max_iters}")
        if not (self.xtol > 0 and self.ftol > 0):
            raise DomainError("xtol and ftol must be positive")
        if self.init_box is not None:
            box = tuple((float(lo), float(hi)) for lo, hi in self.init_box)
            for lo, hi in box:
                if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                    raise DomainError(f"init_box interval [{lo}, {hi}] must be finite and nonempty")
            object.__setattr__(self, "init_box", box)


@dataclass(frozen=True)
class ParamEstimate:
    beta: tuple[float, ...]
    objective_value: float
    converged: bool
    starts_used: int
    trace: tuple[float, ...] = field(default=(), compare=False)
    """Best objective value seen after each start."""


class _Transform:
    def __init__(self, lower: Sequence[float | None]):
        self.lower = tuple(lower)
        self.log = np.array([lo is not None for lo in self.lower])
        self.shift = np.array([0.0 if lo is None else lo for lo in self.lower])

    def to_beta(self, theta):
        theta = np.asarray(theta, dtype=float)
        return np.where(self.log, self.shift + np.exp(np.where(self.log, theta, 0.0)), theta)

    def to_theta(self, beta):
        beta = np.asarray(beta, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(self.log, np.log(beta - self.shift), beta)


def _wrap(obj, transform):
    def f(theta):
        beta = transform.to_beta(theta)
        value = obj(beta)
        if math.isnan(value):
            raise NumericError(f"objective is NaN at beta={beta.tolist()}")
        return value

    return f


def _simplex(theta0, scale):
    theta0 = np.asarray(theta0, dtype=float)
    n = theta0.size
    sim = np.tile(theta0, (n + 1, 1))
    for j in range(n):
        sim[j + 1, j] += scale * max(1.0, abs(theta0[j]))
    return sim


def _nelder_mead(f, theta0, scale, opts):
    # simplices with infinite vertices make scipy subtract inf from inf
    with np.errstate(invalid="ignore"):
        res = _scipy_minimize(
            f,
            theta0,
            method="Nelder-Mead",
            options={
                "initial_simplex": _simplex(theta0, scale),
                "maxiter": opts.max_iters,
                "maxfev": 4 * opts.max_iters,
                "xatol": 0.5 * opts.xtol,
                "fatol": opts.ftol,
            },
        )
    sim, fsim = res.final_simplex
    diameter = max(float(np.linalg.norm(a - b)) for a in sim for b in sim)
    finite = np.isfinite(fsim)
    spread = float(fsim.max() - fsim.min()) if finite.all() else math.inf
    converged = diameter < opts.xtol and spread < opts.ftol
    return np.asarray(sim[0], dtype=float), float(fsim[0]), converged


def sample_starts(lower: Sequence[float | None], opts: OptimOptions) -> np.ndarray:
    """Start points in parameter space, shape ``(starts, dim)``."""
    dim = len(lower)
    box = opts.init_box
    if box is not None and len(box) != dim:
        raise ContractError(f"init_box has {len(box)} intervals for {dim} parameters")
    rng = np.random.default_rng(opts.seed)
    u = rng.random((opts.starts, dim))
    out = np.empty_like(u)
    for j, lo_bound in enumerate(lower):
        if lo_bound is None:
            lo, hi = box[j] if box is not None else UNCONSTRAINED_BOX
            out[:, j] = lo + (hi - lo) * u[:, j]
        else:
            lo, hi = box[j] if box is not None else (lo_bound + POSITIVE_BOX[0], lo_bound + POSITIVE_BOX[1])
            if lo <= lo_bound:
                raise DomainError(f"init_box for parameter {j} must lie above its bound {lo_bound}")
            # log-uniform in the distance to the bound
            a, b = math.log(lo - lo_bound), math.log(hi - lo_bound)
            out[:, j] = lo_bound + np.exp(a + (b - a) * u[:, j])
    return out


def _polish_theta(f, theta, value, opts, scale):
    converged = False
    for _ in range(MAX_POLISH_ROUNDS):
        new_theta, new_value, converged = _nelder_mead(f, theta, scale, opts)
        improved = new_value < value - opts.ftol
        if new_value <= value:
            theta, value = new_theta, new_value
        if not improved:
            break
    return theta, value, converged


def minimize(
    obj: Callable[[np.ndarray], float],
    dim: int,
    lower: Sequence[float | None] | None = None,
    opts: OptimOptions = OptimOptions(),
) -> ParamEstimate:
    """Minimise ``obj`` over ``dim`` parameters with open lower bounds ``lower``.

    Raises
    ------
    InfeasibleError
        If every start ends at ``+inf``.
    NumericError
        If the objective returns NaN.
    """
    lower = (None,) * dim if lower is None else tuple(lower)
    if len(lower) != dim:
        raise ContractError(f"{len(lower)} bounds for {dim} parameters")
    transform = _Transform(lower)
    f = _wrap(obj, transform)
    best_theta, best_value, best_conv = None, math.inf, False
    trace = []
    for beta0 in sample_starts(lower, opts):
        theta, value, conv = _nelder_mead(f, transform.to_theta(beta0), 0.1, opts)
        if value < best_value:
            best_theta, best_value, best_conv = theta, value, conv
        trace.append(best_value)
    if best_theta is None or not math.isfinite(best_value):
        raise InfeasibleError(f"all {opts.starts} starts ended with an infinite objective")
    theta, value, conv = _polish_theta(f, best_theta, best_value, opts, 1e-3)
    if value < best_value or conv:
        best_theta, best_value, best_conv = theta, value, conv
    beta = transform.to_beta(best_theta)
    return ParamEstimate(tuple(float(b) for b in beta), best_value, bool(best_conv), opts.starts, tuple(trace))


def polish(
    obj: Callable[[np.ndarray], float],
    beta0,
    lower: Sequence[float | None] | None = None,
    opts: OptimOptions = OptimOptions(),
) -> ParamEstimate:
    """Restarted Nelder-Mead from ``beta0`` with a small initial simplex."""
    beta0 = np.asarray(beta0, dtype=float)
    lower = (None,) * beta0.size if lower is None else tuple(lower)
    if any(lo is not None and b <= lo for b, lo in zip(beta0, lower)):
        raise InfeasibleError(f"start {beta0.tolist()} violates the lower bounds")
    transform = _Transform(lower)
    f = _wrap(obj, transform)
    theta0 = transform.to_theta(beta0)
    value0 = f(theta0)
    if not math.isfinite(value0):
        raise InfeasibleError(f"objective is infinite at the start {beta0.tolist()}")
    theta, value, conv = _polish_theta(f, theta0, value0, opts, 1e-3)
    beta = transform.to_beta(theta)
    return ParamEstimate(tuple(float(b) for b in beta), value, bool(conv), 1, (value,))
