"""Datasets of imprecise observations and the LAD / LS objectives.

The objective for a loss ``rho`` is::

    beta -> sum_i int_0^1 rho(F_i^-1(alpha | beta)) d alpha

where ``F_i^-1`` is the inverse distribution of the i-th residual.
``rho(r) = |r|`` gives least absolute deviations, ``rho(r) = r**2`` least
squares.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ContractError, QuadratureError, ValidationError
from .models import ModelSpec
from .monotone import residual_inverse
from .quad import DEFAULT_RULE, QuadratureRule
from .udist import Linear, Point, RegularDistribution


@dataclass(frozen=True)
class Observation:
    y: RegularDistribution
    x: tuple[RegularDistribution, ...]


@dataclass(frozen=True)
class Dataset:
    """``n`` independent observations, each a response and ``p`` predictors."""

    p: int
    observations: tuple[Observation, ...]

    def __post_init__(self):
        obs = tuple(
            o if isinstance(o, Observation) else Observation(o[0], tuple(o[1])) for o in self.observations
        )
        if not obs:
            raise ValidationError("dataset has no observations")
        for i, o in enumerate(obs):
            if len(o.x) != self.p:
                raise ValidationError(f"observation {i}: expected {self.p} predictors, got {len(o.x)}")
            for field, d in [("y", o.y)] + [(f"x[{j}]", d) for j, d in enumerate(o.x)]:
                if not isinstance(d, RegularDistribution):
                    raise ValidationError(f"observation {i}: {field} is not a distribution")
        object.__setattr__(self, "observations", obs)

    @property
    def n(self) -> int:
        return len(self.observations)

    def __len__(self):
        return self.n

    def without(self, indices: Sequence[int]) -> "Dataset":
        """Copy with the given zero-based observation indices removed."""
        drop = set(indices)
        return Dataset(self.p, tuple(o for i, o in enumerate(self.observations) if i not in drop))

    @classmethod
    def from_pairs(cls, pairs) -> "Dataset":
        """Single-predictor dataset from ``[(y, x), ...]`` distributions."""
        return cls(1, tuple(Observation(y, (x,)) for y, x in pairs))


@dataclass(frozen=True)
class Loss:
    name: str
    rho: Callable[[np.ndarray], np.ndarray]


LAD = Loss("lad", np.abs)
LS = Loss("ls", np.square)

_LOSSES = {"lad": LAD, "ls": LS}


def check_loss(rho, grid=None) -> None:
    """Reject ``rho`` unless it is zero at 0, even, and nondecreasing in ``|r|``."""
    r = np.linspace(0.0, 100.0, 2001) if grid is None else np.sort(np.abs(np.asarray(grid, dtype=float)))
    pos = np.asarray(rho(r), dtype=float)
    neg = np.asarray(rho(-r), dtype=float)
    if float(rho(np.zeros(1))[0]) != 0.0:
        raise ContractError("loss must satisfy rho(0) == 0")
    if not np.allclose(pos, neg, rtol=1e-12, atol=0.0):
        raise ContractError("loss must be even: rho(r) == rho(-r)")
    if np.any(np.diff(pos) < 0):
        raise ContractError("loss must be nondecreasing in |r|")


def register_loss(name: str, rho) -> Loss:
    """Add a custom loss after checking the defining properties."""
    check_loss(rho)
    loss = Loss(name, rho)
    _LOSSES[name] = loss
    return loss


def get_loss(loss) -> Loss:
    if isinstance(loss, Loss):
        return loss
    try:
        return _LOSSES[loss]
    except KeyError:
        raise ContractError(f"unknown loss {loss!r}; expected one of {sorted(_LOSSES)}") from None


def residual_inverses(data: Dataset, model: ModelSpec, beta, strict_theorem_flip: bool = False):
    """Residual inverse distribution for every observation, in order."""
    return [residual_inverse(o.y, o.x, model, beta, strict_theorem_flip) for o in data.observations]


def objective(
    data: Dataset,
    model: ModelSpec,
    loss="lad",
    q: QuadratureRule = DEFAULT_RULE,
    strict_theorem_flip: bool = False,
) -> Callable[[np.ndarray], float]:
    """Objective ``beta -> sum_i E[rho(residual_i)]``.

    Infeasible parameters evaluate to ``+inf`` instead of raising, so a
    derivative-free search can probe outside the constraint set.
    """
    if model.p != data.p:
        raise ContractError(f"model takes {model.p} predictors but dataset has {data.p}")
    rho = get_loss(loss).rho
    table = _NodeTable(data, q)
    g = model.g
    flip_printed = strict_theorem_flip and model.kind == "gompertz"

    def value(beta) -> float:
        beta = np.asarray(beta, dtype=float)
        if beta.shape != (model.dim,):
            raise ContractError(f"expected {model.dim} parameters, got shape {beta.shape}")
        if not model.feasible(beta):
            return math.inf
        if __debug__ and model.kind == "custom":
            residual_inverses(data, model, beta)  # monotonicity grid check
        directions = model.signature(beta).directions
        # residual falls as g rises: increasing predictors are read at 1 - alpha
        reverse = [(d < 0) if flip_printed else (d > 0) for d in directions]
        terms = table.terms(rho, g, beta, reverse)
        total = 0.0
        for t in terms:
            total += t
        return total

    return value


class _NodeTable:
    """Inverse distributions tabulated at the nodes of a rule, per observation.

    Rows of ``y`` hold ``Psi_i^-1`` at the nodes; ``x[j][reverse]`` holds
    ``Phi_ij^-1`` at the nodes or, when ``reverse`` is set, at one minus
    the nodes. Observations made only of point distributions are kept
    apart and evaluated exactly.
    """

    def __init__(self, data: Dataset, q: QuadratureRule):
        self.q = q
        obs = data.observations
        self.crisp = [i for i, o in enumerate(obs) if o.y.is_constant and all(d.is_constant for d in o.x)]
        crisp = set(self.crisp)
        self.spread = [i for i in range(len(obs)) if i not in crisp]
        self.n = len(obs)
        a = q.points
        b = 1.0 - a
        rows = [obs[i] for i in self.spread]
        self.y = np.array([o.y._inverse(a) * np.ones_like(a) for o in rows]).reshape(len(rows), a.size)
        self.x = []
        for j in range(data.p):
            fwd = np.array([o.x[j]._inverse(a) * np.ones_like(a) for o in rows]).reshape(len(rows), a.size)
            rev = np.array([o.x[j]._inverse(b) * np.ones_like(a) for o in rows]).reshape(len(rows), a.size)
            self.x.append((fwd, rev))
        self.crisp_y = [obs[i].y.c for i in self.crisp]
        self.crisp_x = [tuple(d.c for d in obs[i].x) for i in self.crisp]

    def terms(self, rho, g, beta, reverse) -> list[float]:
        out = [0.0] * self.n
        if self.spread:
            xs = [self.x[j][1 if r else 0] for j, r in enumerate(reverse)]
            values = np.asarray(rho(self.y - g(xs, beta)), dtype=float)
            bad = ~np.isfinite(values)
            if bad.any():
                row, col = np.argwhere(bad)[0]
                raise QuadratureError(self.q.points[col], float(values[row, col]))
            sums = np.add.reduce(values * self.q.weights, axis=1)
            for i, s in zip(self.spread, sums):
                out[i] = float(s)
        for i, yc, xc in zip(self.crisp, self.crisp_y, self.crisp_x):
            out[i] = float(rho(yc - g(xc, beta)))
        return out


def _affine(d: RegularDistribution, reverse: bool):
    """``(c, s)`` with ``Phi^-1(alpha) = c + s alpha`` (or at ``1 - alpha``)."""
    if isinstance(d, Point):
        return d.c, 0.0
    if isinstance(d, Linear):
        if reverse:
            return d.b, d.a - d.b
        return d.a, d.b - d.a
    raise ContractError(f"exact LAD objective needs linear or point distributions, got {d.kind}")


def _abs_affine_integral(c: float, s: float) -> float:
    # int_0^1 |c + s t| dt
    if s != 0.0:
        root = -c / s
        if 0.0 < root < 1.0:
            return (c * c + (c + s) ** 2) / (2.0 * abs(s))
    return abs(c + 0.5 * s)


def exact_linear_lad_objective(data: Dataset, beta) -> float:
    """Closed-form LAD objective for the linear model on linear/point data.

    Each residual inverse is affine in ``alpha``; the absolute value is
    integrated exactly, splitting at its root. Independent of the
    quadrature path and used as its oracle.
    """
    beta = np.asarray(beta, dtype=float)
    if beta.shape != (data.p + 1,):
        raise ContractError(f"linear model on {data.p} predictors has {data.p + 1} parameters")
    total = 0.0
    for o in data.observations:
        c, s = _affine(o.y, reverse=False)
        c -= beta[0]
        for bj, x in zip(beta[1:], o.x):
            xc, xs = _affine(x, reverse=bj >= 0)
            c -= bj * xc
            s -= bj * xs
        total += _abs_affine_integral(float(c), float(s))
    return total
