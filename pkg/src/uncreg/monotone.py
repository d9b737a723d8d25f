"""Inverse distributions of strictly monotone functions of independent variables.

If ``f`` is strictly increasing in some arguments and strictly decreasing in
the others, the inverse distribution of ``f(xi_1, ..., xi_k)`` is ``f``
applied to ``Phi_j^-1(alpha)`` for the increasing arguments and
``Phi_j^-1(1 - alpha)`` for the decreasing ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ContractError
from .udist import RegularDistribution, _check_alpha

INCREASING = 1
DECREASING = -1


@dataclass(frozen=True)
class MonotoneSignature:
    """Direction (``INCREASING`` or ``DECREASING``) of a function in each argument."""

    directions: tuple[int, ...]

    def __post_init__(self):
        dirs = tuple(int(d) for d in self.directions)
        if any(d not in (INCREASING, DECREASING) for d in dirs):
            raise ContractError(f"directions must be +1 or -1, got {self.directions!r}")
        object.__setattr__(self, "directions", dirs)

    def __len__(self):
        return len(self.directions)

    def reversed(self) -> "MonotoneSignature":
        return MonotoneSignature(tuple(-d for d in self.directions))


class CompositeInverse:
    """Inverse distribution ``alpha -> F^-1(alpha)`` of a composed variable.

    ``func`` is the raw vectorised map used by the quadrature; calling the
    object validates ``alpha`` first. ``constant`` is set when every
    component is a point distribution, in which case the inverse does not
    depend on ``alpha`` at all.
    """

    __slots__ = ("func", "constant")

    def __init__(self, func: Callable[[np.ndarray], np.ndarray], constant: float | None = None):
        self.func = func
        self.constant = constant

    def __call__(self, alpha):
        if self.constant is not None:
            a = np.asarray(alpha, dtype=float)
            return self.constant if a.ndim == 0 else np.full(a.shape, self.constant)
        a = _check_alpha(alpha)
        out = self.func(a)
        return float(out) if np.ndim(out) == 0 else out

    def shifted(self, other: "CompositeInverse") -> "CompositeInverse":
        """Inverse of the sum of two comonotone-composed variables."""
        f, g = self.func, other.func
        const = None
        if self.constant is not None and other.constant is not None:
            const = self.constant + other.constant
        return CompositeInverse(lambda a: f(a) + g(a), const)


def compose_inverse(
    f: Callable[..., np.ndarray],
    dists: Sequence[RegularDistribution],
    sig: MonotoneSignature,
) -> CompositeInverse:
    """Inverse distribution of ``f(xi_1, ..., xi_k)`` for independent ``xi_j ~ dists[j]``."""
    dists = tuple(dists)
    if len(dists) != len(sig):
        raise ContractError(f"{len(dists)} distributions but signature has {len(sig)} entries")
    pairs = tuple(zip(dists, sig.directions))

    def func(alpha):
        flipped = None
        args = []
        for d, direction in pairs:
            if direction == INCREASING:
                args.append(d._inverse(alpha))
            else:
                if flipped is None:
                    flipped = 1.0 - alpha
                args.append(d._inverse(flipped))
        return f(*args)

    constant = None
    if all(d.is_constant for d in dists):
        constant = float(f(*(d.c for d in dists)))
    return CompositeInverse(func, constant)


def residual_inverse(y, xs, model, beta, strict_theorem_flip: bool = False) -> CompositeInverse:
    """Inverse distribution of the residual ``y - g(x_1, ..., x_p | beta)``.

    The residual increases with ``y`` and moves against ``g`` in every
    predictor, so predictors in which ``g`` increases are read at
    ``1 - alpha``.

    Parameters
    ----------
    y : RegularDistribution
        Response.
    xs : sequence of RegularDistribution
        The ``p`` predictors.
    model : ModelSpec
    beta : array_like
        Parameters; must satisfy the model's constraints.
    strict_theorem_flip : bool
        Gompertz only. Read the predictor at ``alpha`` instead of
        ``1 - alpha``, as in the printed Gompertz integrand.

    Raises
    ------
    ConstraintError
        If ``beta`` violates the model constraints.
    """
    beta = model.check(beta)
    xs = tuple(xs)
    if len(xs) != model.p:
        raise ContractError(f"model expects {model.p} predictors, got {len(xs)}")
    g_sig = model.signature(beta)
    x_sig = g_sig if strict_theorem_flip and model.kind == "gompertz" else g_sig.reversed()
    sig = MonotoneSignature((INCREASING,) + x_sig.directions)
    g = model.g

    def f(y_val, *x_vals):
        return y_val - g(x_vals, beta)

    inv = compose_inverse(f, (y,) + xs, sig)
    if __debug__ and model.kind == "custom":
        check_nondecreasing(inv)
    return inv


def check_nondecreasing(inv: CompositeInverse, points: int = 99, slack: float = 1e-9) -> None:
    """Reject an inverse that drops by more than ``slack`` on a uniform grid."""
    if inv.constant is not None:
        return
    grid = np.arange(1, points + 1) / (points + 1)
    values = np.asarray(inv.func(grid), dtype=float)
    drops = np.diff(values) < -slack
    if drops.any():
        k = int(np.argmax(drops))
        raise ContractError(
            f"inverse decreases between alpha={grid[k]:.4f} and {grid[k + 1]:.4f}; "
            "check the model's monotonicity declaration"
        )
