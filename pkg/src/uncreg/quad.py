"""Deterministic quadrature on the open unit interval.

Every moment of an uncertain variable is an integral over the level
``alpha`` in (0, 1) of something built from inverse distributions. The
rules here never evaluate at the endpoints, where inverses such as the
normal one diverge.

Integrands are vectorised: they receive a 1-d array of nodes and must
return an array of the same shape.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np

from .errors import ConvergenceError, DomainError, QuadratureError

MIDPOINT = "composite-midpoint"
GAUSS = "gauss-legendre-composite"

SCHEMES = (MIDPOINT, GAUSS)
MIN_NODES = 16
NODE_CAP = 2**20

Integrand = Callable[[np.ndarray], np.ndarray]


def _default_panels(nodes: int) -> int:
    # largest per-panel order <= 8 that divides the node count
    for order in range(8, 0, -1):
        if nodes % order == 0:
            return nodes // order
    return nodes


@dataclass(frozen=True)
class QuadratureRule:
    """A fixed quadrature rule on (0, 1).

    Parameters
    ----------
    scheme : str
        ``"composite-midpoint"`` or ``"gauss-legendre-composite"``.
    nodes : int
        Total number of interior evaluation points (at least 16).
    panels : int, optional
        Gauss variant only. Number of equal panels; ``nodes`` must be a
        multiple of it. Defaults to the panel count giving the largest
        per-panel order up to 8.
    """

    scheme: str = MIDPOINT
    nodes: int = 2001
    panels: int | None = None

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise DomainError(f"unknown quadrature scheme {self.scheme!r}")
        if int(self.nodes) != self.nodes or self.nodes < MIN_NODES:
            raise DomainError(f"nodes must be an integer >= {MIN_NODES}, got {self.nodes!r}")
        if self.scheme == MIDPOINT:
            if self.panels is not None:
                raise DomainError("panels applies to the gauss scheme only")
            return
        panels = _default_panels(self.nodes) if self.panels is None else self.panels
        if panels < 1 or self.nodes % panels:
            raise DomainError(f"nodes={self.nodes} is not a multiple of panels={panels}")
        object.__setattr__(self, "panels", int(panels))

    @property
    def order(self) -> int:
        """Points per panel (1 for the midpoint rule)."""
        return 1 if self.scheme == MIDPOINT else self.nodes // self.panels

    @cached_property
    def _grid(self):
        if self.scheme == MIDPOINT:
            n = self.nodes
            points = (np.arange(1, n + 1) - 0.5) / n
            weights = np.full(n, 1.0 / n)
        else:
            x, w = np.polynomial.legendre.leggauss(self.order)
            left = np.arange(self.panels) / self.panels
            h = 1.0 / self.panels
            points = (left[:, None] + 0.5 * h * (x[None, :] + 1.0)).ravel()
            weights = np.tile(0.5 * h * w, self.panels)
        points.setflags(write=False)
        weights.setflags(write=False)
        return points, weights

    @property
    def points(self) -> np.ndarray:
        return self._grid[0]

    @property
    def weights(self) -> np.ndarray:
        return self._grid[1]

    def doubled(self) -> "QuadratureRule":
        """The same scheme with twice the nodes (twice the panels for gauss)."""
        if self.scheme == MIDPOINT:
            return QuadratureRule(MIDPOINT, 2 * self.nodes)
        return QuadratureRule(GAUSS, 2 * self.nodes, 2 * self.panels)


DEFAULT_RULE = QuadratureRule()


def _weighted_sum(values: np.ndarray, q: QuadratureRule) -> float:
    bad = ~np.isfinite(values)
    if bad.any():
        k = int(np.argmax(bad))
        raise QuadratureError(q.points[k], float(values[k]))
    # fixed ascending-node accumulation
    return float(np.add.reduce(values * q.weights))


def evaluate(f: Integrand, q: QuadratureRule) -> np.ndarray:
    """Evaluate ``f`` at the nodes of ``q`` as a float array."""
    values = np.asarray(f(q.points), dtype=float)
    if values.shape != q.points.shape:
        values = np.broadcast_to(values, q.points.shape)
    return values


def integrate(f: Integrand, q: QuadratureRule = DEFAULT_RULE) -> float:
    """Integrate ``f`` over (0, 1) with rule ``q``.

    Raises
    ------
    QuadratureError
        If ``f`` is not finite at some node; the node is attached.
    """
    return _weighted_sum(evaluate(f, q), q)


def integrate_adaptive(f: Integrand, q: QuadratureRule = DEFAULT_RULE, tol: float = 1e-8) -> float:
    """Double the node count of ``q`` until successive estimates agree to ``tol``."""
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    estimate = integrate(f, q)
    delta = float("inf")
    while q.nodes * 2 <= NODE_CAP:
        q = q.doubled()
        refined = integrate(f, q)
        delta = abs(refined - estimate)
        estimate = refined
        if delta < tol:
            return estimate
    raise ConvergenceError(
        f"no convergence to tol={tol:g} within {NODE_CAP} nodes (last delta {delta:.3g})",
        last_delta=delta,
    )
