"""Regular uncertainty distributions and moments computed from their inverses.

A regular distribution is handled entirely through its inverse
``Phi^-1(alpha)``; expected values are integrals of the inverse over
``alpha`` in (0, 1). Three kinds are supported:

* ``Linear(a, b)``: inverse ``(1 - alpha) a + alpha b``
* ``Normal(e, sigma)``: inverse ``e + sigma sqrt(3)/pi ln(alpha / (1 - alpha))``
* ``Point(c)``: a crisp number, inverse constant ``c``. Not regular, but
  kept so that classical crisp regression is a special case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, ValidationError
from .quad import DEFAULT_RULE, QuadratureRule, integrate

CDF_TOL = 1e-12

_LOGISTIC_SCALE = math.sqrt(3.0) / math.pi


def _check_alpha(alpha):
    a = np.asarray(alpha, dtype=float)
    bad = ~((a > 0.0) & (a < 1.0))
    if bad.any():
        offending = a[bad].ravel()[0] if a.ndim else float(a)
        raise DomainError(f"alpha must lie in (0, 1), got {float(offending)!r}")
    return a


def _finite(name, value):
    value = float(value)
    if not math.isfinite(value):
        raise ValidationError(f"{name} must be finite, got {value!r}")
    return value


class RegularDistribution:
    """Base class; subclasses implement :meth:`_inverse`."""

    kind: str = ""

    def inverse(self, alpha):
        """Inverse distribution at ``alpha`` (scalar or array) in (0, 1)."""
        a = _check_alpha(alpha)
        out = self._inverse(a)
        return float(out) if np.ndim(out) == 0 else out

    def _inverse(self, alpha: np.ndarray):
        raise NotImplementedError

    def cdf(self, x: float) -> float:
        """Distribution value at ``x``, located by bisection on alpha."""
        x = float(x)
        if not math.isfinite(x):
            raise DomainError(f"cdf argument must be finite, got {x!r}")
        return bisect_cdf(self._inverse, x)

    @property
    def is_constant(self) -> bool:
        return False

    def to_literal(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Linear(RegularDistribution):
    a: float
    b: float
    kind = "linear"

    def __post_init__(self):
        a, b = _finite("a", self.a), _finite("b", self.b)
        if not a < b:
            raise ValidationError(f"linear distribution needs a < b, got a={a!r}, b={b!r}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def _inverse(self, alpha):
        return (1.0 - alpha) * self.a + alpha * self.b

    def to_literal(self):
        return {"dist": "linear", "a": self.a, "b": self.b}


@dataclass(frozen=True)
class Normal(RegularDistribution):
    e: float
    sigma: float
    kind = "normal"

    def __post_init__(self):
        e, sigma = _finite("e", self.e), _finite("sigma", self.sigma)
        if not sigma > 0:
            raise ValidationError(f"normal distribution needs sigma > 0, got {sigma!r}")
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "sigma", sigma)

    def _inverse(self, alpha):
        with np.errstate(divide="ignore"):
            return self.e + self.sigma * _LOGISTIC_SCALE * np.log(alpha / (1.0 - alpha))

    def to_literal(self):
        return {"dist": "normal", "e": self.e, "sigma": self.sigma}


@dataclass(frozen=True)
class Point(RegularDistribution):
    c: float
    kind = "point"

    def __post_init__(self):
        object.__setattr__(self, "c", _finite("c", self.c))

    def inverse(self, alpha):
        a = np.asarray(alpha, dtype=float)
        return self.c if a.ndim == 0 else np.full(a.shape, self.c)

    def _inverse(self, alpha):
        return np.full(np.shape(alpha), self.c) if np.ndim(alpha) else self.c

    def cdf(self, x):
        x = float(x)
        if not math.isfinite(x):
            raise DomainError(f"cdf argument must be finite, got {x!r}")
        return 1.0 if x >= self.c else 0.0

    @property
    def is_constant(self):
        return True

    def to_literal(self):
        return {"dist": "point", "c": self.c}


def bisect_cdf(inverse: Callable[[float], float], x: float, tol: float = CDF_TOL, strict: bool = False) -> float:
    """Generalised distribution ``sup{alpha : inverse(alpha) <= x}``.

    With ``strict=True`` the comparison is ``<``, giving the left limit of
    the distribution at ``x``. The two agree for strictly increasing,
    continuous inverses. The result is clamped to [0, 1].
    """
    lo, hi = 0.0, 1.0
    below = (lambda v: v < x) if strict else (lambda v: v <= x)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if below(float(inverse(mid))):
            lo = mid
        else:
            hi = mid
    if lo == 0.0:
        return 0.0
    if hi == 1.0:
        return 1.0
    return 0.5 * (lo + hi)


def from_literal(literal: dict) -> RegularDistribution:
    """Build a distribution from its JSON literal (see :meth:`to_literal`)."""
    if not isinstance(literal, dict):
        raise ValidationError(f"distribution literal must be an object, got {literal!r}")
    kind = literal.get("dist")
    fields = {"linear": ("a", "b"), "normal": ("e", "sigma"), "point": ("c",)}
    if kind not in fields:
        raise ValidationError(f"unknown distribution kind {kind!r}")
    extra = set(literal) - {"dist", *fields[kind]}
    if extra:
        raise ValidationError(f"unexpected field(s) {sorted(extra)} in {kind} literal")
    args = []
    for name in fields[kind]:
        if name not in literal:
            raise ValidationError(f"{kind} literal is missing field {name!r}")
        value = literal[name]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValidationError(f"field {name!r} must be a number, got {value!r}")
        args.append(value)
    return {"linear": Linear, "normal": Normal, "point": Point}[kind](*args)


def expected_value(d: RegularDistribution, q: QuadratureRule = DEFAULT_RULE) -> float:
    """``E[xi] = int_0^1 Phi^-1(alpha) d alpha``."""
    if d.is_constant:
        return d.c
    return integrate(d._inverse, q)


def expected_abs(d: RegularDistribution, q: QuadratureRule = DEFAULT_RULE) -> float:
    """``E|xi| = int_0^1 |Phi^-1(alpha)| d alpha``."""
    if d.is_constant:
        return abs(d.c)
    return integrate(lambda a: np.abs(d._inverse(a)), q)


def expected_square(d: RegularDistribution, q: QuadratureRule = DEFAULT_RULE) -> float:
    """``E[xi^2] = int_0^1 (Phi^-1(alpha))^2 d alpha``."""
    if d.is_constant:
        return d.c * d.c
    return integrate(lambda a: d._inverse(a) ** 2, q)
