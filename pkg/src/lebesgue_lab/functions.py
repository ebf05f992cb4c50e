"""Test functions: a small closed-form registry plus tabulated data.

Closed-form entries are continuous on the whole line and vectorized.
Tabulated functions are defined only on their listed points and refuse
anything else, which keeps node-only probes honest.
"""

from __future__ import annotations

import math
from typing import Callable, Mapping

import numpy as np

from .errors import DomainError, InputError

__all__ = [
    "SampledFunction",
    "closed_form",
    "polynomial",
    "hat",
    "tabulated",
    "parse_spec",
    "registry_names",
    "default_suite",
]

STEP_HALF_WIDTH = 0.05


class SampledFunction:
    """A named real function, evaluable at scalars or numpy arrays."""

    def __init__(self, name: str, fn: Callable | None = None, table: Mapping[float, float] | None = None):
        if (fn is None) == (table is None):
            raise DomainError("provide exactly one of fn or table")
        self.name = name
        self._fn = fn
        self.table = None if table is None else {float(k): float(v) for k, v in table.items()}

    def __call__(self, x):
        if self.table is not None:
            if np.ndim(x) == 0:
                key = float(x)
                try:
                    return self.table[key]
                except KeyError:
                    raise DomainError(
                        f"tabulated function {self.name!r} is not defined at {key!r}"
                    ) from None
            flat = [self(v) for v in np.asarray(x, dtype=float).ravel()]
            return np.array(flat).reshape(np.shape(x))
        if np.ndim(x) == 0:
            x = float(x)
            if not math.isfinite(x):
                raise DomainError(f"evaluation point must be finite, got {x!r}")
            return float(self._fn(x))
        return self._fn(np.asarray(x, dtype=float))

    def __repr__(self) -> str:
        return f"SampledFunction({self.name!r})"


def _runge(x):
    return 1.0 / (1.0 + 25.0 * x * x)


def _step(x):
    # Continuous step: 0 left of the ramp, 1 right of it, linear across
    # [-STEP_HALF_WIDTH, STEP_HALF_WIDTH].
    return np.clip((x + STEP_HALF_WIDTH) / (2.0 * STEP_HALF_WIDTH), 0.0, 1.0)


_REGISTRY: dict[str, Callable] = {
    "abs": np.abs,
    "runge": _runge,
    "exp": np.exp,
    "step": _step,
}


def registry_names() -> tuple[str, ...]:
    return tuple(sorted(_REGISTRY))


def closed_form(name: str) -> SampledFunction:
    try:
        return SampledFunction(name, fn=_REGISTRY[name])
    except KeyError:
        raise InputError(
            f"unknown function {name!r}; known: {', '.join(registry_names())}"
        ) from None


def polynomial(coeffs) -> SampledFunction:
    """Polynomial with the given coefficients, constant term first."""
    cs = tuple(float(c) for c in coeffs)
    if not cs:
        raise DomainError("a polynomial needs at least one coefficient")
    name = "poly:" + ",".join(f"{c:g}" for c in cs)
    return SampledFunction(name, fn=lambda x: np.polynomial.polynomial.polyval(x, cs))


def hat(center: float, halfwidth: float) -> SampledFunction:
    """Continuous node indicator: 1 at ``center``, 0 beyond ``halfwidth``."""
    c, h = float(center), float(halfwidth)
    if not h > 0:
        raise DomainError("halfwidth must be positive")
    name = f"hat:{c:g}:{h:g}"
    return SampledFunction(name, fn=lambda x: np.maximum(0.0, 1.0 - np.abs(x - c) / h))


def tabulated(mapping: Mapping[float, float], name: str = "tabulated") -> SampledFunction:
    if not mapping:
        raise DomainError("a tabulated function needs at least one point")
    return SampledFunction(name, table=mapping)


def parse_spec(spec: str) -> SampledFunction:
    """Parse a CLI function spec.

    Accepts registry names (abs, runge, exp, step), ``poly:c0,c1,...``
    with the constant term first, and ``hat:center:halfwidth``.
    """
    spec = spec.strip()
    if spec in _REGISTRY:
        return closed_form(spec)
    if spec.startswith("poly:"):
        body = spec[len("poly:"):]
        try:
            coeffs = [float(tok) for tok in body.split(",") if tok.strip() != ""]
        except ValueError:
            raise InputError(f"bad polynomial spec {spec!r}") from None
        if not coeffs:
            raise InputError(f"bad polynomial spec {spec!r}")
        return polynomial(coeffs)
    if spec.startswith("hat:"):
        parts = spec.split(":")
        if len(parts) != 3:
            raise InputError(f"bad hat spec {spec!r}; expected hat:center:halfwidth")
        try:
            return hat(float(parts[1]), float(parts[2]))
        except (ValueError, DomainError):
            raise InputError(f"bad hat spec {spec!r}") from None
    raise InputError(
        f"unknown function {spec!r}; known: {', '.join(registry_names())}, "
        "poly:c0,c1,..., hat:center:halfwidth"
    )


def default_suite() -> list[SampledFunction]:
    """The standard continuous test functions for multi-function checks."""
    return [
        closed_form("abs"),
        closed_form("runge"),
        closed_form("exp"),
        closed_form("step"),
        polynomial((0.0, 1.0, 2.0)),
    ]
