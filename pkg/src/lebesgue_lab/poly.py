"""Polynomial containers and evaluation primitives.

Three interchangeable representations are supported: monomial
coefficients (low order first), Newton forms over a node sequence, and
barycentric node/weight/value forms. Barycentric evaluation uses the
second (true) barycentric formula and returns stored values bitwise at
the nodes; the raw product formula is kept out of the library and lives
in the test suite as an independent oracle.

All containers are immutable and all operations are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import tolerances
from .errors import DomainError, NumericalError

__all__ = [
    "MonomialForm",
    "NewtonForm",
    "BarycentricForm",
    "PolynomialForm",
    "barycentric_weights",
    "evaluate",
    "to_monomial",
    "degree",
]


def _checked_point(x) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"evaluation point must be finite, got {x!r}")
    return x


def _distinct(points) -> bool:
    return len(set(points)) == len(points)


@dataclass(frozen=True)
class MonomialForm:
    """Dense monomial coefficients, ``coeffs[i]`` multiplying ``x**i``.

    Trailing exact zeros are stripped on construction, so the last entry
    is nonzero unless the polynomial is identically zero, in which case
    ``coeffs`` is empty.
    """

    coeffs: tuple[float, ...]

    def __init__(self, coeffs):
        cs = [float(c) for c in coeffs]
        if any(not math.isfinite(c) for c in cs):
            raise DomainError("monomial coefficients must be finite")
        while cs and cs[-1] == 0.0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: float) -> float:
        return evaluate(self, x)


@dataclass(frozen=True)
class NewtonForm:
    """Newton form: ``coeffs[k]`` multiplies the monic product over
    ``nodes[0..k-1]`` (the k = 0 term is the constant 1).

    The last node never affects the value, so ``nodes`` may carry either
    ``len(coeffs)`` points (the usual interpolation layout) or
    ``len(coeffs) - 1`` (just the points the products need).
    """

    nodes: tuple[float, ...]
    coeffs: tuple[float, ...]

    def __init__(self, nodes, coeffs):
        nd = tuple(float(v) for v in nodes)
        cs = tuple(float(c) for c in coeffs)
        if not cs:
            raise DomainError("a Newton form needs at least one coefficient")
        if len(nd) not in (len(cs), len(cs) - 1):
            raise DomainError(
                f"need {len(cs)} or {len(cs) - 1} nodes for {len(cs)} "
                f"coefficients, got {len(nd)}"
            )
        if any(not math.isfinite(v) for v in nd):
            raise DomainError("Newton nodes must be finite")
        if any(not math.isfinite(c) for c in cs):
            raise DomainError("Newton coefficients must be finite")
        if not _distinct(nd):
            raise DomainError("Newton nodes must be pairwise distinct")
        object.__setattr__(self, "nodes", nd)
        object.__setattr__(self, "coeffs", cs)

    def __call__(self, x: float) -> float:
        return evaluate(self, x)


def barycentric_weights(nodes) -> np.ndarray:
    """Weights ``w_k = 1 / prod_{j != k} (x_k - x_j)``.

    Parameters
    ----------
    nodes : array_like
        Pairwise distinct real nodes.

    Returns
    -------
    numpy.ndarray
        One finite nonzero weight per node.
    """
    xs = np.asarray(nodes, dtype=float)
    if xs.ndim != 1 or xs.size == 0:
        raise DomainError("nodes must be a nonempty 1-d sequence")
    diff = xs[:, None] - xs[None, :]
    np.fill_diagonal(diff, 1.0)
    if np.any(diff == 0.0):
        raise DomainError("nodes must be pairwise distinct")
    prods = diff.prod(axis=1)
    with np.errstate(divide="ignore", over="ignore"):
        w = 1.0 / prods
    if not np.all(np.isfinite(w)) or np.any(w == 0.0):
        raise NumericalError("barycentric weights overflow for these nodes")
    return w


@dataclass(frozen=True)
class BarycentricForm:
    """Node/weight/value form of an interpolating polynomial.

    ``weights`` defaults to the inverse node-difference products; passing
    them explicitly skips the O(n^2) recomputation. Evaluation at a node
    returns the stored value bitwise.
    """

    nodes: tuple[float, ...]
    values: tuple[float, ...]
    weights: tuple[float, ...]

    def __init__(self, nodes, values, weights=None):
        nd = tuple(float(v) for v in nodes)
        vals = tuple(float(v) for v in values)
        if len(nd) != len(vals):
            raise DomainError("need one value per node")
        if any(not math.isfinite(v) for v in vals):
            raise DomainError("barycentric values must be finite")
        if weights is None:
            w = tuple(float(v) for v in barycentric_weights(nd))
        else:
            w = tuple(float(v) for v in weights)
            if len(w) != len(nd):
                raise DomainError("need one weight per node")
            if not _distinct(nd):
                raise DomainError("nodes must be pairwise distinct")
            if any(not math.isfinite(v) or v == 0.0 for v in w):
                raise DomainError("weights must be finite and nonzero")
        object.__setattr__(self, "nodes", nd)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "weights", w)

    def __call__(self, x: float) -> float:
        return evaluate(self, x)


PolynomialForm = Union[MonomialForm, NewtonForm, BarycentricForm]


def evaluate(form: PolynomialForm, x: float) -> float:
    """Evaluate any polynomial form at a finite real point.

    Monomial forms use Horner's scheme, Newton forms the nested scheme
    over their nodes, and barycentric forms the second barycentric
    formula with the exact-node shortcut.
    """
    x = _checked_point(x)
    if isinstance(form, MonomialForm):
        if not form.coeffs:
            return 0.0
        return float(np.polynomial.polynomial.polyval(x, form.coeffs))
    if isinstance(form, NewtonForm):
        cs = form.coeffs
        acc = cs[-1]
        for k in range(len(cs) - 2, -1, -1):
            acc = cs[k] + (x - form.nodes[k]) * acc
        return float(acc)
    if isinstance(form, BarycentricForm):
        for i, xi in enumerate(form.nodes):
            if x == xi:
                return form.values[i]
        z = np.asarray(form.weights) / (x - np.asarray(form.nodes))
        return float(z @ np.asarray(form.values) / z.sum())
    raise TypeError(f"not a polynomial form: {type(form).__name__}")


def _newton_coefficients(nodes, values) -> list[float]:
    # In-place divided-difference triangle; cs[k] ends as the k-th
    # leading coefficient.
    cs = [float(v) for v in values]
    xs = [float(v) for v in nodes]
    for j in range(1, len(cs)):
        for i in range(len(cs) - 1, j - 1, -1):
            cs[i] = (cs[i] - cs[i - 1]) / (xs[i] - xs[i - j])
    return cs


def to_monomial(form: PolynomialForm) -> MonomialForm:
    """Convert any form to monomial coefficients.

    Newton forms are expanded by the nested multiply-and-add; a
    barycentric form goes through its Newton coefficients first.
    """
    if isinstance(form, MonomialForm):
        return form
    if isinstance(form, BarycentricForm):
        form = NewtonForm(form.nodes, _newton_coefficients(form.nodes, form.values))
    if not isinstance(form, NewtonForm):
        raise TypeError(f"not a polynomial form: {type(form).__name__}")
    acc = np.array([form.coeffs[-1]])
    for k in range(len(form.coeffs) - 2, -1, -1):
        shifted = np.concatenate(([0.0], acc))
        shifted[:-1] -= form.nodes[k] * acc
        shifted[0] += form.coeffs[k]
        acc = shifted
    return MonomialForm(acc)


def degree(form: PolynomialForm) -> int | None:
    """Degree after trimming relatively negligible coefficients.

    Coefficients below ``DEGREE_TRIM_REL`` times the max magnitude count
    as zero. The identically zero polynomial reports ``None``.
    """
    mono = to_monomial(form)
    if not mono.coeffs:
        return None
    cs = np.abs(np.asarray(mono.coeffs))
    cutoff = tolerances.DEGREE_TRIM_REL * cs.max()
    keep = np.nonzero(cs > cutoff)[0]
    if keep.size == 0:
        return None
    return int(keep[-1])
