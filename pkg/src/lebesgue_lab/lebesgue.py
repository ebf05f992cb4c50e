"""Lebesgue functions, Lebesgue constants, and interpolation error.

The Lebesgue function of a node row is the sum of the absolute
fundamental values; its supremum over a compact set is the operator
norm of the interpolation projector on continuous functions. Everything
here evaluates through the normalized barycentric formula, so the
fundamental values sum to one by construction and are an exact Kronecker
pattern at the nodes.

Degree indexing: the operator of degree n interpolates on row n + 1 of
a matrix (n + 1 nodes).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import tolerances
from .compactset import CompactSet
from .errors import DomainError
from .functions import SampledFunction
from .matrices import InterpolationMatrix
from .poly import BarycentricForm, barycentric_weights

__all__ = [
    "fundamental_values",
    "lagrange_interpolant",
    "lebesgue_function",
    "lebesgue_sup_oracle",
    "lebesgue_constant",
    "operator_norm_probe",
    "uniform_error",
    "best_approx_upper_bound",
    "lebesgue_lemma_check",
    "convergence_profile",
    "growth_report",
    "chebyshev_points_on",
    "LemmaCheck",
    "ProfileRow",
    "GrowthRow",
]

SIGN_ENUMERATION_LIMIT = 20


def _row_array(row) -> np.ndarray:
    xs = np.asarray([float(x) for x in row], dtype=float)
    if xs.size == 0:
        raise DomainError("a node row must be nonempty")
    return xs


def _fundamental_matrix(xs_nodes: np.ndarray, weights: np.ndarray, xs: np.ndarray) -> np.ndarray:
    """Rows of fundamental values at each sample point (normalized
    barycentric second formula, exact Kronecker rows at node hits)."""
    diff = xs[:, None] - xs_nodes[None, :]
    hit_rows, hit_cols = np.nonzero(diff == 0.0)
    safe = np.where(diff == 0.0, 1.0, diff)
    # scale every row by its smallest node distance before dividing:
    # the factor cancels in the normalized quotient but keeps w / d
    # finite when a sample sits within an ulp of a node
    nearest = np.min(np.abs(safe), axis=1, keepdims=True)
    z = weights * (nearest / safe)
    with np.errstate(divide="ignore", invalid="ignore"):
        # a row with a node hit may still divide by a zero sum here;
        # it is overwritten with the exact Kronecker pattern below
        vals = z / z.sum(axis=1, keepdims=True)
    if hit_rows.size:
        vals[hit_rows, :] = 0.0
        vals[hit_rows, hit_cols] = 1.0
    return vals


def fundamental_values(row, x: float) -> np.ndarray:
    """Values of all fundamental polynomials of the row at x.

    Parameters
    ----------
    row : sequence of float
        Pairwise distinct nodes.
    x : float
        Finite evaluation point, anywhere on the line.

    Returns
    -------
    numpy.ndarray
        One value per node; the exact Kronecker pattern when x is a
        node, and always summing to one.
    """
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"evaluation point must be finite, got {x!r}")
    nodes = _row_array(row)
    weights = barycentric_weights(nodes)
    return _fundamental_matrix(nodes, weights, np.array([x]))[0]


def lagrange_interpolant(f: SampledFunction, row) -> BarycentricForm:
    """Interpolating polynomial of f on the row, in barycentric form."""
    nodes = _row_array(row)
    values = [float(f(x)) for x in nodes]
    return BarycentricForm(tuple(nodes), values)


def lebesgue_function(row, x: float) -> float:
    """Sum of absolute fundamental values at x; equals 1 at the nodes."""
    return float(np.abs(fundamental_values(row, x)).sum())


def lebesgue_sup_oracle(row, x: float) -> float:
    """Enumeration oracle for the Lebesgue function.

    Maximizes |sum_k s_k ell_k(x)| over every sign vector s in
    {-1, +1}^m by brute force. Refuses rows longer than
    ``SIGN_ENUMERATION_LIMIT`` nodes.
    """
    nodes = _row_array(row)
    m = nodes.size
    if m > SIGN_ENUMERATION_LIMIT:
        raise DomainError(
            f"sign enumeration is limited to {SIGN_ENUMERATION_LIMIT} nodes, got {m}"
        )
    ell = fundamental_values(row, x)
    patterns = ((np.arange(2**m)[:, None] >> np.arange(m)) & 1) * 2.0 - 1.0
    return float(np.abs(patterns @ ell).max())


def _segments(a: float, b: float, row: np.ndarray):
    inner = sorted({float(x) for x in row if a < x < b})
    bounds = [a, *inner, b]
    return [(s, e) for s, e in zip(bounds, bounds[1:]) if e > s]


def _cheb_samples(s: float, e: float, m: int) -> np.ndarray:
    t = np.cos(np.pi * np.arange(m) / (m - 1))[::-1]
    return (s + e) / 2 + (e - s) / 2 * t


def _golden_max(fn, lo: float, hi: float, tol: float) -> tuple[float, float]:
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = fn(c), fn(d)
    while (b - a) > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = fn(d)
    xm = (a + b) / 2
    return xm, fn(xm)


def _sup_over_set(X: CompactSet, row: np.ndarray, vec_fn, scalar_fn) -> tuple[float, float]:
    """Maximize a nonnegative function over a compact set.

    Dense Chebyshev-spaced sampling on every inter-node segment of every
    component (at least SEGMENT_SAMPLES_PER_NODE times the row length
    per segment), followed by bracketed golden-section refinement around
    the best sample. The value returned is a certified lower bound of
    the supremum, exact to the refinement tolerance for the smooth
    pieces; ties report the smallest maximizing x.
    """
    candidates: list[tuple[float, float]] = []
    m = max(tolerances.SEGMENT_SAMPLES_PER_NODE * row.size, 17)
    for a, b in X.intervals:
        if a == b:
            candidates.append((scalar_fn(a), a))
            continue
        candidates.append((scalar_fn(a), a))
        candidates.append((scalar_fn(b), b))
        for s, e in _segments(a, b, row):
            xs = _cheb_samples(s, e, m)
            vals = vec_fn(xs)
            i = int(np.argmax(vals))
            candidates.append((float(vals[i]), float(xs[i])))
            lo = float(xs[max(i - 1, 0)])
            hi = float(xs[min(i + 1, m - 1)])
            if hi > lo:
                xm, vm = _golden_max(scalar_fn, lo, hi, tolerances.SUP_REFINE_TOL)
                candidates.append((float(vm), float(xm)))
    best = max(v for v, _ in candidates)
    tie = tolerances.SUP_REFINE_TOL * max(1.0, abs(best))
    arg = min(x for v, x in candidates if v >= best - tie)
    return best, arg


def lebesgue_constant(row, X: CompactSet) -> tuple[float, float]:
    """Supremum of the Lebesgue function over X, with its argmax.

    Finite sets are evaluated exactly; interval components use the
    dense-sampling discipline with golden-section refinement. Among
    near-ties (within the refinement tolerance) the smallest x is
    reported.
    """
    nodes = _row_array(row)
    weights = barycentric_weights(nodes)

    def vec(xs: np.ndarray) -> np.ndarray:
        return np.abs(_fundamental_matrix(nodes, weights, xs)).sum(axis=1)

    def scalar(x: float) -> float:
        return float(vec(np.array([x]))[0])

    return _sup_over_set(X, nodes, vec, scalar)


def _interpolant_closures(row: np.ndarray, values: np.ndarray):
    weights = barycentric_weights(row)

    def vec(xs: np.ndarray) -> np.ndarray:
        return _fundamental_matrix(row, weights, xs) @ values

    def scalar(x: float) -> float:
        return float(vec(np.array([x]))[0])

    return vec, scalar


def operator_norm_probe(
    row, X: CompactSet, trials: int, rng: np.random.Generator | None = None
) -> float:
    """Lower bound for the interpolation operator norm on C(X).

    Probes sup_X |L f| over +-1 valued functions tabulated on the nodes.
    When ``trials`` covers all 2^m sign patterns the probe is exhaustive
    and matches the Lebesgue constant to the refinement tolerance;
    otherwise the patterns are drawn from ``rng`` (numpy PCG64 seeded
    with 0 when omitted).
    """
    nodes = _row_array(row)
    m = nodes.size
    if trials < 1:
        raise DomainError("trials must be at least 1")
    if m <= SIGN_ENUMERATION_LIMIT and trials >= 2**m:
        patterns = ((np.arange(2**m)[:, None] >> np.arange(m)) & 1) * 2.0 - 1.0
    else:
        if rng is None:
            rng = np.random.default_rng(0)
        patterns = rng.integers(0, 2, size=(trials, m)) * 2.0 - 1.0
    best = 0.0
    for signs in patterns:
        vec, scalar = _interpolant_closures(nodes, signs)
        value, _ = _sup_over_set(X, nodes, lambda xs: np.abs(vec(xs)), lambda x: abs(scalar(x)))
        best = max(best, value)
    return best


def uniform_error(f: SampledFunction, matrix: InterpolationMatrix, n: int, X: CompactSet) -> float:
    """sup over X of |f - L_n f| for the degree-n interpolant on row n + 1."""
    if n < 0:
        raise DomainError("degree must be nonnegative")
    row = np.asarray(matrix.row(n + 1))
    values = np.asarray([float(f(x)) for x in row])
    vec, scalar = _interpolant_closures(row, values)

    def err_vec(xs: np.ndarray) -> np.ndarray:
        return np.abs(np.asarray(f(xs), dtype=float) - vec(xs))

    def err_scalar(x: float) -> float:
        return abs(float(f(x)) - scalar(x))

    return _sup_over_set(X, row, err_vec, err_scalar)[0]


def chebyshev_points_on(n: int, a: float, b: float) -> tuple[float, ...]:
    """n Chebyshev points mapped onto [a, b]."""
    if n < 1:
        raise DomainError("need at least one point")
    k = np.arange(1, n + 1)
    t = np.cos((2 * k - 1) * np.pi / (2 * n))
    return tuple((a + b) / 2 + (b - a) / 2 * t)


def best_approx_upper_bound(f: SampledFunction, n: int, X: CompactSet) -> float:
    """Computable upper bound for the degree-n best approximation error.

    Uses the uniform error on X of the degree-n interpolant at Chebyshev
    points of the smallest interval containing X. Always at least the
    true best-approximation error; never a minimax substitute.
    """
    if n < 0:
        raise DomainError("degree must be nonnegative")
    a, b = X.min, X.max
    if a == b:
        return 0.0
    row = np.asarray(chebyshev_points_on(n + 1, a, b))
    values = np.asarray([float(f(x)) for x in row])
    vec, scalar = _interpolant_closures(row, values)

    def err_vec(xs: np.ndarray) -> np.ndarray:
        return np.abs(np.asarray(f(xs), dtype=float) - vec(xs))

    def err_scalar(x: float) -> float:
        return abs(float(f(x)) - scalar(x))

    return _sup_over_set(X, row, err_vec, err_scalar)[0]


@dataclass(frozen=True)
class LemmaCheck:
    """One instance of the near-best bound
    |f - L_n f| <= (1 + Lambda_n) * E-hat_n."""

    passed: bool
    n: int
    uniform_error: float
    lebesgue_constant: float
    best_approx_bound: float
    slack: float


def lebesgue_lemma_check(
    f: SampledFunction, matrix: InterpolationMatrix, n: int, X: CompactSet
) -> LemmaCheck:
    """Verify the near-best inequality for one degree on one set."""
    err = uniform_error(f, matrix, n, X)
    lam, _ = lebesgue_constant(matrix.row(n + 1), X)
    bound = best_approx_upper_bound(f, n, X)
    rhs = (1.0 + lam) * bound
    slack = rhs - err
    return LemmaCheck(slack >= -tolerances.CHAIN_TOL, n, err, lam, bound, slack)


@dataclass(frozen=True)
class ProfileRow:
    n: int
    lambda_max: float
    argmax_x: float
    uniform_error: float
    probe_lambdas: tuple[float, ...]


def convergence_profile(
    f: SampledFunction,
    matrix: InterpolationMatrix,
    X: CompactSet,
    n_max: int,
    probe_points: tuple[float, ...] = (),
) -> list[ProfileRow]:
    """Per-degree table of Lebesgue constant, uniform error, and the
    Lebesgue function at caller-chosen probe points."""
    if n_max < 1:
        raise DomainError("n_max must be at least 1")
    if matrix.depth < n_max + 1:
        raise DomainError(f"matrix depth {matrix.depth} cannot reach degree {n_max}")
    rows = []
    for n in range(1, n_max + 1):
        row = matrix.row(n + 1)
        lam, arg = lebesgue_constant(row, X)
        err = uniform_error(f, matrix, n, X)
        probes = tuple(lebesgue_function(row, p) for p in probe_points)
        rows.append(ProfileRow(n, lam, arg, err, probes))
    return rows


@dataclass(frozen=True)
class GrowthRow:
    """Per-degree growth record. ``ratio_log`` is Lambda_n / log(n + 1)
    and ``lambda_at_nodes_max`` the largest Lebesgue-function value over
    the row's own nodes (1 up to rounding)."""

    n: int
    lambda_max: float
    argmax_x: float
    lambda_at_nodes_max: float
    uniform_error: float
    ratio_log: float


def growth_report(
    matrix: InterpolationMatrix, X: CompactSet, n_max: int, f: SampledFunction
) -> list[GrowthRow]:
    """Growth table for degrees 1..n_max over X, with uniform errors
    of the supplied test function."""
    if n_max < 1:
        raise DomainError("n_max must be at least 1")
    if matrix.depth < n_max + 1:
        raise DomainError(f"matrix depth {matrix.depth} cannot reach degree {n_max}")
    out = []
    for n in range(1, n_max + 1):
        row = matrix.row(n + 1)
        lam, arg = lebesgue_constant(row, X)
        at_nodes = max(lebesgue_function(row, x) for x in row)
        err = uniform_error(f, matrix, n, X)
        out.append(GrowthRow(n, lam, arg, at_nodes, err, lam / math.log(n + 1)))
    return out
