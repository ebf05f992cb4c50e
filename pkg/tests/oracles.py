"""Independent oracles the tests compare the library against.

Everything here is deliberately written the slow, obvious way, avoiding
the library's own evaluation paths: raw product formulas, dense grids,
and exhaustive enumeration. Agreement between these and the fast
implementations is the backbone of the suite.
"""

from __future__ import annotations

import itertools
import math

import numpy as np


def product_fundamental(row, k: int, x: float) -> float:
    """ell_k(x) by the raw product formula (0-based k)."""
    num = 1.0
    den = 1.0
    for j, xj in enumerate(row):
        if j == k:
            continue
        num *= x - xj
        den *= row[k] - xj
    return num / den


def product_lebesgue(row, x: float) -> float:
    """Lebesgue function via the raw products."""
    return sum(abs(product_fundamental(row, k, x)) for k in range(len(row)))


def sign_sup(row, x: float) -> float:
    """max over sign vectors of |sum s_k ell_k(x)|, by explicit product."""
    ells = [product_fundamental(row, k, x) for k in range(len(row))]
    best = 0.0
    for signs in itertools.product((-1.0, 1.0), repeat=len(row)):
        best = max(best, abs(sum(s * e for s, e in zip(signs, ells))))
    return best


def grid_sup(fn, a: float, b: float, count: int = 20001) -> float:
    """Dense-grid supremum of a scalar function on [a, b]."""
    return max(fn(x) for x in np.linspace(a, b, count))


def dd_explicit_sum(f, nodes) -> float:
    """Top divided difference over all the nodes by the direct sum."""
    total = 0.0
    for j, xj in enumerate(nodes):
        den = 1.0
        for i, xi in enumerate(nodes):
            if i != j:
                den *= xj - xi
        total += f(xj) / den
    return total


def horner(coeffs, x: float) -> float:
    """Monomial evaluation, constant term first."""
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def chebyshev_T(k: int, x: float) -> float:
    """Chebyshev polynomial of the first kind by the recurrence."""
    if k == 0:
        return 1.0
    prev, curr = 1.0, x
    for _ in range(k - 1):
        prev, curr = curr, 2.0 * x * curr - prev
    return curr


def chebyshev_T_coeffs(k: int) -> list[float]:
    """Monomial coefficients of T_k, constant term first."""
    prev = [1.0]
    if k == 0:
        return prev
    curr = [0.0, 1.0]
    for _ in range(k - 1):
        nxt = [0.0] + [2.0 * c for c in curr]
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, curr = curr, nxt
    return curr


def separated_rows(rng: np.random.Generator, count: int, sizes, separation: float):
    """Random sorted rows in [-1, 1] with a minimum node separation."""
    rows = []
    while len(rows) < count:
        m = int(rng.integers(sizes[0], sizes[1] + 1))
        pts = np.sort(rng.uniform(-1.0, 1.0, m))
        if m == 1 or np.diff(pts).min() > separation:
            rows.append(tuple(float(v) for v in pts))
    return rows


def geometric_right_porosity_curve(ratio_points, x0: float, radii) -> float:
    """min over radii of (largest free-gap length in (x0, x0+r)) / r for a
    finite point set, by direct interval arithmetic."""
    pts = sorted(ratio_points)
    best = math.inf
    for r in radii:
        lo, hi = x0, x0 + r
        inside = [p for p in pts if lo < p < hi]
        stops = [lo] + inside + [hi]
        lam = max(b - a for a, b in zip(stops, stops[1:]))
        best = min(best, lam / r)
    return best
