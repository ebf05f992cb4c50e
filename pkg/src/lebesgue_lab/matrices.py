"""Interpolation matrices: triangular node tables and node schemes.

Row n of a matrix holds the n nodes used by the interpolation operator
of degree n - 1. Rows are independent; nestedness (row n contained in
row n + 1) is a property to be checked, not an assumption.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import tolerances
from .errors import DomainError, InputError

__all__ = [
    "NodeSequence",
    "InterpolationMatrix",
    "MatrixValidation",
    "NestedResult",
    "chebyshev_row",
    "equispaced_row",
    "chebyshev_matrix",
    "equispaced_matrix",
    "nested_matrix",
    "validate_matrix",
    "is_nested",
    "affine_transform",
    "leja_order",
    "chebyshev_leja_sequence",
    "load_matrix",
    "save_matrix",
    "load_node_sequence",
    "save_node_sequence",
]


@dataclass(frozen=True)
class NodeSequence:
    """A pairwise distinct sequence of real points, order significant."""

    points: tuple[float, ...]

    def __init__(self, points):
        pts = tuple(float(p) for p in points)
        if not pts:
            raise DomainError("a node sequence must be nonempty")
        if any(not math.isfinite(p) for p in pts):
            raise DomainError("nodes must be finite")
        if len(set(pts)) != len(pts):
            raise DomainError("nodes must be pairwise distinct")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def prefix(self, n: int) -> tuple[float, ...]:
        if not 1 <= n <= len(self.points):
            raise DomainError(f"prefix length {n} outside 1..{len(self.points)}")
        return self.points[:n]


@dataclass(frozen=True)
class InterpolationMatrix:
    """Triangular node table: row n (1-based) holds exactly n nodes.

    ``ambient`` is the declared interval containing every node.
    ``node_tol`` is the equality tolerance used when comparing nodes
    across rows: 0 (exact) for constructed matrices, a small positive
    value for matrices parsed from files.
    """

    rows: tuple[tuple[float, ...], ...]
    ambient: tuple[float, float]
    node_tol: float

    def __init__(self, rows, ambient=None, node_tol=0.0):
        rws = tuple(tuple(float(x) for x in row) for row in rows)
        if not rws:
            raise DomainError("a matrix needs at least one row")
        for i, row in enumerate(rws, start=1):
            if len(row) != i:
                raise DomainError(f"row {i} must hold exactly {i} nodes, got {len(row)}")
            if any(not math.isfinite(x) for x in row):
                raise DomainError(f"row {i} contains a non-finite node")
        lo = min(min(row) for row in rws)
        hi = max(max(row) for row in rws)
        if ambient is None:
            ambient = (lo, hi)
        a, b = float(ambient[0]), float(ambient[1])
        if not (a <= lo and hi <= b):
            raise DomainError(
                f"nodes span [{lo}, {hi}], outside the ambient interval [{a}, {b}]"
            )
        object.__setattr__(self, "rows", rws)
        object.__setattr__(self, "ambient", (a, b))
        object.__setattr__(self, "node_tol", float(node_tol))

    @property
    def depth(self) -> int:
        return len(self.rows)

    def row(self, n: int) -> tuple[float, ...]:
        """Row n, 1-based; the degree n - 1 operator uses this row."""
        if not 1 <= n <= self.depth:
            raise DomainError(f"row {n} outside 1..{self.depth}")
        return self.rows[n - 1]


def chebyshev_row(n: int) -> tuple[float, ...]:
    """The n Chebyshev points cos((2k - 1) pi / (2n)), k = 1..n.

    Strictly decreasing, all inside (-1, 1).
    """
    if n < 1:
        raise DomainError("a row needs at least one node")
    k = np.arange(1, n + 1)
    return tuple(np.cos((2 * k - 1) * np.pi / (2 * n)))


def equispaced_row(n: int, a: float, b: float) -> tuple[float, ...]:
    """n equispaced nodes on [a, b]; the midpoint when n = 1."""
    if n < 1:
        raise DomainError("a row needs at least one node")
    a, b = float(a), float(b)
    if not a < b:
        raise DomainError(f"need a < b, got [{a}, {b}]")
    if n == 1:
        return ((a + b) / 2,)
    return tuple(np.linspace(a, b, n))


def chebyshev_matrix(depth: int) -> InterpolationMatrix:
    """Rows 1..depth of Chebyshev points, ambient [-1, 1]."""
    if depth < 1:
        raise DomainError("depth must be at least 1")
    return InterpolationMatrix(
        [chebyshev_row(n) for n in range(1, depth + 1)], ambient=(-1.0, 1.0)
    )


def equispaced_matrix(depth: int, a: float = -1.0, b: float = 1.0) -> InterpolationMatrix:
    """Rows 1..depth of equispaced nodes on [a, b]."""
    if depth < 1:
        raise DomainError("depth must be at least 1")
    return InterpolationMatrix(
        [equispaced_row(n, a, b) for n in range(1, depth + 1)], ambient=(float(a), float(b))
    )


def nested_matrix(sequence, depth: int) -> InterpolationMatrix:
    """Matrix whose row n is the first n points of ``sequence``."""
    seq = sequence if isinstance(sequence, NodeSequence) else NodeSequence(sequence)
    if not 1 <= depth <= len(seq):
        raise DomainError(f"depth {depth} needs a sequence of at least {depth} points")
    return InterpolationMatrix([seq.prefix(n) for n in range(1, depth + 1)])


@dataclass(frozen=True)
class MatrixValidation:
    """Outcome of a duplicate-node scan. ``violations`` holds one entry
    per offending row: (row index, first colliding position pair),
    1-based."""

    ok: bool
    violations: tuple[tuple[int, int, int], ...]


def validate_matrix(matrix: InterpolationMatrix) -> MatrixValidation:
    """Report every row containing duplicate nodes (exact equality)."""
    violations = []
    for n, row in enumerate(matrix.rows, start=1):
        seen: dict[float, int] = {}
        for pos, x in enumerate(row, start=1):
            if x in seen:
                violations.append((n, seen[x], pos))
                break
            seen[x] = pos
    return MatrixValidation(not violations, tuple(violations))


@dataclass(frozen=True)
class NestedResult:
    """``nested`` with the recovered generating sequence, or the first
    row n (1-based) and node of row n missing from row n + 1."""

    nested: bool
    sequence: NodeSequence | None
    witness: tuple[int, float] | None


def _take_match(pool: list[float], x: float, tol: float) -> bool:
    if tol == 0.0:
        for i, y in enumerate(pool):
            if y == x:
                pool.pop(i)
                return True
        return False
    best, best_dist = -1, tol
    for i, y in enumerate(pool):
        d = abs(y - x)
        if d <= best_dist:
            best, best_dist = i, d
    if best < 0:
        return False
    pool.pop(best)
    return True


def is_nested(matrix: InterpolationMatrix) -> NestedResult:
    """Decide whether each row is contained in the next (as a set).

    On success the canonical generating sequence is returned: its n-th
    point is the unique node of row n absent from row n - 1. Node
    equality is exact for constructed matrices and uses the matrix's
    ``node_tol`` for file-loaded ones.
    """
    tol = matrix.node_tol
    sequence = [matrix.rows[0][0]]
    for n in range(1, matrix.depth):
        prev, cur = matrix.rows[n - 1], matrix.rows[n]
        pool = list(cur)
        for x in prev:
            if not _take_match(pool, x, tol):
                return NestedResult(False, None, (n, x))
        sequence.append(pool[0])
    return NestedResult(True, NodeSequence(sequence), None)


def affine_transform(
    matrix: InterpolationMatrix, alpha: float, beta: float
) -> InterpolationMatrix:
    """Map every node (and the ambient interval) through x -> alpha x + beta."""
    alpha, beta = float(alpha), float(beta)
    if alpha == 0.0 or not (math.isfinite(alpha) and math.isfinite(beta)):
        raise DomainError("alpha must be finite and nonzero, beta finite")
    rows = [tuple(alpha * x + beta for x in row) for row in matrix.rows]
    a, b = (alpha * e + beta for e in matrix.ambient)
    ambient = (min(a, b), max(a, b))
    return InterpolationMatrix(rows, ambient=ambient, node_tol=abs(alpha) * matrix.node_tol)


def leja_order(points) -> tuple[float, ...]:
    """Greedy Leja ordering: start at the largest magnitude point, then
    repeatedly take the point maximizing the product of distances to the
    points already chosen. Ties break toward the larger value first,
    then the earlier position."""
    pts = [float(p) for p in points]
    if len(set(pts)) != len(pts):
        raise DomainError("points must be pairwise distinct")
    start = max(range(len(pts)), key=lambda i: (abs(pts[i]), pts[i]))
    chosen = [pts.pop(start)]
    scores = np.abs(np.asarray(pts) - chosen[0])
    while pts:
        i = int(np.argmax(scores))
        chosen.append(pts.pop(i))
        scores = np.delete(scores, i)
        if pts:
            scores = scores * np.abs(np.asarray(pts) - chosen[-1])
    return tuple(chosen)


def chebyshev_leja_sequence(count: int) -> NodeSequence:
    """Leja ordering of the ``count``-point Chebyshev row. The standard
    node sequence for nested-matrix experiments."""
    return NodeSequence(leja_order(chebyshev_row(count)))


def load_matrix(path) -> InterpolationMatrix:
    """Parse a matrix file: one row per line, space-separated decimals,
    line n holding exactly n entries; '#' starts a comment."""
    rows: list[list[float]] = []
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read matrix file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            vals = [float(tok) for tok in line.split()]
        except ValueError as exc:
            raise InputError(f"{path}:{lineno}: not a decimal row: {raw.strip()!r}") from exc
        expected = len(rows) + 1
        if len(vals) != expected:
            raise InputError(
                f"{path}:{lineno}: row {expected} must hold {expected} entries, got {len(vals)}"
            )
        rows.append(vals)
    if not rows:
        raise InputError(f"{path}: no rows found")
    try:
        return InterpolationMatrix(rows, node_tol=tolerances.FILE_NODE_TOL)
    except DomainError as exc:
        raise InputError(f"{path}: {exc}") from exc


def save_matrix(matrix: InterpolationMatrix, path) -> None:
    lines = [" ".join(f"{x:.17g}" for x in row) for row in matrix.rows]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_node_sequence(path) -> NodeSequence:
    """Parse a node file: one decimal per line, '#' starts a comment."""
    pts: list[float] = []
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read node file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            pts.append(float(line))
        except ValueError as exc:
            raise InputError(f"{path}:{lineno}: not a decimal: {raw.strip()!r}") from exc
    if not pts:
        raise InputError(f"{path}: no nodes found")
    try:
        return NodeSequence(pts)
    except DomainError as exc:
        raise InputError(f"{path}: {exc}") from exc


def save_node_sequence(sequence: NodeSequence, path) -> None:
    Path(path).write_text(
        "\n".join(f"{x:.17g}" for x in sequence.points) + "\n", encoding="utf-8"
    )
