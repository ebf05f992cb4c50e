"""Newton machinery and interpolating-basis verification.

A sequence of polynomials p_1, p_2, ... with deg p_k = k - 1 is an
interpolating basis for a node sequence exactly when it shows the
triangular zero pattern p_k(x_j) = 0 for j < k and p_k(x_k) != 0. The
canonical monic example is the Newton sequence pi_k = prod_{j<k}(x-x_j);
dividing by pi_k(x_k) gives the Lagrange-normalized one. This module
builds those bases, checks the zero pattern on candidates, recovers the
nodes hidden in a candidate's roots, and verifies that Newton partial
sums reproduce the Lagrange interpolation operators.

All zero tests are relative to the polynomial's largest monomial
coefficient, so verdicts are invariant under rescaling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import tolerances
from .errors import DomainError, InputError
from .functions import SampledFunction, hat
from .lebesgue import lagrange_interpolant
from .matrices import InterpolationMatrix
from .poly import (
    BarycentricForm,
    MonomialForm,
    NewtonForm,
    PolynomialForm,
    degree,
    evaluate,
    to_monomial,
)

__all__ = [
    "DividedDifferenceTable",
    "divided_differences",
    "newton_basis",
    "lagrange_basis",
    "partial_sum",
    "BasisCandidate",
    "InterpolationCheck",
    "check_interpolating",
    "RecoveryResult",
    "recover_nodes",
    "rescale_basis",
    "SumsEqualVerdict",
    "partial_sums_equal",
    "ChainReport",
    "projection_chain_check",
    "newton_lagrange_equivalence",
    "node_isolating_hat",
    "newton_candidate",
    "lagrange_candidate",
    "load_polynomials",
    "load_basis",
    "save_basis",
]

RECOVERY_DEGREE_LIMIT = 12


def _checked_nodes(nodes, minimum: int) -> tuple[float, ...]:
    nd = tuple(float(v) for v in nodes)
    if len(nd) < minimum:
        raise DomainError(f"need at least {minimum} nodes, got {len(nd)}")
    if any(not math.isfinite(v) for v in nd):
        raise DomainError("nodes must be finite")
    if len(set(nd)) != len(nd):
        raise DomainError("nodes must be pairwise distinct")
    return nd


@dataclass(frozen=True)
class DividedDifferenceTable:
    """Top edge of the divided-difference triangle: ``table[k - 1]`` is
    the order-k difference over the first k nodes, so ``table[0]`` is
    the plain function value at the first node."""

    nodes: tuple[float, ...]
    table: tuple[float, ...]
    method: str


def _dd_recursive(values: list[float], nodes: tuple[float, ...]) -> list[float]:
    cs = list(values)
    for j in range(1, len(cs)):
        for i in range(len(cs) - 1, j - 1, -1):
            cs[i] = (cs[i] - cs[i - 1]) / (nodes[i] - nodes[i - j])
    return cs


def _dd_explicit(values: list[float], nodes: tuple[float, ...]) -> list[float]:
    # Direct sum f[x_1..x_k] = sum_j f(x_j) / prod_{i != j} (x_j - x_i).
    out = []
    xs = np.asarray(nodes)
    for k in range(1, len(nodes) + 1):
        head = xs[:k]
        diff = head[:, None] - head[None, :]
        np.fill_diagonal(diff, 1.0)
        out.append(float(np.sum(np.asarray(values[:k]) / diff.prod(axis=1))))
    return out


def divided_differences(
    f: SampledFunction, nodes, method: str = "recursive"
) -> DividedDifferenceTable:
    """Divided differences of f over the leading node prefixes.

    ``method="recursive"`` uses the neighbor-difference recursion (the
    default; better conditioned). ``method="explicit"`` evaluates the
    direct sum over inverse node-difference products. The two agree to
    high relative accuracy on well-separated nodes and serve as oracles
    for each other.
    """
    nd = _checked_nodes(nodes, 1)
    if method not in ("recursive", "explicit"):
        raise InputError(f"unknown divided-difference method {method!r}")
    values = [float(f(x)) for x in nd]
    if method == "recursive":
        table = _dd_recursive(values, nd)
    else:
        table = _dd_explicit(values, nd)
    return DividedDifferenceTable(nd, tuple(table), method)


def newton_basis(nodes, k: int) -> NewtonForm:
    """The monic product over the first k - 1 nodes (constant 1 at k=1)."""
    if k < 1:
        raise DomainError(f"basis index must be at least 1, got {k}")
    nd = _checked_nodes(nodes, k - 1)
    coeffs = (0.0,) * (k - 1) + (1.0,)
    return NewtonForm(nd[: k - 1], coeffs)


def lagrange_basis(nodes, k: int) -> BarycentricForm:
    """The k-th Newton polynomial normalized to value 1 at node k.

    Returned in barycentric form over the first k nodes with the values
    (0, ..., 0, 1), which makes the zero pattern and the normalization
    hold bitwise.
    """
    if k < 1:
        raise DomainError(f"basis index must be at least 1, got {k}")
    nd = _checked_nodes(nodes, k)
    values = (0.0,) * (k - 1) + (1.0,)
    return BarycentricForm(nd[:k], values)


def partial_sum(f: SampledFunction, n: int, nodes) -> NewtonForm:
    """Newton expansion of f truncated after n terms.

    Interpolates f at the first n nodes; for f a polynomial of degree
    under n the expansion reproduces it because the higher differences
    vanish.
    """
    if n < 1:
        raise DomainError(f"need at least one term, got n={n}")
    nd = _checked_nodes(nodes, n)
    table = divided_differences(f, nd[:n]).table
    return NewtonForm(nd[:n], table)


@dataclass(frozen=True)
class BasisCandidate:
    """A finite polynomial sequence proposed as an interpolating basis.

    Construction enforces the degree ladder deg p_k = k - 1 (which also
    rules out identically zero members); ``monomials`` caches the
    monomial conversion used for scales and degrees.
    """

    polys: tuple[PolynomialForm, ...]
    claimed_nodes: tuple[float, ...] | None
    monomials: tuple[MonomialForm, ...]

    def __init__(self, polys, claimed_nodes=None):
        ps = tuple(polys)
        if not ps:
            raise InputError("a basis candidate needs at least one polynomial")
        monos = tuple(to_monomial(p) for p in ps)
        for k, mono in enumerate(monos, start=1):
            d = degree(mono)
            if d is None or d != k - 1:
                got = "zero" if d is None else str(d)
                raise InputError(
                    f"polynomial {k} must have degree {k - 1}, got {got}"
                )
        claimed = None if claimed_nodes is None else tuple(float(v) for v in claimed_nodes)
        object.__setattr__(self, "polys", ps)
        object.__setattr__(self, "claimed_nodes", claimed)
        object.__setattr__(self, "monomials", monos)

    def __len__(self) -> int:
        return len(self.polys)


def newton_candidate(nodes, count: int) -> BasisCandidate:
    """Basis candidate of the first ``count`` Newton polynomials."""
    nd = _checked_nodes(nodes, max(count - 1, 0))
    return BasisCandidate([newton_basis(nd, k) for k in range(1, count + 1)], nd)


def lagrange_candidate(nodes, count: int) -> BasisCandidate:
    """Basis candidate of the first ``count`` Lagrange-normalized members."""
    nd = _checked_nodes(nodes, count)
    return BasisCandidate([lagrange_basis(nd, k) for k in range(1, count + 1)], nd)


@dataclass(frozen=True)
class InterpolationCheck:
    """Zero-pattern verdict. On failure (k, j) is the first offending
    pair in lexicographic order, j = k meaning a vanishing diagonal."""

    passed: bool
    k: int | None = None
    j: int | None = None
    value: float | None = None


def check_interpolating(basis: BasisCandidate, nodes) -> InterpolationCheck:
    """Test the triangular zero pattern of the basis on the nodes.

    Passes iff |p_k(x_j)| <= tol * scale_k for all j < k and
    |p_k(x_k)| > tol * scale_k, with scale_k the largest monomial
    coefficient magnitude of p_k. A verdict, never an error.
    """
    nd = _checked_nodes(nodes, len(basis))
    for k in range(1, len(basis) + 1):
        p = basis.polys[k - 1]
        scale = max(abs(c) for c in basis.monomials[k - 1].coeffs)
        cut = tolerances.ZERO_PATTERN_TOL * scale
        for j in range(1, k + 1):
            v = evaluate(p, nd[j - 1])
            if j < k and abs(v) > cut:
                return InterpolationCheck(False, k, j, v)
            if j == k and abs(v) <= cut:
                return InterpolationCheck(False, k, k, v)
    return InterpolationCheck(True)


@dataclass(frozen=True)
class RecoveryResult:
    """Outcome of reading the nodes off a candidate's roots."""

    ok: bool
    nodes: tuple[float, ...] | None = None
    reason: str | None = None
    residuals: tuple[float, ...] | None = None


def _sorted_roots(mono: MonomialForm) -> np.ndarray:
    # numpy wants the leading coefficient first; eigenvalue order is
    # platform-dependent, so sort for determinism.
    rs = np.roots(np.asarray(mono.coeffs[::-1]))
    order = np.lexsort((rs.imag, rs.real))
    return rs[order]


def recover_nodes(basis: BasisCandidate) -> RecoveryResult:
    """Recover the node sequence determined by the basis.

    The first node is the zero of p_2; thereafter node k is the root of
    p_{k+1} left over once the earlier nodes are matched and removed.
    Roots come from the companion matrix, capped at degree
    ``RECOVERY_DEGREE_LIMIT``; complex leftovers, unmatched earlier
    nodes, or large evaluation residuals report failure instead of
    guessing. The recovered sequence reproduces the zero pattern of the
    basis by construction, which is re-verified before returning.
    """
    if len(basis) < 2:
        raise DomainError("node recovery needs at least two polynomials")
    if len(basis) - 1 > RECOVERY_DEGREE_LIMIT:
        return RecoveryResult(
            False,
            reason=f"unsupported degree {len(basis) - 1} "
            f"(limit {RECOVERY_DEGREE_LIMIT})",
        )
    found: list[float] = []
    residuals: list[float] = []
    for k in range(1, len(basis)):
        mono = basis.monomials[k]
        roots = list(_sorted_roots(mono))
        for prev in found:
            dists = [abs(r - prev) for r in roots]
            i = int(np.argmin(dists))
            if dists[i] > tolerances.ROOT_MATCH_TOL * (1.0 + abs(prev)):
                return RecoveryResult(
                    False,
                    reason=f"polynomial {k + 1} has no root near the "
                    f"recovered node {prev!r}",
                    residuals=tuple(residuals),
                )
            roots.pop(i)
        r = roots[0]
        if abs(r.imag) > tolerances.ROOT_MATCH_TOL * (1.0 + abs(r.real)):
            return RecoveryResult(
                False,
                reason=f"polynomial {k + 1} leaves a complex root {r!r}",
                residuals=tuple(residuals),
            )
        x = float(r.real)
        scale = max(abs(c) for c in mono.coeffs)
        res = abs(evaluate(mono, x)) / scale
        if res > tolerances.ROOT_RESIDUAL_TOL:
            return RecoveryResult(
                False,
                reason=f"root {x!r} of polynomial {k + 1} has relative "
                f"residual {res:.3e}",
                residuals=tuple(residuals),
            )
        found.append(x)
        residuals.append(res)
    if len(set(found)) != len(found):
        return RecoveryResult(
            False,
            reason="recovered nodes are not pairwise distinct",
            residuals=tuple(residuals),
        )
    head = BasisCandidate(basis.polys[: len(found)])
    verdict = check_interpolating(head, found)
    if not verdict.passed:
        return RecoveryResult(
            False,
            reason=f"recovered nodes violate the zero pattern at "
            f"(k={verdict.k}, j={verdict.j})",
            residuals=tuple(residuals),
        )
    return RecoveryResult(True, tuple(found), residuals=tuple(residuals))


def _scaled_form(form: PolynomialForm, lam: float) -> PolynomialForm:
    if isinstance(form, MonomialForm):
        return MonomialForm([lam * c for c in form.coeffs])
    if isinstance(form, NewtonForm):
        return NewtonForm(form.nodes, [lam * c for c in form.coeffs])
    return BarycentricForm(form.nodes, [lam * v for v in form.values], form.weights)


def rescale_basis(basis: BasisCandidate, lambdas) -> BasisCandidate:
    """Multiply member k by lambdas[k - 1]; zero factors are refused."""
    lams = [float(v) for v in lambdas]
    if len(lams) != len(basis):
        raise DomainError(f"need {len(basis)} factors, got {len(lams)}")
    if any(v == 0.0 or not math.isfinite(v) for v in lams):
        raise DomainError("rescaling factors must be finite and nonzero")
    polys = [_scaled_form(p, lam) for p, lam in zip(basis.polys, lams)]
    return BasisCandidate(polys, basis.claimed_nodes)


def _triangular_sum_values(
    basis: BasisCandidate, nodes: tuple[float, ...], fvals: list[float], xs: np.ndarray
) -> np.ndarray:
    # Coefficients y solving the lower-triangular interpolation system
    # sum_{k<=j} y_k p_k(x_j) = f(x_j), then the sum evaluated at xs.
    n = len(basis)
    pmat = np.array([[evaluate(p, x) for p in basis.polys] for x in nodes[:n]])
    y = np.zeros(n)
    for j in range(n):
        y[j] = (fvals[j] - pmat[j, :j] @ y[:j]) / pmat[j, j]
    samples = np.array([[evaluate(p, float(x)) for p in basis.polys] for x in xs])
    return samples @ y


@dataclass(frozen=True)
class SumsEqualVerdict:
    """Whether two bases generate identical partial-sum operators.

    ``lambdas`` carries the inferred per-member factors when the bases
    match member-by-member up to scale."""

    equal: bool
    lambdas: tuple[float, ...] | None = None
    witness: str | None = None


def partial_sums_equal(
    basis_a: BasisCandidate, basis_b: BasisCandidate, nodes, fs
) -> SumsEqualVerdict:
    """Decide whether two bases give the same partial sums everywhere.

    This holds exactly when member k of one basis is a nonzero multiple
    of member k of the other. The factors are inferred from leading
    coefficients and verified coefficientwise; the partial sums of the
    supplied test functions are then compared at sample points over the
    node hull as a semantic cross-check.
    """
    if len(basis_a) != len(basis_b):
        raise InputError(
            f"bases must have equal length, got {len(basis_a)} and {len(basis_b)}"
        )
    nd = _checked_nodes(nodes, len(basis_a))
    lams = []
    for k, (ma, mb) in enumerate(zip(basis_a.monomials, basis_b.monomials), start=1):
        lam = ma.coeffs[-1] / mb.coeffs[-1]
        ca = np.asarray(ma.coeffs)
        cb = np.asarray(mb.coeffs)
        scale = np.abs(ca).max()
        if np.abs(ca - lam * cb).max() > tolerances.BASIS_CHANGE_TOL * scale:
            return SumsEqualVerdict(
                False, witness=f"member {k} is not a scalar multiple of its partner"
            )
        lams.append(lam)
    xs = np.linspace(min(nd), max(nd), 2 * len(basis_a) + 3)
    for f in fs:
        fvals = [float(f(x)) for x in nd[: len(basis_a)]]
        sa = _triangular_sum_values(basis_a, nd, fvals, xs)
        sb = _triangular_sum_values(basis_b, nd, fvals, xs)
        gap = np.abs(sa - sb).max()
        if gap > tolerances.CHAIN_TOL * (1.0 + np.abs(sa).max()):
            return SumsEqualVerdict(
                False,
                witness=f"partial sums of {f.name} differ by {gap:.3e}",
            )
    return SumsEqualVerdict(True, tuple(lams))


def _interpolant_on(values_fn, row: tuple[float, ...]) -> BarycentricForm:
    return BarycentricForm(row, [float(values_fn(x)) for x in row])


@dataclass(frozen=True)
class ChainReport:
    """Per-condition outcome of the projection-chain checks.

    Chain and commutation compare composed interpolation operators at
    sample points for consecutive degrees; the degree condition asks
    that interpolant degrees never drop as the degree index grows.
    Witnesses are the first failures in (n, function, sample) order.
    """

    chain_ok: bool
    commutation_ok: bool
    degree_ok: bool
    chain_witness: tuple | None = None
    commutation_witness: tuple | None = None
    degree_witness: tuple | None = None

    @property
    def all_ok(self) -> bool:
        return self.chain_ok and self.commutation_ok and self.degree_ok


def projection_chain_check(matrix: InterpolationMatrix, fs, N: int) -> ChainReport:
    """Check the three projection-chain conditions up to degree N.

    For every f and every n: (i) L_n applied after L_{n+1} returns
    L_n f (chain), (ii) the two compositions of L_n and L_{n+1} agree
    (commutation), both at 2N + 3 equispaced sample points over the
    ambient interval for n = 1..N-1; and (iii) deg L_n f is
    nondecreasing for n = 1..N. Nested matrices pass all three; at
    N = 1 the chain and commutation parts are vacuous.
    """
    if N < 1:
        raise DomainError("N must be at least 1")
    if matrix.depth < N + 1:
        raise DomainError(f"matrix depth {matrix.depth} cannot reach degree {N}")
    a, b = matrix.ambient
    xs = np.linspace(a, b, 2 * N + 3)
    chain_w = None
    comm_w = None
    deg_w = None
    for f in fs:
        forms = {
            n: _interpolant_on(f, matrix.row(n + 1)) for n in range(0, N + 1)
        }
        for n in range(1, N):
            low, high = forms[n], forms[n + 1]
            low_of_high = _interpolant_on(high, matrix.row(n + 1))
            high_of_low = _interpolant_on(low, matrix.row(n + 2))
            for x in xs:
                x = float(x)
                lhs = evaluate(low_of_high, x)
                ref = evaluate(low, x)
                tol = tolerances.CHAIN_TOL * (1.0 + max(abs(lhs), abs(ref)))
                if chain_w is None and abs(lhs - ref) > tol:
                    chain_w = (n, f.name, x, lhs, ref)
                rhs = evaluate(high_of_low, x)
                tol = tolerances.CHAIN_TOL * (1.0 + max(abs(lhs), abs(rhs)))
                if comm_w is None and abs(lhs - rhs) > tol:
                    comm_w = (n, f.name, x, lhs, rhs)
        degs = {n: degree(forms[n]) for n in range(0, N + 1)}
        for n in range(1, N + 1):
            prev = -1 if degs[n - 1] is None else degs[n - 1]
            curr = -1 if degs[n] is None else degs[n]
            if deg_w is None and curr < prev:
                deg_w = (n, f.name, prev, curr)
    return ChainReport(
        chain_w is None, comm_w is None, deg_w is None, chain_w, comm_w, deg_w
    )


def newton_lagrange_equivalence(f: SampledFunction, nodes, n: int) -> float:
    """Largest gap between the two routes to the same interpolant.

    Compares the barycentric interpolant on the first n + 1 nodes with
    the (n + 1)-term Newton expansion at 100 equispaced points over the
    hull of those nodes. Zero in exact arithmetic; the return value
    measures conditioning of the node ordering.
    """
    nd = _checked_nodes(nodes, n + 1)
    head = nd[: n + 1]
    lag = lagrange_interpolant(f, head)
    new = partial_sum(f, n + 1, nd)
    xs = np.linspace(min(head), max(head), 100)
    return float(
        max(abs(evaluate(lag, float(x)) - evaluate(new, float(x))) for x in xs)
    )


def node_isolating_hat(matrix: InterpolationMatrix, n: int) -> SampledFunction:
    """A hat equal to 1 at a node of row n + 1 and 0 on all of row n + 2.

    Picks the row-(n + 1) node farthest from row n + 2 and shrinks the
    hat inside that gap; the interpolant of degree n + 1 then vanishes
    identically while the degree-n one does not, which is the standard
    way to break the chain condition on non-nested rows.
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    if matrix.depth < n + 2:
        raise DomainError(f"matrix depth {matrix.depth} has no row {n + 2}")
    row = matrix.row(n + 1)
    nxt = np.asarray(matrix.row(n + 2))
    gaps = [float(np.abs(nxt - x).min()) for x in row]
    i = int(np.argmax(gaps))
    if gaps[i] == 0.0:
        raise DomainError(
            f"every node of row {n + 1} recurs in row {n + 2}; no separating hat"
        )
    return hat(row[i], 0.49 * gaps[i])


def load_polynomials(path) -> list[MonomialForm]:
    """Read raw polynomials from a basis file without basis validation.

    One polynomial per line as space-separated monomial coefficients,
    constant term first; '#' starts a comment.
    """
    polys = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                coeffs = [float(tok) for tok in line.split()]
            except ValueError as exc:
                raise InputError(f"{path}:{lineno}: {exc}") from None
            polys.append(MonomialForm(coeffs))
    if not polys:
        raise InputError(f"{path}: no polynomials found")
    return polys


def load_basis(path) -> BasisCandidate:
    """Read a basis candidate from a text file.

    Same format as ``load_polynomials``; the degree ladder is enforced
    on construction.
    """
    return BasisCandidate(load_polynomials(path))


def save_basis(path, basis: BasisCandidate) -> None:
    """Write the monomial coefficients, one polynomial per line."""
    with open(path, "w", encoding="utf-8") as fh:
        for mono in basis.monomials:
            fh.write(" ".join("%.17g" % c for c in mono.coeffs) + "\n")
