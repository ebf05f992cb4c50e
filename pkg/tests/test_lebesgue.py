import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lebesgue_lab.compactset import CompactSet
from lebesgue_lab.errors import DomainError
from lebesgue_lab.functions import closed_form, default_suite, polynomial
from lebesgue_lab.lebesgue import (
    best_approx_upper_bound,
    chebyshev_points_on,
    convergence_profile,
    fundamental_values,
    growth_report,
    lagrange_interpolant,
    lebesgue_constant,
    lebesgue_function,
    lebesgue_lemma_check,
    lebesgue_sup_oracle,
    operator_norm_probe,
    uniform_error,
)
from lebesgue_lab.matrices import (
    affine_transform,
    chebyshev_matrix,
    chebyshev_row,
    equispaced_matrix,
    nested_matrix,
)
from lebesgue_lab.poly import evaluate

import oracles

UNIT = CompactSet.from_interval(-1.0, 1.0)


def separated_rows_strategy():
    return (
        st.lists(
            st.floats(-1.0, 1.0, allow_nan=False, allow_infinity=False),
            min_size=2,
            max_size=7,
            unique=True,
        )
        .map(sorted)
        .filter(lambda xs: min(np.diff(xs)) > 0.02)
        .map(tuple)
    )


class TestFundamentalValues:
    def test_known_triple(self):
        vals = fundamental_values([-1.0, 0.0, 1.0], 0.5)
        assert np.allclose(vals, [-0.125, 0.75, 0.375], atol=1e-15)

    def test_kronecker_rows_at_nodes_bitwise(self):
        row = chebyshev_row(6)
        for k, xk in enumerate(row):
            vals = fundamental_values(row, xk)
            expected = np.zeros(len(row))
            expected[k] = 1.0
            assert (vals == expected).all()

    def test_matches_product_formula(self, rng):
        for row in oracles.separated_rows(rng, 20, (2, 8), 0.02):
            for x in rng.uniform(-1, 1, 5):
                vals = fundamental_values(row, float(x))
                ref = [oracles.product_fundamental(row, k, float(x)) for k in range(len(row))]
                assert np.allclose(vals, ref, rtol=1e-10, atol=1e-10)

    @given(row=separated_rows_strategy(), x=st.floats(-1, 1))
    def test_partition_of_unity(self, row, x):
        assert abs(fundamental_values(row, x).sum() - 1.0) <= 1e-10

    def test_degree_one_linear_interpolation(self):
        vals = fundamental_values([0.0, 1.0], 0.25)
        assert np.allclose(vals, [0.75, 0.25], atol=1e-15)

    def test_nonfinite_point_rejected(self):
        with pytest.raises(DomainError):
            fundamental_values([0.0, 1.0], math.inf)


class TestLebesgueFunction:
    def test_equals_one_at_nodes(self):
        row = chebyshev_row(9)
        for xk in row:
            assert lebesgue_function(row, xk) == 1.0

    def test_at_least_one_everywhere(self, rng):
        for row in oracles.separated_rows(rng, 10, (2, 7), 0.02):
            for x in rng.uniform(-1.5, 1.5, 10):
                assert lebesgue_function(row, float(x)) >= 1.0 - 1e-12

    def test_matches_product_oracle(self, rng):
        for row in oracles.separated_rows(rng, 15, (2, 8), 0.02):
            for x in rng.uniform(-1, 1, 4):
                a = lebesgue_function(row, float(x))
                b = oracles.product_lebesgue(row, float(x))
                assert abs(a - b) <= 1e-10 * max(1.0, b)

    def test_three_node_closed_form(self):
        # On [-1,0,1] the function is 1 + x - x^2 for 0 < x < 1.
        for x in (0.25, 0.5, 0.9):
            assert lebesgue_function([-1.0, 0.0, 1.0], x) == pytest.approx(
                1 + x - x * x, abs=1e-14
            )


class TestSignOracle:
    def test_agrees_with_lebesgue_function(self, rng):
        for row in oracles.separated_rows(rng, 15, (2, 8), 0.01):
            for x in rng.uniform(-1, 1, 3):
                a = lebesgue_function(row, float(x))
                b = lebesgue_sup_oracle(row, float(x))
                assert abs(a - b) <= 1e-10

    def test_agrees_with_external_enumeration(self, rng):
        row = (-0.9, -0.2, 0.3, 0.8)
        for x in rng.uniform(-1, 1, 5):
            assert lebesgue_sup_oracle(row, float(x)) == pytest.approx(
                oracles.sign_sup(row, float(x)), rel=1e-12
            )

    def test_refuses_large_rows(self):
        with pytest.raises(DomainError):
            lebesgue_sup_oracle(tuple(np.linspace(-1, 1, 21)), 0.5)


class TestLebesgueConstant:
    def test_closed_form_three_nodes(self):
        lam, arg = lebesgue_constant([-1.0, 0.0, 1.0], UNIT)
        assert lam == pytest.approx(1.25, abs=1e-8)
        assert abs(arg) == pytest.approx(0.5, abs=1e-4)
        assert arg < 0  # smallest maximizer among the +-0.5 tie

    def test_chebyshev_three_nodes(self):
        lam, arg = lebesgue_constant(chebyshev_row(3), UNIT)
        assert lam == pytest.approx(5.0 / 3.0, abs=1e-8)
        assert arg == pytest.approx(-1.0, abs=1e-8)

    def test_finite_set_is_exact_max(self):
        X = CompactSet.from_points([-1.0, -0.25, 0.4, 1.0])
        row = (-1.0, 0.0, 1.0)
        lam, arg = lebesgue_constant(row, X)
        vals = {x: lebesgue_function(row, x) for x in (-1.0, -0.25, 0.4, 1.0)}
        assert lam == max(vals.values())
        assert arg == min(x for x, v in vals.items() if v == lam)

    def test_constant_equals_own_nodes_value_when_set_is_nodes(self):
        row = (-0.5, 0.25, 0.75)
        lam, arg = lebesgue_constant(row, CompactSet.from_points(row))
        assert lam == 1.0
        assert arg == -0.5

    def test_beats_dense_grid(self, rng):
        for row in oracles.separated_rows(rng, 5, (3, 6), 0.05):
            lam, _ = lebesgue_constant(row, UNIT)
            grid = oracles.grid_sup(lambda x: oracles.product_lebesgue(row, x), -1, 1)
            assert lam >= grid - 1e-6
            assert lam <= grid + 0.05 * max(1.0, grid)

    def test_multicomponent_set(self):
        X = CompactSet([(-1.0, -0.5), (0.5, 0.5), (0.75, 1.0)])
        row = chebyshev_row(4)
        lam, arg = lebesgue_constant(row, X)
        pieces = [
            oracles.grid_sup(lambda x: oracles.product_lebesgue(row, x), -1.0, -0.5),
            oracles.product_lebesgue(row, 0.5),
            oracles.grid_sup(lambda x: oracles.product_lebesgue(row, x), 0.75, 1.0),
        ]
        assert lam == pytest.approx(max(pieces), rel=1e-6)

    def test_equispaced_thirty_diverges(self):
        row = equispaced_matrix(31).row(31)
        lam, _ = lebesgue_constant(row, UNIT)
        assert lam / math.log(31) > 100


class TestAffineInvariance:
    def test_pointwise_values_invariant(self, rng):
        for _ in range(50):
            m = int(rng.integers(2, 9))
            row = None
            while row is None:
                pts = np.sort(rng.uniform(-1, 1, m))
                if m == 1 or np.diff(pts).min() > 0.1:
                    row = tuple(pts)
            alpha = float(rng.uniform(0.3, 3.0)) * (1 if rng.uniform() < 0.5 else -1)
            beta = float(rng.uniform(-2.0, 2.0))
            x = float(rng.uniform(-1, 1))
            before = lebesgue_function(row, x)
            after = lebesgue_function([alpha * v + beta for v in row], alpha * x + beta)
            assert abs(before - after) <= 1e-12 * max(1.0, before)

    def test_constant_invariant_under_matrix_transform(self):
        m = chebyshev_matrix(6)
        t = affine_transform(m, 2.0, 0.5)
        lam_m, _ = lebesgue_constant(m.row(5), UNIT)
        lam_t, _ = lebesgue_constant(t.row(5), CompactSet.from_interval(-1.5, 2.5))
        assert lam_t == pytest.approx(lam_m, rel=1e-7)


class TestInterpolant:
    def test_projection_reproduces_polynomials(self, rng):
        f = polynomial([0.5, -1.0, 0.0, 2.0])
        row = chebyshev_row(6)
        form = lagrange_interpolant(f, row)
        for x in rng.uniform(-1, 1, 50):
            assert abs(evaluate(form, float(x)) - f(float(x))) <= 1e-9 * (
                1 + abs(f(float(x)))
            )

    def test_interpolates_stored_values_bitwise(self):
        f = closed_form("runge")
        row = chebyshev_row(5)
        form = lagrange_interpolant(f, row)
        for xk in row:
            assert evaluate(form, xk) == float(f(xk))


class TestUniformError:
    def test_polynomial_projection_error_zero(self):
        f = polynomial([1.0, 2.0, -1.0, 0.5])
        M = chebyshev_matrix(10)
        for n in range(3, 9):
            assert uniform_error(f, M, n, UNIT) <= 1e-9

    def test_runge_error_at_degree_matches_grid(self):
        f = closed_form("runge")
        M = chebyshev_matrix(9)
        err = uniform_error(f, M, 8, UNIT)
        form = lagrange_interpolant(f, M.row(9))
        grid = oracles.grid_sup(lambda x: abs(f(x) - evaluate(form, x)), -1, 1)
        assert err == pytest.approx(grid, rel=1e-6, abs=1e-9)

    def test_degree_needs_row(self):
        with pytest.raises(DomainError):
            uniform_error(closed_form("abs"), chebyshev_matrix(3), 3, UNIT)


class TestBestApproxBound:
    def test_abs_degree_one_value(self):
        # Chebyshev 2-point interpolant of |x| is the constant sqrt(2)/2.
        bound = best_approx_upper_bound(closed_form("abs"), 1, UNIT)
        assert bound == pytest.approx(math.sqrt(2) / 2, abs=1e-8)

    def test_upper_bounds_true_best_error_for_abs(self):
        # The true degree-1 best approximation error of |x| on [-1, 1]
        # is 1/2 (equioscillation at 0 and +-1 around max(1/2, ...)).
        bound = best_approx_upper_bound(closed_form("abs"), 1, UNIT)
        assert bound >= 0.5 - 1e-12

    def test_polynomial_reproduced(self):
        f = polynomial([0.25, 0.0, 1.0])
        assert best_approx_upper_bound(f, 2, UNIT) <= 1e-12

    def test_single_point_set(self):
        X = CompactSet.from_points([0.3])
        assert best_approx_upper_bound(closed_form("runge"), 4, X) == 0.0

    def test_chebyshev_points_on_interval(self):
        pts = chebyshev_points_on(3, 0.0, 2.0)
        assert len(pts) == 3
        assert all(0 < p < 2 for p in pts)
        assert pts[1] == pytest.approx(1.0, abs=1e-15)


class TestLebesgueLemma:
    def test_slack_nonnegative_for_suite(self):
        M = chebyshev_matrix(9)
        for f in default_suite():
            for n in (2, 5, 8):
                check = lebesgue_lemma_check(f, M, n, UNIT)
                assert check.passed
                assert check.slack >= -1e-8
                assert check.lebesgue_constant >= 1.0

    def test_fields_consistent(self):
        check = lebesgue_lemma_check(closed_form("runge"), chebyshev_matrix(6), 5, UNIT)
        rhs = (1 + check.lebesgue_constant) * check.best_approx_bound
        assert check.slack == pytest.approx(rhs - check.uniform_error, rel=1e-12)


class TestProfiles:
    def test_runge_chebyshev_errors_decrease_in_degree_steps_of_two(self):
        # runge is even, so only same-parity degrees compare cleanly
        rows = convergence_profile(closed_form("runge"), chebyshev_matrix(15), UNIT, 14)
        errs = {r.n: r.uniform_error for r in rows}
        for n in range(3, 15):
            assert errs[n] < errs[n - 2]
        assert errs[14] < 0.05

    def test_probe_points_column(self):
        rows = convergence_profile(
            closed_form("abs"), chebyshev_matrix(4), UNIT, 3, probe_points=(0.0, 1.0)
        )
        for r in rows:
            assert len(r.probe_lambdas) == 2
            assert all(v >= 1.0 - 1e-12 for v in r.probe_lambdas)

    def test_depth_guard(self):
        with pytest.raises(DomainError):
            convergence_profile(closed_form("abs"), chebyshev_matrix(3), UNIT, 5)


class TestGrowthReport:
    def test_chebyshev_ratio_bounded(self):
        rows = growth_report(chebyshev_matrix(13), UNIT, 12, closed_form("runge"))
        for r in rows:
            assert r.lambda_max <= (2 / math.pi) * math.log(r.n + 1) + 1.1
            assert r.ratio_log == pytest.approx(r.lambda_max / math.log(r.n + 1))
            assert r.lambda_at_nodes_max == pytest.approx(1.0, abs=1e-12)

    def test_nested_matrix_over_own_nodes(self):
        # Once row n+1 contains every point of X, the sup over X is the
        # node value 1; below that the constant may exceed 1.
        seq = (0.0, 1.0, -1.0)
        M = nested_matrix(seq, 3)
        X = CompactSet.from_points(seq)
        rows = growth_report(M, X, 2, closed_form("abs"))
        by_n = {r.n: r for r in rows}
        assert by_n[2].lambda_max == 1.0
        assert by_n[1].lambda_max == pytest.approx(3.0)  # lambda_1(-1) on (0, 1)

    def test_degree_range_guard(self):
        with pytest.raises(DomainError):
            growth_report(chebyshev_matrix(3), UNIT, 3, closed_form("abs"))


class TestOperatorNormProbe:
    def test_exhaustive_probe_matches_constant(self):
        row = chebyshev_row(4)
        lam, _ = lebesgue_constant(row, UNIT)
        probe = operator_norm_probe(row, UNIT, trials=16)
        assert probe == pytest.approx(lam, abs=1e-7)

    def test_random_probe_is_lower_bound(self, rng):
        row = chebyshev_row(6)
        lam, _ = lebesgue_constant(row, UNIT)
        probe = operator_norm_probe(row, UNIT, trials=5, rng=rng)
        assert probe <= lam + 1e-9
        assert probe >= 1.0 - 1e-12

    def test_trials_guard(self):
        with pytest.raises(DomainError):
            operator_norm_probe(chebyshev_row(3), UNIT, trials=0)
