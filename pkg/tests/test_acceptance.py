"""Acceptance checks for the whole package, one verdict line each.

Run with ``python3 -m pytest -s tests/test_acceptance.py`` to see the
thirteen ``ACCEPTANCE NN <name>: PASS`` lines; each check also asserts,
so a plain pytest run fails loudly on any regression.
"""

import math
import time

import numpy as np

from lebesgue_lab.cli import main
from lebesgue_lab.compactset import (
    CompactSet,
    isolation_criterion,
    lower_porosity,
    make_cantor,
    make_geometric_set,
    save_set,
)
from lebesgue_lab.faber import (
    BasisCandidate,
    check_interpolating,
    divided_differences,
    lagrange_candidate,
    newton_candidate,
    newton_lagrange_equivalence,
    node_isolating_hat,
    projection_chain_check,
    recover_nodes,
    rescale_basis,
    save_basis,
)
from lebesgue_lab.functions import closed_form, default_suite, polynomial
from lebesgue_lab.lebesgue import (
    lebesgue_constant,
    lebesgue_function,
    lebesgue_sup_oracle,
)
from lebesgue_lab.matrices import (
    chebyshev_leja_sequence,
    chebyshev_matrix,
    chebyshev_row,
    equispaced_matrix,
    equispaced_row,
    nested_matrix,
)

UNIT = CompactSet.from_interval(-1.0, 1.0)
SEED = 20260816


class criterion:
    """Collects sub-check failures and prints exactly one verdict line."""

    def __init__(self, num, name):
        self.num = num
        self.name = name
        self.failures = []
        self.detail = ""

    def require(self, ok, note):
        if not ok:
            self.failures.append(note)

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc is not None:
            print(f"ACCEPTANCE {self.num:02d} {self.name}: FAIL ({exc_type.__name__}: {exc})")
            return False
        status = "PASS" if not self.failures else "FAIL"
        note = self.detail if not self.failures else "; ".join(self.failures[:3])
        line = f"ACCEPTANCE {self.num:02d} {self.name}: {status}"
        if note:
            line += f" ({note})"
        print(line)
        assert not self.failures, line
        return False


def _separated_row(rng, count, separation):
    while True:
        pts = np.sort(rng.uniform(-1.0, 1.0, count))
        if count == 1 or np.diff(pts).min() > separation:
            return tuple(float(p) for p in pts)


def _jittered_row(rng, count):
    # a random perturbation of a structured row keeps the Lebesgue
    # function moderate, so an absolute tolerance stays meaningful
    # (uneven rows reach lambda ~ 1e6, where one ulp already exceeds it)
    base = np.asarray(chebyshev_row(count)) if rng.uniform() < 0.5 else np.linspace(-1.0, 1.0, count)
    if count == 1:
        return (float(base[0]),)
    jitter = rng.uniform(-0.3, 0.3, count) * np.diff(base).min() / 2.0
    return tuple(float(p) for p in np.sort(base + jitter))


def test_01_sign_enumeration_oracle_equivalence():
    with criterion(1, "sign-enumeration oracle equivalence") as c:
        rng = np.random.default_rng(SEED)
        start = time.perf_counter()
        worst = 0.0
        for _ in range(100):
            n = int(rng.integers(1, 9))
            row = _jittered_row(rng, n + 1)
            for x in rng.uniform(-1.0, 1.0, 10):
                gap = abs(lebesgue_sup_oracle(row, float(x)) - lebesgue_function(row, float(x)))
                worst = max(worst, gap)
        elapsed = time.perf_counter() - start
        c.require(worst <= 1e-10, f"worst gap {worst:.2e} above 1e-10")
        c.require(elapsed < 10.0, f"took {elapsed:.1f}s, limit 10s")
        c.detail = f"worst gap {worst:.1e} over 1000 points, {elapsed:.1f}s"


def test_02_unit_lebesgue_function_at_nodes():
    with criterion(2, "unit Lebesgue function at matrix nodes") as c:
        matrices = {
            "chebyshev": chebyshev_matrix(41),
            "equispaced": equispaced_matrix(41),
            "nested-leja": nested_matrix(chebyshev_leja_sequence(41), 41),
        }
        worst = 0.0
        for label, matrix in matrices.items():
            for n in range(1, 42):
                row = matrix.row(n)
                for xk in row:
                    gap = abs(lebesgue_function(row, xk) - 1.0)
                    worst = max(worst, gap)
                    c.require(gap <= 1e-12, f"{label} row {n}: |lambda - 1| = {gap:.2e}")
        c.detail = f"3 matrices, rows to 41 nodes, worst |lambda - 1| = {worst:.1e}"


def test_03_three_node_closed_form_constant():
    with criterion(3, "three-node closed-form constant") as c:
        lam, arg = lebesgue_constant((-1.0, 0.0, 1.0), UNIT)
        c.require(abs(lam - 1.25) <= 1e-8, f"constant {lam!r} != 1.25")
        c.require(abs(abs(arg) - 0.5) <= 1e-4, f"argmax {arg!r} not at +-0.5")
        c.detail = f"constant {lam:.10f} at x = {arg:.6f}"


def test_04_chebyshev_growth_bound_and_ratio():
    with criterion(4, "chebyshev growth bound and monotone ratio") as c:
        start = time.perf_counter()
        ratios = {}
        for n in range(2, 101):
            lam, _ = lebesgue_constant(chebyshev_row(n + 1), UNIT)
            bound = (2.0 / math.pi) * math.log(n + 1) + 1.1
            c.require(lam <= bound, f"n={n}: {lam:.6f} above bound {bound:.6f}")
            ratios[n] = lam / math.log(n + 1)
        for n in range(10, 100):
            c.require(
                ratios[n + 1] <= ratios[n] + 1e-3,
                f"ratio rose at n={n + 1}: {ratios[n]:.6f} -> {ratios[n + 1]:.6f}",
            )
        elapsed = time.perf_counter() - start
        c.require(elapsed < 60.0, f"took {elapsed:.1f}s, limit 60s")
        c.detail = f"n = 2..100, ratio {ratios[100]:.4f} at n=100, {elapsed:.1f}s"


def test_05_equispaced_divergence_ratio():
    with criterion(5, "equispaced divergence ratio") as c:
        start = time.perf_counter()
        lam, _ = lebesgue_constant(equispaced_row(31, -1.0, 1.0), UNIT)
        ratio = lam / math.log(31)
        elapsed = time.perf_counter() - start
        c.require(ratio > 100.0, f"ratio {ratio:.1f} not above 100")
        c.require(elapsed < 10.0, f"took {elapsed:.1f}s, limit 10s")
        c.detail = f"constant {lam:.4e}, ratio {ratio:.3e}, {elapsed:.1f}s"


def test_06_affine_invariance():
    with criterion(6, "affine invariance of the Lebesgue function") as c:
        rng = np.random.default_rng(SEED)
        worst = 0.0
        for _ in range(50):
            m = int(rng.integers(2, 7))
            row = _separated_row(rng, m, 0.15)
            alpha = float(rng.uniform(0.5, 2.0)) * (1.0 if rng.uniform() < 0.5 else -1.0)
            beta = float(rng.uniform(-1.0, 1.0))
            while True:
                x = float(rng.uniform(row[0], row[-1]))
                if min(abs(p - x) for p in row) > 0.01:
                    break
            before = lebesgue_function(row, x)
            after = lebesgue_function(tuple(alpha * p + beta for p in row), alpha * x + beta)
            gap = abs(before - after) / max(1.0, abs(before))
            worst = max(worst, gap)
            c.require(gap <= 1e-12, f"alpha={alpha:.3f} beta={beta:.3f}: gap {gap:.2e}")
        c.detail = f"50 transforms, worst scaled gap {worst:.1e}"


def test_07_newton_lagrange_route_agreement():
    with criterion(7, "newton-lagrange route agreement") as c:
        seq = chebyshev_leja_sequence(13).points
        grid = np.linspace(-1.0, 1.0, 2001)
        worst = 0.0
        for name in ("abs", "runge", "exp"):
            f = closed_form(name)
            norm = max(abs(float(f(x))) for x in grid)
            for n in range(1, 13):
                gap = newton_lagrange_equivalence(f, seq, n)
                scaled = gap / (1.0 + norm)
                worst = max(worst, scaled)
                c.require(
                    gap <= 1e-8 * (1.0 + norm),
                    f"{name} n={n}: gap {gap:.2e} above 1e-8*(1+{norm:.2f})",
                )
        c.detail = f"abs/runge/exp to degree 12, worst scaled gap {worst:.1e}"


def test_08_divided_difference_methods_agree():
    with criterion(8, "divided difference methods agree") as c:
        rng = np.random.default_rng(SEED)
        fs = [closed_form(n) for n in ("abs", "runge", "exp")]
        worst = 0.0
        for _ in range(30):
            k = int(rng.integers(2, 13))
            row = _separated_row(rng, k, 0.05)
            for f in fs:
                a = divided_differences(f, row, method="recursive").table
                b = divided_differences(f, row, method="explicit").table
                for va, vb in zip(a, b):
                    gap = abs(va - vb) / max(1.0, abs(va), abs(vb))
                    worst = max(worst, gap)
                    c.require(gap <= 1e-8, f"k={k} {f.name}: relative gap {gap:.2e}")
        top = divided_differences(polynomial([0.0, 0.0, 1.0]), (1.0, 2.0)).table[1]
        c.require(abs(top - 3.0) <= 1e-12, f"x^2 over (1,2) gave {top!r}, want 3")
        c.detail = f"30 node rows to k=12, worst relative gap {worst:.1e}"


def test_09_faber_basis_checks_and_recovery():
    with criterion(9, "faber basis checks and node recovery") as c:
        rng = np.random.default_rng(SEED)
        leja = chebyshev_leja_sequence(10).points
        for count in (2, 5, 10):
            nodes = leja[:count]
            c.require(
                check_interpolating(newton_candidate(nodes, count), nodes).passed,
                f"newton candidate of {count} failed the zero pattern",
            )
            c.require(
                check_interpolating(lagrange_candidate(nodes, count), nodes).passed,
                f"lagrange candidate of {count} failed the zero pattern",
            )
        worst = 0.0
        for length in (3, 6, 10):
            nodes = leja[:length] if length == 10 else _separated_row(rng, length, 0.1)
            basis = newton_candidate(nodes, length + 1)
            lams = [
                float(v) * (1.0 if rng.uniform() < 0.5 else -1.0)
                for v in 10.0 ** rng.uniform(-3, 3, length + 1)
            ]
            for candidate in (basis, rescale_basis(basis, lams)):
                result = recover_nodes(candidate)
                if not result.ok:
                    c.require(False, f"recovery failed for length {length}: {result.reason}")
                    continue
                gap = max(abs(a - b) for a, b in zip(result.nodes, nodes))
                worst = max(worst, gap)
                c.require(gap <= 1e-8, f"length {length}: node gap {gap:.2e}")
                head = BasisCandidate(candidate.polys[:length])
                c.require(
                    check_interpolating(head, nodes).passed,
                    f"length {length}: rescaling changed the zero-pattern verdict",
                )
        c.detail = f"round-trips to length 10, worst node gap {worst:.1e}"


def test_10_projection_chain_dichotomy():
    with criterion(10, "projection chain dichotomy") as c:
        fs = default_suite()
        nested = nested_matrix(chebyshev_leja_sequence(16), 16)
        report = projection_chain_check(nested, fs, 15)
        c.require(report.all_ok, f"nested matrix failed: {report}")
        cheb = chebyshev_matrix(6)
        hat_f = node_isolating_hat(cheb, 2)
        broken = projection_chain_check(cheb, [hat_f], 4)
        c.require(not broken.chain_ok, "chebyshev matrix chain unexpectedly held")
        c.require(broken.chain_witness is not None, "no chain witness recorded")
        c.detail = (
            f"nested N=15 with {len(fs)} functions holds; chebyshev chain breaks "
            f"at n={broken.chain_witness[0]} via {hat_f.name}"
        )


def test_11_porosity_closed_forms():
    with criterion(11, "porosity closed forms") as c:
        start = time.perf_counter()
        geometric = make_geometric_set(0.5, 30)
        est = lower_porosity(geometric, 0.0)
        c.require(abs(est.p_plus - 1.0 / 3.0) <= 0.02, f"p_plus {est.p_plus!r} not near 1/3")
        c.require(est.converged, "geometric sweep did not converge")
        c.require(est.p_minus == 1.0, f"p_minus {est.p_minus!r} != 1.0 exactly")
        interior = lower_porosity(CompactSet.from_interval(0.0, 1.0), 0.5, r_min=0.001, r_max=0.4)
        c.require(
            (interior.p_plus, interior.p_minus, interior.p, interior.p_star)
            == (0.0, 0.0, 0.0, 0.0),
            f"interval interior porosities not all zero: {interior}",
        )
        for X, x0 in (
            (geometric, 0.0),
            (geometric, 0.25),
            (CompactSet.from_points([0.0, 0.4, 1.0]), 0.4),
        ):
            e = lower_porosity(X, x0)
            c.require(e.p == max(e.p_plus, e.p_minus), f"max identity broken at {x0}")
            c.require(e.p_star == min(e.p_plus, e.p_minus), f"min identity broken at {x0}")
        elapsed = time.perf_counter() - start
        c.require(elapsed < 5.0, f"took {elapsed:.1f}s, limit 5s")
        c.detail = f"p_plus {est.p_plus:.6f}, p_minus {est.p_minus}, {elapsed:.1f}s"


def _generated_sets(rng):
    sets = []
    for i in range(20):
        kind = i % 4
        if kind == 0:
            pts = _separated_row(rng, int(rng.integers(2, 9)), 0.05)
            sets.append(CompactSet.from_points(pts))
        elif kind == 1:
            sets.append(
                make_geometric_set(float(rng.uniform(0.2, 0.8)), int(rng.integers(3, 12)))
            )
        elif kind == 2:
            sets.append(make_cantor(int(rng.integers(1, 4)), float(rng.uniform(0.2, 0.6))))
        else:
            a, b = sorted(rng.uniform(-1.0, 1.0, 2))
            sets.append(CompactSet([(float(a), float(b)), (float(b) + 1.0, float(b) + 1.0)]))
    return sets


def test_12_isolation_equivalence_on_generated_sets():
    with criterion(12, "isolation equivalence on generated sets") as c:
        rng = np.random.default_rng(SEED)
        for idx, X in enumerate(_generated_sets(rng)):
            probes = []
            for a, b in X.intervals:
                probes.append(a)
                if b != a:
                    probes.extend(((a + b) / 2.0, b))
            isolated_everywhere = all(
                isolation_criterion(X, x).p_star_exceeds_half for x in probes
            )
            is_point_set = all(a == b for a, b in X.intervals)
            c.require(
                isolated_everywhere == is_point_set,
                f"set {idx}: isolation {isolated_everywhere} vs finite {is_point_set}",
            )
        c.detail = "20 sets: p* > 1/2 everywhere exactly on the finite point sets"


def test_13_cli_determinism(tmp_path):
    with criterion(13, "CLI determinism") as c:
        set_file = tmp_path / "set.txt"
        save_set(make_geometric_set(0.5, 15), set_file)
        basis_file = tmp_path / "basis.txt"
        save_basis(basis_file, newton_candidate((0.0, 1.0, -1.0), 4))
        runs = {
            "growth": ["growth", "--nmax", "6", "--seed", "42", "--plot"],
            "converge": [
                "converge", "--functions", "abs", "runge", "--nmax", "4", "--seed", "42",
            ],
            "faber-check": ["faber-check", "--basis", str(basis_file), "--seed", "42"],
            "porosity": ["porosity", "--set", str(set_file), "--seed", "42"],
            "oracle": ["oracle", "--nmax", "6", "--seed", "42"],
        }
        for name, argv in runs.items():
            outputs = []
            for attempt in ("a", "b"):
                out = tmp_path / f"{name}-{attempt}.out"
                rc = main(argv + ["--out", str(out)])
                c.require(rc == 0, f"{name} run {attempt} exited {rc}")
                blobs = [out.read_bytes()]
                png = out.with_suffix(".png")
                if png.exists():
                    blobs.append(png.read_bytes())
                outputs.append(blobs)
            c.require(
                outputs[0] == outputs[1],
                f"{name}: repeated runs with seed 42 differ",
            )
        c.detail = "5 commands run twice each, byte-identical (growth includes a PNG)"
