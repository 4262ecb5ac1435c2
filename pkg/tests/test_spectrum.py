"""Secular roots, full spectra, the inverse stem-count problem, projections."""

import math

import mpmath
import numpy as np
import pytest

from qwtree4.errors import InterlacingViolated
from qwtree4.exact import Radical
from qwtree4.spectrum import (
    full_spectrum,
    projection_data,
    projections_from_matrix,
    projections_from_quotient,
    stems_from_spectrum,
    support_eigenvalues,
)
from qwtree4.tree import adjacency_matrix, build_tree
from qwtree4.verify import random_params

EPS = 1e-10


def secular_residual(p, value):
    """High-precision residual of the secular equation at x = value."""
    with mpmath.workdps(50):
        u = mpmath.mpf(value) ** 2
        return float(abs(sum(a / (u - q) for q, a in zip(p.q, p.a)) - 1))


class TestSupportEigenvalues:
    def test_p5(self, p5):
        sup = support_eigenvalues(p5)
        assert sup.includes_zero
        assert len(sup.lambdas) == 1
        assert sup.lambdas[0] == Radical.from_square(3)

    def test_k3_tree(self, k3_tree):
        sup = support_eigenvalues(k3_tree)
        assert not sup.includes_zero
        assert sup.lambdas == (Radical.integer(1), Radical(3, 2))

    def test_1354(self, big_t3):
        sup = support_eigenvalues(big_t3)
        assert sup.lambdas == (Radical.integer(1), Radical(3, 2), Radical(11, 2))

    def test_residuals_small(self, rng):
        for _ in range(40):
            p = random_params(rng, n_cap=4000, q_max=50, a_max=50, t_max=5)
            for lam in support_eigenvalues(p).values:
                assert secular_residual(p, lam) < 1e-12

    def test_interlacing_randomized(self, rng):
        for _ in range(200):
            p = random_params(rng, n_cap=10**6, q_max=50, a_max=50, t_max=5)
            lam2 = [v * v for v in support_eigenvalues(p).values]
            seq = []
            for qj, lj in zip(p.q, lam2):
                seq.extend([qj, lj])
            assert all(seq[i] < seq[i + 1] for i in range(len(seq) - 1)), (p, lam2)


class TestStemsFromSpectrum:
    def test_three_class_example(self):
        assert stems_from_spectrum((0, 2, 22), (1, 18, 242)) == pytest.approx(
            [99, 96, 42], abs=1e-9
        )

    def test_two_class_example(self):
        assert stems_from_spectrum((0, 2), (1, 18)) == pytest.approx([9, 8], abs=1e-9)

    def test_single_equation(self):
        assert stems_from_spectrum((1,), (3,)) == pytest.approx([2.0], abs=1e-12)

    def test_roundtrip_randomized(self, rng):
        for _ in range(60):
            p = random_params(rng, n_cap=10**6, q_max=30, a_max=30, t_max=4)
            lam2 = [v * v for v in support_eigenvalues(p).values]
            rec = stems_from_spectrum(p.q, lam2)
            assert rec == pytest.approx(list(p.a), abs=1e-9)

    def test_interlacing_guard(self):
        with pytest.raises(InterlacingViolated):
            stems_from_spectrum((2, 0), (1, 18))
        with pytest.raises(InterlacingViolated):
            stems_from_spectrum((0, 2), (3, 18))


class TestFullSpectrum:
    def test_k3_multiset(self, k3_tree):
        fs = full_spectrum(k3_tree)
        table = {round(e.value, 9): e.multiplicity for e in fs.entries}
        s2 = round(math.sqrt(2), 9)
        assert table == {
            0.0: 16,
            1.0: 1,
            -1.0: 1,
            s2: 7,
            -s2: 7,
            round(3 * math.sqrt(2), 9): 1,
            round(-3 * math.sqrt(2), 9): 1,
        }
        assert fs.total() == 34

    def test_p5_multiset(self, p5):
        fs = full_spectrum(p5)
        assert fs.total() == 5
        values = sorted(round(e.value, 9) for e in fs.entries)
        s3 = round(math.sqrt(3), 9)
        assert values == [-s3, -1.0, 0.0, 1.0, s3]

    def test_1354_multiset(self, big_t3):
        fs = full_spectrum(big_t3)
        assert fs.total() == 1354
        table = {round(e.value, 9): e.multiplicity for e in fs.entries}
        assert table[0.0] == 1076
        assert table[round(math.sqrt(2), 9)] == 95
        assert table[round(math.sqrt(22), 9)] == 41
        assert table[round(11 * math.sqrt(2), 9)] == 1

    def test_matches_dense_eigensolver(self, rng):
        for _ in range(20):
            p = random_params(rng, n_cap=200)
            analytic = full_spectrum(p).expanded()
            dense = np.linalg.eigvalsh(adjacency_matrix(build_tree(p)))
            assert analytic.shape == dense.shape
            assert float(np.max(np.abs(analytic - dense))) < 1e-8


class TestProjections:
    def test_p3_leaf_weights(self):
        # oracle-only diameter-2 graph: ends of the 3-vertex path
        A = np.zeros((3, 3))
        A[0, 1] = A[1, 0] = A[1, 2] = A[2, 1] = 1.0
        data = projections_from_matrix(A, 0, 2)
        weights = {round(l.value, 9): l.s_x for l in data.lines}
        assert weights[0.0] == pytest.approx(0.5, abs=EPS)
        assert weights[round(math.sqrt(2), 9)] == pytest.approx(0.25, abs=EPS)
        assert weights[round(-math.sqrt(2), 9)] == pytest.approx(0.25, abs=EPS)

    def test_k3_outer_weight(self, k3_tree):
        tree = build_tree(k3_tree)
        leaf = tree.leaves[0][0]
        data = projection_data(k3_tree, leaf, leaf)
        top = [l for l in data.lines if abs(l.value - 3 * math.sqrt(2)) < 1e-9]
        assert len(top) == 1
        assert top[0].s_x == pytest.approx(1 / 544, abs=EPS)

    def test_resolution_of_identity(self, rng):
        for _ in range(8):
            p = random_params(rng, n_cap=120)
            tree = build_tree(p)
            x = int(rng.integers(0, tree.n))
            y = int(rng.integers(0, tree.n))
            data = projection_data(p, x, y)
            assert sum(l.s_x for l in data.lines) == pytest.approx(1.0, abs=EPS)
            assert sum(l.s_y for l in data.lines) == pytest.approx(1.0, abs=EPS)
            if x != y:
                assert sum(l.cross for l in data.lines) == pytest.approx(0.0, abs=EPS)
            for l in data.lines:
                assert abs(l.cross) <= math.sqrt(max(l.s_x, 0) * max(l.s_y, 0)) + EPS

    def test_support_matches_centre_weights(self, rng):
        """s_centre(lam) > 1e-10 exactly for the secular roots (plus 0 when q1 >= 1)."""
        for _ in range(10):
            p = random_params(rng, n_cap=150)
            sup = support_eigenvalues(p)
            expected = {round(v, 8) for v in sup.values}
            expected |= {round(-v, 8) for v in sup.values}
            if sup.includes_zero:
                expected.add(0.0)
            data = projection_data(p, 0, 0)
            got = {round(l.value, 8) for l in data.lines if l.s_x > 1e-10}
            assert got == expected, p

    def test_quotient_agrees_with_dense(self, rng):
        for _ in range(12):
            p = random_params(rng, n_cap=200)
            tree = build_tree(p)
            x = int(rng.integers(0, tree.n))
            y = int(rng.integers(0, tree.n))
            dense = projection_data(p, x, y, method="dense")
            quot = projections_from_quotient(p, x, y)
            dlines = [l for l in dense.lines if max(l.norm_x, l.norm_y) > 1e-9]
            qlines = [l for l in quot.lines if max(l.norm_x, l.norm_y) > 1e-9]
            assert len(dlines) == len(qlines), (p, x, y)
            for dl, ql in zip(dlines, qlines):
                assert dl.value == pytest.approx(ql.value, abs=1e-9)
                assert dl.s_x == pytest.approx(ql.s_x, abs=1e-10)
                assert dl.s_y == pytest.approx(ql.s_y, abs=1e-10)
                assert dl.cross == pytest.approx(ql.cross, abs=1e-10)
                assert dl.sign == ql.sign
