"""Strong cospectrality: classification, supports, sign partitions, PGST checks."""

import math

import pytest

from qwtree4.cospectral import (
    brute_force_pairs,
    eigenvalue_support,
    pgst_obstruction_check,
    sign_partition,
    strongly_cospectral_pairs,
)
from qwtree4.errors import ConditionsViolated, NotStronglyCospectral, UnknownFamily
from qwtree4.tree import TreeParams, adjacency_matrix, build_tree
from qwtree4.verify import _sweep_params

S2 = math.sqrt(2)
S3 = math.sqrt(3)


class TestClassification:
    def test_p5_has_A_and_B(self, p5):
        pairs = strongly_cospectral_pairs(p5)
        assert [(p.kind, p.x, p.y) for p in pairs] == [("A", 1, 2), ("B", 3, 4)]

    def test_k3_has_eight_C_pairs(self, k3_tree):
        pairs = strongly_cospectral_pairs(k3_tree)
        assert len(pairs) == 8
        assert all(p.kind == "C" for p in pairs)
        stems = [p.stem for p in pairs]
        assert stems == list(range(10, 18))

    def test_three_twin_stems_have_no_pairs(self):
        assert strongly_cospectral_pairs(TreeParams.of((2,), (3,))) == ()

    def test_bare_twin_stems_are_kind_A(self):
        # two leaves of the centre count as 0-leaf stems
        pairs = strongly_cospectral_pairs(TreeParams.of((0, 2), (2, 3)))
        kinds = {p.kind for p in pairs}
        assert ("A", 1, 2) == (pairs[0].kind, pairs[0].x, pairs[0].y)
        assert kinds == {"A", "C"}

    def test_no_vertex_in_two_pairs(self, rng):
        from qwtree4.verify import random_params

        for _ in range(20):
            p = random_params(rng, n_cap=150)
            seen = set()
            for pair in strongly_cospectral_pairs(p):
                assert pair.x not in seen and pair.y not in seen
                seen.update((pair.x, pair.y))

    def test_small_sweep_matches_brute_force(self):
        """Spot sweep here; the full exhaustive sweep runs in acceptance."""
        count = 0
        for p in _sweep_params(q_max=3, a_max=3, t_max=2):
            count += 1
            expected = {(pr.x, pr.y) for pr in strongly_cospectral_pairs(p)}
            brute = set(brute_force_pairs(adjacency_matrix(build_tree(p))))
            assert expected == brute, p
        assert count > 30

    def test_diagonal_weights_match_for_pairs(self, k3_tree):
        from qwtree4.spectrum import projection_data

        for pair in strongly_cospectral_pairs(k3_tree):
            data = projection_data(k3_tree, pair.x, pair.y)
            for line in data.lines:
                assert line.s_x == pytest.approx(line.s_y, abs=1e-10)


class TestSupports:
    def test_k3_leaf_support(self, k3_tree):
        tree = build_tree(k3_tree)
        leaf = tree.leaves[0][0]
        support = eigenvalue_support(k3_tree, leaf)
        assert support == pytest.approx((-3 * S2, -S2, -1.0, 0.0, 1.0, S2, 3 * S2), abs=1e-9)

    def test_p5_centre_support(self, p5):
        assert eigenvalue_support(p5, 0) == pytest.approx((-S3, 0.0, S3), abs=1e-9)

    @pytest.mark.parametrize("q2", [3, 5, 26])
    def test_distance4_leaf_support(self, q2):
        from qwtree4.readout import dist4_leaf_pair, dist4_params

        x, _ = dist4_leaf_pair(q2)
        support = eigenvalue_support(dist4_params(q2), x)
        big = math.sqrt(2 * q2 - 1)
        assert support == pytest.approx((-big, -S2, -1.0, 0.0, 1.0, S2, big), abs=1e-9)


class TestSignPartitions:
    def test_p3_ends(self):
        # oracle-only construction: path on 3 vertices, ends 0 and 2
        p3 = TreeParams.of((1,), (1,))
        plus, minus = sign_partition(p3, 0, 2, allow_degenerate=True)
        assert plus == pytest.approx((-S2, S2), abs=1e-9)
        assert minus == pytest.approx((0.0,), abs=1e-9)

    @pytest.mark.parametrize("q", [1, 2, 5])
    def test_twin_stems(self, q):
        p = TreeParams.of((q,), (2,))
        plus, minus = sign_partition(p, 1, 2)
        assert plus == pytest.approx((-math.sqrt(q + 2), math.sqrt(q + 2)), abs=1e-9)
        assert minus == pytest.approx((-math.sqrt(q), math.sqrt(q)), abs=1e-9)

    def test_type_c_pair(self, k3_tree):
        pair = strongly_cospectral_pairs(k3_tree)[0]
        assert pair.sigma_minus == pytest.approx((0.0,), abs=1e-9)
        assert pair.sigma_plus == pytest.approx((-3 * S2, -S2, -1.0, 1.0, S2, 3 * S2), abs=1e-9)

    def test_partition_unions_to_support(self, p5):
        for pair in strongly_cospectral_pairs(p5):
            support = set(eigenvalue_support(p5, pair.x))
            assert set(pair.sigma_plus) | set(pair.sigma_minus) == support

    def test_non_cospectral_raises(self, k3_tree):
        with pytest.raises(NotStronglyCospectral):
            sign_partition(k3_tree, 1, 2)  # two of the nine bare stems


class TestPgstCheck:
    def test_distance4_square(self):
        assert pgst_obstruction_check("dist4", q2=5) == "no_pgst"  # 2*5-1 = 9

    def test_distance4_nonsquare(self):
        assert pgst_obstruction_check("dist4", q2=26) == "pgst"  # 51 is not a square

    def test_t3_both_odd(self):
        assert pgst_obstruction_check("t3", k2=3, k3=11, q3=22) == "pgst"

    def test_t3_even_k(self):
        assert pgst_obstruction_check("t3", k2=3, k3=10, q3=20) == "no_pgst"

    def test_type_c(self):
        assert pgst_obstruction_check("type_c", k=3) == "pgst"
        assert pgst_obstruction_check("type_c", k=4) == "undecided"

    def test_unknown_family(self):
        with pytest.raises(UnknownFamily):
            pgst_obstruction_check("cycle", n=6)
        with pytest.raises(UnknownFamily):
            pgst_obstruction_check("dist4")

    def test_t3_invalid_conditions(self):
        with pytest.raises(ConditionsViolated):
            pgst_obstruction_check("t3", k2=3, k3=11, q3=21)
