"""
Tests for the matching pipeline
"""

from unittest import TestCase

import numpy as np

from atgm.core import Matching, PointSet, SoftAssignment, normalize_points, read_point_set, transform
from atgm.core.exceptions import DimensionMismatchException
from atgm.fw import FwConfig
from atgm.lap import brute_force_lap
from atgm.objectives import distance_matrix, eval_G_bar
from atgm.pipeline import AtgmConfig, RemovalState, atgm, filter_outliers, post_discretize, remove_outliers
from atgm.pipeline.matcher import _Run

from .test_main import TEST_DIR


def line(*values: float) -> PointSet:
    """
    One dimensional point set.
    """
    return PointSet(np.array(values, dtype=np.float64).reshape(-1, 1))


class TestRemoval(TestCase):
    """
    Test cases for the ratio test.
    """

    def test_line_example(self) -> None:
        """
        Test the ratio test on a hand evaluated line.
        """
        state = remove_outliers(line(0.0, 1.0), line(0.05, 0.95, 3.0), 1.5, 2)
        self.assertEqual(state.kept.tolist(), [0, 1])
        self.assertEqual(state.history, (2,))
        self.assertEqual(remove_outliers(line(0.0, 1.0), line(0.05, 0.95, 3.0), 1e9, 2).kept.tolist(), [0, 1, 2])

    def test_refill(self) -> None:
        """
        Test that removed nodes closest to the transformed source are added back.
        """
        state = remove_outliers(line(0.0, 1.0), line(0.05, 0.95, 3.0), 1.5, 2, "all")
        self.assertEqual(state.kept.tolist(), [0, 1])
        state = remove_outliers(line(0.0, 1.0), line(3.0, 0.05, 0.95, 5.0), 1.5, 3)
        self.assertEqual(state.kept.tolist(), [0, 1, 2])

    def test_coincident_subset(self) -> None:
        """
        Test that exactly the coincident target nodes survive.
        """
        target = PointSet(np.random.default_rng(0).random((6, 2)))
        state = remove_outliers(target.subset([4, 1, 3]), target, 1.5, 3)
        self.assertEqual(state.kept.tolist(), [1, 3, 4])

    def test_errors(self) -> None:
        """
        Test rejection of invalid removal problems.
        """
        with self.assertRaises(DimensionMismatchException):
            remove_outliers(line(0.0, 1.0), line(0.0), 1.5, 2)
        with self.assertRaises(DimensionMismatchException):
            remove_outliers(line(0.0, 1.0), PointSet(np.zeros((3, 2))), 1.5, 2)
        with self.assertRaises(ValueError):
            remove_outliers(line(0.0, 1.0), line(0.0, 1.0), 0.0, 2)

    def test_state(self) -> None:
        """
        Test retained index bookkeeping of removal states.
        """
        full = RemovalState.full(3)
        self.assertEqual((full.kept.tolist(), full.history), ([0, 1, 2], (3,)))
        outer = RemovalState(np.array([6, 1, 4, 3]), (7, 4))
        self.assertEqual(outer.kept.tolist(), [1, 3, 4, 6])
        advanced = outer.advance(np.array([5, 0, 4]))
        self.assertEqual((advanced.kept.tolist(), advanced.history, advanced.count), ([0, 4, 5], (7, 4, 3), 3))
        with self.assertRaises(ValueError):
            RemovalState(np.array([1, 1]))


class TestConfig(TestCase):
    """
    Test cases for the matcher configuration.
    """

    def test_defaults(self) -> None:
        """
        Test default values and the number of removal rounds.
        """
        config = AtgmConfig()
        self.assertEqual((config.lam, config.lambda1, config.lambda2, config.ratio_k), (1.0, 1e3, 1.0, 1.5))
        self.assertEqual((config.fw.max_iters, config.fw_convex.max_iters), (200, 100))
        self.assertEqual((config.rounds_for(5, 5), config.rounds_for(5, 7)), (0, 2))
        self.assertEqual(AtgmConfig(rounds_k0=1).rounds_for(5, 7), 1)
        self.assertEqual(AtgmConfig(rounds_k0=3).rounds_for(5, 5), 0)

    def test_from_mapping(self) -> None:
        """
        Test building configurations from plain mappings.
        """
        config = AtgmConfig.from_mapping({"lambda": 2.0, "ratio-k": 2.5, "rounds_k0": 1, "connectivity": "delaunay"})
        self.assertEqual((config.lam, config.ratio_k, config.rounds_k0), (2.0, 2.5, 1))
        self.assertEqual(config.connectivity, "delaunay")
        scipy = AtgmConfig.from_mapping({"lap-backend": "scipy"}, config)
        self.assertEqual((scipy.fw.lap_backend, scipy.fw_convex.lap_backend, scipy.lap_backend), ("scipy",) * 3)
        self.assertEqual(scipy.lam, 2.0)
        self.assertEqual(AtgmConfig().with_lap_backend("scipy").fw_convex.lap_backend, "scipy")
        self.assertIsNone(AtgmConfig.from_mapping({"rounds_k0": None}, config).rounds_k0)

    def test_invalid(self) -> None:
        """
        Test rejection of invalid keys and values.
        """
        invalid = [
            {"unknown": 1},
            {"lam": "large"},
            {"g_xy_unary": "yes"},
            {"connectivity": "ring"},
            {"ratio_k": 0},
            {"lambda1": -1},
            {"rounds_k0": -1},
            {"lap_backend": "auction"},
        ]
        for mapping in invalid:
            with self.assertRaises(ValueError):
                AtgmConfig.from_mapping(mapping)


class TestDiscretize(TestCase):
    """
    Test cases for post-discretization.
    """

    def test_examples(self) -> None:
        """
        Test hand checked soft assignments.
        """
        permutation = Matching(np.array([2, 0, 1]), 3)
        self.assertEqual(post_discretize(SoftAssignment.from_matching(permutation)), permutation)
        dominant = SoftAssignment(np.array([[0.9, 0.1], [0.2, 0.8]]), check=False)
        self.assertEqual(post_discretize(dominant).pairs(), [(0, 0), (1, 1)])

    def test_maximum_mass(self) -> None:
        """
        Test that the matched mass is maximal on random doubly stochastic matrices.
        """
        rng = np.random.default_rng(1)
        for _ in range(50):
            matrix = np.zeros((6, 6))
            for weight in rng.dirichlet(np.ones(5)):
                matrix += weight * Matching(rng.permutation(6), 6).to_matrix()
            best = -brute_force_lap(-matrix).cost(-matrix)
            for backend in ("hungarian", "scipy"):
                matching = post_discretize(SoftAssignment(matrix), backend)  # type: ignore[arg-type]
                self.assertAlmostEqual(matching.cost(matrix), best, places=10)


class TestAtgm(TestCase):
    """
    Test cases for the full matcher.
    """

    def setUp(self) -> None:
        self.points = read_point_set(TEST_DIR.joinpath("res/irregular.txt"))

    def test_identical_point_sets(self) -> None:
        """
        Test that a point set matched into itself gives the identity with a binary soft assignment.
        """
        result = atgm(self.points, self.points)
        self.assertEqual(result.matching, Matching(np.arange(7), 7))
        self.assertEqual(result.diagnostics.sparsity, 1.0)
        self.assertEqual(result.diagnostics.rounds, 0)
        self.assertEqual([label for label, _ in result.diagnostics.traces], ["F", "G_bar"])
        self.assertEqual(post_discretize(result.assignment), result.matching)
        for _, trace in result.diagnostics.traces:
            self.assertTrue(trace.is_monotone())

    def test_permuted_point_sets(self) -> None:
        """
        Test that a reordered copy of the source is matched back to the original order.
        """
        order = np.array([3, 6, 0, 5, 1, 4, 2])
        result = atgm(self.points, self.points.subset(order), AtgmConfig(connectivity="delaunay"))
        self.assertEqual(result.matching, Matching(np.argsort(order), 7))
        self.assertEqual(result.diagnostics.fallbacks, [])

    def test_stage_selection(self) -> None:
        """
        Test that the edge discrepancy only variant skips the refinement.
        """
        result = atgm(self.points, self.points, AtgmConfig(stages="f-only", unary="zero"))
        self.assertEqual([label for label, _ in result.diagnostics.traces], ["F"])

    def test_refinement_start(self) -> None:
        """
        Test that the refinement trace starts at the node shifting value of the edge discrepancy result.
        """
        config = AtgmConfig()
        run = _Run(normalize_points(self.points), normalize_points(self.points.subset([2, 0, 5, 1, 6, 4, 3])), config)
        found = run.edge_discrepancy("F")
        run.transformed_shifting("G_bar", found)
        transformed = transform(found, run.target)
        expected = eval_G_bar(
            found,
            transformed,
            run.target,
            run.anchor_weights(),
            distance_matrix(transformed, run.target),
            config.lambda1,
            config.lambda2,
        )
        self.assertAlmostEqual(run.diagnostics.trace("G_bar").values[0], expected.value, places=6)

    def test_outlier_rounds(self) -> None:
        """
        Test the bookkeeping of a run with removal rounds.
        """
        rng = np.random.default_rng(2)
        source = PointSet(rng.standard_normal((8, 2)))
        target = PointSet(np.vstack([source.coords, rng.standard_normal((4, 2))]))
        result = atgm(source, target, AtgmConfig(ratio_k=2.0))
        diagnostics = result.diagnostics
        labels = [label for label, _ in diagnostics.traces]
        self.assertEqual(labels, ["round 1 G_xy", "round 1 F", "round 2 G_xy", "round 2 F", "F", "G_bar"])
        assert diagnostics.removal is not None
        kept = diagnostics.removal.kept
        self.assertEqual(len(diagnostics.kept_history), 5)
        self.assertEqual(diagnostics.kept_history[0], 12)
        self.assertGreaterEqual(kept.size, 8)
        self.assertTrue(set(result.matching.assignment.tolist()) <= set(kept.tolist()))
        self.assertEqual(result.assignment.shape, (8, 12))
        dropped = np.setdiff1d(np.arange(12), kept)
        self.assertEqual(float(np.abs(result.assignment.matrix[:, dropped]).sum()), 0.0)
        self.assertGreaterEqual(diagnostics.sparsity, 0.0)
        self.assertLessEqual(diagnostics.sparsity, 1.0)
        summary = diagnostics.to_dict()
        self.assertEqual(summary["kept"], kept.tolist())
        self.assertEqual([stage["stage"] for stage in summary["stages"]], labels)

    def test_converged_shifting(self) -> None:
        """
        Test that the node shifting solves of the removal rounds converge and feed their ratio tests.
        """
        rng = np.random.default_rng(2)
        source = PointSet(rng.standard_normal((8, 2)))
        target = PointSet(np.vstack([source.coords, rng.standard_normal((4, 2))]))
        diagnostics = atgm(source, target, AtgmConfig(ratio_k=2.0)).diagnostics
        for label in ("round 1 G_xy", "round 2 G_xy"):
            gap = diagnostics.trace(label).final_gap
            assert gap is not None
            self.assertLess(gap, 1e-6)
            self.assertEqual(diagnostics.trace(label).stop_reason, "duality gap")
        self.assertEqual(diagnostics.fallbacks, [])

    def test_unconverged_shifting(self) -> None:
        """
        Test that a node shifting solve stopped early skips its ratio test and records a fallback.
        """
        rng = np.random.default_rng(2)
        source = PointSet(rng.standard_normal((8, 2)))
        target = PointSet(np.vstack([source.coords, rng.standard_normal((4, 2))]))
        config = AtgmConfig(ratio_k=2.0, fw_convex=FwConfig.convex(max_iters=1))
        diagnostics = atgm(source, target, config).diagnostics
        self.assertEqual(len(diagnostics.kept_history), 3)
        self.assertEqual(
            diagnostics.fallbacks,
            [f"stage round {index} G_xy did not converge, skipping its ratio test" for index in (1, 2)],
        )

    def test_dropped_node_returns(self) -> None:
        """
        Test that a target node dropped by an earlier ratio test is retained again once the source moves onto it.
        """
        target = line(0.0, 1.0, 2.0, 3.0, 10.0, 11.0)
        run = _Run(line(0.0, 1.0, 2.0, 3.0), target, AtgmConfig())
        run.removal = RemovalState(np.array([0, 1, 3, 4, 5]), (6, 5))
        matrix = np.zeros((4, 5))
        matrix[0, 0] = matrix[3, 3] = 1.0
        matrix[1:3, 1:3] = 0.5
        run.remove("round 2 F", SoftAssignment(matrix))
        self.assertEqual(run.removal.kept.tolist(), [0, 1, 2, 4])
        self.assertEqual(run.removal.history, (6, 5, 4))

    def test_filter_outliers(self) -> None:
        """
        Test that filtering runs only the removal rounds.
        """
        self.assertEqual(filter_outliers(self.points, self.points).kept.tolist(), list(range(7)))
        state = filter_outliers(self.points.subset(range(5)), self.points, AtgmConfig(rounds_k0=1))
        self.assertGreaterEqual(state.count, 5)
        self.assertEqual(len(state.history), 3)

    def test_fallbacks(self) -> None:
        """
        Test that one dimensional and collinear inputs fall back to the complete graph and zero unary costs.
        """
        result = atgm(line(0.0, 1.0, 2.5), line(0.1, 1.1, 2.4), AtgmConfig(connectivity="delaunay"))
        self.assertEqual(result.matching.size, 3)
        self.assertEqual(len(result.diagnostics.fallbacks), 3)
        collinear = PointSet(np.array([[0.0, 0.0], [1.0, 1.0], [2.5, 2.5], [4.0, 4.0]]))
        result = atgm(collinear, collinear)
        self.assertEqual(result.matching.size, 4)
        self.assertEqual(len(result.diagnostics.fallbacks), 1)

    def test_size_errors(self) -> None:
        """
        Test rejection of inputs the matcher cannot handle.
        """
        with self.assertRaises(DimensionMismatchException):
            atgm(self.points, self.points.subset([0, 1, 2]))
        with self.assertRaises(DimensionMismatchException):
            atgm(self.points.subset([0]), self.points)
        with self.assertRaises(DimensionMismatchException):
            atgm(line(0.0, 1.0), self.points)
