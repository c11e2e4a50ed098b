"""
Tests for the Frank-Wolfe solver
"""

from typing import Union
from unittest import TestCase

import numpy as np

from atgm.core import (
    Matching,
    PointSet,
    SoftAssignment,
    as_matrix,
    complete_graph,
    feasibility_violation,
    inverse_length_graph,
)
from atgm.core.exceptions import NumericException
from atgm.fw import (
    ActiveSet,
    FwConfig,
    line_search_backtracking,
    line_search_exact_quadratic,
    linearized_step,
    minimize,
    quadratic_step,
)
from atgm.objectives import (
    EdgeDiscrepancyObjective,
    NodeShiftingObjective,
    ObjectiveEval,
    UnaryCost,
    distance_matrix,
)
from atgm.utils.types import FloatArray


class SquaredDistance:
    """
    `g(P) = ||P - center||^2`, a convex quadratic.
    """

    quadratic = True
    offset = 0.0

    def __init__(self, center: list[list[float]]):
        self.center = np.asarray(center, dtype=np.float64)

    @property
    def shape(self) -> tuple[int, int]:
        """Shape of the center."""
        return (int(self.center.shape[0]), int(self.center.shape[1]))

    def reduced(self, assignment: Union[SoftAssignment, FloatArray]) -> ObjectiveEval:
        """Value and gradient."""
        difference = as_matrix(assignment) - self.center
        return ObjectiveEval(float(np.sum(difference**2)), 2.0 * difference)

    evaluate = reduced


class Drifting(SquaredDistance):
    """
    `||P - center||^2` reporting a value that grows by one with every evaluation.
    """

    def __init__(self, center: list[list[float]]):
        super().__init__(center)
        self.calls = 0

    def reduced(self, assignment: Union[SoftAssignment, FloatArray]) -> ObjectiveEval:
        """Value plus the number of earlier evaluations, and the gradient."""
        evaluation = super().reduced(assignment)
        self.calls += 1
        return ObjectiveEval(evaluation.value + self.calls - 1, evaluation.gradient)

    evaluate = reduced


class LogBarrier:
    """
    `g(P) = <C, P> - sum log P`, which is infinite on the boundary of the polytope.
    """

    quadratic = False
    offset = 0.0

    def __init__(self, costs: list[list[float]]):
        self.costs = np.asarray(costs, dtype=np.float64)

    @property
    def shape(self) -> tuple[int, int]:
        """Shape of the costs."""
        return (int(self.costs.shape[0]), int(self.costs.shape[1]))

    def reduced(self, assignment: Union[SoftAssignment, FloatArray]) -> ObjectiveEval:
        """Value and gradient."""
        matrix = as_matrix(assignment)
        with np.errstate(divide="ignore"):
            return ObjectiveEval(
                float(np.sum(self.costs * matrix) - np.sum(np.log(matrix))), self.costs - 1.0 / matrix
            )

    evaluate = reduced


def row(*values: float) -> FloatArray:
    """
    A single row matrix.
    """
    return np.array([values], dtype=np.float64)


def random_instance(seed: int, m: int = 5, n: int = 7) -> tuple[PointSet, PointSet]:
    """
    Random source and target points in the unit square.
    """
    rng = np.random.default_rng(seed)
    return PointSet(rng.random((m, 2))), PointSet(rng.random((n, 2)))


def random_soft_assignment(rng: np.random.Generator, m: int, n: int, vertices: int = 4) -> FloatArray:
    """
    A random convex combination of random matchings.
    """
    weights = rng.dirichlet(np.ones(vertices))
    matrix = np.zeros((m, n))
    for weight in weights:
        matrix += weight * Matching(rng.permutation(n)[:m], n).to_matrix()
    return matrix


class TestLinearizedStep(TestCase):
    """
    Test cases for the linear assignment vertex of a gradient.
    """

    def test_examples(self) -> None:
        """
        Test hand checked vertices and invariance to constant shifts.
        """
        gradient = 1.0 - np.eye(3)
        vertex = linearized_step(gradient)
        np.testing.assert_array_equal(vertex.matrix, np.eye(3))
        self.assertTrue(vertex.is_binary())
        np.testing.assert_array_equal(linearized_step(gradient + 5.0).matrix, vertex.matrix)

    def test_dominance(self) -> None:
        """
        Test that the vertex minimizes the linear function over sampled points of the polytope.
        """
        rng = np.random.default_rng(0)
        gradient = rng.normal(size=(4, 6))
        vertex = linearized_step(gradient, "scipy")
        best = float(np.sum(gradient * vertex.matrix))
        for _ in range(1000):
            sample = random_soft_assignment(rng, 4, 6)
            self.assertIsNone(feasibility_violation(sample))
            self.assertLessEqual(best, float(np.sum(gradient * sample)) + 1e-12)


class TestLineSearch(TestCase):
    """
    Test cases for the step size rules.
    """

    def test_exact_quadratic(self) -> None:
        """
        Test the exact step on a parabola and on a linear function.
        """
        parabola = SquaredDistance([[0.7, 0.3]])
        self.assertAlmostEqual(line_search_exact_quadratic(parabola, row(1.0, 0.0), row(0.0, 1.0)), 0.3, places=12)
        self.assertEqual(line_search_exact_quadratic(parabola, row(0.7, 0.3), row(0.0, 1.0)), 0.0)
        points = PointSet.from_rows([[0.0, 0.0], [1.0, 0.0]])
        linear = NodeShiftingObjective(
            points.subset([0]), points, complete_graph(points.subset([0])).weights, UnaryCost(row(1.0, 0.0)), 0.0, 0.0
        )
        self.assertEqual(line_search_exact_quadratic(linear, row(1.0, 0.0), row(0.0, 1.0)), 1.0)
        self.assertEqual(line_search_exact_quadratic(linear, row(0.0, 1.0), row(1.0, 0.0)), 0.0)

    def test_exact_quadratic_sampling(self) -> None:
        """
        Test the exact step against dense sampling of the segment on node shifting objectives.
        """
        for seed in range(20):
            rng = np.random.default_rng(seed)
            source, target = random_instance(seed)
            graph = complete_graph(source)
            objective = NodeShiftingObjective(source, target, graph.weights, distance_matrix(source, target))
            current = random_soft_assignment(rng, 5, 7)
            vertex = linearized_step(rng.normal(size=(5, 7))).matrix
            step = line_search_exact_quadratic(objective, current, vertex)
            best = objective.evaluate(current + step * (vertex - current)).value
            for alpha in np.linspace(0.0, 1.0, 101):
                self.assertLessEqual(best, objective.evaluate(current + alpha * (vertex - current)).value + 1e-9)

    def test_backtracking(self) -> None:
        """
        Test the full step, ascent directions and sufficient decrease of accepted steps.
        """
        config = FwConfig.nonconvex()
        bowl = SquaredDistance([[-0.5, 1.5]])
        self.assertEqual(line_search_backtracking(bowl, row(1.0, 0.0), row(0.0, 1.0), config), 1.0)
        ascent = SquaredDistance([[0.0, 1.0]])
        self.assertEqual(line_search_backtracking(ascent, row(0.1, 0.9), row(1.0, 0.0), config), 0.0)
        for seed in range(20):
            rng = np.random.default_rng(seed)
            source, target = random_instance(seed)
            objective = EdgeDiscrepancyObjective(complete_graph(source), target)
            current = random_soft_assignment(rng, 5, 7)
            vertex = linearized_step(objective.evaluate(current).gradient).matrix
            step = line_search_backtracking(objective, current, vertex, config)
            self.assertGreaterEqual(step, 0.0)
            self.assertLessEqual(step, 1.0)
            moved = objective.evaluate(current + step * (vertex - current)).value
            self.assertLessEqual(moved, objective.evaluate(current).value)


class TestMinimize(TestCase):
    """
    Test cases for Frank-Wolfe minimization.
    """

    def setUp(self) -> None:
        self.points = PointSet(np.random.default_rng(3).random((5, 2)))
        self.source = self.points.subset([0, 1, 2])
        self.favored = Matching(np.array([2, 0, 4]), 5)
        self.costs = UnaryCost(10.0 * (1.0 - self.favored.to_matrix()))

    def favoring_objective(self) -> NodeShiftingObjective:
        """
        Linear objective whose minimum over the polytope is the favored matching.
        """
        weights = complete_graph(self.source).weights
        return NodeShiftingObjective(self.source, self.points, weights, self.costs, lambda2=0.0)

    def test_convex_extreme_point(self) -> None:
        """
        Test convergence to the favored extreme point with a small duality gap.
        """
        config = FwConfig.convex(check_iterates=True)
        result, trace = minimize(self.favoring_objective(), SoftAssignment.uniform(3, 5), config, "convex-G")
        np.testing.assert_allclose(result.matrix, self.favored.to_matrix(), atol=1e-12)
        assert trace.final_gap is not None
        self.assertLess(abs(trace.final_gap), 1e-7)
        self.assertEqual(trace.stop_reason, "duality gap")
        self.assertAlmostEqual(trace.final_value, 3e3, places=9)

    def test_optimal_start(self) -> None:
        """
        Test that a solve started at the optimum stops in its first iteration.
        """
        start = SoftAssignment.from_matching(self.favored)
        result, trace = minimize(self.favoring_objective(), start, FwConfig.convex(), "convex-G")
        np.testing.assert_array_equal(result.matrix, start.matrix)
        self.assertEqual(trace.iterations, 1)
        self.assertEqual(trace.steps, [0.0])
        self.assertEqual(trace.gaps, [0.0])

    def test_monotone_traces(self) -> None:
        """
        Test that both modes never increase the objective and keep every iterate feasible.
        """
        for seed in range(10):
            source, target = random_instance(seed)
            graph = complete_graph(source)
            nonconvex = EdgeDiscrepancyObjective(graph, target)
            start = SoftAssignment.uniform(5, 7)
            config = FwConfig.nonconvex(max_iters=30, check_iterates=True)
            result, trace = minimize(nonconvex, start, config, "nonconvex-F")
            self.assertTrue(trace.is_monotone())
            self.assertIsNone(feasibility_violation(result.matrix))
            self.assertLessEqual(trace.iterations, 30)

            convex = NodeShiftingObjective(source, target, graph.weights, distance_matrix(source, target))
            result, trace = minimize(convex, start, FwConfig.convex(check_iterates=True), "convex-G")
            self.assertTrue(trace.is_monotone())
            self.assertIsNone(feasibility_violation(result.matrix))
            assert trace.final_gap is not None
            self.assertGreaterEqual(trace.final_gap, -1e-9)

    def test_convex_gap(self) -> None:
        """
        Test that convex node shifting solves reach an absolute duality gap below 1e-6 within 100 iterations.
        """
        for seed in range(10):
            source, target = random_instance(seed, 6, 8)
            objective = NodeShiftingObjective(
                source, target, inverse_length_graph(source).weights, distance_matrix(source, target)
            )
            result, trace = minimize(objective, SoftAssignment.uniform(6, 8), FwConfig.convex(), "convex-G")
            assert trace.final_gap is not None
            self.assertLess(trace.final_gap, 1e-6)
            self.assertGreaterEqual(trace.final_gap, -1e-9)
            self.assertLessEqual(trace.iterations, 100)
            self.assertEqual(trace.stop_reason, "duality gap")
            self.assertTrue(trace.is_monotone())
            self.assertIsNone(feasibility_violation(result.matrix))

    def test_rejected_increase(self) -> None:
        """
        Test that both modes end the solve at the start when every evaluation reports a larger value.
        """
        start = row(1.0, 0.0)
        result, trace = minimize(Drifting([[0.7, 0.3]]), start, FwConfig.convex(), "convex-G")
        self.assertEqual(trace.stop_reason, "objective increase")
        self.assertEqual((trace.iterations, trace.steps), (1, [0.0]))
        np.testing.assert_array_equal(result.matrix, start)
        result, trace = minimize(Drifting([[0.7, 0.3]]), start, FwConfig.nonconvex(), "nonconvex-F")
        self.assertEqual(trace.stop_reason, "no descent step")
        np.testing.assert_array_equal(result.matrix, start)

    def test_sparsity_weight_invariance(self) -> None:
        """
        Test that the l1 weight changes neither the vertices nor the step sizes of a convex solve.
        """
        source, target = random_instance(11)
        graph = complete_graph(source)
        traces = []
        for lambda1 in (0.0, 1e3):
            objective = NodeShiftingObjective(
                source, target, graph.weights, distance_matrix(source, target), lambda1=lambda1
            )
            traces.append(minimize(objective, SoftAssignment.uniform(5, 7), FwConfig.convex(), "convex-G")[1])
        np.testing.assert_allclose(traces[0].steps, traces[1].steps, atol=1e-9)
        self.assertEqual(
            [vertex.tolist() for vertex in traces[0].vertices], [vertex.tolist() for vertex in traces[1].vertices]
        )
        self.assertAlmostEqual(traces[1].final_value - traces[0].final_value, 5e3, places=6)

    def test_numeric_failure(self) -> None:
        """
        Test that non-finite values are reported with the iteration they occurred in.
        """
        with self.assertRaises(NumericException) as context:
            minimize(LogBarrier([[0.0, 1.0]]), row(0.5, 0.5), FwConfig.nonconvex(), "nonconvex-F")
        self.assertEqual(context.exception.iteration, 1)

    def test_config(self) -> None:
        """
        Test configuration presets and validation.
        """
        self.assertEqual((FwConfig.nonconvex().max_iters, FwConfig.nonconvex().rel_tol), (200, 1e-9))
        self.assertEqual((FwConfig.convex().max_iters, FwConfig.convex().gap_tol), (100, 1e-7))
        for overrides in ({"armijo_c": 1.0}, {"armijo_shrink": 0.0}, {"max_iters": 0}, {"rel_tol": 0.0}):
            with self.assertRaises(ValueError):
                FwConfig(**overrides)  # type: ignore[arg-type]
        with self.assertRaises(ValueError):
            FwConfig(lap_backend="auction")  # type: ignore[arg-type]
        with self.assertRaises(ValueError):
            minimize(SquaredDistance([[1.0]]), row(1.0), FwConfig(), "convex")  # type: ignore[arg-type]


class TestActiveSet(TestCase):
    """
    Test cases for the weight corrections of convex solves.
    """

    def setUp(self) -> None:
        rng = np.random.default_rng(5)
        self.objective = SquaredDistance(rng.random((3, 4)).tolist())
        self.initial = SoftAssignment.uniform(3, 4).matrix
        self.vertices = [np.array([0, 1, 2]), np.array([3, 2, 0]), np.array([1, 0, 3])]

    def filled(self) -> ActiveSet:
        """
        The uniform iterate with three vertices carrying some of the weight.
        """
        active = ActiveSet(self.objective, self.initial, self.objective.reduced(self.initial))
        for vertex, step in zip(self.vertices, (0.5, 0.3, 0.2)):
            matrix = Matching(vertex, 4).to_matrix()
            active.move(active.add(vertex, self.objective.reduced(matrix)), step)
        return active

    def test_quadratic_model(self) -> None:
        """
        Test that the Gram matrix and linear term reproduce the objective on the convex hull of the atoms.
        """
        active = self.filled()
        self.assertEqual(len(active), 4)
        self.assertAlmostEqual(float(active.weights.sum()), 1.0, places=12)
        model = 0.5 * active.weights @ active.gram @ active.weights + active.linear @ active.weights
        model += self.objective.reduced(np.zeros((3, 4))).value
        self.assertAlmostEqual(float(model), self.objective.reduced(active.matrix()).value, places=10)
        index = active.add(self.vertices[1], self.objective.reduced(Matching(self.vertices[1], 4).to_matrix()))
        self.assertEqual((index, len(active)), (2, 4))

    def test_correction(self) -> None:
        """
        Test that the corrected weights minimize the objective over the convex hull of the atoms.
        """
        active = self.filled()
        before = self.objective.reduced(active.matrix()).value
        atoms = [self.initial] + [Matching(vertex, 4).to_matrix() for vertex in self.vertices]
        active.correct(1e-12, 1000)
        best = self.objective.reduced(active.matrix()).value
        self.assertLessEqual(best, before)
        self.assertIsNone(feasibility_violation(active.matrix()))
        slopes = active.gram @ active.weights + active.linear
        self.assertLess(float(slopes.max() - slopes.min()), 1e-9)
        rng = np.random.default_rng(6)
        for _ in range(500):
            weights = rng.dirichlet(np.ones(len(atoms)))
            sample = np.tensordot(weights, np.asarray(atoms), axes=1)
            self.assertLessEqual(best, self.objective.reduced(sample).value + 1e-10)

    def test_linear_objective(self) -> None:
        """
        Test that without curvature all weight moves to the cheapest atom and the others are dropped.
        """
        favored = Matching(np.array([2, 0, 3]), 4)
        costs = UnaryCost(1.0 - favored.to_matrix())
        points = PointSet(np.random.default_rng(7).random((4, 2)))
        source = points.subset([0, 1, 2])
        objective = NodeShiftingObjective(source, points, complete_graph(source).weights, costs, 0.0, 0.0)
        active = ActiveSet(objective, self.initial, objective.reduced(self.initial))
        for vertex, step in ((self.vertices[0], 0.4), (favored.assignment, 0.3)):
            active.move(active.add(vertex, objective.reduced(Matching(vertex, 4).to_matrix())), step)
        self.assertEqual(active.correct(1e-12, 1000), 2)
        self.assertEqual(len(active), 1)
        np.testing.assert_allclose(active.matrix(), favored.to_matrix(), atol=1e-12)

    def test_quadratic_step(self) -> None:
        """
        Test the parabola step from two values and a slope.
        """
        self.assertEqual(quadratic_step(1.0, 0.5, 0.0), 0.0)
        self.assertEqual(quadratic_step(1.0, -1.0, 0.0), 1.0)
        self.assertAlmostEqual(quadratic_step(0.18, -1.2, 0.98), 0.3, places=12)
        self.assertEqual(quadratic_step(0.0, -1.0, 5.0), 1.0 / 12.0)
