import math

import numpy as np
import pytest

from phrictl.maps import ControllerGrid, NormalizedPair, ObjectiveMap, normalize_pair
from phrictl.pareto import (
    EmptyFrontError,
    ParetoFront,
    ParetoPoint,
    assemble_front,
    non_dominated_filter,
    scalarize,
    weight_scan,
)


def synthetic_maps(c_vals, rho_vals, alpha=1.0):
    c_vals = np.asarray(c_vals, dtype=float)
    n, m = c_vals.shape
    grid = ControllerGrid(alpha, np.arange(1.0, n + 1), np.arange(1.0, m + 1))
    return (
        ObjectiveMap(grid, c_vals, "transparency"),
        ObjectiveMap(grid, np.asarray(rho_vals, dtype=float), "robustness"),
    )


def brute_force_front(c_map, rho_map):
    """O(n^2) pairwise dominance check over stable cells."""
    cells = []
    for i in range(c_map.values.shape[0]):
        for j in range(c_map.values.shape[1]):
            C, rho = c_map.values[i, j], rho_map.values[i, j]
            if math.isfinite(C) and math.isfinite(rho):
                cells.append((C, rho))
    kept = set()
    for C, rho in cells:
        dominated = any(
            C2 <= C and rho2 >= rho and (C2 < C or rho2 > rho)
            for C2, rho2 in cells
        )
        if not dominated:
            kept.add((C, rho))
    return kept


class TestScalarize:
    @pytest.mark.parametrize(
        "c_n,rho_n,w,expected",
        [(1, 1, 0, -1.0), (1, 1, 1, 1.0), (0.5, 0.8, 0.25, -0.475)],
    )
    def test_values(self, c_n, rho_n, w, expected):
        assert scalarize(c_n, rho_n, w) == pytest.approx(expected)

    def test_rejects_out_of_range_weight(self):
        with pytest.raises(ValueError):
            scalarize(0.5, 0.5, 1.1)


class TestWeightScan:
    def test_single_stable_cell(self):
        c_map, rho_map = synthetic_maps([[5.0]], [[0.5]])
        pair = normalize_pair(c_map, rho_map)
        points = weight_scan(pair, 0.1)
        assert len(points) == 1
        assert points[0].weight == 0.0
        assert points[0].C == 5.0 and points[0].rho == 0.5

    def test_endpoints_select_extremes(self):
        rng = np.random.default_rng(1)
        c_vals = rng.uniform(1, 10, (6, 6))
        rho_vals = rng.uniform(0.1, 0.9, (6, 6))
        c_map, rho_map = synthetic_maps(c_vals, rho_vals)
        pair = normalize_pair(c_map, rho_map)
        points = weight_scan(pair, 0.5)
        by_weight = {p.weight: p for p in points}
        assert by_weight[0.0].rho == np.max(rho_vals)
        w1 = [p for p in points if p.C == np.min(c_vals)]
        assert w1  # w=1 must have selected a min-C cell

    def test_scan_contained_in_filter(self, plant, weighting):
        rng = np.random.default_rng(9)
        c_vals = rng.uniform(1, 10, (12, 12))
        rho_vals = rng.uniform(0.1, 0.9, (12, 12))
        c_map, rho_map = synthetic_maps(c_vals, rho_vals)
        pair = normalize_pair(c_map, rho_map)
        scan = weight_scan(pair, 0.001)
        front = non_dominated_filter(c_map, rho_map)
        cells = {(p.m_F, p.b_F) for p in front.points}
        assert all((p.m_F, p.b_F) in cells for p in scan)

    def test_empty_raises(self):
        grid = ControllerGrid(1.0, np.array([1.0]), np.array([1.0]))
        pair = NormalizedPair(grid, np.array([[math.nan]]), np.array([[math.nan]]),
                              1.0, 1.0)
        with pytest.raises(EmptyFrontError):
            weight_scan(pair, 0.1)


class TestNonDominatedFilter:
    def test_both_kept_when_tradeoff(self):
        c_map, rho_map = synthetic_maps([[1.0, 2.0]], [[0.4, 0.5]])
        front = non_dominated_filter(c_map, rho_map)
        assert len(front) == 2

    def test_dominated_cell_removed(self):
        c_map, rho_map = synthetic_maps([[1.0, 2.0]], [[0.5, 0.4]])
        front = non_dominated_filter(c_map, rho_map)
        assert [(p.C, p.rho) for p in front.points] == [(1.0, 0.5)]

    def test_weak_dominance_removed(self):
        c_map, rho_map = synthetic_maps([[1.0, 2.0]], [[0.5, 0.5]])
        front = non_dominated_filter(c_map, rho_map)
        assert len(front) == 1
        assert front.points[0].C == 1.0

    def test_matches_brute_force(self):
        rng = np.random.default_rng(23)
        for _ in range(5):
            c_vals = rng.uniform(0, 5, (20, 20)).round(1)  # rounding forces ties
            rho_vals = rng.uniform(0, 1, (20, 20)).round(1)
            c_map, rho_map = synthetic_maps(c_vals, rho_vals)
            front = non_dominated_filter(c_map, rho_map)
            assert {(p.C, p.rho) for p in front.points} == brute_force_front(
                c_map, rho_map
            )

    def test_front_shape(self):
        rng = np.random.default_rng(31)
        c_map, rho_map = synthetic_maps(
            rng.uniform(0, 5, (15, 15)), rng.uniform(0, 1, (15, 15))
        )
        front = non_dominated_filter(c_map, rho_map)
        rhos = [p.rho for p in front.points]
        cs = [p.C for p in front.points]
        assert rhos == sorted(rhos)
        assert cs == sorted(cs)
        assert all(np.diff(rhos) > 0) and all(np.diff(cs) > 0)

    def test_no_internal_dominance(self):
        rng = np.random.default_rng(37)
        c_map, rho_map = synthetic_maps(
            rng.uniform(0, 5, (10, 10)), rng.uniform(0, 1, (10, 10))
        )
        front = non_dominated_filter(c_map, rho_map)
        for p in front.points:
            for q in front.points:
                if p is q:
                    continue
                assert not (q.C <= p.C and q.rho >= p.rho)


class TestAssembleFront:
    def test_convex_front_fully_annotated(self):
        # convex trade-off: every non-dominated point is a weighted-sum optimum
        rho = np.linspace(0.1, 0.9, 9)
        C = rho**2 * 10 + 1  # convex increasing
        c_map, rho_map = synthetic_maps(C.reshape(-1, 1), rho.reshape(-1, 1))
        pair = normalize_pair(c_map, rho_map)
        scan = weight_scan(pair, 0.001)
        front = assemble_front(scan, non_dominated_filter(c_map, rho_map))
        assert all(p.weight is not None for p in front.points)

    def test_concave_segment_left_unannotated(self):
        # concave bulge: interior points cannot be selected by any weight
        rho = np.array([0.1, 0.5, 0.9])
        C = np.array([1.0, 8.5, 10.0])  # middle point far above the chord
        c_map, rho_map = synthetic_maps(C.reshape(-1, 1), rho.reshape(-1, 1))
        pair = normalize_pair(c_map, rho_map)
        scan = weight_scan(pair, 0.001)
        front = assemble_front(scan, non_dominated_filter(c_map, rho_map))
        assert len(front) == 3
        middle = [p for p in front.points if p.rho == 0.5][0]
        assert middle.weight is None
        assert sum(p.weight is not None for p in front.points) == 2

    def test_inconsistent_sources_rejected(self):
        c_map, rho_map = synthetic_maps([[1.0, 2.0]], [[0.5, 0.6]])
        front = non_dominated_filter(c_map, rho_map)
        stray = [ParetoPoint(1.0, 99.0, 99.0, 1.0, 0.5, 0.5, 0.5, weight=0.1)]
        with pytest.raises(ValueError):
            assemble_front(stray, front)


class TestParetoFrontInvariants:
    def test_duplicate_cells_rejected(self):
        p = ParetoPoint(1.0, 1.0, 1.0, 1.0, 0.5, 0.5, 0.5)
        q = ParetoPoint(1.0, 1.0, 1.0, 2.0, 0.6, 0.9, 0.6)
        with pytest.raises(ValueError):
            ParetoFront(1.0, (p, q))

    def test_non_monotone_rejected(self):
        p = ParetoPoint(1.0, 1.0, 1.0, 2.0, 0.5, 0.5, 0.5)
        q = ParetoPoint(1.0, 2.0, 2.0, 1.0, 0.6, 0.9, 0.6)
        with pytest.raises(ValueError):
            ParetoFront(1.0, (p, q))
