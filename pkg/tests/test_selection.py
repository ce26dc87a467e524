import math

import numpy as np
import pytest

from phrictl.freqresp import AdmittanceController
from phrictl.pareto import ParetoFront, ParetoPoint
from phrictl.selection import (
    DominanceReport,
    SelectionConstraints,
    SelectionError,
    annotate_cutoffs,
    apply_constraints,
    choose_design,
    compare_fronts,
)


def front_from(alpha, rows, c_max=None, rho_max=None):
    """rows: (m_F, b_F, C, rho[, omega_c_hz]) sorted by rho ascending."""
    c_max = c_max or max(r[2] for r in rows)
    rho_max = rho_max or max(r[3] for r in rows)
    points = tuple(
        ParetoPoint(
            alpha=alpha,
            m_F=r[0],
            b_F=r[1],
            C=r[2],
            rho=r[3],
            C_n=r[2] / c_max,
            rho_n=r[3] / rho_max,
            omega_c_hz=r[4] if len(r) > 4 else None,
        )
        for r in rows
    )
    return ParetoFront(alpha, points, c_max, rho_max)


@pytest.fixture
def simple_front():
    return front_from(
        1.0,
        [(1, 10, 10.0, 0.40, 3.0), (2, 20, 12.0, 0.50, 2.5), (3, 30, 15.0, 0.60, 2.0)],
    )


class TestApplyConstraints:
    def test_no_bounds_is_identity(self, simple_front):
        out = apply_constraints(simple_front, SelectionConstraints())
        assert out.points == simple_front.points

    def test_conflicting_bounds_give_empty(self):
        front = front_from(1.0, [(1, 1, 10.0, 0.5), (2, 2, 12.0, 0.6)])
        out = apply_constraints(
            front, SelectionConstraints(C_max=11.0, rho_min=0.55)
        )
        assert out.points == ()

    def test_cost_bound_keeps_cheap_point(self):
        front = front_from(1.0, [(1, 1, 10.0, 0.6), (2, 2, 12.0, 0.7)])
        out = apply_constraints(front, SelectionConstraints(C_max=11.0))
        assert [(p.C, p.rho) for p in out.points] == [(10.0, 0.6)]

    def test_cutoff_bound_uses_annotations(self, simple_front):
        out = apply_constraints(
            simple_front, SelectionConstraints(omega_c_min_hz=2.4)
        )
        assert [p.omega_c_hz for p in out.points] == [3.0, 2.5]

    def test_cutoff_bound_computes_from_plant(self, plant):
        front = front_from(0.4, [(16.7, 56, 13.0, 0.594)])
        out = apply_constraints(
            front, SelectionConstraints(omega_c_min_hz=0.5, k_e_eval=610.0), plant
        )
        assert len(out.points) == 1
        assert out.points[0].omega_c_hz == pytest.approx(1.688, abs=1e-3)

    def test_idempotent_and_order_free(self, simple_front):
        cons_a = SelectionConstraints(C_max=14.0)
        cons_b = SelectionConstraints(rho_min=0.45)
        both = SelectionConstraints(C_max=14.0, rho_min=0.45)
        ab = apply_constraints(apply_constraints(simple_front, cons_a), cons_b)
        ba = apply_constraints(apply_constraints(simple_front, cons_b), cons_a)
        direct = apply_constraints(simple_front, both)
        assert ab.points == ba.points == direct.points
        assert apply_constraints(direct, both).points == direct.points

    def test_output_is_subset(self, simple_front):
        out = apply_constraints(simple_front, SelectionConstraints(rho_min=0.5))
        assert set(out.points) <= set(simple_front.points)


class TestAnnotateCutoffs:
    def test_fills_missing_only(self, plant):
        front = front_from(1.0, [(3.2, 90, 16.9, 0.553, 99.0)])
        out = annotate_cutoffs(front, plant, 610.0)
        assert out.points[0].omega_c_hz == 99.0  # fixture annotation preserved
        bare = front_from(1.0, [(3.2, 90, 16.9, 0.553)])
        out2 = annotate_cutoffs(bare, plant, 610.0)
        assert out2.points[0].omega_c_hz is not None


class TestChooseDesign:
    def test_singleton_under_every_policy(self):
        front = front_from(0.4, [(16.7, 56, 13.0, 0.594)])
        for policy, w in (("min_C", None), ("max_rho", None), ("by_weight", 0.3)):
            assert choose_design(front, policy, w) == front.points[0]

    def test_min_c_is_min_rho_point(self, simple_front):
        chosen = choose_design(simple_front, "min_C")
        assert chosen.C == min(p.C for p in simple_front.points)
        assert chosen.rho == min(p.rho for p in simple_front.points)

    def test_weight_zero_matches_max_rho(self, simple_front):
        assert choose_design(simple_front, "by_weight", 0.0) == choose_design(
            simple_front, "max_rho"
        )

    def test_empty_front_raises(self):
        with pytest.raises(SelectionError):
            choose_design(ParetoFront(1.0, ()), "min_C")


class TestCompareFronts:
    def test_identical_fronts_incomparable(self, simple_front):
        report = compare_fronts(simple_front, simple_front, [0.45, 0.55])
        assert report.verdict == "incomparable"

    def test_shifted_front_dominates(self, simple_front):
        cheaper = front_from(
            0.4,
            [(1, 10, 8.0, 0.40), (2, 20, 10.0, 0.50), (3, 30, 13.0, 0.60)],
        )
        report = compare_fronts(simple_front, cheaper, [0.42, 0.5, 0.58])
        assert report.verdict == "challenger_dominates"
        reverse = compare_fronts(cheaper, simple_front, [0.42, 0.5, 0.58])
        assert reverse.verdict == "reference_dominates"

    def test_stepwise_interpolation(self, simple_front):
        report = compare_fronts(simple_front, simple_front, [0.45])
        rho, c_ref, c_chal = report.matched_samples[0]
        assert c_ref == 10.0  # point with largest rho' <= 0.45

    def test_empty_overlap(self):
        low = front_from(1.0, [(1, 1, 5.0, 0.1), (2, 2, 6.0, 0.2)])
        high = front_from(0.4, [(1, 1, 5.0, 0.8), (2, 2, 6.0, 0.9)])
        report = compare_fronts(low, high, [0.5])
        assert report.verdict == "incomparable"
        assert report.matched_samples == ()
