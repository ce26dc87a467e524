"""Design selection on Pareto fronts: constraints, final choice, dominance.

Constraint filtering keeps points with C <= C_max, rho >= rho_min and a
displayed-compliance cutoff frequency of at least omega_c_min (evaluated at
the lower environment-stiffness bound, the conservative case).  Front
comparison samples both fronts at common rho values with stepwise
interpolation, so no unattained trade-off is ever fabricated.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .freqresp import AdmittanceController, EquivalentImpedance, PlantModel
from .metrics import cutoff_frequency
from .pareto import ParetoFront, ParetoPoint, scalarize


class SelectionError(ValueError):
    """A design was requested from an empty front."""


@dataclass(frozen=True)
class SelectionConstraints:
    C_max: float | None = None
    rho_min: float | None = None
    omega_c_min_hz: float | None = None
    k_e_eval: float = 610.0  # environment stiffness for the omega_c check [N/m]

    def __post_init__(self):
        if self.k_e_eval <= 0:
            raise ValueError("k_e_eval must be positive")


def annotate_cutoffs(front: ParetoFront, plant: PlantModel, k_e: float) -> ParetoFront:
    """Attach omega_c [Hz] (at environment stiffness k_e) to every point.

    Points already carrying an annotation (e.g. fixture fronts) are left
    untouched.
    """
    z_env = EquivalentImpedance(0.0, 0.0, k_e)
    points = []
    for p in front.points:
        if p.omega_c_hz is not None:
            points.append(p)
            continue
        ctrl = AdmittanceController(front.alpha, p.m_F, p.b_F)
        res = cutoff_frequency(plant, ctrl, z_env)
        points.append(replace(p, omega_c_hz=res.hz, omega_c_saturated=res.saturated))
    return ParetoFront(front.alpha, tuple(points), front.C_max, front.rho_max)


def apply_constraints(
    front: ParetoFront,
    cons: SelectionConstraints,
    plant: PlantModel | None = None,
) -> ParetoFront:
    """Filter the front by the active bounds; retained points keep their
    omega_c annotation.  An empty result is a valid outcome, not an error."""
    if cons.omega_c_min_hz is not None:
        needs_cutoff = any(p.omega_c_hz is None for p in front.points)
        if needs_cutoff:
            if plant is None:
                raise ValueError("omega_c bound needs a plant or annotated points")
            front = annotate_cutoffs(front, plant, cons.k_e_eval)
    kept = []
    for p in front.points:
        if cons.C_max is not None and p.C > cons.C_max:
            continue
        if cons.rho_min is not None and p.rho < cons.rho_min:
            continue
        if cons.omega_c_min_hz is not None and p.omega_c_hz < cons.omega_c_min_hz:
            continue
        kept.append(p)
    return ParetoFront(front.alpha, tuple(kept), front.C_max, front.rho_max)


def _tie_key(p: ParetoPoint):
    return (p.m_F, p.b_F)


def choose_design(
    front: ParetoFront, policy: str = "min_C", weight: float | None = None
) -> ParetoPoint:
    """Pick the final design from a (constrained) front.

    min_C: most transparent feasible point; max_rho: most robust; by_weight:
    argmin of the scalarized objective at the given weight using the front's
    normalization.  Ties break toward lower m_F then lower b_F.
    """
    if not front.points:
        raise SelectionError("cannot choose from an empty front")
    if policy == "min_C":
        return min(front.points, key=lambda p: (p.C, _tie_key(p)))
    if policy == "max_rho":
        return min(front.points, key=lambda p: (-p.rho, _tie_key(p)))
    if policy == "by_weight":
        if weight is None:
            raise ValueError("by_weight policy needs a weight")
        return min(
            front.points,
            key=lambda p: (scalarize(p.C_n, p.rho_n, weight), _tie_key(p)),
        )
    raise ValueError(f"unknown policy {policy!r}")


@dataclass(frozen=True)
class DominanceReport:
    reference_alpha: float
    challenger_alpha: float
    verdict: str  # challenger_dominates | reference_dominates | incomparable
    matched_samples: tuple[tuple[float, float, float], ...]  # (rho, C_ref, C_chal)


def _stepwise_C(front: ParetoFront, rho: float) -> float | None:
    """C of the point with the largest rho' <= rho, None below the front."""
    best = None
    for p in front.points:
        if p.rho <= rho:
            best = p.C
        else:
            break
    return best


def compare_fronts(a: ParetoFront, b: ParetoFront, rho_samples) -> DominanceReport:
    """Dominance of challenger b over reference a at the sampled rho values."""
    if not a.points or not b.points:
        raise ValueError("both fronts must be non-empty")
    lo = max(a.points[0].rho, b.points[0].rho)
    hi = min(a.points[-1].rho, b.points[-1].rho)
    matched = []
    for rho in rho_samples:
        if rho < lo or rho > hi:
            continue
        c_ref = _stepwise_C(a, rho)
        c_chal = _stepwise_C(b, rho)
        matched.append((float(rho), c_ref, c_chal))
    if not matched:
        return DominanceReport(a.alpha, b.alpha, "incomparable", ())
    chal_le = all(c <= r for _, r, c in matched)
    chal_lt = any(c < r for _, r, c in matched)
    ref_le = all(r <= c for _, r, c in matched)
    ref_lt = any(r < c for _, r, c in matched)
    if chal_le and chal_lt:
        verdict = "challenger_dominates"
    elif ref_le and ref_lt:
        verdict = "reference_dominates"
    else:
        verdict = "incomparable"
    return DominanceReport(a.alpha, b.alpha, verdict, tuple(matched))
