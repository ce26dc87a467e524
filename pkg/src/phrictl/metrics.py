"""Objective functions: transparency cost, vector margin, stability predicate.

The loop under study is L(jw) = G * Y * H * Z_eq (admittance-controlled robot
coupled to a human/environment impedance).  Transparency is scored by a
Butterworth-weighted sum of log10 |parasitic impedance|; robustness by the
vector margin rho = 1/max|S| = min|1 + L|.  Stability is decided numerically
from the winding of 1 + L along a wide log grid with conjugate-symmetric
closure, so fractional exponents need no special casing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .freqresp import (
    AdmittanceController,
    EquivalentImpedance,
    EvaluationError,
    FrequencyGrid,
    PlantModel,
    controller_response,
    make_log_grid,
)


class GridTooCoarseError(RuntimeError):
    """Phase step between Nyquist samples stayed above pi/2 after refinement."""


class UnstableLoopError(RuntimeError):
    """A margin was requested for a configuration that is not stable."""


#: Sentinel for map cells whose worst-case corner is unstable.
UNSTABLE = math.nan

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class WeightingFunction:
    """Butterworth magnitude weighting W(w) = 1/sqrt(1 + (w/cutoff)^(2n))."""

    order: int
    cutoff: float  # rad/s

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if self.cutoff <= 0:
            raise ValueError("cutoff must be positive")

    def __call__(self, omega):
        om = np.asarray(omega, dtype=float)
        out = 1.0 / np.sqrt(1.0 + (om / self.cutoff) ** (2 * self.order))
        if np.ndim(omega) == 0:
            return float(out)
        return out


def default_weighting() -> WeightingFunction:
    """Fifth-order Butterworth weighting with 5 Hz cutoff."""
    return WeightingFunction(5, 2.0 * math.pi * 5.0)


@dataclass(frozen=True)
class ImpedanceBounds:
    """Ranges of the coupled impedance parameters for one interaction scenario."""

    m_range: tuple[float, float]  # kg
    b_range: tuple[float, float]  # N*s/m
    k_range: tuple[float, float]  # N/m

    def __post_init__(self):
        for lo, hi in (self.m_range, self.b_range, self.k_range):
            if lo < 0 or hi < lo:
                raise ValueError("ranges must satisfy 0 <= lo <= hi")

    def corners(self):
        """The four (m_eq, b_eq) extreme combinations."""
        return [
            (m, b)
            for m in (self.m_range[0], self.m_range[1])
            for b in (self.b_range[0], self.b_range[1])
        ]


#: Scenario presets: free motion, fixed-stiffness contact, switching stiffness.
SCENARIOS = {
    "S1": ImpedanceBounds((0.0, 5.0), (0.0, 41.0), (0.0, 600.0)),
    "S2": ImpedanceBounds((0.0, 5.0), (0.0, 41.0), (610.0, 1210.0)),
    "S3": ImpedanceBounds((0.0, 5.0), (0.0, 41.0), (610.0, 1610.0)),
}


@dataclass(frozen=True)
class StabilityVerdict:
    stable: bool
    winding_number: int
    min_distance_to_critical: float


def default_nyquist_grid(points: int = 4000) -> FrequencyGrid:
    """1e-3 .. 1e4 Hz log grid used for stability verdicts."""
    return make_log_grid(_TWO_PI * 1e-3, _TWO_PI * 1e4, points)


def default_objective_grid(points: int = 500) -> FrequencyGrid:
    """0.01 .. 30 Hz log grid used for both objective functions."""
    return make_log_grid(_TWO_PI * 0.01, _TWO_PI * 30.0, points)


def parasitic_magnitude(plant: PlantModel, ctrl: AdmittanceController, omega):
    """|dZ(jw)| = 1/|G(jw) Y(jw) H(jw)|; +inf where the product vanishes."""
    gyh = (plant.G(omega) * plant.H(omega)) * controller_response(ctrl, omega)
    mag = np.abs(gyh)
    with np.errstate(divide="ignore"):
        out = np.where(mag == 0.0, np.inf, 1.0 / mag)
    if np.ndim(omega) == 0:
        return float(out)
    return out


def transparency_cost(
    plant: PlantModel,
    ctrl: AdmittanceController,
    grid: FrequencyGrid,
    W: WeightingFunction,
) -> float:
    """C = sum over the grid (ascending) of W(w) * log10 |dZ(jw)|."""
    mags = parasitic_magnitude(plant, ctrl, grid.points)
    if np.any(~np.isfinite(mags)):
        return math.inf
    with np.errstate(divide="ignore"):
        terms = W(grid.points) * np.log10(mags)
    if np.any(~np.isfinite(terms)):
        return math.inf
    # ascending-frequency order, accumulated sequentially for determinism
    return float(np.add.reduce(terms))


def loop_response(
    plant: PlantModel,
    ctrl: AdmittanceController,
    zeq: EquivalentImpedance,
    omega,
):
    """L(jw) = G * Y * H * Z_eq, multiplied as ((G*H) * Y) * Z_eq.

    The grouping is fixed so cached-plant sweeps reproduce the exact same
    floats as single-cell calls.
    """
    if zeq.is_zero():
        if np.ndim(omega) == 0:
            return 0.0j
        return np.zeros(np.shape(omega), dtype=complex)
    gh = plant.G(omega) * plant.H(omega)
    return (gh * controller_response(ctrl, omega)) * zeq(omega)


def _origin_pole_order(
    plant: PlantModel, ctrl: AdmittanceController, zeq: EquivalentImpedance
) -> float:
    """Fractional order of the pole of L at s = 0 (0 if L is finite there)."""
    lead = 0.0
    for tf in (plant.G, plant.H, ctrl.as_tf(), zeq.as_tf()):
        lead += tf.leading_exponent_at_zero()
    return max(0.0, -lead)


def _wrap_angle(a):
    return (a + math.pi) % _TWO_PI - math.pi


def _refined_phase_step(f_at, w1, w2, f1, f2, depth: int) -> float:
    d = _wrap_angle(np.angle(f2) - np.angle(f1))
    if abs(d) <= 0.5 * math.pi:
        return d
    if depth <= 0:
        raise GridTooCoarseError(
            f"phase step {d:.3f} rad between {w1:.4g} and {w2:.4g} rad/s"
        )
    wm = math.sqrt(w1 * w2)
    fm = f_at(wm)
    return _refined_phase_step(f_at, w1, wm, f1, fm, depth - 1) + _refined_phase_step(
        f_at, wm, w2, fm, f2, depth - 1
    )


def is_stable(
    plant: PlantModel,
    ctrl: AdmittanceController,
    zeq: EquivalentImpedance,
    nyquist_grid: FrequencyGrid | None = None,
) -> StabilityVerdict:
    """Numeric Nyquist verdict: winding of 1 + L(jw) about the origin.

    The positive-frequency phase accumulation is doubled (conjugate symmetry)
    and corrected for the origin-pole detour arc; the open loop is stable by
    construction for the block families in scope, so stability holds iff the
    winding number is zero.  Intervals whose phase step exceeds pi/2 are
    bisected locally before giving up with GridTooCoarseError.
    """
    if zeq.is_zero():
        return StabilityVerdict(True, 0, 1.0)
    grid = nyquist_grid if nyquist_grid is not None else default_nyquist_grid()
    L = loop_response(plant, ctrl, zeq, grid.points)
    f = 1.0 + L
    mags = np.abs(f)
    min_dist = float(np.min(mags))
    if min_dist == 0.0:
        return StabilityVerdict(False, 0, 0.0)

    ang = np.angle(f)
    steps = _wrap_angle(np.diff(ang))
    bad = np.abs(steps) > 0.5 * math.pi
    total = float(np.sum(steps[~bad]))
    if np.any(bad):
        f_at = lambda w: 1.0 + loop_response(plant, ctrl, zeq, w)
        for i in np.nonzero(bad)[0]:
            total += _refined_phase_step(
                f_at, grid.points[i], grid.points[i + 1], f[i], f[i + 1], 48
            )

    nu = _origin_pole_order(plant, ctrl, zeq)
    # RHP closed-loop pole count from the full Nyquist contour:
    # mirror doubles the accumulated phase, origin detour adds -pi*nu.
    winding = round(-(2.0 * total - math.pi * nu) / _TWO_PI)
    return StabilityVerdict(winding == 0, winding, min_dist)


def vector_margin(
    plant: PlantModel,
    ctrl: AdmittanceController,
    zeq: EquivalentImpedance,
    grid: FrequencyGrid,
    nyquist_grid: FrequencyGrid | None = None,
    check_stability: bool = True,
) -> float:
    """rho = 1/max|S(jw)| over the grid; identical to min|1 + L(jw)|."""
    if check_stability:
        verdict = is_stable(plant, ctrl, zeq, nyquist_grid)
        if not verdict.stable:
            raise UnstableLoopError("vector margin requested for an unstable loop")
    f = 1.0 + loop_response(plant, ctrl, zeq, grid.points)
    s_mags = 1.0 / np.abs(f)
    return float(1.0 / np.max(s_mags))


def worst_case_margin(
    plant: PlantModel,
    ctrl: AdmittanceController,
    bounds: ImpedanceBounds,
    k_eq: float,
    grid: FrequencyGrid,
    nyquist_grid: FrequencyGrid | None = None,
) -> float:
    """Minimum vector margin over the four (m_eq, b_eq) corners at fixed k_eq.

    Returns the UNSTABLE sentinel (nan) if any corner is unstable.
    """
    margins = []
    for m_eq, b_eq in bounds.corners():
        zeq = EquivalentImpedance(m_eq, b_eq, k_eq)
        verdict = is_stable(plant, ctrl, zeq, nyquist_grid)
        if not verdict.stable:
            return UNSTABLE
        margins.append(
            vector_margin(plant, ctrl, zeq, grid, nyquist_grid, check_stability=False)
        )
    return min(margins)


def _worst_corner_stable(plant, ctrl, bounds, k_eq, nyquist_grid) -> bool:
    for m_eq, b_eq in bounds.corners():
        zeq = EquivalentImpedance(m_eq, b_eq, k_eq)
        if not is_stable(plant, ctrl, zeq, nyquist_grid).stable:
            return False
    return True


def stability_boundary(
    plant: PlantModel,
    alpha: float,
    k_eq: float,
    m_F_values,
    bounds: ImpedanceBounds,
    b_range: tuple[float, float] = (0.001, 500.0),
    tol: float = 0.5,
    nyquist_grid: FrequencyGrid | None = None,
):
    """Per m_F, the smallest b_F whose worst-corner verdict is stable.

    Bisection to `tol` N*s/m between the unstable low end and stable high end
    of b_range.  Entries without a stable/unstable bracket get None.
    """
    out = []
    b_lo0, b_hi0 = b_range
    for m_F in m_F_values:
        def stable_at(b_F):
            ctrl = AdmittanceController(alpha, m_F, b_F)
            return _worst_corner_stable(plant, ctrl, bounds, k_eq, nyquist_grid)

        lo_ok = stable_at(b_lo0)
        hi_ok = stable_at(b_hi0)
        if lo_ok or not hi_ok:
            out.append((float(m_F), None))
            continue
        lo, hi = b_lo0, b_hi0
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if stable_at(mid):
                hi = mid
            else:
                lo = mid
        out.append((float(m_F), float(hi)))
    return out


@dataclass(frozen=True)
class CutoffResult:
    hz: float
    saturated: bool


def _displayed_compliance_mag(plant, ctrl, z_env: EquivalentImpedance, omega):
    """|T_disp(jw)| with T_disp = 1/(jw * Z_disp), Z_disp = (1 + G Y H Z_e)/(G Y H)."""
    gyh = (plant.G(omega) * plant.H(omega)) * controller_response(ctrl, omega)
    if z_env.is_zero():
        z_disp = 1.0 / gyh
    else:
        z_disp = (1.0 + gyh * z_env(omega)) / gyh
    return np.abs(1.0 / (1j * np.asarray(omega, dtype=float) * z_disp))


def cutoff_frequency(
    plant: PlantModel,
    ctrl: AdmittanceController,
    z_env: EquivalentImpedance,
    grid: FrequencyGrid | None = None,
) -> CutoffResult:
    """Lowest frequency [Hz] where |T_disp| drops to 1/sqrt(2) of its value at
    the bottom of the band, refined by bisection to 1e-3 Hz.

    Returns the top of the band with saturated=True if the threshold is never
    crossed.
    """
    grid = grid if grid is not None else default_objective_grid()
    mags = _displayed_compliance_mag(plant, ctrl, z_env, grid.points)
    threshold = mags[0] / math.sqrt(2.0)
    idx = None
    for i in range(1, len(grid.points)):
        if mags[i] <= threshold:
            idx = i
            break
    if idx is None:
        return CutoffResult(float(grid.omega_U / _TWO_PI), True)
    lo, hi = float(grid.points[idx - 1]), float(grid.points[idx])
    tol = _TWO_PI * 1e-3
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _displayed_compliance_mag(plant, ctrl, z_env, np.array([mid]))[0] <= threshold:
            hi = mid
        else:
            lo = mid
    return CutoffResult(0.5 * (lo + hi) / _TWO_PI, False)
