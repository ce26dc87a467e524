"""Controller-parameter sweeps producing transparency and robustness maps.

A map is a matrix over the discretized (m_F, b_F) grid for one integration
order alpha (m_F outer / rows, b_F inner / columns).  Cells are computed
independently by the exact same single-cell operations exposed in metrics, so
a sub-grid sweep reproduces the corresponding sub-matrix bit for bit.
Non-finite entries (nan/inf) are sentinels: unstable or unevaluable cells.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .freqresp import AdmittanceController, EvaluationError, FrequencyGrid, PlantModel
from .metrics import (
    UNSTABLE,
    GridTooCoarseError,
    ImpedanceBounds,
    WeightingFunction,
    transparency_cost,
    worst_case_margin,
)


class NormalizationError(ValueError):
    """A map had no usable maximum to normalize by."""


@dataclass(frozen=True)
class ControllerGrid:
    alpha: float
    m_F_values: np.ndarray
    b_F_values: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.m_F_values, dtype=float)
        b = np.asarray(self.b_F_values, dtype=float)
        object.__setattr__(self, "m_F_values", m)
        object.__setattr__(self, "b_F_values", b)
        if not (0.0 < self.alpha <= 1.0):
            raise ValueError("alpha must be in (0, 1]")
        for axis in (m, b):
            if axis.size == 0 or np.any(np.diff(axis) <= 0):
                raise ValueError("grid axes must be non-empty and strictly increasing")

    @property
    def shape(self):
        return (self.m_F_values.size, self.b_F_values.size)


def _axis(lo: float, hi: float, step: float) -> np.ndarray:
    """lo plus every integer multiple of step inside (lo, hi]."""
    if step <= 0:
        raise ValueError("step must be positive")
    if hi < lo:
        raise ValueError("range must satisfy lo <= hi")
    k0 = math.ceil(round(lo / step, 9))
    k1 = math.floor(round(hi / step, 9))
    vals = [round(k * step, 12) for k in range(k0, k1 + 1)]
    if not vals or vals[0] > lo + 1e-12:
        vals.insert(0, lo)
    return np.asarray(vals, dtype=float)


def make_param_grid(
    alpha: float,
    m_range: tuple[float, float] = (0.2, 100.0),
    m_step: float = 0.1,
    b_range: tuple[float, float] = (0.001, 500.0),
    b_step: float = 1.0,
) -> ControllerGrid:
    """Feasible controller grid; defaults give 999 x 501 cells
    (m_F = 0.2, 0.3, ..., 100 and b_F = 0.001, 1, 2, ..., 500)."""
    return ControllerGrid(alpha, _axis(*m_range, m_step), _axis(*b_range, b_step))


@dataclass(frozen=True)
class ObjectiveMap:
    grid: ControllerGrid
    values: np.ndarray
    kind: str  # "transparency" | "robustness"

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", vals)
        if self.kind not in ("transparency", "robustness"):
            raise ValueError(f"unknown map kind {self.kind!r}")
        if vals.shape != self.grid.shape:
            raise ValueError("values shape does not match grid")

    def sentinel_mask(self) -> np.ndarray:
        return ~np.isfinite(self.values)


def _resolve_workers(workers: int | None) -> int:
    if workers is not None:
        return max(1, int(workers))
    env = os.environ.get("PHRICTL_THREADS")
    if env:
        return max(1, int(env))
    return 1


def _sweep(grid: ControllerGrid, cell_fn, workers: int | None) -> np.ndarray:
    """Fill the (m, b) matrix with cell_fn(m_F, b_F); per-cell failures become
    nan sentinels instead of aborting the sweep."""
    values = np.empty(grid.shape, dtype=float)

    def run_row(i: int):
        m_F = grid.m_F_values[i]
        for j, b_F in enumerate(grid.b_F_values):
            try:
                values[i, j] = cell_fn(float(m_F), float(b_F))
            except (EvaluationError, GridTooCoarseError):
                values[i, j] = math.nan

    n_workers = _resolve_workers(workers)
    if n_workers == 1:
        for i in range(grid.m_F_values.size):
            run_row(i)
    else:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            list(pool.map(run_row, range(grid.m_F_values.size)))
    return values


def sweep_transparency(
    plant: PlantModel,
    grid: ControllerGrid,
    freq: FrequencyGrid,
    W: WeightingFunction,
    workers: int | None = None,
) -> ObjectiveMap:
    def cell(m_F, b_F):
        return transparency_cost(plant, AdmittanceController(grid.alpha, m_F, b_F), freq, W)

    return ObjectiveMap(grid, _sweep(grid, cell, workers), "transparency")


def sweep_robustness(
    plant: PlantModel,
    grid: ControllerGrid,
    bounds: ImpedanceBounds,
    k_eq: float,
    freq: FrequencyGrid,
    nyquist_grid: FrequencyGrid | None = None,
    workers: int | None = None,
) -> ObjectiveMap:
    def cell(m_F, b_F):
        return worst_case_margin(
            plant,
            AdmittanceController(grid.alpha, m_F, b_F),
            bounds,
            k_eq,
            freq,
            nyquist_grid,
        )

    return ObjectiveMap(grid, _sweep(grid, cell, workers), "robustness")


@dataclass(frozen=True)
class NormalizedPair:
    grid: ControllerGrid
    C_n: np.ndarray
    rho_n: np.ndarray
    C_max: float
    rho_max: float


def align_sentinels(c_map: ObjectiveMap, rho_map: ObjectiveMap):
    """Apply the union sentinel mask to both maps so they pair up cleanly.

    Transparency sweeps do not know about stability, so cells the robustness
    sweep marked unstable are masked out of the cost map here (and vice versa
    for evaluation failures).
    """
    if c_map.grid.shape != rho_map.grid.shape:
        raise ValueError("maps have different grids")
    mask = c_map.sentinel_mask() | rho_map.sentinel_mask()
    c_vals = np.where(mask, math.nan, c_map.values)
    rho_vals = np.where(mask, math.nan, rho_map.values)
    return (
        ObjectiveMap(c_map.grid, c_vals, c_map.kind),
        ObjectiveMap(rho_map.grid, rho_vals, rho_map.kind),
    )


def normalize_pair(c_map: ObjectiveMap, rho_map: ObjectiveMap) -> NormalizedPair:
    """Divide each map by its maximum over stable, finite cells."""
    if c_map.grid.shape != rho_map.grid.shape:
        raise ValueError("maps have different grids")
    c_mask = c_map.sentinel_mask()
    rho_mask = rho_map.sentinel_mask()
    if not np.array_equal(c_mask, rho_mask):
        raise ValueError("sentinel masks differ; align_sentinels the maps first")
    if np.all(c_mask):
        raise NormalizationError("no stable cells to normalize over")
    c_max = float(np.max(c_map.values[~c_mask]))
    rho_max = float(np.max(rho_map.values[~rho_mask]))
    if c_max <= 0.0 or rho_max <= 0.0:
        raise NormalizationError("degenerate sweep: non-positive maximum")
    return NormalizedPair(
        c_map.grid,
        c_map.values / c_max,
        rho_map.values / rho_max,
        c_max,
        rho_max,
    )
