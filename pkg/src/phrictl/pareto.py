"""Pareto front construction over (transparency cost, vector margin).

Two routes are kept deliberately separate: the weighted-sum scan over
J = w*C_n + (1-w)*(-rho_n) mirrors the scalarization procedure, while the
exhaustive non-dominated filter is the canonical definition (and catches
concave front segments the scan cannot select).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .maps import NormalizedPair, ObjectiveMap


class EmptyFrontError(ValueError):
    """No stable cells were available to build a front from."""


@dataclass(frozen=True)
class ParetoPoint:
    alpha: float
    m_F: float
    b_F: float
    C: float
    rho: float
    C_n: float
    rho_n: float
    weight: float | None = None  # smallest w that selected this cell, if any
    omega_c_hz: float | None = None
    omega_c_saturated: bool = False


@dataclass(frozen=True)
class ParetoFront:
    """Non-dominated points sorted by rho ascending (C then ascends too)."""

    alpha: float
    points: tuple[ParetoPoint, ...]
    C_max: float | None = None
    rho_max: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        seen = set()
        for p in self.points:
            key = (p.m_F, p.b_F)
            if key in seen:
                raise ValueError(f"duplicate grid cell {key} in front")
            seen.add(key)
        for a, b in zip(self.points, self.points[1:]):
            if not (b.rho > a.rho and b.C > a.C):
                raise ValueError("front must have strictly increasing rho and C")

    def __len__(self):
        return len(self.points)


def scalarize(C_n: float, rho_n: float, w: float) -> float:
    """J = w*C_n + (1-w)*(-rho_n); lower is better."""
    if not (0.0 <= w <= 1.0):
        raise ValueError(f"weight must be in [0, 1], got {w}")
    return w * C_n + (1.0 - w) * (-rho_n)


def _point_from_cell(pair: NormalizedPair, i: int, j: int, weight=None) -> ParetoPoint:
    return ParetoPoint(
        alpha=pair.grid.alpha,
        m_F=float(pair.grid.m_F_values[i]),
        b_F=float(pair.grid.b_F_values[j]),
        C=float(pair.C_n[i, j] * pair.C_max),
        rho=float(pair.rho_n[i, j] * pair.rho_max),
        C_n=float(pair.C_n[i, j]),
        rho_n=float(pair.rho_n[i, j]),
        weight=weight,
    )


def weight_scan(pair: NormalizedPair, w_step: float = 0.001) -> list[ParetoPoint]:
    """argmin-J cell for each w in {0, w_step, ..., 1}.

    Ties break toward lower C_n, then higher rho_n, then row-major cell
    order; at the endpoint weights this is what keeps the selected cell
    non-dominated.  Duplicate selections across weights collapse to one
    point annotated with the smallest selecting w.  Result is sorted by
    rho ascending.
    """
    if not (0.0 < w_step <= 1.0):
        raise ValueError("w_step must be in (0, 1]")
    stable = np.isfinite(pair.C_n) & np.isfinite(pair.rho_n)
    if not np.any(stable):
        raise EmptyFrontError("no stable cells")
    c_n = np.where(stable, pair.C_n, 0.0)
    rho_n = np.where(stable, pair.rho_n, 0.0)

    n_steps = math.ceil(round(1.0 / w_step, 9))
    chosen: dict[tuple[int, int], float] = {}
    for k in range(n_steps + 1):
        w = min(k * w_step, 1.0)
        J = np.where(stable, w * c_n - (1.0 - w) * rho_n, np.inf)
        ties = np.flatnonzero(J == np.min(J))
        flat = int(min(ties, key=lambda f: (c_n.flat[f], -rho_n.flat[f], f)))
        cell = np.unravel_index(flat, J.shape)
        chosen.setdefault((int(cell[0]), int(cell[1])), w)

    points = [_point_from_cell(pair, i, j, w) for (i, j), w in chosen.items()]
    points.sort(key=lambda p: p.rho)
    return points


def non_dominated_filter(c_map: ObjectiveMap, rho_map: ObjectiveMap) -> ParetoFront:
    """All stable cells not weakly dominated (some cell with C <= and rho >=,
    one strict).  Equal (C, rho) records keep the lexicographically smallest
    (m_F, b_F)."""
    if c_map.grid.shape != rho_map.grid.shape:
        raise ValueError("maps have different grids")
    grid = c_map.grid
    stable = ~(c_map.sentinel_mask() | rho_map.sentinel_mask())
    idx = np.argwhere(stable)
    if idx.size == 0:
        raise EmptyFrontError("no stable cells")

    cells = [
        (
            float(c_map.values[i, j]),
            float(rho_map.values[i, j]),
            float(grid.m_F_values[i]),
            float(grid.b_F_values[j]),
        )
        for i, j in idx
    ]
    # dedupe equal (C, rho) keeping smallest (m_F, b_F)
    best: dict[tuple[float, float], tuple[float, float]] = {}
    for C, rho, m, b in cells:
        key = (C, rho)
        if key not in best or (m, b) < best[key]:
            best[key] = (m, b)
    # sweep in C ascending / rho descending order; keep strict rho improvements
    ordered = sorted(((C, rho, mb) for (C, rho), mb in best.items()),
                     key=lambda t: (t[0], -t[1]))
    kept = []
    best_rho = -math.inf
    for C, rho, (m, b) in ordered:
        if rho > best_rho:
            kept.append((C, rho, m, b))
            best_rho = rho

    finite_c = c_map.values[stable]
    finite_rho = rho_map.values[stable]
    C_max = float(np.max(finite_c))
    rho_max = float(np.max(finite_rho))
    points = [
        ParetoPoint(
            alpha=grid.alpha,
            m_F=m,
            b_F=b,
            C=C,
            rho=rho,
            C_n=C / C_max,
            rho_n=rho / rho_max,
        )
        for C, rho, m, b in sorted(kept, key=lambda t: t[1])
    ]
    return ParetoFront(grid.alpha, tuple(points), C_max, rho_max)


def assemble_front(scan_points, filtered: ParetoFront) -> ParetoFront:
    """Copy weight annotations from the scan onto the exhaustive front.

    Scan selections are weighted-sum optima and hence Pareto-optimal; a scan
    point missing from the filtered front means the two were built from
    different maps.
    """
    front_cells = {(p.m_F, p.b_F) for p in filtered.points}
    weights: dict[tuple[float, float], float] = {}
    for p in scan_points:
        if p.alpha != filtered.alpha or (p.m_F, p.b_F) not in front_cells:
            raise ValueError("scan and filter were built from different maps")
        if p.weight is not None:
            weights[(p.m_F, p.b_F)] = p.weight
    points = tuple(
        replace(p, weight=weights.get((p.m_F, p.b_F))) for p in filtered.points
    )
    return ParetoFront(filtered.alpha, points, filtered.C_max, filtered.rho_max)
