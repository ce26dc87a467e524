"""Fractional-order transfer functions and frequency-response evaluation.

Everything downstream (cost maps, stability checks, Pareto fronts) works with
complex frequency responses sampled on positive-frequency grids, so transfer
functions are stored as ratios of sums of c*s^beta monomials and only ever
evaluated at s = j*omega on the principal branch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.signal


class EvaluationError(ArithmeticError):
    """Frequency response could not be evaluated (vanishing denominator)."""


_DEN_FLOOR = 1e-300

# j**k for integer exponents; keeps integer-order responses exact.
_J_CYCLE = (1.0 + 0.0j, 0.0 + 1.0j, -1.0 + 0.0j, 0.0 - 1.0j)


def eval_fractional_power(beta: float, omega):
    """(j*omega)**beta on the principal branch: omega**beta * exp(j*beta*pi/2).

    Accepts a scalar or ndarray of positive frequencies [rad/s].
    Integer beta uses the exact j**k cycle so integer-order responses carry
    no trigonometric rounding.
    """
    beta = float(beta)
    if not math.isfinite(beta):
        raise ValueError(f"exponent must be finite, got {beta}")
    om = np.asarray(omega, dtype=float)
    if np.any(om <= 0.0) or not np.all(np.isfinite(om)):
        raise ValueError("omega must be positive and finite")
    if beta == int(beta):
        phase = _J_CYCLE[int(beta) % 4]
    else:
        half = 0.5 * math.pi * beta
        phase = complex(math.cos(half), math.sin(half))
    out = om**beta * phase
    if np.ndim(omega) == 0:
        return complex(out)
    return out


@dataclass(frozen=True)
class FractionalTerm:
    """One monomial c * s^beta."""

    coefficient: float
    exponent: float

    def __post_init__(self):
        if not math.isfinite(self.coefficient):
            raise ValueError("coefficient must be finite")
        if not math.isfinite(self.exponent) or self.exponent < 0:
            raise ValueError("exponent must be finite and non-negative")


def _normalize_terms(terms) -> tuple[FractionalTerm, ...]:
    """Merge duplicate exponents and sort by exponent descending."""
    merged: dict[float, float] = {}
    for t in terms:
        if not isinstance(t, FractionalTerm):
            t = FractionalTerm(*t)
        merged[t.exponent] = merged.get(t.exponent, 0.0) + t.coefficient
    return tuple(
        FractionalTerm(c, e) for e, c in sorted(merged.items(), reverse=True)
    )


@dataclass(frozen=True)
class FractionalTransferFunction:
    """Ratio of sums of c*s^beta terms, evaluated at s = j*omega."""

    numerator: tuple[FractionalTerm, ...]
    denominator: tuple[FractionalTerm, ...]

    def __post_init__(self):
        object.__setattr__(self, "numerator", _normalize_terms(self.numerator))
        object.__setattr__(self, "denominator", _normalize_terms(self.denominator))
        if not self.denominator or all(t.coefficient == 0.0 for t in self.denominator):
            raise ValueError("denominator must not be identically zero")

    def _eval_terms(self, terms, omega):
        acc = None
        for t in terms:
            v = t.coefficient * eval_fractional_power(t.exponent, omega)
            acc = v if acc is None else acc + v
        if acc is None:
            return np.zeros(np.shape(omega), dtype=complex) if np.ndim(omega) else 0.0j
        return acc

    def __call__(self, omega):
        """Complex frequency response at s = j*omega (scalar or ndarray)."""
        num = self._eval_terms(self.numerator, omega)
        den = self._eval_terms(self.denominator, omega)
        if np.any(np.abs(den) < _DEN_FLOOR):
            raise EvaluationError("denominator magnitude below floor")
        return num / den

    def is_zero(self) -> bool:
        return all(t.coefficient == 0.0 for t in self.numerator)

    def leading_exponent_at_zero(self) -> float:
        """Exponent of the dominant behaviour as s -> 0 (num minus den).

        Negative values mean a pole at the origin of that fractional order.
        Undefined for the zero function.
        """
        if self.is_zero():
            raise ValueError("zero transfer function has no leading exponent")
        num_min = min(t.exponent for t in self.numerator if t.coefficient != 0.0)
        den_min = min(t.exponent for t in self.denominator if t.coefficient != 0.0)
        return num_min - den_min


def eval_tf(tf: FractionalTransferFunction, omega):
    """Evaluate tf at s = j*omega."""
    return tf(omega)


@dataclass(frozen=True)
class AdmittanceController:
    """Admittance controller Y(s) = 1/(m_F s^alpha + b_F), 0 < alpha <= 1.

    m_F is in kg*s^(alpha-1), b_F in N*s/m.  alpha = 1 is the integer-order
    special case.
    """

    alpha: float
    m_F: float
    b_F: float

    def __post_init__(self):
        if not (0.0 < self.alpha <= 1.0):
            raise ValueError(f"alpha must be in (0, 1], got {self.alpha}")
        if self.m_F < 0 or self.b_F < 0:
            raise ValueError("m_F and b_F must be non-negative")
        if self.m_F == 0 and self.b_F == 0:
            raise ValueError("m_F and b_F cannot both be zero")

    def as_tf(self) -> FractionalTransferFunction:
        den = []
        if self.m_F != 0:
            den.append(FractionalTerm(self.m_F, self.alpha))
        if self.b_F != 0:
            den.append(FractionalTerm(self.b_F, 0.0))
        return FractionalTransferFunction((FractionalTerm(1.0, 0.0),), tuple(den))


def controller_response(ctrl: AdmittanceController, omega):
    """Y(j*omega) = 1/(m_F (j*omega)^alpha + b_F)."""
    den = ctrl.m_F * eval_fractional_power(ctrl.alpha, omega) + ctrl.b_F
    if np.any(np.abs(den) < _DEN_FLOOR):
        raise EvaluationError("controller impedance vanished")
    return 1.0 / den


def effective_impedance(ctrl: AdmittanceController, omega: float):
    """(effective mass [kg], effective damping [N*s/m]) rendered at omega.

    mass = m_F * omega^(alpha-1) * sin(alpha*pi/2)
    damping = b_F + m_F * omega^alpha * cos(alpha*pi/2)
    """
    if omega <= 0:
        raise ValueError("omega must be positive")
    half = 0.5 * math.pi * ctrl.alpha
    mass = ctrl.m_F * omega ** (ctrl.alpha - 1.0) * math.sin(half)
    damping = ctrl.b_F + ctrl.m_F * omega**ctrl.alpha * math.cos(half)
    return mass, damping


@dataclass(frozen=True)
class EquivalentImpedance:
    """Coupled human+environment impedance Z(s) = (m s^2 + b s + k)/s."""

    m_eq: float
    b_eq: float
    k_eq: float

    def __post_init__(self):
        for v in (self.m_eq, self.b_eq, self.k_eq):
            if not math.isfinite(v) or v < 0:
                raise ValueError("impedance parameters must be finite and >= 0")

    def is_zero(self) -> bool:
        return self.m_eq == 0 and self.b_eq == 0 and self.k_eq == 0

    def as_tf(self) -> FractionalTransferFunction:
        num = []
        if self.m_eq != 0:
            num.append(FractionalTerm(self.m_eq, 2.0))
        if self.b_eq != 0:
            num.append(FractionalTerm(self.b_eq, 1.0))
        if self.k_eq != 0:
            num.append(FractionalTerm(self.k_eq, 0.0))
        return FractionalTransferFunction(tuple(num), (FractionalTerm(1.0, 1.0),))

    def __call__(self, omega):
        """Z(j*omega) = b + j*(m*omega - k/omega)."""
        om = np.asarray(omega, dtype=float)
        if np.any(om <= 0):
            raise ValueError("omega must be positive")
        out = self.b_eq + 1j * (self.m_eq * om - self.k_eq / om)
        if np.ndim(omega) == 0:
            return complex(out)
        return out


@dataclass(frozen=True)
class FrequencyGrid:
    """Strictly increasing positive frequency samples [rad/s]."""

    omega_L: float
    omega_U: float
    points: np.ndarray = field(compare=False)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        object.__setattr__(self, "points", pts)
        if self.omega_L <= 0 or self.omega_L >= self.omega_U:
            raise ValueError("need 0 < omega_L < omega_U")
        if pts.size < 2 or np.any(np.diff(pts) <= 0):
            raise ValueError("points must be strictly increasing with >= 2 entries")
        if pts[0] != self.omega_L or pts[-1] != self.omega_U:
            raise ValueError("grid endpoints must equal omega_L / omega_U")

    def __len__(self):
        return self.points.size


def make_log_grid(omega_L: float, omega_U: float, n: int) -> FrequencyGrid:
    """n log-uniform points from omega_L to omega_U inclusive."""
    if not (0 < omega_L < omega_U):
        raise ValueError(f"invalid range [{omega_L}, {omega_U}]")
    if n < 2:
        raise ValueError("need at least 2 points")
    pts = np.logspace(math.log10(omega_L), math.log10(omega_U), n)
    pts[0] = omega_L
    pts[-1] = omega_U
    return FrequencyGrid(omega_L, omega_U, pts)


@dataclass(frozen=True)
class PlantModel:
    """Robot velocity-loop model G(s) and force filter H(s)."""

    G: FractionalTransferFunction
    H: FractionalTransferFunction


DEFAULT_TAU_R_S = 1.0 / (2.0 * math.pi * 10.0)
DEFAULT_FILTER_ORDER = 2
DEFAULT_FILTER_CUTOFF_HZ = 20.0


def _butterworth_lowpass(order: int, cutoff_hz: float) -> FractionalTransferFunction:
    w0 = 2.0 * math.pi * cutoff_hz
    num, den = scipy.signal.butter(order, w0, btype="low", analog=True)
    num_terms = [
        FractionalTerm(float(c), float(len(num) - 1 - i)) for i, c in enumerate(num)
    ]
    den_terms = [
        FractionalTerm(float(c), float(len(den) - 1 - i)) for i, c in enumerate(den)
    ]
    return FractionalTransferFunction(tuple(num_terms), tuple(den_terms))


def _terms_from_config(pairs) -> tuple[FractionalTerm, ...]:
    return tuple(FractionalTerm(float(p["c"]), float(p["beta"])) for p in pairs)


def default_plant(config: dict | None = None) -> PlantModel:
    """Build the plant from config; G is a unity-DC first-order velocity lag,
    H an analog Butterworth low-pass with unity DC gain.

    Recognized keys: tau_r_s, filter_order, filter_cutoff_hz, or full term
    overrides G_num/G_den/H_num/H_den as lists of {c, beta}.
    """
    cfg = dict(config or {})
    if "G_num" in cfg or "G_den" in cfg:
        G = FractionalTransferFunction(
            _terms_from_config(cfg["G_num"]), _terms_from_config(cfg["G_den"])
        )
    else:
        tau_r = float(cfg.get("tau_r_s", DEFAULT_TAU_R_S))
        if tau_r <= 0:
            raise ValueError("tau_r_s must be positive")
        G = FractionalTransferFunction(
            (FractionalTerm(1.0, 0.0),),
            (FractionalTerm(tau_r, 1.0), FractionalTerm(1.0, 0.0)),
        )
    if "H_num" in cfg or "H_den" in cfg:
        H = FractionalTransferFunction(
            _terms_from_config(cfg["H_num"]), _terms_from_config(cfg["H_den"])
        )
    else:
        order = int(cfg.get("filter_order", DEFAULT_FILTER_ORDER))
        cutoff = float(cfg.get("filter_cutoff_hz", DEFAULT_FILTER_CUTOFF_HZ))
        if order < 1 or cutoff <= 0:
            raise ValueError("filter_order must be >= 1 and filter_cutoff_hz > 0")
        H = _butterworth_lowpass(order, cutoff)
    return PlantModel(G, H)
