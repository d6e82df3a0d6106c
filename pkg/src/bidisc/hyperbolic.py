"""Hyperbolic geometry of the disc and the bidisc.

Distances, horocycles and horospheres.  Boundary points are stored as
angles so that ``|tau| == 1`` never drifts.  Horosphere membership is
expressed through a *margin*: negative means inside.

Every horosphere function accepts an optional interior ``base`` point that
replaces the origin as the reference point of the horosphere family.  With
base ``b`` the horocycle function at ``tau`` becomes ``u_tau(z) / u_tau(b)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .config import radial_schedule, tail_mask
from .errors import NumericFailure, RangeError

TWO_PI = 2.0 * math.pi


def normalize_angle(theta: float) -> float:
    """Map ``theta`` into (-pi, pi]."""
    t = math.remainder(float(theta), TWO_PI)
    if t <= -math.pi:
        t += TWO_PI
    return t


def angle_distance(a: float, b: float) -> float:
    return abs(normalize_angle(a - b))


@dataclass(frozen=True)
class DiscPoint:
    re: float
    im: float

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise RangeError(f"non-finite disc point ({self.re}, {self.im})")
        if self.re * self.re + self.im * self.im >= 1.0:
            raise RangeError(f"point {self.z} is not in the open unit disc")

    @classmethod
    def of(cls, z) -> "DiscPoint":
        z = complex(z)
        return cls(z.real, z.imag)

    @property
    def z(self) -> complex:
        return complex(self.re, self.im)


@dataclass(frozen=True)
class BidiscPoint:
    x: DiscPoint
    y: DiscPoint

    @classmethod
    def of(cls, x, y) -> "BidiscPoint":
        return cls(DiscPoint.of(x), DiscPoint.of(y))

    @property
    def xy(self) -> tuple[complex, complex]:
        return self.x.z, self.y.z


@dataclass(frozen=True)
class UnitBoundaryPoint:
    theta: float

    def __post_init__(self):
        if not math.isfinite(self.theta):
            raise RangeError("boundary angle must be finite")
        object.__setattr__(self, "theta", normalize_angle(self.theta))

    @classmethod
    def of(cls, tau) -> "UnitBoundaryPoint":
        return cls(cmath.phase(complex(tau)))

    @property
    def tau(self) -> complex:
        return cmath.exp(1j * self.theta)


@dataclass(frozen=True)
class SilovCorner:
    tau1: UnitBoundaryPoint
    tau2: UnitBoundaryPoint


@dataclass(frozen=True)
class VerticalFlat:
    """The point ``(tau1, y)`` of the face ``{tau1} x Delta``."""

    tau1: UnitBoundaryPoint
    y: DiscPoint


@dataclass(frozen=True)
class HorizontalFlat:
    """The point ``(x, tau2)`` of the face ``Delta x {tau2}``."""

    x: DiscPoint
    tau2: UnitBoundaryPoint


BidiscBoundaryPoint = Union[SilovCorner, VerticalFlat, HorizontalFlat]


def corner(theta1: float, theta2: float) -> SilovCorner:
    return SilovCorner(UnitBoundaryPoint(theta1), UnitBoundaryPoint(theta2))


def vflat(theta1: float, y=0j) -> VerticalFlat:
    return VerticalFlat(UnitBoundaryPoint(theta1), DiscPoint.of(y))


def hflat(x, theta2: float) -> HorizontalFlat:
    return HorizontalFlat(DiscPoint.of(x), UnitBoundaryPoint(theta2))


@dataclass(frozen=True)
class Horocycle:
    tau: UnitBoundaryPoint
    R: float

    def __post_init__(self):
        if not (math.isfinite(self.R) and self.R > 0):
            raise RangeError("horocycle radius must be finite and positive")


# --- distances -------------------------------------------------------------


def _one_minus_abs2(z):
    # (1-|z|)(1+|z|) loses less than 1 - |z|^2 near the circle
    r = np.abs(z)
    return (1.0 - r) * (1.0 + r)


def poincare_distance(z, w):
    """Poincare (= Kobayashi) distance of the disc; accepts scalars or arrays.

    Uses ``1 - rho^2 = (1-|z|^2)(1-|w|^2)/|1 - conj(z) w|^2`` so that points
    close to the circle keep their precision.
    """
    z = _as_complex(z)
    w = _as_complex(w)
    den = 1.0 - np.conj(z) * w
    rho = np.abs(z - w) / np.abs(den)
    one_minus_rho2 = _one_minus_abs2(z) * _one_minus_abs2(w) / np.abs(den) ** 2
    d = np.log1p(rho) - 0.5 * np.log(one_minus_rho2)
    d = np.where(rho == 0.0, 0.0, d)
    return float(d) if np.ndim(d) == 0 else d


def kobayashi_distance(p, q):
    """Kobayashi distance of the bidisc: the larger componentwise distance."""
    px, py = _pair(p)
    qx, qy = _pair(q)
    return np.maximum(poincare_distance(px, qx), poincare_distance(py, qy))


# --- horocycles --------------------------------------------------------------


def horocycle_value(tau, z):
    """``|tau - z|^2 / (1 - |z|^2)``; ``z`` lies in E(tau, R) iff this is < R."""
    t = _as_tau(tau)
    z = _as_complex(z)
    v = np.abs(t - z) ** 2 / _one_minus_abs2(z)
    return float(v) if np.ndim(v) == 0 else v


def horocycle_euclidean(h: Horocycle) -> tuple[complex, float]:
    R = h.R
    return h.tau.tau / (1.0 + R), R / (1.0 + R)


def horocycle_contains(h: Horocycle, z) -> bool:
    return horocycle_value(h.tau, z) < h.R


# --- horospheres of the bidisc ---------------------------------------------


def _base_scale(tau, b) -> float:
    if b is None:
        return 1.0
    return horocycle_value(tau, b)


def horosphere_value(bp: BidiscBoundaryPoint, p, base=None):
    """Smallest R with ``p`` in the closure of E(bp, R)."""
    x, y = _pair(p)
    bx, by = (None, None) if base is None else _pair(base)
    if isinstance(bp, SilovCorner):
        ux = horocycle_value(bp.tau1, x) / _base_scale(bp.tau1, bx)
        uy = horocycle_value(bp.tau2, y) / _base_scale(bp.tau2, by)
        v = np.maximum(ux, uy)
    elif isinstance(bp, VerticalFlat):
        v = horocycle_value(bp.tau1, x) / _base_scale(bp.tau1, bx)
    elif isinstance(bp, HorizontalFlat):
        v = horocycle_value(bp.tau2, y) / _base_scale(bp.tau2, by)
    else:
        raise TypeError(f"not a boundary point: {bp!r}")
    return float(v) if np.ndim(v) == 0 else v


def horosphere_margin(bp: BidiscBoundaryPoint, R: float, p, base=None):
    """Membership margin of ``p`` in E(bp, R); negative means inside."""
    return horosphere_value(bp, p, base) - R


def horosphere_factor_radii(bp: BidiscBoundaryPoint, R: float, base=None):
    """Per-coordinate horocycle radii of E(bp, R); ``None`` marks a free factor."""
    bx, by = (None, None) if base is None else _pair(base)
    if isinstance(bp, SilovCorner):
        return R * _base_scale(bp.tau1, bx), R * _base_scale(bp.tau2, by)
    if isinstance(bp, VerticalFlat):
        return R * _base_scale(bp.tau1, bx), None
    return None, R * _base_scale(bp.tau2, by)


# --- limit estimator ---------------------------------------------------------

def _approach_sequence(bp: BidiscBoundaryPoint):
    r = radial_schedule()
    if isinstance(bp, SilovCorner):
        return r * bp.tau1.tau, r * bp.tau2.tau
    if isinstance(bp, VerticalFlat):
        return r * bp.tau1.tau, np.full(r.shape, bp.y.z)
    return np.full(r.shape, bp.x.z), r * bp.tau2.tau


def horosphere_limit_estimate(bp: BidiscBoundaryPoint, p, mode: str = "small",
                              stability: float = 1e-3) -> float:
    """Estimate the horosphere value of ``p`` straight from the Kobayashi limit.

    Samples ``k(p, w) - k(0, w)`` along the radial approach ``r_k = 1 - 2^-k``
    and returns ``exp(2 * limsup)`` (small) or ``exp(2 * liminf)`` (big) over
    the tail window.  Meant as an independent check of the closed forms.
    """
    if mode not in ("small", "big"):
        raise ValueError("mode must be 'small' or 'big'")
    wx, wy = _approach_sequence(bp)
    x, y = _pair(p)
    diff = kobayashi_distance((x, y), (wx, wy)) - kobayashi_distance((0j, 0j), (wx, wy))
    tail = diff[tail_mask()]
    if not np.all(np.isfinite(tail)) or tail.max() - tail.min() > stability:
        raise NumericFailure(f"horosphere limit did not stabilise (spread {np.ptp(tail):.3g})")
    lim = tail.max() if mode == "small" else tail.min()
    return math.exp(2.0 * lim)


# --- helpers ----------------------------------------------------------------


def _as_complex(z):
    if isinstance(z, DiscPoint):
        return z.z
    if isinstance(z, np.ndarray):
        return z.astype(complex, copy=False)
    return complex(z)


def _as_tau(tau) -> complex:
    if isinstance(tau, UnitBoundaryPoint):
        return tau.tau
    return complex(tau)


def _pair(p):
    if isinstance(p, BidiscPoint):
        return p.x.z, p.y.z
    x, y = p
    return _as_complex(x), _as_complex(y)


# --- plain-data forms ----------------------------------------------------------

def boundary_point_to_dict(bp: BidiscBoundaryPoint) -> dict:
    if isinstance(bp, SilovCorner):
        return {"type": "corner", "theta1": bp.tau1.theta, "theta2": bp.tau2.theta}
    if isinstance(bp, VerticalFlat):
        return {"type": "vflat", "theta1": bp.tau1.theta, "y": {"re": bp.y.re, "im": bp.y.im}}
    if isinstance(bp, HorizontalFlat):
        return {"type": "hflat", "x": {"re": bp.x.re, "im": bp.x.im}, "theta2": bp.tau2.theta}
    raise TypeError(f"not a boundary point: {bp!r}")


def boundary_point_from_dict(d: dict) -> BidiscBoundaryPoint:
    kind = d["type"]
    if kind == "corner":
        return corner(d["theta1"], d["theta2"])
    if kind == "vflat":
        return vflat(d["theta1"], complex(d["y"]["re"], d["y"]["im"]))
    if kind == "hflat":
        return hflat(complex(d["x"]["re"], d["x"]["im"]), d["theta2"])
    raise ValueError(f"unknown boundary point type {kind!r}")
