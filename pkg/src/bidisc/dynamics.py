"""One-variable dynamics on the disc.

Iteration, Denjoy-Wolff point detection, boundary dilatation coefficients,
Julia containment and Mobius / properness probes.  Every routine accepts a
one-variable MapExpr, a DSL string, or any :class:`DiscFunction` (the
fixed-point curves built by the classifier are DiscFunctions).
"""

from __future__ import annotations

import cmath
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import minimize_scalar

from .config import DEFAULT_RADII, DEFAULT_TOL, RADIAL_KS, Tolerances, radial_schedule, tail_mask
from .errors import IndeterminateError, NumericFailure, PoleError
from .expr import DiscFunction, ExprFunction, as_disc_function
from .hyperbolic import (DiscPoint, Horocycle, UnitBoundaryPoint, horocycle_euclidean,
                         horocycle_value)

NEWTON_STEPS = 60
TAU_WINDOW = 32
IDENTITY_PROBES = (0j, 0.3, -0.25j, 0.4 + 0.35j, -0.6 + 0.1j)


@dataclass(frozen=True)
class DenjoyWolffResult:
    kind: str                                   # "interior" | "boundary" | "identity"
    point: Optional[DiscPoint] = None
    multiplier_modulus: Optional[float] = None
    tau: Optional[UnitBoundaryPoint] = None
    alpha: Optional[float] = None
    iterations: int = 0


@dataclass
class DilatationEstimate:
    lam: float
    window_min: float
    window_max: float
    samples: list = field(default_factory=list)   # (r, ratio)


# --- helpers -----------------------------------------------------------------------


def apply(g: DiscFunction, zs: np.ndarray) -> np.ndarray:
    """Evaluate ``g`` on an array, vectorised when the function allows it."""
    zs = np.asarray(zs, dtype=complex)
    if isinstance(g, ExprFunction):
        with np.errstate(all="ignore"):
            out = g(zs)
        return np.broadcast_to(np.asarray(out, dtype=complex), zs.shape).copy()
    return np.array([complex(g(z)) for z in zs.ravel()], dtype=complex).reshape(zs.shape)


def is_identity(g: DiscFunction, tol: float = 1e-12) -> bool:
    try:
        return all(abs(g(z) - z) < tol for z in IDENTITY_PROBES)
    except PoleError:
        return False


def newton_fixed_point(g: DiscFunction, z0: complex, tol: float = 1e-12,
                       max_steps: int = NEWTON_STEPS) -> Optional[complex]:
    """Damped Newton on ``g(z) - z``; returns a fixed point inside the disc or None."""
    g = as_disc_function(g)
    z = complex(z0)
    try:
        res = abs(g(z) - z)
        for _ in range(max_steps):
            if res < tol * 1e-3:
                break
            h = g(z) - z
            dh = g.derivative(z) - 1.0
            if dh == 0:
                return None
            step = h / dh
            lam = 1.0
            while lam > 1e-6:
                cand = z - lam * step
                if abs(cand) < 1.0:
                    cres = abs(g(cand) - cand)
                    if cres < res or cres < tol * 1e-3:
                        break
                lam *= 0.5
            else:
                break
            if abs(cand - z) < 1e-17:
                z, res = cand, cres
                break
            z, res = cand, cres
    except (PoleError, ZeroDivisionError, OverflowError):
        return None
    if abs(z) < 1.0 and res < tol:
        return z
    return None


def _tau_from_history(history) -> float:
    pts = np.asarray(history, dtype=complex)
    pts = pts / np.abs(pts)
    return cmath.phase(pts.mean())


def polish_boundary_angle(g: DiscFunction, theta0: float, width: float = 0.1,
                          k: int = 40) -> float:
    """Refine a boundary fixed point by minimising ``|g(r tau) - tau|`` near ``theta0``."""
    r = 1.0 - 2.0 ** (-k)

    def resid(t):
        tau = cmath.exp(1j * t)
        try:
            return abs(g(r * tau) - tau)
        except (PoleError, ArithmeticError):
            return math.inf

    base = resid(theta0)
    if base < 1e-9:
        return theta0
    try:
        opt = minimize_scalar(resid, bounds=(theta0 - width, theta0 + width),
                              method="bounded", options={"xatol": 1e-13})
    except (ValueError, ArithmeticError):
        return theta0
    return float(opt.x) if opt.fun < 0.5 * base else theta0


def _boundary_certificate(g, theta, tol: Tolerances) -> Optional[float]:
    """Dilatation at ``theta`` when it is a boundary fixed point with lambda <= 1."""
    tau = cmath.exp(1j * theta)
    r = 1.0 - 2.0 ** -30
    try:
        if abs(g(r * tau) - tau) > 1e-6:
            return None
        est = boundary_dilatation(g, UnitBoundaryPoint(theta))
    except (NumericFailure, PoleError, ArithmeticError):
        return None
    return est.lam if est.lam <= 1.0 + tol.lambda_band else None


# --- operations ----------------------------------------------------------------------


def iterate(g, z0, n: int) -> list[DiscPoint]:
    """``[z0, g(z0), ..., g^n(z0)]``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    g = as_disc_function(g)
    z = z0.z if isinstance(z0, DiscPoint) else complex(z0)
    orbit = [DiscPoint.of(z)]
    for _ in range(n):
        z = complex(g(z))
        orbit.append(DiscPoint.of(z))
    return orbit


def denjoy_wolff(g, z0=0j, tol: Tolerances = DEFAULT_TOL) -> DenjoyWolffResult:
    """Locate the attracting interior fixed point or the Denjoy-Wolff boundary point.

    The orbit of ``z0`` is followed until it is Cauchy inside
    ``|z| <= 1 - interior_delta`` (interior, Newton-polished) or passes
    ``|z| > 1 - boundary_delta`` (boundary).  Slow parabolic orbits that stall
    between the two thresholds are accepted as boundary once the averaged
    direction is a boundary fixed point with dilatation <= 1, which rules out
    an interior fixed point.
    """
    g = as_disc_function(g)
    if is_identity(g):
        return DenjoyWolffResult(kind="identity")
    z = z0.z if isinstance(z0, DiscPoint) else complex(z0)
    history = deque(maxlen=TAU_WINDOW)
    inner = 1.0 - tol.interior_delta
    outer = 1.0 - tol.boundary_delta
    next_check = 64
    for k in range(1, tol.budget + 1):
        w = complex(g(z))
        if not cmath.isfinite(w):
            raise NumericFailure("orbit left the finite plane")
        step = abs(w - z)
        z = w
        history.append(z)
        az = abs(z)
        if az >= outer:
            return _boundary_result(g, history, k, tol, certified=False)
        if step < tol.cauchy:
            p = newton_fixed_point(g, z)
            if p is not None:
                return _interior_result(g, p, k)
            if az <= inner:
                raise IndeterminateError(f"orbit stalled at {z} but Newton polish failed")
        if az > inner and k >= next_check:
            next_check = 2 * k
            res = _boundary_result(g, history, k, tol, certified=True)
            if res is not None:
                return res
    if history:
        p = newton_fixed_point(g, np.mean(np.asarray(history)))
        if p is not None and abs(g.derivative(p)) <= 1.0 + 1e-9:
            return _interior_result(g, p, tol.budget)
        res = _boundary_result(g, history, tol.budget, tol, certified=True)
        if res is not None:
            return res
    raise IndeterminateError(f"orbit undecided after {tol.budget} iterations (last |z|={abs(z):.6f})")


def _interior_result(g, p, k) -> DenjoyWolffResult:
    return DenjoyWolffResult(kind="interior", point=DiscPoint.of(p),
                             multiplier_modulus=float(abs(g.derivative(p))), iterations=k)


def _boundary_result(g, history, k, tol, certified):
    theta0 = _tau_from_history(history)
    theta = polish_boundary_angle(g, theta0)
    if certified:
        lam = _boundary_certificate(g, theta, tol)
        if lam is None:
            return None
    else:
        lam = boundary_dilatation(g, UnitBoundaryPoint(theta)).lam
    return DenjoyWolffResult(kind="boundary", tau=UnitBoundaryPoint(theta), alpha=float(lam),
                             iterations=k)


def boundary_dilatation(g, tau, oscillation: float = 0.1) -> DilatationEstimate:
    """Radial liminf surrogate of ``(1 - |g(z)|) / (1 - |z|)`` at ``tau``."""
    g = as_disc_function(g)
    if not isinstance(tau, UnitBoundaryPoint):
        tau = UnitBoundaryPoint.of(tau)
    r = radial_schedule()
    vals = apply(g, r * tau.tau)
    ratios = (1.0 - np.abs(vals)) / (1.0 - r)
    tail = ratios[tail_mask()]
    samples = [(float(a), float(b)) for a, b in zip(r, ratios)]
    if not np.all(np.isfinite(tail)) or tail.min() <= 0:
        raise NumericFailure(f"dilatation ratios at theta={tau.theta:.6g} are not positive and finite")
    lo, hi = float(tail.min()), float(tail.max())
    if (hi - lo) / lo > oscillation:
        raise NumericFailure(
            f"dilatation ratios at theta={tau.theta:.6g} vary by {(hi - lo) / lo:.1%} over the tail")
    return DilatationEstimate(lam=lo, window_min=lo, window_max=hi, samples=samples)


def sample_horocycle(tau: UnitBoundaryPoint, R: float, n: int, rng) -> np.ndarray:
    """Uniform samples of the open horocycle E(tau, R) (Euclidean disc realisation)."""
    center, radius = horocycle_euclidean(Horocycle(tau, R))
    out = np.empty(0, dtype=complex)
    while out.size < n:
        rho = radius * np.sqrt(rng.random(n))
        z = center + rho * np.exp(2j * np.pi * rng.random(n))
        z = z[(np.abs(z) < 1.0) & (horocycle_value(tau, z) < R)]
        out = np.concatenate([out, z])
    return out[:n]


@dataclass(frozen=True)
class ContainmentResult:
    passed: bool
    witness: Optional[DiscPoint] = None
    R: Optional[float] = None
    image_value: Optional[float] = None


def julia_containment(g, sigma, tau, alpha: float, radii=DEFAULT_RADII, n_samples: int = 512,
                      seed: int = 0, slack: float = 1e-9) -> ContainmentResult:
    """Sample ``g(E(sigma, R)) ⊆ E(tau, alpha R)`` over ``radii``."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    g = as_disc_function(g)
    sigma = sigma if isinstance(sigma, UnitBoundaryPoint) else UnitBoundaryPoint.of(sigma)
    tau = tau if isinstance(tau, UnitBoundaryPoint) else UnitBoundaryPoint.of(tau)
    rng = np.random.default_rng(seed)
    for R in radii:
        zs = sample_horocycle(sigma, R, n_samples, rng)
        u = horocycle_value(tau, apply(g, zs))
        bad = np.flatnonzero(~(u < alpha * R + slack))
        if bad.size:
            i = bad[0]
            return ContainmentResult(False, DiscPoint.of(zs[i]), float(R), float(u[i]))
    return ContainmentResult(True)


@dataclass(frozen=True)
class MobiusProbeResult:
    kind: str                      # "automorphism" | "identity" | "not_automorphism"
    params: Optional[dict] = None  # rotation angle and zero of e^{i phi} (z - p)/(1 - conj(p) z)


def _fit_mobius(zs, ws):
    A = np.array([[z, 1.0, -z * w, -w] for z, w in zip(zs, ws)], dtype=complex)
    _, _, vh = np.linalg.svd(A)
    a, b, c, d = vh[-1].conj()
    return a, b, c, d


def mobius_probe(g, n_check: int = 50, seed: int = 0, tol: float = 1e-9) -> MobiusProbeResult:
    g = as_disc_function(g)
    if is_identity(g, tol):
        return MobiusProbeResult("identity")
    ref = np.array([0.0, 0.5, 0.5j], dtype=complex)
    try:
        a, b, c, d = _fit_mobius(ref, apply(g, ref))
    except (PoleError, np.linalg.LinAlgError):
        return MobiusProbeResult("not_automorphism")
    M = lambda z: (a * z + b) / (c * z + d)
    rng = np.random.default_rng(seed)
    zs = 0.9 * np.sqrt(rng.random(n_check)) * np.exp(2j * np.pi * rng.random(n_check))
    with np.errstate(all="ignore"):
        if not np.all(np.abs(apply(g, zs) - M(zs)) < tol):
            return MobiusProbeResult("not_automorphism")
        circle = np.exp(2j * np.pi * np.arange(8) / 8)
        on_circle = np.abs(np.abs(M(circle)) - 1.0) < tol
    if not (np.all(on_circle) and abs(M(0j)) < 1.0):
        return MobiusProbeResult("not_automorphism")
    p = -b / a if abs(a) > 1e-15 else None
    if p is None or abs(p) >= 1.0:
        return MobiusProbeResult("not_automorphism")
    z1 = 0.5 if abs(p - 0.5) > 1e-3 else -0.5
    rot = M(z1) * (1 - np.conj(p) * z1) / (z1 - p)
    return MobiusProbeResult("automorphism", {"phi": float(cmath.phase(rot)),
                                              "zero_re": float(p.real), "zero_im": float(p.imag)})


@dataclass(frozen=True)
class PropernessResult:
    proper: bool
    witness_angle: Optional[float] = None
    interior_limit: Optional[DiscPoint] = None


def properness_probe(g, n_angles: int = 32, interior_gap: float = 1e-3,
                     boundary_gap: float = 1e-6) -> PropernessResult:
    """Radial-limit test of properness.

    A direction whose tail stays below ``1 - interior_gap`` is a witness of
    non-properness (the first witness in angle order is reported).  Without
    a witness every tail must exceed ``1 - boundary_gap``.
    """
    g = as_disc_function(g)
    r = radial_schedule()
    mask = tail_mask()
    undecided = []
    for j in range(n_angles):
        theta = 2 * math.pi * j / n_angles
        vals = apply(g, r * cmath.exp(1j * theta))
        tail = np.abs(vals[mask])
        if tail.max() < 1.0 - interior_gap:
            return PropernessResult(False, float(UnitBoundaryPoint(theta).theta),
                                    DiscPoint.of(vals[-1]))
        if tail.min() <= 1.0 - boundary_gap:
            undecided.append(theta)
    if undecided:
        raise IndeterminateError(f"radial limits in the gap band at angles {undecided[:4]}")
    return PropernessResult(True)


__all__ = [
    "DenjoyWolffResult", "DilatationEstimate", "ContainmentResult", "MobiusProbeResult",
    "PropernessResult", "apply", "boundary_dilatation", "denjoy_wolff", "is_identity",
    "iterate", "julia_containment", "mobius_probe", "newton_fixed_point",
    "polish_boundary_angle", "properness_probe", "sample_horocycle", "RADIAL_KS",
]
