"""Classification of bidisc self-maps by their slice dynamics.

Each component is examined slice by slice: ``x -> f1(x, y)`` for a grid of
``y`` and ``y -> f2(x, y)`` for a grid of ``x``.  Either every slice has an
interior fixed point (the fixed points then form a holomorphic curve, kept
here as an on-demand solver) or every slice shares one boundary Wolff point.
The combination decides the map type; maps with interior fixed points are
handed to :func:`fix_locus`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .audit import self_map_audit
from .config import DEFAULT_TOL, Tolerances
from .dynamics import boundary_dilatation, denjoy_wolff, mobius_probe, properness_probe
from .errors import (AuditFailure, ContinuationFailure, InconsistentSlices, PoleError,
                     ProductIdentityViolation)
from .expr import BidiscMap, DiscFunction, ExprFunction, MapExpr, compile_expr, partials
from .hyperbolic import BidiscPoint, DiscPoint, UnitBoundaryPoint, angle_distance

SLICE_RADII = (0.2, 0.5, 0.8)
SLICE_ANGLES = (0.0, 0.5 * math.pi, math.pi, 1.5 * math.pi)
PROJECTION_PROBES = 50
SLICE_AXES = ("slice_in_x", "slice_in_y")


def default_grid(radii=SLICE_RADII, angles=SLICE_ANGLES) -> list[complex]:
    return [r * cmath.exp(1j * a) for r in radii for a in angles]


# --- slice fixed points ----------------------------------------------------------------


def _slice_function(e: MapExpr, axis: str, t: complex) -> ExprFunction:
    if axis == "slice_in_x":
        return ExprFunction(e, var="x", other=t)
    if axis == "slice_in_y":
        return ExprFunction(e, var="y", other=t)
    raise ValueError(f"axis must be one of {SLICE_AXES}")


def _slice_partials(e, axis, s, t):
    """``(value, d/ds, d/dt)`` of the component with slice variable ``s`` and parameter ``t``."""
    if axis == "slice_in_x":
        v, ds, dt = partials(e, s, t)
    else:
        v, dt, ds = partials(e, t, s)
    return v, ds, dt


def _slice_newton(e, axis, t, s0, tol=1e-15, max_steps=60) -> Optional[complex]:
    f = compile_expr(e)
    ev = (lambda s: f(s, t)) if axis == "slice_in_x" else (lambda s: f(t, s))
    s = complex(s0)
    try:
        res = abs(ev(s) - s)
        for _ in range(max_steps):
            if res <= tol:
                break
            v, ds, _ = _slice_partials(e, axis, s, t)
            den = ds - 1.0
            if den == 0:
                return None
            step = (v - s) / den
            lam = 1.0
            while True:
                cand = s - lam * step
                if abs(cand) < 1.0:
                    cres = abs(ev(cand) - cand)
                    if cres < res:
                        break
                lam *= 0.5
                if lam < 1e-8:
                    break
            if lam < 1e-8:
                break
            s, res = cand, cres
        # one more undamped step tightens the last digits near the circle
        v, ds, _ = _slice_partials(e, axis, s, t)
        if ds != 1.0:
            cand = s - (v - s) / (ds - 1.0)
            if abs(cand) < 1.0 and abs(ev(cand) - cand) <= res:
                s, res = cand, abs(ev(cand) - cand)
    except (PoleError, ZeroDivisionError, OverflowError):
        return None
    if abs(s) < 1.0 and res < 1e-12:
        return s
    return None


def solve_slice_fixed_point(e: MapExpr, t, axis: str = "slice_in_x",
                            tol: Tolerances = DEFAULT_TOL) -> Optional[DiscPoint]:
    """Interior fixed point of the slice at parameter ``t``, or None for a boundary Wolff point."""
    t = t.z if isinstance(t, DiscPoint) else complex(t)
    res = denjoy_wolff(_slice_function(e, axis, t), tol=tol)
    if res.kind == "identity":
        raise InconsistentSlices("slice is the identity: every point is fixed")
    if res.kind == "boundary":
        return None
    s = _slice_newton(e, axis, t, res.point.z)
    return DiscPoint.of(s if s is not None else res.point.z)


class SliceFixedCurve(DiscFunction):
    """``t -> s`` with ``s`` the interior fixed point of the slice at ``t``.

    Evaluated on demand: Newton from the last solution, falling back to the
    slice orbit, falling back to radial continuation from the origin.
    Results are memoised per parameter value.
    """

    def __init__(self, e: MapExpr, axis: str, tol: Tolerances = DEFAULT_TOL):
        self.expr, self.axis, self.tol = e, axis, tol
        self._memo: dict[complex, complex] = {}
        self._hint = 0j

    def __call__(self, t):
        t = complex(t)
        hit = self._memo.get(t)
        if hit is not None:
            return hit
        s = _slice_newton(self.expr, self.axis, t, self._hint)
        if s is None:
            s = self._from_orbit(t)
        if s is None:
            s = self._continue_radially(t)
        if s is None:
            raise ContinuationFailure(f"no interior slice fixed point found at t={t}")
        self._memo[t] = s
        self._hint = s
        return s

    def _from_orbit(self, t):
        g = _slice_function(self.expr, self.axis, t)
        z = self._hint
        try:
            for _ in range(2000):
                w = g(z)
                if abs(w) >= 1.0:
                    return None
                if abs(w - z) < 1e-10:
                    break
                z = w
        except PoleError:
            return None
        return _slice_newton(self.expr, self.axis, t, z)

    def _continue_radially(self, t):
        s = self._from_orbit_at(0j)
        if s is None:
            return None
        rho = abs(t)
        u = t / rho if rho else 1.0
        path = [0.5 * rho] + [r for r in 1.0 - 0.5 ** np.arange(2, 60) if r < rho] + [rho]
        for r in sorted(set(path)):
            s = _slice_newton(self.expr, self.axis, r * u, s)
            if s is None:
                return None
        return s

    def _from_orbit_at(self, t):
        res = denjoy_wolff(_slice_function(self.expr, self.axis, t), tol=self.tol)
        return res.point.z if res.kind == "interior" else None

    def derivative(self, t) -> complex:
        t = complex(t)
        s = self(t)
        _, ds, dt = _slice_partials(self.expr, self.axis, s, t)
        return dt / (1.0 - ds)

    def __repr__(self):
        return f"SliceFixedCurve(axis={self.axis!r})"


@dataclass
class HerveComponentResult:
    kind: str                                   # "wolff_independent" | "fixed_point_curve"
    tau: Optional[UnitBoundaryPoint] = None
    spread: Optional[float] = None
    curve: Optional[SliceFixedCurve] = field(default=None, compare=False, repr=False)
    samples: list = field(default_factory=list)  # (t, s)


def _circular_mean(thetas) -> float:
    return cmath.phase(np.mean(np.exp(1j * np.asarray(thetas))))


def slice_analysis(e: MapExpr, axis: str, grid=None,
                   tol: Tolerances = DEFAULT_TOL) -> HerveComponentResult:
    """Decide which branch of the slice dichotomy a component falls in."""
    grid = default_grid() if grid is None else [p.z if isinstance(p, DiscPoint) else complex(p) for p in grid]
    if not grid:
        raise ValueError("slice grid must be nonempty")
    interior, boundary = [], []
    for t in grid:
        res = denjoy_wolff(_slice_function(e, axis, t), tol=tol)
        if res.kind == "identity":
            raise InconsistentSlices(f"slice at {t} is the identity")
        if res.kind == "interior":
            s = _slice_newton(e, axis, t, res.point.z)
            interior.append((t, s if s is not None else res.point.z))
        else:
            boundary.append((t, res.tau.theta))
    if interior and boundary:
        raise InconsistentSlices(
            f"{len(interior)} slices have interior fixed points and {len(boundary)} do not")
    if interior:
        curve = SliceFixedCurve(e, axis, tol)
        for t, s in interior:
            curve._memo[complex(t)] = complex(s)
        return HerveComponentResult("fixed_point_curve", curve=curve,
                                    samples=[(complex(t), complex(s)) for t, s in interior])
    thetas = [th for _, th in boundary]
    spread = max(angle_distance(a, b) for a in thetas for b in thetas)
    if spread > tol.angle:
        raise InconsistentSlices(f"slice Wolff points spread over {spread:.3g} rad")
    return HerveComponentResult("wolff_independent", tau=UnitBoundaryPoint(_circular_mean(thetas)),
                                spread=float(spread))


# --- composed dynamics ------------------------------------------------------------------------


@dataclass
class ComposedDynamics:
    theta1: float
    theta2: float
    lambda12: float
    lambda21: float
    lambda1: float
    lambda2: float


def radial_limit(g: DiscFunction, tau: UnitBoundaryPoint, k: int = 40) -> complex:
    return complex(g((1.0 - 2.0 ** -k) * tau.tau))


def composed_dynamics(F1: DiscFunction, F2: DiscFunction,
                      tol: Tolerances = DEFAULT_TOL) -> ComposedDynamics:
    """Wolff points and dilatations of ``F1∘F2`` and ``F2∘F1`` plus the factor dilatations."""
    c12, c21 = F1.compose(F2), F2.compose(F1)
    dw12 = denjoy_wolff(c12, tol=tol)
    dw21 = denjoy_wolff(c21, tol=tol)
    for name, dw in (("F1∘F2", dw12), ("F2∘F1", dw21)):
        if dw.kind != "boundary":
            raise InconsistentSlices(f"{name} has an interior fixed point, so f has one too")
    lam1 = boundary_dilatation(F1, dw21.tau).lam
    lam2 = boundary_dilatation(F2, dw12.tau).lam
    prod = lam1 * lam2
    for name, lam in (("lambda12", dw12.alpha), ("lambda21", dw21.alpha)):
        if abs(lam - prod) / lam > tol.product_identity:
            raise ProductIdentityViolation(
                f"{name}={lam:.6g} but lambda1*lambda2={prod:.6g}")
    return ComposedDynamics(theta1=dw12.tau.theta, theta2=dw21.tau.theta,
                            lambda12=float(dw12.alpha), lambda21=float(dw21.alpha),
                            lambda1=float(lam1), lambda2=float(lam2))


# --- interior fixed points -------------------------------------------------------------------------


def _jacobian(f: BidiscMap, x, y):
    v1, a, b = partials(f.f1, x, y)
    v2, c, d = partials(f.f2, x, y)
    return np.array([v1 - x, v2 - y]), np.array([[a, b], [c, d]])


def newton_2d(f: BidiscMap, p0, tol=1e-13, max_steps=60):
    """Least-squares Newton on ``f(p) - p``; tolerates a singular Jacobian."""
    p = np.array(p0, dtype=complex)
    try:
        F, J = _jacobian(f, *p)
        res = np.max(np.abs(F))
        for _ in range(max_steps):
            if res < tol:
                break
            step = np.linalg.lstsq(J - np.eye(2), -F, rcond=None)[0]
            lam = 1.0
            while lam > 1e-6:
                cand = p + lam * step
                if np.max(np.abs(cand)) < 1.0:
                    Fc, Jc = _jacobian(f, *cand)
                    if np.max(np.abs(Fc)) < res:
                        break
                lam *= 0.5
            else:
                break
            p, F, J, res = cand, Fc, Jc, np.max(np.abs(Fc))
    except (PoleError, ZeroDivisionError, np.linalg.LinAlgError):
        return None, math.inf
    return p, float(res)


def find_interior_fixed_point(f: BidiscMap, tol: Tolerances = DEFAULT_TOL,
                              budget: int = 20_000) -> Optional[BidiscPoint]:
    """Iterate from the origin; polish a settled orbit, else try Newton from a few starts."""
    f1, f2 = compile_expr(f.f1), compile_expr(f.f2)
    inner = 1.0 - tol.interior_delta
    x = y = 0j
    tail = []
    for _ in range(budget):
        nx, ny = f1(x, y), f2(x, y)
        step = max(abs(nx - x), abs(ny - y))
        x, y = nx, ny
        if max(abs(x), abs(y)) > inner:
            break
        if step < tol.cauchy:
            p, res = newton_2d(f, (x, y))
            if p is not None and res < 1e-12 and np.max(np.abs(p)) < 1.0:
                return BidiscPoint.of(*p)
        tail.append((x, y))
        if len(tail) > 64:
            tail.pop(0)
    starts = [(0j, 0j)] + ([tuple(np.mean(np.asarray(tail), axis=0))] if tail else [])
    starts += [(0.5 * a, 0.5 * b) for a in (1, -1, 1j, -1j) for b in (1, -1j)]
    for s in starts:
        p, res = newton_2d(f, s, tol=1e-15)
        if p is not None and res < 1e-14 and np.max(np.abs(p)) <= inner:
            return BidiscPoint.of(*p)
    return None


# --- fixed-point locus -----------------------------------------------------------------------------


class FixCurve(DiscFunction):
    """``z -> w`` with ``(w, z)`` (or ``(z, w)`` when transposed) fixed by ``f``.

    Gauss-Newton in the free coordinate, continued from the known fixed
    point with adaptive steps.
    """

    def __init__(self, f: BidiscMap, p0: BidiscPoint, transposed: bool):
        self.f, self.transposed = f, transposed
        x0, y0 = p0.xy
        self.z0, self.w0 = (x0, y0) if transposed else (y0, x0)
        self._memo: dict[complex, complex] = {self.z0: self.w0}
        self._last = (self.z0, self.w0)

    def _point(self, w, z):
        return (z, w) if self.transposed else (w, z)

    def _residual(self, w, z):
        x, y = self._point(w, z)
        v1, a, b = partials(self.f.f1, x, y)
        v2, c, d = partials(self.f.f2, x, y)
        F = np.array([v1 - x, v2 - y])
        # derivative of the residual with respect to the free coordinate w
        J = np.array([a - 1.0, c]) if not self.transposed else np.array([b, d - 1.0])
        return F, J

    def _gauss_newton(self, z, w, max_steps=50):
        try:
            F, J = self._residual(w, z)
            res = np.max(np.abs(F))
            for _ in range(max_steps):
                if res < 1e-15:
                    break
                nj = np.vdot(J, J).real
                if nj == 0:
                    return None
                step = -np.vdot(J, F) / nj
                w_new = w + step
                if abs(w_new) >= 1.0:
                    return None
                F, J = self._residual(w_new, z)
                new_res = np.max(np.abs(F))
                if abs(step) < 1e-17 or new_res >= res:
                    w, res = (w_new, new_res) if new_res < res else (w, res)
                    break
                w, res = w_new, new_res
        except (PoleError, ZeroDivisionError):
            return None
        return w if res < 1e-11 else None

    def __call__(self, z):
        z = complex(z)
        hit = self._memo.get(z)
        if hit is not None:
            return hit
        za, wa = self._last
        w = self._gauss_newton(z, wa)
        if w is None:
            w = self._continue(self.z0, self.w0, z)
        if w is None:
            raise ContinuationFailure(f"Fix(f) continuation stalled before z={z}")
        self._memo[z] = w
        self._last = (z, w)
        return w

    def _continue(self, za, wa, z):
        s, h = 0.0, 0.25
        w = wa
        while s < 1.0:
            h = min(h, 1.0 - s)
            zt = za + (s + h) * (z - za)
            wt = self._gauss_newton(zt, w)
            if wt is None:
                h *= 0.5
                if h < 1e-12:
                    return None
                continue
            s, w = s + h, wt
            h *= 1.5
        return w

    def derivative(self, z) -> complex:
        z = complex(z)
        w = self(z)
        x, y = self._point(w, z)
        _, a, b = partials(self.f.f1, x, y)
        _, c, d = partials(self.f.f2, x, y)
        if not self.transposed:
            # w = g(y): a g' + b = g'  or  c g' + d = 1
            return b / (1.0 - a) if abs(1.0 - a) >= abs(c) else (1.0 - d) / c
        # w = g(x): c + d g' = g'  or  a + b g' = 1
        return c / (1.0 - d) if abs(1.0 - d) >= abs(b) else (1.0 - a) / b


@dataclass
class FixAnalysis:
    dim: int
    point: Optional[BidiscPoint] = None
    g: Optional[DiscFunction] = field(default=None, compare=False, repr=False)
    transposed: bool = False
    g_class: Optional[str] = None          # automorphism_or_identity | proper_not_aut | not_proper
    c: Optional[DiscPoint] = None
    theta: Optional[float] = None
    mobius: Optional[dict] = None


def _is_identity_map(f: BidiscMap, probes) -> bool:
    f1, f2 = compile_expr(f.f1), compile_expr(f.f2)
    return all(abs(f1(x, y) - x) < 1e-12 and abs(f2(x, y) - y) < 1e-12 for x, y in probes)


def _probe_points(n=PROJECTION_PROBES, seed=12345):
    rng = np.random.default_rng(seed)
    r = 0.95 * np.sqrt(rng.random((n, 2)))
    th = 2 * np.pi * rng.random((n, 2))
    pts = r * np.exp(1j * th)
    return [(complex(a), complex(b)) for a, b in pts]


def fix_locus(f: BidiscMap, p0: BidiscPoint, tol: Tolerances = DEFAULT_TOL) -> FixAnalysis:
    """Dimension and shape of Fix(f) through the interior fixed point ``p0``."""
    if _is_identity_map(f, _probe_points()):
        return FixAnalysis(dim=2, point=p0)
    x0, y0 = p0.xy
    F, J = _jacobian(f, x0, y0)
    if np.max(np.abs(F)) > tol.fixed_point:
        raise ContinuationFailure(f"{p0} is not a fixed point (residual {np.max(np.abs(F)):.3g})")
    M = J - np.eye(2)
    _, sv, vh = np.linalg.svd(M)
    rank = int(np.sum(sv > 1e-8 * max(1.0, sv[0])))
    if rank == 2:
        _check_isolated(f, p0)
        return FixAnalysis(dim=0, point=p0)
    if rank == 0:
        raise ContinuationFailure("Df - I vanishes but f is not the identity")
    kernel = vh[-1].conj()
    transposed = bool(abs(kernel[0]) > abs(kernel[1]))
    g = FixCurve(f, p0, transposed)
    _check_curve(f, g)
    out = FixAnalysis(dim=1, point=p0, g=g, transposed=transposed)
    mob = mobius_probe(g)
    if mob.kind in ("automorphism", "identity"):
        out.g_class = "automorphism_or_identity"
        out.mobius = {"kind": mob.kind, **(mob.params or {})}
        return out
    prop = properness_probe(g)
    if prop.proper:
        out.g_class = "proper_not_aut"
    else:
        out.g_class = "not_proper"
        out.c, out.theta = prop.interior_limit, prop.witness_angle
    return out


def _check_isolated(f, p0, ring=1e-3, n=12):
    x0, y0 = p0.xy
    for k in range(n):
        a = cmath.exp(2j * math.pi * k / n)
        b = cmath.exp(2j * math.pi * (k * 5 + 1) / n)
        start = (x0 + ring * a, y0 + ring * b * 0.7)
        p, res = newton_2d(f, start, tol=1e-15)
        if p is not None and res < 1e-13 and abs(p[0] - x0) + abs(p[1] - y0) > 1e-6:
            raise ContinuationFailure(f"found a second fixed point {p} near the supposedly isolated {p0}")


def _check_curve(f, g, n=16):
    f1, f2 = compile_expr(f.f1), compile_expr(f.f2)
    for k in range(n):
        z = 0.9 * (k + 1) / n * cmath.exp(2j * math.pi * k * 0.381966)
        w = g(z)
        x, y = (z, w) if g.transposed else (w, z)
        if max(abs(f1(x, y) - x), abs(f2(x, y) - y)) > 1e-9:
            raise ContinuationFailure(f"curve point ({x}, {y}) is not fixed")


# --- classification -----------------------------------------------------------------------------------


@dataclass
class MapTypeClassification:
    kind: str        # first_type | second_type | third_type | interior_fixed | projection_degenerate
    theta1: Optional[float] = None
    theta2: Optional[float] = None
    lambda1: Optional[float] = None
    lambda2: Optional[float] = None
    lambda12: Optional[float] = None
    lambda21: Optional[float] = None
    F1: Optional[DiscFunction] = field(default=None, compare=False, repr=False)
    F2: Optional[DiscFunction] = field(default=None, compare=False, repr=False)
    transposed: bool = False
    which: Optional[str] = None            # f1_is_pi1 | f2_is_pi2
    other_component_wolff: Optional[float] = None
    fix: Optional[FixAnalysis] = None
    projections: tuple = ()
    flags: list = field(default_factory=list)

    @property
    def indeterminate(self) -> bool:
        return any(fl.startswith("lambda") for fl in self.flags)


def _projection_flags(f: BidiscMap) -> tuple:
    pts = _probe_points()
    f1, f2 = compile_expr(f.f1), compile_expr(f.f2)
    flags = []
    if all(abs(f1(x, y) - x) < 1e-12 for x, y in pts):
        flags.append("f1_is_pi1")
    if all(abs(f2(x, y) - y) < 1e-12 for x, y in pts):
        flags.append("f2_is_pi2")
    return tuple(flags)


def _flag_lambdas(c: MapTypeClassification, names, band):
    for name in names:
        lam = getattr(c, name)
        if lam is not None and abs(lam - 1.0) <= band:
            c.flags.append(f"{name}_near_1")


def classify(f: BidiscMap, tol: Tolerances = DEFAULT_TOL, audit: bool = True,
             grid=None) -> MapTypeClassification:
    """Map type of ``f``; see the module docstring for the decision procedure."""
    if audit:
        rep = self_map_audit(f)
        if not rep.passed:
            raise AuditFailure(f"self-map audit failed: {rep}")
    proj = _projection_flags(f)
    if len(proj) == 2:
        p0 = BidiscPoint.of(0, 0)
        return MapTypeClassification("interior_fixed", fix=FixAnalysis(dim=2, point=p0),
                                     projections=proj)
    p0 = find_interior_fixed_point(f, tol)
    if p0 is not None:
        return MapTypeClassification("interior_fixed", fix=fix_locus(f, p0, tol), projections=proj)
    if proj:
        which = proj[0]
        other = (f.f2, "slice_in_y") if which == "f1_is_pi1" else (f.f1, "slice_in_x")
        r = slice_analysis(other[0], other[1], grid, tol)
        if r.kind != "wolff_independent":
            raise InconsistentSlices("projection-degenerate map whose other component has fixed points")
        return MapTypeClassification("projection_degenerate", which=which,
                                     other_component_wolff=r.tau.theta, projections=proj)

    r1 = slice_analysis(f.f1, "slice_in_x", grid, tol)
    r2 = slice_analysis(f.f2, "slice_in_y", grid, tol)
    if r1.kind == "fixed_point_curve" and r2.kind == "fixed_point_curve":
        cd = composed_dynamics(r1.curve, r2.curve, tol)
        c = MapTypeClassification("first_type", theta1=cd.theta1, theta2=cd.theta2,
                                  lambda1=cd.lambda1, lambda2=cd.lambda2, lambda12=cd.lambda12,
                                  lambda21=cd.lambda21, F1=r1.curve, F2=r2.curve)
        _flag_lambdas(c, ("lambda1", "lambda2"), tol.lambda_band)
        return c
    if r1.kind == "wolff_independent" and r2.kind == "wolff_independent":
        return MapTypeClassification("third_type", theta1=r1.tau.theta, theta2=r2.tau.theta)
    # second type: the Wolff-independent component goes first
    transposed = r1.kind == "fixed_point_curve"
    wolff, curve_res = (r2, r1) if transposed else (r1, r2)
    F2 = curve_res.curve
    lam2 = boundary_dilatation(F2, wolff.tau).lam
    theta2 = cmath.phase(radial_limit(F2, wolff.tau))
    c = MapTypeClassification("second_type", theta1=wolff.tau.theta, theta2=theta2, lambda2=lam2,
                              F2=F2, transposed=transposed)
    _flag_lambdas(c, ("lambda2",), tol.lambda_band)
    return c
