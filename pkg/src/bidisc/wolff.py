"""Wolff-point sets: prediction from the map type and sampled verification.

A prediction is a list of *pieces* (whole flat faces, single corners, graph
boundaries, ...) so that membership of any boundary point can be decided.
Verification samples each horosphere E(bp, R) over a grid of radii and
looks for a point whose image leaves it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .classifier import MapTypeClassification
from .config import DEFAULT_RADII, DEFAULT_TOL, Tolerances
from .dynamics import DilatationEstimate, boundary_dilatation
from .errors import IndeterminateError
from .expr import BidiscMap, CallableFunction, MapExpr, compile_expr
from .hyperbolic import (BidiscBoundaryPoint, HorizontalFlat, SilovCorner, UnitBoundaryPoint,
                         VerticalFlat, angle_distance, boundary_point_from_dict,
                         boundary_point_to_dict, corner, hflat, horocycle_euclidean,
                         horocycle_value, horosphere_factor_radii, horosphere_margin, vflat, Horocycle)

FREE_FACTOR_RADIUS = 0.999
MATCH_ANGLE = 1e-3   # angular slack when matching probes against predicted pieces


# --- predicted sets --------------------------------------------------------------------


@dataclass
class WolffSetDescription:
    """``kind`` names the case; ``pieces`` is what :meth:`contains` reads.

    Piece types: ``vflat``/``hflat`` (a whole face at ``theta``), ``all_vflats``,
    ``all_hflats``, ``corner`` (``theta1``, ``theta2``), ``corners_theta1`` /
    ``corners_theta2`` (every corner with that coordinate), ``graph`` (corners
    ``(g(t), t)`` of an automorphism, or ``(t, g(t))`` when transposed) and
    ``everything``.
    """

    kind: str
    theta1: Optional[float] = None
    theta2: Optional[float] = None
    pieces: list = field(default_factory=list)
    theorem_asserted: bool = False
    reason: Optional[str] = None

    def contains(self, bp: BidiscBoundaryPoint, atol: float = MATCH_ANGLE) -> bool:
        return any(_piece_contains(p, bp, atol) for p in self.pieces)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "WolffSetDescription":
        return cls(**d)


def _near(a, b, atol):
    return angle_distance(a, b) <= atol


def _mobius_boundary(params: Optional[dict], t: float) -> float:
    """Angle of the automorphism (identity when ``params`` is None) at ``e^{it}``."""
    if params is None:
        return t
    p = complex(params["zero_re"], params["zero_im"])
    z = cmath.exp(1j * t)
    return cmath.phase(cmath.exp(1j * params["phi"]) * (z - p) / (1 - p.conjugate() * z))


def _piece_contains(piece: dict, bp, atol) -> bool:
    t = piece["type"]
    if t == "everything":
        return True
    if isinstance(bp, VerticalFlat):
        return t == "all_vflats" or (t == "vflat" and _near(piece["theta"], bp.tau1.theta, atol))
    if isinstance(bp, HorizontalFlat):
        return t == "all_hflats" or (t == "hflat" and _near(piece["theta"], bp.tau2.theta, atol))
    a, b = bp.tau1.theta, bp.tau2.theta
    if t == "corner":
        return _near(piece["theta1"], a, atol) and _near(piece["theta2"], b, atol)
    if t == "corners_theta1":
        return _near(piece["theta"], a, atol)
    if t == "corners_theta2":
        return _near(piece["theta"], b, atol)
    if t == "graph":
        # non-transposed: corner (g(t), t); transposed: (t, g(t))
        free, image = (a, b) if piece["transposed"] else (b, a)
        return _near(_mobius_boundary(piece.get("mobius"), free), image, atol)
    return False


def predict(c: MapTypeClassification) -> WolffSetDescription:
    """Wolff set implied by the classification."""
    if c.indeterminate:
        return WolffSetDescription("Indeterminate", c.theta1, c.theta2,
                                   reason="dilatation within the band around 1: " + ", ".join(c.flags))
    if c.kind == "first_type":
        if c.lambda1 > 1 or c.lambda2 > 1:
            return WolffSetDescription("Empty")
        return WolffSetDescription("SilovPoint", c.theta1, c.theta2,
                                   [{"type": "corner", "theta1": c.theta1, "theta2": c.theta2}])
    if c.kind == "second_type":
        # theta1 belongs to the Wolff-independent coordinate (y when transposed)
        if c.transposed:
            flat = {"type": "hflat", "theta": c.theta1}
            corner_piece = {"type": "corner", "theta1": c.theta2, "theta2": c.theta1}
        else:
            flat = {"type": "vflat", "theta": c.theta1}
            corner_piece = {"type": "corner", "theta1": c.theta1, "theta2": c.theta2}
        if c.lambda2 <= 1:
            return WolffSetDescription("FlatPlusCorner", c.theta1, c.theta2, [flat, corner_piece])
        return WolffSetDescription("FlatOnly", c.theta1, c.theta2, [flat])
    if c.kind == "third_type":
        return WolffSetDescription("TwoFlatsPlusCorner", c.theta1, c.theta2, [
            {"type": "vflat", "theta": c.theta1}, {"type": "hflat", "theta": c.theta2},
            {"type": "corner", "theta1": c.theta1, "theta2": c.theta2}])
    if c.kind == "projection_degenerate":
        th = c.other_component_wolff
        if c.which == "f1_is_pi1":
            pieces = [{"type": "all_vflats"}, {"type": "hflat", "theta": th},
                      {"type": "corners_theta2", "theta": th}]
            return WolffSetDescription("ProjectionDegenerateSet", None, th, pieces)
        pieces = [{"type": "all_hflats"}, {"type": "vflat", "theta": th},
                  {"type": "corners_theta1", "theta": th}]
        return WolffSetDescription("ProjectionDegenerateSet", th, None, pieces)
    if c.kind == "interior_fixed":
        return _predict_fixed(c)
    raise ValueError(f"unknown classification kind {c.kind!r}")


def _predict_fixed(c: MapTypeClassification) -> WolffSetDescription:
    fx = c.fix
    if fx.dim == 2:
        return WolffSetDescription("FixBoundary", pieces=[{"type": "everything"}])
    if fx.dim == 0 or fx.g_class == "proper_not_aut":
        return WolffSetDescription("Empty")
    if fx.g_class == "automorphism_or_identity":
        mob = fx.mobius or {}
        params = None if mob.get("kind") == "identity" else {k: mob[k] for k in ("phi", "zero_re", "zero_im")}
        return WolffSetDescription("FixBoundary", pieces=[
            {"type": "graph", "transposed": fx.transposed, "mobius": params}])
    # g not proper: the two faces through (e^{±i theta}, c) on the side g is parametrised by
    flat = "vflat" if fx.transposed else "hflat"
    angles = sorted({round(fx.theta, 12), round(-fx.theta if fx.theta != math.pi else fx.theta, 12)})
    return WolffSetDescription("DisconnectedPair", pieces=[{"type": flat, "theta": a} for a in angles],
                               theorem_asserted=True,
                               reason=f"g has interior radial limit c={fx.c.z:.6g} at angle {fx.theta:.6g}")


# --- horosphere sampling ---------------------------------------------------------------


def sample_horocycle_mixed(tau: UnitBoundaryPoint, R: float, n: int, rng) -> np.ndarray:
    """Points of E(tau, R): half uniform, a quarter near the rim, a quarter near the tangency.

    The rim strata matter because invariance failures of parabolic-like maps
    only show up close to the horocycle boundary.
    """
    center, radius = horocycle_euclidean(Horocycle(tau, R))
    n_uni = n - 2 * (n // 4)
    n_rim = n // 4
    rho = np.concatenate([
        radius * np.sqrt(rng.random(n_uni)),
        radius * (1.0 - 10.0 ** rng.uniform(-9, -1, n_rim)),
        radius * (1.0 - 10.0 ** rng.uniform(-9, -1, n_rim)),
    ])
    # angle measured from the centre; the tangency point sits at arg(tau)
    near = np.pi * 10.0 ** rng.uniform(-6, 0, n_rim) * rng.choice([-1.0, 1.0], n_rim)
    phi = np.concatenate([2 * np.pi * rng.random(n_uni + n_rim), near])
    z = center + rho * np.exp(1j * (phi + tau.theta))
    return z[np.abs(z) < 1.0]


def _sample_free(n, rng):
    return FREE_FACTOR_RADIUS * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))


def sample_horosphere(bp: BidiscBoundaryPoint, R: float, n: int, rng, base=None):
    """``(xs, ys)`` inside E(bp, R); free factors of flats are uniform in a 0.999 disc."""
    rx, ry = horosphere_factor_radii(bp, R, base)
    if isinstance(bp, SilovCorner):
        tx, ty = bp.tau1, bp.tau2
    elif isinstance(bp, VerticalFlat):
        tx, ty = bp.tau1, None
    else:
        tx, ty = None, bp.tau2
    xs = sample_horocycle_mixed(tx, rx, n, rng) if rx is not None else _sample_free(n, rng)
    ys = sample_horocycle_mixed(ty, ry, n, rng) if ry is not None else _sample_free(n, rng)
    m = min(xs.size, ys.size)
    xs, ys = xs[:m], ys[:m]
    # pair rim-heavy x's with uniform y's as well as with each other
    ys = np.concatenate([ys, np.roll(ys, m // 2)])
    xs = np.concatenate([xs, xs])
    inside = horosphere_margin(bp, R, (xs, ys), base) < 0
    return xs[inside], ys[inside]


@dataclass
class VerificationVerdict:
    point: BidiscBoundaryPoint
    outcome: str                           # "Invariant" (sampled) | "Violated"
    min_margin: Optional[float] = None     # smallest R - value(f(p)) seen, Invariant only
    witness: Optional[tuple] = None        # (x, y) as complex
    R: Optional[float] = None
    image_margin: Optional[float] = None
    radii_tested: list = field(default_factory=list)
    samples_per_radius: int = 0
    seed: int = 0

    @property
    def invariant(self) -> bool:
        return self.outcome == "Invariant"

    def to_dict(self) -> dict:
        d = {
            "point": boundary_point_to_dict(self.point),
            "outcome": self.outcome,
            "label": "Invariant (sampled)" if self.invariant else "Violated",
            "min_margin": self.min_margin,
            "R": self.R,
            "image_margin": self.image_margin,
            "radii_tested": list(self.radii_tested),
            "samples_per_radius": self.samples_per_radius,
            "seed": self.seed,
            "witness": None,
        }
        if self.witness is not None:
            x, y = self.witness
            d["witness"] = {"x": {"re": x.real, "im": x.imag}, "y": {"re": y.real, "im": y.imag}}
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationVerdict":
        w = d.get("witness")
        witness = None
        if w is not None:
            witness = (complex(w["x"]["re"], w["x"]["im"]), complex(w["y"]["re"], w["y"]["im"]))
        return cls(point=boundary_point_from_dict(d["point"]), outcome=d["outcome"],
                   min_margin=d["min_margin"], witness=witness, R=d["R"],
                   image_margin=d["image_margin"], radii_tested=list(d["radii_tested"]),
                   samples_per_radius=d["samples_per_radius"], seed=d["seed"])


def check_witness(f: BidiscMap, bp, R, witness, base=None, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Re-evaluate a witness from scratch: inside E(bp, R) and mapped outside."""
    x, y = witness
    if not horosphere_margin(bp, R, (x, y), base) < 0:
        return False
    a, b = f(x, y)
    return horosphere_margin(bp, R, (a, b), base) > tol.violation


def verify_point(f: BidiscMap, bp: BidiscBoundaryPoint, radii=DEFAULT_RADII, n_samples: int = 512,
                 seed: int = 0, base=None, tol: Tolerances = DEFAULT_TOL) -> VerificationVerdict:
    """Sample ``f(E(bp, R)) ⊆ E(bp, R)`` for each radius; the first self-checked violation wins."""
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    if any(R <= 0 for R in radii):
        raise ValueError("radii must be positive")
    f1, f2 = compile_expr(f.f1), compile_expr(f.f2)
    rng = np.random.default_rng(seed)
    worst = math.inf
    for R in radii:
        xs, ys = sample_horosphere(bp, R, n_samples, rng, base)
        with np.errstate(all="ignore"):
            a = np.asarray(f1(xs, ys), dtype=complex) * np.ones_like(xs)
            b = np.asarray(f2(xs, ys), dtype=complex) * np.ones_like(xs)
            m = horosphere_margin(bp, R, (a, b), base)
        m = np.where(np.isfinite(m), m, np.inf)
        for i in np.flatnonzero(m > tol.violation):
            w = (complex(xs[i]), complex(ys[i]))
            if check_witness(f, bp, R, w, base, tol):
                return VerificationVerdict(bp, "Violated", witness=w, R=float(R),
                                           image_margin=float(m[i]), radii_tested=list(radii),
                                           samples_per_radius=n_samples, seed=seed)
        if m.size:
            worst = min(worst, float(-m.max()))
    return VerificationVerdict(bp, "Invariant", min_margin=worst, radii_tested=list(radii),
                               samples_per_radius=n_samples, seed=seed)


# --- necessary-condition screens ----------------------------------------------------------------


def diagonal_dilatation(e: MapExpr, bp: Optional[SilovCorner] = None, component: int = 1) -> DilatationEstimate:
    """Dilatation at 1 of ``xi -> conj(tau_i) e(tau1 xi, tau2 xi)``, the diagonal through a corner."""
    bp = bp if bp is not None else corner(0.0, 0.0)
    if component not in (1, 2):
        raise ValueError("component must be 1 or 2")
    t1, t2 = bp.tau1.tau, bp.tau2.tau
    rot = (t1 if component == 1 else t2).conjugate()
    g = compile_expr(e)
    phi = CallableFunction(lambda xi: rot * g(t1 * xi, t2 * xi))
    return boundary_dilatation(phi, UnitBoundaryPoint(0.0))


def corner_screen(f: BidiscMap, bp: SilovCorner) -> float:
    """Largest diagonal dilatation of the two components; above 1 rules the corner out."""
    return max(diagonal_dilatation(f.f1, bp, 1).lam, diagonal_dilatation(f.f2, bp, 2).lam)


@dataclass
class ProductCheck:
    passed: bool
    R1: float
    R2: float
    witness: Optional[tuple] = None
    component: Optional[int] = None


def product_radius_invariance(f: BidiscMap, lambda2: float, R2: float = 1.0, n_samples: int = 4096,
                              seed: int = 0, R1: Optional[float] = None, theta1: float = 0.0,
                              theta2: float = 0.0, tol: Tolerances = DEFAULT_TOL) -> ProductCheck:
    """Sample ``f(E(τ1,R1) × E(τ2,R2)) ⊆ E(τ1,R1) × E(τ2,R2)`` with ``R1 = R2/lambda2`` by default."""
    R1 = R2 / lambda2 if R1 is None else R1
    rng = np.random.default_rng(seed)
    t1, t2 = UnitBoundaryPoint(theta1), UnitBoundaryPoint(theta2)
    xs = sample_horocycle_mixed(t1, R1, n_samples, rng)
    ys = sample_horocycle_mixed(t2, R2, n_samples, rng)
    m = min(xs.size, ys.size)
    xs = np.concatenate([xs[:m], xs[:m]])
    ys = np.concatenate([ys[:m], np.roll(ys[:m], m // 2)])
    with np.errstate(all="ignore"):
        a, b = f(xs, ys)
        u1 = horocycle_value(t1, a) - R1
        u2 = horocycle_value(t2, b) - R2
    for comp, u in ((1, u1), (2, u2)):
        bad = np.flatnonzero(u > tol.violation)
        if bad.size:
            i = bad[0]
            return ProductCheck(False, R1, R2, (complex(xs[i]), complex(ys[i])), comp)
    return ProductCheck(True, R1, R2)


# --- empirical survey ----------------------------------------------------------------------


@dataclass
class SurveyEntry:
    verdict: VerificationVerdict
    screen: Optional[float] = None     # corner screen value when it could be computed

    def to_dict(self):
        return {"verdict": self.verdict.to_dict(), "screen": self.screen}

    @classmethod
    def from_dict(cls, d):
        return cls(VerificationVerdict.from_dict(d["verdict"]), d["screen"])


@dataclass
class SurveyResult:
    entries: list = field(default_factory=list)

    @property
    def candidates(self) -> list:
        return [e.verdict.point for e in self.entries if e.verdict.invariant]

    def to_dict(self):
        return {"entries": [e.to_dict() for e in self.entries]}

    @classmethod
    def from_dict(cls, d):
        return cls([SurveyEntry.from_dict(e) for e in d["entries"]])


def survey_probes(n_corner_angles: int = 8, n_flat_probes: int = 8, extra=()) -> list:
    ca = [2 * math.pi * j / n_corner_angles for j in range(n_corner_angles)]
    fa = [2 * math.pi * j / n_flat_probes for j in range(n_flat_probes)]
    # the free coordinate of a flat probe does not change E(bp, R); spread it anyway
    free = [0.5 * cmath.exp(2j * math.pi * (j + 0.5) / n_flat_probes) for j in range(n_flat_probes)]
    probes = [corner(a, b) for a in ca for b in ca]
    probes += [vflat(a, w) for a, w in zip(fa, free)]
    probes += [hflat(w, a) for a, w in zip(fa, free)]
    for p in extra:
        if p not in probes:
            probes.append(p)
    return probes


def survey_boundary(f: BidiscMap, n_corner_angles: int = 8, n_flat_probes: int = 8,
                    radii=DEFAULT_RADII, n_samples: int = 512, seed: int = 0, extra=(),
                    tol: Tolerances = DEFAULT_TOL) -> SurveyResult:
    """Verify every probe of a corner grid and flat grid; screens are recorded, not trusted."""
    out = []
    for k, bp in enumerate(survey_probes(n_corner_angles, n_flat_probes, extra)):
        screen = None
        if isinstance(bp, SilovCorner):
            try:
                screen = corner_screen(f, bp)
            except Exception:  # screen is advisory; verification below decides
                screen = None
        v = verify_point(f, bp, radii, n_samples, seed=seed + 7919 * k, tol=tol)
        out.append(SurveyEntry(v, screen))
    return SurveyResult(out)


# --- reconciliation ----------------------------------------------------------------------------


@dataclass
class Discrepancy:
    point: BidiscBoundaryPoint
    predicted: bool
    empirical: bool
    verdict: VerificationVerdict

    def to_dict(self):
        return {"point": boundary_point_to_dict(self.point), "predicted": self.predicted,
                "empirical": self.empirical, "verdict": self.verdict.to_dict()}

    @classmethod
    def from_dict(cls, d):
        return cls(boundary_point_from_dict(d["point"]), d["predicted"], d["empirical"],
                   VerificationVerdict.from_dict(d["verdict"]))


@dataclass
class ReconcileReport:
    status: str                                          # agreement | discrepancy | indeterminate | documented
    discrepancies: list = field(default_factory=list)
    documented_discrepancies: list = field(default_factory=list)
    note: Optional[str] = None

    def to_dict(self):
        return {"status": self.status, "note": self.note,
                "discrepancies": [d.to_dict() for d in self.discrepancies],
                "documented_discrepancies": [d.to_dict() for d in self.documented_discrepancies]}

    @classmethod
    def from_dict(cls, d):
        return cls(d["status"], [Discrepancy.from_dict(x) for x in d["discrepancies"]],
                   [Discrepancy.from_dict(x) for x in d["documented_discrepancies"]], d.get("note"))


def reconcile(predicted: WolffSetDescription, empirical: SurveyResult) -> ReconcileReport:
    """Compare prediction and sampled verdicts probe by probe."""
    diffs = []
    for e in empirical.entries:
        v = e.verdict
        if predicted.kind == "Indeterminate":
            continue
        inside = predicted.contains(v.point)
        if inside != v.invariant:
            diffs.append(Discrepancy(v.point, inside, v.invariant, v))
    if predicted.kind == "Indeterminate":
        return ReconcileReport("indeterminate", note=predicted.reason)
    if predicted.theorem_asserted:
        return ReconcileReport("documented" if diffs else "agreement", documented_discrepancies=diffs,
                               note="prediction is theorem-asserted; differences are recorded, not failures")
    return ReconcileReport("discrepancy" if diffs else "agreement", discrepancies=diffs)


# --- target set -----------------------------------------------------------------------------


@dataclass
class TargetCluster:
    kind: str               # interior | corner | vflat | hflat
    x: complex
    y: complex
    count: int
    converged: bool = True

    def to_dict(self):
        return {"kind": self.kind, "x": {"re": self.x.real, "im": self.x.imag},
                "y": {"re": self.y.real, "im": self.y.imag}, "count": self.count,
                "converged": self.converged}

    @classmethod
    def from_dict(cls, d):
        return cls(d["kind"], complex(d["x"]["re"], d["x"]["im"]),
                   complex(d["y"]["re"], d["y"]["im"]), d["count"], d["converged"])


@dataclass
class TargetSetReport:
    clusters: list = field(default_factory=list)
    seeds_used: int = 0

    def to_dict(self):
        return {"clusters": [c.to_dict() for c in self.clusters], "seeds_used": self.seeds_used}

    @classmethod
    def from_dict(cls, d):
        return cls([TargetCluster.from_dict(c) for c in d["clusters"]], d["seeds_used"])


INTERIOR_MERGE = 1e-6
BOUNDARY_GAP = 1e-4
ESCAPE_RADIUS = 0.9
DRIFT_MERGE = 0.05    # angular merge for orbits that have not arrived yet


def target_set(f: BidiscMap, n_seeds: int = 64, n_iter: int = 2000, seed: int = 0) -> TargetSetReport:
    """Cluster the orbit tails of random starting points.

    Orbits still drifting towards the boundary when the budget runs out
    (parabolic behaviour) are clustered by the face they approach and
    marked ``converged=False``; orbits doing neither raise.
    """
    rng = np.random.default_rng(seed)
    r = 0.9 * np.sqrt(rng.random((2, n_seeds)))
    x, y = r * np.exp(2j * np.pi * rng.random((2, n_seeds)))
    f1, f2 = compile_expr(f.f1), compile_expr(f.f2)
    check_from = n_iter - max(n_iter // 10, 2)
    mx0 = my0 = None
    for k in range(n_iter):
        nx = np.asarray(f1(x, y), dtype=complex) * np.ones(n_seeds)
        ny = np.asarray(f2(x, y), dtype=complex) * np.ones(n_seeds)
        step = np.maximum(np.abs(nx - x), np.abs(ny - y))
        x, y = nx, ny
        if k == check_from:
            mx0, my0 = np.abs(x), np.abs(y)
    clusters: list[TargetCluster] = []
    for i in range(n_seeds):
        xi, yi = complex(x[i]), complex(y[i])
        bx, by = abs(xi) > 1 - BOUNDARY_GAP, abs(yi) > 1 - BOUNDARY_GAP
        if step[i] < INTERIOR_MERGE and not (bx or by):
            _merge(clusters, TargetCluster("interior", xi, yi, 1))
        elif bx or by:
            _merge(clusters, _boundary_cluster(xi, yi, bx, by, True))
        else:
            # still drifting: the coordinates whose modulus keeps growing name the face
            gx = mx0 is not None and abs(xi) > mx0[i]
            gy = my0 is not None and abs(yi) > my0[i]
            if not (gx or gy) or max(abs(xi), abs(yi)) < ESCAPE_RADIUS:
                raise IndeterminateError(
                    f"orbit {i} neither settled nor approached the boundary in {n_iter} steps")
            _merge(clusters, _boundary_cluster(xi, yi, gx, gy, False))
    return TargetSetReport(clusters, n_seeds)


def _boundary_cluster(x, y, bx, by, converged):
    if bx and by:
        return TargetCluster("corner", x / abs(x), y / abs(y), 1, converged)
    if bx:
        return TargetCluster("vflat", x / abs(x), y, 1, converged)
    return TargetCluster("hflat", x, y / abs(y), 1, converged)


def _merge(clusters, new):
    gap = BOUNDARY_GAP if new.converged else DRIFT_MERGE
    for c in clusters:
        if c.kind != new.kind or c.converged != new.converged:
            continue
        if new.kind == "interior":
            same = abs(c.x - new.x) < INTERIOR_MERGE and abs(c.y - new.y) < INTERIOR_MERGE
        elif new.kind == "corner":
            same = (angle_distance(cmath.phase(c.x), cmath.phase(new.x)) < gap
                    and angle_distance(cmath.phase(c.y), cmath.phase(new.y)) < gap)
        elif new.kind == "vflat":
            same = angle_distance(cmath.phase(c.x), cmath.phase(new.x)) < gap
        else:
            same = angle_distance(cmath.phase(c.y), cmath.phase(new.y)) < gap
        if same:
            c.count += 1
            return
    clusters.append(new)
