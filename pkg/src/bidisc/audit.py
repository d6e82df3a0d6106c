"""Sampling audit of the self-map property of a bidisc map."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from scipy.stats import qmc

from .errors import PoleError
from .expr import BidiscMap, compile_expr
from .hyperbolic import kobayashi_distance

SCHWARZ_PICK_SLACK = 1e-9
NEAR_BOUNDARY_KS = (4, 8, 12, 16, 20, 24, 28, 30)
NEAR_BOUNDARY_ANGLES = 16
PAIR_RADIUS = 0.99


@dataclass
class AuditReport:
    samples_checked: int
    max_modulus_seen: float
    schwarz_pick_violations: int
    pole_hits: int
    verdict: str

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "AuditReport":
        return cls(**d)


def _disc_from_unit_square(u, v, radius):
    return radius * np.sqrt(u) * np.exp(2j * np.pi * v)


def _sample_points(n_samples: int, seed: int):
    sampler = qmc.Halton(d=4, scramble=True, seed=seed)
    s = sampler.random(n_samples)
    x = _disc_from_unit_square(s[:, 0], s[:, 1], PAIR_RADIUS)
    y = _disc_from_unit_square(s[:, 2], s[:, 3], PAIR_RADIUS)
    return x, y


def _near_boundary_points(seed: int):
    rng = np.random.default_rng(seed)
    r = 1.0 - 2.0 ** (-np.asarray(NEAR_BOUNDARY_KS, dtype=float))
    th = 2 * np.pi * np.arange(NEAR_BOUNDARY_ANGLES) / NEAR_BOUNDARY_ANGLES
    rr, tt = np.meshgrid(r, th)
    edge = (rr * np.exp(1j * tt)).ravel()
    # each edge point is paired with an interior partner in the other slot
    partner = _disc_from_unit_square(rng.random(edge.size), rng.random(edge.size), 0.9)
    both = (rr * np.exp(1j * (tt + 0.5))).ravel()
    xs = np.concatenate([edge, partner, both])
    ys = np.concatenate([partner, edge, both[::-1]])
    return xs, ys


def _eval_safely(f1, f2, x, y):
    """Evaluate pointwise-robustly: a pole in the batch falls back to scalar calls."""
    try:
        with np.errstate(all="ignore"):
            return np.asarray(f1(x, y), dtype=complex) * np.ones_like(x), \
                np.asarray(f2(x, y), dtype=complex) * np.ones_like(x), 0
    except PoleError:
        pass
    a = np.full(x.shape, np.nan, dtype=complex)
    b = np.full(x.shape, np.nan, dtype=complex)
    poles = 0
    for i in range(x.size):
        try:
            a[i] = f1(x[i], y[i])
            b[i] = f2(x[i], y[i])
        except PoleError:
            poles += 1
    return a, b, poles


def self_map_audit(f: BidiscMap, n_samples: int = 512, seed: int = 0) -> AuditReport:
    """Check ``|f_i| < 1`` and Schwarz-Pick contraction on sampled points.

    Interior points come from a scrambled Halton sequence; near-boundary
    probes sit on ``r = 1 - 2^-k`` (k <= 30).  Schwarz-Pick is tested on
    consecutive pairs of interior points only, where the distances are
    well conditioned.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    f1, f2 = compile_expr(f.f1), compile_expr(f.f2)
    x, y = _sample_points(n_samples, seed)
    bx, by = _near_boundary_points(seed)
    allx = np.concatenate([x, bx])
    ally = np.concatenate([y, by])
    a, b, poles = _eval_safely(f1, f2, allx, ally)

    mods = np.concatenate([np.abs(a), np.abs(b)])
    finite = mods[np.isfinite(mods)]
    max_mod = float(finite.max()) if finite.size else float("inf")
    if poles == 0 and finite.size < mods.size:
        max_mod = float("inf")

    violations = 0
    n = x.size
    if n >= 2:
        ok = np.isfinite(a[:n]) & np.isfinite(b[:n]) & (np.abs(a[:n]) < 1) & (np.abs(b[:n]) < 1)
        i, j = np.arange(n - 1), np.arange(1, n)
        keep = ok[i] & ok[j]
        with np.errstate(all="ignore"):
            d_dom = kobayashi_distance((x[i], y[i]), (x[j], y[j]))
            d_img = kobayashi_distance((a[i], b[i]), (a[j], b[j]))
        violations = int(np.sum(keep & (d_img > d_dom + SCHWARZ_PICK_SLACK)))

    verdict = "pass" if (violations == 0 and poles == 0 and max_mod < 1.0) else "fail"
    return AuditReport(
        samples_checked=int(allx.size),
        max_modulus_seen=max_mod,
        schwarz_pick_violations=violations,
        pole_hits=poles,
        verdict=verdict,
    )
