"""Numerical tolerances and schedules, overridable from the command line."""

from __future__ import annotations

from dataclasses import dataclass, fields, replace

import numpy as np

# radial approach r_k = 1 - 2^-k; liminf/limsup surrogates use the tail window
RADIAL_KS = np.arange(8, 41)
TAIL_KS = (28, 40)
DEFAULT_RADII = (0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 20.0)


def radial_schedule() -> np.ndarray:
    return 1.0 - 2.0 ** (-RADIAL_KS.astype(float))


def tail_mask() -> np.ndarray:
    lo, hi = TAIL_KS
    return (RADIAL_KS >= lo) & (RADIAL_KS <= hi)


@dataclass(frozen=True)
class Tolerances:
    violation: float = 1e-9          # image margin above this refutes invariance
    angle: float = 1e-4              # slice Wolff spread / angular matching
    lambda_band: float = 1e-3        # |lambda - 1| below this is indeterminate
    product_identity: float = 0.02   # relative tolerance of lambda12 = lambda1 * lambda2
    screen: float = 1e-3             # diagonal dilatation screen slack
    interior_delta: float = 0.02     # orbit must settle inside |z| <= 1 - delta
    boundary_delta: float = 1e-4     # orbit beyond 1 - delta means boundary mode
    cauchy: float = 1e-10
    budget: int = 100_000
    fixed_point: float = 1e-9        # residual accepted for a fixed point

    def with_overrides(self, overrides: dict | None) -> "Tolerances":
        if not overrides:
            return self
        known = {f.name: f.type for f in fields(self)}
        clean = {}
        for key, value in overrides.items():
            if key not in known:
                raise KeyError(f"unknown tolerance {key!r}; known: {', '.join(sorted(known))}")
            clean[key] = int(value) if key == "budget" else float(value)
        return replace(self, **clean)


DEFAULT_TOL = Tolerances()
