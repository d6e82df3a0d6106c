import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from bidisc.dynamics import (boundary_dilatation, denjoy_wolff, is_identity, iterate,
                             julia_containment, mobius_probe, newton_fixed_point,
                             properness_probe, sample_horocycle)
from bidisc.errors import NumericFailure
from bidisc.hyperbolic import UnitBoundaryPoint, horocycle_value

HYPERBOLIC = "(3*x+1)/(x+3)"        # Denjoy-Wolff point 1, dilatation 1/2
PARABOLIC = "(3*x^2+1)/(x^2+3)"     # triple boundary fixed point at 1


def test_iterate_halving():
    pts = iterate("x/2", 0.8, 3)
    assert [p.re for p in pts] == [0.8, 0.4, 0.2, 0.1]


def test_interior_fixed_point():
    r = denjoy_wolff("x^2")
    assert r.kind == "interior" and abs(r.point.z) < 1e-12 and r.multiplier_modulus == 0


def test_interior_off_origin():
    r = denjoy_wolff("(x+0.5)/2")
    assert r.kind == "interior" and r.point.z == pytest.approx(0.5)
    assert r.multiplier_modulus == pytest.approx(0.5)


def test_hyperbolic_boundary_point():
    r = denjoy_wolff(HYPERBOLIC)
    assert r.kind == "boundary" and r.tau.theta == pytest.approx(0, abs=1e-9)
    assert r.alpha == pytest.approx(0.5, rel=1e-3)


def test_parabolic_boundary_point():
    r = denjoy_wolff(PARABOLIC)
    assert r.kind == "boundary"
    assert abs(r.tau.theta) < 1e-4
    assert r.alpha == pytest.approx(1.0, abs=1e-3)


def test_identity_is_reported():
    assert denjoy_wolff("x").kind == "identity"
    assert is_identity(lambda z: z)


@settings(max_examples=20)
@given(st.floats(-math.pi, math.pi), st.floats(0.1, 0.9))
def test_rotated_hyperbolic_map(theta, s):
    # conjugating by a rotation moves the Denjoy-Wolff point and keeps the dilatation
    u = cmath.exp(1j * theta)
    b = (1 - s) / (1 + s)                           # z -> (z + b)/(1 + b z)
    g = lambda z: u * ((z / u + b) / (1 + b * z / u))
    r = denjoy_wolff(g)
    assert r.kind == "boundary"
    assert abs(cmath.exp(1j * r.tau.theta) - u) < 1e-6
    assert r.alpha == pytest.approx((1 - b) / (1 + b), rel=1e-3)


def test_newton():
    z = newton_fixed_point(lambda z: (z + 0.5) / 2, 0.0)
    assert z == pytest.approx(0.5)


@pytest.mark.parametrize("g,tau,lam", [("x^2", 0.0, 2.0), (HYPERBOLIC, 0.0, 0.5),
                                       ("(5*x+3)/(3*x+5)", 0.0, 0.25), (PARABOLIC, 0.0, 1.0),
                                       ("x^2", math.pi, 2.0)])
def test_boundary_dilatation(g, tau, lam):
    assert boundary_dilatation(g, UnitBoundaryPoint(tau)).lam == pytest.approx(lam, rel=1e-3)


def test_dilatation_oracle_matches_derivative():
    # for a map with a boundary fixed point the dilatation equals |g'(tau)|
    est = boundary_dilatation(HYPERBOLIC, UnitBoundaryPoint(0.0))
    h = 1e-7
    g = lambda z: (3 * z + 1) / (z + 3)
    deriv = (g(1 + h) - g(1 - h)) / (2 * h)
    assert est.lam == pytest.approx(abs(deriv), rel=1e-4)


def test_dilatation_refuses_interior_limits():
    with pytest.raises(NumericFailure):
        boundary_dilatation("x/2", UnitBoundaryPoint(0.0))


@settings(max_examples=20)
@given(st.floats(0.05, 20), st.integers(0, 100))
def test_julia_containment_for_hyperbolic_map(R, seed):
    res = julia_containment(HYPERBOLIC, 1, 1, 0.5, radii=(R,), n_samples=128, seed=seed)
    assert res.passed


def test_julia_containment_refutes_too_small_alpha():
    res = julia_containment(HYPERBOLIC, 1, 1, 0.3, n_samples=256)
    assert not res.passed
    assert horocycle_value(1, res.witness.z) < res.R
    g = (3 * res.witness.z + 1) / (res.witness.z + 3)
    assert horocycle_value(1, g) > 0.3 * res.R


def test_sample_horocycle_inside():
    rng = np.random.default_rng(0)
    z = sample_horocycle(UnitBoundaryPoint(1.0), 0.3, 200, rng)
    assert z.size == 200 and np.all(horocycle_value(cmath.exp(1j), z) < 0.3)


def test_mobius_probe():
    assert mobius_probe("x").kind == "identity"
    m = mobius_probe("-(x-0.3)/(1-0.3*x)")
    assert m.kind == "automorphism"
    assert m.params["zero_re"] == pytest.approx(0.3)
    assert abs(cmath.exp(1j * m.params["phi"]) + 1) < 1e-9
    assert mobius_probe("x^2").kind == "not_automorphism"
    assert mobius_probe("(1-x)/2").kind == "not_automorphism"


def test_properness_probe():
    assert properness_probe(HYPERBOLIC).proper
    assert properness_probe("x^2").proper
    res = properness_probe("(1-x)/2")
    assert not res.proper and res.witness_angle == 0.0 and abs(res.interior_limit.z) < 1e-6
