import math

import pytest

from bidisc.classifier import (SliceFixedCurve, classify, composed_dynamics,
                               find_interior_fixed_point, fix_locus, slice_analysis,
                               solve_slice_fixed_point)
from bidisc.dsl import make_map, parse_map_dsl
from bidisc.errors import AuditFailure, InconsistentSlices, ProductIdentityViolation
from bidisc.expr import as_disc_function
from bidisc.fixtures import fixture
from bidisc.hyperbolic import BidiscPoint


def test_slice_fixed_point_closed_form():
    # x -> (x + y^2)/2 fixes x = y^2
    e = parse_map_dsl("(x+y^2)/2")
    for y in (0.3, 0.5j, -0.7 + 0.1j):
        assert solve_slice_fixed_point(e, y).z == pytest.approx(y * y, abs=1e-12)


def test_slice_without_fixed_point():
    assert solve_slice_fixed_point(parse_map_dsl("(3*x+1)/(x+3)"), 0.4) is None


def test_identity_slice_is_inconsistent():
    with pytest.raises(InconsistentSlices):
        solve_slice_fixed_point(parse_map_dsl("x"), 0.2)


def test_slice_curve_values_and_derivative():
    curve = SliceFixedCurve(parse_map_dsl("(y+(3*x+1)/(x+3))/2"), "slice_in_y")
    mob = lambda x: (3 * x + 1) / (x + 3)
    for x in (0.1, -0.6j, 0.999, 1 - 2.0 ** -30):
        assert curve(x) == pytest.approx(mob(x), abs=1e-10)
    h = 1e-6
    x = 0.3 + 0.2j
    fd = (mob(x + h) - mob(x - h)) / (2 * h)
    assert curve.derivative(x) == pytest.approx(fd, rel=1e-6)


def test_slice_analysis_branches():
    r = slice_analysis(parse_map_dsl("(x+y^2)/2"), "slice_in_x")
    assert r.kind == "fixed_point_curve" and len(r.samples) == 12
    w = slice_analysis(parse_map_dsl("(3*x+1)/(x+3)"), "slice_in_x")
    assert w.kind == "wolff_independent" and w.tau.theta == pytest.approx(0, abs=1e-9)
    assert w.spread <= 1e-4


def test_mixed_slices_raise():
    # a holomorphic self-map can not do this, but a scaled slice family can:
    # the slice at y=0 escapes to 1 while the slice at y=1/2 has a fixed point
    with pytest.raises(InconsistentSlices):
        slice_analysis(parse_map_dsl("(3*x+1)/(x+3)*(1-y)"), "slice_in_x", grid=[0.0, 0.5])


def test_composed_dynamics_product_identity():
    F1 = as_disc_function("x^2")
    F2 = as_disc_function("(3*x+1)/(x+3)")
    cd = composed_dynamics(F1, F2)
    assert cd.lambda1 == pytest.approx(2, rel=1e-3) and cd.lambda2 == pytest.approx(0.5, rel=1e-3)
    assert abs(cd.lambda12 - cd.lambda1 * cd.lambda2) / cd.lambda12 <= 0.02


def test_product_identity_violation_detected():
    # a slightly perturbed composed dilatation can not be absorbed by the tolerance
    from bidisc.config import Tolerances
    F1 = as_disc_function("x^2")
    F2 = as_disc_function("(3*x+1)/(x+3)")
    with pytest.raises(ProductIdentityViolation):
        composed_dynamics(F1, F2, Tolerances(product_identity=-1.0))


@pytest.mark.parametrize("name,kind", [
    ("example_i", "first_type"), ("example_ii", "first_type"), ("example_iii", "second_type"),
    ("example_iv", "second_type"), ("example_v", "third_type"), ("contraction", "interior_fixed"),
    ("averaging", "interior_fixed"), ("not_proper", "interior_fixed"), ("identity", "interior_fixed"),
    ("projection", "projection_degenerate"),
])
def test_fixture_kinds(classified, name, kind):
    assert classified(name).kind == kind


@pytest.mark.parametrize("name,l1,l2", [("example_i", 2.0, 0.5), ("example_ii", 0.25, 0.5)])
def test_first_type_dilatations(classified, name, l1, l2):
    c = classified(name)
    assert c.lambda1 == pytest.approx(l1, rel=0.02)
    assert c.lambda2 == pytest.approx(l2, rel=0.02)
    assert c.theta1 == pytest.approx(0, abs=1e-4) and c.theta2 == pytest.approx(0, abs=1e-4)
    assert not c.flags


def test_second_type(classified):
    assert classified("example_iii").lambda2 == pytest.approx(0.25, rel=0.02)
    assert classified("example_iv").lambda2 == pytest.approx(2.0, rel=0.02)
    assert not classified("example_iv").transposed


def test_transposed_second_type():
    f = make_map("(x+(5*y+3)/(3*y+5))/2", "(3*y+1)/(y+3)")
    c = classify(f)
    assert c.kind == "second_type" and c.transposed
    assert c.lambda2 == pytest.approx(0.25, rel=0.02)


def test_rotated_third_type():
    f = make_map("-(3*(-x)+1)/((-x)+3)", "(5*y+3)/(3*y+5)")
    c = classify(f)
    assert c.kind == "third_type"
    assert abs(abs(c.theta1) - math.pi) < 1e-6 and abs(c.theta2) < 1e-6


def test_lambda_band_flags():
    # parabolic factor: lambda1 = 1 sits inside the indeterminate band
    f = make_map("(x+(3*y^2+1)/(y^2+3))/2", "(y+(3*x+1)/(x+3))/2")
    c = classify(f)
    assert c.kind == "first_type" and "lambda1_near_1" in c.flags and c.indeterminate


def test_audit_failure():
    with pytest.raises(AuditFailure):
        classify(make_map("2*x", "y"))


def test_interior_fixed_point_search():
    p = find_interior_fixed_point(make_map("(x+0.4)/2", "y/3 + 0.1i"))
    assert p.x.z == pytest.approx(0.4) and p.y.z == pytest.approx(0.15j)
    assert find_interior_fixed_point(fixture("example_v")) is None


def test_fix_dimensions(classified):
    assert classified("contraction").fix.dim == 0
    assert classified("identity").fix.dim == 2
    avg = classified("averaging").fix
    assert avg.dim == 1 and avg.g_class == "automorphism_or_identity"
    np_ = classified("not_proper").fix
    assert np_.dim == 1 and np_.g_class == "not_proper"
    assert np_.theta == 0.0 and abs(np_.c.z) < 1e-6


def test_fix_curve_tracks_graph(classified):
    g = classified("not_proper").fix.g
    for z in (0.0, 0.5j, -0.9, 0.95 + 0.1j):
        assert g(z) == pytest.approx((1 - z) / 2, abs=1e-9)
        assert g.derivative(z) == pytest.approx(-0.5, abs=1e-7)


def test_fix_curve_transposed():
    # f = (x, (y + x^2)/2 ... ) style: fixed points y = x^2 over the x axis
    f = make_map("x*(1+x)/2 + (1-x)*x/2", "(y+x^2)/2")
    fx = fix_locus(f, BidiscPoint.of(0, 0))
    assert fx.dim == 1 and fx.transposed
    assert fx.g(0.5j) == pytest.approx(-0.25)
    assert fx.g_class == "proper_not_aut"
