import json
import math
from pathlib import Path

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from bidisc.cli import PipelineConfig, main, parse_point_spec, run
from bidisc.errors import ParseError, RangeError
from bidisc.hyperbolic import corner, hflat, vflat
from bidisc.report import ReportDocument, classification_from_dict, classification_to_dict

MAPS = Path(__file__).resolve().parents[1] / "maps"


def cfg(name, command, **kw):
    return PipelineConfig(map_path=str(MAPS / f"{name}.json"), command=command, **kw)


def test_point_specs():
    assert parse_point_spec("corner:0,0") == corner(0, 0)
    assert parse_point_spec("vflat:0,0.0,0.5") == vflat(0, 0.5j)
    assert parse_point_spec("hflat:0.1,-0.2,3") == hflat(0.1 - 0.2j, 3)
    assert parse_point_spec("corner:0,7").tau2.theta == pytest.approx(7 - 2 * math.pi)


@pytest.mark.parametrize("spec", ["corner:0", "corner0,0", "edge:1,2", "vflat:0,a,0", "corner:1,,2"])
def test_bad_point_specs(spec):
    with pytest.raises(ParseError):
        parse_point_spec(spec)


def test_point_spec_range():
    with pytest.raises(RangeError):
        parse_point_spec("vflat:0,0.8,0.8")


@given(st.floats(-10, 10), st.floats(-10, 10))
def test_corner_spec_round_trip(a, b):
    p = parse_point_spec(f"corner:{a!r},{b!r}")
    assert p == corner(a, b)


def test_config_validation():
    with pytest.raises(ValueError):
        cfg("example_i", "verify")
    with pytest.raises(ValueError):
        cfg("example_i", "report", radii=(1.0, -1.0))
    with pytest.raises(ValueError):
        cfg("example_i", "report", samples=0)
    with pytest.raises(ValueError):
        cfg("example_i", "report", format="csv")


def test_report_example_ii():
    doc, code = run(cfg("example_ii", "report"))
    assert code == 0
    assert doc.prediction.kind == "SilovPoint"
    assert doc.prediction.theta1 == pytest.approx(0, abs=1e-4)
    assert ReportDocument.from_json(doc.to_json()).to_json() == doc.to_json()


def test_verify_refutation_is_not_a_failure():
    doc, code = run(cfg("example_i", "verify", point="corner:0,0"))
    assert code == 0 and doc.verification[0].outcome == "Violated"


def test_exit_codes(tmp_path):
    assert run(cfg("not_self_map", "classify"))[1] == 2
    assert run(cfg("missing", "classify"))[1] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"f1": "x+", "f2": "y"}')
    assert run(PipelineConfig(str(bad), "classify"))[1] == 2
    assert run(cfg("example_i", "classify", tol_overrides={"nope": 1}))[1] == 2
    assert run(cfg("example_v", "verify", point="vflat:0,0.9,0.9"))[1] == 2
    # a parabolic factor puts a dilatation inside the band
    para = tmp_path / "para.json"
    para.write_text(json.dumps({"f1": "(x+(3*y^2+1)/(y^2+3))/2", "f2": "(y+(3*x+1)/(x+3))/2"}))
    doc, code = run(PipelineConfig(str(para), "survey"))
    assert code == 0 and doc.reconcile_status == "indeterminate"
    # rotation: the target set never settles
    rot = tmp_path / "rot.json"
    rot.write_text(json.dumps({"f1": "0.6*x+0.8i*x", "f2": "y/2"}))
    doc, code = run(PipelineConfig(str(rot), "report"))
    assert code == 3 and doc.error["type"] == "IndeterminateError"


def test_discrepancy_exit_code(monkeypatch):
    import bidisc.cli as cli
    from bidisc.wolff import WolffSetDescription
    monkeypatch.setattr(cli, "predict", lambda c: WolffSetDescription("Empty"))
    doc, code = run(cfg("example_v", "survey", samples=64))
    assert code == 1 and doc.discrepancies


def test_classification_round_trip():
    doc, _ = run(cfg("not_proper", "classify"))
    c = classification_from_dict(doc.classification)
    assert classification_to_dict(c)["fix"]["g_class"] == "not_proper"
    assert doc.classification["fix"]["g_samples"][0]["g"]["re"] == pytest.approx(0.5)


@settings(max_examples=5)
@given(st.integers(0, 2 ** 31))
def test_reports_are_byte_identical_per_seed(seed):
    a, _ = run(cfg("example_iv", "survey", seed=seed, samples=64))
    b, _ = run(cfg("example_iv", "survey", seed=seed, samples=64))
    assert a.to_json() == b.to_json()


def test_main_writes_files(tmp_path, capsys):
    out = tmp_path / "orbit.csv"
    code = main(["orbit", "--map", str(MAPS / "example_v.json"), "--steps", "3", "--format", "csv",
                 "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "step,re1,im1,re2,im2" and len(lines) == 5
    assert lines[2].startswith("1,0.333333")
    code = main(["predict", "--map", str(MAPS / "example_iii.json"), "--point", "corner:0,0",
                 "--radii", "0.5,2", "--samples", "64", "--tol", "angle=1e-4"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0 and doc["prediction"]["kind"] == "FlatPlusCorner"
    assert doc["verification"][0]["label"] == "Invariant (sampled)"
    assert main(["verify", "--map", str(MAPS / "example_v.json")]) == 2
