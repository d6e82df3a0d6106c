"""Serializable report document and plain-data forms of the analysis results."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .audit import AuditReport
from .classifier import FixAnalysis, MapTypeClassification
from .hyperbolic import BidiscPoint, DiscPoint
from .wolff import (Discrepancy, ReconcileReport, SurveyResult, TargetSetReport,
                    VerificationVerdict, WolffSetDescription)

FIX_SAMPLE_PARAMS = (0.0, 0.5, -0.5, 0.5j, -0.5j, 0.9)


def _cplx(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _uncplx(d) -> complex:
    return complex(d["re"], d["im"])


def fix_to_dict(fx: Optional[FixAnalysis]) -> Optional[dict]:
    if fx is None:
        return None
    d = {
        "dim": fx.dim,
        "point": None if fx.point is None else {"x": _cplx(fx.point.x.z), "y": _cplx(fx.point.y.z)},
        "transposed": fx.transposed,
        "g_class": fx.g_class,
        "c": None if fx.c is None else _cplx(fx.c.z),
        "theta": fx.theta,
        "mobius": fx.mobius,
        "g_samples": None,
    }
    if fx.g is not None:
        d["g_samples"] = [{"z": _cplx(z), "g": _cplx(fx.g(z))} for z in FIX_SAMPLE_PARAMS]
    return d


def fix_from_dict(d: Optional[dict]) -> Optional[FixAnalysis]:
    if d is None:
        return None
    p = d["point"]
    return FixAnalysis(
        dim=d["dim"],
        point=None if p is None else BidiscPoint.of(_uncplx(p["x"]), _uncplx(p["y"])),
        transposed=d["transposed"], g_class=d["g_class"],
        c=None if d["c"] is None else DiscPoint.of(_uncplx(d["c"])),
        theta=d["theta"], mobius=d["mobius"])


_CLS_SCALARS = ("kind", "theta1", "theta2", "lambda1", "lambda2", "lambda12", "lambda21",
                "transposed", "which", "other_component_wolff")


def classification_to_dict(c: MapTypeClassification) -> dict:
    d = {k: getattr(c, k) for k in _CLS_SCALARS}
    d["projections"] = list(c.projections)
    d["flags"] = list(c.flags)
    d["fix"] = fix_to_dict(c.fix)
    return d


def classification_from_dict(d: dict) -> MapTypeClassification:
    return MapTypeClassification(**{k: d[k] for k in _CLS_SCALARS},
                                 projections=tuple(d["projections"]), flags=list(d["flags"]),
                                 fix=fix_from_dict(d["fix"]))


@dataclass
class ReportDocument:
    command: str
    map: dict
    seed: int
    tool_version: str = __version__
    audit: Optional[AuditReport] = None
    classification: Optional[dict] = None
    prediction: Optional[WolffSetDescription] = None
    verification: list = field(default_factory=list)
    survey: Optional[SurveyResult] = None
    target_set: Optional[TargetSetReport] = None
    reconcile_status: Optional[str] = None
    discrepancies: list = field(default_factory=list)
    documented_discrepancies: list = field(default_factory=list)
    orbit: Optional[list] = None
    error: Optional[dict] = None

    def attach_reconcile(self, r: ReconcileReport):
        self.reconcile_status = r.status
        self.discrepancies = list(r.discrepancies)
        self.documented_discrepancies = list(r.documented_discrepancies)

    def to_dict(self) -> dict:
        opt = lambda x: None if x is None else x.to_dict()
        return {
            "command": self.command,
            "map": self.map,
            "seed": self.seed,
            "tool_version": self.tool_version,
            "audit": opt(self.audit),
            "classification": self.classification,
            "prediction": opt(self.prediction),
            "verification": [v.to_dict() for v in self.verification],
            "survey": opt(self.survey),
            "target_set": opt(self.target_set),
            "reconcile_status": self.reconcile_status,
            "discrepancies": [d.to_dict() for d in self.discrepancies],
            "documented_discrepancies": [d.to_dict() for d in self.documented_discrepancies],
            "orbit": self.orbit,
            "error": self.error,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ReportDocument":
        opt = lambda x, k: None if x is None else k.from_dict(x)
        return cls(
            command=d["command"], map=d["map"], seed=d["seed"], tool_version=d["tool_version"],
            audit=opt(d["audit"], AuditReport), classification=d["classification"],
            prediction=opt(d["prediction"], WolffSetDescription),
            verification=[VerificationVerdict.from_dict(v) for v in d["verification"]],
            survey=opt(d["survey"], SurveyResult), target_set=opt(d["target_set"], TargetSetReport),
            reconcile_status=d["reconcile_status"],
            discrepancies=[Discrepancy.from_dict(x) for x in d["discrepancies"]],
            documented_discrepancies=[Discrepancy.from_dict(x) for x in d["documented_discrepancies"]],
            orbit=d["orbit"], error=d["error"])

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, allow_nan=True)

    @classmethod
    def from_json(cls, s: str) -> "ReportDocument":
        return cls.from_dict(json.loads(s))
