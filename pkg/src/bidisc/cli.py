"""Command-line front end.

    bidisc <command> --map FILE [--point SPEC] [--radii r1,r2,...] [--samples N]
                     [--seed N] [--tol key=val] [--out FILE] [--format json|csv]

Exit codes: 0 success, 1 prediction and sampling disagree, 2 bad input or
failed self-map audit, 3 numerical failure or indeterminate dynamics.
"""

from __future__ import annotations

import argparse
import csv
import io
import re
import sys
from dataclasses import dataclass, field
from typing import Optional

from .audit import self_map_audit
from .classifier import classify
from .config import DEFAULT_RADII, DEFAULT_TOL
from .dsl import load_map, map_to_json
from .errors import AuditFailure, BidiscError, ParseError, RangeError
from .hyperbolic import BidiscBoundaryPoint, corner, hflat, vflat
from .report import ReportDocument, classification_to_dict
from .wolff import predict, reconcile, survey_boundary, target_set, verify_point

COMMANDS = ("classify", "predict", "verify", "survey", "orbit", "report")
EXIT_OK, EXIT_DISCREPANCY, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3


@dataclass
class PipelineConfig:
    map_path: str
    command: str
    point: Optional[str] = None
    radii: tuple = DEFAULT_RADII
    samples: int = 512
    seed: int = 0
    tol_overrides: dict = field(default_factory=dict)
    out_path: Optional[str] = None
    format: str = "json"
    steps: int = 100
    start: str = "0,0,0,0"
    corner_angles: int = 8
    flat_probes: int = 8
    target_seeds: int = 64
    target_iter: int = 2000

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if not self.radii or any(r <= 0 for r in self.radii):
            raise ValueError("radii must be positive")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.command == "verify" and not self.point:
            raise ValueError("verify needs --point")
        if self.format not in ("json", "csv"):
            raise ValueError("format must be json or csv")
        if self.format == "csv" and self.command != "orbit":
            raise ValueError("CSV output is only available for orbit")


_NUM = r"\s*[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?\s*"


def _numbers(body: str, n: int, spec: str, start: int) -> list[float]:
    parts = body.split(",")
    if len(parts) != n:
        raise ParseError(f"expected {n} comma-separated numbers in {spec!r}", start)
    out, pos = [], start
    for p in parts:
        if not re.fullmatch(_NUM, p):
            raise ParseError(f"not a number: {p!r}", pos)
        out.append(float(p))
        pos += len(p.encode("utf-8")) + 1
    return out


def parse_point_spec(s: str) -> BidiscBoundaryPoint:
    """``corner:θ1,θ2`` | ``vflat:θ1,re,im`` | ``hflat:re,im,θ2`` (radians)."""
    tag, sep, body = s.partition(":")
    if not sep:
        raise ParseError(f"point spec needs a 'type:' prefix: {s!r}", 0)
    start = len(tag.encode("utf-8")) + 1
    tag = tag.strip()
    if tag == "corner":
        a, b = _numbers(body, 2, s, start)
        return corner(a, b)
    if tag == "vflat":
        a, re_, im = _numbers(body, 3, s, start)
        return vflat(a, _interior(re_, im))
    if tag == "hflat":
        re_, im, b = _numbers(body, 3, s, start)
        return hflat(_interior(re_, im), b)
    raise ParseError(f"unknown point type {tag!r}", 0)


def _interior(re_, im) -> complex:
    z = complex(re_, im)
    if abs(z) >= 1.0:
        raise RangeError(f"interior coordinate {z} has modulus >= 1")
    return z


def _parse_start(s: str) -> tuple[complex, complex]:
    a, b, c, d = _numbers(s, 4, s, 0)
    return _interior(a, b), _interior(c, d)


def run(config: PipelineConfig) -> tuple[ReportDocument, int]:
    """Execute one command; never raises for package errors, which map to exit codes."""
    doc = ReportDocument(command=config.command, map={}, seed=config.seed)
    try:
        tol = DEFAULT_TOL.with_overrides(config.tol_overrides)
        f = load_map(config.map_path)
        doc.map = map_to_json(f)
        if config.command == "orbit":
            doc.orbit = _orbit(f, _parse_start(config.start), config.steps)
            return doc, EXIT_OK
        point = parse_point_spec(config.point) if config.point else None
        doc.audit = self_map_audit(f, seed=config.seed)
        if not doc.audit.passed:
            raise AuditFailure("map failed the self-map audit")
        if config.command == "verify":
            doc.verification.append(verify_point(f, point, config.radii, config.samples,
                                                 config.seed, tol=tol))
            return doc, EXIT_OK
        c = classify(f, tol, audit=False)
        doc.classification = classification_to_dict(c)
        if config.command == "classify":
            return doc, EXIT_OK
        doc.prediction = predict(c)
        if point is not None:
            doc.verification.append(verify_point(f, point, config.radii, config.samples,
                                                 config.seed, tol=tol))
        if config.command == "predict":
            return doc, EXIT_OK
        doc.survey = survey_boundary(f, config.corner_angles, config.flat_probes, config.radii,
                                     config.samples, config.seed, tol=tol)
        doc.attach_reconcile(reconcile(doc.prediction, doc.survey))
        if config.command == "report":
            doc.target_set = target_set(f, config.target_seeds, config.target_iter, config.seed)
        return doc, EXIT_DISCREPANCY if doc.discrepancies else EXIT_OK
    except (ParseError, RangeError, AuditFailure, OSError, KeyError, ValueError) as exc:
        return _failed(doc, exc, EXIT_INPUT)
    except (BidiscError, ArithmeticError) as exc:
        return _failed(doc, exc, EXIT_NUMERIC)


def _failed(doc, exc, code):
    doc.error = {"type": type(exc).__name__, "message": str(exc)}
    return doc, code


def _orbit(f, start, steps) -> list:
    x, y = start
    rows = [[0, x.real, x.imag, y.real, y.imag]]
    for k in range(1, steps + 1):
        x, y = f(x, y)
        x, y = complex(x), complex(y)
        rows.append([k, x.real, x.imag, y.real, y.imag])
    return rows


def render(doc: ReportDocument, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["step", "re1", "im1", "re2", "im2"])
        w.writerows(doc.orbit or [])
        return buf.getvalue()
    return doc.to_json() + "\n"


def _kv(s: str) -> tuple[str, str]:
    key, sep, value = s.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected key=value, got {s!r}")
    return key.strip(), value.strip()


def _radii(s: str) -> tuple:
    try:
        return tuple(float(r) for r in s.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad radius list {s!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bidisc", description="Wolff points of holomorphic self-maps of the bidisc")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--map", required=True, dest="map_path", help="JSON map file with f1 and f2")
    p.add_argument("--point", help="corner:t1,t2 | vflat:t1,re,im | hflat:re,im,t2")
    p.add_argument("--radii", type=_radii, default=DEFAULT_RADII)
    p.add_argument("--samples", type=int, default=512)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=_kv, action="append", default=[], metavar="KEY=VAL")
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--steps", type=int, default=100, help="orbit length")
    p.add_argument("--start", default="0,0,0,0", help="orbit start re1,im1,re2,im2")
    p.add_argument("--corner-angles", type=int, default=8)
    p.add_argument("--flat-probes", type=int, default=8)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = PipelineConfig(map_path=args.map_path, command=args.command, point=args.point,
                                radii=args.radii, samples=args.samples, seed=args.seed,
                                tol_overrides=dict(args.tol), out_path=args.out, format=args.format,
                                steps=args.steps, start=args.start, corner_angles=args.corner_angles,
                                flat_probes=args.flat_probes)
    except ValueError as exc:
        print(f"bidisc: {exc}", file=sys.stderr)
        return EXIT_INPUT
    doc, code = run(config)
    text = render(doc, config.format if doc.error is None else "json")
    if config.out_path:
        with open(config.out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if doc.error is not None:
        print(f"bidisc: {doc.error['type']}: {doc.error['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
