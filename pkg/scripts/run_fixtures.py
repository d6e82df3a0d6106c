"""Run the full report pipeline on every map in maps/ and print a summary table."""

import argparse
from pathlib import Path

from bidisc.cli import PipelineConfig, run

ROOT = Path(__file__).resolve().parents[1]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--maps", default=str(ROOT / "maps"))
    ap.add_argument("--out", help="directory for the JSON reports")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    out = Path(args.out) if args.out else None
    if out:
        out.mkdir(parents=True, exist_ok=True)
    print(f"{'map':<16} {'exit':>4}  {'type':<22} {'prediction':<24} {'candidates':>10}  reconcile")
    for path in sorted(Path(args.maps).glob("*.json")):
        doc, code = run(PipelineConfig(str(path), "report", seed=args.seed))
        kind = (doc.classification or {}).get("kind", "-")
        pred = doc.prediction.kind if doc.prediction else "-"
        cands = len(doc.survey.candidates) if doc.survey else 0
        status = doc.reconcile_status or (doc.error or {}).get("type", "-")
        print(f"{path.stem:<16} {code:>4}  {kind:<22} {pred:<24} {cands:>10}  {status}")
        if out:
            (out / f"{path.stem}.json").write_text(doc.to_json())


if __name__ == "__main__":
    main()
