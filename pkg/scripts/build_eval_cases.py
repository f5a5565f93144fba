"""Synthesize scoring cases: ground truths plus generated documents with a
known number of injected attribute flips, and print the resulting table.

Usage:  python3 scripts/build_eval_cases.py [cases_dir] [--flips N]
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from revis.gallery import build_all  # noqa: E402
from revis.io import save_document  # noqa: E402
from revis.scoring import inject_mismatches, run_gallery  # noqa: E402


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("cases_dir", nargs="?", default=str(ROOT / "eval-cases"))
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    cases_dir = Path(args.cases_dir)
    ledger = {}
    basics = {n: d for n, d in build_all().items() if n.startswith("basic-")}
    for i, (name, gt) in enumerate(basics.items()):
        case = cases_dir / name
        case.mkdir(parents=True, exist_ok=True)
        mutated, injected = inject_mismatches(gt, count=i % 4, seed=args.seed + i)
        save_document(gt, case / "ground_truth.revis.json")
        save_document(mutated, case / "generated.revis.json")
        ledger[name] = [str(p) for p in injected]
    (cases_dir / "injection-ledger.json").write_text(
        json.dumps(ledger, indent=2), encoding="utf-8"
    )

    report = run_gallery(cases_dir)
    print(report.to_text())
    for case in report.cases:
        recorded = set(ledger[case.name])
        reported = {str(p) for p, _, _ in case.mismatches}
        status = "ok" if recorded == reported else "MISMATCH VS LEDGER"
        print(f"  {case.name}: {len(reported)} injected flips detected ({status})")


if __name__ == "__main__":
    main()
