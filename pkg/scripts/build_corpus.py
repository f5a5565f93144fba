"""Write the 40-document corpus to disk as .revis.json files.

Usage:  python3 scripts/build_corpus.py [corpus_dir]
"""

from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from revis.gallery import build_all  # noqa: E402
from revis.io import save_document  # noqa: E402
from revis.validate import validate  # noqa: E402


def main() -> None:
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else ROOT / "corpus"
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, doc in build_all().items():
        report = validate(doc)
        if report.issues:
            raise SystemExit(f"{name} is not clean:\n{report}")
        save_document(doc, out_dir / f"{name}.revis.json")
    print(f"wrote {len(build_all())} documents to {out_dir}")


if __name__ == "__main__":
    main()
