"""Render every corpus document to SVG for visual inspection.

Usage:  python3 scripts/render_corpus.py [out_dir] [--seed N]
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from revis.gallery import build_all  # noqa: E402
from revis.render import render_document  # noqa: E402


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("out_dir", nargs="?", default=str(ROOT / "rendered"))
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--width", type=float, default=800)
    parser.add_argument("--height", type=float, default=600)
    args = parser.parse_args()

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, doc in build_all().items():
        svg = render_document(doc, seed=args.seed, width=args.width, height=args.height)
        (out_dir / f"{name}.svg").write_text(svg, encoding="utf-8")
    print(f"rendered {len(build_all())} documents into {out_dir}")


if __name__ == "__main__":
    main()
