"""Author the recorded pipeline fixture cases.

Each case directory holds the raw per-step responses (``step1.txt``,
``step2a.txt``, ``step2b-<template>.txt``, ``step3-<leaf>.txt``) plus the
assembled ``final.revis.json`` frozen from one replay.  Tests then replay
the same files and require byte-equal assembly with zero network calls.

Run from the repository root:  python3 scripts/make_fixtures.py
"""

from __future__ import annotations

import json
import shutil
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from revis.pipeline import reproduce_from_fixtures  # noqa: E402
from revis.io import serialize  # noqa: E402

FIXTURES = ROOT / "fixtures"


def dim_json(
    stacking=False,
    direction="min",
    subdividing=False,
    flatten=False,
    uniform=True,
    size=(0, 0),
    anchor="middle",
    distribute="uniform_interval",
    start=None,
    interval=None,
):
    out = {
        "stacking": stacking,
        "stacking_direction": direction,
        "subdividing": subdividing,
        "2d_flatten": flatten,
        "size_uniform": uniform,
        "size_range": list(size),
        "anchor": "stacking_decided" if stacking else anchor,
        "anchor_distribute": distribute,
    }
    if start is not None:
        out["anchor_start"] = start
    if interval is not None:
        out["anchor_interval"] = interval
    return out


def mark_json(mt, link="no_link", **extra):
    out = {
        "mark_type": mt,
        "is_link_mark": link != "no_link",
        "link_mark_type": link,
        "is_width_encoded_data": extra.pop("width", False),
        "node_use_once": False,
        "is_fully_connected": False,
        "is_bipartite": False,
    }
    out.update(extra)
    return out


def container(cid, desc, system, leaf=None, components=None, coordinate="cartesian"):
    out = {
        "container_id": cid,
        "description": desc,
        "coordinate": coordinate,
        "coordinate_system": system,
        "if_leaf": leaf is not None,
    }
    if leaf is not None:
        out["mark_type"] = leaf
    if components is not None:
        out["components"] = components
    return out


def rect(x1, y1, x2, y2):
    return {"x1": x1, "y1": y1, "x2": x2, "y2": y2}


def write(case: Path, name: str, payload) -> None:
    case.mkdir(parents=True, exist_ok=True)
    if not isinstance(payload, str):
        payload = json.dumps(payload, indent=2)
    (case / name).write_text(payload + "\n", encoding="utf-8")


def make_basic_bar() -> None:
    case = FIXTURES / "basic-bar"
    tree = container(
        "0", "a simple bar chart of vertical bars", rect(0, 0, 100, 100), leaf="rectangle"
    )
    write(case, "step1.txt", tree)
    write(case, "step2a.txt", {"cleaned_dsl": tree, "template_index": []})
    leaf_spec = {
        "data_structure": {
            "data_type": "1D_LIST",
            "data_size": {
                "primary": {"number": 10, "dimension": "x", "explanation": "ten bars along x"}
            },
        },
        "mark_specification": mark_json("rectangle"),
        "layout_specification": {
            "x": dim_json(size=(6, 6), anchor="min", start=3, interval=9.5),
            "y": dim_json(uniform=False, size=(0, 88), anchor="min",
                          distribute="fixed_value", start=0),
        },
        "non_layout_specification": {"fill": {"scale": "fix", "fix": "#4682B4"}},
    }
    # Recorded with markdown framing to exercise payload stripping on replay.
    write(case, "step3-0.txt", "```json\n" + json.dumps(leaf_spec, indent=2) + "\n```")


def make_merge_1d() -> None:
    case = FIXTURES / "merge-1d"
    panel = lambda cid, x1, x2: container(
        cid,
        "same visual component.",
        rect(x1, 0, x2, 100),
        components=[
            container(
                f"{cid}-0",
                "bars of this panel",
                rect(x1 + 2, 5, x2 - 2, 95),
                leaf="rectangle",
            )
        ],
    )
    tree = container(
        "0",
        "two repeated panels and a different line component",
        rect(0, 0, 100, 100),
        components=[
            panel("0-0", 0, 30),
            panel("0-1", 30, 60),
            container(
                "0-2", "different visual component", rect(60, 0, 100, 100), leaf="line"
            ),
        ],
    )
    write(case, "step1.txt", tree)

    cleaned = container(
        "0",
        "two repeated panels and a different line component",
        rect(0, 0, 100, 100),
        components=[
            container(
                "0-a",
                "template for a single repeated component, with its coordinate "
                "representing the outer boundary of all repeated instances, and "
                "its layout structure is a 1D_LIST.",
                rect(0, 0, 60, 100),
                components=[
                    container(
                        "0-a-0", "bars of one panel", rect(4, 5, 56, 95), leaf="rectangle"
                    )
                ],
            ),
            container(
                "0-2", "different visual component", rect(60, 0, 100, 100), leaf="line"
            ),
        ],
    )
    write(
        case,
        "step2a.txt",
        {
            "cleaned_dsl": cleaned,
            "template_index": [
                {
                    "template_id": "0-a",
                    "instance_ids": ["0-0", "0-1"],
                    "instance_bboxes": [rect(0, 0, 30, 100), rect(30, 0, 60, 100)],
                }
            ],
        },
    )
    write(
        case,
        "step2b-0-a.txt",
        {
            "container_id": "0-a",
            "data_structure": {
                "data_type": "1D_LIST",
                "data_size": {
                    "primary": {
                        "number": 2,
                        "dimension": "x",
                        "explanation": "two repeated panels in a horizontal row",
                    }
                },
            },
            "layout_specification": {
                "x": dim_json(size=(50, 50), anchor="min", start=0, interval=50)
            },
        },
    )
    write(
        case,
        "step3-0-a-0.txt",
        {
            "data_structure": {
                "data_type": "1D_LIST",
                "data_size": {
                    "primary": {"number": 6, "dimension": "x", "explanation": "six bars"}
                },
            },
            "mark_specification": mark_json("rectangle"),
            "layout_specification": {
                "x": dim_json(size=(10, 10), anchor="min", start=4, interval=15),
                "y": dim_json(uniform=False, size=(5, 90), anchor="min",
                              distribute="fixed_value", start=0),
            },
            "non_layout_specification": {
                "fill": {"scale": "ordinal_secondary",
                         "options": ["#4c78a8", "#f58518", "#54a24b"]}
            },
        },
    )
    write(
        case,
        "step3-0-2.txt",
        {
            "data_structure": {
                "data_type": "2D_MATRIX",
                "data_size": {
                    "primary": {"number": 1, "dimension": "y",
                                "explanation": "a single polyline"},
                    "secondary": {"number": 8, "dimension": "x"},
                },
            },
            "mark_specification": mark_json(
                "line", link="group_type", group_link_direction="x"
            ),
            "layout_specification": {
                "x": dim_json(start=4, interval=12),
                "y": dim_json(distribute="flexible"),
            },
            "non_layout_specification": {
                "stroke": {"scale": "fix", "fix": "#e45756"},
                "stroke_width": {"scale": "fix", "fix": 2},
                "line_type": "straight",
            },
        },
    )


def make_composite_panels() -> None:
    case = FIXTURES / "composite-panels"

    def panel(cid, x1, y1, x2, y2):
        return container(
            cid,
            "small panel with bars and a reference line",
            rect(x1, y1, x2, y2),
            components=[
                container(
                    f"{cid}-0", "bars", rect(x1 + 2, y1 + 25, x2 - 2, y2 - 3),
                    leaf="rectangle",
                ),
                container(
                    f"{cid}-1", "reference line", rect(x1 + 2, y1 + 3, x2 - 2, y1 + 22),
                    leaf="line",
                ),
            ],
        )

    tree = container(
        "0",
        "a 2x2 grid of bar-line panels and a summary circle",
        rect(0, 0, 100, 100),
        components=[
            panel("0-0", 0, 50, 45, 100),
            panel("0-1", 45, 50, 90, 100),
            panel("0-2", 0, 0, 45, 50),
            panel("0-3", 45, 0, 90, 50),
            container("0-4", "summary circle", rect(90, 30, 100, 70), leaf="circle"),
        ],
    )
    write(case, "step1.txt", tree)

    cleaned = container(
        "0",
        "a 2x2 grid of bar-line panels and a summary circle",
        rect(0, 0, 100, 100),
        components=[
            container(
                "0-a",
                "template for a single repeated panel, laid out in a 2D grid; its "
                "coordinate represents the outer boundary of all repeated panel "
                "instances.",
                rect(0, 0, 90, 100),
                components=[
                    container("0-a-0", "bars", rect(4, 50, 86, 94), leaf="rectangle"),
                    container(
                        "0-a-1", "reference line", rect(4, 6, 86, 44), leaf="line"
                    ),
                ],
            ),
            container("0-4", "summary circle", rect(90, 30, 100, 70), leaf="circle"),
        ],
    )
    write(
        case,
        "step2a.txt",
        {
            "cleaned_dsl": cleaned,
            "template_index": [
                {
                    "template_id": "0-a",
                    "instance_ids": ["0-0", "0-1", "0-2", "0-3"],
                    "instance_bboxes": [
                        rect(0, 50, 45, 100),
                        rect(45, 50, 90, 100),
                        rect(0, 0, 45, 50),
                        rect(45, 0, 90, 50),
                    ],
                }
            ],
        },
    )
    write(
        case,
        "step2b-0-a.txt",
        {
            "container_id": "0-a",
            "data_structure": {
                "data_type": "2D_MATRIX",
                "data_size": {
                    "primary": {"number": 2, "dimension": "x",
                                "explanation": "two columns of panels"},
                    "secondary": {"number": 2, "dimension": "y",
                                  "explanation": "two panels per column"},
                },
            },
            "layout_specification": {
                "x": dim_json(size=(50, 50), anchor="min", start=0, interval=50),
                "y": dim_json(size=(50, 50), anchor="min", start=0, interval=50),
            },
        },
    )
    write(
        case,
        "step3-0-a-0.txt",
        {
            "data_structure": {
                "data_type": "1D_LIST",
                "data_size": {
                    "primary": {"number": 5, "dimension": "x", "explanation": "five bars"}
                },
            },
            "mark_specification": mark_json("rectangle"),
            "layout_specification": {
                "x": dim_json(size=(12, 12), anchor="min", start=5, interval=18),
                "y": dim_json(uniform=False, size=(6, 90), anchor="min",
                              distribute="fixed_value", start=0),
            },
            "non_layout_specification": {"fill": {"scale": "fix", "fix": "#72b7b2"}},
        },
    )
    write(
        case,
        "step3-0-a-1.txt",
        {
            "data_structure": {
                "data_type": "2D_MATRIX",
                "data_size": {
                    "primary": {"number": 1, "dimension": "y",
                                "explanation": "one reference line"},
                    "secondary": {"number": 5, "dimension": "x"},
                },
            },
            "mark_specification": mark_json(
                "line", link="group_type", group_link_direction="x"
            ),
            "layout_specification": {
                "x": dim_json(start=8, interval=18),
                "y": dim_json(distribute="flexible"),
            },
            "non_layout_specification": {
                "stroke": {"scale": "fix", "fix": "#e45756"},
                "stroke_width": {"scale": "fix", "fix": 1.5},
            },
        },
    )
    write(
        case,
        "step3-0-4.txt",
        {
            "data_structure": {
                "data_type": "1D_LIST",
                "data_size": {
                    "primary": {
                        "number": 1,
                        "dimension": ["x", "y"],
                        "explanation": "a single summary circle",
                    }
                },
            },
            "mark_specification": mark_json("circle"),
            "layout_specification": {
                "x": dim_json(size=(72, 72), distribute="fixed_value", start=50),
                "y": dim_json(size=(72, 72), distribute="fixed_value", start=50),
            },
            "non_layout_specification": {"fill": {"scale": "fix", "fix": "#f58518"}},
        },
    )


def main() -> None:
    if FIXTURES.exists():
        shutil.rmtree(FIXTURES)
    make_basic_bar()
    make_merge_1d()
    make_composite_panels()
    for case in sorted(FIXTURES.iterdir()):
        run = reproduce_from_fixtures(case)
        if run.status != "done":
            raise SystemExit(f"{case.name}: replay failed: {run.failure}")
        if not run.report.is_clean:
            raise SystemExit(f"{case.name}: assembled document has errors:\n{run.report}")
        (case / "final.revis.json").write_text(serialize(run.document), encoding="utf-8")
        print(f"{case.name}: ok ({len(run.transcripts)} transcripts)")


if __name__ == "__main__":
    main()
