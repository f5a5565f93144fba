"""Acceptance criteria, one test per criterion.

Each test prints one ``[ACCEPTANCE] PASS/FAIL`` line (visible with ``-s``)
and enforces the stated runtime budget and tolerances.
"""

import contextlib
import dataclasses
import hashlib
import math
import random
import re
import time
import xml.etree.ElementTree as ET
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import pytest

from _samplers import check_invariants, sample_spec_and_count
from revis import prompts
from revis.datagen import generate_tables
from revis.edit import edit_frame, with_spec
from revis.gallery import build_all
from revis.io import parse_document, serialize
from revis.layout import resolve_dimension
from revis.model import is_template_id
from revis.pipeline import MllmEndpointConfig, FixtureTransport, PipelineRunner
from revis.render import build_scene, render_document
from revis.scoring import AccuracyReport, applicable_attributes, inject_mismatches, score
from revis.validate import validate

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"
FIXTURE_CASES = ("basic-bar", "merge-1d", "composite-panels")


@contextlib.contextmanager
def criterion(name: str, budget_s: float | None = None):
    start = time.monotonic()
    try:
        yield
    except BaseException:
        print(f"[ACCEPTANCE] FAIL — {name}")
        raise
    elapsed = time.monotonic() - start
    if budget_s is not None and elapsed > budget_s:
        print(f"[ACCEPTANCE] FAIL — {name} (runtime {elapsed:.2f}s > {budget_s}s)")
        raise AssertionError(f"{name}: runtime {elapsed:.2f}s exceeds {budget_s}s budget")
    note = f" ({elapsed:.2f}s)" if budget_s is not None else ""
    print(f"[ACCEPTANCE] PASS — {name}{note}")


def test_schema_round_trip_corpus():
    with criterion("schema round-trip over the 40-document corpus", budget_s=5.0):
        docs = build_all()
        basics = [n for n in docs if n.startswith("basic-")]
        composites = [n for n in docs if n.startswith("composite-")]
        assert len(basics) == 20 and len(composites) == 20
        for name, doc in docs.items():
            report = validate(doc)
            assert not report.issues, f"{name}: {report}"
            text = serialize(doc)
            again = parse_document(text)
            assert again == doc, name
            assert serialize(again) == text, name
            assert hashlib.sha256(serialize(again).encode()).hexdigest() == \
                hashlib.sha256(text.encode()).hexdigest()


def test_layout_property_suite_10k():
    with criterion("layout invariants over 10,000 randomized samples", budget_s=30.0):
        rng = random.Random(0xC0FFEE)
        for _ in range(10_000):
            spec, count, values = sample_spec_and_count(rng)
            extents = resolve_dimension(spec, count, values)
            check_invariants(spec, count, extents)
            again = resolve_dimension(spec, count, list(values))
            assert extents == again  # bitwise determinism


def _expected_leaf_records(doc, cid):
    entry = doc.data_specifications[cid]
    mk = entry.mark_specification
    if mk.link_mark_type == "node_link":
        return mk.link_number
    if mk.link_mark_type == "group_type":
        return len(entry.data_structure.group_sizes())
    return entry.data_structure.total_items()


def _instance_multiplier(doc, cid):
    mult = 1
    parts = cid.split("-")
    for i in range(1, len(parts)):
        prefix = "-".join(parts[: i + 1])
        if is_template_id(prefix) and prefix != cid:
            mult *= doc.data_specifications[prefix].data_structure.total_items()
    return mult


def _record_bbox(record):
    g = record.geometry
    if record.mark_type == "rectangle":
        return (g["x"], g["y"], g["x"] + g["w"], g["y"] + g["h"])
    if record.mark_type == "circle":
        return (g["cx"] - g["r"], g["cy"] - g["r"], g["cx"] + g["r"], g["cy"] + g["r"])
    if record.mark_type == "arc":
        r = g["r_outer"]
        return (g["cx"] - r, g["cy"] - r, g["cx"] + r, g["cy"] + r)
    pts = g["points"] if record.mark_type == "line" else list(g["upper"]) + list(g["lower"])
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    return (min(xs), min(ys), max(xs), max(ys))


PIXEL_KEYS = {
    "rectangle": ("x", "y", "w", "h"),
    "circle": ("cx", "cy", "r"),
    "arc": ("cx", "cy", "r_inner", "r_outer"),
    "link": ("x0", "y0", "cx", "cy", "x1", "y1"),
}


def test_renderer_oracles_corpus():
    with criterion(
        "renderer oracles (XML, mark counts, 0.5px clipping, exact doubling)",
        budget_s=60.0,
    ):
        for name, doc in build_all().items():
            svg = render_document(doc, seed=17, width=640, height=480)
            ET.fromstring(svg)  # well-formed XML

            elements = re.findall(r"<(rect|circle|path) ", svg)
            expected = sum(
                _expected_leaf_records(doc, leaf.id) * _instance_multiplier(doc, leaf.id)
                for leaf in doc.leaves()
            )
            assert len(elements) == expected, name

            tables = generate_tables(doc, 17)
            scene = build_scene(doc, tables, 640, 480, 17)
            for entry in scene.entries:
                f = entry.frame
                lo_x, lo_y = f.px - 0.5, f.py - 0.5
                hi_x, hi_y = f.px + f.pw + 0.5, f.py + f.ph + 0.5
                for record in entry.records:
                    if record.mark_type == "link":
                        continue
                    bb = _record_bbox(record)
                    assert bb[0] >= lo_x and bb[1] >= lo_y, (name, record.container)
                    assert bb[2] <= hi_x and bb[3] <= hi_y, (name, record.container)

            doubled = build_scene(doc, tables, 1280, 960, 17)
            for e1, e2 in zip(scene.entries, doubled.entries):
                for r1, r2 in zip(e1.records, e2.records):
                    if r1.mark_type in PIXEL_KEYS:
                        for key in PIXEL_KEYS[r1.mark_type]:
                            assert r2.geometry[key] == 2 * r1.geometry[key], (name, key)
                        if r1.mark_type == "arc":
                            assert r2.geometry["a_start"] == r1.geometry["a_start"]
                            assert r2.geometry["a_end"] == r1.geometry["a_end"]
                    else:
                        keys = ["points"] if r1.mark_type == "line" else ["upper", "lower"]
                        for key in keys:
                            for p1, p2 in zip(r1.geometry[key], r2.geometry[key]):
                                assert p2[0] == 2 * p1[0] and p2[1] == 2 * p1[1], name


def test_render_determinism():
    with criterion("byte-identical renders across 3 runs and parallel workers"):
        docs = build_all()
        subjects = [
            docs["composite-06-radial-rings"],
            docs["composite-07-linked-bar-panels"],
            docs["basic-18-stacked-area"],
        ]
        for doc in subjects:
            runs = [render_document(doc, seed=23, width=777, height=555) for _ in range(3)]
            assert runs[0] == runs[1] == runs[2]
            with ThreadPoolExecutor(max_workers=4) as pool:
                parallel = list(
                    pool.map(
                        lambda _: render_document(doc, seed=23, width=777, height=555),
                        range(8),
                    )
                )
            assert all(svg == runs[0] for svg in parallel)


PUBLISHED_BASIC_COUNTS = {
    "01 Simple Bar Chart": (18, 0),
    "02 Radial Bar Chart": (17, 0),
    "03 Stacked Bar Chart": (18, 0),
    "04 Radial Stacked Bar Chart": (17, 1),
    "05 Horizontal Stacked Bar": (15, 3),
    "06 Grouped Bar Chart": (18, 0),
    "07 Scatter Plot": (18, 0),
    "08 Bubble Plot 1": (17, 0),
    "09 Bubble Plot 2": (13, 5),
    "10 2D Histogram Scatterplot": (16, 3),
    "11 2D Histogram Heatmap": (19, 0),
    "12 Strip Plot": (14, 4),
    "13 Dot Plot": (18, 1),
    "14 Pie Chart": (17, 0),
    "15 Donut Chart": (17, 0),
    "16 Line Chart": (18, 0),
    "17 Parallel Coordinates": (18, 0),
    "18 Stacked Area": (17, 1),
    "19 Radar Chart": (13, 0),
    "20 Mosaic Chart": (13, 0),
}
PUBLISHED_ACCURACIES = {
    "01 Simple Bar Chart": 100.0,
    "02 Radial Bar Chart": 100.0,
    "03 Stacked Bar Chart": 100.0,
    "04 Radial Stacked Bar Chart": 94.4,
    "05 Horizontal Stacked Bar": 83.3,
    "06 Grouped Bar Chart": 100.0,
    "07 Scatter Plot": 100.0,
    "08 Bubble Plot 1": 100.0,
    "09 Bubble Plot 2": 72.2,
    "10 2D Histogram Scatterplot": 84.2,
    "11 2D Histogram Heatmap": 100.0,
    "12 Strip Plot": 77.8,
    "13 Dot Plot": 94.7,
    "14 Pie Chart": 100.0,
    "15 Donut Chart": 100.0,
    "16 Line Chart": 100.0,
    "17 Parallel Coordinates": 100.0,
    "18 Stacked Area": 94.4,
    "19 Radar Chart": 100.0,
    "20 Mosaic Chart": 100.0,
}


def test_eval_arithmetic_reproduces_published_table():
    with criterion("accuracy arithmetic over published per-case counts (±0.05)"):
        report = AccuracyReport.from_counts(PUBLISHED_BASIC_COUNTS)
        for case in report.cases:
            assert abs(case.accuracy - PUBLISHED_ACCURACIES[case.name]) <= 0.05, case.name
        row04 = next(c for c in report.cases if c.name.startswith("04"))
        row09 = next(c for c in report.cases if c.name.startswith("09"))
        assert abs(row04.accuracy - 94.4) <= 0.05
        assert abs(row09.accuracy - 72.2) <= 0.05
        assert (report.matched, report.mismatched, report.total) == (331, 18, 349)
        assert abs(report.accuracy - 94.8) <= 0.05

        # A hand-built plain bar chart exposes exactly 18 applicable attributes.
        docs = build_all()
        assert len(applicable_attributes(docs["basic-01-simple-bar"])) == 18


def test_eval_mismatch_injection_oracle():
    with criterion("mismatch-injection oracle over 20 synthetic cases"):
        docs = build_all()
        basics = [n for n in docs if n.startswith("basic-")]
        assert len(basics) == 20
        for i, name in enumerate(basics):
            gt = docs[name]
            mutated, ledger = inject_mismatches(gt, count=(i % 4), seed=4242 + i)
            result = score(gt, mutated, name)
            assert result.mismatched == len(ledger), name
            assert {p for p, _, _ in result.mismatches} == set(ledger), name
            assert result.total == len(applicable_attributes(gt)), name


PROMPT_HASHES = {
    "STEP1_STRUCTURE_PROMPT": "83ad2d41bfacf6434fc3d1d16cbde281102e5e688dfcec43fd9a420714f1c7a5",
    "TEMPLATE_PARSING_1_PROMPT": "161b900c9d4cef5616d743d6b1c88b99a3dba05781d2975b1f046b92f2380a19",
    "TEMPLATE_PARSING_2_PROMPT": "789fab0dfffe6381016e6cde414375407747242c3446035a164a23f476aa0075",
    "MARK_PARSING_PROMPT": "789f38fc7945f0b629125d270335f092ea43ec747023ee755d904d758f0910c4",
}


def test_pipeline_fixture_replay(monkeypatch):
    with criterion("fixture replay of 3 recorded cases, no network", budget_s=10.0):
        # Any attempt to touch the network fails the criterion outright.
        import socket

        def no_network(*args, **kwargs):
            raise AssertionError("network access attempted during fixture replay")

        monkeypatch.setattr(socket.socket, "connect", no_network)

        for name, expected in PROMPT_HASHES.items():
            text = getattr(prompts, name)
            assert hashlib.sha256(text.encode()).hexdigest() == expected, name

        for case in FIXTURE_CASES:
            config = MllmEndpointConfig(base_url="x", model="x", api_key="x")
            runner = PipelineRunner(config, FixtureTransport(FIXTURES / case))
            from revis.pipeline import _PLACEHOLDER_PNG

            run = runner.run(_PLACEHOLDER_PNG, "image/png", run_id=case)
            assert run.status == "done", (case, run.failure)
            stored = (FIXTURES / case / "final.revis.json").read_text(encoding="utf-8")
            assert serialize(run.document) == stored, case
            assert run.report.is_clean, case


def test_scenario_regressions():
    with criterion("editing scenarios: half-ring halves spans; +1 column adds 4 boxes"):
        docs = build_all()

        # Half-ring redesign on the concentric-ring document.
        doc = docs["composite-06-radial-rings"]
        edited = doc
        for cid in ("0-1", "0-2"):
            frame = edited.find_container(cid).frame
            edited = edit_frame(edited, cid, dataclasses.replace(frame, a1=180.0))
        before = build_scene(doc, generate_tables(doc, 4), 700, 700, 4)
        after = build_scene(edited, generate_tables(edited, 4), 700, 700, 4)

        def spans(scene, cid):
            return [
                r.geometry["a_end"] - r.geometry["a_start"]
                for r in scene.records()
                if r.container == cid and r.mark_type == "arc"
            ]

        for cid in ("0-1", "0-2"):
            old, new = spans(before, cid), spans(after, cid)
            assert len(old) == len(new) > 0
            for a, b in zip(old, new):
                assert math.isclose(b, a / 2, rel_tol=1e-9)

        # Template-column extension on the linked-panels document.
        doc = docs["composite-07-linked-bar-panels"]
        spec = doc.data_specifications["0-a"]
        wider = dataclasses.replace(
            spec,
            data_structure=dataclasses.replace(
                spec.data_structure,
                primary=dataclasses.replace(spec.data_structure.primary, number=4),
            ),
        )
        edited = with_spec(doc, "0-a", wider)

        def boxes(document):
            scene = build_scene(document, generate_tables(document, 2), 800, 600, 2)
            return [
                e.frame.container
                for e in scene.entries
                if e.frame.container.startswith("0-a[")
            ]

        assert len(boxes(edited)) - len(boxes(doc)) == 4
