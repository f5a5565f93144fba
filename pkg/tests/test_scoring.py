"""Attribute-accuracy scoring and the mismatch-injection oracle."""

import dataclasses

import pytest

from revis.gallery import build
from revis.io import save_document, serialize
from revis.scoring import (
    AccuracyReport,
    AttributePath,
    applicable_attributes,
    inject_mismatches,
    run_gallery,
    score,
)

# Published per-row (match, mismatch) counts for the 20 basic charts.
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
PUBLISHED_ACCURACIES = [
    100.0, 100.0, 100.0, 94.4, 83.3, 100.0, 100.0, 100.0, 72.2, 84.2,
    100.0, 77.8, 94.7, 100.0, 100.0, 100.0, 100.0, 94.4, 100.0, 100.0,
]


class TestApplicableAttributes:
    def test_simple_bar_exposes_exactly_18(self):
        assert len(applicable_attributes(build("basic-01-simple-bar"))) == 18

    def test_stacking_direction_needs_stacking(self):
        paths = {str(p) for p in applicable_attributes(build("basic-01-simple-bar"))}
        assert not any("stacking_direction" in p for p in paths)
        stacked = {str(p) for p in applicable_attributes(build("basic-03-stacked-bar"))}
        assert "0 . layout_specification.y.stacking_direction" in stacked

    def test_spacing_fields_need_uniform_interval(self):
        paths = {str(p) for p in applicable_attributes(build("basic-07-scatter"))}
        assert not any("anchor_start" in p or "anchor_interval" in p for p in paths)

    def test_polar_params_only_for_radial(self):
        cartesian = {str(p) for p in applicable_attributes(build("basic-01-simple-bar"))}
        polar = {str(p) for p in applicable_attributes(build("basic-14-pie"))}
        assert not any("coordinate_system" in p for p in cartesian)
        assert "0 . coordinate_system.r1" in polar

    def test_frame_kind_changes_attribute_count(self):
        cartesian = build("basic-01-simple-bar")
        polar = build("basic-02-radial-bar")
        assert len(applicable_attributes(cartesian)) != len(applicable_attributes(polar))

    def test_applicability_ignores_generated_document(self):
        gt = build("basic-03-stacked-bar")
        mutated, _ = inject_mismatches(gt, 4, seed=3)
        assert applicable_attributes(gt) == applicable_attributes(gt)
        assert score(gt, mutated).total == len(applicable_attributes(gt))


class TestScore:
    def test_identity_is_always_perfect(self, gallery_docs):
        for name, doc in gallery_docs.items():
            result = score(doc, doc, name)
            assert result.accuracy == 100.0 and result.mismatched == 0, name

    def test_single_flip_reduces_matched_by_one(self):
        gt = build("basic-01-simple-bar")
        for seed in range(6):
            mutated, ledger = inject_mismatches(gt, 1, seed=seed)
            result = score(gt, mutated)
            assert result.mismatched == len(ledger) == 1
            assert result.matched == result.total - 1

    def test_one_flip_out_of_18_is_94_4(self):
        gt = build("basic-01-simple-bar")
        mutated, ledger = inject_mismatches(gt, 1, seed=2)
        result = score(gt, mutated)
        assert result.total == 18
        assert result.accuracy == pytest.approx(94.4, abs=0.05)

    def test_missing_container_counts_as_mismatch(self):
        gt = build("composite-03-marginal-histograms")
        from revis.edit import remove_container

        generated = remove_container(gt, "0-2")
        result = score(gt, generated)
        per_container = [p for p, _, _ in result.mismatches if p.container == "0-2"]
        expected = [p for p in applicable_attributes(gt) if p.container == "0-2"]
        assert len(per_container) == len(expected) > 0


class TestTableArithmetic:
    def test_per_row_accuracies_match_published(self):
        report = AccuracyReport.from_counts(PUBLISHED_BASIC_COUNTS)
        for case, published in zip(report.cases, PUBLISHED_ACCURACIES):
            assert abs(case.accuracy - published) <= 0.05, case.name

    def test_overall_is_94_8(self):
        report = AccuracyReport.from_counts(PUBLISHED_BASIC_COUNTS)
        assert report.matched == 331
        assert report.mismatched == 18
        assert report.total == 349
        assert abs(report.accuracy - 94.8) <= 0.05

    def test_text_table_shape(self):
        report = AccuracyReport.from_counts(PUBLISHED_BASIC_COUNTS)
        text = report.to_text()
        assert "Overall" in text and "94.8" in text
        assert len(text.splitlines()) == 22  # header + 20 rows + overall

    def test_csv_round_trip(self):
        import csv
        import io

        report = AccuracyReport.from_counts(PUBLISHED_BASIC_COUNTS)
        rows = list(csv.DictReader(io.StringIO(report.to_csv())))
        overall = rows[-1]
        assert overall["case"] == "overall"
        assert int(overall["match"]) == 331 and int(overall["total"]) == 349
        assert float(overall["accuracy"]) == pytest.approx(94.8, abs=0.05)


class TestInjectionOracle:
    def test_twenty_synthetic_cases_match_ledger(self, gallery_docs):
        basics = [n for n in gallery_docs if n.startswith("basic-")]
        assert len(basics) == 20
        for i, name in enumerate(basics):
            gt = gallery_docs[name]
            mutated, ledger = inject_mismatches(gt, count=i % 4, seed=100 + i)
            result = score(gt, mutated, name)
            assert result.mismatched == len(ledger), name
            assert {p for p, _, _ in result.mismatches} == set(ledger), name
            assert result.matched == result.total - len(ledger), name

    def test_injection_is_deterministic(self):
        gt = build("basic-11-heatmap")
        a = inject_mismatches(gt, 3, seed=7)
        b = inject_mismatches(gt, 3, seed=7)
        assert serialize(a[0]) == serialize(b[0]) and a[1] == b[1]


class TestRunGallery:
    def test_directory_scoring(self, tmp_path, gallery_docs):
        for i, name in enumerate(list(gallery_docs)[:5]):
            gt = gallery_docs[name]
            mutated, ledger = inject_mismatches(gt, i % 3, seed=i)
            case_dir = tmp_path / name
            case_dir.mkdir()
            save_document(gt, case_dir / "ground_truth.revis.json")
            save_document(mutated, case_dir / "generated.revis.json")
        report = run_gallery(tmp_path)
        assert len(report.cases) == 5
        assert report.mismatched == sum(i % 3 for i in range(5))

    def test_empty_directory_is_success(self, tmp_path):
        report = run_gallery(tmp_path)
        assert report.cases == () and report.accuracy == 100.0

    def test_missing_file_raises(self, tmp_path):
        (tmp_path / "case").mkdir()
        with pytest.raises(FileNotFoundError):
            run_gallery(tmp_path)


def test_attribute_path_rendering():
    path = AttributePath("0", "layout_specification.x.stacking")
    assert str(path) == "0 . layout_specification.x.stacking"
