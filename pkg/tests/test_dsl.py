"""Document model, parsing, validation, serialization, and edits."""

import dataclasses
import hashlib
import json

import pytest

from revis.edit import (
    add_subcontainer,
    duplicate_container,
    edit_frame,
    remove_container,
)
from revis.gallery import build, cart, dim, leaf, mark, node, pol, spec, d1
from revis.io import parse_document, serialize
from revis.model import (
    CartesianFrame,
    ContainerNode,
    DslParseError,
    EditError,
    PolarFrame,
    UnknownContainerError,
    is_template_id,
    parent_id,
)
from revis.validate import validate

MINIMAL = """
{
  "container_id": "0",
  "description": "plain bars",
  "coordinate": "cartesian",
  "coordinate_system": {"x1": 0, "y1": 0, "x2": 100, "y2": 100},
  "if_leaf": true,
  "mark_type": "rectangle",
  "data_specification": {
    "0": {
      "mark_specification": {
        "mark_type": "rectangle", "is_link_mark": false,
        "link_mark_type": "no_link", "is_width_encoded_data": false
      },
      "data_structure": {
        "data_type": "1D_list",
        "data_size": {"primary": {"number": 4, "dimension": "x"}}
      },
      "layout_specification": {
        "x": {
          "stacking": false, "stacking_direction": "min", "subdividing": false,
          "2d_flatten": false, "size_uniform": true, "size_range": [10, 10],
          "anchor": "min", "anchor_distribute": "uniform_interval",
          "anchor_start": 5, "anchor_interval": 22
        },
        "y": {
          "stacking": false, "stacking_direction": "min", "subdividing": false,
          "2d_flatten": false, "size_uniform": false, "size_range": [0, 90],
          "anchor": "min", "anchor_distribute": "fixed_value", "anchor_start": 0
        }
      },
      "non_layout_specification": {"fill": {"scale": "fix", "fix": "#4682B4"}}
    }
  }
}
"""


class TestParse:
    def test_single_root_leaf(self):
        doc = parse_document(MINIMAL)
        assert len(list(doc.walk())) == 1
        assert doc.root.is_leaf and doc.root.mark_type == "rectangle"
        frame = doc.root.frame
        assert (frame.x1, frame.y1, frame.x2, frame.y2) == (0, 0, 100, 100)

    def test_colors_normalized_lowercase(self):
        doc = parse_document(MINIMAL)
        assert doc.data_specifications["0"].non_layout_specification["fill"].fix == "#4682b4"

    def test_cartesian_inside_polar_rejected(self):
        text = json.dumps(
            {
                "container_id": "0",
                "coordinate": "polar",
                "coordinate_system": {"cx": 0.5, "cy": 0.5, "r1": 0, "r2": 1, "a1": 0, "a2": 360},
                "if_leaf": False,
                "components": [
                    {
                        "container_id": "0-0",
                        "coordinate": "cartesian",
                        "coordinate_system": {"x1": 0, "y1": 0, "x2": 100, "y2": 100},
                        "if_leaf": True,
                        "mark_type": "circle",
                    }
                ],
            }
        )
        with pytest.raises(DslParseError) as err:
            parse_document(text)
        assert "polar" in str(err.value)

    def test_unknown_field_rejected(self):
        obj = json.loads(MINIMAL)
        obj["surprise"] = 1
        with pytest.raises(DslParseError) as err:
            parse_document(json.dumps(obj))
        assert "surprise" in str(err.value)

    def test_unknown_enum_rejected(self):
        obj = json.loads(MINIMAL)
        obj["mark_type"] = "triangle"
        with pytest.raises(DslParseError):
            parse_document(json.dumps(obj))

    def test_type_mismatch_rejected(self):
        obj = json.loads(MINIMAL)
        obj["coordinate_system"]["x1"] = "zero"
        with pytest.raises(DslParseError) as err:
            parse_document(json.dumps(obj))
        assert "x1" in str(err.value)

    def test_mllm_spelling_variants_normalized(self):
        obj = json.loads(MINIMAL)
        obj["coordinate"] = "Cartesian"
        entry = obj["data_specification"]["0"]
        entry["data_structure"]["data_type"] = "1D_LIST"
        doc = parse_document(json.dumps(obj))
        assert doc.root.frame.kind == "cartesian"
        assert doc.data_specifications["0"].data_structure.data_type == "1D_list"

    def test_bad_json_pinpoints_root(self):
        with pytest.raises(DslParseError) as err:
            parse_document("{nope")
        assert err.value.path == "$"


class TestRoundTrip:
    def test_gallery_round_trips(self, gallery_docs):
        for name, doc in gallery_docs.items():
            text = serialize(doc)
            again = parse_document(text)
            assert again == doc, name
            assert serialize(again) == text, name

    def test_serialize_idempotent(self):
        doc = parse_document(MINIMAL)
        once = serialize(doc)
        assert serialize(parse_document(once)) == once

    def test_leaf_text_contains_if_leaf_true(self):
        assert '"if_leaf": true' in serialize(parse_document(MINIMAL))

    def test_byte_stable_hashes(self, gallery_docs):
        for name, doc in gallery_docs.items():
            h1 = hashlib.sha256(serialize(doc).encode()).hexdigest()
            h2 = hashlib.sha256(serialize(build(name)).encode()).hexdigest()
            assert h1 == h2, name

    def test_numbers_without_trailing_zeros(self):
        doc = parse_document(MINIMAL)
        new_frame = CartesianFrame(0.0, 0.0, 100.0, 100.0)
        text = serialize(edit_frame(doc, "0", new_frame))
        assert '"x2": 100,' in text and "100.0" not in text


class TestValidate:
    def test_gallery_is_clean(self, gallery_docs):
        for name, doc in gallery_docs.items():
            report = validate(doc)
            assert not report.issues, f"{name}: {report}"

    def test_2d_list_length_mismatch(self):
        doc = build("basic-13-dot-plot")
        entry = doc.data_specifications["0"]
        bad_secondary = dataclasses.replace(
            entry.data_structure.secondary, number=(3, 5, 8)
        )
        entry = dataclasses.replace(
            entry,
            data_structure=dataclasses.replace(entry.data_structure, secondary=bad_secondary),
        )
        report = validate(doc.with_specs({"0": entry}))
        assert [i for i in report.errors if i.rule == "data.secondary"]

    def test_uniform_interval_bound(self):
        doc = parse_document(MINIMAL)
        entry = doc.data_specifications["0"]
        structure = dataclasses.replace(
            entry.data_structure,
            primary=dataclasses.replace(entry.data_structure.primary, number=9),
        )
        dims = dict(entry.layout_specification.dimensions)
        dims["x"] = dataclasses.replace(dims["x"], anchor_start=20.0, anchor_interval=10.0)
        entry = dataclasses.replace(
            entry,
            data_structure=structure,
            layout_specification=dataclasses.replace(
                entry.layout_specification, dimensions=dims
            ),
        )
        report = validate(doc.with_specs({"0": entry}))
        assert [i for i in report.errors if i.rule == "dim.anchor-bound"]

    @pytest.mark.parametrize(
        "breaker",
        [
            "frame_order",
            "polar_radius",
            "leaf_without_mark",
            "stacking_anchor",
            "size_uniform",
            "opacity_range",
            "missing_spec",
        ],
    )
    def test_single_field_mutations_are_caught(self, breaker):
        doc = build("basic-03-stacked-bar")
        entry = doc.data_specifications["0"]
        if breaker == "frame_order":
            doc = doc.with_root(
                dataclasses.replace(doc.root, frame=CartesianFrame(100, 0, 0, 100))
            )
        elif breaker == "polar_radius":
            doc = build("basic-14-pie")
            doc = doc.with_root(
                dataclasses.replace(doc.root, frame=PolarFrame(0.5, 0.5, 0.2, 1.4, 0, 360))
            )
        elif breaker == "leaf_without_mark":
            doc = doc.with_root(dataclasses.replace(doc.root, mark_type=None))
        elif breaker == "stacking_anchor":
            dims = dict(entry.layout_specification.dimensions)
            dims["y"] = dataclasses.replace(dims["y"], anchor="min")
            doc = doc.with_specs(
                {
                    "0": dataclasses.replace(
                        entry,
                        layout_specification=dataclasses.replace(
                            entry.layout_specification, dimensions=dims
                        ),
                    )
                }
            )
        elif breaker == "size_uniform":
            dims = dict(entry.layout_specification.dimensions)
            dims["x"] = dataclasses.replace(dims["x"], size_uniform=True, size_range=(4.0, 9.0))
            doc = doc.with_specs(
                {
                    "0": dataclasses.replace(
                        entry,
                        layout_specification=dataclasses.replace(
                            entry.layout_specification, dimensions=dims
                        ),
                    )
                }
            )
        elif breaker == "opacity_range":
            styles = dict(entry.non_layout_specification)
            styles["opacity"] = dataclasses.replace(
                styles["fill"], scale="fix", fix=1.5, options=None
            )
            doc = doc.with_specs({"0": dataclasses.replace(entry, non_layout_specification=styles)})
        elif breaker == "missing_spec":
            doc = doc.with_specs({})
        assert not validate(doc).is_clean

    def test_report_ordered_by_container_path(self):
        doc = build("composite-09-stacked-panels")
        doc = doc.with_specs({})  # three missing-spec errors
        report = validate(doc)
        containers = [i.container for i in report.issues]
        assert containers == sorted(containers)


class TestFind:
    def test_find_root(self, gallery_docs):
        doc = gallery_docs["basic-01-simple-bar"]
        assert doc.find_container("0") is doc.root

    def test_find_template_leaf(self, gallery_docs):
        doc = gallery_docs["composite-07-linked-bar-panels"]
        found = doc.find_container("0-a-1")
        assert found.is_leaf and found.mark_type == "line"

    def test_find_missing(self, gallery_docs):
        doc = gallery_docs["basic-01-simple-bar"]
        with pytest.raises(UnknownContainerError):
            doc.find_container("9-9")


class TestEditFrame:
    def test_half_ring_edit_changes_one_field(self, gallery_docs):
        doc = gallery_docs["composite-06-radial-rings"]
        old = doc.find_container("0-1").frame
        new = dataclasses.replace(old, a1=180.0)
        edited = edit_frame(doc, "0-1", new)
        assert edited.find_container("0-1").frame.a1 == 180.0
        # Edit locality: canonical serializations differ only at that line.
        before = serialize(doc).splitlines()
        after = serialize(edited).splitlines()
        diffs = [
            (a, b) for a, b in zip(before, after) if a != b
        ]
        assert len(before) == len(after)
        assert len(diffs) == 1 and '"a1"' in diffs[0][1]

    def test_identity_edit(self, gallery_docs):
        doc = gallery_docs["basic-01-simple-bar"]
        assert edit_frame(doc, "0", doc.root.frame) == doc

    def test_invalid_frame_rejected(self, gallery_docs):
        doc = gallery_docs["basic-01-simple-bar"]
        with pytest.raises(EditError):
            edit_frame(doc, "0", CartesianFrame(50, 0, 10, 100))

    def test_kind_change_inside_polar_rejected(self, gallery_docs):
        doc = gallery_docs["composite-06-radial-rings"]
        with pytest.raises(EditError):
            edit_frame(doc, "0-0", CartesianFrame(0, 0, 100, 100))

    def test_children_untouched(self, gallery_docs):
        doc = gallery_docs["composite-01-faceted-bar"]
        new = CartesianFrame(2.0, 0.0, 50.0, 50.0)
        edited = edit_frame(doc, "0-a", new)
        assert edited.find_container("0-a-0").frame == doc.find_container("0-a-0").frame


class TestDuplicate:
    def test_fresh_integer_sibling(self):
        children = [
            leaf("0-0", cart(0, 0, 30, 100), "rectangle"),
            leaf("0-1", cart(30, 0, 60, 100), "rectangle"),
            leaf("0-2", cart(60, 0, 100, 100), "rectangle"),
        ]
        base_spec = spec(
            d1(3, "x"),
            {
                "x": dim(size=(8, 8), anchor="min", start=5, interval=25),
                "y": dim(size=(0, 80), anchor="min", distribute="fixed_value", start=0),
            },
            mk=mark("rectangle"),
        )
        doc = parse_document(
            serialize(
                __import__("revis.model", fromlist=["DslDocument"]).DslDocument(
                    root=node("0", cart(0, 0, 100, 100), children),
                    data_specifications={c.id: base_spec for c in children},
                )
            )
        )
        edited, new_id = duplicate_container(doc, "0-1", cart(30, 0, 60, 100))
        assert new_id == "0-3"
        assert len(edited.root.children) == 4

    def test_leaf_duplicate_copies_one_spec(self, gallery_docs):
        doc = gallery_docs["composite-03-marginal-histograms"]
        edited, new_id = duplicate_container(doc, "0-1", cart(0, 0, 75, 72))
        assert new_id == "0-3"
        assert len(edited.data_specifications) == len(doc.data_specifications) + 1
        assert edited.data_specifications[new_id] == doc.data_specifications["0-1"]

    def test_template_duplicate_gets_fresh_letter(self, gallery_docs):
        doc = gallery_docs["composite-07-linked-bar-panels"]
        edited, new_id = duplicate_container(doc, "0-a", cart(5, 8, 78, 92))
        assert is_template_id(new_id) and new_id == "0-b"
        assert "0-b-0" in edited.data_specifications
        assert "0-b-1" in edited.data_specifications

    def test_duplicates_validate_cleanly(self, gallery_docs):
        for name in (
            "composite-03-marginal-histograms",
            "composite-06-radial-rings",
            "composite-07-linked-bar-panels",
        ):
            doc = gallery_docs[name]
            target = doc.root.children[1].id
            edited, _ = duplicate_container(doc, target, doc.find_container(target).frame)
            assert validate(edited).is_clean, name


class TestRemoveAdd:
    def test_remove_leaf_removes_spec(self, gallery_docs):
        doc = gallery_docs["composite-03-marginal-histograms"]
        edited = remove_container(doc, "0-2")
        assert "0-2" not in edited.data_specifications
        assert edited.root.find("0-2") is None
        assert validate(edited).is_clean

    def test_remove_template_removes_inner_specs(self, gallery_docs):
        doc = gallery_docs["composite-07-linked-bar-panels"]
        before = len(doc.data_specifications)
        edited = remove_container(doc, "0-a")
        assert len(edited.data_specifications) == before - 3  # 0-a, 0-a-0, 0-a-1
        # dangling source reference pruned
        assert edited.data_specifications["0-0"].layout_specification.source == ()

    def test_remove_root_rejected(self, gallery_docs):
        with pytest.raises(EditError):
            remove_container(gallery_docs["basic-01-simple-bar"], "0")

    def test_remove_only_child_rejected(self, gallery_docs):
        doc = gallery_docs["composite-01-faceted-bar"]
        with pytest.raises(EditError):
            remove_container(doc, "0-a")

    def test_add_leaf_without_spec_flags_validation(self, gallery_docs):
        doc = gallery_docs["composite-03-marginal-histograms"]
        extra = leaf("0-3", cart(0, 72, 75, 100), "circle")
        edited = add_subcontainer(doc, "0", extra)
        report = validate(edited)
        assert [i for i in report.errors if i.rule == "spec.coverage-missing"]

    def test_add_duplicate_id_rejected(self, gallery_docs):
        doc = gallery_docs["composite-03-marginal-histograms"]
        with pytest.raises(EditError):
            add_subcontainer(doc, "0", leaf("0-1", cart(0, 0, 10, 10), "circle"))

    def test_polar_nesting_unreachable_via_edits(self, gallery_docs):
        doc = gallery_docs["composite-06-radial-rings"]
        with pytest.raises(EditError):
            add_subcontainer(doc, "0", leaf("0-3", cart(0, 0, 10, 10), "circle"))
        # switching a container with cartesian descendants to polar is refused
        doc2 = gallery_docs["composite-01-faceted-bar"]
        with pytest.raises(EditError):
            edit_frame(doc2, "0-a", pol())


def test_parent_id_helpers():
    assert parent_id("0-1-2") == "0-1"
    assert parent_id("0") is None
    assert is_template_id("0-a") and not is_template_id("0-1")
