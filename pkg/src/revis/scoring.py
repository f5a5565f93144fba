"""Attribute-accuracy scoring of generated documents against ground truths.

Only attributes applicable to the ground-truth chart are evaluated:
stacking direction and subdividing count only when stacking is enabled,
anchor spacing fields only for uniform intervals, polar frame parameters
only for radial containers, and each non-layout encoding as one composite
attribute.  An attribute is correct only on exact match; a missing
container or field counts as a mismatch.  The rubric is documented in
docs/accuracy-rubric.md and tuned so a plain single-leaf bar chart exposes
exactly 18 applicable attributes.
"""

from __future__ import annotations

import csv
import io as _io
import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Optional

from .io import (
    document_to_jsonable,
    frame_to_jsonable,
    parse_document,
    spec_entry_to_jsonable,
)
from .model import DIMENSIONS, DslDocument, id_sort_key, is_template_id


@dataclass(frozen=True)
class AttributePath:
    container: str
    attribute: str  # dotted path, e.g. "layout_specification.x.stacking"

    def __str__(self) -> str:
        return f"{self.container} . {self.attribute}"


@dataclass(frozen=True)
class CaseScore:
    name: str
    matched: int
    mismatched: int
    mismatches: tuple[tuple[AttributePath, object, object], ...] = ()

    @property
    def total(self) -> int:
        return self.matched + self.mismatched

    @property
    def accuracy(self) -> float:
        return 100.0 * self.matched / self.total if self.total else 100.0


@dataclass(frozen=True)
class AccuracyReport:
    cases: tuple[CaseScore, ...]

    @property
    def matched(self) -> int:
        return sum(c.matched for c in self.cases)

    @property
    def mismatched(self) -> int:
        return sum(c.mismatched for c in self.cases)

    @property
    def total(self) -> int:
        return self.matched + self.mismatched

    @property
    def accuracy(self) -> float:
        return 100.0 * self.matched / self.total if self.total else 100.0

    @classmethod
    def from_counts(cls, rows: Mapping[str, tuple[int, int]]) -> "AccuracyReport":
        """Build a report from externally supplied (match, mismatch) counts."""
        return cls(
            cases=tuple(
                CaseScore(name=name, matched=m, mismatched=mm)
                for name, (m, mm) in rows.items()
            )
        )

    def to_text(self) -> str:
        width = max([len(c.name) for c in self.cases] + [7])
        lines = [
            f"{'#':>3} {'Case':<{width}} {'Acc. (%)':>9} {'Match':>6} {'Mismatch':>9} {'Total':>6}"
        ]
        for i, c in enumerate(self.cases, start=1):
            lines.append(
                f"{i:>3} {c.name:<{width}} {c.accuracy:>9.1f} {c.matched:>6} "
                f"{c.mismatched:>9} {c.total:>6}"
            )
        lines.append(
            f"{'':>3} {'Overall':<{width}} {self.accuracy:>9.1f} {self.matched:>6} "
            f"{self.mismatched:>9} {self.total:>6}"
        )
        return "\n".join(lines)

    def to_csv(self) -> str:
        out = _io.StringIO()
        writer = csv.writer(out)
        writer.writerow(["case", "accuracy", "match", "mismatch", "total"])
        for c in self.cases:
            writer.writerow([c.name, f"{c.accuracy:.1f}", c.matched, c.mismatched, c.total])
        writer.writerow(
            ["overall", f"{self.accuracy:.1f}", self.matched, self.mismatched, self.total]
        )
        return out.getvalue()

    def to_jsonable(self) -> dict:
        return {
            "cases": [
                {
                    "name": c.name,
                    "accuracy": round(c.accuracy, 1),
                    "match": c.matched,
                    "mismatch": c.mismatched,
                    "total": c.total,
                    "mismatched_attributes": [
                        {"path": str(p), "expected": e, "actual": a}
                        for p, e, a in c.mismatches
                    ],
                }
                for c in self.cases
            ],
            "overall": {
                "accuracy": round(self.accuracy, 1),
                "match": self.matched,
                "mismatch": self.mismatched,
                "total": self.total,
            },
        }


# ---------------------------------------------------------------------------
# Applicable attributes


def _dim_attributes(prefix: str, dim_obj: dict, flattened: bool) -> list[str]:
    out = [f"{prefix}.stacking"]
    if dim_obj.get("stacking"):
        out.append(f"{prefix}.subdividing")
        if not dim_obj.get("subdividing"):
            out.extend(
                [
                    f"{prefix}.stacking_direction",
                    f"{prefix}.size_uniform",
                    f"{prefix}.size_range",
                ]
            )
    else:
        out.extend(
            [
                f"{prefix}.anchor",
                f"{prefix}.anchor_distribute",
                f"{prefix}.size_uniform",
                f"{prefix}.size_range",
            ]
        )
        if dim_obj.get("anchor_distribute") == "uniform_interval":
            out.extend([f"{prefix}.anchor_start", f"{prefix}.anchor_interval"])
    if flattened:
        out.append(f"{prefix}.2d_flatten")
    return out


def applicable_attributes(gt: DslDocument) -> list[AttributePath]:
    """Attribute paths evaluated for this ground truth, in document order."""
    out: list[AttributePath] = []
    nodes = {n.id: n for n in gt.walk()}
    for cid in sorted(gt.data_specifications, key=id_sort_key):
        node = nodes.get(cid)
        if node is None:
            continue
        entry = spec_entry_to_jsonable(gt.data_specifications[cid])
        add = lambda attr: out.append(AttributePath(cid, attr))

        if node.frame.kind == "polar":
            for key in ("r1", "r2", "a1", "a2"):
                add(f"coordinate_system.{key}")

        mark = entry.get("mark_specification")
        if mark is not None:
            add("mark_specification.mark_type")
            add("mark_specification.link_mark_type")
            if mark.get("link_mark_type") == "group_type":
                add("mark_specification.group_link_direction")
                add("mark_specification.is_width_encoded_data")
            if mark.get("link_mark_type") == "node_link":
                add("mark_specification.link_number")

        structure = entry["data_structure"]
        add("data_structure.data_type")
        add("data_structure.data_size.primary.number")
        add("data_structure.data_size.primary.dimension")
        secondary = structure["data_size"].get("secondary")
        if secondary is not None:
            add("data_structure.data_size.secondary.number")
            add("data_structure.data_size.secondary.dimension")

        primary_dims = structure["data_size"]["primary"]["dimension"]
        if isinstance(primary_dims, str):
            primary_dims = [primary_dims]
        secondary_dims = [secondary["dimension"]] if secondary else []

        layout = entry["layout_specification"]
        for dim_name in DIMENSIONS:
            if dim_name not in layout:
                continue
            flattened = dim_name in primary_dims and dim_name in secondary_dims
            for attr in _dim_attributes(
                f"layout_specification.{dim_name}", layout[dim_name], flattened
            ):
                add(attr)
        if layout.get("source") is not None:
            add("layout_specification.source")
        if layout.get("target") is not None:
            add("layout_specification.target")

        for name in entry.get("non_layout_specification") or {}:
            add(f"non_layout_specification.{name}")
    return out


# ---------------------------------------------------------------------------
# Scoring


def _container_jsonable(doc: DslDocument, cid: str) -> Optional[dict]:
    node = doc.root.find(cid)
    if node is None:
        return None
    obj = {"coordinate_system": frame_to_jsonable(node.frame)}
    if cid in doc.data_specifications:
        obj.update(spec_entry_to_jsonable(doc.data_specifications[cid]))
    return obj


def _lookup(obj: Optional[dict], dotted: str):
    current: object = obj
    for part in dotted.split("."):
        if not isinstance(current, dict) or part not in current:
            return None
        current = current[part]
    return current


def score(gt: DslDocument, generated: DslDocument, name: str = "case") -> CaseScore:
    """Exact-match attribute accuracy with containers matched by id."""
    paths = applicable_attributes(gt)
    gt_cache: dict[str, Optional[dict]] = {}
    gen_cache: dict[str, Optional[dict]] = {}
    matched = 0
    mismatches = []
    for path in paths:
        if path.container not in gt_cache:
            gt_cache[path.container] = _container_jsonable(gt, path.container)
            gen_cache[path.container] = _container_jsonable(generated, path.container)
        expected = _lookup(gt_cache[path.container], path.attribute)
        actual = _lookup(gen_cache[path.container], path.attribute)
        if expected == actual:
            matched += 1
        else:
            mismatches.append((path, expected, actual))
    return CaseScore(
        name=name,
        matched=matched,
        mismatched=len(mismatches),
        mismatches=tuple(mismatches),
    )


def run_gallery(cases_dir) -> AccuracyReport:
    """Score every ``<case>/generated.revis.json`` against its ground truth.

    Cases are scored in parallel; the report keeps directory order.
    """
    from concurrent.futures import ThreadPoolExecutor

    cases_dir = Path(cases_dir)
    cases = sorted(p for p in cases_dir.iterdir() if p.is_dir())

    def score_case(case: Path) -> CaseScore:
        gt_path = case / "ground_truth.revis.json"
        gen_path = case / "generated.revis.json"
        if not gt_path.is_file() or not gen_path.is_file():
            raise FileNotFoundError(f"{case.name}: expected ground_truth and generated files")
        gt = parse_document(gt_path.read_text(encoding="utf-8"))
        generated = parse_document(gen_path.read_text(encoding="utf-8"))
        return score(gt, generated, name=case.name)

    if not cases:
        return AccuracyReport(cases=())
    with ThreadPoolExecutor(max_workers=min(8, len(cases))) as pool:
        scores = list(pool.map(score_case, cases))
    return AccuracyReport(cases=tuple(scores))


# ---------------------------------------------------------------------------
# Mismatch injection (synthetic evaluation cases)

_ENUM_FLIPS = {
    "mark_type": ["rectangle", "circle", "arc", "line", "band", "area"],
    "group_link_direction": ["x", "y", "radius", "angle"],
    "stacking_direction": ["min", "middle", "max"],
    "anchor": ["min", "middle", "max"],
    "dimension": ["x", "y", "radius", "angle"],
    "data_type": ["1D_list", "2D_matrix", "2D_list"],
}

# Paths whose flip can change the value of *other* applicable paths are
# excluded so an injection ledger maps 1:1 onto reported mismatches.
_UNSAFE_LEAF_FIELDS = {"stacking", "anchor_distribute", "link_mark_type"}


def _flip_value(field_name: str, value, rng: random.Random):
    if field_name in ("r1", "r2", "a1", "a2"):
        return None  # handled by the frame-aware branch
    if isinstance(value, bool):
        return not value
    if field_name in _ENUM_FLIPS and isinstance(value, str):
        options = [v for v in _ENUM_FLIPS[field_name] if v != value]
        return rng.choice(options)
    if isinstance(value, (int, float)):
        return value + 1
    if isinstance(value, str) and value.startswith("#"):
        return "#123456" if value != "#123456" else "#654321"
    if isinstance(value, list):
        if field_name == "dimension":
            flipped = ["x", "y"] if value != ["x", "y"] else ["radius", "angle"]
            return flipped
        if all(isinstance(v, (int, float)) for v in value) and value:
            return value[:-1] + [value[-1] + 5]
        return ["0"]
    if isinstance(value, dict):  # a whole non-layout encoding
        if field_name in ("fill", "stroke"):
            flipped = {"scale": "fix", "fix": "#123456"}
            return flipped if value != flipped else {"scale": "fix", "fix": "#654321"}
        if field_name == "line_type":
            return {"scale": "fix", "fix": "curve" if value.get("fix") != "curve" else "straight"}
        if field_name == "opacity":
            flipped = {"scale": "fix", "fix": 0.321}
            return flipped if value != flipped else {"scale": "fix", "fix": 0.123}
        flipped = {"scale": "fix", "fix": 3.25}
        return flipped if value != flipped else {"scale": "fix", "fix": 1.25}
    if isinstance(value, str):
        options = [v for v in _ENUM_FLIPS["dimension"] if v != value]
        return rng.choice(options)
    return None


def _flip_frame_value(frame_obj: dict, key: str):
    r1, r2 = frame_obj.get("r1", 0), frame_obj.get("r2", 1)
    a1, a2 = frame_obj.get("a1", 0), frame_obj.get("a2", 360)
    if key == "r1":
        return r1 + min(0.05, (r2 - r1) / 4)
    if key == "r2":
        return r2 - min(0.05, (r2 - r1) / 4)
    if key == "a1":
        return a1 + min(5, (a2 - a1) / 4)
    return a2 - min(5, (a2 - a1) / 4)


def _set_path(obj: dict, dotted: str, value) -> None:
    parts = dotted.split(".")
    for part in parts[:-1]:
        obj = obj[part]
    obj[parts[-1]] = value


def _injectable(path: AttributePath) -> bool:
    leaf_field = path.attribute.rsplit(".", 1)[-1]
    return leaf_field not in _UNSAFE_LEAF_FIELDS


def inject_mismatches(
    gt: DslDocument, count: int, seed: int
) -> tuple[DslDocument, list[AttributePath]]:
    """Flip ``count`` applicable attributes, returning the doc and ledger."""
    rng = random.Random(seed)
    candidates = [p for p in applicable_attributes(gt) if _injectable(p)]
    rng.shuffle(candidates)
    chosen = candidates[: min(count, len(candidates))]

    doc_obj = document_to_jsonable(gt)

    def container_obj(root: dict, cid: str) -> Optional[dict]:
        if root.get("container_id") == cid:
            return root
        for child in root.get("components") or []:
            found = container_obj(child, cid)
            if found is not None:
                return found
        return None

    injected: list[AttributePath] = []
    for path in chosen:
        if path.attribute.startswith("coordinate_system."):
            target = container_obj(doc_obj, path.container)
            key = path.attribute.split(".")[1]
            target["coordinate_system"][key] = _flip_frame_value(
                target["coordinate_system"], key
            )
        else:
            entry = doc_obj["data_specification"][path.container]
            old = _lookup(entry, path.attribute)
            leaf_field = path.attribute.rsplit(".", 1)[-1]
            new = _flip_value(leaf_field, old, rng)
            if new is None or new == old:
                continue
            _set_path(entry, path.attribute, new)
        injected.append(path)
    mutated = parse_document(json.dumps(doc_obj))
    return mutated, injected
