"""Rule-based mock data generation and user data replacement.

Real values are unrecoverable from pixels, so rendering runs on mocked
tables whose shape mirrors each container's data structure.  Generation is
deterministic: every container draws from its own RNG stream derived from
``hash(seed, container_id)``, so editing one container never perturbs
another's data.  Users can later replace whole tables or individual
attribute columns.
"""

from __future__ import annotations

import csv
import hashlib
import io as _io
import json
import random
import re
from dataclasses import dataclass, replace
from typing import Mapping, Optional, Sequence

from .model import (
    DIMENSIONS,
    STYLE_ATTRS,
    DataSpecification,
    DataStructure,
    DimensionCount,
    DslDocument,
    MarkSpecification,
    NonLayoutAttribute,
    is_color,
)
from . import edit

MOCK_VALUE_RANGE = (0.2, 1.0)

_REF_RE = re.compile(r"^([0-9a-z-]+?)(?:\[(\d+)\])?$")


class DataGenError(Exception):
    pass


@dataclass(frozen=True)
class MockDatum:
    group_index: int
    item_index: int
    value: float
    extra: Mapping[str, object]


@dataclass(frozen=True)
class MockTable:
    groups: tuple[tuple[MockDatum, ...], ...]
    grouped: bool

    @property
    def rows(self) -> list[MockDatum]:
        return [d for g in self.groups for d in g]

    def group_sizes(self) -> list[int]:
        return [len(g) for g in self.groups]

    def to_jsonable(self) -> list[dict]:
        out = []
        for datum in self.rows:
            row = {
                "group_index": datum.group_index,
                "item_index": datum.item_index,
                "value": datum.value,
            }
            row.update(datum.extra)
            out.append(row)
        return out


def table_to_jsonable(table: MockTable) -> dict:
    """Lossless JSON form for persistence (see also ``MockTable.to_jsonable``
    for the flat exemplar rows users copy)."""
    return {
        "grouped": table.grouped,
        "groups": [
            [
                {
                    "group_index": d.group_index,
                    "item_index": d.item_index,
                    "value": d.value,
                    "extra": {
                        k: list(v) if isinstance(v, tuple) else v
                        for k, v in d.extra.items()
                    },
                }
                for d in group
            ]
            for group in table.groups
        ],
    }


def table_from_jsonable(obj: dict) -> MockTable:
    groups = []
    for group in obj["groups"]:
        data = []
        for d in group:
            extra = dict(d.get("extra") or {})
            for key in ("source", "target"):
                if key in extra and isinstance(extra[key], list):
                    cid, idx = extra[key]
                    extra[key] = (cid, idx)
            data.append(
                MockDatum(
                    group_index=d["group_index"],
                    item_index=d["item_index"],
                    value=d["value"],
                    extra=extra,
                )
            )
        groups.append(tuple(data))
    return MockTable(groups=tuple(groups), grouped=obj["grouped"])


def container_rng(seed: int, container_id: str) -> random.Random:
    digest = hashlib.sha256(f"{seed}:{container_id}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


# ---------------------------------------------------------------------------
# Attribute resolution


def _hex_to_rgb(color: str) -> tuple[int, int, int]:
    return tuple(int(color[i : i + 2], 16) for i in (1, 3, 5))  # type: ignore[return-value]


def _rgb_to_hex(rgb: Sequence[float]) -> str:
    clamped = [max(0, min(255, int(c + 0.5))) for c in rgb]
    return "#{:02x}{:02x}{:02x}".format(*clamped)


def resolve_attribute(
    attr: NonLayoutAttribute,
    group_index: int,
    item_index: int,
    value: float,
    rng: random.Random,
):
    """Resolve one non-layout attribute for one datum."""
    if attr.scale == "fix":
        return attr.fix
    if attr.scale == "linear":
        lo, hi = attr.linear
        if is_color(lo) and is_color(hi):
            lo_rgb, hi_rgb = _hex_to_rgb(lo), _hex_to_rgb(hi)
            return _rgb_to_hex(
                [l + value * (h - l) for l, h in zip(lo_rgb, hi_rgb)]
            )
        return lo + value * (hi - lo)
    if attr.scale == "ordinal_primary":
        return attr.options[group_index % len(attr.options)]
    if attr.scale == "ordinal_secondary":
        return attr.options[item_index % len(attr.options)]
    # categorical: re-rolled per item for visible variety
    return attr.options[rng.randrange(len(attr.options))]


# ---------------------------------------------------------------------------
# Table generation


def _flexible_dims(spec: DataSpecification) -> list[str]:
    dims = []
    for d in DIMENSIONS:
        dim_spec = spec.layout_specification.dimensions.get(d)
        if dim_spec is not None and not dim_spec.stacking and dim_spec.anchor_distribute == "flexible":
            dims.append(d)
    return dims


def generate_table(spec: DataSpecification, seed: int, container_id: str = "0") -> MockTable:
    """Mock one container's table; shape mirrors its data structure."""
    structure = spec.data_structure
    mark = spec.mark_specification
    group_sizes = structure.group_sizes()
    if mark is not None and mark.link_mark_type == "node_link":
        group_sizes = [mark.link_number if mark.link_number is not None else 0]
        if group_sizes[0] == 0:
            return MockTable(groups=((),), grouped=False)

    rng = container_rng(seed, container_id)
    lo, hi = MOCK_VALUE_RANGE
    flexible = _flexible_dims(spec)
    styles = spec.styles()
    grouped = structure.data_type != "1D_list" and (
        mark is None or mark.link_mark_type != "node_link"
    )

    groups = []
    for g, size in enumerate(group_sizes):
        data = []
        for k in range(size):
            value = rng.uniform(lo, hi)
            extra: dict[str, object] = {}
            for d in flexible:
                extra[d] = rng.uniform(lo, hi)
            for name in STYLE_ATTRS:
                if name in styles:
                    extra[name] = resolve_attribute(
                        styles[name],
                        group_index=g if grouped else k,
                        item_index=k,
                        value=value,
                        rng=rng,
                    )
            data.append(
                MockDatum(
                    group_index=g if grouped else k,
                    item_index=k,
                    value=value,
                    extra=extra,
                )
            )
        groups.append(tuple(data))
    return MockTable(groups=tuple(groups), grouped=grouped)


def generate_tables(doc: DslDocument, seed: int) -> dict[str, MockTable]:
    return {
        cid: generate_table(doc.data_specifications[cid], seed, cid)
        for cid in sorted(doc.data_specifications)
    }


# ---------------------------------------------------------------------------
# Link assignments


def parse_endpoint_ref(ref: str) -> tuple[str, Optional[int]]:
    """Parse ``"0-4"`` or ``"0-a[2]"`` into (container id, index)."""
    match = _REF_RE.match(ref.strip())
    if not match:
        raise DataGenError(f"malformed endpoint reference {ref!r}")
    cid, idx = match.group(1), match.group(2)
    return cid, (int(idx) if idx is not None else None)


def generate_link_assignments(
    mark: MarkSpecification,
    layout,
    universe: Mapping[str, int],
    seed: int,
    container_id: str = "0",
) -> list[tuple[tuple[str, int], tuple[str, int]]]:
    """Draw ``link_number`` endpoint pairs from the source/target universe.

    ``universe`` maps container id to its endpoint count (marks or template
    instances).  With distinct source and target lists pairs are drawn from
    their product; within a single list self-loops are excluded.
    """
    if mark.link_mark_type != "node_link":
        raise DataGenError("link assignments only apply to node_link marks")
    if mark.link_number is None:
        raise DataGenError("node_link marks need a link_number")
    if mark.link_number == 0:
        return []

    def refs(ids) -> list[tuple[str, int]]:
        out = []
        for cid in ids or ():
            count = universe.get(cid, 0)
            out.extend((cid, i) for i in range(count))
        return out

    source_ids = list(layout.source or ())
    target_ids = list(layout.target or ()) or source_ids
    sources = refs(source_ids)
    targets = refs(target_ids)
    if not sources or not targets:
        raise DataGenError("link marks need a non-empty source/target universe")

    pairs = [(s, t) for s in sources for t in targets if s != t]
    if not pairs:
        raise DataGenError("no valid endpoint pairs (self-loops excluded)")
    rng = container_rng(seed, f"{container_id}:links")
    if mark.link_number <= len(pairs):
        return rng.sample(pairs, mark.link_number)
    return [pairs[rng.randrange(len(pairs))] for _ in range(mark.link_number)]


# ---------------------------------------------------------------------------
# User data


def parse_user_table(text: str) -> list[dict]:
    """Decode a user table: a JSON array of row objects, or CSV with header."""
    stripped = text.lstrip()
    if stripped.startswith("["):
        rows = json.loads(text)
        if not isinstance(rows, list) or not all(isinstance(r, dict) for r in rows):
            raise DataGenError("expected a JSON array of row objects")
        return rows
    reader = csv.DictReader(_io.StringIO(text))
    rows = []
    for raw in reader:
        row: dict = {}
        for key, value in raw.items():
            if key is None or value is None or value == "":
                continue
            key = key.strip()
            value = value.strip()
            try:
                row[key] = int(value) if re.match(r"^-?\d+$", value) else float(value)
            except ValueError:
                row[key] = value
        rows.append(row)
    if not rows:
        raise DataGenError("the table is empty")
    return rows


_NUMERIC_LAYOUT_COLUMNS = ("value",) + DIMENSIONS


def _normalize_column(values: list[float]) -> list[float]:
    """Min-max normalize into [0, 1]; values already inside pass through."""
    if all(0.0 <= v <= 1.0 for v in values):
        return list(values)
    lo, hi = min(values), max(values)
    if hi == lo:
        return [0.5] * len(values)
    return [(v - lo) / (hi - lo) for v in values]


def _group_rows(rows: list[dict], grouped_structure: bool) -> list[list[dict]]:
    has_group = any("group_index" in r for r in rows)
    if not has_group:
        if grouped_structure:
            raise DataGenError("grouped containers need a group_index column")
        return [list(rows)]
    groups: dict[int, list[dict]] = {}
    for row in rows:
        g = row.get("group_index", 0)
        if not isinstance(g, int) or g < 0:
            raise DataGenError(f"bad group_index {g!r}")
        groups.setdefault(g, []).append(row)
    return [groups[g] for g in sorted(groups)]


def _updated_structure(structure: DataStructure, sizes: list[int], grouped: bool) -> DataStructure:
    if not grouped or structure.data_type == "1D_list":
        return replace(
            structure, primary=replace(structure.primary, number=sizes[0])
        )
    primary = replace(structure.primary, number=len(sizes))
    if structure.data_type == "2D_matrix":
        if len(set(sizes)) != 1:
            raise DataGenError("2D_matrix containers need equal group sizes")
        secondary = replace(structure.secondary, number=sizes[0])
    else:
        secondary = replace(structure.secondary, number=tuple(sizes))
    return replace(structure, primary=primary, secondary=secondary)


def apply_user_data(
    doc: DslDocument,
    container_id: str,
    rows: list[dict],
    seed: int = 0,
    current: Optional[MockTable] = None,
) -> tuple[DslDocument, MockTable]:
    """Replace a container's mocked table (fully or per attribute column).

    Numeric layout columns are min-max normalized into [0, 1] unless already
    normalized; style columns are taken verbatim.  The data structure (and a
    node_link mark's link_number) follows the new row count.
    """
    spec = doc.spec_for(container_id)
    if not rows:
        raise DataGenError("the table is empty")
    known = set(_NUMERIC_LAYOUT_COLUMNS) | set(STYLE_ATTRS) | {
        "group_index",
        "item_index",
        "source",
        "target",
    }
    for row in rows:
        unknown = set(row) - known
        if unknown:
            raise DataGenError(f"unknown column(s): {', '.join(sorted(unknown))}")

    mark = spec.mark_specification
    is_node_link = mark is not None and mark.link_mark_type == "node_link"
    grouped_structure = spec.data_structure.data_type != "1D_list" and not is_node_link
    groups = _group_rows(rows, grouped_structure)
    if not grouped_structure and len(groups) > 1:
        raise DataGenError("this container takes a flat table, not grouped rows")
    sizes = [len(g) for g in groups]

    new_structure = _updated_structure(spec.data_structure, sizes, grouped_structure)
    new_spec = replace(spec, data_structure=new_structure)
    if is_node_link:
        new_spec = replace(
            new_spec, mark_specification=replace(mark, link_number=sum(sizes))
        )
    new_doc = edit.with_spec(doc, container_id, new_spec)

    base = current
    if base is None or base.group_sizes() != sizes:
        base = generate_table(new_spec, seed, container_id)

    # Column-wise normalization over the whole table.
    normalized: dict[str, list[float]] = {}
    for col in _NUMERIC_LAYOUT_COLUMNS:
        raw = [row[col] for group in groups for row in group if col in row]
        if raw:
            if len(raw) != sum(sizes):
                raise DataGenError(f"column {col!r} must be present on every row or none")
            if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in raw):
                raise DataGenError(f"column {col!r} must be numeric")
            normalized[col] = _normalize_column([float(v) for v in raw])

    flat_index = 0
    new_groups = []
    for g, group in enumerate(groups):
        data = []
        for k, row in enumerate(group):
            datum = base.groups[g][k]
            extra = dict(datum.extra)
            value = datum.value
            if "value" in normalized:
                value = normalized["value"][flat_index]
            for d in DIMENSIONS:
                if d in normalized:
                    extra[d] = normalized[d][flat_index]
            for name in STYLE_ATTRS:
                if name in row:
                    if name in ("fill", "stroke") and not is_color(row[name]):
                        raise DataGenError(f"column {name!r} needs #RRGGBB colors")
                    extra[name] = row[name]
            if "source" in row or "target" in row:
                if not ("source" in row and "target" in row):
                    raise DataGenError("link rows need both source and target")
                if not is_node_link:
                    raise DataGenError("source/target columns only apply to node_link marks")
                src = parse_endpoint_ref(str(row["source"]))
                tgt = parse_endpoint_ref(str(row["target"]))
                for cid, _ in (src, tgt):
                    if doc.root.find(cid) is None:
                        raise DataGenError(f"endpoint container {cid!r} does not resolve")
                extra["source"] = src
                extra["target"] = tgt
            data.append(replace(datum, value=value, extra=extra))
            flat_index += 1
        new_groups.append(tuple(data))
    return new_doc, MockTable(groups=tuple(new_groups), grouped=base.grouped)
