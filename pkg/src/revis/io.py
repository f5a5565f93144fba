"""Canonical JSON serialization of DSL documents.

The on-disk format (extension ``.revis.json``) is a single container tree
whose root additionally carries ``data_specification``: a map from container
id to that container's data rules.  Parsing is strict: unknown fields and
out-of-vocabulary enum values are rejected so that structured-output
pipeline errors surface instead of being silently dropped.  A few spelling
variants that structured-output models commonly emit (``1D_LIST``,
``node_link_type``, ``Cartesian``) are normalized to the canonical form.
"""

from __future__ import annotations

import json
from typing import Mapping, Optional

from .model import (
    ANCHOR_DISTRIBUTES,
    ANCHORS,
    DATA_TYPES,
    DIMENSIONS,
    LINE_TYPES,
    LINK_MARK_TYPES,
    MARK_PASSTHROUGH_FIELDS,
    MARK_TYPES,
    SCALES,
    STACK_DIRECTIONS,
    STYLE_ATTRS,
    CartesianFrame,
    ContainerNode,
    DataSpecification,
    DataStructure,
    DimensionCount,
    DslDocument,
    DslParseError,
    Frame,
    LayoutDimensionSpec,
    LayoutSpecification,
    MarkSpecification,
    NonLayoutAttribute,
    PolarFrame,
    frame_problems,
    is_color,
    is_valid_id,
    parent_id,
)

FILE_EXTENSION = ".revis.json"

_CONTAINER_FIELDS = {
    "container_id",
    "description",
    "coordinate",
    "coordinate_system",
    "if_leaf",
    "mark_type",
    "components",
    "data_specification",
}
_CARTESIAN_KEYS = ("x1", "y1", "x2", "y2")
_POLAR_KEYS = ("cx", "cy", "r1", "r2", "a1", "a2")
_DIM_FIELDS = {
    "stacking",
    "stacking_direction",
    "subdividing",
    "2d_flatten",
    "size_uniform",
    "size_range",
    "anchor",
    "anchor_distribute",
    "anchor_start",
    "anchor_interval",
}
_DATA_TYPE_ALIASES = {t.lower(): t for t in DATA_TYPES}
_LINK_TYPE_ALIASES = {"node_link_type": "node_link"}


# ---------------------------------------------------------------------------
# Decoding helpers


def _expect_object(value, path: str) -> dict:
    if not isinstance(value, dict):
        raise DslParseError(path, f"expected an object, got {type(value).__name__}")
    return value


def _reject_unknown(obj: dict, allowed, path: str) -> None:
    unknown = set(obj) - set(allowed)
    if unknown:
        raise DslParseError(path, f"unknown field(s): {', '.join(sorted(unknown))}")


def _get_number(obj: dict, key: str, path: str, required=True) -> Optional[float]:
    if key not in obj or obj[key] is None:
        if required:
            raise DslParseError(path, f"missing required field {key!r}")
        return None
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DslParseError(f"{path}.{key}", "expected a number")
    return float(value)


def _get_bool(obj: dict, key: str, path: str, default=None) -> bool:
    if key not in obj or obj[key] is None:
        if default is None:
            raise DslParseError(path, f"missing required field {key!r}")
        return default
    value = obj[key]
    if not isinstance(value, bool):
        raise DslParseError(f"{path}.{key}", "expected a boolean")
    return value


def _get_enum(obj: dict, key: str, vocab, path: str, aliases=None, default=None):
    if key not in obj or obj[key] is None:
        if default is not None:
            return default
        raise DslParseError(path, f"missing required field {key!r}")
    value = obj[key]
    if not isinstance(value, str):
        raise DslParseError(f"{path}.{key}", "expected a string")
    if aliases and value in aliases:
        value = aliases[value]
    if value not in vocab:
        raise DslParseError(
            f"{path}.{key}", f"value {value!r} is not one of {'/'.join(vocab)}"
        )
    return value


def _parse_frame(obj: dict, coordinate: str, path: str) -> Frame:
    system = _expect_object(obj.get("coordinate_system"), f"{path}.coordinate_system")
    spath = f"{path}.coordinate_system"
    if coordinate == "cartesian":
        _reject_unknown(system, _CARTESIAN_KEYS, spath)
        frame: Frame = CartesianFrame(
            *[_get_number(system, k, spath) for k in _CARTESIAN_KEYS]
        )
    else:
        _reject_unknown(system, _POLAR_KEYS, spath)
        frame = PolarFrame(*[_get_number(system, k, spath) for k in _POLAR_KEYS])
    for problem in frame_problems(frame):
        raise DslParseError(spath, problem)
    return frame


def _parse_container(
    obj, path: str, parent: Optional[ContainerNode], specs_out: Optional[dict]
) -> ContainerNode:
    obj = _expect_object(obj, path)
    _reject_unknown(obj, _CONTAINER_FIELDS, path)

    container_id = obj.get("container_id")
    if not isinstance(container_id, str) or not is_valid_id(container_id):
        raise DslParseError(f"{path}.container_id", f"invalid container id: {container_id!r}")
    if parent is None:
        if container_id != "0":
            raise DslParseError(f"{path}.container_id", "the root container id must be '0'")
    elif parent_id(container_id) != parent.id:
        raise DslParseError(
            f"{path}.container_id",
            f"{container_id!r} is not a direct child id of {parent.id!r}",
        )

    description = obj.get("description", "")
    if description is None:
        description = ""
    if not isinstance(description, str):
        raise DslParseError(f"{path}.description", "expected a string")

    coordinate = obj.get("coordinate")
    if not isinstance(coordinate, str) or coordinate.lower() not in ("cartesian", "polar"):
        raise DslParseError(f"{path}.coordinate", "expected 'cartesian' or 'polar'")
    coordinate = coordinate.lower()
    if parent is not None and parent.frame.kind == "polar" and coordinate == "cartesian":
        raise DslParseError(
            f"{path}.coordinate",
            "cartesian containers are not allowed inside a polar container",
        )
    frame = _parse_frame(obj, coordinate, path)

    is_leaf = _get_bool(obj, "if_leaf", path)

    mark_type = None
    if obj.get("mark_type") is not None:
        mark_type = _get_enum(obj, "mark_type", MARK_TYPES, path)
        if not is_leaf:
            raise DslParseError(f"{path}.mark_type", "only leaf containers carry a mark_type")

    if "data_specification" in obj and obj["data_specification"] is not None:
        if specs_out is None or parent is not None:
            raise DslParseError(
                f"{path}.data_specification",
                "only the root container carries data_specification",
            )

    node = ContainerNode(
        id=container_id,
        frame=frame,
        description=description,
        is_leaf=is_leaf,
        mark_type=mark_type,
    )

    components = obj.get("components")
    children: list[ContainerNode] = []
    if components is not None:
        if not isinstance(components, list):
            raise DslParseError(f"{path}.components", "expected a list or null")
        if is_leaf and components:
            raise DslParseError(f"{path}.components", "leaf containers cannot have components")
        seen = set()
        for i, child_obj in enumerate(components):
            child = _parse_container(child_obj, f"{path}.components[{i}]", node, None)
            if child.id in seen:
                raise DslParseError(
                    f"{path}.components[{i}]", f"duplicate child id {child.id!r}"
                )
            seen.add(child.id)
            children.append(child)
    node = ContainerNode(
        id=container_id,
        frame=frame,
        description=description,
        is_leaf=is_leaf,
        mark_type=mark_type,
        children=tuple(children),
    )

    if specs_out is not None and parent is None:
        raw_specs = obj.get("data_specification") or {}
        raw_specs = _expect_object(raw_specs, f"{path}.data_specification")
        for cid in raw_specs:
            entry_path = f"{path}.data_specification[{cid!r}]"
            if not is_valid_id(cid):
                raise DslParseError(entry_path, f"invalid container id: {cid!r}")
            specs_out[cid] = parse_spec_entry(raw_specs[cid], entry_path)
    return node


def _parse_dimension_names(value, path: str) -> tuple[str, ...]:
    if isinstance(value, str):
        value = [value]
    if not isinstance(value, list) or not value or len(value) > 2:
        raise DslParseError(path, "expected one dimension or a pair of dimensions")
    dims = []
    for d in value:
        if d not in DIMENSIONS:
            raise DslParseError(path, f"unknown dimension {d!r}")
        dims.append(d)
    if len(dims) == 2 and dims[0] == dims[1]:
        raise DslParseError(path, "dimension pair must name two distinct dimensions")
    return tuple(dims)


def _parse_dimension_count(obj, path: str, allow_array: bool) -> DimensionCount:
    obj = _expect_object(obj, path)
    _reject_unknown(obj, ("number", "dimension", "explanation"), path)
    number = obj.get("number")
    if isinstance(number, bool):
        raise DslParseError(f"{path}.number", "expected an integer")
    if isinstance(number, float) and number.is_integer():
        number = int(number)
    if isinstance(number, int):
        parsed_number: object = number
    elif isinstance(number, list) and allow_array:
        if not number or not all(
            isinstance(n, int) and not isinstance(n, bool) for n in number
        ):
            raise DslParseError(f"{path}.number", "expected a non-empty integer array")
        parsed_number = tuple(number)
    else:
        kind = "an integer or integer array" if allow_array else "an integer"
        raise DslParseError(f"{path}.number", f"expected {kind}")
    dims = _parse_dimension_names(obj.get("dimension"), f"{path}.dimension")
    explanation = obj.get("explanation", "")
    if not isinstance(explanation, str):
        raise DslParseError(f"{path}.explanation", "expected a string")
    return DimensionCount(number=parsed_number, dimension=dims, explanation=explanation)


def _parse_data_structure(obj, path: str) -> DataStructure:
    obj = _expect_object(obj, path)
    _reject_unknown(obj, ("data_type", "data_size"), path)
    raw = obj.get("data_type")
    if not isinstance(raw, str) or raw.lower() not in _DATA_TYPE_ALIASES:
        raise DslParseError(
            f"{path}.data_type", f"value {raw!r} is not one of {'/'.join(DATA_TYPES)}"
        )
    data_type = _DATA_TYPE_ALIASES[raw.lower()]
    size = _expect_object(obj.get("data_size"), f"{path}.data_size")
    _reject_unknown(size, ("primary", "secondary"), f"{path}.data_size")
    primary = _parse_dimension_count(
        size.get("primary"), f"{path}.data_size.primary", allow_array=False
    )
    secondary = None
    if size.get("secondary") is not None:
        secondary = _parse_dimension_count(
            size["secondary"], f"{path}.data_size.secondary", allow_array=True
        )
    return DataStructure(data_type=data_type, primary=primary, secondary=secondary)


def _parse_mark_specification(obj, path: str) -> MarkSpecification:
    obj = _expect_object(obj, path)
    allowed = {
        "mark_type",
        "is_link_mark",
        "link_mark_type",
        "group_link_direction",
        "link_number",
        "is_width_encoded_data",
        *MARK_PASSTHROUGH_FIELDS,
    }
    _reject_unknown(obj, allowed, path)
    mark_type = _get_enum(obj, "mark_type", MARK_TYPES, path)
    link_mark_type = _get_enum(
        obj, "link_mark_type", LINK_MARK_TYPES, path,
        aliases=_LINK_TYPE_ALIASES, default="no_link",
    )
    is_link_mark = _get_bool(obj, "is_link_mark", path, default=link_mark_type != "no_link")
    direction = None
    if obj.get("group_link_direction") is not None:
        direction = _get_enum(obj, "group_link_direction", DIMENSIONS, path)
    link_number = None
    if obj.get("link_number") is not None:
        n = obj["link_number"]
        if isinstance(n, bool) or not isinstance(n, int) or n < 0:
            raise DslParseError(f"{path}.link_number", "expected a non-negative integer")
        link_number = n
    width_encoded = _get_bool(obj, "is_width_encoded_data", path, default=False)
    extras = {k: obj[k] for k in MARK_PASSTHROUGH_FIELDS if k in obj}
    return MarkSpecification(
        mark_type=mark_type,
        is_link_mark=is_link_mark,
        link_mark_type=link_mark_type,
        group_link_direction=direction,
        link_number=link_number,
        is_width_encoded_data=width_encoded,
        extras=extras,
    )


def _parse_dim_spec(obj, path: str) -> LayoutDimensionSpec:
    obj = _expect_object(obj, path)
    _reject_unknown(obj, _DIM_FIELDS, path)
    stacking = _get_bool(obj, "stacking", path)
    direction = _get_enum(
        obj, "stacking_direction", STACK_DIRECTIONS, path, default="min"
    )
    subdividing = _get_bool(obj, "subdividing", path, default=False)
    flatten = _get_bool(obj, "2d_flatten", path, default=False)
    size_uniform = _get_bool(obj, "size_uniform", path)
    size_range = obj.get("size_range")
    if (
        not isinstance(size_range, list)
        or len(size_range) != 2
        or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in size_range)
    ):
        raise DslParseError(f"{path}.size_range", "expected a [min, max] number pair")
    anchor = _get_enum(
        obj, "anchor", ANCHORS, path,
        default="stacking_decided" if stacking else None,
    )
    distribute = _get_enum(obj, "anchor_distribute", ANCHOR_DISTRIBUTES, path)
    start = _get_number(obj, "anchor_start", path, required=False)
    interval = _get_number(obj, "anchor_interval", path, required=False)
    if distribute == "flexible":
        start = interval = None
    elif distribute == "fixed_value":
        interval = None
    return LayoutDimensionSpec(
        stacking=stacking,
        stacking_direction=direction,
        subdividing=subdividing,
        flatten_2d=flatten,
        size_uniform=size_uniform,
        size_range=(float(size_range[0]), float(size_range[1])),
        anchor=anchor,
        anchor_distribute=distribute,
        anchor_start=start,
        anchor_interval=interval,
    )


def _parse_id_list(value, path: str) -> tuple[str, ...]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise DslParseError(path, "expected a list of container ids")
    for v in value:
        if not is_valid_id(v):
            raise DslParseError(path, f"invalid container id: {v!r}")
    return tuple(value)


def _parse_layout_specification(obj, path: str) -> LayoutSpecification:
    obj = _expect_object(obj, path)
    allowed = set(DIMENSIONS) | {"source", "target"}
    _reject_unknown(obj, allowed, path)
    dims = {}
    for d in DIMENSIONS:
        if obj.get(d) is not None:
            dims[d] = _parse_dim_spec(obj[d], f"{path}.{d}")
    source = target = None
    if obj.get("source") is not None:
        source = _parse_id_list(obj["source"], f"{path}.source")
    if obj.get("target") is not None:
        target = _parse_id_list(obj["target"], f"{path}.target")
    return LayoutSpecification(dimensions=dims, source=source, target=target)


def _parse_attribute(name: str, value, path: str) -> NonLayoutAttribute:
    if name == "line_type" and isinstance(value, str):
        # Structured-output responses emit line_type as a bare string.
        if value not in LINE_TYPES:
            raise DslParseError(path, f"value {value!r} is not one of {'/'.join(LINE_TYPES)}")
        return NonLayoutAttribute(scale="fix", fix=value)
    obj = _expect_object(value, path)
    _reject_unknown(obj, ("scale", "fix", "linear", "options"), path)
    scale = _get_enum(obj, "scale", SCALES, path)

    def scalar(v, p):
        if isinstance(v, str):
            if name in ("fill", "stroke"):
                if not is_color(v):
                    raise DslParseError(p, f"expected a #RRGGBB color, got {v!r}")
                return v.lower()
            if name == "line_type":
                if v not in LINE_TYPES:
                    raise DslParseError(p, f"expected one of {'/'.join(LINE_TYPES)}")
                return v
            raise DslParseError(p, f"unexpected string value for {name!r}")
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise DslParseError(p, "expected a number or color string")
        return float(v) if isinstance(v, float) else v

    fix = linear = options = None
    if obj.get("fix") is not None:
        fix = scalar(obj["fix"], f"{path}.fix")
    if obj.get("linear") is not None:
        pair = obj["linear"]
        if not isinstance(pair, list) or len(pair) != 2:
            raise DslParseError(f"{path}.linear", "expected a [lo, hi] pair")
        linear = (scalar(pair[0], f"{path}.linear[0]"), scalar(pair[1], f"{path}.linear[1]"))
    if obj.get("options") is not None:
        opts = obj["options"]
        if not isinstance(opts, list) or not opts:
            raise DslParseError(f"{path}.options", "expected a non-empty list")
        options = tuple(scalar(o, f"{path}.options[{i}]") for i, o in enumerate(opts))
    return NonLayoutAttribute(scale=scale, fix=fix, linear=linear, options=options)


def parse_spec_entry(obj, path: str) -> DataSpecification:
    """Parse one data-specification entry (leaf or template shape)."""
    obj = _expect_object(obj, path)
    allowed = (
        "mark_specification",
        "data_structure",
        "layout_specification",
        "non_layout_specification",
    )
    _reject_unknown(obj, allowed, path)
    if "data_structure" not in obj:
        raise DslParseError(path, "missing required field 'data_structure'")
    if "layout_specification" not in obj:
        raise DslParseError(path, "missing required field 'layout_specification'")
    structure = _parse_data_structure(obj["data_structure"], f"{path}.data_structure")
    layout = _parse_layout_specification(
        obj["layout_specification"], f"{path}.layout_specification"
    )
    mark = None
    if obj.get("mark_specification") is not None:
        mark = _parse_mark_specification(
            obj["mark_specification"], f"{path}.mark_specification"
        )
    styles = None
    if obj.get("non_layout_specification") is not None:
        raw = _expect_object(
            obj["non_layout_specification"], f"{path}.non_layout_specification"
        )
        _reject_unknown(raw, STYLE_ATTRS, f"{path}.non_layout_specification")
        styles = {}
        for name in STYLE_ATTRS:
            if name in raw and raw[name] is not None:
                styles[name] = _parse_attribute(
                    name, raw[name], f"{path}.non_layout_specification.{name}"
                )
    return DataSpecification(
        data_structure=structure,
        layout_specification=layout,
        mark_specification=mark,
        non_layout_specification=styles,
    )


def parse_frame(coordinate: str, system: dict) -> Frame:
    """Parse a frame from its JSON form (used by edit-facing endpoints)."""
    if not isinstance(coordinate, str) or coordinate.lower() not in ("cartesian", "polar"):
        raise DslParseError("$.coordinate", "expected 'cartesian' or 'polar'")
    return _parse_frame({"coordinate_system": system}, coordinate.lower(), "$")


def parse_document(text: str) -> DslDocument:
    """Parse the canonical textual form into a document.

    Raises :class:`DslParseError` pinpointing the offending path.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DslParseError("$", f"invalid JSON: {exc}") from exc
    specs: dict = {}
    root = _parse_container(obj, "$", None, specs)
    return DslDocument(root=root, data_specifications=specs)


def load_document(path) -> DslDocument:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_document(fh.read())


# ---------------------------------------------------------------------------
# Encoding


def _num(x):
    if isinstance(x, bool):
        return x
    if isinstance(x, float):
        if x.is_integer() and abs(x) < 2**53:
            return int(x)
        return x
    return x


def frame_to_jsonable(frame: Frame) -> dict:
    if frame.kind == "cartesian":
        return {k: _num(getattr(frame, k)) for k in _CARTESIAN_KEYS}
    return {k: _num(getattr(frame, k)) for k in _POLAR_KEYS}


def _dimension_count_to_jsonable(count: DimensionCount) -> dict:
    out: dict = {}
    if isinstance(count.number, tuple):
        out["number"] = [int(n) for n in count.number]
    else:
        out["number"] = int(count.number)
    out["dimension"] = count.dimension[0] if len(count.dimension) == 1 else list(count.dimension)
    if count.explanation:
        out["explanation"] = count.explanation
    return out


def _dim_spec_to_jsonable(spec: LayoutDimensionSpec) -> dict:
    out = {
        "stacking": spec.stacking,
        "stacking_direction": spec.stacking_direction,
        "subdividing": spec.subdividing,
        "2d_flatten": spec.flatten_2d,
        "size_uniform": spec.size_uniform,
        "size_range": [_num(spec.size_range[0]), _num(spec.size_range[1])],
        "anchor": spec.anchor,
        "anchor_distribute": spec.anchor_distribute,
    }
    if spec.anchor_distribute in ("fixed_value", "uniform_interval") and spec.anchor_start is not None:
        out["anchor_start"] = _num(spec.anchor_start)
    if spec.anchor_distribute == "uniform_interval" and spec.anchor_interval is not None:
        out["anchor_interval"] = _num(spec.anchor_interval)
    return out


def spec_entry_to_jsonable(spec: DataSpecification) -> dict:
    out: dict = {}
    if spec.mark_specification is not None:
        mark = spec.mark_specification
        mark_out: dict = {
            "mark_type": mark.mark_type,
            "is_link_mark": mark.is_link_mark,
            "link_mark_type": mark.link_mark_type,
        }
        if mark.group_link_direction is not None:
            mark_out["group_link_direction"] = mark.group_link_direction
        if mark.link_number is not None:
            mark_out["link_number"] = mark.link_number
        mark_out["is_width_encoded_data"] = mark.is_width_encoded_data
        for key in MARK_PASSTHROUGH_FIELDS:
            if key in mark.extras:
                mark_out[key] = mark.extras[key]
        out["mark_specification"] = mark_out

    structure = spec.data_structure
    size: dict = {"primary": _dimension_count_to_jsonable(structure.primary)}
    if structure.secondary is not None:
        size["secondary"] = _dimension_count_to_jsonable(structure.secondary)
    out["data_structure"] = {"data_type": structure.data_type, "data_size": size}

    layout = spec.layout_specification
    layout_out: dict = {}
    for d in DIMENSIONS:
        if d in layout.dimensions:
            layout_out[d] = _dim_spec_to_jsonable(layout.dimensions[d])
    if layout.source is not None:
        layout_out["source"] = list(layout.source)
    if layout.target is not None:
        layout_out["target"] = list(layout.target)
    out["layout_specification"] = layout_out

    if spec.non_layout_specification is not None:
        styles_out = {}
        for name in STYLE_ATTRS:
            if name in spec.non_layout_specification:
                attr = spec.non_layout_specification[name]
                attr_out: dict = {"scale": attr.scale}
                if attr.fix is not None:
                    attr_out["fix"] = _num(attr.fix)
                if attr.linear is not None:
                    attr_out["linear"] = [_num(attr.linear[0]), _num(attr.linear[1])]
                if attr.options is not None:
                    attr_out["options"] = [_num(o) for o in attr.options]
                styles_out[name] = attr_out
        out["non_layout_specification"] = styles_out
    return out


def container_to_jsonable(node: ContainerNode) -> dict:
    out: dict = {
        "container_id": node.id,
        "description": node.description,
        "coordinate": node.frame.kind,
        "coordinate_system": frame_to_jsonable(node.frame),
        "if_leaf": node.is_leaf,
    }
    if node.mark_type is not None:
        out["mark_type"] = node.mark_type
    if not node.is_leaf:
        out["components"] = [container_to_jsonable(c) for c in node.children]
    return out


def document_to_jsonable(doc: DslDocument) -> dict:
    from .model import id_sort_key

    out = container_to_jsonable(doc.root)
    out["data_specification"] = {
        cid: spec_entry_to_jsonable(doc.data_specifications[cid])
        for cid in sorted(doc.data_specifications, key=id_sort_key)
    }
    return out


def serialize(doc: DslDocument) -> str:
    """Canonical text form: schema-ordered keys, trailing-zero-free numbers."""
    return json.dumps(document_to_jsonable(doc), indent=2, ensure_ascii=False) + "\n"


def save_document(doc: DslDocument, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(doc))
