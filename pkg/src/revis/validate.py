"""Semantic validation of DSL documents.

``validate`` never raises: every problem becomes a report entry, ordered by
container path so reports are deterministic.  Errors mark invariant
violations; warnings mark constructs that render but look suspicious
(out-of-range geometry that will be clamped, polar rectangles, and so on).
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import (
    ANCHORS,
    ANCHOR_DISTRIBUTES,
    DATA_TYPES,
    DIMENSIONS,
    LINE_TYPES,
    LINK_MARK_TYPES,
    MARK_TYPES,
    SCALES,
    STACK_DIRECTIONS,
    STYLE_ATTRS,
    ContainerNode,
    DataSpecification,
    DslDocument,
    LayoutDimensionSpec,
    frame_problems,
    id_segments,
    id_sort_key,
    is_color,
    is_template_id,
    is_valid_id,
    parent_id,
)

_EPS = 1e-9


@dataclass(frozen=True)
class ValidationIssue:
    severity: str  # "error" | "warning"
    container: str
    rule: str
    message: str

    def __str__(self) -> str:
        return f"[{self.severity}] {self.container} {self.rule}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[ValidationIssue, ...]

    @property
    def errors(self) -> list[ValidationIssue]:
        return [i for i in self.issues if i.severity == "error"]

    @property
    def warnings(self) -> list[ValidationIssue]:
        return [i for i in self.issues if i.severity == "warning"]

    @property
    def is_clean(self) -> bool:
        return not self.errors

    def to_jsonable(self) -> list[dict]:
        return [
            {
                "severity": i.severity,
                "container": i.container,
                "rule": i.rule,
                "message": i.message,
            }
            for i in self.issues
        ]

    def __str__(self) -> str:
        if not self.issues:
            return "clean"
        return "\n".join(str(i) for i in self.issues)


class _Collector:
    def __init__(self):
        self.issues: list[ValidationIssue] = []

    def error(self, container: str, rule: str, message: str) -> None:
        self.issues.append(ValidationIssue("error", container, rule, message))

    def warning(self, container: str, rule: str, message: str) -> None:
        self.issues.append(ValidationIssue("warning", container, rule, message))


def _check_tree(doc: DslDocument, out: _Collector) -> None:
    seen_letters: dict[str, str] = {}
    for node, parent in doc.root.walk_with_parent():
        cid = node.id
        if not is_valid_id(cid):
            out.error(cid, "id.format", f"invalid container id {cid!r}")
            continue
        if parent is None:
            if cid != "0":
                out.error(cid, "id.root", "the root container id must be '0'")
        elif parent_id(cid) != parent.id:
            out.error(cid, "id.child", f"{cid!r} is not a direct child id of {parent.id!r}")

        if is_template_id(cid):
            letter = id_segments(cid)[-1]
            if letter in seen_letters and seen_letters[letter] != cid:
                out.error(
                    cid,
                    "id.template-letter",
                    f"template letter {letter!r} already used by {seen_letters[letter]!r}",
                )
            seen_letters.setdefault(letter, cid)

        for problem in frame_problems(node.frame):
            out.error(cid, f"frame.{node.frame.kind}", problem)
        if parent is not None:
            if parent.frame.kind == "polar" and node.frame.kind == "cartesian":
                out.error(
                    cid,
                    "frame.nesting",
                    "cartesian containers are not allowed inside a polar container",
                )
            if parent.frame.kind == "cartesian" and node.frame.kind == "cartesian":
                p, f = parent.frame, node.frame
                if (
                    f.x1 < p.x1 - _EPS
                    or f.x2 > p.x2 + _EPS
                    or f.y1 < p.y1 - _EPS
                    or f.y2 > p.y2 + _EPS
                ):
                    out.warning(
                        cid,
                        "frame.bounds",
                        "frame exceeds the parent's coordinate ranges; it will be clamped",
                    )
        if node.frame.kind == "polar" and not (
            -0.5 <= node.frame.cx <= 1.5 and -0.5 <= node.frame.cy <= 1.5
        ):
            out.warning(cid, "frame.center", "polar center lies far outside the parent frame")

        if node.is_leaf:
            if node.children:
                out.error(cid, "tree.leaf-children", "leaf containers cannot have children")
            if node.mark_type is None:
                out.error(cid, "tree.leaf-mark", "leaf containers must declare a mark_type")
            elif node.mark_type not in MARK_TYPES:
                out.error(cid, "tree.leaf-mark", f"unknown mark_type {node.mark_type!r}")
            if is_template_id(cid):
                out.error(
                    cid,
                    "tree.template-leaf",
                    "template containers must wrap the repeated structure as children",
                )
            if node.mark_type == "rectangle" and node.frame.kind == "polar":
                out.warning(
                    cid,
                    "tree.polar-rectangle",
                    "rectangle marks in a polar frame render as annular sectors",
                )
            if node.mark_type == "arc" and node.frame.kind == "cartesian":
                out.warning(
                    cid,
                    "tree.cartesian-arc",
                    "arc marks in a cartesian frame render as rectangles",
                )
        else:
            if not node.children:
                out.error(cid, "tree.nonleaf-children", "non-leaf containers need children")
            if node.mark_type is not None:
                out.error(cid, "tree.nonleaf-mark", "only leaf containers carry a mark_type")

        child_ids = [c.id for c in node.children]
        if len(set(child_ids)) != len(child_ids):
            out.error(cid, "id.duplicate", "duplicate child ids")


def _counts_along(structure, dim: str) -> int:
    """Element count laid out along ``dim`` for anchor-bound checking.

    When primary and secondary share the dimension (flattened layouts) the
    spacing applies inside one group, so the secondary count wins.
    """
    if structure.data_type == "1D_list":
        return int(structure.primary.number)
    if structure.secondary is not None and dim in structure.secondary.dimension:
        sizes = structure.group_sizes()
        return max(sizes) if sizes else 1
    if dim in structure.primary.dimension:
        return int(structure.primary.number)
    sizes = structure.group_sizes()
    return max(sizes) if sizes else 1


def _check_dim_spec(
    cid: str, dim: str, spec: LayoutDimensionSpec, structure, out: _Collector
) -> None:
    where = f"layout_specification.{dim}"
    lo, hi = spec.size_range
    if not (0 - _EPS <= lo <= hi <= 100 + _EPS):
        out.error(cid, "dim.size-range", f"{where}: size_range must satisfy 0 <= min <= max <= 100")
    if spec.size_uniform and lo != hi:
        out.error(cid, "dim.size-uniform", f"{where}: size_uniform requires min == max")
    if spec.stacking_direction not in STACK_DIRECTIONS:
        out.error(cid, "dim.enum", f"{where}: unknown stacking_direction")
    if spec.anchor not in ANCHORS:
        out.error(cid, "dim.enum", f"{where}: unknown anchor")
    if spec.anchor_distribute not in ANCHOR_DISTRIBUTES:
        out.error(cid, "dim.enum", f"{where}: unknown anchor_distribute")
    if spec.stacking and spec.anchor != "stacking_decided":
        out.error(
            cid,
            "dim.stacking-anchor",
            f"{where}: stacking requires anchor = 'stacking_decided'",
        )
    if not spec.stacking:
        if spec.anchor_distribute == "uniform_interval":
            if spec.anchor_start is None or spec.anchor_interval is None:
                out.error(
                    cid,
                    "dim.anchor-fields",
                    f"{where}: uniform_interval requires anchor_start and anchor_interval",
                )
            else:
                n = _counts_along(structure, dim)
                if spec.anchor_start + n * spec.anchor_interval > 100 + _EPS:
                    out.error(
                        cid,
                        "dim.anchor-bound",
                        f"{where}: anchor_start + number * anchor_interval must be <= 100 "
                        f"(got {spec.anchor_start} + {n} * {spec.anchor_interval})",
                    )
                if spec.anchor_interval < 0:
                    out.error(cid, "dim.anchor-fields", f"{where}: anchor_interval must be >= 0")
        elif spec.anchor_distribute == "fixed_value" and spec.anchor_start is None:
            out.error(
                cid, "dim.anchor-fields", f"{where}: fixed_value requires anchor_start"
            )
    if spec.anchor_start is not None and not (0 - _EPS <= spec.anchor_start <= 100 + _EPS):
        out.error(cid, "dim.anchor-fields", f"{where}: anchor_start must lie in [0, 100]")


def _check_structure(cid: str, structure, out: _Collector) -> None:
    if structure.data_type not in DATA_TYPES:
        out.error(cid, "data.enum", f"unknown data_type {structure.data_type!r}")
        return
    primary = structure.primary
    if not isinstance(primary.number, int) or primary.number < 1:
        out.error(cid, "data.positive", "primary.number must be a positive integer")
    if structure.data_type == "1D_list":
        if structure.secondary is not None:
            out.error(cid, "data.secondary", "1D_list must not carry a secondary dimension")
        return
    if structure.secondary is None:
        out.error(cid, "data.secondary", f"{structure.data_type} requires a secondary dimension")
        return
    if len(primary.dimension) != 1:
        out.error(cid, "data.secondary", "2D structures need a single primary dimension")
    secondary = structure.secondary
    if structure.data_type == "2D_matrix":
        if not isinstance(secondary.number, int) or secondary.number < 1:
            out.error(cid, "data.positive", "2D_matrix secondary.number must be a positive integer")
    else:  # 2D_list
        if not isinstance(secondary.number, tuple):
            out.error(cid, "data.secondary", "2D_list secondary.number must be an integer array")
        else:
            if isinstance(primary.number, int) and len(secondary.number) != primary.number:
                out.error(
                    cid,
                    "data.secondary",
                    f"2D_list secondary.number length {len(secondary.number)} "
                    f"must equal primary.number {primary.number}",
                )
            if any(n < 1 for n in secondary.number):
                out.error(cid, "data.positive", "2D_list group sizes must be >= 1")


def _check_spec_entry(
    doc: DslDocument, node: ContainerNode, spec: DataSpecification, out: _Collector
) -> None:
    cid = node.id
    is_template = is_template_id(cid)
    mark = spec.mark_specification

    if is_template:
        if mark is not None or spec.non_layout_specification is not None:
            out.error(
                cid,
                "spec.template-shape",
                "template specifications carry only data_structure and layout_specification",
            )
    elif mark is None:
        out.error(cid, "spec.leaf-shape", "leaf specifications need a mark_specification")

    structure = spec.data_structure
    _check_structure(cid, structure, out)

    layout = spec.layout_specification
    allowed_dims = ("x", "y") if node.frame.kind == "cartesian" else ("radius", "angle")
    for dim in layout.dimensions:
        if dim not in allowed_dims:
            out.error(
                cid,
                "layout.dims",
                f"dimension {dim!r} is not usable in a {node.frame.kind} container",
            )
        _check_dim_spec(cid, dim, layout.dimensions[dim], structure, out)

    # Flattened same-dimension 2D layouts.
    if structure.data_type != "1D_list" and structure.secondary is not None:
        pdims, sdims = structure.primary.dimension, structure.secondary.dimension
        if len(pdims) == 1 and pdims == sdims:
            dim_spec = layout.dimensions.get(pdims[0])
            if dim_spec is not None and not dim_spec.flatten_2d:
                out.error(
                    cid,
                    "layout.flatten",
                    f"primary and secondary share dimension {pdims[0]!r}; "
                    "its layout entry needs 2d_flatten = true",
                )

    for count in filter(None, (structure.primary, structure.secondary)):
        for d in count.dimension:
            if d not in allowed_dims:
                out.error(
                    cid,
                    "layout.dims",
                    f"data dimension {d!r} is not usable in a {node.frame.kind} container",
                )

    is_node_link = mark is not None and mark.link_mark_type == "node_link"
    if (layout.source is not None or layout.target is not None) and not is_node_link:
        out.error(
            cid,
            "layout.source-target",
            "source/target lists are only allowed for node_link marks",
        )
    if is_node_link:
        if layout.source is None:
            out.error(cid, "layout.source-target", "node_link marks need a source list")
        for key, ids in (("source", layout.source), ("target", layout.target)):
            if not ids:
                continue
            for ref in ids:
                ref_node = doc.root.find(ref)
                if ref_node is None:
                    out.error(cid, "layout.source-target", f"{key} id {ref!r} does not resolve")
                elif not (ref_node.is_leaf or ref_node.is_template):
                    out.error(
                        cid,
                        "layout.source-target",
                        f"{key} id {ref!r} must name a leaf or template container",
                    )

    if mark is not None:
        if mark.mark_type not in MARK_TYPES:
            out.error(cid, "mark.enum", f"unknown mark_type {mark.mark_type!r}")
        if mark.link_mark_type not in LINK_MARK_TYPES:
            out.error(cid, "mark.enum", f"unknown link_mark_type {mark.link_mark_type!r}")
        if (mark.link_mark_type == "no_link") == mark.is_link_mark:
            out.error(
                cid,
                "mark.link-flag",
                "is_link_mark must be true exactly when link_mark_type is not 'no_link'",
            )
        if mark.link_mark_type == "node_link" and mark.link_number is None:
            out.error(cid, "mark.link-number", "node_link marks need a link_number")
        if mark.link_mark_type == "group_type":
            if mark.group_link_direction is None:
                out.error(
                    cid, "mark.link-direction", "group_type marks need a group_link_direction"
                )
            if structure.data_type == "1D_list" or structure.secondary is None:
                out.error(
                    cid,
                    "mark.group-structure",
                    "group_type marks need a 2D data structure supplying control points",
                )
        if node.mark_type is not None and mark.mark_type != node.mark_type:
            out.warning(
                cid,
                "spec.mark-mismatch",
                f"mark_type {mark.mark_type!r} disagrees with the container's "
                f"{node.mark_type!r}; the container value wins",
            )

    for name, attr in spec.styles().items():
        _check_attribute(cid, name, attr, node, out)


def _check_attribute(cid, name, attr, node: ContainerNode, out: _Collector) -> None:
    if name not in STYLE_ATTRS:
        out.error(cid, "style.name", f"unknown non-layout attribute {name!r}")
        return
    if attr.scale not in SCALES:
        out.error(cid, "style.payload", f"{name}: unknown scale {attr.scale!r}")
        return
    expected = {
        "fix": "fix",
        "linear": "linear",
        "ordinal_primary": "options",
        "ordinal_secondary": "options",
        "categorical": "options",
    }[attr.scale]
    payloads = {"fix": attr.fix, "linear": attr.linear, "options": attr.options}
    for key, value in payloads.items():
        if key == expected and value is None:
            out.error(cid, "style.payload", f"{name}: scale {attr.scale!r} needs a {key} payload")
        if key != expected and value is not None:
            out.error(
                cid,
                "style.payload",
                f"{name}: payload {key!r} does not belong to scale {attr.scale!r}",
            )

    values: list[object] = []
    if attr.fix is not None:
        values.append(attr.fix)
    if attr.linear is not None:
        values.extend(attr.linear)
    if attr.options is not None:
        values.extend(attr.options)
    for value in values:
        if name in ("fill", "stroke") and not is_color(value):
            out.error(cid, "style.color", f"{name}: colors must be #RRGGBB strings")
        if name == "opacity" and isinstance(value, (int, float)) and not 0 <= value <= 1:
            out.error(cid, "style.range", "opacity values must lie in [0, 1]")
        if name == "stroke_width" and isinstance(value, (int, float)) and value < 0:
            out.error(cid, "style.range", "stroke_width must be >= 0")
        if name == "line_type" and value not in LINE_TYPES:
            out.error(cid, "style.range", f"line_type must be one of {'/'.join(LINE_TYPES)}")

    if name == "line_type" and node.mark_type not in ("line", "band", "area", None):
        out.error(
            cid, "style.mark", f"line_type does not apply to {node.mark_type!r} marks"
        )
    if name in ("rx", "ry") and node.mark_type not in ("rectangle", None):
        out.error(cid, "style.mark", f"{name} applies only to rectangle marks")


def validate(doc: DslDocument) -> ValidationReport:
    """Check every document invariant; problems become report entries."""
    out = _Collector()
    _check_tree(doc, out)

    nodes = {n.id: n for n in doc.walk()}
    required = set(doc.specced_ids())
    present = set(doc.data_specifications)
    for cid in sorted(required - present, key=id_sort_key):
        out.error(cid, "spec.coverage-missing", "leaf or template container has no data specification")
    for cid in sorted(present - required, key=id_sort_key):
        out.error(
            cid,
            "spec.coverage-extra",
            "data specification does not belong to a leaf or template container",
        )

    for cid in sorted(required & present, key=id_sort_key):
        _check_spec_entry(doc, nodes[cid], doc.data_specifications[cid], out)

    issues = sorted(
        out.issues, key=lambda i: (id_sort_key(i.container) if is_valid_id(i.container) else [(2, 0, i.container)], i.rule, i.message)
    )
    return ValidationReport(issues=tuple(issues))
