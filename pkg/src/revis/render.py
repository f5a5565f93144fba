"""Canvas resolution, mark geometry, and SVG emission.

The container tree is mapped onto a pixel canvas (DSL y grows upward, SVG y
grows downward), template containers fan out into per-instance frames, and
each leaf's mock table is turned into mark records.  Angles follow the
rendering convention of 0 degrees at 12 o'clock increasing clockwise.

Everything here is a pure function of its inputs; fixed (document, seed,
canvas, overrides) yields byte-identical SVG.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .datagen import (
    DataGenError,
    MockTable,
    generate_link_assignments,
    generate_tables,
)
from .layout import Extent, LayoutError, instantiate_template, structure_extents
from .model import (
    CartesianFrame,
    ContainerNode,
    DataSpecification,
    DslDocument,
    Frame,
    PolarFrame,
)
from .validate import validate

DEFAULT_FILL = "#4682b4"
DEFAULT_STROKE = "#333333"
DEFAULT_LINK_STROKE = "#999999"

_FULL = Extent(0.0, 100.0)


class RenderError(Exception):
    pass


# ---------------------------------------------------------------------------
# Canvas frames


@dataclass(frozen=True)
class CanvasFrame:
    """One container's absolute pixel region.

    ``px, py, pw, ph`` is the pixel rectangle (for polar frames: the
    bounding box of the outer circle); polar frames add center, radii and
    the angle range in degrees.
    """

    container: str
    kind: str
    px: float
    py: float
    pw: float
    ph: float
    pcx: float = 0.0
    pcy: float = 0.0
    pr1: float = 0.0
    pr2: float = 0.0
    pa1: float = 0.0
    pa2: float = 0.0

    # Normalized [0, 100] -> pixels along each dimension.
    def fx(self, u: float) -> float:
        return self.px + u / 100.0 * self.pw

    def fy(self, v: float) -> float:
        return self.py + self.ph - v / 100.0 * self.ph

    def fr(self, u: float) -> float:
        return self.pr1 + u / 100.0 * (self.pr2 - self.pr1)

    def fa(self, u: float) -> float:
        return self.pa1 + u / 100.0 * (self.pa2 - self.pa1)

    def polar_point(self, a_deg: float, r_px: float) -> tuple[float, float]:
        theta = math.radians(a_deg)
        return (self.pcx + r_px * math.sin(theta), self.pcy - r_px * math.cos(theta))

    @property
    def center(self) -> tuple[float, float]:
        if self.kind == "polar":
            return self.polar_point((self.pa1 + self.pa2) / 2, (self.pr1 + self.pr2) / 2)
        return (self.px + self.pw / 2, self.py + self.ph / 2)


@dataclass(frozen=True)
class MarkRecord:
    mark_type: str  # rectangle | circle | arc | line | band | area | link
    geometry: Mapping[str, object]
    style: Mapping[str, object]
    container: str
    instance: Optional[int] = None
    group_index: int = 0
    item_index: int = 0


@dataclass(frozen=True)
class SceneEntry:
    frame: CanvasFrame
    records: tuple[MarkRecord, ...] = ()


@dataclass(frozen=True)
class Scene:
    width: float
    height: float
    entries: tuple[SceneEntry, ...] = ()

    def records(self) -> list[MarkRecord]:
        return [r for e in self.entries for r in e.records]


def _resolve_cartesian_child(
    parent_declared: CartesianFrame, parent_canvas: CanvasFrame, frame: CartesianFrame, label: str
) -> CanvasFrame:
    pd, pc = parent_declared, parent_canvas
    sx = pc.pw / (pd.x2 - pd.x1)
    sy = pc.ph / (pd.y2 - pd.y1)
    px = pc.px + (frame.x1 - pd.x1) * sx
    pw = (frame.x2 - frame.x1) * sx
    py = pc.py + (pd.y2 - frame.y2) * sy
    ph = (frame.y2 - frame.y1) * sy
    # Containment: out-of-range declared frames are clamped to the parent.
    x2, y2 = min(px + pw, pc.px + pc.pw), min(py + ph, pc.py + pc.ph)
    px, py = max(px, pc.px), max(py, pc.py)
    return CanvasFrame(label, "cartesian", px, py, max(x2 - px, 0.0), max(y2 - py, 0.0))


def _resolve_polar_child(
    parent_canvas: CanvasFrame, frame: PolarFrame, label: str
) -> CanvasFrame:
    if parent_canvas.kind == "cartesian":
        cx = parent_canvas.px + frame.cx * parent_canvas.pw
        cy = parent_canvas.py + frame.cy * parent_canvas.ph
        unit = min(parent_canvas.pw, parent_canvas.ph) / 2
        r1, r2 = frame.r1 * unit, frame.r2 * unit
        a1, a2 = frame.a1, frame.a2
    else:
        side = 2 * parent_canvas.pr2
        cx = parent_canvas.pcx + (frame.cx - 0.5) * side
        cy = parent_canvas.pcy + (frame.cy - 0.5) * side
        rspan = parent_canvas.pr2 - parent_canvas.pr1
        r1 = parent_canvas.pr1 + frame.r1 * rspan
        r2 = parent_canvas.pr1 + frame.r2 * rspan
        aspan = parent_canvas.pa2 - parent_canvas.pa1
        a1 = parent_canvas.pa1 + frame.a1 / 360.0 * aspan
        a2 = parent_canvas.pa1 + frame.a2 / 360.0 * aspan
    return CanvasFrame(
        label, "polar", cx - r2, cy - r2, 2 * r2, 2 * r2,
        pcx=cx, pcy=cy, pr1=r1, pr2=r2, pa1=a1, pa2=a2,
    )


def _resolve_frame(
    parent_declared: Optional[Frame],
    parent_canvas: Optional[CanvasFrame],
    frame: Frame,
    label: str,
) -> CanvasFrame:
    if parent_canvas is None:
        raise RenderError("internal: missing parent canvas")
    if frame.kind == "cartesian":
        if parent_declared is None or parent_declared.kind != "cartesian":
            raise RenderError(f"{label}: cartesian frames need a cartesian parent")
        return _resolve_cartesian_child(parent_declared, parent_canvas, frame, label)
    return _resolve_polar_child(parent_canvas, frame, label)


def _root_canvas(width: float, height: float) -> tuple[CartesianFrame, CanvasFrame]:
    declared = CartesianFrame(0.0, 0.0, 100.0, 100.0)
    return declared, CanvasFrame("", "cartesian", 0.0, 0.0, float(width), float(height))


def layout_canvas(doc: DslDocument, width: float, height: float) -> dict[str, CanvasFrame]:
    """Resolve every container's pixel frame (templates kept as one region)."""
    if width <= 0 or height <= 0:
        raise RenderError("canvas width and height must be positive")
    frames: dict[str, CanvasFrame] = {}

    def visit(node: ContainerNode, parent_declared, parent_canvas):
        cf = _resolve_frame(parent_declared, parent_canvas, node.frame, node.id)
        frames[node.id] = cf
        for child in node.children:
            visit(child, node.frame, cf)

    declared, canvas = _root_canvas(width, height)
    visit(doc.root, declared, canvas)
    return frames


# ---------------------------------------------------------------------------
# Mark geometry


def _table_value_fn(table: MockTable):
    def fn(level: str, dim: str, g: int, k: int) -> float:
        group = table.groups[g]
        if level == "group":
            vals = [float(d.extra.get(dim, d.value)) for d in group]
            return sum(vals) / len(vals) if vals else 0.5
        datum = group[k]
        return float(datum.extra.get(dim, datum.value))

    return fn


def _style_of(datum, keys=("fill", "stroke", "stroke_width", "opacity", "line_type", "rx", "ry")):
    return {k: datum.extra[k] for k in keys if k in datum.extra}


def _monotone_tangents(values: Sequence[float]) -> list[float]:
    n = len(values)
    deltas = [values[i + 1] - values[i] for i in range(n - 1)]
    m = [0.0] * n
    m[0], m[-1] = deltas[0], deltas[-1]
    for i in range(1, n - 1):
        if deltas[i - 1] * deltas[i] <= 0:
            m[i] = 0.0
        else:
            m[i] = (deltas[i - 1] + deltas[i]) / 2
    for i in range(n - 1):
        if deltas[i] == 0:
            m[i] = m[i + 1] = 0.0
        else:
            a, b = m[i] / deltas[i], m[i + 1] / deltas[i]
            s = a * a + b * b
            if s > 9.0:
                tau = 3.0 / math.sqrt(s)
                m[i] = tau * a * deltas[i]
                m[i + 1] = tau * b * deltas[i]
    return m


def _sample_curve(points: list[tuple[float, float]], per_segment: int = 8) -> list[tuple[float, float]]:
    """Monotone cubic interpolation through points, parametrized by index.

    Stays inside the per-coordinate hull of its control points, so sampled
    curves never escape their container.
    """
    if len(points) < 3:
        return list(points)
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    mx, my = _monotone_tangents(xs), _monotone_tangents(ys)
    out = [points[0]]
    for i in range(len(points) - 1):
        for j in range(1, per_segment + 1):
            t = j / per_segment
            h00 = (1 + 2 * t) * (1 - t) * (1 - t)
            h10 = t * (1 - t) * (1 - t)
            h01 = t * t * (3 - 2 * t)
            h11 = t * t * (t - 1)
            out.append(
                (
                    h00 * xs[i] + h10 * mx[i] + h01 * xs[i + 1] + h11 * mx[i + 1],
                    h00 * ys[i] + h10 * my[i] + h01 * ys[i + 1] + h11 * my[i + 1],
                )
            )
    return out


def _map_norm_points(frame: CanvasFrame, pts: list[tuple[float, float]]) -> list[list[float]]:
    """Map normalized (dim-a, dim-b) points to pixels.

    Cartesian points are (x, y) in [0, 100]; polar points are
    (angle, radius) in [0, 100] of the frame's ranges.
    """
    if frame.kind == "cartesian":
        return [[frame.fx(u), frame.fy(v)] for u, v in pts]
    return [list(frame.polar_point(frame.fa(u), frame.fr(v))) for u, v in pts]


def _node_mark_geometry(mark_type: str, frame: CanvasFrame, by_dim: dict[str, Extent]):
    if frame.kind == "cartesian":
        ex = by_dim.get("x", _FULL)
        ey = by_dim.get("y", _FULL)
        if mark_type == "circle":
            w = ex.size / 100.0 * frame.pw
            h = ey.size / 100.0 * frame.ph
            sizes = [s for s in (w, h) if s > 0]
            r = min(sizes) / 2 if sizes else 0.0
            return {"cx": frame.fx(ex.center), "cy": frame.fy(ey.center), "r": r}
        if mark_type == "line":
            if ex.size >= ey.size:
                pts = [(ex.start, ey.center), (ex.end, ey.center)]
            else:
                pts = [(ex.center, ey.start), (ex.center, ey.end)]
            return {"points": _map_norm_points(frame, pts), "closed": False}
        # rectangle; band/area/arc node marks degrade to their bounding box
        return {
            "x": frame.fx(ex.start),
            "y": frame.fy(ey.end),
            "w": ex.size / 100.0 * frame.pw,
            "h": ey.size / 100.0 * frame.ph,
        }
    er = by_dim.get("radius", _FULL)
    ea = by_dim.get("angle", _FULL)
    if mark_type == "circle":
        rspan = (frame.pr2 - frame.pr1) * er.size / 100.0
        r_center = frame.fr(er.center)
        arc_px = math.radians(frame.fa(ea.end) - frame.fa(ea.start)) * r_center
        sizes = [s for s in (rspan, arc_px) if s > 0]
        r = min(sizes) / 2 if sizes else 0.0
        x, y = frame.polar_point(frame.fa(ea.center), r_center)
        return {"cx": x, "cy": y, "r": r}
    if mark_type == "line":
        if er.size >= ea.size:
            pts = [(ea.center, er.start), (ea.center, er.end)]
            return {"points": _map_norm_points(frame, pts), "closed": False}
        samples = [(ea.start + (ea.end - ea.start) * j / 8, er.center) for j in range(9)]
        return {"points": _map_norm_points(frame, samples), "closed": False}
    # arc (rectangles in polar frames render as annular sectors too)
    return {
        "cx": frame.pcx,
        "cy": frame.pcy,
        "r_inner": frame.fr(er.start),
        "r_outer": frame.fr(er.end),
        "a_start": frame.fa(ea.start),
        "a_end": frame.fa(ea.end),
    }


def _clamp01_100(v: float) -> float:
    return min(100.0, max(0.0, v))


def render_marks(
    spec: DataSpecification,
    table: MockTable,
    frame: CanvasFrame,
    mark_type: Optional[str] = None,
    container_id: str = "0",
    instance: Optional[int] = None,
    link_assignments=None,
    link_endpoints=None,
) -> list[MarkRecord]:
    """Turn one leaf's table into mark records inside its canvas frame.

    ``mark_type`` (the container's value) wins over the specification's.
    node_link leaves additionally need assignments plus an endpoint lookup
    ``(cid, index | None) -> (x, y)``.
    """
    mark = spec.mark_specification
    if mark is None:
        raise RenderError(f"{container_id}: template specifications do not render marks")
    effective = mark_type or mark.mark_type

    if mark.link_mark_type == "node_link":
        if link_assignments is None or link_endpoints is None:
            raise RenderError(f"{container_id}: node_link marks need resolved assignments")
        records = []
        rows = table.rows
        for i, (src, tgt) in enumerate(link_assignments):
            x0, y0 = link_endpoints(src)
            x1, y1 = link_endpoints(tgt)
            dx, dy = x1 - x0, y1 - y0
            span = math.hypot(dx, dy)
            if span > 0:
                ox, oy = -dy / span, dx / span
            else:
                ox = oy = 0.0
            mx, my = (x0 + x1) / 2, (y0 + y1) / 2
            style = _style_of(rows[i % len(rows)]) if rows else {}
            records.append(
                MarkRecord(
                    mark_type="link",
                    geometry={
                        "x0": x0, "y0": y0,
                        "cx": mx + ox * 0.1 * span, "cy": my + oy * 0.1 * span,
                        "x1": x1, "y1": y1,
                    },
                    style=style,
                    container=container_id,
                    instance=instance,
                    group_index=i,
                    item_index=i,
                )
            )
        return records

    structure = spec.data_structure
    if table.group_sizes() != structure.group_sizes():
        raise RenderError(f"{container_id}: table shape does not match the data structure")

    cross_stack: frozenset[str] = frozenset()
    if mark.link_mark_type == "group_type" and structure.data_type != "1D_list":
        direction = mark.group_link_direction
        cross_stack = frozenset(
            d
            for d, s in spec.layout_specification.dimensions.items()
            if s.stacking and d != direction
        )
    try:
        extents = structure_extents(
            structure, spec.layout_specification, _table_value_fn(table), cross_stack
        )
    except LayoutError as exc:
        raise RenderError(f"{container_id}: {exc}") from exc

    records = []
    if mark.link_mark_type == "group_type":
        horizontal = ("x", "y") if frame.kind == "cartesian" else ("angle", "radius")
        direction = mark.group_link_direction or horizontal[0]
        value_dim = horizontal[1] if direction == horizontal[0] else horizontal[0]
        curve = False
        for g, group in enumerate(table.groups):
            if not group:
                continue
            style = _style_of(group[0])
            curve = style.get("line_type") == "curve"
            n = len(group)

            def ext(dim, k):
                per = extents.get(dim)
                return per[g][k] if per is not None else _FULL

            # Normalized points ordered (horizontal-dim, vertical-dim).
            def norm_pt(k, pick):
                a = pick(ext(horizontal[0], k))
                b = pick(ext(horizontal[1], k))
                return (a, b)

            if effective == "line":
                pts = [norm_pt(k, lambda e: e.center) for k in range(n)]
                if curve:
                    pts = _sample_curve(pts)
                records.append(
                    MarkRecord(
                        mark_type="line",
                        geometry={"points": _map_norm_points(frame, pts), "closed": False},
                        style=style,
                        container=container_id,
                        instance=instance,
                        group_index=group[0].group_index,
                        item_index=0,
                    )
                )
            else:  # band / area: ribbon between the value-dim extent rails
                def rail(pick):
                    pts = []
                    for k in range(n):
                        d_pos = ext(direction, k).center
                        v = pick(ext(value_dim, k))
                        if direction == horizontal[0]:
                            pts.append((d_pos, _clamp01_100(v)))
                        else:
                            pts.append((_clamp01_100(v), d_pos))
                    return pts

                upper = rail(lambda e: e.end)
                lower = rail(lambda e: e.start)
                if curve:
                    upper, lower = _sample_curve(upper), _sample_curve(lower)
                records.append(
                    MarkRecord(
                        mark_type=effective if effective in ("band", "area") else "band",
                        geometry={
                            "upper": _map_norm_points(frame, upper),
                            "lower": _map_norm_points(frame, lower),
                        },
                        style=style,
                        container=container_id,
                        instance=instance,
                        group_index=group[0].group_index,
                        item_index=0,
                    )
                )
        return records

    # Node marks: one record per datum.  Rectangle-family marks become
    # annular sectors in polar frames and rectangles in cartesian frames.
    if effective in ("circle", "line"):
        geom_kind = effective
    elif frame.kind == "polar":
        geom_kind = "arc"
    else:
        geom_kind = "rectangle"
    for g, group in enumerate(table.groups):
        for k, datum in enumerate(group):
            by_dim = {dim: extents[dim][g][k] for dim in extents}
            records.append(
                MarkRecord(
                    mark_type=geom_kind,
                    geometry=_node_mark_geometry(geom_kind, frame, by_dim),
                    style=_style_of(datum),
                    container=container_id,
                    instance=instance,
                    group_index=datum.group_index,
                    item_index=datum.item_index,
                )
            )
    return records


# ---------------------------------------------------------------------------
# Scene assembly


def build_scene(
    doc: DslDocument,
    tables: Mapping[str, MockTable],
    width: float,
    height: float,
    seed: int = 0,
) -> Scene:
    if width <= 0 or height <= 0:
        raise RenderError("canvas width and height must be positive")
    entries: list[SceneEntry] = []
    endpoints: dict[str, list[tuple[float, float]]] = {}
    pending: list[tuple[int, ContainerNode, DataSpecification, MockTable, CanvasFrame, Optional[int]]] = []

    def record_endpoints(cid: str, records: list[MarkRecord]) -> None:
        pts = endpoints.setdefault(cid, [])
        for r in records:
            pts.append(_record_centroid(r))

    def visit(node: ContainerNode, parent_declared, parent_canvas, instance, suffix):
        label = node.id + suffix
        cf = _resolve_frame(parent_declared, parent_canvas, node.frame, label)
        if node.is_template:
            entries.append(SceneEntry(cf))
            spec = doc.data_specifications.get(node.id)
            table = tables.get(node.id)
            if spec is None or table is None:
                raise RenderError(f"{node.id}: template container has no data specification")
            try:
                boxes = instantiate_template(spec, node.frame, _table_value_fn(table))
            except LayoutError as exc:
                raise RenderError(f"{node.id}: {exc}") from exc
            for idx, box in enumerate(boxes):
                inst_label = f"{node.id}[{idx}]{suffix}"
                box_cf = _resolve_frame(parent_declared, parent_canvas, box.frame, inst_label)
                entries.append(SceneEntry(box_cf))
                endpoints.setdefault(node.id, []).append(box_cf.center)
                for child in node.children:
                    visit(child, node.frame, box_cf, idx, f"[{idx}]{suffix}")
            return
        if node.is_leaf:
            spec = doc.data_specifications.get(node.id)
            table = tables.get(node.id)
            if spec is None or table is None:
                raise RenderError(f"{node.id}: leaf container has no data specification")
            mark = spec.mark_specification
            if mark is not None and mark.link_mark_type == "node_link":
                entries.append(SceneEntry(cf))
                pending.append((len(entries) - 1, node, spec, table, cf, instance))
            else:
                records = render_marks(
                    spec, table, cf,
                    mark_type=node.mark_type,
                    container_id=node.id,
                    instance=instance,
                )
                entries.append(SceneEntry(cf, tuple(records)))
                record_endpoints(node.id, records)
            return
        entries.append(SceneEntry(cf))
        for child in node.children:
            visit(child, node.frame, cf, instance, suffix)

    declared, canvas = _root_canvas(width, height)
    visit(doc.root, declared, canvas, None, "")

    for index, node, spec, table, cf, instance in pending:
        layout = spec.layout_specification

        def lookup(ref: tuple[str, Optional[int]]) -> tuple[float, float]:
            cid, idx = ref
            pts = endpoints.get(cid)
            if not pts:
                raise RenderError(f"{node.id}: no endpoints available in {cid!r}")
            if idx is None:
                return (
                    sum(p[0] for p in pts) / len(pts),
                    sum(p[1] for p in pts) / len(pts),
                )
            return pts[idx % len(pts)]

        rows = table.rows
        if rows and all("source" in d.extra and "target" in d.extra for d in rows):
            assignments = [(d.extra["source"], d.extra["target"]) for d in rows]
        else:
            universe = {
                cid: len(endpoints.get(cid, ()))
                for cid in (list(layout.source or ()) + list(layout.target or ()))
            }
            try:
                assignments = generate_link_assignments(
                    spec.mark_specification, layout, universe, seed, node.id
                )
            except DataGenError as exc:
                raise RenderError(f"{node.id}: {exc}") from exc
        records = render_marks(
            spec, table, cf,
            mark_type=node.mark_type,
            container_id=node.id,
            instance=instance,
            link_assignments=assignments,
            link_endpoints=lookup,
        )
        entries[index] = SceneEntry(cf, tuple(records))

    return Scene(width=float(width), height=float(height), entries=tuple(entries))


def _record_centroid(record: MarkRecord) -> tuple[float, float]:
    g = record.geometry
    if record.mark_type == "rectangle":
        return (g["x"] + g["w"] / 2, g["y"] + g["h"] / 2)
    if record.mark_type == "circle":
        return (g["cx"], g["cy"])
    if record.mark_type == "arc":
        mid_a = (g["a_start"] + g["a_end"]) / 2
        mid_r = (g["r_inner"] + g["r_outer"]) / 2
        theta = math.radians(mid_a)
        return (g["cx"] + mid_r * math.sin(theta), g["cy"] - mid_r * math.cos(theta))
    if record.mark_type == "line":
        pts = g["points"]
        return (
            sum(p[0] for p in pts) / len(pts),
            sum(p[1] for p in pts) / len(pts),
        )
    if record.mark_type in ("band", "area"):
        pts = list(g["upper"]) + list(g["lower"])
        return (
            sum(p[0] for p in pts) / len(pts),
            sum(p[1] for p in pts) / len(pts),
        )
    return ((g["x0"] + g["x1"]) / 2, (g["y0"] + g["y1"]) / 2)


# ---------------------------------------------------------------------------
# SVG emission


def _f(x: float) -> str:
    r = round(float(x), 3)
    if r == int(r):
        return str(int(r))
    return repr(r)


def _path_points(points, closed: bool) -> str:
    parts = [f"M {_f(points[0][0])} {_f(points[0][1])}"]
    for p in points[1:]:
        parts.append(f"L {_f(p[0])} {_f(p[1])}")
    if closed:
        parts.append("Z")
    return " ".join(parts)


def _arc_path(g: Mapping[str, float]) -> str:
    cx, cy = g["cx"], g["cy"]
    r_in, r_out = g["r_inner"], g["r_outer"]
    a0, a1 = g["a_start"], g["a_end"]
    span = a1 - a0

    def pt(a, r):
        theta = math.radians(a)
        return (cx + r * math.sin(theta), cy - r * math.cos(theta))

    def circle_subpath(r):
        top = pt(a0, r)
        half = pt(a0 + 180.0, r)
        return (
            f"M {_f(top[0])} {_f(top[1])} "
            f"A {_f(r)} {_f(r)} 0 1 1 {_f(half[0])} {_f(half[1])} "
            f"A {_f(r)} {_f(r)} 0 1 1 {_f(top[0])} {_f(top[1])} Z"
        )

    if span >= 360.0 - 1e-9:
        d = circle_subpath(r_out)
        if r_in > 1e-9:
            d += " " + circle_subpath(r_in)
        return d
    large = 1 if span > 180.0 else 0
    p1, p2 = pt(a0, r_out), pt(a1, r_out)
    if r_in <= 1e-9:
        return (
            f"M {_f(p1[0])} {_f(p1[1])} "
            f"A {_f(r_out)} {_f(r_out)} 0 {large} 1 {_f(p2[0])} {_f(p2[1])} "
            f"L {_f(cx)} {_f(cy)} Z"
        )
    p3, p4 = pt(a1, r_in), pt(a0, r_in)
    return (
        f"M {_f(p1[0])} {_f(p1[1])} "
        f"A {_f(r_out)} {_f(r_out)} 0 {large} 1 {_f(p2[0])} {_f(p2[1])} "
        f"L {_f(p3[0])} {_f(p3[1])} "
        f"A {_f(r_in)} {_f(r_in)} 0 {large} 0 {_f(p4[0])} {_f(p4[1])} Z"
    )


def _style_attrs(record: MarkRecord) -> str:
    style = dict(record.style)
    attrs = []
    filled = record.mark_type in ("rectangle", "circle", "arc", "band", "area")
    if filled:
        attrs.append(f'fill="{style.get("fill", DEFAULT_FILL)}"')
        if "stroke" in style:
            attrs.append(f'stroke="{style["stroke"]}"')
            attrs.append(f'stroke-width="{_f(style.get("stroke_width", 1.0))}"')
    else:
        attrs.append('fill="none"')
        default = DEFAULT_LINK_STROKE if record.mark_type == "link" else DEFAULT_STROKE
        attrs.append(f'stroke="{style.get("stroke", default)}"')
        attrs.append(f'stroke-width="{_f(style.get("stroke_width", 1.5))}"')
    if "opacity" in style:
        attrs.append(f'opacity="{_f(style["opacity"])}"')
    if record.mark_type == "rectangle":
        if "rx" in style:
            attrs.append(f'rx="{_f(style["rx"])}"')
        if "ry" in style:
            attrs.append(f'ry="{_f(style["ry"])}"')
    return " ".join(attrs)


def _data_attrs(record: MarkRecord) -> str:
    parts = [
        f'data-container="{record.container}"',
        f'data-group="{record.group_index}"',
        f'data-item="{record.item_index}"',
    ]
    if record.instance is not None:
        parts.append(f'data-instance="{record.instance}"')
    return " ".join(parts)


def _record_element(record: MarkRecord) -> str:
    g = record.geometry
    common = f"{_style_attrs(record)} {_data_attrs(record)}"
    if record.mark_type == "rectangle":
        return (
            f'<rect x="{_f(g["x"])}" y="{_f(g["y"])}" '
            f'width="{_f(g["w"])}" height="{_f(g["h"])}" {common}/>'
        )
    if record.mark_type == "circle":
        return f'<circle cx="{_f(g["cx"])}" cy="{_f(g["cy"])}" r="{_f(g["r"])}" {common}/>'
    if record.mark_type == "arc":
        return f'<path d="{_arc_path(g)}" {common}/>'
    if record.mark_type == "line":
        return f'<path d="{_path_points(g["points"], g.get("closed", False))}" {common}/>'
    if record.mark_type in ("band", "area"):
        points = list(g["upper"]) + list(reversed(g["lower"]))
        return f'<path d="{_path_points(points, True)}" {common}/>'
    # link
    d = (
        f'M {_f(g["x0"])} {_f(g["y0"])} '
        f'Q {_f(g["cx"])} {_f(g["cy"])} {_f(g["x1"])} {_f(g["y1"])}'
    )
    return f'<path d="{d}" {common}/>'


def emit_svg(scene: Scene) -> str:
    """Standalone SVG 1.1; every element carries provenance data attributes."""
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_f(scene.width)}" height="{_f(scene.height)}" '
        f'viewBox="0 0 {_f(scene.width)} {_f(scene.height)}">'
    ]
    for entry in scene.entries:
        if not entry.records:
            continue
        lines.append(f'  <g data-frame="{entry.frame.container}">')
        for record in entry.records:
            lines.append("    " + _record_element(record))
        lines.append("  </g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_document(
    doc: DslDocument,
    seed: int = 0,
    width: float = 800,
    height: float = 600,
    overrides: Optional[Mapping[str, MockTable]] = None,
) -> str:
    """Full pipeline: mock data, scene assembly, SVG emission."""
    report = validate(doc)
    if not report.is_clean:
        raise RenderError(
            "document does not validate:\n" + "\n".join(str(e) for e in report.errors)
        )
    tables = generate_tables(doc, seed)
    if overrides:
        tables.update(overrides)
    scene = build_scene(doc, tables, width, height, seed)
    return emit_svg(scene)
