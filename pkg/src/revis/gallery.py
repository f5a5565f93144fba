"""Hand-built corpus of 40 documents: 20 basic charts and 20 composites.

These serve as ground truths for the accuracy harness, as round-trip and
renderer test subjects, and as editing-scenario starting points.  Every
document validates cleanly.
"""

from __future__ import annotations

from typing import Callable, Optional

from .model import (
    CartesianFrame,
    ContainerNode,
    DataSpecification,
    DataStructure,
    DimensionCount,
    DslDocument,
    LayoutDimensionSpec,
    LayoutSpecification,
    MarkSpecification,
    NonLayoutAttribute,
    PolarFrame,
)


def cart(x1, y1, x2, y2) -> CartesianFrame:
    return CartesianFrame(float(x1), float(y1), float(x2), float(y2))


def pol(cx=0.5, cy=0.5, r1=0.0, r2=1.0, a1=0.0, a2=360.0) -> PolarFrame:
    return PolarFrame(float(cx), float(cy), float(r1), float(r2), float(a1), float(a2))


def leaf(cid, frame, mark_type, desc="") -> ContainerNode:
    return ContainerNode(id=cid, frame=frame, description=desc, is_leaf=True, mark_type=mark_type)


def node(cid, frame, children, desc="") -> ContainerNode:
    return ContainerNode(
        id=cid, frame=frame, description=desc, is_leaf=False, children=tuple(children)
    )


def dim(
    stacking=False,
    direction="min",
    subdividing=False,
    flatten=False,
    size=(0.0, 0.0),
    anchor="middle",
    distribute="uniform_interval",
    start=None,
    interval=None,
) -> LayoutDimensionSpec:
    return LayoutDimensionSpec(
        stacking=stacking,
        stacking_direction=direction,
        subdividing=subdividing,
        flatten_2d=flatten,
        size_uniform=size[0] == size[1],
        size_range=(float(size[0]), float(size[1])),
        anchor="stacking_decided" if stacking else anchor,
        anchor_distribute=distribute,
        anchor_start=None if distribute == "flexible" else (
            float(start) if start is not None else None
        ),
        anchor_interval=float(interval)
        if distribute == "uniform_interval" and interval is not None
        else None,
    )


def mark(mt, link="no_link", direction=None, number=None, width=False) -> MarkSpecification:
    return MarkSpecification(
        mark_type=mt,
        is_link_mark=link != "no_link",
        link_mark_type=link,
        group_link_direction=direction,
        link_number=number,
        is_width_encoded_data=width,
    )


def d1(n, *dims, expl="") -> DataStructure:
    return DataStructure(
        data_type="1D_list",
        primary=DimensionCount(number=n, dimension=tuple(dims), explanation=expl),
    )


def dmatrix(pn, pdim, sn, sdim) -> DataStructure:
    return DataStructure(
        data_type="2D_matrix",
        primary=DimensionCount(number=pn, dimension=(pdim,)),
        secondary=DimensionCount(number=sn, dimension=(sdim,)),
    )


def dlist(pdim, counts, sdim) -> DataStructure:
    return DataStructure(
        data_type="2D_list",
        primary=DimensionCount(number=len(counts), dimension=(pdim,)),
        secondary=DimensionCount(number=tuple(counts), dimension=(sdim,)),
    )


def fix(v) -> NonLayoutAttribute:
    return NonLayoutAttribute(scale="fix", fix=v)


def linear(lo, hi) -> NonLayoutAttribute:
    return NonLayoutAttribute(scale="linear", linear=(lo, hi))


def ord1(*options) -> NonLayoutAttribute:
    return NonLayoutAttribute(scale="ordinal_primary", options=tuple(options))


def ord2(*options) -> NonLayoutAttribute:
    return NonLayoutAttribute(scale="ordinal_secondary", options=tuple(options))


def cat(*options) -> NonLayoutAttribute:
    return NonLayoutAttribute(scale="categorical", options=tuple(options))


def spec(structure, layout, mk=None, styles=None, source=None, target=None) -> DataSpecification:
    return DataSpecification(
        data_structure=structure,
        layout_specification=LayoutSpecification(
            dimensions=dict(layout),
            source=tuple(source) if source else None,
            target=tuple(target) if target else None,
        ),
        mark_specification=mk,
        non_layout_specification=styles,
    )


BLUES = ("#c6dbef", "#6baed6", "#2171b5", "#08306b")
WARM = ("#fdd0a2", "#fd8d3c", "#d94801", "#7f2704")
QUAL = ("#4c78a8", "#f58518", "#54a24b", "#e45756", "#72b7b2", "#eeca3b")


# ---------------------------------------------------------------------------
# Basic charts


def basic_simple_bar() -> DslDocument:
    root = leaf("0", cart(0, 0, 100, 100), "rectangle", "vertical bars over categories")
    return DslDocument(
        root=root,
        data_specifications={
            "0": spec(
                d1(12, "x"),
                {
                    "x": dim(size=(5, 5), anchor="min", start=4, interval=8),
                    "y": dim(size=(0, 85), anchor="min", distribute="fixed_value", start=0),
                },
                mk=mark("rectangle"),
                styles={"fill": fix("#4682b4")},
            )
        },
    )


def basic_radial_bar() -> DslDocument:
    root = leaf("0", pol(r1=0.2), "arc", "bars radiating from an inner circle")
    return DslDocument(
        root=root,
        data_specifications={
            "0": spec(
                d1(14, "angle"),
                {
                    "angle": dim(size=(4, 4), anchor="min", start=1, interval=7),
                    "radius": dim(size=(10, 95), anchor="min", distribute="fixed_value", start=0),
                },
                mk=mark("arc"),
            )
        },
    )


def basic_stacked_bar() -> DslDocument:
    root = leaf("0", cart(0, 0, 100, 100), "rectangle", "stacked segments per category")
    return DslDocument(
        root=root,
        data_specifications={
            "0": spec(
                dmatrix(7, "x", 4, "y"),
                {
                    "x": dim(size=(8, 8), anchor="min", start=6, interval=13),
                    "y": dim(stacking=True, size=(0, 22)),
                },
                mk=mark("rectangle"),
                styles={"fill": ord2(*BLUES)},
            )
        },
    )


def basic_radial_stacked_bar() -> DslDocument:
    root = leaf("0", pol(r1=0.25), "arc", "stacked arcs around the circle")
    return DslDocument(
        root=root,
        data_specifications={
            "0": spec(
                dmatrix(12, "angle", 3, "radius"),
                {
                    "angle": dim(size=(6, 6), anchor="min", start=0, interval=8),
                    "radius": dim(stacking=True, size=(5, 30)),
                },
                mk=mark("arc"),
                styles={"fill": ord2(*BLUES[:3])},
            )
        },
    )


def basic_horizontal_stacked_bar() -> DslDocument:
    root = leaf("0", cart(0, 0, 100, 100), "rectangle", "horizontal stacked bars")
    return DslDocument(
        root=root,
        data_specifications={
            "0": spec(
                dmatrix(6, "y", 4, "x"),
                {
                    "y": dim(size=(9, 9), anchor="min", start=8, interval=15),
                    "x": dim(stacking=True, size=(0, 24)),
                },
                mk=mark("rectangle"),
                styles={"fill": ord2(*WARM)},
            )
        },
    )


def basic_grouped_bar() -> DslDocument:
    root = leaf("0", cart(0, 0, 100, 100), "rectangle", "bar groups side by side")
    return DslDocument(
        root=root,
        data_specifications={
            "0": spec(
                dmatrix(4, "x", 3, "x"),
                {
                    "x": dim(flatten=True, size=(24, 24), anchor="min", start=10, interval=28),
                    "y": dim(size=(5, 85), anchor="min", distribute="fixed_value", start=0),
                },
                mk=mark("rectangle"),
                styles={"fill": ord2(*QUAL[:3])},
            )
        },
    )


def basic_scatter() -> DslDocument:
    root = leaf("0", cart(0, 0, 100, 100), "circle", "point cloud")
    return DslDocument(
        root=root,
        data_specifications={
            "0": spec(
                d1(40, "x", "y"),
                {
                    "x": dim(size=(3, 3), distribute="flexible"),
                    "y": dim(size=(3, 3), distribute="flexible"),
                },
                mk=mark("circle"),
                styles={"fill": fix("#4c78a8"), "opacity": fix(0.7)},
            )
        },
    )


def basic_bubble_1() -> DslDocument:
    root = leaf("0", cart(0, 0, 100, 100), "circle", "sized point cloud")
    return DslDocument(
        root=root,
        data_specifications={
            "0": spec(
                d1(25, "x", "y"),
                {
                    "x": dim(size=(1.5, 7), distribute="flexible"),
                    "y": dim(size=(1.5, 7), distribute="flexible"),
                },
                mk=mark("circle"),
                styles={"fill": fix("#f58518"), "opacity": fix(0.6)},
            )
        },
    )


def basic_bubble_2() -> DslDocument:
    root = leaf("0", cart(0, 0, 100, 100), "circle", "sized and shaded point cloud")
    return DslDocument(
        root=root,
        data_specifications={
            "0": spec(
                d1(30, "x", "y"),
                {
                    "x": dim(size=(1, 8), distribute="flexible"),
                    "y": dim(size=(1, 8), distribute="flexible"),
                },
                mk=mark("circle"),
                styles={"fill": linear("#deebf7", "#08306b"), "stroke": fix("#ffffff")},
            )
        },
    )


def basic_binned_scatter() -> DslDocument:
    root = leaf("0", cart(0, 0, 100, 100), "circle", "grid of count-sized dots")
    return DslDocument(
        root=root,
        data_specifications={
            "0": spec(
                dmatrix(10, "x", 8, "y"),
                {
                    "x": dim(size=(0, 8), start=5, interval=9),
                    "y": dim(size=(0, 8), start=6, interval=11),
                },
                mk=mark("circle"),
                styles={"fill": fix("#4c78a8")},
            )
        },
    )


def basic_heatmap() -> DslDocument:
    root = leaf("0", cart(0, 0, 100, 100), "rectangle", "shaded cell grid")
    return DslDocument(
        root=root,
        data_specifications={
            "0": spec(
                dmatrix(10, "x", 5, "y"),
                {
                    "x": dim(size=(10, 10), anchor="min", start=0, interval=10),
                    "y": dim(size=(20, 20), anchor="min", start=0, interval=20),
                },
                mk=mark("rectangle"),
                styles={"fill": linear("#f7fbff", "#08306b")},
            )
        },
    )


def basic_strip_plot() -> DslDocument:
    root = leaf("0", cart(0, 0, 100, 100), "rectangle", "tick strips per category row")
    return DslDocument(
        root=root,
        data_specifications={
            "0": spec(
                dmatrix(4, "y", 20, "x"),
                {
                    "y": dim(size=(10, 10), start=12, interval=22),
                    "x": dim(size=(0.6, 0.6), distribute="flexible"),
                },
                mk=mark("rectangle"),
                styles={"fill": fix("#4c78a8"), "opacity": fix(0.5)},
            )
        },
    )


def basic_dot_plot() -> DslDocument:
    root = leaf("0", cart(0, 0, 100, 100), "circle", "dots per category, varying counts")
    return DslDocument(
        root=root,
        data_specifications={
            "0": spec(
                dlist("y", (3, 5, 8, 6, 4), "x"),
                {
                    "y": dim(size=(4, 4), start=10, interval=18),
                    "x": dim(size=(3, 3), distribute="flexible"),
                },
                mk=mark("circle"),
                styles={"fill": ord1(*QUAL[:5])},
            )
        },
    )


def basic_pie() -> DslDocument:
    root = leaf("0", pol(r2=0.95), "arc", "full circle split into slices")
    return DslDocument(
        root=root,
        data_specifications={
            "0": spec(
                d1(6, "angle"),
                {
                    "angle": dim(stacking=True, subdividing=True),
                    "radius": dim(size=(100, 100), anchor="min", distribute="fixed_value", start=0),
                },
                mk=mark("arc"),
                styles={"fill": ord1(*QUAL)},
            )
        },
    )


def basic_donut() -> DslDocument:
    root = leaf("0", pol(r1=0.55, r2=0.95), "arc", "ring split into slices")
    return DslDocument(
        root=root,
        data_specifications={
            "0": spec(
                d1(5, "angle"),
                {
                    "angle": dim(stacking=True, subdividing=True),
                    "radius": dim(size=(100, 100), anchor="min", distribute="fixed_value", start=0),
                },
                mk=mark("arc"),
                styles={"fill": ord1(*QUAL[:5])},
            )
        },
    )


def basic_line_chart() -> DslDocument:
    root = leaf("0", cart(0, 0, 100, 100), "line", "single series over x")
    return DslDocument(
        root=root,
        data_specifications={
            "0": spec(
                dmatrix(1, "y", 12, "x"),
                {
                    "x": dim(start=2, interval=8),
                    "y": dim(distribute="flexible"),
                },
                mk=mark("line", link="group_type", direction="x"),
                styles={
                    "stroke": fix("#e45756"),
                    "stroke_width": fix(2),
                    "line_type": fix("straight"),
                },
            )
        },
    )


def basic_parallel_coordinates() -> DslDocument:
    root = leaf("0", cart(0, 0, 100, 100), "line", "one polyline per record across axes")
    return DslDocument(
        root=root,
        data_specifications={
            "0": spec(
                dmatrix(8, "y", 5, "x"),
                {
                    "x": dim(start=10, interval=18),
                    "y": dim(distribute="flexible"),
                },
                mk=mark("line", link="group_type", direction="x"),
                styles={"stroke": ord1(*QUAL[:4]), "opacity": fix(0.8)},
            )
        },
    )


def basic_stacked_area() -> DslDocument:
    root = leaf("0", cart(0, 0, 100, 100), "area", "stacked series over x")
    return DslDocument(
        root=root,
        data_specifications={
            "0": spec(
                dmatrix(4, "y", 10, "x"),
                {
                    "x": dim(start=0, interval=10),
                    "y": dim(stacking=True, size=(2, 20)),
                },
                mk=mark("area", link="group_type", direction="x", width=True),
                styles={
                    "fill": ord1(*QUAL[:4]),
                    "opacity": fix(0.85),
                    "line_type": fix("straight"),
                },
            )
        },
    )


def basic_radar() -> DslDocument:
    root = leaf("0", pol(r2=0.9), "line", "closed value polylines over spokes")
    return DslDocument(
        root=root,
        data_specifications={
            "0": spec(
                dmatrix(3, "radius", 6, "angle"),
                {
                    "angle": dim(start=0, interval=16),
                    "radius": dim(distribute="flexible"),
                },
                mk=mark("line", link="group_type", direction="angle"),
                styles={
                    "stroke": ord1(*QUAL[:3]),
                    "opacity": fix(0.9),
                    "line_type": fix("straight"),
                },
            )
        },
    )


def basic_mosaic() -> DslDocument:
    root = leaf("0", cart(0, 0, 100, 100), "rectangle", "proportional tiles per column")
    return DslDocument(
        root=root,
        data_specifications={
            "0": spec(
                dlist("x", (3, 4, 2, 5), "y"),
                {
                    "x": dim(stacking=True, subdividing=True),
                    "y": dim(stacking=True, subdividing=True),
                },
                mk=mark("rectangle"),
                styles={"fill": ord2(*QUAL[:5])},
            )
        },
    )


# ---------------------------------------------------------------------------
# Composite visualizations


def composite_faceted_bar() -> DslDocument:
    bars = leaf("0-a-0", cart(5, 5, 95, 95), "rectangle", "bars of one panel")
    template = node("0-a", cart(2, 0, 98, 100), [bars], "row of repeated bar panels")
    root = node("0", cart(0, 0, 100, 100), [template], "faceted bar chart")
    return DslDocument(
        root=root,
        data_specifications={
            "0-a": spec(
                d1(3, "x"),
                {"x": dim(size=(30, 30), anchor="min", start=1, interval=33)},
            ),
            "0-a-0": spec(
                d1(8, "x"),
                {
                    "x": dim(size=(8, 8), anchor="min", start=4, interval=12),
                    "y": dim(size=(5, 90), anchor="min", distribute="fixed_value", start=0),
                },
                mk=mark("rectangle"),
                styles={"fill": fix("#4c78a8")},
            ),
        },
    )


def composite_faceted_scatter() -> DslDocument:
    dots = leaf("0-a-0", cart(6, 6, 94, 94), "circle", "points of one panel")
    template = node("0-a", cart(0, 0, 100, 100), [dots], "2x2 grid of scatter panels")
    root = node("0", cart(0, 0, 100, 100), [template], "faceted scatter plot")
    return DslDocument(
        root=root,
        data_specifications={
            "0-a": spec(
                dmatrix(2, "x", 2, "y"),
                {
                    "x": dim(size=(48, 48), anchor="min", start=1, interval=49),
                    "y": dim(size=(48, 48), anchor="min", start=1, interval=49),
                },
            ),
            "0-a-0": spec(
                d1(25, "x", "y"),
                {
                    "x": dim(size=(3, 3), distribute="flexible"),
                    "y": dim(size=(3, 3), distribute="flexible"),
                },
                mk=mark("circle"),
                styles={"fill": fix("#4c78a8"), "opacity": fix(0.7)},
            ),
        },
    )


def composite_marginal_histograms() -> DslDocument:
    top = leaf("0-0", cart(0, 72, 75, 100), "rectangle", "top histogram")
    main = leaf("0-1", cart(0, 0, 75, 72), "circle", "main scatter plot")
    right = leaf("0-2", cart(75, 0, 100, 72), "rectangle", "right histogram")
    root = node("0", cart(0, 0, 100, 100), [top, main, right], "scatter with margins")
    return DslDocument(
        root=root,
        data_specifications={
            "0-0": spec(
                d1(14, "x"),
                {
                    "x": dim(size=(6, 6), anchor="min", start=1.5, interval=7),
                    "y": dim(size=(4, 92), anchor="min", distribute="fixed_value", start=0),
                },
                mk=mark("rectangle"),
                styles={"fill": fix("#9ecae1")},
            ),
            "0-1": spec(
                d1(45, "x", "y"),
                {
                    "x": dim(size=(2.8, 2.8), distribute="flexible"),
                    "y": dim(size=(2.8, 2.8), distribute="flexible"),
                },
                mk=mark("circle"),
                styles={"fill": fix("#4c78a8"), "opacity": fix(0.65)},
            ),
            "0-2": spec(
                d1(12, "y"),
                {
                    "y": dim(size=(6.5, 6.5), anchor="min", start=2, interval=8),
                    "x": dim(size=(4, 92), anchor="min", distribute="fixed_value", start=0),
                },
                mk=mark("rectangle"),
                styles={"fill": fix("#9ecae1")},
            ),
        },
    )


def composite_line_with_highlights() -> DslDocument:
    line = leaf("0-0", cart(0, 0, 100, 100), "line", "base series")
    dots = leaf("0-1", cart(0, 0, 100, 100), "circle", "highlighted points")
    root = node("0", cart(0, 0, 100, 100), [line, dots], "line with highlight dots")
    return DslDocument(
        root=root,
        data_specifications={
            "0-0": spec(
                dmatrix(1, "y", 14, "x"),
                {"x": dim(start=1, interval=7), "y": dim(distribute="flexible")},
                mk=mark("line", link="group_type", direction="x"),
                styles={"stroke": fix("#4c78a8"), "stroke_width": fix(2)},
            ),
            "0-1": spec(
                d1(5, "x", "y"),
                {
                    "x": dim(size=(3.5, 3.5), distribute="flexible"),
                    "y": dim(size=(3.5, 3.5), distribute="flexible"),
                },
                mk=mark("circle"),
                styles={"fill": fix("#e45756")},
            ),
        },
    )


def composite_box_plot() -> DslDocument:
    whiskers = leaf("0-0", cart(0, 0, 100, 100), "line", "whisker lines")
    boxes = leaf("0-1", cart(0, 0, 100, 100), "rectangle", "quartile boxes")
    medians = leaf("0-2", cart(0, 0, 100, 100), "line", "median ticks")
    root = node("0", cart(0, 0, 100, 100), [whiskers, boxes, medians], "box plot")
    return DslDocument(
        root=root,
        data_specifications={
            "0-0": spec(
                dmatrix(5, "x", 2, "y"),
                {
                    "x": dim(size=(0, 0), start=8, interval=17),
                    "y": dim(distribute="flexible"),
                },
                mk=mark("line", link="group_type", direction="y"),
                styles={"stroke": fix("#555555")},
            ),
            "0-1": spec(
                d1(5, "x"),
                {
                    "x": dim(size=(10, 10), start=8, interval=17),
                    "y": dim(size=(12, 40), distribute="flexible"),
                },
                mk=mark("rectangle"),
                styles={"fill": fix("#9ecae1"), "stroke": fix("#333333")},
            ),
            "0-2": spec(
                d1(5, "x"),
                {
                    "x": dim(size=(10, 10), start=8, interval=17),
                    "y": dim(size=(0, 0), distribute="flexible"),
                },
                mk=mark("line"),
                styles={"stroke": fix("#08306b"), "stroke_width": fix(2)},
            ),
        },
    )


def composite_radial_rings() -> DslDocument:
    inner = leaf("0-0", pol(r2=0.3), "circle", "inner point ring")
    bars = leaf("0-1", pol(r1=0.35, r2=0.6), "arc", "stacked radial bars")
    heat = leaf("0-2", pol(r1=0.65, r2=1.0), "arc", "outer shaded grid ring")
    root = node("0", pol(), [inner, bars, heat], "three concentric rings")
    return DslDocument(
        root=root,
        data_specifications={
            "0-0": spec(
                d1(40, "radius", "angle"),
                {
                    "radius": dim(size=(4, 4), distribute="flexible"),
                    "angle": dim(size=(4, 4), distribute="flexible"),
                },
                mk=mark("circle"),
                styles={"fill": fix("#4c78a8"), "opacity": fix(0.7)},
            ),
            "0-1": spec(
                dmatrix(18, "angle", 3, "radius"),
                {
                    "angle": dim(size=(4, 4), anchor="min", start=0.5, interval=5.5),
                    "radius": dim(stacking=True, size=(8, 30)),
                },
                mk=mark("arc"),
                styles={"fill": ord2(*BLUES[:3])},
            ),
            "0-2": spec(
                dmatrix(24, "angle", 4, "radius"),
                {
                    "angle": dim(size=(3.5, 3.5), anchor="min", start=0, interval=4),
                    "radius": dim(size=(22, 22), anchor="min", start=2, interval=24),
                },
                mk=mark("arc"),
                styles={"fill": linear("#fff5eb", "#7f2704")},
            ),
        },
    )


def composite_linked_bar_panels() -> DslDocument:
    curves = leaf("0-0", cart(0, 0, 100, 100), "line", "curves linking panels to the circle")
    bars = leaf("0-a-0", cart(8, 12, 75, 55), "rectangle", "bars of one panel")
    panel_line = leaf("0-a-1", cart(8, 50, 75, 88), "line", "reference line of one panel")
    template = node("0-a", cart(5, 8, 78, 92), [bars, panel_line], "grid of bar-line panels")
    circle = leaf("0-4", cart(80, 25, 98, 75), "circle", "final summary circle")
    root = node("0", cart(0, 0, 100, 100), [curves, template, circle], "linked panel flow")
    return DslDocument(
        root=root,
        data_specifications={
            "0-0": spec(
                d1(6, "x"),
                {},
                mk=mark("line", link="node_link", number=6),
                styles={"stroke": fix("#999999"), "stroke_width": fix(1.2), "opacity": fix(0.8)},
                source=["0-a"],
                target=["0-4"],
            ),
            "0-a": spec(
                dmatrix(3, "x", 4, "y"),
                {
                    "x": dim(size=(22, 22), anchor="min", start=1, interval=24.5),
                    "y": dim(size=(22, 22), anchor="min", start=2, interval=24.5),
                },
            ),
            "0-a-0": spec(
                d1(4, "x"),
                {
                    "x": dim(size=(18, 18), anchor="min", start=2, interval=24),
                    "y": dim(size=(8, 90), anchor="min", distribute="fixed_value", start=0),
                },
                mk=mark("rectangle"),
                styles={"fill": ord2(*QUAL[:4])},
            ),
            "0-a-1": spec(
                dmatrix(1, "y", 4, "x"),
                {"x": dim(start=10, interval=22), "y": dim(distribute="flexible")},
                mk=mark("line", link="group_type", direction="x"),
                styles={"stroke": fix("#e45756"), "stroke_width": fix(2)},
            ),
            "0-4": spec(
                d1(1, "x", "y"),
                {
                    "x": dim(size=(70, 70), distribute="fixed_value", start=50),
                    "y": dim(size=(70, 70), distribute="fixed_value", start=50),
                },
                mk=mark("circle"),
                styles={"fill": fix("#f58518")},
            ),
        },
    )


def composite_matrix_with_bars() -> DslDocument:
    cells = leaf("0-a-0", cart(8, 31, 92, 94), "rectangle", "heat cells of one panel")
    template = node("0-a", cart(0, 25, 100, 100), [cells], "grid of heat panels")
    bars = leaf("0-1", cart(0, 0, 100, 25), "rectangle", "summary bars")
    root = node("0", cart(0, 0, 100, 100), [template, bars], "heat panel grid with bars")
    return DslDocument(
        root=root,
        data_specifications={
            "0-a": spec(
                dmatrix(4, "x", 3, "y"),
                {
                    "x": dim(stacking=True, subdividing=True),
                    "y": dim(stacking=True, subdividing=True),
                },
            ),
            "0-a-0": spec(
                dmatrix(5, "x", 4, "y"),
                {
                    "x": dim(size=(17, 17), anchor="min", start=2, interval=19),
                    "y": dim(size=(22, 22), anchor="min", start=2, interval=24),
                },
                mk=mark("rectangle"),
                styles={"fill": linear("#f7fbff", "#08306b")},
            ),
            "0-1": spec(
                d1(4, "x"),
                {
                    "x": dim(size=(20, 20), anchor="min", start=2, interval=24),
                    "y": dim(size=(10, 90), anchor="min", distribute="fixed_value", start=0),
                },
                mk=mark("rectangle"),
                styles={"fill": fix("#4c78a8")},
            ),
        },
    )


def composite_stacked_panels() -> DslDocument:
    bars = leaf("0-0", cart(0, 66, 100, 100), "rectangle", "stacked bars panel")
    lines = leaf("0-1", cart(0, 33, 100, 66), "line", "multi-series line panel")
    heat = leaf("0-2", cart(0, 0, 100, 33), "rectangle", "heatmap panel")
    root = node("0", cart(0, 0, 100, 100), [bars, lines, heat], "three aligned panels")
    return DslDocument(
        root=root,
        data_specifications={
            "0-0": spec(
                dmatrix(10, "x", 3, "y"),
                {
                    "x": dim(size=(7, 7), anchor="min", start=2.5, interval=9.5),
                    "y": dim(stacking=True, size=(4, 28)),
                },
                mk=mark("rectangle"),
                styles={"fill": ord2(*BLUES[:3])},
            ),
            "0-1": spec(
                dmatrix(3, "y", 10, "x"),
                {"x": dim(start=2, interval=9.8), "y": dim(distribute="flexible")},
                mk=mark("line", link="group_type", direction="x"),
                styles={"stroke": ord1(*QUAL[:3]), "stroke_width": fix(1.6)},
            ),
            "0-2": spec(
                dmatrix(10, "x", 3, "y"),
                {
                    "x": dim(size=(10, 10), anchor="min", start=0, interval=10),
                    "y": dim(size=(32, 32), anchor="min", start=0.5, interval=33),
                },
                mk=mark("rectangle"),
                styles={"fill": linear("#fee6ce", "#7f2704")},
            ),
        },
    )


def composite_strip_with_glyphs() -> DslDocument:
    strip = leaf("0-0", cart(0, 0, 100, 30), "area", "area strip")
    ring = leaf("0-a-0", pol(r1=0.15, r2=0.9), "arc", "ring glyph slices")
    template = node("0-a", cart(0, 35, 100, 95), [ring], "row of ring glyphs")
    root = node("0", cart(0, 0, 100, 100), [strip, template], "area strip with glyph row")
    return DslDocument(
        root=root,
        data_specifications={
            "0-0": spec(
                dmatrix(1, "y", 12, "x"),
                {
                    "x": dim(start=1, interval=8),
                    "y": dim(size=(10, 80), anchor="min", distribute="fixed_value", start=0),
                },
                mk=mark("area", link="group_type", direction="x", width=True),
                styles={"fill": fix("#9ecae1"), "opacity": fix(0.7), "line_type": fix("straight")},
            ),
            "0-a": spec(
                d1(5, "x"),
                {"x": dim(size=(17, 17), anchor="min", start=2, interval=19.5)},
            ),
            "0-a-0": spec(
                d1(8, "angle"),
                {
                    "angle": dim(stacking=True, subdividing=True),
                    "radius": dim(size=(100, 100), anchor="min", distribute="fixed_value", start=0),
                },
                mk=mark("arc"),
                styles={"fill": cat(*QUAL[:5])},
            ),
        },
    )


def composite_node_link() -> DslDocument:
    links = leaf("0-0", cart(0, 0, 100, 100), "line", "edges between nodes")
    nodes = leaf("0-1", cart(0, 0, 100, 100), "circle", "node points")
    root = node("0", cart(0, 0, 100, 100), [links, nodes], "node-link diagram")
    return DslDocument(
        root=root,
        data_specifications={
            "0-0": spec(
                d1(16, "x"),
                {},
                mk=mark("line", link="node_link", number=16),
                styles={"stroke": fix("#bbbbbb"), "opacity": fix(0.7)},
                source=["0-1"],
            ),
            "0-1": spec(
                d1(12, "x", "y"),
                {
                    "x": dim(size=(4.5, 4.5), distribute="flexible"),
                    "y": dim(size=(4.5, 4.5), distribute="flexible"),
                },
                mk=mark("circle"),
                styles={"fill": cat(*QUAL[:5])},
            ),
        },
    )


def composite_diverging_stacked_bar() -> DslDocument:
    root = leaf("0", cart(0, 0, 100, 100), "rectangle", "center-stacked horizontal bars")
    return DslDocument(
        root=root,
        data_specifications={
            "0": spec(
                dmatrix(7, "y", 4, "x"),
                {
                    "y": dim(size=(9, 9), anchor="min", start=5, interval=13),
                    "x": dim(stacking=True, direction="middle", size=(4, 22)),
                },
                mk=mark("rectangle"),
                styles={"fill": ord2(*WARM)},
            )
        },
    )


def composite_line_with_dots() -> DslDocument:
    line = leaf("0-0", cart(0, 0, 100, 100), "line", "series line")
    dots = leaf("0-1", cart(0, 0, 100, 100), "circle", "point markers")
    root = node("0", cart(0, 0, 100, 100), [line, dots], "line with dot markers")
    return DslDocument(
        root=root,
        data_specifications={
            "0-0": spec(
                dmatrix(1, "y", 12, "x"),
                {"x": dim(start=2, interval=8), "y": dim(distribute="flexible")},
                mk=mark("line", link="group_type", direction="x"),
                styles={"stroke": fix("#4c78a8"), "stroke_width": fix(2)},
            ),
            "0-1": spec(
                d1(12, "x"),
                {
                    "x": dim(size=(2.5, 2.5), start=2, interval=8),
                    "y": dim(size=(2.5, 2.5), distribute="flexible"),
                },
                mk=mark("circle"),
                styles={"fill": fix("#4c78a8")},
            ),
        },
    )


def composite_area_with_line() -> DslDocument:
    area = leaf("0-0", cart(0, 0, 100, 100), "area", "filled series")
    line = leaf("0-1", cart(0, 0, 100, 100), "line", "overlay series")
    root = node("0", cart(0, 0, 100, 100), [area, line], "area with overlay line")
    return DslDocument(
        root=root,
        data_specifications={
            "0-0": spec(
                dmatrix(1, "y", 14, "x"),
                {
                    "x": dim(start=1, interval=7),
                    "y": dim(size=(8, 75), anchor="min", distribute="fixed_value", start=0),
                },
                mk=mark("area", link="group_type", direction="x", width=True),
                styles={"fill": fix("#9ecae1"), "opacity": fix(0.5), "line_type": fix("straight")},
            ),
            "0-1": spec(
                dmatrix(1, "y", 14, "x"),
                {"x": dim(start=1, interval=7), "y": dim(distribute="flexible")},
                mk=mark("line", link="group_type", direction="x"),
                styles={"stroke": fix("#08306b"), "stroke_width": fix(2)},
            ),
        },
    )


def composite_bar_row_panels() -> DslDocument:
    bars = leaf("0-a-0", cart(6, 15, 94, 94), "rectangle", "bars of one panel")
    template = node("0-a", cart(0, 10, 100, 100), [bars], "row of bar panels")
    band = leaf("0-1", cart(0, 0, 100, 8), "band", "summary ribbon")
    root = node("0", cart(0, 0, 100, 100), [template, band], "bar panels over a ribbon")
    return DslDocument(
        root=root,
        data_specifications={
            "0-a": spec(
                d1(3, "x"),
                {"x": dim(size=(30, 30), anchor="min", start=1, interval=33)},
            ),
            "0-a-0": spec(
                d1(8, "x"),
                {
                    "x": dim(size=(8, 8), anchor="min", start=4, interval=12),
                    "y": dim(size=(6, 88), anchor="min", distribute="fixed_value", start=0),
                },
                mk=mark("rectangle"),
                styles={"fill": fix("#72b7b2")},
            ),
            "0-1": spec(
                dmatrix(1, "y", 8, "x"),
                {
                    "x": dim(start=2, interval=12),
                    "y": dim(size=(30, 60), distribute="fixed_value", start=50),
                },
                mk=mark("band", link="group_type", direction="x", width=True),
                styles={"fill": fix("#f58518"), "opacity": fix(0.6)},
            ),
        },
    )


def composite_stacked_bar_panels() -> DslDocument:
    bars = leaf("0-a-0", cart(4, 8, 96, 96), "rectangle", "stacked bars of one panel")
    template = node("0-a", cart(0, 0, 100, 100), [bars], "two stacked-bar panels")
    root = node("0", cart(0, 0, 100, 100), [template], "stacked-bar panel pair")
    return DslDocument(
        root=root,
        data_specifications={
            "0-a": spec(
                d1(2, "y"),
                {"y": dim(size=(46, 46), anchor="min", start=0, interval=50)},
            ),
            "0-a-0": spec(
                dmatrix(8, "x", 3, "y"),
                {
                    "x": dim(size=(9, 9), anchor="min", start=2, interval=12),
                    "y": dim(stacking=True, size=(4, 26)),
                },
                mk=mark("rectangle"),
                styles={"fill": ord2(*BLUES[:3])},
            ),
        },
    )


def composite_area_row_panels() -> DslDocument:
    area = leaf("0-a-0", cart(2, 10, 98, 95), "area", "area of one row")
    template = node("0-a", cart(0, 0, 100, 100), [area], "stacked rows of areas")
    root = node("0", cart(0, 0, 100, 100), [template], "small-multiple areas")
    return DslDocument(
        root=root,
        data_specifications={
            "0-a": spec(
                d1(4, "y"),
                {"y": dim(size=(23, 23), anchor="min", start=0, interval=25)},
            ),
            "0-a-0": spec(
                dmatrix(1, "y", 14, "x"),
                {
                    "x": dim(start=1, interval=7),
                    "y": dim(size=(10, 85), anchor="min", distribute="fixed_value", start=0),
                },
                mk=mark("area", link="group_type", direction="x", width=True),
                styles={"fill": fix("#4c78a8"), "opacity": fix(0.8), "line_type": fix("straight")},
            ),
        },
    )


def composite_ranked_columns() -> DslDocument:
    names = leaf("0-0", cart(0, 0, 35, 100), "rectangle", "left bar column")
    scores = leaf("0-1", cart(35, 0, 70, 100), "rectangle", "middle bar column")
    heat = leaf("0-2", cart(70, 0, 100, 100), "rectangle", "right heat column")
    root = node("0", cart(0, 0, 100, 100), [names, scores, heat], "ranked column table")
    row_y = dim(size=(8, 8), start=3, interval=10.5)
    return DslDocument(
        root=root,
        data_specifications={
            "0-0": spec(
                d1(9, "y"),
                {
                    "y": row_y,
                    "x": dim(size=(10, 95), anchor="min", distribute="fixed_value", start=0),
                },
                mk=mark("rectangle"),
                styles={"fill": fix("#4c78a8")},
            ),
            "0-1": spec(
                d1(9, "y"),
                {
                    "y": row_y,
                    "x": dim(size=(10, 95), anchor="min", distribute="fixed_value", start=0),
                },
                mk=mark("rectangle"),
                styles={"fill": linear("#e5f5e0", "#00441b")},
            ),
            "0-2": spec(
                dmatrix(3, "x", 9, "y"),
                {
                    "x": dim(size=(30, 30), anchor="min", start=2, interval=32),
                    "y": row_y,
                },
                mk=mark("rectangle"),
                styles={"fill": linear("#fee6ce", "#7f2704")},
            ),
        },
    )


def composite_linked_sets() -> DslDocument:
    bands = leaf("0-0", cart(0, 0, 100, 100), "band", "links between sets")
    circles = leaf("0-1", cart(5, 70, 95, 100), "circle", "top set items")
    rects = leaf("0-2", cart(5, 0, 95, 22), "rectangle", "bottom set blocks")
    root = node("0", cart(0, 0, 100, 100), [bands, circles, rects], "two linked sets")
    return DslDocument(
        root=root,
        data_specifications={
            "0-0": spec(
                d1(8, "x"),
                {},
                mk=mark("band", link="node_link", number=8),
                styles={"stroke": fix("#c0c0c0"), "opacity": fix(0.8)},
                source=["0-1"],
                target=["0-2"],
            ),
            "0-1": spec(
                d1(6, "x"),
                {
                    "x": dim(size=(9, 9), start=5, interval=15),
                    "y": dim(size=(22, 22), distribute="fixed_value", start=50),
                },
                mk=mark("circle"),
                styles={"fill": ord2(*QUAL)},
            ),
            "0-2": spec(
                d1(4, "x"),
                {
                    "x": dim(size=(20, 20), anchor="min", start=4, interval=24),
                    "y": dim(size=(60, 60), anchor="min", distribute="fixed_value", start=0),
                },
                mk=mark("rectangle"),
                styles={"fill": fix("#9ecae1")},
            ),
        },
    )


def composite_glyph_grid() -> DslDocument:
    ring = leaf("0-a-0", pol(r1=0.45, r2=0.95), "arc", "outer ring slices")
    center = leaf("0-a-1", cart(30, 30, 70, 70), "circle", "center dot")
    template = node("0-a", cart(0, 0, 100, 100), [ring, center], "grid of ring glyphs")
    root = node("0", cart(0, 0, 100, 100), [template], "glyph matrix")
    return DslDocument(
        root=root,
        data_specifications={
            "0-a": spec(
                dmatrix(4, "x", 3, "y"),
                {
                    "x": dim(size=(22, 22), anchor="min", start=1, interval=24.5),
                    "y": dim(size=(28, 28), anchor="min", start=2, interval=32),
                },
            ),
            "0-a-0": spec(
                d1(7, "angle"),
                {
                    "angle": dim(stacking=True, subdividing=True),
                    "radius": dim(size=(100, 100), anchor="min", distribute="fixed_value", start=0),
                },
                mk=mark("arc"),
                styles={"fill": ord1(*QUAL)},
            ),
            "0-a-1": spec(
                d1(1, "x", "y"),
                {
                    "x": dim(size=(80, 80), distribute="fixed_value", start=50),
                    "y": dim(size=(80, 80), distribute="fixed_value", start=50),
                },
                mk=mark("circle"),
                styles={"fill": fix("#e45756")},
            ),
        },
    )


GALLERY: dict[str, Callable[[], DslDocument]] = {
    "basic-01-simple-bar": basic_simple_bar,
    "basic-02-radial-bar": basic_radial_bar,
    "basic-03-stacked-bar": basic_stacked_bar,
    "basic-04-radial-stacked-bar": basic_radial_stacked_bar,
    "basic-05-horizontal-stacked-bar": basic_horizontal_stacked_bar,
    "basic-06-grouped-bar": basic_grouped_bar,
    "basic-07-scatter": basic_scatter,
    "basic-08-bubble-1": basic_bubble_1,
    "basic-09-bubble-2": basic_bubble_2,
    "basic-10-binned-scatter": basic_binned_scatter,
    "basic-11-heatmap": basic_heatmap,
    "basic-12-strip-plot": basic_strip_plot,
    "basic-13-dot-plot": basic_dot_plot,
    "basic-14-pie": basic_pie,
    "basic-15-donut": basic_donut,
    "basic-16-line-chart": basic_line_chart,
    "basic-17-parallel-coordinates": basic_parallel_coordinates,
    "basic-18-stacked-area": basic_stacked_area,
    "basic-19-radar": basic_radar,
    "basic-20-mosaic": basic_mosaic,
    "composite-01-faceted-bar": composite_faceted_bar,
    "composite-02-faceted-scatter": composite_faceted_scatter,
    "composite-03-marginal-histograms": composite_marginal_histograms,
    "composite-04-line-with-highlights": composite_line_with_highlights,
    "composite-05-box-plot": composite_box_plot,
    "composite-06-radial-rings": composite_radial_rings,
    "composite-07-linked-bar-panels": composite_linked_bar_panels,
    "composite-08-matrix-with-bars": composite_matrix_with_bars,
    "composite-09-stacked-panels": composite_stacked_panels,
    "composite-10-strip-with-glyphs": composite_strip_with_glyphs,
    "composite-11-node-link": composite_node_link,
    "composite-12-diverging-stacked-bar": composite_diverging_stacked_bar,
    "composite-13-line-with-dots": composite_line_with_dots,
    "composite-14-area-with-line": composite_area_with_line,
    "composite-15-bar-row-panels": composite_bar_row_panels,
    "composite-16-stacked-bar-panels": composite_stacked_bar_panels,
    "composite-17-area-row-panels": composite_area_row_panels,
    "composite-18-ranked-columns": composite_ranked_columns,
    "composite-19-linked-sets": composite_linked_sets,
    "composite-20-glyph-grid": composite_glyph_grid,
}


def build(name: str) -> DslDocument:
    return GALLERY[name]()


def build_all() -> dict[str, DslDocument]:
    return {name: fn() for name, fn in GALLERY.items()}
