"""Resolution of abstract per-dimension layouts into concrete extents.

All positions live in a normalized [0, 100] space along one dimension.
``resolve_dimension`` turns one :class:`LayoutDimensionSpec` plus element
values into extents; ``instantiate_template`` applies the same machinery to
a template container's data structure to produce per-instance frames.

Randomness never enters here: data-driven sizes and flexible positions
consume caller-provided element values, so identical inputs always produce
bitwise-identical extents.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .model import (
    CartesianFrame,
    DataSpecification,
    DataStructure,
    Frame,
    LayoutDimensionSpec,
    LayoutSpecification,
    PolarFrame,
)


class LayoutError(Exception):
    pass


@dataclass(frozen=True)
class Extent:
    start: float
    end: float

    @property
    def size(self) -> float:
        return self.end - self.start

    @property
    def center(self) -> float:
        return (self.start + self.end) / 2


@dataclass(frozen=True)
class InstanceBox:
    """One template instance, expressed in the template's parent units."""

    frame: Frame
    group_index: int
    item_index: int


def _clamp(value: float) -> float:
    return min(100.0, max(0.0, value))


def _clamped(start: float, end: float) -> Extent:
    start, end = _clamp(start), _clamp(end)
    if end < start:
        start = end
    return Extent(start, end)


def _sizes(spec: LayoutDimensionSpec, values: Sequence[float]) -> list[float]:
    lo, hi = spec.size_range
    if spec.size_uniform:
        return [lo] * len(values)
    return [lo + v * (hi - lo) for v in values]


def resolve_dimension(
    spec: LayoutDimensionSpec,
    count: int,
    values: Optional[Sequence[float]] = None,
    pos_values: Optional[Sequence[float]] = None,
) -> list[Extent]:
    """Resolve one dimension into ``count`` extents in [0, 100].

    ``values`` drive data-driven sizes (and stack subdivision weights);
    ``pos_values`` drive flexible anchor positions and default to
    ``values``.  Out-of-range results are clamped rather than rejected.
    """
    if count < 1:
        raise LayoutError("count must be >= 1")
    if values is None:
        values = [1.0] * count
    if len(values) != count:
        raise LayoutError(f"expected {count} values, got {len(values)}")
    if pos_values is None:
        pos_values = values
    if len(pos_values) != count:
        raise LayoutError(f"expected {count} position values, got {len(pos_values)}")

    if spec.stacking:
        if spec.subdividing:
            total = sum(values)
            if total <= 0:
                weights = [1.0] * count
                total = float(count)
            else:
                weights = list(values)
            bounds = [0.0]
            acc = 0.0
            for w in weights:
                acc += w
                bounds.append(100.0 * acc / total)
            bounds[-1] = 100.0
            return [Extent(bounds[i], bounds[i + 1]) for i in range(count)]
        sizes = _sizes(spec, values)
        prefix = [0.0]
        for s in sizes:
            prefix.append(prefix[-1] + s)
        total = prefix[-1]
        if spec.stacking_direction == "max":
            return [
                _clamped(100.0 - prefix[i + 1], 100.0 - prefix[i]) for i in range(count)
            ]
        offset = 50.0 - total / 2 if spec.stacking_direction == "middle" else 0.0
        return [_clamped(offset + prefix[i], offset + prefix[i + 1]) for i in range(count)]

    sizes = _sizes(spec, values)
    if spec.anchor_distribute == "fixed_value":
        if spec.anchor_start is None:
            raise LayoutError("fixed_value needs anchor_start")
        positions = [spec.anchor_start] * count
    elif spec.anchor_distribute == "uniform_interval":
        if spec.anchor_start is None or spec.anchor_interval is None:
            raise LayoutError("uniform_interval needs anchor_start and anchor_interval")
        positions = [spec.anchor_start + i * spec.anchor_interval for i in range(count)]
    else:  # flexible
        positions = [v * 100.0 for v in pos_values]

    extents = []
    for p, s in zip(positions, sizes):
        if spec.anchor == "min":
            extents.append(_clamped(p, p + s))
        elif spec.anchor == "max":
            extents.append(_clamped(p - s, p))
        else:  # middle (and stacking_decided, which only occurs when stacking)
            extents.append(_clamped(p - s / 2, p + s / 2))
    return extents


# ---------------------------------------------------------------------------
# Structure-wide extents

ValueFn = Callable[[str, str, int, int], float]
"""(level, dimension, group_index, item_index) -> value in [0, 1].

``level`` is "item" or "group"; for groups the item index is -1.
"""


def constant_values(value: float = 1.0) -> ValueFn:
    return lambda level, dim, g, k: value


def structure_extents(
    structure: DataStructure,
    layout: LayoutSpecification,
    value_fn: ValueFn,
    cross_group_stack_dims: frozenset[str] = frozenset(),
) -> dict[str, list[list[Extent]]]:
    """Per-dimension extents for every (group, item) cell of a structure.

    Returns ``extents[dim][g][k]``.  Dimensions listed in
    ``cross_group_stack_dims`` (used for stacked link marks) stack across
    groups at each item index instead of across items within a group.
    """
    group_sizes = structure.group_sizes()
    n_groups = len(group_sizes)
    primary_dims = structure.primary.dimension
    secondary_dims = structure.secondary.dimension if structure.secondary else ()

    out: dict[str, list[list[Extent]]] = {}
    for dim, spec in layout.dimensions.items():
        if structure.data_type == "1D_list":
            n = group_sizes[0]
            values = [value_fn("item", dim, 0, k) for k in range(n)]
            out[dim] = [resolve_dimension(spec, n, values)]
            continue

        if dim in cross_group_stack_dims:
            # One stack per item index, elements ordered by group.
            n_items = max(group_sizes)
            per_group: list[list[Extent]] = [[] for _ in range(n_groups)]
            for k in range(n_items):
                members = [g for g in range(n_groups) if k < group_sizes[g]]
                values = [value_fn("item", dim, g, k) for g in members]
                extents = resolve_dimension(spec, len(members), values)
                for g, ext in zip(members, extents):
                    per_group[g].append(ext)
            out[dim] = per_group
            continue

        if dim in primary_dims and dim in secondary_dims:
            # Same-dimension nesting (grouped bars): equal primary slots,
            # the dimension spec resolved inside each slot.
            slots = resolve_dimension(
                LayoutDimensionSpec(stacking=True, subdividing=True, anchor="stacking_decided"),
                n_groups,
            )
            per_group = []
            for g, slot in enumerate(slots):
                n = group_sizes[g]
                values = [value_fn("item", dim, g, k) for k in range(n)]
                inner = resolve_dimension(spec, n, values)
                scale = slot.size / 100.0
                per_group.append(
                    [
                        Extent(slot.start + e.start * scale, slot.start + e.end * scale)
                        for e in inner
                    ]
                )
            out[dim] = per_group
            continue

        if dim in primary_dims:
            group_values = [value_fn("group", dim, g, -1) for g in range(n_groups)]
            group_extents = resolve_dimension(spec, n_groups, group_values)
            out[dim] = [
                [group_extents[g]] * group_sizes[g] for g in range(n_groups)
            ]
            continue

        # Secondary or value dimension: items within each group.
        per_group = []
        for g in range(n_groups):
            n = group_sizes[g]
            values = [value_fn("item", dim, g, k) for k in range(n)]
            per_group.append(resolve_dimension(spec, n, values))
        out[dim] = per_group
    return out


# ---------------------------------------------------------------------------
# Template instantiation


def _subframe(frame: Frame, by_dim: dict[str, Extent]) -> Frame:
    full = Extent(0.0, 100.0)
    if isinstance(frame, CartesianFrame):
        ux = by_dim.get("x", full)
        uy = by_dim.get("y", full)
        w, h = frame.x2 - frame.x1, frame.y2 - frame.y1
        return CartesianFrame(
            x1=frame.x1 + ux.start / 100.0 * w,
            y1=frame.y1 + uy.start / 100.0 * h,
            x2=frame.x1 + ux.end / 100.0 * w,
            y2=frame.y1 + uy.end / 100.0 * h,
        )
    ur = by_dim.get("radius", full)
    ua = by_dim.get("angle", full)
    rspan, aspan = frame.r2 - frame.r1, frame.a2 - frame.a1
    return PolarFrame(
        cx=frame.cx,
        cy=frame.cy,
        r1=frame.r1 + ur.start / 100.0 * rspan,
        r2=frame.r1 + ur.end / 100.0 * rspan,
        a1=frame.a1 + ua.start / 100.0 * aspan,
        a2=frame.a1 + ua.end / 100.0 * aspan,
    )


def instantiate_template(
    spec: DataSpecification,
    template_frame: Frame,
    value_fn: Optional[ValueFn] = None,
) -> list[InstanceBox]:
    """One frame per data item of the template's structure, row-major.

    A single-instance template degenerates to the template frame itself.
    """
    if not spec.is_template_spec:
        raise LayoutError("expected a template specification (no mark_specification)")
    structure = spec.data_structure
    group_sizes = structure.group_sizes()
    total = sum(group_sizes)
    if total == 1:
        return [InstanceBox(frame=template_frame, group_index=0, item_index=0)]
    if value_fn is None:
        value_fn = constant_values()

    for count in filter(None, (structure.primary, structure.secondary)):
        for d in count.dimension:
            if d not in spec.layout_specification.dimensions:
                raise LayoutError(
                    f"data structure uses dimension {d!r} but the layout has no entry for it"
                )

    extents = structure_extents(structure, spec.layout_specification, value_fn)
    boxes = []
    for g, size in enumerate(group_sizes):
        for k in range(size):
            by_dim = {dim: extents[dim][g][k] for dim in extents}
            boxes.append(
                InstanceBox(frame=_subframe(template_frame, by_dim), group_index=g, item_index=k)
            )
    return boxes
