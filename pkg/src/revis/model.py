"""Core document model for the hierarchical-container chart DSL.

A visualization is a tree of containers.  Every container owns a coordinate
frame (cartesian rectangle or polar annulus sector) that defines the space
its children are positioned in.  Leaf containers hold exactly one visual
mark type; template containers (ids ending in a letter segment) stand for a
set of repeated, data-driven instances.  All per-container data rules live
in a root-level map from container id to :class:`DataSpecification`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Iterator, Mapping, Optional, Union

MARK_TYPES = ("circle", "arc", "rectangle", "line", "band", "area")
DIMENSIONS = ("x", "y", "radius", "angle")
LINK_MARK_TYPES = ("no_link", "group_type", "node_link")
DATA_TYPES = ("1D_list", "2D_matrix", "2D_list")
STACK_DIRECTIONS = ("min", "middle", "max")
ANCHORS = ("min", "middle", "max", "stacking_decided")
ANCHOR_DISTRIBUTES = ("fixed_value", "uniform_interval", "flexible")
SCALES = ("fix", "linear", "ordinal_primary", "ordinal_secondary", "categorical")
STYLE_ATTRS = ("fill", "stroke", "stroke_width", "opacity", "line_type", "rx", "ry")
LINE_TYPES = ("straight", "curve")

# Schema fields carried through from structured-output responses but not
# interpreted anywhere in the toolchain.
MARK_PASSTHROUGH_FIELDS = ("node_use_once", "is_fully_connected", "is_bipartite")

_COLOR_RE = re.compile(r"^#[0-9a-fA-F]{6}$")
_ID_SEGMENT_RE = re.compile(r"^(?:\d+|[a-z])$")


class DslError(Exception):
    """Base class for all DSL-level failures."""


class UnknownContainerError(DslError):
    def __init__(self, container_id: str):
        super().__init__(f"unknown container id: {container_id!r}")
        self.container_id = container_id


class DslParseError(DslError):
    """Raised when a serialized document cannot be decoded.

    ``path`` pinpoints the offending location as a JSON-ish path such as
    ``$.components[1].coordinate_system.x1``.
    """

    def __init__(self, path: str, reason: str):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


class EditError(DslError):
    """Raised when a structural edit would break a document invariant."""


# ---------------------------------------------------------------------------
# Container ids


def id_segments(container_id: str) -> list[str]:
    return container_id.split("-")


def is_valid_id(container_id: str) -> bool:
    if not container_id:
        return False
    segs = id_segments(container_id)
    if segs[0] != "0":
        return False
    return all(_ID_SEGMENT_RE.match(s) for s in segs)


def parent_id(container_id: str) -> Optional[str]:
    segs = id_segments(container_id)
    if len(segs) <= 1:
        return None
    return "-".join(segs[:-1])


def is_template_id(container_id: str) -> bool:
    return bool(container_id) and id_segments(container_id)[-1].isalpha()


def id_sort_key(container_id: str):
    """Sort key placing numeric segments in numeric order, letters after."""
    key = []
    for seg in id_segments(container_id):
        if seg.isdigit():
            key.append((0, int(seg), ""))
        else:
            key.append((1, 0, seg))
    return key


def is_color(value: object) -> bool:
    return isinstance(value, str) and bool(_COLOR_RE.match(value))


# ---------------------------------------------------------------------------
# Coordinate frames


@dataclass(frozen=True)
class CartesianFrame:
    """Axis-aligned rectangle in the parent's coordinate space, y grows up."""

    x1: float
    y1: float
    x2: float
    y2: float

    kind = "cartesian"


@dataclass(frozen=True)
class PolarFrame:
    """Annulus sector: center as fractions of the parent frame, radii as
    fractions of the parent's radial span, angles in degrees (0 at 12
    o'clock, clockwise)."""

    cx: float
    cy: float
    r1: float
    r2: float
    a1: float
    a2: float

    kind = "polar"


Frame = Union[CartesianFrame, PolarFrame]


def frame_problems(frame: Frame) -> list[str]:
    """Local invariant violations of a frame, as human-readable strings."""
    problems = []
    if isinstance(frame, CartesianFrame):
        if not frame.x1 < frame.x2:
            problems.append(f"x1 must be < x2 (got x1={frame.x1}, x2={frame.x2})")
        if not frame.y1 < frame.y2:
            problems.append(f"y1 must be < y2 (got y1={frame.y1}, y2={frame.y2})")
    else:
        if not (0 <= frame.r1 < frame.r2 <= 1):
            problems.append(
                f"radii must satisfy 0 <= r1 < r2 <= 1 (got r1={frame.r1}, r2={frame.r2})"
            )
        if not frame.a1 < frame.a2:
            problems.append(f"a1 must be < a2 (got a1={frame.a1}, a2={frame.a2})")
        elif frame.a2 - frame.a1 > 360 + 1e-9:
            problems.append(f"angular span must be <= 360 (got {frame.a2 - frame.a1})")
    return problems


# ---------------------------------------------------------------------------
# Container tree


@dataclass(frozen=True)
class ContainerNode:
    id: str
    frame: Frame
    description: str = ""
    is_leaf: bool = False
    mark_type: Optional[str] = None
    children: tuple["ContainerNode", ...] = ()

    @property
    def is_template(self) -> bool:
        return is_template_id(self.id)

    def walk(self) -> Iterator["ContainerNode"]:
        yield self
        for child in self.children:
            yield from child.walk()

    def walk_with_parent(
        self, parent: Optional["ContainerNode"] = None
    ) -> Iterator[tuple["ContainerNode", Optional["ContainerNode"]]]:
        yield self, parent
        for child in self.children:
            yield from child.walk_with_parent(self)

    def find(self, container_id: str) -> Optional["ContainerNode"]:
        for node in self.walk():
            if node.id == container_id:
                return node
        return None


# ---------------------------------------------------------------------------
# Data specification


@dataclass(frozen=True)
class MarkSpecification:
    mark_type: str
    is_link_mark: bool = False
    link_mark_type: str = "no_link"
    group_link_direction: Optional[str] = None
    link_number: Optional[int] = None
    is_width_encoded_data: bool = False
    # Parsed and preserved, never interpreted.
    extras: Mapping[str, object] = field(default_factory=dict)


@dataclass(frozen=True)
class DimensionCount:
    """One side (primary or secondary) of a data structure.

    ``dimension`` is a tuple of one or two layout dimensions; ``number`` is a
    scalar count, except for a 2D_list secondary where it is a tuple of
    per-group counts.
    """

    number: Union[int, tuple[int, ...]]
    dimension: tuple[str, ...]
    explanation: str = ""


@dataclass(frozen=True)
class DataStructure:
    data_type: str
    primary: DimensionCount
    secondary: Optional[DimensionCount] = None

    def group_sizes(self) -> list[int]:
        """Item counts per group; a 1D list is one flat group."""
        if self.data_type == "1D_list":
            return [int(self.primary.number)]
        if self.data_type == "2D_matrix":
            return [int(self.secondary.number)] * int(self.primary.number)
        return [int(n) for n in self.secondary.number]

    def total_items(self) -> int:
        return sum(self.group_sizes())


@dataclass(frozen=True)
class LayoutDimensionSpec:
    stacking: bool = False
    stacking_direction: str = "min"
    subdividing: bool = False
    flatten_2d: bool = False
    size_uniform: bool = True
    size_range: tuple[float, float] = (0.0, 0.0)
    anchor: str = "middle"
    anchor_distribute: str = "uniform_interval"
    anchor_start: Optional[float] = None
    anchor_interval: Optional[float] = None


@dataclass(frozen=True)
class LayoutSpecification:
    dimensions: Mapping[str, LayoutDimensionSpec] = field(default_factory=dict)
    source: Optional[tuple[str, ...]] = None
    target: Optional[tuple[str, ...]] = None


@dataclass(frozen=True)
class NonLayoutAttribute:
    scale: str
    fix: Optional[object] = None
    linear: Optional[tuple[object, object]] = None
    options: Optional[tuple[object, ...]] = None


@dataclass(frozen=True)
class DataSpecification:
    data_structure: DataStructure
    layout_specification: LayoutSpecification
    mark_specification: Optional[MarkSpecification] = None
    non_layout_specification: Optional[Mapping[str, NonLayoutAttribute]] = None

    @property
    def is_template_spec(self) -> bool:
        return self.mark_specification is None

    def styles(self) -> Mapping[str, NonLayoutAttribute]:
        return self.non_layout_specification or {}


# ---------------------------------------------------------------------------
# Document


@dataclass(frozen=True)
class DslDocument:
    root: ContainerNode
    data_specifications: Mapping[str, DataSpecification] = field(default_factory=dict)

    def find_container(self, container_id: str) -> ContainerNode:
        node = self.root.find(container_id)
        if node is None:
            raise UnknownContainerError(container_id)
        return node

    def walk(self) -> Iterator[ContainerNode]:
        return self.root.walk()

    def leaves(self) -> list[ContainerNode]:
        return [n for n in self.walk() if n.is_leaf]

    def templates(self) -> list[ContainerNode]:
        return [n for n in self.walk() if n.is_template]

    def spec_for(self, container_id: str) -> DataSpecification:
        try:
            return self.data_specifications[container_id]
        except KeyError:
            raise UnknownContainerError(container_id) from None

    def specced_ids(self) -> list[str]:
        """Ids that must carry a data specification: leaves and templates."""
        return sorted(
            {n.id for n in self.walk() if n.is_leaf or n.is_template},
            key=id_sort_key,
        )

    def with_root(self, root: ContainerNode) -> "DslDocument":
        return replace(self, root=root)

    def with_specs(self, specs: Mapping[str, DataSpecification]) -> "DslDocument":
        return replace(self, data_specifications=dict(specs))
