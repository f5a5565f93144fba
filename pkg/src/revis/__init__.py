"""revis: reverse-engineer bitmap charts into an editable container DSL.

The toolchain parses chart images into a hierarchical-container DSL via a
three-step structured-output pipeline, mocks plausible data from the DSL,
renders it back to SVG, scores reproductions against ground truth, and
serves a live editing API.
"""

from .model import (
    CartesianFrame,
    ContainerNode,
    DataSpecification,
    DataStructure,
    DimensionCount,
    DslDocument,
    DslError,
    DslParseError,
    EditError,
    LayoutDimensionSpec,
    LayoutSpecification,
    MarkSpecification,
    NonLayoutAttribute,
    PolarFrame,
    UnknownContainerError,
)
from .io import load_document, parse_document, save_document, serialize
from .validate import validate, ValidationReport
from .render import render_document

__all__ = [
    "CartesianFrame",
    "ContainerNode",
    "DataSpecification",
    "DataStructure",
    "DimensionCount",
    "DslDocument",
    "DslError",
    "DslParseError",
    "EditError",
    "LayoutDimensionSpec",
    "LayoutSpecification",
    "MarkSpecification",
    "NonLayoutAttribute",
    "PolarFrame",
    "UnknownContainerError",
    "load_document",
    "parse_document",
    "save_document",
    "serialize",
    "validate",
    "ValidationReport",
    "render_document",
]

__version__ = "0.1.0"
