"""Structural edits over immutable documents.

Every operation returns a new document; the input is never mutated.  Edits
check the invariants they could break and raise :class:`EditError` instead
of producing a broken tree.
"""

from __future__ import annotations

import string
from dataclasses import replace
from typing import Mapping, Optional, Union

from .model import (
    ContainerNode,
    DataSpecification,
    DslDocument,
    EditError,
    Frame,
    UnknownContainerError,
    frame_problems,
    id_segments,
    is_template_id,
    is_valid_id,
    parent_id,
)


def _replace_node(
    root: ContainerNode, target_id: str, new_node: Optional[ContainerNode]
) -> ContainerNode:
    """Return a tree with ``target_id`` replaced (or removed when None)."""
    if root.id == target_id:
        if new_node is None:
            raise EditError("cannot remove the root container")
        return new_node
    children = []
    changed = False
    for child in root.children:
        if child.id == target_id:
            changed = True
            if new_node is not None:
                children.append(new_node)
        elif target_id.startswith(child.id + "-"):
            children.append(_replace_node(child, target_id, new_node))
            changed = True
        else:
            children.append(child)
    if not changed:
        return root
    return replace(root, children=tuple(children))


def _find_with_parent(
    doc: DslDocument, container_id: str
) -> tuple[ContainerNode, Optional[ContainerNode]]:
    for node, parent in doc.root.walk_with_parent():
        if node.id == container_id:
            return node, parent
    raise UnknownContainerError(container_id)


def _check_frame(frame: Frame) -> None:
    problems = frame_problems(frame)
    if problems:
        raise EditError("; ".join(problems))


def edit_frame(doc: DslDocument, container_id: str, new_frame: Frame) -> DslDocument:
    """Change one container's coordinate frame, leaving children untouched.

    Child layout is relative to the parent frame, so descendants simply
    rescale.  Switching between cartesian and polar is only possible while
    the surrounding frame is cartesian, and never when it would push a
    cartesian descendant inside a polar frame.
    """
    node, parent = _find_with_parent(doc, container_id)
    _check_frame(new_frame)
    if new_frame.kind != node.frame.kind:
        parent_kind = parent.frame.kind if parent is not None else "cartesian"
        if parent_kind != "cartesian":
            raise EditError(
                "coordinate kind can only change for containers inside a cartesian frame"
            )
        if new_frame.kind == "polar" and any(
            c.frame.kind == "cartesian" for child in node.children for c in child.walk()
        ):
            raise EditError(
                "switching to polar would nest cartesian descendants inside a polar frame"
            )
    return doc.with_root(_replace_node(doc.root, container_id, replace(node, frame=new_frame)))


def _remap_id(cid: str, old_prefix: str, new_prefix: str) -> str:
    assert cid == old_prefix or cid.startswith(old_prefix + "-")
    return new_prefix + cid[len(old_prefix):]


def _clone_subtree(node: ContainerNode, old_prefix: str, new_prefix: str) -> ContainerNode:
    return replace(
        node,
        id=_remap_id(node.id, old_prefix, new_prefix),
        children=tuple(_clone_subtree(c, old_prefix, new_prefix) for c in node.children),
    )


def _used_template_letters(doc: DslDocument) -> set[str]:
    return {id_segments(n.id)[-1] for n in doc.walk() if n.is_template}


def _fresh_sibling_id(doc: DslDocument, parent: ContainerNode, template: bool) -> str:
    if template:
        used = _used_template_letters(doc)
        for letter in string.ascii_lowercase:
            if letter not in used:
                return f"{parent.id}-{letter}"
        raise EditError("no template letters left")
    used_ints = {
        int(id_segments(c.id)[-1]) for c in parent.children if id_segments(c.id)[-1].isdigit()
    }
    n = 0
    while n in used_ints:
        n += 1
    return f"{parent.id}-{n}"


def duplicate_container(
    doc: DslDocument, container_id: str, new_frame: Frame
) -> tuple[DslDocument, str]:
    """Deep-copy a subtree as a fresh sibling, data specifications included."""
    node, parent = _find_with_parent(doc, container_id)
    if parent is None:
        raise EditError("cannot duplicate the root container")
    _check_frame(new_frame)
    if new_frame.kind != node.frame.kind:
        raise EditError("the duplicate must keep the original coordinate kind")
    new_id = _fresh_sibling_id(doc, parent, template=is_template_id(container_id))
    clone = _clone_subtree(node, container_id, new_id)
    clone = replace(clone, frame=new_frame)
    new_parent = replace(parent, children=parent.children + (clone,))
    root = _replace_node(doc.root, parent.id, new_parent)
    specs = dict(doc.data_specifications)
    for cid, spec in doc.data_specifications.items():
        if cid == container_id or cid.startswith(container_id + "-"):
            specs[_remap_id(cid, container_id, new_id)] = spec
    return DslDocument(root=root, data_specifications=specs), new_id


def remove_container(doc: DslDocument, container_id: str) -> DslDocument:
    """Remove a subtree plus its spec entries and dangling link references."""
    node, parent = _find_with_parent(doc, container_id)
    if parent is None:
        raise EditError("cannot remove the root container")
    if len(parent.children) == 1:
        raise EditError(
            f"cannot remove the only child of {parent.id!r}; remove or edit the parent instead"
        )
    removed = {n.id for n in node.walk()}
    root = _replace_node(doc.root, container_id, None)
    specs = {}
    for cid, spec in doc.data_specifications.items():
        if cid in removed:
            continue
        layout = spec.layout_specification
        if layout.source or layout.target:
            prune = lambda ids: tuple(i for i in ids if i not in removed) if ids else ids
            layout = replace(layout, source=prune(layout.source), target=prune(layout.target))
            spec = replace(spec, layout_specification=layout)
        specs[cid] = spec
    return DslDocument(root=root, data_specifications=specs)


SpecArg = Union[DataSpecification, Mapping[str, DataSpecification], None]


def add_subcontainer(
    doc: DslDocument, parent_id_: str, node: ContainerNode, spec: SpecArg = None
) -> DslDocument:
    """Attach a new subtree under an existing non-leaf container.

    ``spec`` may be a single specification for ``node`` itself or a map from
    container id to specification for the new subtree.  A missing spec is
    allowed here and reported by ``validate``.
    """
    parent, _ = _find_with_parent(doc, parent_id_)
    if parent.is_leaf:
        raise EditError(f"{parent_id_!r} is a leaf container; it cannot take children")
    for sub in node.walk():
        if not is_valid_id(sub.id):
            raise EditError(f"invalid container id {sub.id!r}")
        if doc.root.find(sub.id) is not None:
            raise EditError(f"container id {sub.id!r} already exists")
    if parent_id(node.id) != parent.id:
        raise EditError(f"{node.id!r} is not a direct child id of {parent.id!r}")
    if parent.frame.kind == "polar":
        for sub in node.walk():
            if sub.frame.kind == "cartesian":
                raise EditError(
                    "cartesian containers are not allowed inside a polar container"
                )
    _check_frame(node.frame)

    new_parent = replace(parent, children=parent.children + (node,))
    root = _replace_node(doc.root, parent.id, new_parent)
    specs = dict(doc.data_specifications)
    if isinstance(spec, DataSpecification):
        specs[node.id] = spec
    elif spec:
        subtree_ids = {n.id for n in node.walk()}
        for cid, entry in spec.items():
            if cid not in subtree_ids:
                raise EditError(f"specification for {cid!r} does not match the new subtree")
            specs[cid] = entry
    return DslDocument(root=root, data_specifications=specs)


def with_spec(doc: DslDocument, container_id: str, spec: DataSpecification) -> DslDocument:
    """Replace one container's data specification."""
    doc.find_container(container_id)
    specs = dict(doc.data_specifications)
    specs[container_id] = spec
    return doc.with_specs(specs)
