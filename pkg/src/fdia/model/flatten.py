"""Structure-preserving flattening of document trees.

flatten() turns a nested document into an ordered map from FlatPath to
scalar Value, keeping the structure in the paths; unflatten() inverts it
exactly, including member order and empty containers (which flatten as
marker values so nothing is lost).
"""

from __future__ import annotations

from fdia.errors import FdiaError
from fdia.model.flatpath import FlatPath, encode_path
from fdia.model.values import Value, ValueKind


class StructureError(FdiaError):
    """A document or flat map that cannot be (un)flattened consistently."""


def _coerce_leaf(obj: object) -> Value:
    if isinstance(obj, Value):
        return obj
    # Convenience for callers building trees out of plain Python scalars.
    if isinstance(obj, bool):
        return Value.boolean(obj)
    if isinstance(obj, int):
        return Value.integer(obj)
    if isinstance(obj, float):
        return Value.real(obj)
    if isinstance(obj, str):
        return Value.string(obj)
    if obj is None:
        return Value.null()
    raise StructureError(f"cannot flatten leaf of type {type(obj).__name__}")


def flatten(document: object) -> dict[FlatPath, Value]:
    """Flatten a tree of dicts/lists/scalars to an ordered path->value map."""
    if not isinstance(document, (dict, list)):
        raise StructureError("document root must be an object or array")
    if not document:
        raise StructureError("cannot flatten an empty root container")
    out: dict[FlatPath, Value] = {}

    def walk(node: object, segments: tuple) -> None:
        if isinstance(node, dict):
            if not node:
                out[FlatPath(segments)] = Value.empty_object()
                return
            for key, child in node.items():
                if not isinstance(key, str):
                    raise StructureError(f"non-string object key: {key!r}")
                walk(child, segments + (key,))
        elif isinstance(node, list):
            if not node:
                out[FlatPath(segments)] = Value.empty_array()
                return
            for index, child in enumerate(node):
                walk(child, segments + (index,))
        else:
            out[FlatPath(segments)] = _coerce_leaf(node)

    walk(document, ())
    return out


class _Pending:
    """A container being rebuilt: children keyed by segment, order retained."""

    __slots__ = ("is_array", "children", "first_path")

    def __init__(self, is_array: bool, first_path: str) -> None:
        self.is_array = is_array
        self.children: dict = {}
        self.first_path = first_path  # printed path of the first leaf below


def unflatten(properties: dict[FlatPath, Value]) -> object:
    """Rebuild the original document tree from a flattened map.

    Raises StructureError for an empty map, for a path that is both a
    leaf and a prefix of another path, for mixed key/index children under
    one parent, and for array indices that do not form 0..n-1.
    """
    if not properties:
        raise StructureError("empty record: no document root can be inferred")

    root: _Pending | None = None

    for path, value in properties.items():
        path_text = encode_path(path)
        segments = path.segments
        if root is None:
            root = _Pending(isinstance(segments[0], int), path_text)
        node = root
        for depth, seg in enumerate(segments):
            if node.is_array != isinstance(seg, int):
                prefix = encode_path(FlatPath(segments[:depth])) if depth else "<root>"
                raise StructureError(
                    f"conflicting paths: {path_text!r} addresses {prefix!r} as "
                    f"{'an array' if isinstance(seg, int) else 'an object'} "
                    f"but {node.first_path!r} made it the other"
                )
            last = depth == len(segments) - 1
            if last:
                if seg in node.children:
                    existing = node.children[seg]
                    other = (
                        existing.first_path
                        if isinstance(existing, _Pending)
                        else path_text
                    )
                    raise StructureError(
                        f"conflicting paths: {path_text!r} is a leaf but is also "
                        f"a prefix of {other!r}"
                    )
                node.children[seg] = value
            else:
                child = node.children.get(seg)
                if child is None:
                    child = _Pending(isinstance(segments[depth + 1], int), path_text)
                    node.children[seg] = child
                elif not isinstance(child, _Pending):
                    leaf_path = encode_path(FlatPath(segments[: depth + 1]))
                    raise StructureError(
                        f"conflicting paths: {leaf_path!r} is a leaf but is also "
                        f"a prefix of {path_text!r}"
                    )
                node = child

    assert root is not None
    return _finalize(root)


def _finalize(node: object) -> object:
    if not isinstance(node, _Pending):
        value = node
        assert isinstance(value, Value)
        if value.kind is ValueKind.EMPTY_OBJECT:
            return {}
        if value.kind is ValueKind.EMPTY_ARRAY:
            return []
        return value
    if node.is_array:
        indices = sorted(node.children)
        for position, index in enumerate(indices):
            if index != position:
                raise StructureError(f"non-contiguous array index {index}")
        return [_finalize(node.children[i]) for i in indices]
    return {key: _finalize(child) for key, child in node.children.items()}
