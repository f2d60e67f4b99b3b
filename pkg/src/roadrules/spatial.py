"""Static bounding-rectangle tree over 2D points.

Bulk-loaded once, immutable afterwards. Rectangle pruning only narrows the
candidate set; callers apply their own exact distance predicate, so query
results are identical to a linear scan.
"""

from __future__ import annotations

from typing import Generic, Sequence, TypeVar

T = TypeVar("T")

_LEAF_CAPACITY = 8


class _Node(Generic[T]):
    __slots__ = ("min_x", "min_y", "max_x", "max_y", "children", "entries")

    def __init__(self, entries: list[tuple[float, float, T]] | None, children: list["_Node[T]"] | None):
        self.entries = entries
        self.children = children
        if entries is not None:
            self.min_x = min(e[0] for e in entries)
            self.max_x = max(e[0] for e in entries)
            self.min_y = min(e[1] for e in entries)
            self.max_y = max(e[1] for e in entries)
        else:
            assert children
            self.min_x = min(c.min_x for c in children)
            self.max_x = max(c.max_x for c in children)
            self.min_y = min(c.min_y for c in children)
            self.max_y = max(c.max_y for c in children)


def _build(entries: list[tuple[float, float, T]]) -> _Node[T]:
    if len(entries) <= _LEAF_CAPACITY:
        return _Node(entries, None)
    spread_x = max(e[0] for e in entries) - min(e[0] for e in entries)
    spread_y = max(e[1] for e in entries) - min(e[1] for e in entries)
    axis = 0 if spread_x >= spread_y else 1
    entries.sort(key=lambda e: (e[axis], e[1 - axis]))
    mid = len(entries) // 2
    return _Node(None, [_build(entries[:mid]), _build(entries[mid:])])


class RectTree(Generic[T]):
    """Immutable rectangle hierarchy answering axis-aligned range queries."""

    def __init__(self, entries: Sequence[tuple[float, float, T]]):
        self._root = _build(list(entries)) if entries else None

    def search(self, min_x: float, min_y: float, max_x: float, max_y: float) -> list[T]:
        """All items whose point lies inside the closed query rectangle."""
        hits: list[T] = []
        if self._root is None:
            return hits
        stack = [self._root]
        while stack:
            node = stack.pop()
            if node.min_x > max_x or node.max_x < min_x or node.min_y > max_y or node.max_y < min_y:
                continue
            if node.entries is not None:
                for x, y, item in node.entries:
                    if min_x <= x <= max_x and min_y <= y <= max_y:
                        hits.append(item)
            else:
                stack.extend(node.children)  # type: ignore[arg-type]
        return hits
