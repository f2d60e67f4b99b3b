"""Deterministic ordering for opaque identifiers (ints or strings)."""

from __future__ import annotations

Identifier = int | str


def id_sort_key(value: Identifier) -> tuple:
    """Sort key that keeps mixed int/str identifier sets totally ordered."""
    if isinstance(value, str):
        return (1, value)
    return (0, value)
