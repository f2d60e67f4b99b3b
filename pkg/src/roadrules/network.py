"""Directed road-network graph.

Nodes are intersections; edges are one navigable direction of a street, so a
two-way street contributes two edges paired through ``opposite``. Edges carry
the per-run ``visited``/``banned`` flags; :meth:`RoadGraph.reset_run_state`
returns a graph to its pristine state so it can be reused across runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import GraphError
from .geometry import LocalProjection, Point, Polyline, distance
from .ids import Identifier, id_sort_key

NodeId = Identifier
EdgeId = Identifier

ENDPOINT_TOLERANCE = 1e-3  # meters


@dataclass
class Node:
    id: NodeId
    position: Point
    outgoing: list[EdgeId] = field(default_factory=list)


@dataclass
class DirectedEdge:
    id: EdgeId
    source: NodeId
    destination: NodeId
    geometry: Polyline
    opposite: EdgeId | None = None
    visited: bool = False
    banned: bool = False


class RoadGraph:
    """Validated graph with deterministic, id-ordered iteration."""

    def __init__(self, nodes: dict, edges: dict, projection: LocalProjection | None = None):
        self.nodes: dict[NodeId, Node] = nodes
        self.edges: dict[EdgeId, DirectedEdge] = edges
        self.projection = projection

    def node(self, node_id: NodeId) -> Node:
        try:
            return self.nodes[node_id]
        except KeyError:
            raise GraphError(f"unknown node {node_id!r}") from None

    def edge(self, edge_id: EdgeId) -> DirectedEdge:
        try:
            return self.edges[edge_id]
        except KeyError:
            raise GraphError(f"unknown edge {edge_id!r}") from None

    def outgoing_edges(self, node_id: NodeId) -> list[DirectedEdge]:
        """Edges leaving ``node_id`` in EdgeId order."""
        return [self.edges[eid] for eid in self.node(node_id).outgoing]

    def opposite_of(self, edge_id: EdgeId) -> DirectedEdge | None:
        """The paired reverse-direction edge, or None for one-way input edges."""
        opposite = self.edge(edge_id).opposite
        return None if opposite is None else self.edges[opposite]

    def reset_run_state(self) -> None:
        for edge in self.edges.values():
            edge.visited = False
            edge.banned = False


def _reversed_match(a: Polyline, b: Polyline, tol: float) -> bool:
    if len(a.vertices) != len(b.vertices):
        return False
    return all(
        distance(p, q) <= tol for p, q in zip(a.vertices, reversed(b.vertices))
    )


def build_graph(
    nodes: Iterable[tuple[NodeId, Point]] | Mapping[NodeId, Point],
    edges: Iterable[tuple[EdgeId, NodeId, NodeId, Polyline]],
    opposite_pairs: Iterable[tuple[EdgeId, EdgeId]] | None = None,
    projection: LocalProjection | None = None,
) -> RoadGraph:
    """Assemble and validate a road graph.

    ``nodes``: (node_id, position) pairs. ``edges``: (edge_id, source,
    destination, geometry) tuples whose geometry starts at the source position
    and ends at the destination position (within 1 mm). When
    ``opposite_pairs`` is None, opposites are auto-detected as the unique edge
    with swapped endpoints and reversed geometry.
    """
    node_items = nodes.items() if isinstance(nodes, Mapping) else nodes
    node_map: dict[NodeId, Node] = {}
    for node_id, position in node_items:
        if node_id in node_map:
            raise GraphError(f"duplicate node id {node_id!r}")
        node_map[node_id] = Node(node_id, position)

    edge_map: dict[EdgeId, DirectedEdge] = {}
    for edge_id, source, destination, geometry in edges:
        if edge_id in edge_map:
            raise GraphError(f"duplicate edge id {edge_id!r}")
        for endpoint in (source, destination):
            if endpoint not in node_map:
                raise GraphError(f"edge {edge_id!r} references unknown node {endpoint!r}")
        if distance(geometry.vertices[0], node_map[source].position) > ENDPOINT_TOLERANCE:
            raise GraphError(f"edge {edge_id!r} geometry does not start at node {source!r}")
        if distance(geometry.vertices[-1], node_map[destination].position) > ENDPOINT_TOLERANCE:
            raise GraphError(f"edge {edge_id!r} geometry does not end at node {destination!r}")
        edge_map[edge_id] = DirectedEdge(edge_id, source, destination, geometry)

    if opposite_pairs is None:
        _autodetect_opposites(edge_map)
    else:
        for a, b in opposite_pairs:
            for eid in (a, b):
                if eid not in edge_map:
                    raise GraphError(f"opposite pairing references unknown edge {eid!r}")
            ea, eb = edge_map[a], edge_map[b]
            if ea.opposite not in (None, b) or eb.opposite not in (None, a):
                raise GraphError(f"asymmetric opposite pairing for edges {a!r} and {b!r}")
            if ea.source != eb.destination or ea.destination != eb.source:
                raise GraphError(f"opposite edges {a!r} and {b!r} do not swap endpoints")
            if not _reversed_match(ea.geometry, eb.geometry, ENDPOINT_TOLERANCE):
                raise GraphError(f"opposite edges {a!r} and {b!r} have mismatched geometry")
            ea.opposite = b
            eb.opposite = a

    ordered_nodes = {nid: node_map[nid] for nid in sorted(node_map, key=id_sort_key)}
    ordered_edges = {eid: edge_map[eid] for eid in sorted(edge_map, key=id_sort_key)}
    for edge in ordered_edges.values():
        ordered_nodes[edge.source].outgoing.append(edge.id)
    return RoadGraph(ordered_nodes, ordered_edges, projection)


def _autodetect_opposites(edge_map: dict[EdgeId, DirectedEdge]) -> None:
    by_endpoints: dict[tuple[NodeId, NodeId], list[DirectedEdge]] = {}
    for edge in edge_map.values():
        by_endpoints.setdefault((edge.source, edge.destination), []).append(edge)
    for edge in sorted(edge_map.values(), key=lambda e: id_sort_key(e.id)):
        if edge.opposite is not None:
            continue
        candidates = [
            other
            for other in by_endpoints.get((edge.destination, edge.source), [])
            if other.opposite is None
            and other.id != edge.id
            and _reversed_match(edge.geometry, other.geometry, ENDPOINT_TOLERANCE)
        ]
        if len(candidates) > 1:
            ids = sorted((c.id for c in candidates), key=id_sort_key)
            raise GraphError(f"ambiguous opposite for edge {edge.id!r}: candidates {ids}")
        if candidates:
            edge.opposite = candidates[0].id
            candidates[0].opposite = edge.id
