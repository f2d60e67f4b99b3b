"""Frontier-driven navigation: drive the graph, read signs, derive rules.

The traversal mimics a driver exploring an unknown town: edges enter a FIFO
frontier once, signs are read along the popped edge and at its end node, and
the resulting rules immediately constrain which exits may be taken next.
U-turns are taken only when nothing else is legal.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .detection import DetectionConfig, detect_signs_along, detect_signs_from
from .errors import InternalError
from .ids import id_sort_key
from .network import DirectedEdge, EdgeId, RoadGraph
from .rules import DerivationState, Rule, analyze_signs
from .signs import SignId, SignIndex


class Frontier:
    """FIFO queue of edges pending navigation."""

    def __init__(self) -> None:
        self._queue: deque[EdgeId] = deque()

    def push(self, edge_id: EdgeId) -> None:
        self._queue.append(edge_id)

    def pop(self) -> EdgeId:
        return self._queue.popleft()

    def __len__(self) -> int:
        return len(self._queue)

    def __bool__(self) -> bool:
        return bool(self._queue)


@dataclass(frozen=True)
class RuleRecord:
    """One installed rule with its provenance."""

    sign_id: SignId
    rule: Rule
    score: float


@dataclass(frozen=True)
class DerivationResult:
    rules: tuple[RuleRecord, ...]
    visited_edges: frozenset[EdgeId]
    unreached_edges: frozenset[EdgeId]


def is_navigation_forbidden(
    current: DirectedEdge, candidate: DirectedEdge, state: DerivationState
) -> bool:
    """Whether rules (or the U-turn prohibition) block current -> candidate.

    A U-turn onto the opposite edge is forbidden only while some other exit
    of the node survives the ban and turn-restriction checks; when it is the
    last edge left (dead ends, everything else banned) it is allowed.
    """
    if candidate.banned:
        return True
    if state.is_turn_banned(current.id, candidate.id):
        return True
    if current.opposite is not None and candidate.id == current.opposite:
        for other in state.graph.outgoing_edges(current.destination):
            if other.id == candidate.id:
                continue
            if other.banned or state.is_turn_banned(current.id, other.id):
                continue
            return True
    return False


def _navigate(
    state: DerivationState,
    index: SignIndex,
    cfg: DetectionConfig,
    start_edge: DirectedEdge,
) -> None:
    graph = state.graph
    frontier = Frontier()
    start_edge.visited = True
    frontier.push(start_edge.id)
    while frontier:
        current = graph.edges[frontier.pop()]
        if current.banned:
            raise InternalError(f"banned edge {current.id!r} reached the frontier pop")
        node = graph.nodes[current.destination]
        outgoing = graph.outgoing_edges(node.id)
        signs = detect_signs_along(current, index, cfg) + detect_signs_from(node, index, cfg)
        analyze_signs(signs, current, node, outgoing, frontier, state)
        for edge in outgoing:
            if not edge.visited and not is_navigation_forbidden(current, edge, state):
                edge.visited = True
                frontier.push(edge.id)


def _collect(state: DerivationState, index: SignIndex) -> DerivationResult:
    records = tuple(
        RuleRecord(sign.id, sign.rule, sign.score)
        for sign in index.signs
        if sign.rule is not None
    )
    visited = frozenset(e.id for e in state.graph.edges.values() if e.visited)
    unreached = frozenset(state.graph.edges) - visited
    return DerivationResult(records, visited, unreached)


def assign_signs(
    graph: RoadGraph,
    index: SignIndex,
    start: EdgeId,
    cfg: DetectionConfig | None = None,
) -> DerivationResult:
    """Run one full derivation from a single start edge.

    Resets all navigation state, navigates until the frontier drains, and
    reports the installed rules plus the visited/unreached edge partition.
    """
    return derive_rules(graph, index, cfg, [start])


def derive_rules(
    graph: RoadGraph,
    index: SignIndex,
    cfg: DetectionConfig | None = None,
    start_edges: list[EdgeId] | tuple[EdgeId, ...] = (),
    cover_all: bool = False,
) -> DerivationResult:
    """Derive rules from one or more start edges on a freshly reset graph.

    Start edges run sequentially on shared state; a start already visited or
    banned by earlier rules is skipped. With ``cover_all`` the run restarts
    from the smallest-id unvisited unbanned edge until none remain, so only
    edges banned until the very end stay unreached.
    """
    if not start_edges and not cover_all:
        raise ValueError("need at least one start edge, or cover_all")
    cfg = cfg or DetectionConfig()
    graph.reset_run_state()
    index.reset_rules()
    state = DerivationState(graph)
    for edge_id in start_edges:
        edge = graph.edge(edge_id)
        if edge.visited or edge.banned:
            continue
        _navigate(state, index, cfg, edge)
    if cover_all:
        while True:
            remaining = [
                e.id for e in graph.edges.values() if not e.visited and not e.banned
            ]
            if not remaining:
                break
            edge_id = min(remaining, key=id_sort_key)
            _navigate(state, index, cfg, graph.edges[edge_id])
    return _collect(state, index)
