"""File formats: GeoJSON network/sign ingestion, rule documents, ground-truth
validation and debug overlays.

Planar inputs mark themselves with a top-level ``"coordinate_system":
"local-meters"`` member; without it, coordinates are treated as RFC 7946
lon/lat and projected to local meters around the dataset centroid. All
outputs are deterministic byte-for-byte for identical inputs.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable

from .errors import GraphError, InputError
from .geometry import LocalProjection, Point, Polyline
from .ids import id_sort_key
from .navigator import DerivationResult
from .network import EdgeId, RoadGraph, build_graph
from .rules import NoTurnRule, NoWayRule, OneWayRule
from .signs import Sign, SignIndex, SignType

logger = logging.getLogger("roadrules")

PLANAR_MARKER = "local-meters"


def _read_json(path: str | Path) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON: {exc}") from exc


def _write_json(document: Any, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(document, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def _feature_collection(document: Any, path: str | Path) -> list[dict]:
    if not isinstance(document, dict) or document.get("type") != "FeatureCollection":
        raise InputError(f"{path}: expected a GeoJSON FeatureCollection")
    features = document.get("features")
    if not isinstance(features, list):
        raise InputError(f"{path}: FeatureCollection without a features array")
    return features


def _is_planar(document: dict) -> bool:
    return document.get("coordinate_system") == PLANAR_MARKER


def _collect_coordinates(features: Iterable[dict]) -> list[tuple[float, float]]:
    coords: list[tuple[float, float]] = []
    for feature in features:
        geometry = feature.get("geometry") or {}
        if geometry.get("type") == "Point":
            coords.append(tuple(geometry["coordinates"][:2]))
        elif geometry.get("type") == "LineString":
            coords.extend(tuple(c[:2]) for c in geometry["coordinates"])
    return coords


def network_from_document(document: dict, source: str | Path = "<network>") -> RoadGraph:
    """Build a road graph from a parsed network FeatureCollection.

    LineString features carry properties ``edge_id``, ``source_node``,
    ``target_node`` and optional ``opposite_id``; Point features carry
    ``node_id``. Node positions missing from the Point features are inferred
    from edge endpoints.
    """
    features = _feature_collection(document, source)
    projection = None
    if not _is_planar(document):
        coords = _collect_coordinates(features)
        if not coords:
            raise InputError(f"{source}: no coordinates to center a projection on")
        projection = LocalProjection.centered(coords)

    def to_point(raw) -> Point:
        lon, lat = raw[0], raw[1]
        if projection is None:
            return Point(lon, lat)
        return projection.to_planar(lon, lat)

    node_positions: dict = {}
    edge_specs: list[tuple[EdgeId, Any, Any, Polyline]] = []
    edge_feature_index: dict[EdgeId, int] = {}
    opposite_pairs: list[tuple[EdgeId, EdgeId]] = []
    seen_pairs: set[tuple[EdgeId, EdgeId]] = set()
    any_explicit_opposite = False

    for i, feature in enumerate(features):
        geometry = feature.get("geometry") or {}
        properties = feature.get("properties") or {}
        kind = geometry.get("type")
        if kind == "Point":
            node_id = properties.get("node_id")
            if node_id is None:
                raise InputError(f"{source}: feature {i}: Point without node_id")
            if node_id in node_positions:
                raise InputError(f"{source}: feature {i}: duplicate node_id {node_id!r}")
            node_positions[node_id] = to_point(geometry["coordinates"])
        elif kind == "LineString":
            edge_id = properties.get("edge_id")
            src = properties.get("source_node")
            dst = properties.get("target_node")
            if edge_id is None or src is None or dst is None:
                raise InputError(
                    f"{source}: feature {i}: LineString needs edge_id, source_node, target_node"
                )
            if edge_id in edge_feature_index:
                raise InputError(
                    f"{source}: duplicate edge_id {edge_id!r} in features "
                    f"{edge_feature_index[edge_id]} and {i}"
                )
            raw_coords = geometry.get("coordinates") or []
            if len(raw_coords) < 2:
                raise InputError(f"{source}: feature {i}: LineString needs >= 2 coordinates")
            try:
                line = Polyline([to_point(c) for c in raw_coords])
            except ValueError as exc:
                raise InputError(f"{source}: feature {i}: {exc}") from exc
            edge_feature_index[edge_id] = i
            edge_specs.append((edge_id, src, dst, line))
            opposite = properties.get("opposite_id")
            if opposite is not None:
                any_explicit_opposite = True
                pair = tuple(sorted((edge_id, opposite), key=id_sort_key))
                if pair not in seen_pairs:
                    seen_pairs.add(pair)
                    opposite_pairs.append(pair)
        else:
            raise InputError(f"{source}: feature {i}: unsupported geometry type {kind!r}")

    # fall back to edge endpoints for nodes the Point features do not cover
    for edge_id, src, dst, line in edge_specs:
        node_positions.setdefault(src, line.vertices[0])
        node_positions.setdefault(dst, line.vertices[-1])

    try:
        return build_graph(
            node_positions,
            edge_specs,
            opposite_pairs if any_explicit_opposite else None,
            projection=projection,
        )
    except GraphError as exc:
        raise InputError(f"{source}: {exc}") from exc


def load_network(path: str | Path) -> RoadGraph:
    """Read a network GeoJSON file into a validated road graph."""
    return network_from_document(_read_json(path), path)


def signs_from_document(
    document: dict,
    source: str | Path = "<signs>",
    projection: LocalProjection | None = None,
    expected_planar: bool | None = None,
) -> list[Sign]:
    """Parse sign Point features (properties sign_id, type, azimuth).

    Unknown type codes are rejected with a logged warning instead of failing
    the whole file; missing fields and non-finite azimuths are errors. Pass
    ``expected_planar`` to reject signs whose coordinate frame does not match
    the network they accompany.
    """
    features = _feature_collection(document, source)
    planar = _is_planar(document)
    if expected_planar is not None and planar != expected_planar:
        raise InputError(
            f"{source}: signs are {'planar' if planar else 'lon/lat'} but the "
            f"network is {'planar' if expected_planar else 'lon/lat'}"
        )
    if planar and projection is not None:
        raise InputError(f"{source}: planar signs cannot accompany a projected network")
    if not planar and projection is None:
        coords = _collect_coordinates(features)
        if coords:
            projection = LocalProjection.centered(coords)
    signs: list[Sign] = []
    seen: dict = {}
    for i, feature in enumerate(features):
        geometry = feature.get("geometry") or {}
        properties = feature.get("properties") or {}
        if geometry.get("type") != "Point":
            raise InputError(f"{source}: feature {i}: signs must be Point features")
        sign_id = properties.get("sign_id")
        code = properties.get("type")
        azimuth = properties.get("azimuth")
        if sign_id is None or code is None or azimuth is None:
            raise InputError(f"{source}: feature {i}: sign needs sign_id, type, azimuth")
        if sign_id in seen:
            raise InputError(
                f"{source}: duplicate sign_id {sign_id!r} in features {seen[sign_id]} and {i}"
            )
        seen[sign_id] = i
        try:
            sign_type = SignType.from_code(code)
        except ValueError:
            logger.warning("%s: feature %d: skipping sign %r with unknown type %r",
                           source, i, sign_id, code)
            continue
        try:
            azimuth = float(azimuth)
        except (TypeError, ValueError) as exc:
            raise InputError(f"{source}: feature {i}: bad azimuth {azimuth!r}") from exc
        lon, lat = geometry["coordinates"][0], geometry["coordinates"][1]
        position = Point(lon, lat) if planar else projection.to_planar(lon, lat)
        try:
            signs.append(Sign(sign_id, position, sign_type, azimuth))
        except ValueError as exc:
            raise InputError(f"{source}: feature {i}: {exc}") from exc
    return signs


def load_signs(
    path: str | Path,
    projection: LocalProjection | None = None,
    expected_planar: bool | None = None,
) -> list[Sign]:
    """Read a signs GeoJSON file; pass the network's projection for lon/lat input."""
    return signs_from_document(_read_json(path), path, projection, expected_planar)


def rules_document(result: DerivationResult) -> dict:
    """Serialize a derivation result to the rule-document schema."""
    no_way, one_way, no_turn = [], [], []
    for record in result.rules:
        rule = record.rule
        if isinstance(rule, NoWayRule):
            no_way.append(
                {"edge": rule.banned_edge, "sign": record.sign_id, "score": record.score}
            )
        elif isinstance(rule, OneWayRule):
            one_way.append(
                {
                    "chosen": rule.chosen,
                    "banned": sorted(rule.banned_edges, key=id_sort_key),
                    "sign": record.sign_id,
                    "score": record.score,
                }
            )
        elif isinstance(rule, NoTurnRule):
            no_turn.append(
                {
                    "from": rule.from_edge,
                    "banned_to": sorted(rule.banned_to, key=id_sort_key),
                    "sign": record.sign_id,
                    "score": record.score,
                }
            )
    no_way.sort(key=lambda r: (id_sort_key(r["edge"]), id_sort_key(r["sign"])))
    one_way.sort(key=lambda r: (id_sort_key(r["chosen"]), id_sort_key(r["sign"])))
    no_turn.sort(key=lambda r: (id_sort_key(r["from"]), id_sort_key(r["sign"])))
    return {
        "no_way": no_way,
        "one_way": one_way,
        "no_turn": no_turn,
        "unreached": sorted(result.unreached_edges, key=id_sort_key),
    }


def write_rules(result: DerivationResult, path: str | Path) -> None:
    _write_json(rules_document(result), path)


def load_rules(path: str | Path) -> dict:
    document = _read_json(path)
    if not isinstance(document, dict):
        raise InputError(f"{path}: expected a rule document object")
    for key in ("no_way", "one_way", "no_turn", "unreached"):
        if not isinstance(document.get(key), list):
            raise InputError(f"{path}: rule document is missing the {key!r} array")
    return document


@dataclass(frozen=True)
class GroundTruth:
    """Externally sourced one-way and turn-restriction facts."""

    one_way_banned_edges: frozenset[EdgeId]
    turn_restrictions: frozenset[tuple[EdgeId, EdgeId]]


def load_ground_truth(path: str | Path) -> GroundTruth:
    document = _read_json(path)
    if not isinstance(document, dict):
        raise InputError(f"{path}: expected a ground-truth object")
    try:
        banned = frozenset(document.get("one_way_banned_edges", ()))
        pairs = frozenset(tuple(p) for p in document.get("turn_restrictions", ()))
    except TypeError as exc:
        raise InputError(f"{path}: malformed ground truth: {exc}") from exc
    if any(len(p) != 2 for p in pairs):
        raise InputError(f"{path}: turn_restrictions entries must be [from, to] pairs")
    return GroundTruth(banned, pairs)


@dataclass(frozen=True)
class FamilyAccuracy:
    total_mapped: int
    incorrect: int
    accuracy: float | None  # percent, 2 decimals; None when nothing was mapped


@dataclass(frozen=True)
class AccuracyReport:
    one_way: FamilyAccuracy
    turn: FamilyAccuracy

    def to_document(self) -> dict:
        def family(f: FamilyAccuracy) -> dict:
            return {
                "total_mapped": f.total_mapped,
                "incorrect": f.incorrect,
                "accuracy": f.accuracy,
            }

        return {
            "one_way_streets": family(self.one_way),
            "turn_restrictions": family(self.turn),
        }


def derived_rule_sets(rules: DerivationResult | dict) -> tuple[frozenset, frozenset]:
    """(globally banned edges, banned turn pairs) from a result or rule document."""
    if isinstance(rules, DerivationResult):
        rules = rules_document(rules)
    banned = {entry["edge"] for entry in rules["no_way"]}
    for entry in rules["one_way"]:
        banned.update(entry["banned"])
    pairs = {
        (entry["from"], to) for entry in rules["no_turn"] for to in entry["banned_to"]
    }
    return frozenset(banned), frozenset(pairs)


def _family_accuracy(derived: frozenset, truth: frozenset) -> FamilyAccuracy:
    total = len(derived)
    incorrect = len(derived - truth)
    if total == 0:
        return FamilyAccuracy(0, 0, None)
    return FamilyAccuracy(total, incorrect, round(100.0 * (total - incorrect) / total, 2))


def validate(rules: DerivationResult | dict, truth: GroundTruth) -> AccuracyReport:
    """Accuracy of derived rules against ground truth.

    Derived one-way bans are compared as edge sets and turn restrictions as
    (from, to) pairs; only incorrectly derived rules count against accuracy
    (completeness of the inputs is not measurable here).
    """
    banned, pairs = derived_rule_sets(rules)
    return AccuracyReport(
        one_way=_family_accuracy(banned, truth.one_way_banned_edges),
        turn=_family_accuracy(pairs, truth.turn_restrictions),
    )


def _line_coordinates(line: Polyline) -> list[list[float]]:
    return [[v.x, v.y] for v in line.vertices]


def overlay_document(graph: RoadGraph, signs: Iterable[Sign], rules: dict) -> dict:
    """GeoJSON overlay: edges colored by status, signs with their rule linkage.

    Coordinates are emitted in the local planar frame the derivation ran in.
    """
    banned, _ = derived_rule_sets(rules)
    unreached = set(rules["unreached"])
    rule_by_sign: dict = {}
    for entry in rules["no_way"]:
        rule_by_sign[entry["sign"]] = {"kind": "no_way", "edge": entry["edge"], "score": entry["score"]}
    for entry in rules["one_way"]:
        rule_by_sign[entry["sign"]] = {
            "kind": "one_way",
            "chosen": entry["chosen"],
            "banned": entry["banned"],
            "score": entry["score"],
        }
    for entry in rules["no_turn"]:
        rule_by_sign[entry["sign"]] = {
            "kind": "no_turn",
            "from": entry["from"],
            "banned_to": entry["banned_to"],
            "score": entry["score"],
        }

    features = []
    for edge_id in sorted(graph.edges, key=id_sort_key):
        edge = graph.edges[edge_id]
        if edge_id in banned:
            status = "banned"
        elif edge_id in unreached:
            status = "unreached"
        else:
            status = "visited"
        features.append(
            {
                "type": "Feature",
                "geometry": {
                    "type": "LineString",
                    "coordinates": _line_coordinates(edge.geometry),
                },
                "properties": {"edge_id": edge_id, "status": status},
            }
        )
    for sign in sorted(signs, key=lambda s: id_sort_key(s.id)):
        linked = rule_by_sign.get(sign.id)
        features.append(
            {
                "type": "Feature",
                "geometry": {"type": "Point", "coordinates": [sign.position.x, sign.position.y]},
                "properties": {
                    "sign_id": sign.id,
                    "type": sign.sign_type.code,
                    "azimuth": sign.azimuth,
                    "rule": linked,
                    "score": linked["score"] if linked else None,
                },
            }
        )
    return {
        "type": "FeatureCollection",
        "coordinate_system": PLANAR_MARKER,
        "features": features,
    }


def render_overlay(
    result: DerivationResult | dict,
    graph: RoadGraph,
    signs: Iterable[Sign] | SignIndex,
    path: str | Path,
) -> None:
    """Write the inspection overlay for a completed derivation."""
    rules = rules_document(result) if isinstance(result, DerivationResult) else result
    _write_json(overlay_document(graph, signs, rules), path)


def write_report(report: AccuracyReport, path: str | Path) -> None:
    _write_json(report.to_document(), path)
