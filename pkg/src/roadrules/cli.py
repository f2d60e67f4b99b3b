"""Command-line interface.

Subcommands: derive (run a derivation and write the rule document), validate
(score a rule document against ground truth), scenario (emit a synthetic test
scene) and render (write the inspection overlay). Exit codes: 0 success, 1
input error, 2 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .detection import DetectionConfig
from .errors import InputError, InternalError
from .io import (
    load_ground_truth,
    load_network,
    load_rules,
    load_signs,
    render_overlay,
    rules_document,
    validate,
    write_report,
    write_rules,
)
from .navigator import derive_rules
from .scenarios import TEMPLATES, generate_scenario, write_scenario
from .signs import SignIndex


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="roadrules",
        description="Derive one-way and turn-restriction rules from classified "
        "traffic signs by simulated navigation of a road network.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    derive = sub.add_parser("derive", help="derive rules from a network and a sign inventory")
    derive.add_argument("--network", required=True, help="network GeoJSON file")
    derive.add_argument("--signs", required=True, help="signs GeoJSON file")
    derive.add_argument(
        "--start-edge", action="append", default=[], help="edge id to start from (repeatable)"
    )
    derive.add_argument(
        "--cover-all",
        action="store_true",
        help="keep restarting from unvisited edges until the whole graph is covered",
    )
    derive.add_argument("--node-radius", type=float, default=15.0, help="meters (default 15)")
    derive.add_argument("--edge-radius", type=float, default=10.0, help="meters (default 10)")
    derive.add_argument("--lookback", type=float, default=10.0, help="meters (default 10)")
    derive.add_argument("--half-angle", type=float, default=80.0, help="degrees (default 80)")
    derive.add_argument("--out", required=True, help="output rule document (JSON)")
    derive.add_argument("--overlay", help="optional GeoJSON overlay output")
    derive.set_defaults(func=_cmd_derive)

    check = sub.add_parser("validate", help="compare a rule document against ground truth")
    check.add_argument("--rules", required=True, help="rule document (JSON)")
    check.add_argument("--truth", required=True, help="ground-truth JSON")
    check.add_argument("--out", help="optional report output; stdout otherwise")
    check.set_defaults(func=_cmd_validate)

    scenario = sub.add_parser("scenario", help="generate a synthetic scenario")
    scenario.add_argument("--template", required=True, choices=TEMPLATES)
    scenario.add_argument("--rows", type=int, default=3)
    scenario.add_argument("--cols", type=int, default=3)
    scenario.add_argument("--spacing", type=float, default=100.0)
    scenario.add_argument("--out-dir", required=True)
    scenario.set_defaults(func=_cmd_scenario)

    render = sub.add_parser("render", help="write a status overlay for derived rules")
    render.add_argument("--rules", required=True)
    render.add_argument("--network", required=True)
    render.add_argument("--signs", required=True)
    render.add_argument("--out", required=True)
    render.set_defaults(func=_cmd_render)

    return parser


def _detection_config(args: argparse.Namespace) -> DetectionConfig:
    try:
        return DetectionConfig(
            node_radius=args.node_radius,
            edge_radius=args.edge_radius,
            lookback=args.lookback,
            visibility_half_angle=args.half_angle,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _cmd_derive(args: argparse.Namespace) -> int:
    if not args.start_edge and not args.cover_all:
        raise InputError("derive needs --start-edge or --cover-all")
    graph = load_network(args.network)
    signs = load_signs(
        args.signs, graph.projection, expected_planar=graph.projection is None
    )
    index = SignIndex(signs)
    result = derive_rules(
        graph, index, _detection_config(args), start_edges=args.start_edge,
        cover_all=args.cover_all,
    )
    write_rules(result, args.out)
    if args.overlay:
        render_overlay(result, graph, index, args.overlay)
    document = rules_document(result)
    print(
        "derived {} no-way, {} one-way, {} no-turn rules; "
        "{} edges visited, {} unreached".format(
            len(document["no_way"]),
            len(document["one_way"]),
            len(document["no_turn"]),
            len(result.visited_edges),
            len(result.unreached_edges),
        )
    )
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    report = validate(load_rules(args.rules), load_ground_truth(args.truth))
    if args.out:
        write_report(report, args.out)
    else:
        print(json.dumps(report.to_document(), indent=2, sort_keys=True))
    return 0


def _cmd_scenario(args: argparse.Namespace) -> int:
    scenario = generate_scenario(
        args.template, rows=args.rows, cols=args.cols, spacing=args.spacing
    )
    paths = write_scenario(scenario, args.out_dir)
    for key in ("network", "signs", "expected"):
        print(f"{key}: {paths[key]}")
    return 0


def _cmd_render(args: argparse.Namespace) -> int:
    graph = load_network(args.network)
    signs = load_signs(
        args.signs, graph.projection, expected_planar=graph.projection is None
    )
    render_overlay(load_rules(args.rules), graph, signs, args.out)
    return 0


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s: %(message)s")
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - any escape here is a bug
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
