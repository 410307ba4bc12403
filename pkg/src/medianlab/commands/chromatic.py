from __future__ import annotations

from pathlib import Path

from ..boxes.box import hypergraph_from_payload, intersection_graph
from ..checks.status import EXIT_LIMIT
from ..coloring.models import Budget
from ..coloring.solver import chromatic_number
from ..console import Ansi, paint
from ..errors import SchemaError
from ..graphs.graph import Graph, graph_from_payload, read_json, write_json
from ..graphs.oriented import orient
from ..graphs.theta import contact_graph, crossing_graph, pointed_contact_graph, theta_classes
from ..lifting.lift import is_lifted_payload, lifted_from_payload
from .common import load_config

TARGETS = ("contact", "pointed-contact", "crossing", "intersection", "graph")


def target_graph(payload: dict[str, object], target: str, basepoint: int | None, config) -> Graph:
    """The graph to colour, built from a lifted graph, a plain graph or a box file."""
    if is_lifted_payload(payload):
        lg = lifted_from_payload(payload, max_vertices=config.max_lift_vertices, exact_limit=config.exhaustive_vertices)
        if target == "intersection":
            return intersection_graph(lg.boxes)
        graph, default_basepoint = lg.graph, lg.alpha
    elif "boxes" in payload:
        if target != "intersection":
            raise SchemaError(f"a box file only supports --target intersection, not {target}")
        return intersection_graph(hypergraph_from_payload(payload))
    else:
        if target == "intersection":
            raise SchemaError("--target intersection needs a box file or a lifted graph")
        graph = graph_from_payload(payload)
        default_basepoint = graph.vertices[0]
    if target == "graph":
        return graph
    point = default_basepoint if basepoint is None else basepoint
    t = theta_classes(graph, point, exact_limit=config.exhaustive_vertices)
    if target == "contact":
        return contact_graph(t)
    if target == "crossing":
        return crossing_graph(t)
    return pointed_contact_graph(orient(graph, point), t)


def run(args) -> int:
    config = load_config(args)
    budget = Budget(
        max_nodes=args.max_nodes if args.max_nodes is not None else config.max_nodes,
        max_seconds=args.budget if args.budget is not None else config.max_seconds,
    )
    graph = target_graph(read_json(Path(args.graph)), args.target, args.basepoint, config)
    result = chromatic_number(graph, budget)
    label = f"χ({args.target})"
    if result.optimal:
        print(f"{label} = {paint(str(result.count), Ansi.GREEN)} over {len(graph)} vertices")
    else:
        print(
            f"{label} in [{result.lower_bound}, {result.upper_bound}] over {len(graph)} vertices "
            f"{paint('(budget exhausted)', Ansi.YELLOW)}"
        )
    if args.out:
        payload = {"target": args.target, "vertices": len(graph), "edges": len(graph.edges), **result.to_payload()}
        payload["coloring"] = {str(v): c for v, c in sorted(result.colors.items())}
        write_json(Path(args.out), payload)
    return 0 if result.optimal else EXIT_LIMIT
