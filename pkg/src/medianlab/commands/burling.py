from __future__ import annotations

from pathlib import Path

from ..boxes.box import intersection_graph, save_hypergraph, snap_to_grid
from ..boxes.burling import burling_family
from ..console import Ansi, paint
from .common import load_config


def run(args) -> int:
    config = load_config(args)
    family = burling_family(args.n, max_n=config.max_burling_n)
    graph = intersection_graph(family)
    if args.snap:
        family = snap_to_grid(family)
    out = Path(args.out)
    save_hypergraph(out, family)
    print(
        f"B({args.n}): {len(family)} boxes, {len(graph.edges)} intersecting pairs, "
        f"{paint('triangle-free', Ansi.GREEN)}"
    )
    print(f"written to {out}")
    return 0
