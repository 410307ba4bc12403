from __future__ import annotations

from pathlib import Path

from ..boxes.box import load_hypergraph
from ..checks.report import print_check
from ..checks.runner import result_from_verdict
from ..checks.status import EXIT_FAILED, STATUS_PASS
from ..graphs.export import write_dot
from ..lifting.lemmas import verify_class_census
from ..lifting.lift import lift_hypergraph, lifted_dot, save_lifted
from .common import load_config


def run(args) -> int:
    config = load_config(args)
    bh = load_hypergraph(Path(args.boxes))
    lg = lift_hypergraph(bh, max_vertices=config.max_lift_vertices, exact_limit=config.exhaustive_vertices)
    og = lg.orientation
    census = result_from_verdict(verify_class_census(lg), 0.0)
    out = Path(args.out)
    save_lifted(out, lg)
    if args.dot:
        write_dot(Path(args.dot), lifted_dot(lg))
    dims = "x".join(str(d) for d in lg.grid.dims)
    print(
        f"lift: grid {dims}, {len(lg.graph)} vertices, {len(lg.graph.edges)} edges, "
        f"{len(lg.theta.classes)} classes, max out-degree {og.max_out_degree()}"
    )
    print_check(census, timings=False)
    print(f"written to {out}")
    return 0 if census.status == STATUS_PASS else EXIT_FAILED
