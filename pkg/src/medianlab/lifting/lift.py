from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from pathlib import Path
from typing import Mapping

from ..boxes.box import BoxHypergraph, hypergraph_from_payload, hypergraph_to_payload, snap_to_grid
from ..boxes.burling import DEFAULT_MAX_N, burling_family
from ..errors import ConstructionBugError, RepresentationError, ResourceLimitError, SchemaError
from ..graphs.export import to_dot
from ..graphs.graph import Edge, Graph, graph_from_payload, graph_to_payload, read_json, write_json
from ..graphs.oriented import OrientedGraph, orient
from ..graphs.theta import DEFAULT_EXACT_LIMIT, ThetaStructure, theta_classes
from .grid import GridComplex, box_index_ranges, build_grid, check_cell_representation


DEFAULT_MAX_LIFT_VERTICES = 200_000
AXIS_NAMES = ("x", "y", "z")


class ThetaKind(str, Enum):
    LIFTED = "LIFTED"
    GRID = "GRID"


@dataclass(frozen=True)
class ThetaLabel:
    kind: ThetaKind
    box: int | None = None
    axis: int | None = None
    plane: int | None = None

    @property
    def name(self) -> str:
        if self.kind is ThetaKind.LIFTED:
            return f"Θ{self.box}"
        return f"{AXIS_NAMES[self.axis]}{self.plane}"  # type: ignore[index]

    def to_payload(self) -> dict[str, object]:
        if self.kind is ThetaKind.LIFTED:
            return {"kind": self.kind.value, "box": self.box}
        return {"kind": self.kind.value, "axis": self.axis, "plane": self.plane}


def label_of_edge(coords: Mapping[int, tuple[int, ...]], edge: Edge) -> ThetaLabel:
    """Matching edges change the copy tag; every other edge moves along one grid axis."""
    first, second = coords[edge[0]], coords[edge[1]]
    if first[3] != second[3]:
        return ThetaLabel(ThetaKind.LIFTED, box=max(first[3], second[3]) - 1)
    axis = next(a for a in range(3) if first[a] != second[a])
    return ThetaLabel(ThetaKind.GRID, axis=axis, plane=min(first[axis], second[axis]))


@dataclass(frozen=True, eq=False)
class LiftedGraph:
    """Grid 1-skeleton with a prism G_i × e_i attached over each box's subgrid.

    Coordinates are (i, j, k, 0) on the grid and (i, j, k, b + 1) on the copy of
    box b. `copies[b]` maps each vertex of G_b to its copy.
    """

    graph: Graph
    grid: GridComplex
    boxes: BoxHypergraph
    subgrids: tuple[tuple[int, ...], ...]
    copies: tuple[Mapping[int, int], ...]
    alpha: int
    beta: int
    exact_limit: int = DEFAULT_EXACT_LIMIT

    @cached_property
    def theta(self) -> ThetaStructure:
        return theta_classes(self.graph, self.alpha, exact_limit=self.exact_limit)

    @cached_property
    def theta_labels(self) -> dict[int, ThetaLabel]:
        return {cls: label_of_edge(self.graph.coords, members[0]) for cls, members in enumerate(self.theta.classes)}

    @cached_property
    def box_classes(self) -> tuple[int, ...]:
        """Θ-class id of each box, in box order."""
        by_box = {label.box: cls for cls, label in self.theta_labels.items() if label.kind is ThetaKind.LIFTED}
        missing = [b for b in range(len(self.subgrids)) if b not in by_box]
        if missing:
            raise ConstructionBugError(f"no Θ-class carries the matching of box {missing[0]}", witness=missing[0])
        return tuple(by_box[b] for b in range(len(self.subgrids)))

    @cached_property
    def orientation(self) -> OrientedGraph:
        return orient_at_alpha(self)

    def is_copy(self, vertex: int) -> bool:
        return self.graph.coords[vertex][3] != 0

    def class_names(self) -> dict[int, str]:
        return {cls: label.name for cls, label in self.theta_labels.items()}


def predicted_size(gc: GridComplex, ranges) -> int:
    return gc.vertex_count + sum(math.prod(high - low + 1 for low, high in axes) for axes in ranges)


def lift(
    gc: GridComplex,
    bh: BoxHypergraph,
    *,
    max_vertices: int = DEFAULT_MAX_LIFT_VERTICES,
    exact_limit: int = DEFAULT_EXACT_LIMIT,
) -> LiftedGraph:
    """Build G̃: the grid of `gc` plus, per box, a copy of its subgrid joined by a matching.

    The vertex count is predicted from the plane ranges and checked against
    `max_vertices` before anything is allocated.
    """
    verdict = check_cell_representation(gc, bh)
    if not verdict.ok:
        raise RepresentationError(
            f"box {verdict.box} has a {AXIS_NAMES[verdict.axis]} face off the grid planes",  # type: ignore[index]
            witness=(verdict.box, verdict.axis),
        )
    ranges = box_index_ranges(gc, bh)
    total = predicted_size(gc, ranges)
    if total > max_vertices:
        raise ResourceLimitError(f"lift would have {total} vertices; the configured limit is {max_vertices}")

    coords: dict[int, tuple[int, ...]] = {}
    for vertex in gc.graph.vertices:
        coords[vertex] = (*gc.point_of(vertex), 0)
    edges: list[Edge] = list(gc.graph.edges)

    subgrids: list[tuple[int, ...]] = []
    copies: list[dict[int, int]] = []
    next_id = gc.vertex_count
    for box, axes in enumerate(ranges):
        points = list(itertools.product(*(range(low, high + 1) for low, high in axes)))
        members = tuple(gc.vertex_at(*point) for point in points)
        copy: dict[int, int] = {}
        for point, vertex in zip(points, members):
            copy[vertex] = next_id
            coords[next_id] = (*point, box + 1)
            edges.append((vertex, next_id))
            next_id += 1
        for point, vertex in zip(points, members):
            for axis in range(3):
                if point[axis] < axes[axis][1]:
                    step = list(point)
                    step[axis] += 1
                    edges.append((copy[vertex], copy[gc.vertex_at(*step)]))
        subgrids.append(members)
        copies.append(copy)

    graph = Graph.build(range(next_id), edges, coords)
    return LiftedGraph(
        graph=graph,
        grid=gc,
        boxes=bh,
        subgrids=tuple(subgrids),
        copies=tuple(copies),
        alpha=0,
        beta=gc.vertex_count - 1,
        exact_limit=exact_limit,
    )


def lift_hypergraph(bh: BoxHypergraph, **options) -> LiftedGraph:
    return lift(build_grid(bh), bh, **options)


def lift_burling(n: int, *, max_n: int = DEFAULT_MAX_N, **options) -> LiftedGraph:
    """Lift of B(n) after snapping it to its integer plane lattice."""
    return lift_hypergraph(snap_to_grid(burling_family(n, max_n=max_n)), **options)


def orient_at_alpha(lg: LiftedGraph) -> OrientedGraph:
    """Grid-parallel edges point to larger coordinates, matching edges point into the copy.

    The rule-based arcs are compared with the distance orientation from α and any
    disagreement is a construction bug.
    """
    coords = lg.graph.coords
    expected: list[Edge] = []
    for u, v in lg.graph.edges:
        cu, cv = coords[u], coords[v]
        if cu[3] != cv[3]:
            expected.append((u, v) if cu[3] == 0 else (v, u))
        else:
            expected.append((u, v) if cu < cv else (v, u))
    og = orient(lg.graph, lg.alpha)
    ruled = tuple(sorted(expected))
    if ruled != og.arcs:
        actual = set(og.arcs)
        odd = next(arc for arc in ruled if arc not in actual)
        raise ConstructionBugError(f"arc {odd} disagrees with the distance orientation from α", witness=odd)
    return og


def lifted_dot(lg: LiftedGraph) -> str:
    """DOT text with the box classes in colour and the grid classes in grey."""
    return to_dot(lg.graph, lg.theta, class_names=lg.class_names(), highlight=lg.box_classes, name="lift")


def lifted_to_payload(lg: LiftedGraph) -> dict[str, object]:
    payload = graph_to_payload(lg.graph)
    payload["alpha"] = lg.alpha
    payload["beta"] = lg.beta
    payload["boxes"] = hypergraph_to_payload(lg.boxes)
    payload["theta_labels"] = {str(cls): label.to_payload() for cls, label in lg.theta_labels.items()}
    return payload


def is_lifted_payload(payload: Mapping[str, object]) -> bool:
    return "boxes" in payload and "theta_labels" in payload


def lifted_from_payload(
    payload: Mapping[str, object],
    *,
    max_vertices: int = DEFAULT_MAX_LIFT_VERTICES,
    exact_limit: int = DEFAULT_EXACT_LIMIT,
) -> LiftedGraph:
    """Rebuild the lift from the embedded boxes; the stored graph and labels must match it."""
    stored = graph_from_payload(payload)
    try:
        bh = hypergraph_from_payload(payload["boxes"])  # type: ignore[arg-type]
        alpha, beta = int(payload["alpha"]), int(payload["beta"])  # type: ignore[call-overload]
        labels = payload["theta_labels"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed lifted graph: {exc}") from exc
    lg = lift_hypergraph(bh, max_vertices=max_vertices, exact_limit=exact_limit)
    if not lg.graph.same_as(stored) or (alpha, beta) != (lg.alpha, lg.beta):
        raise SchemaError("stored graph differs from the lift of its boxes")
    rebuilt = {str(cls): label.to_payload() for cls, label in lg.theta_labels.items()}
    if labels != rebuilt:
        raise SchemaError("stored Θ-class labels differ from the rebuilt ones")
    return lg


def save_lifted(path: Path, lg: LiftedGraph) -> None:
    write_json(path, lifted_to_payload(lg))


def load_lifted(path: Path, **options) -> LiftedGraph:
    return lifted_from_payload(read_json(path), **options)
