from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

from ..errors import ThetaError
from .graph import Edge, Graph
from .metric import distance_rows


@dataclass(frozen=True)
class OrientedGraph:
    """A graph pointed at a basepoint, every edge directed away from it.

    `labels` optionally carries a payload per vertex (configurations of a domain).
    """

    base: Graph
    basepoint: int
    levels: Mapping[int, int]
    arcs: tuple[Edge, ...]
    labels: Mapping[int, frozenset[int]] = field(default_factory=dict)

    @cached_property
    def out_neighbors(self) -> dict[int, tuple[int, ...]]:
        buckets: dict[int, list[int]] = {vertex: [] for vertex in self.base.vertices}
        for tail, head in self.arcs:
            buckets[tail].append(head)
        return {vertex: tuple(sorted(items)) for vertex, items in buckets.items()}

    @cached_property
    def in_neighbors(self) -> dict[int, tuple[int, ...]]:
        buckets: dict[int, list[int]] = {vertex: [] for vertex in self.base.vertices}
        for tail, head in self.arcs:
            buckets[head].append(tail)
        return {vertex: tuple(sorted(items)) for vertex, items in buckets.items()}

    def out_degree(self, vertex: int) -> int:
        return len(self.out_neighbors[vertex])

    def in_degree(self, vertex: int) -> int:
        return len(self.in_neighbors[vertex])

    def max_out_degree(self) -> int:
        return max((len(items) for items in self.out_neighbors.values()), default=0)

    def tail_of(self, u: int, v: int) -> int:
        return u if self.levels[u] < self.levels[v] else v


def orient(graph: Graph, basepoint: int, labels: Mapping[int, frozenset[int]] | None = None) -> OrientedGraph:
    """Direct each edge xy as x -> y iff d(x, basepoint) < d(y, basepoint)."""
    row = distance_rows(graph, [basepoint])[0]
    levels = {vertex: int(row[position]) for position, vertex in enumerate(graph.vertices)}
    arcs: list[Edge] = []
    for u, v in graph.edges:
        if levels[u] == levels[v]:
            raise ThetaError(
                f"edge ({u}, {v}) is equidistant from {basepoint}; the graph is not bipartite",
                code="NOT_BIPARTITE",
                witness=(u, v, basepoint),
            )
        arcs.append((u, v) if levels[u] < levels[v] else (v, u))
    return OrientedGraph(graph, basepoint, levels, tuple(sorted(arcs)), dict(labels or {}))


def basepoint_order(og: OrientedGraph, x: int, y: int) -> bool:
    """x <=_v y iff x lies on a geodesic from the basepoint to y."""
    rows = distance_rows(og.base, [x])
    return og.levels[x] + int(rows[0, og.base.require(y)]) == og.levels[y]
