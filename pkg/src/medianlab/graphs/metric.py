from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np
from scipy.sparse import csgraph

from ..errors import InvalidGraphError
from .graph import Graph


# BFS rows are produced in chunks so large graphs never hold a full distance matrix.
DISTANCE_CHUNK = 128


def distance_rows(graph: Graph, sources: Iterable[int]) -> np.ndarray:
    """Exact BFS distances from each source (rows) to every vertex (columns, graph order)."""
    positions = [graph.require(source) for source in sources]
    if not positions:
        return np.zeros((0, len(graph.vertices)), dtype=np.int64)
    rows = csgraph.shortest_path(graph.adjacency, method="D", unweighted=True, directed=False, indices=positions)
    rows = np.atleast_2d(rows)
    if np.isinf(rows).any():
        raise InvalidGraphError("graph is not connected")
    return rows.astype(np.int64)


def iter_distance_rows(graph: Graph, sources: list[int], chunk: int = DISTANCE_CHUNK) -> Iterator[tuple[list[int], np.ndarray]]:
    for start in range(0, len(sources), chunk):
        batch = sources[start : start + chunk]
        yield batch, distance_rows(graph, batch)


def distance_matrix(graph: Graph) -> np.ndarray:
    return distance_rows(graph, graph.vertices)


def all_distances(graph: Graph, u: int) -> dict[int, int]:
    row = distance_rows(graph, [u])[0]
    return {vertex: int(row[position]) for position, vertex in enumerate(graph.vertices)}


def distance(graph: Graph, u: int, v: int) -> int:
    row = distance_rows(graph, [u])[0]
    return int(row[graph.require(v)])


def interval(graph: Graph, u: int, v: int) -> frozenset[int]:
    rows = distance_rows(graph, [u, v])
    total = rows[0, graph.require(v)]
    mask = rows[0] + rows[1] == total
    return frozenset(graph.vertices[position] for position in np.flatnonzero(mask))


def _mask(graph: Graph, members: Iterable[int]) -> np.ndarray:
    mask = np.zeros(len(graph.vertices), dtype=bool)
    for vertex in members:
        mask[graph.require(vertex)] = True
    return mask


@dataclass(frozen=True)
class ConvexityVerdict:
    ok: bool
    witness: tuple[int, int, int] | None = None


def is_convex(graph: Graph, members: Iterable[int]) -> ConvexityVerdict:
    """Interval-closure convexity.

    A set S is convex iff for every edge sw leaving S no t in S has d(w, t) = d(s, t) - 1,
    so only BFS rows from boundary vertices are needed. The witness is (s, w, t) with
    w on an s-t geodesic.
    """
    inside = _mask(graph, members)
    if not inside.any():
        return ConvexityVerdict(True)
    pairs = graph.edge_array
    crossing = inside[pairs[:, 0]] != inside[pairs[:, 1]]
    boundary: list[tuple[int, int]] = []
    for a, b in pairs[crossing].tolist():
        s, w = (a, b) if inside[a] else (b, a)
        boundary.append((s, w))
    if not boundary:
        return ConvexityVerdict(True)
    sources = sorted({position for edge in boundary for position in edge})
    members_positions = np.flatnonzero(inside)
    row_of: dict[int, np.ndarray] = {}
    for batch, rows in iter_distance_rows(graph, [graph.vertices[p] for p in sources]):
        for vertex, row in zip(batch, rows):
            row_of[graph.index[vertex]] = row[members_positions]
    for s, w in sorted(boundary):
        closer = np.flatnonzero(row_of[w] == row_of[s] - 1)
        if closer.size:
            t = members_positions[closer[0]]
            return ConvexityVerdict(False, (graph.vertices[s], graph.vertices[w], graph.vertices[t]))
    return ConvexityVerdict(True)


def is_locally_convex(graph: Graph, members: Iterable[int]) -> ConvexityVerdict:
    """In a bipartite graph: no outside vertex has two neighbours inside.

    The witness is (s, w, t) with s, t inside sharing the outside neighbour w.
    """
    inside = _mask(graph, members)
    counts = graph.adjacency @ inside.astype(np.int64)
    offenders = np.flatnonzero((~inside) & (counts >= 2))
    if offenders.size == 0:
        return ConvexityVerdict(True)
    w = graph.vertices[offenders[0]]
    s, t = [v for v in graph.neighbors[w] if inside[graph.index[v]]][:2]
    return ConvexityVerdict(False, (s, w, t))


@dataclass(frozen=True)
class GateVerdict:
    ok: bool
    gates: dict[int, int] = field(default_factory=dict)
    witness: int | None = None


def is_gated(graph: Graph, members: Iterable[int]) -> GateVerdict:
    """Gatedness with the gate map on success and an offending outside vertex on failure."""
    chosen = sorted(set(members))
    if not chosen:
        raise InvalidGraphError("gatedness of the empty set is undefined")
    inside = _mask(graph, chosen)
    member_positions = np.array([graph.index[v] for v in chosen], dtype=np.int64)

    # Multi-source BFS from the set; the nearest point must be unique.
    n = len(graph.vertices)
    nearest = np.full(n, -1, dtype=np.int64)
    depth = np.full(n, -1, dtype=np.int64)
    ambiguous = np.zeros(n, dtype=bool)
    nearest[member_positions] = member_positions
    depth[member_positions] = 0
    frontier = member_positions.tolist()
    level = 0
    neighbors = graph.neighbors
    index = graph.index
    vertices = graph.vertices
    while frontier:
        level += 1
        following: list[int] = []
        for position in frontier:
            for other in neighbors[vertices[position]]:
                target = index[other]
                if depth[target] == -1:
                    depth[target] = level
                    nearest[target] = nearest[position]
                    ambiguous[target] = ambiguous[position]
                    following.append(target)
                elif depth[target] == level and (nearest[target] != nearest[position] or ambiguous[position]):
                    ambiguous[target] = True
        frontier = following
    if (depth < 0).any():
        raise InvalidGraphError("graph is not connected")
    outside = np.flatnonzero(~inside)
    if ambiguous.any():
        return GateVerdict(False, witness=vertices[int(np.flatnonzero(ambiguous)[0])])

    # Unique nearest points are gates iff d(s, w) = d(s, g(w)) + d(w, S) for every s in S.
    for batch, rows in iter_distance_rows(graph, chosen):
        for _, row in zip(batch, rows):
            bad = row[outside] != row[nearest[outside]] + depth[outside]
            if bad.any():
                return GateVerdict(False, witness=vertices[int(outside[np.flatnonzero(bad)[0]])])
    gates = {vertices[p]: vertices[int(nearest[p])] for p in range(n)}
    return GateVerdict(True, gates)
