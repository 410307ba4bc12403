from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Mapping

import numpy as np

from ..errors import ThetaError
from .cubes import Square, squares
from .graph import Edge, Graph, edge_key
from .metric import distance_matrix, distance_rows
from .oriented import OrientedGraph


DEFAULT_EXACT_LIMIT = 2000


class RelationKind(str, Enum):
    CROSSING = "CROSSING"
    OSCULATING = "OSCULATING"
    DISJOINT = "DISJOINT"


@dataclass(frozen=True)
class ClassRelation:
    kind: RelationKind
    directed_osculation: bool | None = None


@dataclass(frozen=True, eq=False)
class ThetaStructure:
    """Θ-partition of a median graph with halfspaces relative to a basepoint.

    `sides[i, p]` is True when the vertex at position p lies in B_i, the halfspace
    of class i away from the basepoint. `exact` records whether halfspace convexity
    was verified by the full interval criterion or only locally.
    """

    graph: Graph
    basepoint: int
    class_of: Mapping[Edge, int]
    classes: tuple[tuple[Edge, ...], ...]
    sides: np.ndarray
    squares: tuple[Square, ...]
    exact: bool

    def __len__(self) -> int:
        return len(self.classes)

    def halfspaces(self, i: int) -> tuple[frozenset[int], frozenset[int]]:
        far = self.sides[i]
        vertices = self.graph.vertices
        near_side = frozenset(vertices[p] for p in np.flatnonzero(~far))
        far_side = frozenset(vertices[p] for p in np.flatnonzero(far))
        return near_side, far_side

    @property
    def halfspace_pairs(self) -> list[tuple[frozenset[int], frozenset[int]]]:
        return [self.halfspaces(i) for i in range(len(self.classes))]

    def in_far_side(self, i: int, vertex: int) -> bool:
        return bool(self.sides[i, self.graph.index[vertex]])

    def tail(self, edge: Edge) -> int:
        """Endpoint of an edge on the basepoint side of its class."""
        u, v = edge
        return v if self.in_far_side(self.class_of[edge_key(u, v)], u) else u

    def signatures(self) -> np.ndarray:
        """(n, k) boolean matrix: bit i of a vertex is set iff it lies in B_i."""
        return np.ascontiguousarray(self.sides.T)

    @cached_property
    def incident_classes(self) -> dict[int, tuple[int, ...]]:
        buckets: dict[int, set[int]] = {vertex: set() for vertex in self.graph.vertices}
        for edge, cls in self.class_of.items():
            buckets[edge[0]].add(cls)
            buckets[edge[1]].add(cls)
        return {vertex: tuple(sorted(items)) for vertex, items in buckets.items()}

    @cached_property
    def outgoing_classes(self) -> dict[int, tuple[int, ...]]:
        buckets: dict[int, set[int]] = {vertex: set() for vertex in self.graph.vertices}
        for edge, cls in self.class_of.items():
            buckets[self.tail(edge)].add(cls)
        return {vertex: tuple(sorted(items)) for vertex, items in buckets.items()}

    @cached_property
    def crossing_pairs(self) -> frozenset[tuple[int, int]]:
        pairs: set[tuple[int, int]] = set()
        for a, b, c, _ in self.squares:
            first = self.class_of[edge_key(a, b)]
            second = self.class_of[edge_key(b, c)]
            if first != second:
                pairs.add((min(first, second), max(first, second)))
        return frozenset(pairs)

    @cached_property
    def contact_pairs(self) -> frozenset[tuple[int, int]]:
        return _pairs_at_vertices(self.incident_classes.values())

    @cached_property
    def common_origin_pairs(self) -> frozenset[tuple[int, int]]:
        return _pairs_at_vertices(self.outgoing_classes.values())

    @cached_property
    def endpoints(self) -> np.ndarray:
        """(k, n) boolean incidence of class endpoints (the carrier vertex sets)."""
        matrix = np.zeros((len(self.classes), len(self.graph.vertices)), dtype=bool)
        index = self.graph.index
        for edge, cls in self.class_of.items():
            matrix[cls, index[edge[0]]] = True
            matrix[cls, index[edge[1]]] = True
        return matrix

    @cached_property
    def separation(self) -> np.ndarray:
        """separation[i, j] is True iff class i separates the basepoint from class j."""
        k = len(self.classes)
        outside_far = (~self.sides).astype(np.float32)
        # Endpoints of class j that are not in B_i; zero means Θ_j lies inside B_i.
        escaping = self.endpoints.astype(np.float32) @ outside_far.T
        result = escaping.T == 0
        np.fill_diagonal(result, False)
        for i, j in self.crossing_pairs:
            result[i, j] = result[j, i] = False
        return result.reshape(k, k)


def _pairs_at_vertices(groups) -> frozenset[tuple[int, int]]:
    pairs: set[tuple[int, int]] = set()
    for group in groups:
        pairs.update(itertools.combinations(group, 2))
    return frozenset(pairs)


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, item: int) -> int:
        root = item
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[item] != root:
            self.parent[item], item = root, self.parent[item]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


def theta_classes(graph: Graph, basepoint: int, *, exact_limit: int = DEFAULT_EXACT_LIMIT) -> ThetaStructure:
    """Θ-classes by square closure, checked against Djoković cutsets and halfspace convexity.

    Raises ThetaError (THETA_NOT_TRANSITIVE or HALFSPACE_NOT_CONVEX) when the graph is
    not median-like; up to `exact_limit` vertices convexity is decided exactly, beyond
    that by the local criterion.
    """
    graph.require(basepoint)
    edge_index = graph.edge_index
    four_cycles = squares(graph)
    forest = _UnionFind(len(graph.edges))
    for a, b, c, d in four_cycles:
        forest.union(edge_index[edge_key(a, b)], edge_index[edge_key(c, d)])
        forest.union(edge_index[edge_key(b, c)], edge_index[edge_key(d, a)])

    roots: dict[int, int] = {}
    labels = np.empty(len(graph.edges), dtype=np.int64)
    for position in range(len(graph.edges)):
        root = forest.find(position)
        labels[position] = roots.setdefault(root, len(roots))
    classes: list[list[Edge]] = [[] for _ in roots]
    for position, edge in enumerate(graph.edges):
        classes[labels[position]].append(edge)

    pairs = graph.edge_array
    base_position = graph.index[basepoint]
    sides = np.zeros((len(classes), len(graph.vertices)), dtype=bool)
    for cls, members in enumerate(classes):
        x, y = members[0]
        rows = distance_rows(graph, [x, y])
        tied = np.flatnonzero(rows[0] == rows[1])
        if tied.size:
            z = graph.vertices[int(tied[0])]
            raise ThetaError(
                f"vertex {z} is equidistant from both ends of edge ({x}, {y})",
                code="THETA_NOT_TRANSITIVE",
                witness=(x, y, z),
            )
        far = rows[1] < rows[0]
        cut = far[pairs[:, 0]] != far[pairs[:, 1]]
        mismatch = np.flatnonzero(cut != (labels == cls))
        if mismatch.size:
            odd = graph.edges[int(mismatch[0])]
            raise ThetaError(
                f"Djoković cutset of ({x}, {y}) disagrees with its square closure at edge {odd}",
                code="THETA_NOT_TRANSITIVE",
                witness=((x, y), odd),
            )
        sides[cls] = ~far if far[base_position] else far

    exact = len(graph.vertices) <= exact_limit
    if exact:
        _check_convex_exact(graph, sides, labels)
    else:
        _check_convex_local(graph, sides)

    class_of = {edge: int(labels[position]) for position, edge in enumerate(graph.edges)}
    return ThetaStructure(
        graph=graph,
        basepoint=basepoint,
        class_of=class_of,
        classes=tuple(tuple(members) for members in classes),
        sides=sides,
        squares=tuple(four_cycles),
        exact=exact,
    )


def _check_convex_exact(graph: Graph, sides: np.ndarray, labels: np.ndarray) -> None:
    # Halfspace A is convex iff A ⊆ W(s, w) for each cut edge sw with s ∈ A.
    dist = distance_matrix(graph)
    pairs = graph.edge_array
    for cls in range(sides.shape[0]):
        far = sides[cls]
        members = pairs[labels == cls]
        near_end = np.where(far[members[:, 0]], members[:, 1], members[:, 0])
        far_end = np.where(far[members[:, 0]], members[:, 0], members[:, 1])
        for inside, s_ends, w_ends in ((~far, near_end, far_end), (far, far_end, near_end)):
            columns = np.flatnonzero(inside)
            closer = dist[np.ix_(w_ends, columns)] < dist[np.ix_(s_ends, columns)]
            if closer.any():
                row, col = np.argwhere(closer)[0]
                witness = (
                    graph.vertices[int(s_ends[row])],
                    graph.vertices[int(w_ends[row])],
                    graph.vertices[int(columns[col])],
                )
                raise ThetaError(
                    f"halfspace of class {cls} is not convex: {witness[1]} lies between {witness[0]} and {witness[2]}",
                    code="HALFSPACE_NOT_CONVEX",
                    witness=witness,
                )


def _check_convex_local(graph: Graph, sides: np.ndarray) -> None:
    adjacency = graph.adjacency
    for cls in range(sides.shape[0]):
        for inside in (~sides[cls], sides[cls]):
            counts = adjacency @ inside.astype(np.int64)
            offenders = np.flatnonzero((~inside) & (counts >= 2))
            if offenders.size:
                w = graph.vertices[int(offenders[0])]
                s, t = [v for v in graph.neighbors[w] if inside[graph.index[v]]][:2]
                raise ThetaError(
                    f"halfspace of class {cls} is not locally convex at {w}",
                    code="HALFSPACE_NOT_CONVEX",
                    witness=(s, w, t),
                )


def djokovic_related(graph: Graph, e: Edge, f: Edge) -> bool:
    """xy Θ zw iff d(x,z) + d(y,w) != d(x,w) + d(y,z)."""
    x, y = e
    z, w = f
    rows = distance_rows(graph, [x, y])
    iz, iw = graph.require(z), graph.require(w)
    return int(rows[0, iz] + rows[1, iw]) != int(rows[0, iw] + rows[1, iz])


def class_relation(t: ThetaStructure, i: int, j: int, orientation: OrientedGraph | None = None) -> ClassRelation:
    if i == j:
        raise ValueError("class_relation needs two distinct classes")
    pair = (min(i, j), max(i, j))
    if pair in t.crossing_pairs:
        kind = RelationKind.CROSSING
    elif pair in t.contact_pairs:
        kind = RelationKind.OSCULATING
    else:
        kind = RelationKind.DISJOINT
    if orientation is None:
        return ClassRelation(kind)
    tails_i = {orientation.tail_of(*edge) for edge in t.classes[i]}
    tails_j = {orientation.tail_of(*edge) for edge in t.classes[j]}
    return ClassRelation(kind, bool(tails_i & tails_j))


def separates(t: ThetaStructure, i: int, j: int) -> bool:
    """Θ_i and Θ_j are compatible and every edge of Θ_j lies in B_i."""
    if i == j:
        raise ValueError("separates needs two distinct classes")
    return bool(t.separation[i, j])


def _class_graph(t: ThetaStructure, pairs) -> Graph:
    return Graph.build(range(len(t.classes)), sorted(pairs), connected=False)


def contact_graph(t: ThetaStructure) -> Graph:
    return _class_graph(t, t.contact_pairs)


def crossing_graph(t: ThetaStructure) -> Graph:
    return _class_graph(t, t.crossing_pairs)


def pointed_contact_graph(og: OrientedGraph, t: ThetaStructure) -> Graph:
    if og.basepoint != t.basepoint or not og.base.same_as(t.graph):
        raise ValueError("pointed contact graph needs Θ built over the oriented graph at its basepoint")
    origin_pairs: set[tuple[int, int]] = set()
    for vertex in og.base.vertices:
        classes = sorted({t.class_of[edge_key(vertex, head)] for head in og.out_neighbors[vertex]})
        origin_pairs.update(itertools.combinations(classes, 2))
    return _class_graph(t, t.crossing_pairs | origin_pairs)


def carrier(t: ThetaStructure, i: int) -> frozenset[int]:
    vertices = t.graph.vertices
    return frozenset(vertices[p] for p in np.flatnonzero(t.endpoints[i]))


def hyperplane_graph(t: ThetaStructure, i: int) -> Graph:
    """Edges of Θ_i as vertices (by edge position), adjacent when opposite in a square."""
    members = [t.graph.edge_index[edge] for edge in t.classes[i]]
    chosen = set(members)
    links: set[tuple[int, int]] = set()
    edge_index = t.graph.edge_index
    for a, b, c, d in t.squares:
        for first, second in (((a, b), (c, d)), ((b, c), (d, a))):
            p, q = edge_index[edge_key(*first)], edge_index[edge_key(*second)]
            if p in chosen and q in chosen:
                links.add((min(p, q), max(p, q)))
    return Graph.build(members, sorted(links), connected=False)
