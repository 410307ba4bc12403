from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Mapping

import networkx as nx
import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from ..errors import InvalidGraphError, SchemaError, UnknownVertexError


SCHEMA = "medianlab/1"

Edge = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph over integer vertex ids.

    Vertices and edges are stored sorted so every derived iteration order is
    deterministic. Coordinates are an optional integer payload per vertex.
    """

    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]
    coords: Mapping[int, tuple[int, ...]] = field(default_factory=dict)

    @classmethod
    def build(
        cls,
        vertices: Iterable[int],
        edges: Iterable[tuple[int, int]],
        coords: Mapping[int, tuple[int, ...]] | None = None,
        *,
        connected: bool = True,
    ) -> Graph:
        vertex_list = sorted(set(int(v) for v in vertices))
        declared = set(vertex_list)
        seen: set[Edge] = set()
        for raw_u, raw_v in edges:
            u, v = int(raw_u), int(raw_v)
            if u == v:
                raise InvalidGraphError(f"loop at vertex {u}", witness=(u, v))
            if u not in declared or v not in declared:
                raise InvalidGraphError(f"edge ({u}, {v}) uses an undeclared vertex", witness=(u, v))
            key = edge_key(u, v)
            if key in seen:
                raise InvalidGraphError(f"duplicate edge {key}", witness=key)
            seen.add(key)
        payload = {int(v): tuple(int(c) for c in coord) for v, coord in (coords or {}).items()}
        for vertex in payload:
            if vertex not in declared:
                raise InvalidGraphError(f"coordinate given for undeclared vertex {vertex}", witness=vertex)
        graph = cls(tuple(vertex_list), tuple(sorted(seen)), payload)
        if connected and not graph.is_connected():
            raise InvalidGraphError("graph is not connected")
        return graph

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, vertex: object) -> bool:
        return vertex in self.index

    @cached_property
    def index(self) -> dict[int, int]:
        return {vertex: position for position, vertex in enumerate(self.vertices)}

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {edge: position for position, edge in enumerate(self.edges)}

    @cached_property
    def neighbors(self) -> dict[int, tuple[int, ...]]:
        buckets: dict[int, list[int]] = {vertex: [] for vertex in self.vertices}
        for u, v in self.edges:
            buckets[u].append(v)
            buckets[v].append(u)
        return {vertex: tuple(sorted(items)) for vertex, items in buckets.items()}

    @cached_property
    def neighbor_sets(self) -> dict[int, frozenset[int]]:
        return {vertex: frozenset(items) for vertex, items in self.neighbors.items()}

    @cached_property
    def edge_array(self) -> np.ndarray:
        """Edges as an (m, 2) array of vertex positions."""
        if not self.edges:
            return np.zeros((0, 2), dtype=np.int64)
        return np.array([(self.index[u], self.index[v]) for u, v in self.edges], dtype=np.int64)

    @cached_property
    def adjacency(self) -> sparse.csr_matrix:
        n = len(self.vertices)
        pairs = self.edge_array
        rows = np.concatenate([pairs[:, 0], pairs[:, 1]])
        cols = np.concatenate([pairs[:, 1], pairs[:, 0]])
        data = np.ones(len(rows), dtype=np.int8)
        return sparse.csr_matrix((data, (rows, cols)), shape=(n, n))

    def require(self, vertex: int) -> int:
        try:
            return self.index[vertex]
        except KeyError:
            raise UnknownVertexError(f"unknown vertex {vertex!r}", witness=vertex) from None

    def degree(self, vertex: int) -> int:
        self.require(vertex)
        return len(self.neighbors[vertex])

    def max_degree(self) -> int:
        return max((len(items) for items in self.neighbors.values()), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbor_sets.get(u, ())

    def is_connected(self) -> bool:
        if len(self.vertices) <= 1:
            return True
        count, _ = csgraph.connected_components(self.adjacency, directed=False)
        return count == 1

    def components(self) -> list[tuple[int, ...]]:
        if not self.vertices:
            return []
        _, labels = csgraph.connected_components(self.adjacency, directed=False)
        groups: dict[int, list[int]] = {}
        for position, label in enumerate(labels.tolist()):
            groups.setdefault(label, []).append(self.vertices[position])
        return sorted((tuple(items) for items in groups.values()), key=lambda items: items[0])

    def induced(self, keep: Iterable[int], *, connected: bool = False) -> Graph:
        chosen = set(keep)
        for vertex in chosen:
            self.require(vertex)
        edges = [(u, v) for u, v in self.edges if u in chosen and v in chosen]
        coords = {v: c for v, c in self.coords.items() if v in chosen}
        return Graph.build(chosen, edges, coords, connected=connected)

    def relabel(self, mapping: Mapping[int, int], *, connected: bool = True) -> Graph:
        edges = [(mapping[u], mapping[v]) for u, v in self.edges]
        coords = {mapping[v]: c for v, c in self.coords.items()}
        return Graph.build((mapping[v] for v in self.vertices), edges, coords, connected=connected)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.edges)
        return graph

    def same_as(self, other: Graph) -> bool:
        return self.vertices == other.vertices and self.edges == other.edges


def path_graph(n: int) -> Graph:
    return Graph.build(range(n), [(i, i + 1) for i in range(n - 1)], {i: (i,) for i in range(n)})


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidGraphError("a cycle needs at least 3 vertices")
    return Graph.build(range(n), [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.build(range(n), itertools.combinations(range(n), 2), connected=n > 0)


def complete_bipartite(a: int, b: int) -> Graph:
    left = range(a)
    right = range(a, a + b)
    return Graph.build(range(a + b), [(u, v) for u in left for v in right])


def star_graph(leaves: int) -> Graph:
    """Star K_{1,leaves} with center 0."""
    return Graph.build(range(leaves + 1), [(0, i) for i in range(1, leaves + 1)])


def grid_graph(dims: Iterable[int]) -> Graph:
    """Cartesian product of paths; vertex ids are row-major lattice ranks."""
    shape = tuple(int(d) for d in dims)
    if any(d < 1 for d in shape):
        raise InvalidGraphError(f"grid dimensions must be positive: {shape}")
    strides = _strides(shape)
    coords: dict[int, tuple[int, ...]] = {}
    edges: list[Edge] = []
    for point in itertools.product(*(range(d) for d in shape)):
        vertex = sum(p * s for p, s in zip(point, strides))
        coords[vertex] = point
        for axis, size in enumerate(shape):
            if point[axis] + 1 < size:
                edges.append((vertex, vertex + strides[axis]))
    return Graph.build(coords.keys(), edges, coords)


def hypercube(dim: int) -> Graph:
    return grid_graph([2] * dim)


def random_tree(n: int, rng: np.random.Generator) -> Graph:
    edges = [(int(rng.integers(0, i)), i) for i in range(1, n)]
    return Graph.build(range(n), edges)


def _strides(shape: tuple[int, ...]) -> tuple[int, ...]:
    strides = []
    step = 1
    for size in reversed(shape):
        strides.append(step)
        step *= size
    return tuple(reversed(strides))


def graph_to_payload(graph: Graph) -> dict[str, object]:
    vertices = []
    for vertex in graph.vertices:
        entry: dict[str, object] = {"id": vertex}
        if vertex in graph.coords:
            entry["coord"] = list(graph.coords[vertex])
        vertices.append(entry)
    return {"vertices": vertices, "edges": [list(edge) for edge in graph.edges]}


def graph_from_payload(payload: Mapping[str, object], *, connected: bool = True) -> Graph:
    try:
        raw_vertices = payload["vertices"]
        raw_edges = payload["edges"]
        ids: list[int] = []
        coords: dict[int, tuple[int, ...]] = {}
        for entry in raw_vertices:  # type: ignore[union-attr]
            vertex = int(entry["id"])
            ids.append(vertex)
            if entry.get("coord") is not None:
                coords[vertex] = tuple(int(c) for c in entry["coord"])
        edges = [(int(u), int(v)) for u, v in raw_edges]  # type: ignore[union-attr]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed graph payload: {exc}") from exc
    return Graph.build(ids, edges, coords, connected=connected)


def write_json(path: Path, payload: Mapping[str, object]) -> None:
    body = {"schema": SCHEMA, **payload}
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(body, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def read_json(path: Path) -> dict[str, object]:
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise SchemaError(f"file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    if not isinstance(payload, dict):
        raise SchemaError(f"{path}: expected a JSON object")
    schema = payload.get("schema", SCHEMA)
    if schema != SCHEMA:
        raise SchemaError(f"{path}: unsupported schema {schema!r}")
    return payload


def save_graph(path: Path, graph: Graph) -> None:
    write_json(path, graph_to_payload(graph))


def load_graph(path: Path) -> Graph:
    return graph_from_payload(read_json(path))
