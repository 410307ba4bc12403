from __future__ import annotations

from typing import Mapping

import numpy as np

from ..errors import InvalidGraphError, NotGatedError, PartialMapError
from .cubes import squares
from .graph import Graph, edge_key, hypercube
from .metric import is_gated


def glue(g1: Graph, g2: Graph, identification: Mapping[int, int]) -> tuple[Graph, dict[int, int]]:
    """Union of g1 and g2 with each g1 vertex `u` merged into g2 vertex `identification[u]`.

    g1 keeps its ids; the remaining g2 vertices are renumbered after max(g1) in
    sorted order. Returns the glued graph and the map from g2 ids to glued ids.
    No gatedness is checked here.
    """
    for u, v in identification.items():
        g1.require(u)
        g2.require(v)
    if len(set(identification.values())) != len(identification):
        raise PartialMapError("identification is not injective")
    mapping: dict[int, int] = {v: u for u, v in identification.items()}
    next_id = (max(g1.vertices) + 1) if g1.vertices else 0
    for vertex in g2.vertices:
        if vertex not in mapping:
            mapping[vertex] = next_id
            next_id += 1
    edges = set(g1.edges)
    for u, v in g2.edges:
        edges.add(edge_key(mapping[u], mapping[v]))
    vertices = set(g1.vertices) | set(mapping.values())
    return Graph.build(vertices, sorted(edges), dict(g1.coords), connected=False), mapping


def gated_amalgam(g1: Graph, g2: Graph, identification: Mapping[int, int]) -> Graph:
    """Glue g1 and g2 along a common subgraph that must be gated on both sides.

    Raises NotGatedError naming the side ("g1" or "g2") and an outside vertex with
    no gate; InvalidGraphError when the identified induced subgraphs differ.
    """
    if not identification:
        raise InvalidGraphError("gated amalgam needs a non-empty identification")
    left = sorted(identification)
    for u in left:
        g1.require(u)
        g2.require(identification[u])
    for a_index, u in enumerate(left):
        for w in left[a_index + 1 :]:
            if g1.has_edge(u, w) != g2.has_edge(identification[u], identification[w]):
                raise InvalidGraphError(
                    f"identified subgraphs differ at pair ({u}, {w})",
                    witness=(u, w),
                )
    for side, graph, members in (("g1", g1, left), ("g2", g2, [identification[u] for u in left])):
        verdict = is_gated(graph, members)
        if not verdict.ok:
            raise NotGatedError(
                f"common subgraph is not gated in {side}: vertex {verdict.witness} has no gate",
                side=side,
                witness=verdict.witness,
            )
    glued, _ = glue(g1, g2, identification)
    if not glued.is_connected():
        raise InvalidGraphError("gated amalgam is not connected")
    return glued


def random_cube_amalgam(rng: np.random.Generator, blocks: int, *, max_dim: int = 3) -> Graph:
    """Median graph grown by gluing random hypercubes along a vertex, an edge or a square."""
    graph = hypercube(int(rng.integers(1, max_dim + 1)))
    for _ in range(max(0, blocks - 1)):
        dim = int(rng.integers(1, max_dim + 1))
        cube = hypercube(dim)
        four_cycles = squares(graph)
        choices = ["vertex", "edge"]
        if dim >= 2 and four_cycles:
            choices.append("square")
        kind = choices[int(rng.integers(0, len(choices)))]
        if kind == "vertex":
            anchor = graph.vertices[int(rng.integers(0, len(graph.vertices)))]
            identification = {anchor: 0}
        elif kind == "edge":
            u, v = graph.edges[int(rng.integers(0, len(graph.edges)))]
            identification = {u: 0, v: 1}
        else:
            a, b, c, d = four_cycles[int(rng.integers(0, len(four_cycles)))]
            identification = {a: 0, b: 1, c: 3, d: 2}
        graph = gated_amalgam(graph, cube, identification)
    return graph
