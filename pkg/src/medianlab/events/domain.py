from __future__ import annotations

import itertools
from typing import Iterable

import networkx as nx
import numpy as np

from ..errors import DomainTooLargeError, UnknownVertexError
from ..graphs.graph import Graph
from ..graphs.oriented import OrientedGraph
from ..graphs.theta import ThetaStructure
from .structure import EventStructure


DEFAULT_DOMAIN_LIMIT = 100_000


def is_configuration(es: EventStructure, configuration: Iterable[int]) -> bool:
    """Conflict-free and downward-closed."""
    members = set(configuration)
    positions = [es.require(event) for event in members]
    if not positions:
        return True
    chosen = np.zeros(len(es.events), dtype=bool)
    chosen[positions] = True
    if (es.conflict_matrix[np.ix_(positions, positions)]).any():
        return False
    below = es.strict[:, positions].any(axis=1)
    return not (below & ~chosen).any()


def _masks(es: EventStructure) -> tuple[list[int], list[int]]:
    predecessors = [0] * len(es.events)
    conflicts = [0] * len(es.events)
    for target in range(len(es.events)):
        for source in np.flatnonzero(es.strict[:, target]).tolist():
            predecessors[target] |= 1 << source
        for other in np.flatnonzero(es.conflict_matrix[target]).tolist():
            conflicts[target] |= 1 << other
    return predecessors, conflicts


def _enumerate(es: EventStructure, limit: int) -> tuple[list[int], list[tuple[int, int, int]]]:
    """Configurations as event bitmasks level by level, plus atomic extensions (from, to, event)."""
    predecessors, conflicts = _masks(es)
    n = len(es.events)
    found = [0]
    seen = {0}
    extensions: list[tuple[int, int, int]] = []
    frontier = [0]
    while frontier:
        following: list[int] = []
        for current in frontier:
            for position in range(n):
                bit = 1 << position
                if current & bit or predecessors[position] & ~current or conflicts[position] & current:
                    continue
                grown = current | bit
                extensions.append((current, grown, position))
                if grown not in seen:
                    seen.add(grown)
                    found.append(grown)
                    following.append(grown)
                    if len(found) > limit:
                        raise DomainTooLargeError(limit)
        frontier = following
    return found, extensions


def _as_events(es: EventStructure, mask: int) -> frozenset[int]:
    return frozenset(es.events[p] for p in range(len(es.events)) if mask >> p & 1)


def _configuration_key(events: frozenset[int]) -> tuple[int, tuple[int, ...]]:
    return len(events), tuple(sorted(events))


def configurations(es: EventStructure, limit: int = DEFAULT_DOMAIN_LIMIT) -> list[frozenset[int]]:
    masks, _ = _enumerate(es, limit)
    return sorted((_as_events(es, mask) for mask in masks), key=_configuration_key)


def domain(es: EventStructure, limit: int = DEFAULT_DOMAIN_LIMIT) -> OrientedGraph:
    """Hasse diagram of D(E) pointed at the empty configuration.

    Vertex ids follow configurations sorted by (size, sorted events), so the empty
    configuration is vertex 0; `labels` maps each vertex to its configuration.
    """
    masks, extensions = _enumerate(es, limit)
    ordered = sorted(masks, key=lambda mask: _configuration_key(_as_events(es, mask)))
    vertex_of = {mask: vertex for vertex, mask in enumerate(ordered)}
    arcs = sorted((vertex_of[low], vertex_of[high]) for low, high, _ in extensions)
    base = Graph.build(range(len(ordered)), arcs)
    labels = {vertex: _as_events(es, mask) for mask, vertex in vertex_of.items()}
    levels = {vertex: len(labels[vertex]) for vertex in labels}
    return OrientedGraph(base, 0, levels, tuple(arcs), labels)


def max_out_degree_of_domain(es: EventStructure, limit: int = DEFAULT_DOMAIN_LIMIT) -> int:
    return domain(es, limit).max_out_degree()


def event_structure_from_pointed(og: OrientedGraph, t: ThetaStructure) -> EventStructure:
    """E_v: Θ-classes as events, i <= j iff i separates the basepoint from j,
    conflict iff the classes are compatible and neither separates the other."""
    if og.basepoint != t.basepoint or not og.base.same_as(t.graph):
        raise ValueError("event structure needs Θ built over the oriented graph at its basepoint")
    k = len(t.classes)
    separation = t.separation
    order = nx.DiGraph()
    order.add_nodes_from(range(k))
    order.add_edges_from((int(i), int(j)) for i, j in np.argwhere(separation))
    causal = list(nx.transitive_reduction(order).edges()) if k else []
    crossing = t.crossing_pairs
    conflict = [
        (i, j)
        for i, j in itertools.combinations(range(k), 2)
        if (i, j) not in crossing and not separation[i, j] and not separation[j, i]
    ]
    return EventStructure.build(range(k), causal, conflict)


def class_signature(t: ThetaStructure, vertex: int) -> frozenset[int]:
    """Classes whose far halfspace contains the vertex; the configuration it stands for."""
    if vertex not in t.graph:
        raise UnknownVertexError(f"unknown vertex {vertex!r}", witness=vertex)
    column = t.sides[:, t.graph.index[vertex]]
    return frozenset(int(i) for i in np.flatnonzero(column))
