from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import networkx as nx
import numpy as np

from ..graphs.oriented import OrientedGraph
from ..graphs.theta import ThetaStructure, theta_classes
from .domain import DEFAULT_DOMAIN_LIMIT, class_signature, domain, event_structure_from_pointed
from .structure import EventStructure


@dataclass(frozen=True)
class RoundtripVerdict:
    ok: bool
    reason: str = ""
    method: str = ""


def _structure_digraph(es: EventStructure) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(es.events)
    for a, b in np.argwhere(es.strict).tolist():
        graph.add_edge(es.events[a], es.events[b], kind="order")
    for a, b in es.conflict:
        graph.add_edge(a, b, kind="conflict")
        graph.add_edge(b, a, kind="conflict")
    return graph


def structures_match(a: EventStructure, b: EventStructure, mapping: Mapping[int, int]) -> bool:
    """Whether `mapping` (events of a to events of b) preserves <= and ⌣ both ways."""
    if len(a.events) != len(b.events) or sorted(mapping) != list(a.events):
        return False
    if sorted(mapping.values()) != list(b.events):
        return False
    order = [b.index[mapping[e]] for e in a.events]
    permuted_leq = b.leq[np.ix_(order, order)]
    permuted_conflict = b.conflict_matrix[np.ix_(order, order)]
    return bool((permuted_leq == a.leq).all() and (permuted_conflict == a.conflict_matrix).all())


def isomorphic_event_structures(a: EventStructure, b: EventStructure) -> bool:
    if len(a.events) != len(b.events) or len(a.conflict) != len(b.conflict):
        return False
    return nx.is_isomorphic(
        _structure_digraph(a),
        _structure_digraph(b),
        edge_match=lambda x, y: x["kind"] == y["kind"],
    )


def _pointed_digraph(og: OrientedGraph) -> nx.DiGraph:
    graph = nx.DiGraph()
    for vertex in og.base.vertices:
        graph.add_node(vertex, root=vertex == og.basepoint)
    graph.add_edges_from(og.arcs)
    return graph


def isomorphic_pointed(og1: OrientedGraph, og2: OrientedGraph) -> bool:
    """Directed isomorphism fixing the basepoints."""
    if len(og1.base.vertices) != len(og2.base.vertices) or len(og1.arcs) != len(og2.arcs):
        return False
    return nx.is_isomorphic(
        _pointed_digraph(og1),
        _pointed_digraph(og2),
        node_match=lambda x, y: x["root"] == y["root"],
    )


def roundtrip_pointed(og: OrientedGraph, t: ThetaStructure, *, limit: int = DEFAULT_DOMAIN_LIMIT, fallback_limit: int = 2000) -> RoundtripVerdict:
    """domain(E_v) against G_v through the vertex -> class-signature map.

    Each vertex maps to the set of classes whose far halfspace holds it; the map
    must be a bijection onto configurations that carries arcs onto atomic
    extensions. When it is not, networkx isomorphism decides on small graphs.
    """
    es = event_structure_from_pointed(og, t)
    rebuilt = domain(es, limit)
    vertex_of = {labels: vertex for vertex, labels in rebuilt.labels.items()}
    image = {}
    for vertex in og.base.vertices:
        signature = class_signature(t, vertex)
        if signature not in vertex_of:
            break
        image[vertex] = vertex_of[signature]
    else:
        if len(set(image.values())) == len(rebuilt.base.vertices) == len(image):
            mapped = sorted((image[u], image[v]) for u, v in og.arcs)
            if mapped == sorted(rebuilt.arcs) and image[og.basepoint] == rebuilt.basepoint:
                return RoundtripVerdict(True, method="class-signature")
    if len(og.base.vertices) <= fallback_limit and isomorphic_pointed(og, rebuilt):
        return RoundtripVerdict(True, method="isomorphism")
    return RoundtripVerdict(False, "domain of the derived event structure differs from the pointed graph", "class-signature")


def roundtrip_structure(es: EventStructure, *, limit: int = DEFAULT_DOMAIN_LIMIT) -> RoundtripVerdict:
    """E_∅(domain(E)) against E, first through the class -> labelling-event map."""
    hasse = domain(es, limit)
    t = theta_classes(hasse.base, hasse.basepoint)
    derived = event_structure_from_pointed(hasse, t)
    mapping: dict[int, int] = {}
    for cls, members in enumerate(t.classes):
        u, v = members[0]
        low, high = (u, v) if hasse.levels[u] < hasse.levels[v] else (v, u)
        (event,) = hasse.labels[high] - hasse.labels[low]
        mapping[cls] = event
    if len(set(mapping.values())) == len(mapping) and structures_match(derived, es, mapping):
        return RoundtripVerdict(True, method="class-label")
    if isomorphic_event_structures(derived, es):
        return RoundtripVerdict(True, method="isomorphism")
    return RoundtripVerdict(False, "derived event structure is not isomorphic to the input", "class-label")
