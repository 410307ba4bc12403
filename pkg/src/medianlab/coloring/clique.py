from __future__ import annotations

from ..graphs.graph import Graph
from .models import Budget, BudgetExhausted, BudgetMeter, CliqueResult


def degeneracy_order(graph: Graph) -> list[int]:
    """Smallest-last ordering: repeatedly remove a vertex of minimum remaining degree."""
    remaining = {vertex: len(graph.neighbors[vertex]) for vertex in graph.vertices}
    alive = set(graph.vertices)
    removed: list[int] = []
    while alive:
        vertex = min(alive, key=lambda v: (remaining[v], v))
        alive.remove(vertex)
        removed.append(vertex)
        for other in graph.neighbors[vertex]:
            if other in alive:
                remaining[other] -= 1
    removed.reverse()
    return removed


def is_clique(graph: Graph, vertices) -> bool:
    chosen = list(vertices)
    for vertex in chosen:
        graph.require(vertex)
    if len(set(chosen)) != len(chosen):
        return False
    return all(graph.has_edge(u, v) for i, u in enumerate(chosen) for v in chosen[i + 1 :])


def max_clique(graph: Graph, budget: Budget | None = None) -> CliqueResult:
    """Branch and bound with greedy colour-class bounds over bitset candidate sets.

    Vertices are processed in degeneracy order. On budget exhaustion the best clique
    found so far is returned with `exact=False`.
    """
    if not graph.vertices:
        return CliqueResult((), True)
    meter = BudgetMeter(budget or Budget())
    order = degeneracy_order(graph)
    position = {vertex: p for p, vertex in enumerate(order)}
    adjacency = [0] * len(order)
    for u, v in graph.edges:
        pu, pv = position[u], position[v]
        adjacency[pu] |= 1 << pv
        adjacency[pv] |= 1 << pu

    best = _greedy_clique(order, adjacency)

    def expand(clique: list[int], candidates: int) -> None:
        nonlocal best
        meter.tick()
        for vertex, color in reversed(_color_classes(candidates, adjacency)):
            if len(clique) + color <= len(best):
                return
            grown = clique + [vertex]
            narrowed = candidates & adjacency[vertex]
            if narrowed:
                expand(grown, narrowed)
            elif len(grown) > len(best):
                best = grown
            candidates &= ~(1 << vertex)

    exact = True
    try:
        expand([], (1 << len(order)) - 1)
    except BudgetExhausted:
        exact = False
    return CliqueResult(tuple(sorted(order[p] for p in best)), exact, meter.nodes)


def _greedy_clique(order: list[int], adjacency: list[int]) -> list[int]:
    best: list[int] = []
    for start in range(len(order)):
        clique = [start]
        candidates = adjacency[start]
        while candidates:
            pick = max(_bits(candidates), key=lambda p: (bin(adjacency[p] & candidates).count("1"), -p))
            clique.append(pick)
            candidates &= adjacency[pick]
        if len(clique) > len(best):
            best = clique
    return best


def _color_classes(candidates: int, adjacency: list[int]) -> list[tuple[int, int]]:
    """Candidates tagged with greedy colour numbers, ascending by colour."""
    tagged: list[tuple[int, int]] = []
    remaining = candidates
    color = 0
    while remaining:
        color += 1
        available = remaining
        while available:
            vertex = (available & -available).bit_length() - 1
            available &= ~adjacency[vertex] & ~(1 << vertex)
            remaining &= ~(1 << vertex)
            tagged.append((vertex, color))
    return tagged


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
