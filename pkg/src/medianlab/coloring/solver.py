from __future__ import annotations

from typing import Mapping, Sequence

from ..errors import InvalidOrderError, PartialMapError
from ..graphs.graph import Edge, Graph
from .clique import degeneracy_order, max_clique
from .models import Budget, BudgetExhausted, BudgetMeter, ColoringResult


def monochromatic_edge(graph: Graph, colors: Mapping[int, int]) -> Edge | None:
    missing = [vertex for vertex in graph.vertices if vertex not in colors]
    if missing:
        raise PartialMapError(f"coloring misses vertex {missing[0]}", witness=missing[0])
    for u, v in graph.edges:
        if colors[u] == colors[v]:
            return (u, v)
    return None


def is_proper_coloring(graph: Graph, colors: Mapping[int, int]) -> bool:
    return monochromatic_edge(graph, colors) is None


def greedy_coloring(graph: Graph, order: Sequence[int] | None = None) -> ColoringResult:
    """First-fit colouring along `order`, or along the degeneracy order when omitted."""
    if order is None:
        sequence = degeneracy_order(graph)
    else:
        sequence = [int(vertex) for vertex in order]
        if sorted(sequence) != list(graph.vertices):
            raise InvalidOrderError("greedy order must list every vertex exactly once")
    colors: dict[int, int] = {}
    for vertex in sequence:
        used = {colors[other] for other in graph.neighbors[vertex] if other in colors}
        color = 0
        while color in used:
            color += 1
        colors[vertex] = color
    count = max(colors.values(), default=-1) + 1
    trivial = 0 if not graph.vertices else (2 if graph.edges else 1)
    return ColoringResult(colors, count, False, trivial)


def dsatur_coloring(graph: Graph) -> dict[int, int]:
    colors: dict[int, int] = {}
    seen: dict[int, set[int]] = {vertex: set() for vertex in graph.vertices}
    pending = set(graph.vertices)
    while pending:
        vertex = max(pending, key=lambda v: (len(seen[v]), len(graph.neighbors[v]), -v))
        color = 0
        while color in seen[vertex]:
            color += 1
        colors[vertex] = color
        pending.remove(vertex)
        for other in graph.neighbors[vertex]:
            seen[other].add(color)
    return colors


def chromatic_number(graph: Graph, budget: Budget | None = None) -> ColoringResult:
    """Exact χ by iterative k-colourability, one connected component at a time.

    Each component starts from its clique lower bound and the better of the
    degeneracy and DSATUR greedy colourings; k-colourability is decided by DSATUR
    backtracking with the clique precoloured. Exhausted budgets keep the bracket.
    """
    budget = budget or Budget()
    if not graph.vertices:
        return ColoringResult({}, 0, True, 0)
    colors: dict[int, int] = {}
    lower = 0
    upper = 0
    best_clique: tuple[int, ...] = ()
    nodes = 0
    for component in graph.components():
        sub = graph.induced(component)
        result = _solve_component(sub, budget)
        colors.update(result.colors)
        nodes += result.nodes
        upper = max(upper, result.count)
        lower = max(lower, result.lower_bound)
        if len(result.clique) > len(best_clique):
            best_clique = result.clique
    return ColoringResult(colors, upper, lower == upper, lower, best_clique, nodes)


def _solve_component(graph: Graph, budget: Budget) -> ColoringResult:
    if len(graph.vertices) == 1:
        return ColoringResult({graph.vertices[0]: 0}, 1, True, 1, (graph.vertices[0],))
    clique = max_clique(graph, budget)
    best = min(
        (greedy_coloring(graph).colors, dsatur_coloring(graph)),
        key=lambda coloring: max(coloring.values()) + 1,
    )
    upper = max(best.values()) + 1
    lower = clique.size
    meter = BudgetMeter(budget)
    try:
        for k in range(lower, upper):
            found = _k_coloring(graph, k, clique.vertices, meter)
            if found is None:
                lower = k + 1
                continue
            best, upper = found, k
            break
    except BudgetExhausted:
        pass
    return ColoringResult(dict(best), upper, lower == upper, lower, clique.vertices, clique.nodes + meter.nodes)


def _k_coloring(graph: Graph, k: int, clique: tuple[int, ...], meter: BudgetMeter) -> dict[int, int] | None:
    """DSATUR backtracking for a proper k-colouring, or None when none exists."""
    if len(clique) > k:
        return None
    vertices = graph.vertices
    index = graph.index
    neighbors = [[index[other] for other in graph.neighbors[vertex]] for vertex in vertices]
    n = len(vertices)
    colors = [-1] * n
    # blocked[v][c] counts coloured neighbours of v that use colour c.
    blocked = [[0] * k for _ in range(n)]
    saturation = [0] * n

    def assign(position: int, color: int) -> None:
        colors[position] = color
        for other in neighbors[position]:
            if blocked[other][color] == 0:
                saturation[other] += 1
            blocked[other][color] += 1

    def unassign(position: int) -> None:
        color = colors[position]
        colors[position] = -1
        for other in neighbors[position]:
            blocked[other][color] -= 1
            if blocked[other][color] == 0:
                saturation[other] -= 1

    for color, vertex in enumerate(clique):
        assign(index[vertex], color)
    used = len(clique)

    def search(colored: int, used: int) -> bool:
        if colored == n:
            return True
        meter.tick()
        position = max(
            (p for p in range(n) if colors[p] < 0),
            key=lambda p: (saturation[p], len(neighbors[p]), -p),
        )
        if saturation[position] >= k:
            return False
        # New colours are interchangeable, so only the first unused one is tried.
        for color in range(min(k, used + 1)):
            if blocked[position][color]:
                continue
            assign(position, color)
            if search(colored + 1, max(used, color + 1)):
                return True
            unassign(position)
        return False

    if not search(len(clique), used):
        return None
    return {vertices[p]: colors[p] for p in range(n)}
