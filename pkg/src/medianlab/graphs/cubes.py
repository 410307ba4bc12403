from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .graph import Graph


Square = tuple[int, int, int, int]


def squares(graph: Graph) -> list[Square]:
    """All 4-cycles as (a, b, c, d) in cyclic order with a the smallest id.

    Each square is found once from its minimum corner a: an unordered pair of
    neighbours b < d of a and a second common neighbour c of b and d.
    """
    found: list[Square] = []
    neighbor_sets = graph.neighbor_sets
    for a in graph.vertices:
        higher = [v for v in graph.neighbors[a] if v > a]
        for b, d in itertools.combinations(higher, 2):
            for c in sorted(neighbor_sets[b] & neighbor_sets[d]):
                if c > a:
                    found.append((a, b, c, d))
    return found


def completions(graph: Graph, corner: int, first: int, second: int) -> list[int]:
    """Fourth corners of the squares spanned at `corner` by two of its neighbours."""
    common = graph.neighbor_sets[first] & graph.neighbor_sets[second]
    return sorted(v for v in common if v != corner)


def _cube_embeddings(graph: Graph, corner: int, directions: tuple[int, ...], fixed: dict[int, int]) -> Iterator[dict[int, int]]:
    """Cubes at `corner` spanned by `directions`, as maps from direction bitmask to vertex.

    `fixed` pins already chosen vertices; the rest are filled by backtracking in
    order of increasing mask weight.
    """
    dim = len(directions)
    masks = sorted(range(1 << dim), key=lambda mask: (bin(mask).count("1"), mask))
    base = {0: corner}
    for bit, direction in enumerate(directions):
        base[1 << bit] = direction
    for mask, vertex in fixed.items():
        if mask in base and base[mask] != vertex:
            return
        base[mask] = vertex
    pending = [mask for mask in masks if mask not in base]

    def extend(assigned: dict[int, int], position: int) -> Iterator[dict[int, int]]:
        if position == len(pending):
            yield dict(assigned)
            return
        mask = pending[position]
        lower = [assigned[mask ^ (1 << bit)] for bit in range(dim) if mask & (1 << bit)]
        candidates = set(graph.neighbor_sets[lower[0]])
        for vertex in lower[1:]:
            candidates &= graph.neighbor_sets[vertex]
        used = set(assigned.values())
        for vertex in sorted(candidates - used):
            assigned[mask] = vertex
            yield from extend(assigned, position + 1)
            del assigned[mask]

    for mask, vertex in base.items():
        if bin(mask).count("1") > 1:
            lower = [base.get(mask ^ (1 << bit)) for bit in range(dim) if mask & (1 << bit)]
            if any(v is not None and not graph.has_edge(v, vertex) for v in lower):
                return
    yield from extend(dict(base), 0)


def cubes(graph: Graph, dim: int) -> list[frozenset[int]]:
    """Vertex sets of all graphic cubes of the given dimension (dim >= 2)."""
    seen: set[frozenset[int]] = set()
    for corner in graph.vertices:
        for directions in itertools.combinations(graph.neighbors[corner], dim):
            for embedding in _cube_embeddings(graph, corner, directions, {}):
                seen.add(frozenset(embedding.values()))
    return sorted(seen, key=lambda vertices: sorted(vertices))


@dataclass(frozen=True)
class CubeConditionVerdict:
    ok: bool
    dim: int | None = None
    corner: int | None = None
    witness: tuple[frozenset[int], ...] = ()
    checked: int = 0


def cube_condition(graph: Graph, dims: Iterable[int] = (0, 1)) -> CubeConditionVerdict:
    """Combinatorial Gromov condition for k in {0, 1}.

    k = 0: three squares pairwise sharing an edge and jointly sharing a vertex span a 3-cube.
    k = 1: three 3-cubes pairwise sharing a square and jointly sharing an edge span a 4-cube.
    """
    checked = 0
    for k in sorted(set(dims)):
        if k not in (0, 1):
            raise ValueError(f"cube condition is supported for k in {{0, 1}}, got {k}")
        for corner in graph.vertices:
            pairs = _square_pairs(graph, corner)
            if k == 0:
                verdict, count = _check_k0(graph, corner, pairs)
            else:
                verdict, count = _check_k1(graph, corner, pairs)
            checked += count
            if verdict is not None:
                return CubeConditionVerdict(False, k, corner, verdict, checked)
    return CubeConditionVerdict(True, checked=checked)


def _square_pairs(graph: Graph, corner: int) -> dict[tuple[int, int], list[int]]:
    pairs: dict[tuple[int, int], list[int]] = {}
    for first, second in itertools.combinations(graph.neighbors[corner], 2):
        fourth = completions(graph, corner, first, second)
        if fourth:
            pairs[(first, second)] = fourth
    return pairs


def _spans(pairs: dict[tuple[int, int], list[int]], vertices: tuple[int, ...]) -> bool:
    return all(pair in pairs for pair in itertools.combinations(vertices, 2))


def _check_k0(graph: Graph, corner: int, pairs) -> tuple[tuple[frozenset[int], ...] | None, int]:
    count = 0
    directions = sorted({v for pair in pairs for v in pair})
    for a, b, c in itertools.combinations(directions, 3):
        if not _spans(pairs, (a, b, c)):
            continue
        for x_ab, x_ac, x_bc in itertools.product(pairs[(a, b)], pairs[(a, c)], pairs[(b, c)]):
            count += 1
            fixed = {0b011: x_ab, 0b101: x_ac, 0b110: x_bc}
            if next(_cube_embeddings(graph, corner, (a, b, c), fixed), None) is None:
                return (
                    frozenset({corner, a, b, x_ab}),
                    frozenset({corner, a, c, x_ac}),
                    frozenset({corner, b, c, x_bc}),
                ), count
    return None, count


def _check_k1(graph: Graph, corner: int, pairs) -> tuple[tuple[frozenset[int], ...] | None, int]:
    count = 0
    directions = sorted({v for pair in pairs for v in pair})
    for quad in itertools.combinations(directions, 4):
        if not _spans(pairs, quad):
            continue
        # The shared edge runs from the corner along each of the four directions in turn.
        for shared in range(4):
            others = [bit for bit in range(4) if bit != shared]
            s = 1 << shared
            for choice in _three_cube_choices(graph, corner, quad, s, others):
                count += 1
                if next(_cube_embeddings(graph, corner, quad, choice), None) is None:
                    witness = tuple(
                        frozenset(v for mask, v in choice.items() if mask & ~(s | (1 << x) | (1 << y)) == 0) | {corner}
                        for x, y in itertools.combinations(others, 2)
                    )
                    return witness, count
    return None, count


def _three_cube_choices(graph: Graph, corner: int, quad: tuple[int, ...], shared: int, others: list[int]) -> Iterator[dict[int, int]]:
    """Consistent embeddings of the three 3-cubes {shared, x, y} for x, y in `others`."""
    planes = [shared | (1 << x) | (1 << y) for x, y in itertools.combinations(others, 2)]

    def grow(index: int, fixed: dict[int, int]) -> Iterator[dict[int, int]]:
        if index == len(planes):
            yield dict(fixed)
            return
        mask = planes[index]
        bits = [bit for bit in range(4) if mask & (1 << bit)]
        directions = tuple(quad[bit] for bit in bits)
        local_fixed = {}
        for local_mask in range(1, 8):
            global_mask = sum(1 << bits[i] for i in range(3) if local_mask & (1 << i))
            if global_mask in fixed:
                local_fixed[local_mask] = fixed[global_mask]
        for embedding in _cube_embeddings(graph, corner, directions, local_fixed):
            merged = dict(fixed)
            for local_mask, vertex in embedding.items():
                if local_mask == 0:
                    continue
                global_mask = sum(1 << bits[i] for i in range(3) if local_mask & (1 << i))
                merged[global_mask] = vertex
            yield from grow(index + 1, merged)

    yield from grow(0, {})
