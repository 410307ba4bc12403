from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import ConstructionBugError, ResourceLimitError
from .box import Box, BoxHypergraph, intersection_graph, is_triangle_free


DEFAULT_MAX_N = 3
SIZE_REPORT_MAX_N = 8
UNIT = Box.of((0, 1), (0, 1), (0, 1))


@dataclass(frozen=True)
class Probe:
    """Scaffolding box [a, b] × Y × [e, f] with a wall end a < m < b.

    The roots are exactly the family boxes meeting the probe. They span Y and
    [e, f] and sit strictly inside x ∈ (a, m), so (m, b) × Y × (e, f) is free.
    Nothing else meets (-inf, b] × Y × [e, +inf), and probe y-slabs are disjoint.
    """

    box: Box
    wall: Fraction
    roots: frozenset[int]


@dataclass(frozen=True)
class BurlingLevel:
    boxes: tuple[Box, ...]
    probes: tuple[Probe, ...]


def base_level() -> BurlingLevel:
    box = Box.of(("3/20", "1/4"), ("1/20", "19/20"), ("1/20", "17/20"))
    probe = Probe(Box.of(("1/10", "9/10"), ("1/10", "9/10"), ("1/10", "4/5")), Fraction(3, 10), frozenset({0}))
    return BurlingLevel((box,), (probe,))


def _shrink(low: Fraction, high: Fraction) -> tuple[Fraction, Fraction]:
    margin = (high - low) / 8
    return low + margin, high - margin


def _map_interval(interval: tuple[Fraction, Fraction], target: tuple[Fraction, Fraction]) -> tuple[Fraction, Fraction]:
    scale = target[1] - target[0]
    return target[0] + interval[0] * scale, target[0] + interval[1] * scale


def _place(box: Box, frame: Box) -> Box:
    return Box(*(_map_interval(source, target) for source, target in zip(box.intervals, frame.intervals)))


def next_level(level: BurlingLevel) -> BurlingLevel:
    """One step of the recursion: a copy of the whole level inside each probe's free zone.

    For every copy probe Q a box B_Q is added that meets exactly the roots of Q,
    and Q is replaced by two probes reaching back to the roots of the host probe:
    Q' keeps the roots of Q, Q'' sees B_Q above them.
    """
    boxes = list(level.boxes)
    probes: list[Probe] = []
    for host in level.probes:
        a, b = host.box.x
        frame = Box(_shrink(host.wall, b), _shrink(*host.box.y), _shrink(*host.box.z))
        top = frame.z[1]
        offset = len(boxes)
        boxes.extend(_place(box, frame) for box in level.boxes)
        for probe in level.probes:
            q = _place(probe.box, frame)
            wall = frame.x[0] + probe.wall * (frame.x[1] - frame.x[0])
            roots = frozenset(offset + r for r in probe.roots)
            y0, y1 = q.y
            width = y1 - y0
            lane_a = (y0 + width / 6, y0 + 2 * width / 6)
            lane_b = (y0 + 4 * width / 6, y0 + 5 * width / 6)

            blocker_index = len(boxes)
            boxes.append(Box((q.x[0], wall), lane_a, (q.z[0], top)))

            probes.append(Probe(Box((a, q.x[1]), lane_b, q.z), wall, host.roots | roots))
            highest = max(boxes[r].z[1] for r in roots)
            floor = (highest + top) / 2
            probes.append(
                Probe(Box((a, q.x[1]), lane_a, (floor, top)), (wall + q.x[1]) / 2, host.roots | {blocker_index})
            )
    return BurlingLevel(tuple(boxes), tuple(probes))


def family_sizes(n: int) -> list[tuple[int, int]]:
    """(|boxes|, |probes|) for levels 1..n+1 from the size recursion, without building."""
    sizes = [(1, 1)]
    for _ in range(n):
        boxes, probes = sizes[-1]
        sizes.append((boxes + probes * (boxes + probes), 2 * probes * probes))
    return sizes


def burling_family(n: int, *, max_n: int = DEFAULT_MAX_N, check: bool = True) -> BoxHypergraph:
    """B(n): level n+1 of the recursion inside B₀ = [0, 1]^3, probes kept alongside.

    Triangle-freeness of the intersection graph is checked exactly before returning.
    """
    if n < 1:
        raise ValueError("burling_family needs n >= 1")
    if n > max_n:
        # Probe counts square at every level, so sizes are only spelled out for small n.
        size = f"{family_sizes(n)[-1][0]} boxes" if n <= SIZE_REPORT_MAX_N else "too many boxes"
        raise ResourceLimitError(f"B({n}) has {size}; the configured limit is n <= {max_n}")
    level = base_level()
    for _ in range(n):
        level = next_level(level)
    family = BoxHypergraph.build(level.boxes, UNIT, (probe.box for probe in level.probes))
    if check and not is_triangle_free(intersection_graph(family)):
        raise ConstructionBugError(f"B({n}) intersection graph has a triangle")
    return family
