from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import networkx as nx
import numpy as np

from ..errors import ConstructionBugError, RepresentationError, SchemaError
from ..graphs.graph import Graph, read_json, write_json


Interval = tuple[Fraction, Fraction]
AXES = ("x", "y", "z")


def _interval(values: Sequence[object]) -> Interval:
    low, high = (Fraction(v) for v in values)
    if not low < high:
        raise ValueError(f"degenerate interval [{low}, {high}]")
    return low, high


@dataclass(frozen=True)
class Box:
    """Closed axis-parallel box with exact rational endpoints."""

    x: Interval
    y: Interval
    z: Interval

    @classmethod
    def of(cls, x: Sequence[object], y: Sequence[object], z: Sequence[object]) -> Box:
        return cls(_interval(x), _interval(y), _interval(z))

    @property
    def intervals(self) -> tuple[Interval, Interval, Interval]:
        return self.x, self.y, self.z

    @property
    def low(self) -> tuple[Fraction, Fraction, Fraction]:
        return self.x[0], self.y[0], self.z[0]

    @property
    def high(self) -> tuple[Fraction, Fraction, Fraction]:
        return self.x[1], self.y[1], self.z[1]

    def contains(self, other: Box) -> bool:
        return all(a[0] <= b[0] and b[1] <= a[1] for a, b in zip(self.intervals, other.intervals))


def boxes_intersect(first: Box, second: Box) -> bool:
    """Closed-interval overlap on all three axes; touching faces count."""
    return all(a[0] <= b[1] and b[0] <= a[1] for a, b in zip(first.intervals, second.intervals))


def common_point(boxes: Iterable[Box]) -> tuple[Fraction, Fraction, Fraction] | None:
    chosen = list(boxes)
    if not chosen:
        return None
    lows = tuple(max(box.low[axis] for box in chosen) for axis in range(3))
    highs = tuple(min(box.high[axis] for box in chosen) for axis in range(3))
    if all(lo <= hi for lo, hi in zip(lows, highs)):
        return lows
    return None


@dataclass(frozen=True)
class BoxHypergraph:
    boxes: tuple[Box, ...]
    bounding: Box
    probes: tuple[Box, ...] = ()

    @classmethod
    def build(cls, boxes: Iterable[Box], bounding: Box | None = None, probes: Iterable[Box] = ()) -> BoxHypergraph:
        """Family inside B₀; without an explicit B₀ one unit of margin is added above the extremes."""
        items = tuple(boxes)
        if bounding is None:
            tops = [max((box.high[axis] for box in items), default=Fraction(0)) for axis in range(3)]
            bounding = Box.of((0, tops[0] + 1), (0, tops[1] + 1), (0, tops[2] + 1))
        if bounding.low != (0, 0, 0):
            raise RepresentationError("bounding box must have a corner at the origin", code="BOX_OUTSIDE_BOUNDS")
        for index, box in enumerate(items):
            if not bounding.contains(box):
                raise RepresentationError(f"box {index} lies outside the bounding box", code="BOX_OUTSIDE_BOUNDS", witness=index)
        return cls(items, bounding, tuple(probes))

    def __len__(self) -> int:
        return len(self.boxes)

    def plane_coords(self) -> tuple[tuple[Fraction, ...], ...]:
        """Sorted distinct corner coordinates per axis, B₀ faces included."""
        planes = []
        for axis in range(3):
            values = {self.bounding.low[axis], self.bounding.high[axis]}
            for box in self.boxes:
                values.add(box.low[axis])
                values.add(box.high[axis])
            planes.append(tuple(sorted(values)))
        return tuple(planes)


def _rank_arrays(bh: BoxHypergraph) -> tuple[np.ndarray, np.ndarray]:
    planes = bh.plane_coords()
    lows = np.array([[bisect.bisect_left(planes[a], box.low[a]) for a in range(3)] for box in bh.boxes], dtype=np.int64)
    highs = np.array([[bisect.bisect_left(planes[a], box.high[a]) for a in range(3)] for box in bh.boxes], dtype=np.int64)
    return lows.reshape(-1, 3), highs.reshape(-1, 3)


def intersection_graph(bh: BoxHypergraph, chunk: int = 2048) -> Graph:
    """Box indices 0..m-1, adjacent iff the boxes intersect.

    Exact comparisons are done once by ranking coordinates; the pair test then
    runs on integer ranks in row chunks.
    """
    m = len(bh.boxes)
    if m == 0:
        return Graph.build([], [], connected=False)
    lows, highs = _rank_arrays(bh)
    edges: list[tuple[int, int]] = []
    for start in range(0, m, chunk):
        stop = min(m, start + chunk)
        overlap = np.all(
            (lows[start:stop, None, :] <= highs[None, :, :]) & (lows[None, :, :] <= highs[start:stop, None, :]),
            axis=2,
        )
        rows, cols = np.nonzero(overlap)
        rows = rows + start
        keep = rows < cols
        edges.extend(zip(rows[keep].tolist(), cols[keep].tolist()))
    return Graph.build(range(m), edges, connected=False)


def snap_to_grid(bh: BoxHypergraph) -> BoxHypergraph:
    """Rewrite every coordinate as its index in the sorted per-axis plane list.

    Probes are construction scaffolding and are dropped. The intersection graph is
    recomputed and must be unchanged.
    """
    planes = bh.plane_coords()

    def snap(box: Box) -> Box:
        return Box(*(
            (Fraction(bisect.bisect_left(planes[a], box.low[a])), Fraction(bisect.bisect_left(planes[a], box.high[a])))
            for a in range(3)
        ))

    bounding = Box.of(*((0, len(planes[a]) - 1) for a in range(3)))
    snapped = BoxHypergraph.build((snap(box) for box in bh.boxes), bounding)
    if not intersection_graph(snapped).same_as(intersection_graph(bh)):
        raise ConstructionBugError("snapping changed the intersection graph")
    return snapped


def is_triangle_free(graph: Graph) -> bool:
    for u, v in graph.edges:
        if graph.neighbor_sets[u] & graph.neighbor_sets[v]:
            return False
    return True


@dataclass(frozen=True)
class HellyVerdict:
    ok: bool
    checked: int
    witness: tuple[int, ...] = ()


def check_helly(bh: BoxHypergraph, sample: int = 1000, seed: int = 0) -> HellyVerdict:
    """Pairwise-intersecting subfamilies (cliques of the intersection graph) share a point.

    Every maximal clique is checked up to `sample` of them; beyond that a seeded
    random subset of the enumerated cliques is taken.
    """
    graph = intersection_graph(bh)
    cliques = sorted(tuple(sorted(c)) for c in nx.find_cliques(graph.to_networkx()) if len(c) >= 2)
    if len(cliques) > sample:
        rng = np.random.default_rng(seed)
        picks = sorted(rng.choice(len(cliques), size=sample, replace=False).tolist())
        cliques = [cliques[p] for p in picks]
    for clique in cliques:
        if common_point(bh.boxes[i] for i in clique) is None:
            return HellyVerdict(False, len(cliques), clique)
    return HellyVerdict(True, len(cliques))


def _encode(value: Fraction) -> object:
    return value.numerator if value.denominator == 1 else [value.numerator, value.denominator]


def _decode(value: object) -> Fraction:
    if isinstance(value, list):
        numerator, denominator = value
        return Fraction(int(numerator), int(denominator))
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"coordinate must be an integer or [num, den]: {value!r}")
    return Fraction(value)


def box_to_payload(box: Box) -> dict[str, object]:
    return {name: [_encode(v) for v in interval] for name, interval in zip(AXES, box.intervals)}


def box_from_payload(payload: Mapping[str, object]) -> Box:
    try:
        return Box(*(_interval([_decode(v) for v in payload[name]]) for name in AXES))  # type: ignore[union-attr]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"malformed box: {exc}") from exc


def hypergraph_to_payload(bh: BoxHypergraph) -> dict[str, object]:
    payload: dict[str, object] = {
        "boxes": [box_to_payload(box) for box in bh.boxes],
        "bounding": box_to_payload(bh.bounding),
    }
    if bh.probes:
        payload["probes"] = [box_to_payload(box) for box in bh.probes]
    return payload


def hypergraph_from_payload(payload: Mapping[str, object]) -> BoxHypergraph:
    try:
        boxes = [box_from_payload(item) for item in payload["boxes"]]  # type: ignore[union-attr]
        bounding = box_from_payload(payload["bounding"]) if payload.get("bounding") is not None else None
        probes = [box_from_payload(item) for item in payload.get("probes", [])]  # type: ignore[union-attr]
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed box hypergraph: {exc}") from exc
    return BoxHypergraph.build(boxes, bounding, probes)


def save_hypergraph(path: Path, bh: BoxHypergraph) -> None:
    write_json(path, hypergraph_to_payload(bh))


def load_hypergraph(path: Path) -> BoxHypergraph:
    return hypergraph_from_payload(read_json(path))
