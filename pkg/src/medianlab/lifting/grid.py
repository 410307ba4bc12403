from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from ..boxes.box import BoxHypergraph
from ..graphs.graph import Graph, grid_graph


@dataclass(frozen=True, eq=False)
class GridComplex:
    """Subdivision of B₀ by the planes through every box corner.

    Lattice points are index triples into `plane_coords`; vertex ids are their
    row-major ranks, so the origin corner is 0 and the far corner is the last id.
    """

    plane_coords: tuple[tuple[Fraction, ...], tuple[Fraction, ...], tuple[Fraction, ...]]

    @property
    def dims(self) -> tuple[int, int, int]:
        return tuple(len(planes) for planes in self.plane_coords)  # type: ignore[return-value]

    @property
    def vertex_count(self) -> int:
        k1, k2, k3 = self.dims
        return k1 * k2 * k3

    @cached_property
    def graph(self) -> Graph:
        return grid_graph(self.dims)

    def vertex_at(self, i: int, j: int, k: int) -> int:
        _, k2, k3 = self.dims
        return (i * k2 + j) * k3 + k

    def point_of(self, vertex: int) -> tuple[int, int, int]:
        _, k2, k3 = self.dims
        i, rest = divmod(vertex, k2 * k3)
        j, k = divmod(rest, k3)
        return i, j, k

    def plane_index(self, axis: int, value: Fraction) -> int | None:
        planes = self.plane_coords[axis]
        position = bisect.bisect_left(planes, value)
        if position < len(planes) and planes[position] == value:
            return position
        return None


def build_grid(bh: BoxHypergraph) -> GridComplex:
    """Planes through every box corner and every face of B₀, per axis."""
    return GridComplex(bh.plane_coords())  # type: ignore[arg-type]


@dataclass(frozen=True)
class CellVerdict:
    ok: bool
    box: int | None = None
    axis: int | None = None


def check_cell_representation(gc: GridComplex, bh: BoxHypergraph) -> CellVerdict:
    """Every box corner lies on grid planes, so each box is a union of elementary cells."""
    for index, box in enumerate(bh.boxes):
        for axis in range(3):
            for value in (box.low[axis], box.high[axis]):
                if gc.plane_index(axis, value) is None:
                    return CellVerdict(False, index, axis)
    return CellVerdict(True)


def box_index_ranges(gc: GridComplex, bh: BoxHypergraph) -> list[tuple[tuple[int, int], ...]]:
    """Per box, the inclusive plane-index range on each axis."""
    ranges = []
    for box in bh.boxes:
        ranges.append(tuple((gc.plane_index(a, box.low[a]), gc.plane_index(a, box.high[a])) for a in range(3)))
    return ranges  # type: ignore[return-value]
