from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from ..coloring.solver import monochromatic_edge
from ..errors import PartialMapError
from ..graphs.graph import edge_key
from ..graphs.oriented import OrientedGraph
from ..graphs.theta import ThetaStructure, pointed_contact_graph
from .structure import EventStructure, Labeling, orthogonality_graph


@dataclass(frozen=True)
class LabelingVerdict:
    ok: bool
    witness: tuple[int, int] | None = None


def check_nice_labeling(es: EventStructure, labeling: Labeling | Mapping[int, int]) -> LabelingVerdict:
    """Independent events must carry different labels; the witness is such a pair."""
    labels = labeling.labels if isinstance(labeling, Labeling) else labeling
    clash = monochromatic_edge(orthogonality_graph(es), labels)
    return LabelingVerdict(clash is None, clash)


@dataclass(frozen=True)
class BridgeVerdict:
    ok: bool
    determinism: bool
    concurrency: bool
    contact: bool
    witness: tuple[int, ...] = ()

    @property
    def agree(self) -> bool:
        return (self.determinism and self.concurrency) == self.contact


def labeling_edge_coloring_bridge(og: OrientedGraph, t: ThetaStructure, coloring: Mapping[int, int]) -> BridgeVerdict:
    """Run the edge-colouring axioms and the Γ_v colouring test side by side.

    Edges take the colour of their class. Determinism forbids two equal colours
    leaving one vertex; Concurrency asks opposite square edges to agree.
    """
    missing = [cls for cls in range(len(t.classes)) if cls not in coloring]
    if missing:
        raise PartialMapError(f"coloring misses class {missing[0]}", witness=missing[0])
    color_of = {edge: coloring[cls] for edge, cls in t.class_of.items()}

    witness: tuple[int, ...] = ()
    determinism = True
    for vertex in og.base.vertices:
        seen: dict[int, int] = {}
        for head in og.out_neighbors[vertex]:
            color = color_of[edge_key(vertex, head)]
            if color in seen:
                determinism = False
                witness = (vertex, seen[color], head)
                break
            seen[color] = head
        if not determinism:
            break

    concurrency = True
    for a, b, c, d in t.squares:
        if color_of[edge_key(a, b)] != color_of[edge_key(c, d)] or color_of[edge_key(b, c)] != color_of[edge_key(d, a)]:
            concurrency = False
            witness = witness or (a, b, c, d)
            break

    clash = monochromatic_edge(pointed_contact_graph(og, t), coloring)
    contact = clash is None
    if not contact and not witness:
        witness = clash
    ok = determinism and concurrency and contact
    return BridgeVerdict(ok, determinism, concurrency, contact, witness)
