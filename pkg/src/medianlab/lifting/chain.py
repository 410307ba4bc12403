from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

import networkx as nx

from ..boxes.burling import DEFAULT_MAX_N
from ..checks.executor import default_workers, run_ordered
from ..coloring.models import Budget
from ..coloring.solver import chromatic_number
from ..errors import ConstructionBugError, ResourceLimitError
from ..graphs.amalgam import glue
from ..graphs.graph import Graph, edge_key
from ..graphs.oriented import OrientedGraph, orient
from ..graphs.theta import DEFAULT_EXACT_LIMIT, ThetaStructure, pointed_contact_graph, theta_classes
from .lemmas import LemmaVerdict
from .lift import DEFAULT_MAX_LIFT_VERTICES, LiftedGraph, lift_burling


DEFAULT_MAX_CHAIN_BLOCKS = 2


@dataclass(frozen=True, eq=False)
class ChainGraph:
    """Lifts of B(1)..B(k) glued corner to corner: β of block t-1 is α of block t.

    `maps[t]` sends block t's vertex ids to chain ids; the shared corner keeps the
    earlier block's id. `joints` are the chain ids of the glued corners.
    """

    graph: Graph
    blocks: tuple[LiftedGraph, ...]
    maps: tuple[Mapping[int, int], ...]
    joints: tuple[int, ...]
    exact_limit: int = DEFAULT_EXACT_LIMIT

    @property
    def alpha(self) -> int:
        return self.maps[0][self.blocks[0].alpha]

    @cached_property
    def orientation(self) -> OrientedGraph:
        return orient(self.graph, self.alpha)

    @cached_property
    def theta(self) -> ThetaStructure:
        return theta_classes(self.graph, self.alpha, exact_limit=self.exact_limit)

    def articulation_points(self) -> tuple[int, ...]:
        return tuple(sorted(nx.articulation_points(self.graph.to_networkx())))

    def class_map(self, t: int) -> dict[int, int]:
        """Block t's Θ-class ids to the chain's, through one edge of each class."""
        block, mapping = self.blocks[t], self.maps[t]
        return {
            cls: self.theta.class_of[edge_key(mapping[members[0][0]], mapping[members[0][1]])]
            for cls, members in enumerate(block.theta.classes)
        }


def build_chain(
    k: int,
    *,
    max_blocks: int = DEFAULT_MAX_CHAIN_BLOCKS,
    max_n: int = DEFAULT_MAX_N,
    max_vertices: int = DEFAULT_MAX_LIFT_VERTICES,
    exact_limit: int = DEFAULT_EXACT_LIMIT,
    workers: int = 1,
) -> ChainGraph:
    """Finite prefix of the chain of lifted Burling blocks; blocks are lifted in parallel."""
    if k < 1:
        raise ValueError("build_chain needs k >= 1")
    if k > max_blocks:
        raise ResourceLimitError(f"a chain of {k} blocks exceeds the configured limit of {max_blocks}")
    blocks = run_ordered(
        range(1, k + 1),
        lambda n: lift_burling(n, max_n=max_n, max_vertices=max_vertices, exact_limit=exact_limit),
        max_workers=default_workers(workers, k),
    )
    graph = blocks[0].graph
    maps: list[dict[int, int]] = [{v: v for v in graph.vertices}]
    joints: list[int] = []
    for t in range(1, k):
        joint = maps[t - 1][blocks[t - 1].beta]
        graph, mapping = glue(graph, blocks[t].graph, {joint: blocks[t].alpha})
        maps.append(mapping)
        joints.append(joint)
    if not graph.is_connected():
        raise ConstructionBugError("chain of blocks is not connected")
    return ChainGraph(graph, tuple(blocks), tuple(maps), tuple(joints), exact_limit)


def verify_chain(chain: ChainGraph, budget: Budget | None = None) -> LemmaVerdict:
    """Articulation points are the glued corners with out-degree 3, and Γ_α splits by block.

    Γ_α of the chain must be the disjoint union of the blocks' Γ_α under the class
    correspondence, so its chromatic number is the largest block value.
    """
    og = chain.orientation
    articulation = chain.articulation_points()
    joint_out = [og.out_degree(v) for v in chain.joints]
    block_out = [block.orientation.max_out_degree() for block in chain.blocks]
    measured: dict[str, object] = {
        "blocks": len(chain.blocks),
        "vertices": len(chain.graph),
        "articulation_points": len(articulation),
        "articulation_out_degree": joint_out,
        "max_out_degree": og.max_out_degree(),
        "block_max_out_degree": block_out,
    }
    if articulation != tuple(sorted(chain.joints)):
        return LemmaVerdict("chain", False, "articulation points differ from the glued corners", witness=articulation, measured=measured)
    if any(degree != 3 for degree in joint_out):
        return LemmaVerdict("chain", False, "a glued corner does not have out-degree 3", witness=joint_out, measured=measured)
    if og.max_out_degree() != max(block_out):
        return LemmaVerdict("chain", False, "max out-degree differs from the block maximum", measured=measured)

    union: set[tuple[int, int]] = set()
    covered: set[int] = set()
    for t, block in enumerate(chain.blocks):
        classes = chain.class_map(t)
        covered.update(classes.values())
        for a, b in pointed_contact_graph(block.orientation, block.theta).edges:
            union.add(edge_key(classes[a], classes[b]))
    gamma = pointed_contact_graph(og, chain.theta)
    if len(covered) != len(chain.theta.classes) or set(gamma.edges) != union:
        odd = sorted(set(gamma.edges) ^ union)
        return LemmaVerdict("chain", False, "Γ_α is not the disjoint union of the blocks", witness=odd[:1], measured=measured)

    whole = chromatic_number(gamma, budget)
    parts = [chromatic_number(pointed_contact_graph(block.orientation, block.theta), budget) for block in chain.blocks]
    measured["chi_pointed"] = whole.to_payload()
    measured["block_chi_pointed"] = [part.to_payload() for part in parts]
    exhausted = not (whole.optimal and all(part.optimal for part in parts))
    if exhausted:
        ok = whole.lower_bound <= max(part.upper_bound for part in parts)
    else:
        ok = whole.count == max(part.count for part in parts)
    detail = f"{len(articulation)} articulation point(s), χ(Γ_α) = {whole.count if whole.optimal else '?'}"
    return LemmaVerdict("chain", ok, detail, measured=measured, exhausted=exhausted)
