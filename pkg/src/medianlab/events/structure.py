from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from pathlib import Path
from typing import Iterable, Mapping

import networkx as nx
import numpy as np

from ..coloring.clique import max_clique
from ..coloring.models import Budget
from ..errors import SchemaError, UnknownVertexError
from ..graphs.graph import Graph, edge_key, read_json, write_json


@dataclass(frozen=True)
class EventStructure:
    """Events with an immediate-predecessor DAG and a symmetric conflict relation.

    `causal` is stored as given (pred, succ); the reflexive-transitive closure is
    computed once on demand. Conflict pairs are normalised to (low, high), so a
    self-conflict survives as (e, e) and is reported by `validate`.
    """

    events: tuple[int, ...]
    causal: tuple[tuple[int, int], ...]
    conflict: tuple[tuple[int, int], ...]

    @classmethod
    def build(
        cls,
        events: Iterable[int],
        causal: Iterable[tuple[int, int]] = (),
        conflict: Iterable[tuple[int, int]] = (),
    ) -> EventStructure:
        ids = tuple(sorted(set(int(e) for e in events)))
        known = set(ids)
        arcs = sorted({(int(a), int(b)) for a, b in causal})
        pairs = sorted({edge_key(int(a), int(b)) for a, b in conflict})
        for a, b in [*arcs, *pairs]:
            for event in (a, b):
                if event not in known:
                    raise SchemaError(f"relation mentions unknown event {event}")
        return cls(ids, tuple(arcs), tuple(pairs))

    def __len__(self) -> int:
        return len(self.events)

    @cached_property
    def index(self) -> dict[int, int]:
        return {event: position for position, event in enumerate(self.events)}

    def require(self, event: int) -> int:
        try:
            return self.index[event]
        except KeyError:
            raise UnknownVertexError(f"unknown event {event!r}", witness=event) from None

    @cached_property
    def dag(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.events)
        graph.add_edges_from(self.causal)
        return graph

    @cached_property
    def leq(self) -> np.ndarray:
        """leq[a, b] iff event a <= event b (reflexive-transitive closure of `causal`)."""
        n = len(self.events)
        closure = np.eye(n, dtype=bool)
        for source, reached in nx.all_pairs_shortest_path_length(self.dag):
            row = self.index[source]
            for target in reached:
                closure[row, self.index[target]] = True
        return closure

    @cached_property
    def strict(self) -> np.ndarray:
        result = self.leq.copy()
        np.fill_diagonal(result, False)
        return result

    @cached_property
    def conflict_matrix(self) -> np.ndarray:
        n = len(self.events)
        matrix = np.zeros((n, n), dtype=bool)
        for a, b in self.conflict:
            matrix[self.index[a], self.index[b]] = True
            matrix[self.index[b], self.index[a]] = True
        return matrix

    @cached_property
    def minimal_conflict(self) -> np.ndarray:
        """e ⌣ e' with no x < e in conflict with e' and no x < e' in conflict with e."""
        conflict = self.conflict_matrix.astype(np.int64)
        strict = self.strict.astype(np.int64)
        inherited = (strict.T @ conflict > 0) | (conflict @ strict > 0)
        return self.conflict_matrix & ~inherited

    @cached_property
    def concurrent(self) -> np.ndarray:
        unrelated = ~(self.leq | self.leq.T | self.conflict_matrix)
        return unrelated

    @cached_property
    def independent(self) -> np.ndarray:
        return self.concurrent | self.minimal_conflict

    def predecessors(self, event: int) -> frozenset[int]:
        column = self.strict[:, self.require(event)]
        return frozenset(self.events[p] for p in np.flatnonzero(column))


@dataclass(frozen=True)
class ValidationVerdict:
    ok: bool
    axiom: str | None = None
    witness: tuple[int, ...] = ()


def validate(es: EventStructure) -> ValidationVerdict:
    """First violated axiom: ORDER_CYCLE, CONFLICT_REFLEXIVE or INHERITANCE_VIOLATION."""
    if not nx.is_directed_acyclic_graph(es.dag):
        cycle = nx.find_cycle(es.dag)
        return ValidationVerdict(False, "ORDER_CYCLE", tuple(u for u, _ in cycle))
    for a, b in es.conflict:
        if a == b:
            return ValidationVerdict(False, "CONFLICT_REFLEXIVE", (a, a))
    # e ⌣ e' and e' <= e'' must give e ⌣ e''.
    conflict = es.conflict_matrix
    reach = (conflict.astype(np.int64) @ es.leq.astype(np.int64)) > 0
    missing = np.argwhere(reach & ~conflict)
    if missing.size:
        e, e2 = (int(p) for p in missing[0])
        middle = int(np.flatnonzero(conflict[e] & es.leq[:, e2])[0])
        return ValidationVerdict(
            False,
            "INHERITANCE_VIOLATION",
            (es.events[e], es.events[middle], es.events[e2]),
        )
    return ValidationVerdict(True)


class PairKind(str, Enum):
    CAUSAL = "CAUSAL"
    CONFLICT = "CONFLICT"
    CONCURRENT = "CONCURRENT"


@dataclass(frozen=True)
class PairRelation:
    kind: PairKind
    forward: bool | None = None
    minimal: bool | None = None


def pair_relation(es: EventStructure, e: int, e2: int) -> PairRelation:
    """CAUSAL with `forward` iff e < e2; CONFLICT with its minimality; else CONCURRENT."""
    a, b = es.require(e), es.require(e2)
    if a == b:
        raise ValueError("pair_relation needs two distinct events")
    if es.leq[a, b] or es.leq[b, a]:
        return PairRelation(PairKind.CAUSAL, forward=bool(es.leq[a, b]))
    if es.conflict_matrix[a, b]:
        return PairRelation(PairKind.CONFLICT, minimal=bool(es.minimal_conflict[a, b]))
    return PairRelation(PairKind.CONCURRENT)


def orthogonality_graph(es: EventStructure) -> Graph:
    """Events adjacent iff concurrent or in minimal conflict."""
    pairs = np.argwhere(np.triu(es.independent, k=1))
    edges = [(es.events[int(a)], es.events[int(b)]) for a, b in pairs]
    return Graph.build(es.events, edges, connected=False)


def degree(es: EventStructure, budget: Budget | None = None) -> int:
    """Clique number of the orthogonality graph; 1 for any non-empty chain, 0 when empty."""
    return max_clique(orthogonality_graph(es), budget).size


@dataclass(frozen=True)
class Labeling:
    labels: Mapping[int, int] = field(default_factory=dict)


def structure_to_payload(es: EventStructure) -> dict[str, object]:
    return {
        "events": list(es.events),
        "causal": [list(pair) for pair in es.causal],
        "conflict": [list(pair) for pair in es.conflict],
    }


def structure_from_payload(payload: Mapping[str, object]) -> EventStructure:
    try:
        events = [int(e) for e in payload["events"]]  # type: ignore[union-attr]
        causal = [(int(a), int(b)) for a, b in payload.get("causal", [])]  # type: ignore[union-attr]
        conflict = [(int(a), int(b)) for a, b in payload.get("conflict", [])]  # type: ignore[union-attr]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed event structure payload: {exc}") from exc
    return EventStructure.build(events, causal, conflict)


def save_structure(path: Path, es: EventStructure) -> None:
    write_json(path, structure_to_payload(es))


def load_structure(path: Path) -> EventStructure:
    return structure_from_payload(read_json(path))


def save_labeling(path: Path, labeling: Labeling) -> None:
    write_json(path, {"labels": {str(event): int(label) for event, label in sorted(labeling.labels.items())}})


def load_labeling(path: Path) -> Labeling:
    payload = read_json(path)
    try:
        raw = payload["labels"]
        labels = {int(event): int(label) for event, label in raw.items()}  # type: ignore[union-attr]
    except (KeyError, AttributeError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed labeling payload: {exc}") from exc
    return Labeling(labels)
