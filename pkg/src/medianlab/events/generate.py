from __future__ import annotations

import itertools

import networkx as nx
import numpy as np

from ..errors import ResourceLimitError
from .structure import EventStructure, validate


def random_event_structure(
    rng: np.random.Generator,
    n_events: int,
    *,
    order_density: float = 0.25,
    conflict_density: float = 0.2,
    max_attempts: int = 200,
) -> EventStructure:
    """Random valid event structure by rejection sampling.

    A DAG is drawn over events 0..n-1 (arcs only go upward), seed conflicts are
    drawn among incomparable pairs and then closed under inheritance. Draws whose
    closure puts a pair of comparable events in conflict are rejected.
    """
    for _ in range(max_attempts):
        dag = nx.DiGraph()
        dag.add_nodes_from(range(n_events))
        for a, b in itertools.combinations(range(n_events), 2):
            if rng.random() < order_density:
                dag.add_edge(a, b)
        closure = np.eye(n_events, dtype=bool)
        for source, reached in nx.all_pairs_shortest_path_length(dag):
            closure[source, list(reached)] = True
        comparable = closure | closure.T
        seeds = np.zeros((n_events, n_events), dtype=bool)
        for a, b in itertools.combinations(range(n_events), 2):
            if not comparable[a, b] and rng.random() < conflict_density:
                seeds[a, b] = seeds[b, a] = True
        # x ⌣ y with x <= e and y <= e' gives e ⌣ e'.
        leq = closure.astype(np.int64)
        conflict = (leq.T @ seeds.astype(np.int64) @ leq) > 0
        if (conflict & comparable).any():
            continue
        reduced = nx.transitive_reduction(dag) if n_events else dag
        es = EventStructure.build(
            range(n_events),
            reduced.edges(),
            [(int(a), int(b)) for a, b in np.argwhere(np.triu(conflict, k=1))],
        )
        if validate(es).ok:
            return es
    raise ResourceLimitError(f"no valid event structure with {n_events} events after {max_attempts} draws")
