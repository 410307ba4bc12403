from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..errors import ResourceLimitError, ThetaError
from .graph import Graph
from .metric import distance_matrix, distance_rows
from .theta import DEFAULT_EXACT_LIMIT, ThetaStructure, theta_classes


SAMPLE_CHUNK = 65536
SPOT_CHECKS = 32


class MedianMode(str, Enum):
    EXHAUSTIVE = "exhaustive"
    SAMPLED = "sampled"


@dataclass(frozen=True)
class MedianVerdict:
    ok: bool
    mode: MedianMode
    triplets: int
    witness: tuple[int, int, int] | None = None
    witness_size: int | None = None
    reason: str = ""


def triple_intersection(graph: Graph, x: int, y: int, z: int) -> frozenset[int]:
    """I(x,y) ∩ I(y,z) ∩ I(z,x)."""
    rows = distance_rows(graph, [x, y, z])
    ix, iy, iz = graph.index[x], graph.index[y], graph.index[z]
    mask = (
        (rows[0] + rows[1] == rows[0, iy])
        & (rows[1] + rows[2] == rows[1, iz])
        & (rows[2] + rows[0] == rows[2, ix])
    )
    return frozenset(graph.vertices[p] for p in np.flatnonzero(mask))


def median_of(graph: Graph, x: int, y: int, z: int) -> int | None:
    common = triple_intersection(graph, x, y, z)
    return next(iter(common)) if len(common) == 1 else None


def is_median(
    graph: Graph,
    mode: MedianMode | str = MedianMode.EXHAUSTIVE,
    *,
    samples: int = 1_000_000,
    seed: int = 0,
    exhaustive_limit: int = DEFAULT_EXACT_LIMIT,
    theta: ThetaStructure | None = None,
) -> MedianVerdict:
    """Median verdict with a witness triplet whose triple interval intersection is not a singleton.

    EXHAUSTIVE decides all unordered triplets at once: a graph is median iff it is a
    partial cube (exact Θ certification) whose vertex signatures are closed under
    majority, and majority closure is tested through the pairwise projections of
    the signature set. SAMPLED draws `samples` triplets from `seed` and looks the
    majority signature up; a handful are re-checked by BFS intervals.
    """
    mode = MedianMode(mode)
    n = len(graph.vertices)
    if mode is MedianMode.EXHAUSTIVE and n > exhaustive_limit:
        raise ResourceLimitError(
            f"exhaustive median check is capped at {exhaustive_limit} vertices (graph has {n})"
        )
    total = math.comb(n, 3) if mode is MedianMode.EXHAUSTIVE else samples
    if n <= 2:
        return MedianVerdict(True, mode, total)

    if theta is None or (mode is MedianMode.EXHAUSTIVE and not theta.exact):
        try:
            theta = theta_classes(graph, graph.vertices[0], exact_limit=exhaustive_limit)
        except ThetaError as exc:
            return _refute_without_theta(graph, mode, total, exc, samples=samples, seed=seed)

    signatures = theta.signatures()
    keys = _SignatureKeys(signatures, seed)
    if mode is MedianMode.EXHAUSTIVE:
        gap = _majority_gap(theta, signatures)
        if gap is None:
            return MedianVerdict(True, mode, total, reason="majority-closed partial cube")
        witness = _majority_witness(signatures, keys, gap)
        return _verdict_from_positions(graph, mode, total, witness, "signature set is not majority-closed")

    rng = np.random.default_rng(seed)
    remaining = samples
    spot: list[tuple[int, int, int]] = []
    while remaining > 0:
        size = min(SAMPLE_CHUNK, remaining)
        remaining -= size
        picks = rng.integers(0, n, size=(size, 3))
        if len(spot) < SPOT_CHECKS:
            spot.extend(tuple(int(p) for p in row) for row in picks[: SPOT_CHECKS - len(spot)])
        a, b, c = signatures[picks[:, 0]], signatures[picks[:, 1]], signatures[picks[:, 2]]
        majority = (a & b) | (b & c) | (a & c)
        present = keys.contains(majority)
        if not present.all():
            row = picks[int(np.flatnonzero(~present)[0])]
            return _verdict_from_positions(graph, mode, samples, row.tolist(), "sampled majority is not a vertex")
    for row in spot:
        triplet = tuple(graph.vertices[p] for p in row)
        size = len(triple_intersection(graph, *triplet))
        if size != 1:
            return MedianVerdict(False, mode, samples, triplet, size, "BFS spot check disagrees")
    return MedianVerdict(True, mode, samples, reason="sampled majorities present")


class _SignatureKeys:
    """64-bit random-linear hashes of signature rows for vectorised membership."""

    def __init__(self, signatures: np.ndarray, seed: int):
        rng = np.random.default_rng(seed ^ 0x5EED)
        self.weights = rng.integers(0, np.iinfo(np.uint64).max, size=signatures.shape[1], dtype=np.uint64, endpoint=True)
        self.known = np.unique(self.hash(signatures))

    def hash(self, rows: np.ndarray) -> np.ndarray:
        with np.errstate(over="ignore"):
            return rows.astype(np.uint64) @ self.weights

    def contains(self, rows: np.ndarray) -> np.ndarray:
        return np.isin(self.hash(rows), self.known, assume_unique=False)


def _majority_gap(theta: ThetaStructure, signatures: np.ndarray) -> tuple[int, int] | None:
    """A vertex s and class i such that flipping bit i of s stays inside every pairwise
    projection while s has no Θ_i edge; None iff the signature set is majority-closed."""
    ones = signatures.astype(np.float32)
    zeros = 1.0 - ones
    present = {
        (1, 1): ones.T @ ones > 0,
        (1, 0): ones.T @ zeros > 0,
        (0, 1): zeros.T @ ones > 0,
        (0, 0): zeros.T @ zeros > 0,
    }
    missing = {}
    for key, matrix in present.items():
        absent = (~matrix).astype(np.float32)
        np.fill_diagonal(absent, 0.0)
        missing[key] = absent
    # Flipped bit i takes value 1 - s_i; count classes j whose pair (1 - s_i, s_j) never occurs.
    from_zero = ones @ missing[(1, 1)].T + zeros @ missing[(1, 0)].T
    from_one = ones @ missing[(0, 1)].T + zeros @ missing[(0, 0)].T
    blocked = np.where(signatures, from_one, from_zero)
    has_edge = theta.endpoints.T
    gaps = np.argwhere((blocked == 0) & ~has_edge)
    if gaps.size == 0:
        return None
    vertex, cls = gaps[0]
    return int(vertex), int(cls)


def _majority_witness(signatures: np.ndarray, keys: _SignatureKeys, gap: tuple[int, int]) -> tuple[int, int, int]:
    s, i = gap
    n = signatures.shape[0]
    candidates = np.flatnonzero(signatures[:, i] != signatures[s, i])
    found = _scan_pairs(signatures, keys, s, candidates)
    if found is not None:
        return found
    for x in range(n):
        found = _scan_pairs(signatures, keys, x, np.arange(x + 1, n))
        if found is not None:
            return found
    raise AssertionError("majority gap without a witness triplet")


def _scan_pairs(signatures: np.ndarray, keys: _SignatureKeys, x: int, pool: np.ndarray) -> tuple[int, int, int] | None:
    sx = signatures[x]
    for offset, y in enumerate(pool.tolist()):
        zs = pool[offset + 1 :]
        if zs.size == 0:
            break
        sy = signatures[y]
        sz = signatures[zs]
        majority = (sx & sy) | (sy & sz) | (sx & sz)
        present = keys.contains(majority)
        if not present.all():
            return x, y, int(zs[int(np.flatnonzero(~present)[0])])
    return None


def _verdict_from_positions(graph: Graph, mode: MedianMode, total: int, positions, reason: str) -> MedianVerdict:
    triplet = tuple(graph.vertices[int(p)] for p in positions)
    size = len(triple_intersection(graph, *triplet))
    return MedianVerdict(False, mode, total, triplet, size, reason)


def _refute_without_theta(graph: Graph, mode: MedianMode, total: int, exc: ThetaError, *, samples: int, seed: int) -> MedianVerdict:
    reason = f"{exc.code}: {exc}"
    witness = exc.witness
    if isinstance(witness, tuple) and len(witness) == 3 and all(isinstance(v, int) for v in witness):
        size = len(triple_intersection(graph, *witness))
        if size != 1:
            return MedianVerdict(False, mode, total, witness, size, reason)
    n = len(graph.vertices)
    if mode is MedianMode.EXHAUSTIVE:
        dist = distance_matrix(graph)
        found = _brute_force_witness(dist)
    else:
        found = _sampled_witness(graph, samples, seed)
    if found is None:
        # Θ failed yet no triplet misbehaves within reach; report the Θ failure itself.
        return MedianVerdict(False, mode, total, None, None, reason)
    triplet = tuple(graph.vertices[p] for p in found)
    return MedianVerdict(False, mode, total, triplet, len(triple_intersection(graph, *triplet)), reason)


def _brute_force_witness(dist: np.ndarray) -> tuple[int, int, int] | None:
    n = dist.shape[0]
    upper = np.triu_indices(n, k=1)
    order = np.lexsort((upper[1], upper[0], dist[upper]))
    for pick in order.tolist():
        x, y = int(upper[0][pick]), int(upper[1][pick])
        on_xy = dist[x] + dist[y] == dist[x, y]
        # Rows are candidates z, columns are points w.
        on_yz = dist[y][None, :] + dist == dist[y][:, None]
        on_zx = dist + dist[x][None, :] == dist[x][:, None]
        counts = (on_yz & on_zx & on_xy[None, :]).sum(axis=1)
        counts[[x, y]] = 1
        bad = np.flatnonzero(counts != 1)
        if bad.size:
            return x, y, int(bad[0])
    return None


def _sampled_witness(graph: Graph, samples: int, seed: int) -> tuple[int, int, int] | None:
    rng = np.random.default_rng(seed)
    n = len(graph.vertices)
    budget = min(samples, 4096)
    for _ in range(budget):
        x, y, z = (int(p) for p in rng.integers(0, n, size=3))
        if len({x, y, z}) < 3:
            continue
        triplet = (graph.vertices[x], graph.vertices[y], graph.vertices[z])
        if len(triple_intersection(graph, *triplet)) != 1:
            return x, y, z
    return None
