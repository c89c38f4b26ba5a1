"""Hierarchical organisation of assets from a distance matrix.

Two independent routes to the same taxonomy:

* ``subdominant_ultrametric`` reads it off a spanning tree: the
  ultrametric distance between two assets is the largest edge weight on
  the unique tree path connecting them.
* ``single_linkage`` builds it by agglomeration: repeatedly merge the
  two closest clusters, where cluster distance is the minimum pairwise
  distance across them.

For the shortest-edge-first tree the two coincide exactly; tests hold
them to each other at 1e-12.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .distance import DistanceMatrix
from .errors import DomainError, SchemaError, SizeError
from .mst import SpanningTree


class Merge(NamedTuple):
    """One agglomeration step.

    ``left``/``right`` are cluster ids: 0..n-1 for singleton leaves, and
    n+k for the cluster created by the k-th merge. ``left < right``.
    """

    left: int
    right: int
    height: float


@dataclass(frozen=True, eq=False)
class Dendrogram:
    """n-1 merges at non-decreasing heights over n labelled leaves."""

    leaves: tuple[str, ...]
    merges: tuple[Merge, ...]

    def __post_init__(self) -> None:
        leaves = tuple(self.leaves)
        merges = tuple(Merge(int(m[0]), int(m[1]), float(m[2])) for m in self.merges)
        object.__setattr__(self, "leaves", leaves)
        object.__setattr__(self, "merges", merges)
        n = len(leaves)
        if n < 2 or len(set(leaves)) != n:
            raise SchemaError("a dendrogram needs at least 2 uniquely labelled leaves")
        if len(merges) != n - 1:
            raise SchemaError(f"expected {n - 1} merges for {n} leaves, got {len(merges)}")
        used: set[int] = set()
        prev = -np.inf
        for k, m in enumerate(merges):
            if not m.left < m.right:
                raise SchemaError(f"merge {k}: child ids must satisfy left < right")
            for child in (m.left, m.right):
                if not 0 <= child < n + k:
                    raise SchemaError(f"merge {k}: child id {child} out of range")
                if child in used:
                    raise SchemaError(f"merge {k}: child id {child} already consumed")
                used.add(child)
            if not np.isfinite(m.height) or m.height < 0:
                raise DomainError(f"merge {k}: height must be finite and >= 0, got {m.height!r}")
            if m.height < prev:
                raise SchemaError(f"merge {k}: heights must be non-decreasing")
            prev = m.height

    @property
    def n_leaves(self) -> int:
        return len(self.leaves)

    def partition_at(self, height: float) -> list[frozenset[str]]:
        """Clusters obtained by applying all merges with height <= ``height``.

        Returned blocks are sorted by their smallest member label.
        """
        n = len(self.leaves)
        members: dict[int, set[str]] = {i: {lab} for i, lab in enumerate(self.leaves)}
        for k, m in enumerate(self.merges):
            if m.height > height:
                break
            merged = members.pop(m.left) | members.pop(m.right)
            members[n + k] = merged
        blocks = [frozenset(s) for s in members.values()]
        return sorted(blocks, key=min)


def subdominant_ultrametric(tree: SpanningTree) -> DistanceMatrix:
    """Max edge weight along the unique tree path between each pair."""
    labels = tree.assets
    n = len(labels)
    index = {a: i for i, a in enumerate(labels)}
    adjacency: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for e in tree.edges:
        i, j = index[e.a], index[e.b]
        adjacency[i].append((j, e.weight))
        adjacency[j].append((i, e.weight))

    dhat = np.zeros((n, n))
    for root in range(n):
        seen = [False] * n
        seen[root] = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v, w in adjacency[u]:
                if not seen[v]:
                    seen[v] = True
                    dhat[root, v] = max(dhat[root, u], w)
                    queue.append(v)
    dhat = np.maximum(dhat, dhat.T)
    return DistanceMatrix(labels, dhat)


def single_linkage(dist: DistanceMatrix) -> Dendrogram:
    """Agglomerate by minimum inter-cluster distance.

    Ties on the current minimum are resolved by first occurrence in
    row-major order over the working matrix, which keeps the procedure
    deterministic.
    """
    n = dist.n_assets
    if n < 2:
        raise SizeError(f"need at least 2 assets, got {n}")
    if not np.isfinite(dist.d).all():
        raise DomainError("single linkage requires finite distances")

    work = dist.d.copy()
    np.fill_diagonal(work, np.inf)
    cluster_id = list(range(n))  # slot -> current cluster id, inf-row when retired
    merges: list[Merge] = []
    for k in range(n - 1):
        flat = int(np.argmin(work))
        p, q = divmod(flat, n)
        if p > q:
            p, q = q, p
        height = float(work[p, q])
        left, right = sorted((cluster_id[p], cluster_id[q]))
        merges.append(Merge(left, right, height))
        # fold slot q into slot p, retire q
        np.minimum(work[p], work[q], out=work[p])
        work[:, p] = work[p]
        work[p, p] = np.inf
        work[q, :] = np.inf
        work[:, q] = np.inf
        cluster_id[p] = n + k
    return Dendrogram(dist.assets, tuple(merges))


def cophenetic_matrix(dendrogram: Dendrogram) -> DistanceMatrix:
    """Merge height at which each leaf pair first joins a common cluster."""
    n = dendrogram.n_leaves
    members: dict[int, list[int]] = {i: [i] for i in range(n)}
    coph = np.zeros((n, n))
    for k, m in enumerate(dendrogram.merges):
        left = members.pop(m.left)
        right = members.pop(m.right)
        li = np.asarray(left)[:, None]
        ri = np.asarray(right)[None, :]
        coph[li, ri] = m.height
        coph[ri.T, li.T] = m.height
        members[n + k] = left + right
    return DistanceMatrix(dendrogram.leaves, coph)
