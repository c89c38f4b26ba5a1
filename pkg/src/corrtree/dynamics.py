"""Rolling-window tree dynamics.

Re-runs the correlation -> distance -> tree pipeline over sliding
observation windows and quantifies topology change between trees by
edge survival: the fraction of endpoint pairs two trees share.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .correlation import pearson_matrix
from .distance import to_distance
from .errors import ComparisonError, SchemaError, SizeError
from .mst import SpanningTree, build_mst
from .transforms import ReturnsMatrix


@dataclass(frozen=True)
class WindowSpec:
    """Sliding observation window: width rows advanced by step rows."""

    width: int
    step: int = 1

    def __post_init__(self) -> None:
        if int(self.width) != self.width or self.width < 3:
            raise SizeError(f"window width must be an integer >= 3, got {self.width!r}")
        if int(self.step) != self.step or self.step < 1:
            raise SizeError(f"window step must be an integer >= 1, got {self.step!r}")
        object.__setattr__(self, "width", int(self.width))
        object.__setattr__(self, "step", int(self.step))


@dataclass(frozen=True, eq=False)
class TreeSequence:
    """Trees built per window, aligned with their (start, end) index spans."""

    assets: tuple[str, ...]
    windows: tuple[tuple[int, int], ...]
    trees: tuple[SpanningTree, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "assets", tuple(self.assets))
        object.__setattr__(
            self, "windows", tuple((int(s), int(e)) for s, e in self.windows)
        )
        object.__setattr__(self, "trees", tuple(self.trees))
        if len(self.windows) != len(self.trees):
            raise SchemaError(
                f"{len(self.windows)} windows but {len(self.trees)} trees"
            )
        if not self.trees:
            raise SchemaError("a tree sequence needs at least one window")
        expected = set(self.assets)
        for k, tree in enumerate(self.trees):
            if set(tree.assets) != expected:
                raise SchemaError(f"tree {k} does not cover the shared asset set")
        for k, (start, end) in enumerate(self.windows):
            if not 0 <= start < end:
                raise SchemaError(f"window {k} has invalid span ({start}, {end})")

    def __len__(self) -> int:
        return len(self.trees)

    def survival_vs_previous(self) -> tuple[float | None, ...]:
        """Edge survival of each tree against its predecessor; None for the first."""
        out: list[float | None] = [None]
        for prev, curr in zip(self.trees, self.trees[1:]):
            out.append(edge_survival(prev, curr))
        return tuple(out)


def rolling_trees(
    returns: ReturnsMatrix, window: WindowSpec, *, min_overlap: int = 3
) -> TreeSequence:
    """One spanning tree per window [k*step, k*step + width).

    Window count is floor((T - width) / step) + 1; trailing observations
    that do not fill a window are dropped.
    """
    n_obs = returns.observations.shape[0]
    if n_obs < window.width:
        raise SizeError(
            f"window width {window.width} exceeds series length {n_obs}"
        )
    count = (n_obs - window.width) // window.step + 1
    spans: list[tuple[int, int]] = []
    trees: list[SpanningTree] = []
    for k in range(count):
        start = k * window.step
        end = start + window.width
        sub = ReturnsMatrix(
            returns.assets, returns.observations[start:end], returns.kind
        )
        corr = pearson_matrix(sub, min_overlap=min_overlap)
        trees.append(build_mst(to_distance(corr)))
        spans.append((start, end))
    return TreeSequence(returns.assets, tuple(spans), tuple(trees))


def edge_survival(a: SpanningTree, b: SpanningTree) -> float:
    """Fraction of endpoint pairs shared by two trees on the same assets.

    Weights are ignored; this compares topology only.
    """
    if set(a.assets) != set(b.assets):
        raise ComparisonError("edge survival requires identical asset sets")
    shared = a.edge_set() & b.edge_set()
    return len(shared) / (a.n_assets - 1)


class SplitComparison(NamedTuple):
    before: SpanningTree
    after: SpanningTree
    survival: float


def split_compare(
    returns: ReturnsMatrix, split_index: int, *, min_overlap: int = 3
) -> SplitComparison:
    """Trees for the segments [0, split) and [split, T) plus their edge survival."""
    n_obs = returns.observations.shape[0]
    if split_index < 3 or n_obs - split_index < 3:
        raise SizeError(
            f"split at {split_index} leaves a segment shorter than 3 of {n_obs} observations"
        )
    head = ReturnsMatrix(returns.assets, returns.observations[:split_index], returns.kind)
    tail = ReturnsMatrix(returns.assets, returns.observations[split_index:], returns.kind)
    before = build_mst(to_distance(pearson_matrix(head, min_overlap=min_overlap)))
    after = build_mst(to_distance(pearson_matrix(tail, min_overlap=min_overlap)))
    return SplitComparison(before, after, edge_survival(before, after))
