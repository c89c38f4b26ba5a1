"""Shared builders for test panels and matrices."""

from __future__ import annotations

import numpy as np

from corrtree import (
    CorrelationMatrix,
    DistanceMatrix,
    ReturnsMatrix,
    TimeSeriesPanel,
    pearson_matrix,
    to_distance,
)


def labels(n: int, prefix: str = "S") -> tuple[str, ...]:
    return tuple(f"{prefix}{i:02d}" for i in range(n))


def returns(values, kind: str = "raw", prefix: str = "S") -> ReturnsMatrix:
    values = np.asarray(values, dtype=float)
    return ReturnsMatrix(labels(values.shape[1], prefix), values, kind)


def panel(values, prefix: str = "S") -> TimeSeriesPanel:
    values = np.asarray(values, dtype=float)
    return TimeSeriesPanel(
        labels(values.shape[1], prefix), tuple(range(values.shape[0])), values
    )


def corr_from_pairs(names, pairs, default: float = 0.0) -> CorrelationMatrix:
    """Symmetric correlation matrix from {(a, b): rho} with a shared default."""
    names = tuple(names)
    index = {a: i for i, a in enumerate(names)}
    rho = np.full((len(names), len(names)), float(default))
    for (a, b), value in pairs.items():
        rho[index[a], index[b]] = rho[index[b], index[a]] = float(value)
    np.fill_diagonal(rho, 1.0)
    return CorrelationMatrix(names, rho)


def random_data_distance(rng: np.random.Generator, n: int, t: int | None = None) -> DistanceMatrix:
    """Distance matrix estimated from a random gaussian panel."""
    if t is None:
        t = n + int(rng.integers(2, 30))
    y = rng.standard_normal((t, n))
    return to_distance(pearson_matrix(returns(y)))
