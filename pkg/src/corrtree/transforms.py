"""Signal transforms feeding the correlation stage.

Four signal kinds are supported: natural-log returns for price-like
series, per-timestamp ranks for league-table data (1 = largest, ties get
the mean rank), per-asset z-scores for survey traits (population
divisor), and the raw values untouched. ``rebase`` re-expresses a panel
of currency quotes in a different base currency; the tree built from
such a panel depends on that choice of reference frame.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateAssetError, DomainError, SchemaError, SizeError, UnknownAssetError
from .panel import TimeSeriesPanel

SIGNAL_KINDS = ("log_return", "raw", "rank", "zscore")


@dataclass(frozen=True, eq=False)
class ReturnsMatrix:
    """Derived observation matrix (time x asset) handed to the correlation stage."""

    assets: tuple[str, ...]
    observations: np.ndarray
    kind: str

    def __post_init__(self) -> None:
        assets = tuple(self.assets)
        obs = np.array(self.observations, dtype=float)
        object.__setattr__(self, "assets", assets)
        object.__setattr__(self, "observations", obs)
        if self.kind not in SIGNAL_KINDS:
            raise SchemaError(f"unknown signal kind {self.kind!r}; expected one of {SIGNAL_KINDS}")
        if len(assets) < 2 or len(set(assets)) != len(assets):
            raise SchemaError("need at least 2 uniquely labelled assets")
        if obs.ndim != 2 or obs.shape[1] != len(assets) or obs.shape[0] < 1:
            raise SchemaError(
                f"observation matrix shape {obs.shape} does not match {len(assets)} assets"
            )
        obs.setflags(write=False)

    @property
    def n_assets(self) -> int:
        return len(self.assets)

    @property
    def n_obs(self) -> int:
        return int(self.observations.shape[0])


def log_returns(panel: TimeSeriesPanel) -> ReturnsMatrix:
    """Log-difference each asset column: ``Y[t] = ln P[t+1] - ln P[t]``.

    Every present value must be strictly positive. A missing price at
    ``t`` or ``t+1`` yields a missing return at ``t``; the output has one
    row fewer than the panel.
    """
    if panel.n_obs < 2:
        raise SizeError("log returns need at least 2 observations")
    values = panel.values
    bad = np.argwhere(~np.isnan(values) & (values <= 0.0))
    if bad.size:
        t, i = bad[0]
        raise DomainError(
            f"non-positive value {values[t, i]!r} for asset {panel.assets[i]!r} "
            f"at timestamp {panel.timestamps[t]!r}"
        )
    logs = np.log(values)
    return ReturnsMatrix(panel.assets, logs[1:] - logs[:-1], "log_return")


def raw_signal(panel: TimeSeriesPanel) -> ReturnsMatrix:
    """Pass panel values through unchanged."""
    return ReturnsMatrix(panel.assets, panel.values, "raw")


def rank_signal(panel: TimeSeriesPanel) -> ReturnsMatrix:
    """Rank assets within each timestamp, 1 = largest value, ties share the mean rank.

    Row sums are therefore always n(n+1)/2. Rows with missing values
    cannot be ranked and raise :class:`DomainError`.
    """
    values = panel.values
    missing = np.argwhere(np.isnan(values))
    if missing.size:
        t, i = missing[0]
        raise DomainError(
            f"cannot rank timestamp {panel.timestamps[t]!r}: "
            f"missing value for asset {panel.assets[i]!r}"
        )
    out = np.empty_like(values)
    for t in range(values.shape[0]):
        out[t] = _mean_ranks_descending(values[t])
    return ReturnsMatrix(panel.assets, out, "rank")


def _mean_ranks_descending(row: np.ndarray) -> np.ndarray:
    order = np.argsort(-row, kind="stable")
    ranks = np.empty(row.shape, dtype=float)
    sorted_vals = row[order]
    i = 0
    n = len(row)
    while i < n:
        j = i
        while j < n and sorted_vals[j] == sorted_vals[i]:
            j += 1
        # positions i+1 .. j occupied by a tie group -> mean rank
        ranks[order[i:j]] = (i + 1 + j) / 2.0
        i = j
    return ranks


def zscore(panel: TimeSeriesPanel) -> ReturnsMatrix:
    """Shift each asset column to mean 0 and scale to population standard deviation 1.

    Statistics are taken over present values only; missing cells stay
    missing. Columns with fewer than 2 present values or zero variance
    raise :class:`DegenerateAssetError`.
    """
    values = panel.values
    present = ~np.isnan(values)
    counts = present.sum(axis=0)
    for i, c in enumerate(counts):
        if c < 2:
            raise DegenerateAssetError(
                f"asset {panel.assets[i]!r} has {int(c)} present value(s); need at least 2"
            )
    out = np.full(values.shape, np.nan)
    for i in range(values.shape[1]):
        col = values[present[:, i], i]
        centered = col - col.mean()
        centered -= centered.mean()  # second pass kills the cancellation residue
        sigma = np.sqrt(np.mean(centered**2))
        if sigma == 0.0:
            raise DegenerateAssetError(f"asset {panel.assets[i]!r} has zero variance")
        out[present[:, i], i] = centered / sigma
    return ReturnsMatrix(panel.assets, out, "zscore")


def rebase(panel: TimeSeriesPanel, base: str, *, numeraire: str) -> TimeSeriesPanel:
    """Re-express quotes in a new base currency.

    ``panel`` holds quotes of each asset in ``numeraire``. Rebasing to
    ``base`` divides every other column by the base column and appends
    the old numeraire as a new asset quoted at ``1 / P_base``; the base
    column itself is dropped. Rebasing to the numeraire is the identity.
    """
    if base == numeraire:
        return panel
    if base not in panel.assets:
        raise UnknownAssetError(f"unknown base {base!r}; panel assets: {list(panel.assets)}")
    if numeraire in panel.assets:
        raise SchemaError(
            f"numeraire {numeraire!r} is already an asset label; rebasing would duplicate it"
        )
    base_col = panel.column(base)
    bad = np.argwhere(np.isnan(base_col) | (base_col <= 0.0))
    if bad.size:
        t = int(bad[0][0])
        raise DomainError(
            f"base column {base!r} must be present and positive; "
            f"offending value {base_col[t]!r} at timestamp {panel.timestamps[t]!r}"
        )
    keep = [i for i, a in enumerate(panel.assets) if a != base]
    rebased = panel.values[:, keep] / base_col[:, None]
    inverse = (1.0 / base_col)[:, None]
    assets = tuple(panel.assets[i] for i in keep) + (numeraire,)
    return TimeSeriesPanel(assets, panel.timestamps, np.hstack([rebased, inverse]))
