"""Signal transforms: log returns, ranks, z-scores, re-basing."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from corrtree import (
    DegenerateAssetError,
    DomainError,
    SchemaError,
    SizeError,
    TimeSeriesPanel,
    UnknownAssetError,
    log_returns,
    rank_signal,
    raw_signal,
    rebase,
    zscore,
)
from helpers import panel

# frozen: ln(1.1) to 17 significant digits
LN_1_1 = 0.09531017980432486


class TestLogReturns:
    def test_frozen_value(self):
        p = panel([[100.0, 50.0], [110.0, 50.0]])
        r = log_returns(p)
        assert r.kind == "log_return"
        assert r.observations.shape == (1, 2)
        assert abs(r.observations[0, 0] - LN_1_1) < 1e-15
        assert r.observations[0, 1] == 0.0

    def test_needs_two_rows(self):
        with pytest.raises(SizeError):
            log_returns(panel([[1.0, 2.0]]))

    def test_nonpositive_price_rejected(self):
        p = panel([[1.0, 2.0], [0.0, 3.0]])
        with pytest.raises(DomainError, match="S00"):
            log_returns(p)
        with pytest.raises(DomainError):
            log_returns(panel([[1.0, -2.0], [2.0, 3.0]]))

    def test_missing_propagates_to_adjacent_returns(self):
        p = panel([[1.0, 1.0], [np.nan, 2.0], [3.0, 4.0]])
        r = log_returns(p)
        assert np.isnan(r.observations[0, 0]) and np.isnan(r.observations[1, 0])
        assert not np.isnan(r.observations[:, 1]).any()

    @given(
        hnp.arrays(
            np.float64,
            (5, 3),
            elements=st.floats(min_value=0.01, max_value=1e4),
        )
    )
    def test_scale_invariance(self, values):
        base = log_returns(panel(values)).observations
        scaled = log_returns(panel(values * 7.5)).observations
        assert np.allclose(base, scaled, atol=1e-12)


class TestRawAndRank:
    def test_raw_passthrough(self):
        p = panel([[1.0, -2.0], [3.0, 4.0]])
        r = raw_signal(p)
        assert r.kind == "raw"
        assert np.array_equal(r.observations, p.values)

    def test_rank_descending_with_ties(self):
        # row [3, 1, 2] -> places [1, 3, 2]; ties share the mean place
        r = rank_signal(panel([[3.0, 1.0, 2.0], [5.0, 5.0, 1.0]]))
        assert r.kind == "rank"
        assert r.observations[0].tolist() == [1.0, 3.0, 2.0]
        assert r.observations[1].tolist() == [1.5, 1.5, 3.0]

    def test_rank_rejects_missing(self):
        with pytest.raises(DomainError):
            rank_signal(panel([[1.0, np.nan]]))

    @given(
        hnp.arrays(
            np.float64,
            (4, 5),
            elements=st.floats(-100, 100),
            unique=True,
        )
    )
    def test_rank_invariant_under_monotone_map(self, values):
        direct = rank_signal(panel(values)).observations
        # power-of-two scaling is exact, so the order is untouched
        mapped = rank_signal(panel(values * 4.0)).observations
        assert np.array_equal(direct, mapped)

    def test_rank_rows_sum_to_constant(self):
        rng = np.random.default_rng(3)
        r = rank_signal(panel(rng.standard_normal((20, 6))))
        assert np.allclose(r.observations.sum(axis=1), 21.0)  # 1+2+...+6


class TestZScore:
    def test_frozen_three_point_column(self):
        r = zscore(panel([[1.0, 5.0], [2.0, 5.5], [3.0, 6.0]]))
        expected = 1.224744871391589  # sqrt(3/2)
        assert abs(r.observations[2, 0] - expected) < 1e-15
        assert abs(r.observations[0, 0] + expected) < 1e-15

    def test_population_moments(self):
        rng = np.random.default_rng(11)
        r = zscore(panel(rng.standard_normal((50, 4)) * 3.0 + 5.0))
        assert np.allclose(r.observations.mean(axis=0), 0.0, atol=1e-12)
        assert np.allclose((r.observations**2).mean(axis=0), 1.0, atol=1e-12)

    def test_constant_column_rejected(self):
        with pytest.raises(DegenerateAssetError):
            zscore(panel([[1.0, 2.0], [1.0, 3.0]]))

    def test_missing_preserved_and_ignored(self):
        r = zscore(panel([[1.0, 1.0], [np.nan, 2.0], [3.0, 3.0]]))
        assert np.isnan(r.observations[1, 0])
        present = r.observations[[0, 2], 0]
        assert abs(present.mean()) < 1e-12

    def test_too_few_present_values(self):
        with pytest.raises(DegenerateAssetError):
            zscore(panel([[1.0, 1.0], [np.nan, 2.0], [np.nan, 3.0]]))


class TestRebase:
    def fx_panel(self):
        # quotes per unit USD
        rng = np.random.default_rng(5)
        values = np.exp(rng.standard_normal((8, 3)) * 0.1)
        return TimeSeriesPanel(
            ("EUR", "GBP", "JPY"), tuple(range(8)), values
        )

    def test_identity_when_base_is_numeraire(self):
        p = self.fx_panel()
        assert rebase(p, "USD", numeraire="USD") is p

    def test_base_column_becomes_reciprocal_numeraire(self):
        p = self.fx_panel()
        q = rebase(p, "EUR", numeraire="USD")
        assert q.assets == ("GBP", "JPY", "USD")
        eur = p.values[:, 0]
        assert np.allclose(q.values[:, 2], 1.0 / eur, rtol=1e-15)
        assert np.allclose(q.values[:, 0], p.values[:, 1] / eur, rtol=1e-15)

    def test_two_step_round_trip(self):
        p = self.fx_panel()
        q = rebase(p, "EUR", numeraire="USD")
        back = rebase(q, "USD", numeraire="EUR")
        assert set(back.assets) == set(p.assets)
        for label in p.assets:
            a = p.values[:, p.asset_index(label)]
            b = back.values[:, back.asset_index(label)]
            assert np.max(np.abs(b / a - 1.0)) <= 1e-12

    def test_unknown_base(self):
        with pytest.raises(UnknownAssetError):
            rebase(self.fx_panel(), "CHF", numeraire="USD")

    def test_numeraire_collision(self):
        with pytest.raises(SchemaError):
            rebase(self.fx_panel(), "EUR", numeraire="GBP")

    def test_nonpositive_base_quote(self):
        p = TimeSeriesPanel(("EUR", "GBP"), (0, 1), [[1.0, 2.0], [0.0, 3.0]])
        with pytest.raises(DomainError, match="1"):
            rebase(p, "EUR", numeraire="USD")

    def test_missing_base_quote(self):
        p = TimeSeriesPanel(("EUR", "GBP"), (0,), [[np.nan, 2.0]])
        with pytest.raises(DomainError):
            rebase(p, "EUR", numeraire="USD")

    @given(st.integers(0, 2**31 - 1))
    def test_round_trip_property(self, seed):
        rng = np.random.default_rng(seed)
        values = np.exp(rng.standard_normal((5, 4)))
        p = TimeSeriesPanel(("W", "X", "Y", "Z"), tuple(range(5)), values)
        q = rebase(p, "X", numeraire="N")
        back = rebase(q, "N", numeraire="X")
        for label in p.assets:
            a = p.values[:, p.asset_index(label)]
            b = back.values[:, back.asset_index(label)]
            assert np.max(np.abs(b / a - 1.0)) <= 1e-12
