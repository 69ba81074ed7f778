# SPDX-FileCopyrightText: 2025-present adamws <adamws@users.noreply.github.com>
#
# SPDX-License-Identifier: MIT
"""Tests for search.py module."""

import itertools

import pytest

from bridge_distance import __version__, search
from bridge_distance.bounds import LowerReason
from bridge_distance.plat import PlatPresentation
from bridge_distance.report import FORMAT_VERSION, TOOL_NAME
from bridge_distance.search import (
    SearchError,
    SearchParams,
    candidate_words,
    evaluate_candidate,
    run_search,
)

pytestmark = pytest.mark.unit


class TestSearchParams:
    """Test parameter validation."""

    @pytest.mark.parametrize(
        ("kwargs", "fragment"),
        [
            ({"n": 2}, "Search needs n >= 3"),
            ({"max_len": 0}, "max_len must be positive"),
            ({"max_candidates": 0}, "max_candidates must be positive"),
            ({"workers": 0}, "workers must be positive"),
            ({"budget_seconds": 0.0}, "budget_seconds must be positive"),
        ],
    )
    def test_invalid(self, kwargs, fragment):
        params = {"n": 3, "max_len": 10, "seed": 0, **kwargs}
        with pytest.raises(SearchError, match=fragment):
            SearchParams(**params)

    def test_to_dict(self):
        params = SearchParams(n=3, max_len=10, seed=4, max_candidates=5)
        assert params.to_dict() == {
            "n": 3,
            "max_len": 10,
            "seed": 4,
            "max_candidates": 5,
            "budget_seconds": None,
            "workers": 1,
        }


class TestCandidateWords:
    """Test the seeded random walk."""

    def test_same_seed_same_words(self):
        params = SearchParams(n=3, max_len=12, seed=11, max_candidates=200)
        assert list(candidate_words(params)) == list(candidate_words(params))

    def test_seeds_differ(self):
        a = SearchParams(n=3, max_len=12, seed=1, max_candidates=50)
        b = SearchParams(n=3, max_len=12, seed=2, max_candidates=50)
        assert list(candidate_words(a)) != list(candidate_words(b))

    def test_words_are_distinct_and_bounded(self):
        params = SearchParams(n=3, max_len=6, seed=0, max_candidates=300)
        words = list(candidate_words(params))
        assert len(words) == 300
        assert len(set(words)) == len(words)
        for word in words:
            assert 1 <= len(word) <= 6
            assert all(1 <= abs(g) <= 5 for g in word)
            assert all(a != -b for a, b in zip(word, word[1:]))

    def test_stops_when_space_is_exhausted(self):
        """Test that a tiny word space ends the walk early."""
        params = SearchParams(n=3, max_len=1, seed=0, max_candidates=100)
        assert sorted(candidate_words(params)) == sorted(
            (g,) for k in range(1, 6) for g in (k, -k)
        )


class TestRunSearch:
    """Test whole searches."""

    def test_standard_is_no_hit(self):
        assert evaluate_candidate(PlatPresentation(3)) is None

    def test_small_search(self):
        params = SearchParams(n=3, max_len=8, seed=0, max_candidates=40)
        result = run_search(params)
        assert result.evaluated == 40
        assert not result.truncated
        for hit in result.hits:
            assert hit.bounds.well_mixed.passed
            assert hit.bounds.lower == 2
            assert hit.bounds.lower_reason is LowerReason.WELL_MIXED
            assert hit.bounds.pair_witness is None

    def test_deterministic(self):
        params = SearchParams(n=3, max_len=8, seed=5, max_candidates=30)
        first = run_search(params)
        second = run_search(params)
        assert [h.plat for h in first.hits] == [h.plat for h in second.hits]
        assert first.to_dict() == second.to_dict()

    def test_to_dict(self):
        params = SearchParams(n=3, max_len=4, seed=9, max_candidates=10)
        document = run_search(params).to_dict()
        assert document["format_version"] == FORMAT_VERSION
        assert document["tool"] == {"name": TOOL_NAME, "version": __version__}
        assert document["seed"] == 9
        assert document["evaluated"] == 10
        assert document["params"] == params.to_dict()

    def test_time_budget_truncates(self, monkeypatch):
        clock = itertools.count(start=0.0, step=100.0)
        monkeypatch.setattr(search.time, "monotonic", lambda: next(clock))
        params = SearchParams(
            n=3, max_len=8, seed=0, max_candidates=100, budget_seconds=1.0
        )
        result = run_search(params)
        assert result.truncated
        assert result.evaluated == 0
        assert result.hits == ()

    @pytest.mark.slow
    def test_workers_match_serial_run(self):
        serial = run_search(
            SearchParams(n=3, max_len=12, seed=3, max_candidates=200)
        )
        parallel = run_search(
            SearchParams(n=3, max_len=12, seed=3, max_candidates=200, workers=2)
        )
        assert [h.index for h in serial.hits] == [h.index for h in parallel.hits]
        assert serial.evaluated == parallel.evaluated

    @pytest.mark.slow
    def test_finds_well_mixed_plat(self):
        """Test that a longer search turns up an exact distance-two plat."""
        params = SearchParams(
            n=3, max_len=20, seed=0, max_candidates=20_000, budget_seconds=600
        )
        result = run_search(params)
        assert result.hits
        assert all(hit.bounds.lower == 2 for hit in result.hits)
