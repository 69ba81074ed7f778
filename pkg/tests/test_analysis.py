# SPDX-FileCopyrightText: 2025-present adamws <adamws@users.noreply.github.com>
#
# SPDX-License-Identifier: MIT
"""Tests for analysis.py module."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bridge_distance.analysis import (
    AnalysisError,
    HemiComponent,
    SeparatingFamily,
    adjacency_pairs,
    check_well_mixed,
    hemi_components,
    naive_adjacency_pairs,
    owner_pair,
    required_pairs,
    separates,
    separating_family,
)
from bridge_distance.arc_system import (
    Hemisphere,
    Interval,
    IntervalKind,
    apply_generator,
    build_diagram,
    standard_top_system,
)
from bridge_distance.plat import PlatPresentation
from bridge_distance.verify import verify_separating_family, verify_well_mixed_report

pytestmark = pytest.mark.unit

D1 = Interval(IntervalKind.CORRIDOR, 1)


@st.composite
def plats(draw):
    n = draw(st.integers(min_value=2, max_value=4))
    letters = st.integers(min_value=1, max_value=2 * n - 1).flatmap(
        lambda k: st.sampled_from((k, -k))
    )
    return PlatPresentation(n, tuple(draw(st.lists(letters, max_size=12))))


def _component(owner, positions, *, around_d1):
    return HemiComponent(
        hemisphere=Hemisphere.UPPER,
        owner=owner,
        index=0,
        endpoints=positions,
        positions=positions,
        span=frozenset({D1}) if around_d1 else frozenset(),
        cut=frozenset(),
    )


class TestPairs:
    """Test owner pair helpers."""

    def test_owner_pair_is_unordered(self):
        assert owner_pair(3, 1) == owner_pair(1, 3) == (1, 3)

    def test_required_pairs(self):
        assert required_pairs(3) == ((1, 2), (1, 3), (2, 3))
        assert required_pairs(2) == ((1, 2),)


class TestHemiComponents:
    """Test the split of overpasses into hemisphere components."""

    def test_standard_system(self):
        system = standard_top_system(3)
        upper = hemi_components(system, Hemisphere.UPPER)
        assert [c.owner for c in upper] == [1, 2, 3]
        assert hemi_components(system, Hemisphere.LOWER) == []

    def test_standard_chords_span_underpasses(self):
        upper = hemi_components(standard_top_system(3), Hemisphere.UPPER)
        assert upper[1].span == frozenset({Interval(IntervalKind.UNDERPASS, 2)})
        assert not upper[1].cut

    def test_one_component_per_chord(self):
        system = build_diagram(PlatPresentation(2, (2, 2, 2)))
        total = sum(len(hemi_components(system, h)) for h in Hemisphere)
        assert total == len(system.chords) == system.crossing_count + 2

    def test_owner_matches_chord(self):
        system = build_diagram(PlatPresentation(3, (2, -4, 3)))
        for hemisphere in Hemisphere:
            for component in hemi_components(system, hemisphere):
                arc = system.arc(component.owner)
                assert set(component.endpoints) <= set(arc.nodes)


class TestSeparates:
    """Test the separation predicate."""

    def test_same_corridor_rejected(self):
        component = hemi_components(standard_top_system(3), Hemisphere.UPPER)[0]
        with pytest.raises(AnalysisError, match="must differ"):
            separates(component, 2, 2)

    def test_standard_chord_separates_nothing(self):
        for component in hemi_components(standard_top_system(3), Hemisphere.UPPER):
            assert not separates(component, 1, 2)
            assert not separates(component, 3, 1)

    def test_span_decides(self):
        component = _component(1, (0, 5), around_d1=True)
        assert separates(component, 1, 2)
        assert separates(component, 2, 1)

    def test_cut_corridor_never_separates(self):
        component = HemiComponent(
            hemisphere=Hemisphere.UPPER,
            owner=1,
            index=0,
            endpoints=(0, 5),
            positions=(0, 5),
            span=frozenset({D1}),
            cut=frozenset({Interval(IntervalKind.CORRIDOR, 2)}),
        )
        assert not separates(component, 1, 2)
        assert not separates(component, 2, 3)


class TestSeparatingFamily:
    """Test family collection and ordering."""

    def test_standard_system_families_empty(self):
        system = standard_top_system(3)
        for hemisphere in Hemisphere:
            assert separating_family(system, 1, 2, hemisphere).members == ()

    def test_full_twist_has_members(self):
        system = build_diagram(PlatPresentation(2, (2, 2)))
        sizes = [len(separating_family(system, 1, 2, h).members) for h in Hemisphere]
        assert any(sizes)

    def test_reversed_pair_has_same_members(self):
        system = build_diagram(PlatPresentation(3, (2, 4, -3, 2, 5)))
        for hemisphere in Hemisphere:
            forward = separating_family(system, 1, 3, hemisphere)
            backward = separating_family(system, 3, 1, hemisphere)
            assert set(forward.members) == set(backward.members)

    def test_members_ordered_by_side(self):
        system = build_diagram(PlatPresentation(3, (2, 2, 4, 4, -3, -3)))
        for hemisphere in Hemisphere:
            family = separating_family(system, 1, 2, hemisphere)
            sizes = [family.side_size(m) for m in family.members]
            assert sizes == sorted(sizes)

    @given(plats())
    @settings(max_examples=50, deadline=None)
    def test_families_pass_independent_check(self, plat):
        system = build_diagram(plat)
        for hemisphere in Hemisphere:
            for i in range(1, plat.bridge_number + 1):
                for j in range(1, plat.bridge_number + 1):
                    if i != j:
                        family = separating_family(system, i, j, hemisphere)
                        verify_separating_family(system, family)


class TestAdjacencyPairs:
    """Test pair extraction from families."""

    def test_empty_and_singleton(self):
        member = _component(1, (2, 5), around_d1=True)
        for members in ((), (member,)):
            family = SeparatingFamily(1, 2, Hemisphere.UPPER, members, 10)
            assert adjacency_pairs(family, members) == frozenset()
            assert naive_adjacency_pairs(family) == frozenset()

    def test_direct_neighbours(self):
        inner = _component(2, (3, 6), around_d1=True)
        outer = _component(1, (0, 9), around_d1=True)
        family = SeparatingFamily(1, 2, Hemisphere.UPPER, (inner, outer), 10)
        assert adjacency_pairs(family, [inner, outer]) == {(1, 2)}

    def test_chord_in_band_blocks_pair(self):
        """Test that a chord between two members removes their pair."""
        inner = _component(2, (3, 6), around_d1=True)
        outer = _component(1, (0, 9), around_d1=True)
        blocker = _component(3, (1, 2), around_d1=False)
        family = SeparatingFamily(1, 2, Hemisphere.UPPER, (inner, outer), 10)
        assert adjacency_pairs(family, [inner, outer, blocker]) == frozenset()
        assert naive_adjacency_pairs(family) == {(1, 2)}

    def test_chord_inside_inner_member_is_ignored(self):
        inner = _component(2, (3, 6), around_d1=True)
        outer = _component(1, (0, 9), around_d1=True)
        nested = _component(3, (4, 5), around_d1=False)
        family = SeparatingFamily(1, 2, Hemisphere.UPPER, (inner, outer), 10)
        assert adjacency_pairs(family, [inner, outer, nested]) == {(1, 2)}

    def test_equal_owners_kept(self):
        inner = _component(2, (3, 6), around_d1=True)
        outer = _component(2, (0, 9), around_d1=True)
        family = SeparatingFamily(1, 2, Hemisphere.UPPER, (inner, outer), 10)
        assert adjacency_pairs(family, [inner, outer]) == {(2, 2)}


class TestCheckWellMixed:
    """Test the global well-mixed verdict."""

    def test_standard_system_fails_everywhere(self):
        report = check_well_mixed(standard_top_system(3))
        assert not report.passed
        assert not report.naive_passed
        assert len(report.combinations) == 6
        assert len(report.failures) == 6
        for result in report.combinations:
            assert result.missing == ((1, 2), (1, 3), (2, 3))
            assert result.first_missing == (1, 2)

    def test_combination_lookup_is_symmetric(self):
        report = check_well_mixed(build_diagram(PlatPresentation(3, (2, 4))))
        for hemisphere in Hemisphere:
            assert report.combination(3, 1, hemisphere) is report.combination(
                1, 3, hemisphere
            )

    def test_unknown_combination(self):
        report = check_well_mixed(standard_top_system(3))
        with pytest.raises(AnalysisError, match="No combination"):
            report.combination(1, 4, Hemisphere.UPPER)

    def test_needs_reduced_system(self):
        system = apply_generator(standard_top_system(3), 2)
        with pytest.raises(AnalysisError, match="reduced"):
            check_well_mixed(system)

    def test_combination_keys(self):
        report = check_well_mixed(standard_top_system(3))
        keys = {result.key for result in report.combinations}
        assert keys == {(i, j, h) for i, j in required_pairs(3) for h in Hemisphere}

    @given(plats())
    @settings(max_examples=50, deadline=None)
    def test_strict_pairs_within_naive_pairs(self, plat):
        """Test that the strict reading never accepts more than the naive one."""
        report = check_well_mixed(build_diagram(plat))
        for result in report.combinations:
            assert result.pairs <= result.naive_pairs
        if report.passed:
            assert report.naive_passed

    @given(plats())
    @settings(max_examples=50, deadline=None)
    def test_report_passes_independent_check(self, plat):
        system = build_diagram(plat)
        verify_well_mixed_report(system, check_well_mixed(system))
