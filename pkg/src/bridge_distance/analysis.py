# SPDX-FileCopyrightText: 2025-present adamws <adamws@users.noreply.github.com>
#
# SPDX-License-Identifier: MIT
"""Separating families and the well-mixed condition.

A hemisphere component is one chord of the diagram. It separates corridor d_i
from corridor d_j when the two corridors lie on different sides of it. The
components separating d_i from d_j in one hemisphere are parallel, so they form
a nested family that can be ordered from the d_i side to the d_j side.

Two consecutive members count as adjacent only when no chord of the same
hemisphere lies in the band between them. Only that reading certifies distance
two; adjacency within the family alone is reported as a diagnostic.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Optional

from bridge_distance.arc_system import Hemisphere, Interval, IntervalKind

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

    from bridge_distance.arc_system import ArcSystem

logger = logging.getLogger(__name__)

OwnerPair = tuple[int, int]


class AnalysisError(Exception):
    """Exception raised for invalid analysis requests."""


class NestingError(AnalysisError):
    """A separating family is not totally nested (planarity bug upstream)."""


def owner_pair(r: int, s: int) -> OwnerPair:
    return (r, s) if r <= s else (s, r)


def required_pairs(n: int) -> tuple[OwnerPair, ...]:
    """Every unordered pair of distinct overpass labels."""
    return tuple(itertools.combinations(range(1, n + 1), 2))


@dataclass(frozen=True)
class HemiComponent:
    """One chord of the diagram seen as a component of p(tau+) in a hemisphere.

    ``positions`` are the sorted event positions of the chord ends. ``span``
    holds the intervals of the axis lying wholly between them; ``cut`` holds
    the intervals with a chord end in their interior.
    """

    hemisphere: Hemisphere
    owner: int
    index: int
    endpoints: tuple[int, int]
    positions: tuple[int, int]
    span: frozenset[Interval]
    cut: frozenset[Interval]

    def corridor_inside(self, corridor: int) -> bool:
        return Interval(IntervalKind.CORRIDOR, corridor) in self.span

    def cuts_corridor(self, corridor: int) -> bool:
        return Interval(IntervalKind.CORRIDOR, corridor) in self.cut


def hemi_components(system: ArcSystem, hemisphere: Hemisphere) -> list[HemiComponent]:
    """One component per chord of ``hemisphere``, in arc order."""
    size = system.n * 2
    # positions of q_1..q_2n, plus the wrap back to the end of the order
    bounds = [system.puncture_position(k) for k in range(1, size + 1)]
    bounds.append(len(system.events))

    components = []
    for chord in system.chords:
        if chord.hemisphere is not hemisphere:
            continue
        a, b = sorted(system.position[e] for e in chord.ends)
        span = set()
        cut = set()
        for gap in range(1, size + 1):
            interval = Interval.from_gap(gap)
            lo, hi = bounds[gap - 1], bounds[gap]
            if gap < size and a <= lo and hi <= b:
                span.add(interval)
            elif any(lo < p < hi for p in (a, b)):
                cut.add(interval)
        components.append(
            HemiComponent(
                hemisphere=hemisphere,
                owner=chord.owner,
                index=chord.index,
                endpoints=chord.ends,
                positions=(a, b),
                span=frozenset(span),
                cut=frozenset(cut),
            )
        )
    return components


def separates(component: HemiComponent, i: int, j: int) -> bool:
    """Whether ``component`` has corridor d_i and corridor d_j on different sides.

    A chord with an end inside either corridor separates nothing.
    """
    if i == j:
        msg = f"Corridor indices must differ, got {i} twice"
        raise AnalysisError(msg)
    if component.cuts_corridor(i) or component.cuts_corridor(j):
        return False
    return component.corridor_inside(i) != component.corridor_inside(j)


@dataclass(frozen=True)
class SeparatingFamily:
    """Components separating d_i from d_j in one hemisphere, from the d_i side."""

    i: int
    j: int
    hemisphere: Hemisphere
    members: tuple[HemiComponent, ...]
    event_count: int

    def side_size(self, member: HemiComponent) -> int:
        """Number of events strictly on the d_i side of ``member``."""
        a, b = member.positions
        if member.corridor_inside(self.i):
            return b - a - 1
        return self.event_count - (b - a + 1)

    def on_side(self, member: HemiComponent, position: int) -> bool:
        """Whether ``position`` lies strictly on the d_i side of ``member``."""
        a, b = member.positions
        if member.corridor_inside(self.i):
            return a < position < b
        return position < a or position > b

    @property
    def owners(self) -> tuple[int, ...]:
        return tuple(member.owner for member in self.members)


def _validate_nesting(family: SeparatingFamily) -> None:
    for inner, outer in zip(family.members, family.members[1:]):
        if not all(family.on_side(outer, p) for p in inner.positions):
            msg = (
                f"Family ({family.i},{family.j},{family.hemisphere.value}) is not "
                f"nested: chord at {inner.positions} escapes chord at {outer.positions}"
            )
            raise NestingError(msg)


def separating_family(
    system: ArcSystem,
    i: int,
    j: int,
    hemisphere: Hemisphere,
    components: Optional[Sequence[HemiComponent]] = None,
) -> SeparatingFamily:
    """Collect and order the components separating d_i from d_j.

    Raises:
        NestingError: If the members are not totally nested
    """
    if components is None:
        components = hemi_components(system, hemisphere)
    event_count = len(system.events)
    unordered = tuple(c for c in components if separates(c, i, j))
    probe = SeparatingFamily(i, j, hemisphere, unordered, event_count)
    members = tuple(sorted(unordered, key=probe.side_size))
    family = SeparatingFamily(i, j, hemisphere, members, event_count)
    _validate_nesting(family)
    return family


class _EndpointCounter:
    """Counts chord ends of one hemisphere in stretches of the axis."""

    def __init__(self, components: Iterable[HemiComponent], event_count: int) -> None:
        occupied = [0] * event_count
        for component in components:
            for position in component.positions:
                occupied[position] = 1
        self.prefix = [0, *itertools.accumulate(occupied)]
        self.total = self.prefix[-1]

    def between(self, a: int, b: int) -> int:
        """Chord ends strictly between positions a < b."""
        return self.prefix[b] - self.prefix[a + 1]

    def on_side(self, family: SeparatingFamily, member: HemiComponent) -> int:
        a, b = member.positions
        if member.corridor_inside(family.i):
            return self.between(a, b)
        return self.total - (self.prefix[b + 1] - self.prefix[a])


def naive_adjacency_pairs(family: SeparatingFamily) -> frozenset[OwnerPair]:
    """Owner pairs of consecutive family members, ignoring other chords."""
    return frozenset(
        owner_pair(a.owner, b.owner)
        for a, b in zip(family.members, family.members[1:])
    )


def adjacency_pairs(
    family: SeparatingFamily, components: Iterable[HemiComponent]
) -> frozenset[OwnerPair]:
    """Owner pairs of consecutive members with no chord of the hemisphere between.

    ``components`` must be every component of the family's hemisphere. Pairs
    with equal owners are kept; they never satisfy a distinct-pair requirement.
    """
    counter = _EndpointCounter(components, family.event_count)
    pairs = set()
    for inner, outer in zip(family.members, family.members[1:]):
        # the band holds exactly the ends of ``inner`` when nothing lies in it
        if counter.on_side(family, outer) == counter.on_side(family, inner) + 2:
            pairs.add(owner_pair(inner.owner, outer.owner))
    return frozenset(pairs)


@dataclass(frozen=True)
class CombinationResult:
    """Well-mixed evidence for one corridor pair and hemisphere."""

    family: SeparatingFamily
    pairs: frozenset[OwnerPair]
    naive_pairs: frozenset[OwnerPair]
    missing: tuple[OwnerPair, ...]
    naive_missing: tuple[OwnerPair, ...] = field(default=())

    @property
    def key(self) -> tuple[int, int, Hemisphere]:
        return (self.family.i, self.family.j, self.family.hemisphere)

    @property
    def passed(self) -> bool:
        return not self.missing

    @property
    def naive_passed(self) -> bool:
        return not self.naive_missing

    @property
    def first_missing(self) -> Optional[OwnerPair]:
        return self.missing[0] if self.missing else None


@dataclass(frozen=True)
class WellMixedReport:
    """Per-combination evidence and the global well-mixed verdict."""

    n: int
    combinations: tuple[CombinationResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.combinations)

    @property
    def naive_passed(self) -> bool:
        return all(c.naive_passed for c in self.combinations)

    @cached_property
    def _by_key(self) -> dict[tuple[int, int, Hemisphere], CombinationResult]:
        return {c.key: c for c in self.combinations}

    def combination(self, i: int, j: int, hemisphere: Hemisphere) -> CombinationResult:
        """Evidence for (i, j, hemisphere); (j, i, hemisphere) gives the same."""
        key = (min(i, j), max(i, j), hemisphere)
        if key not in self._by_key:
            msg = f"No combination ({i},{j},{hemisphere.value}) for n={self.n}"
            raise AnalysisError(msg)
        return self._by_key[key]

    @property
    def failures(self) -> tuple[CombinationResult, ...]:
        return tuple(c for c in self.combinations if not c.passed)


def check_combination(
    system: ArcSystem,
    i: int,
    j: int,
    hemisphere: Hemisphere,
    components: Optional[Sequence[HemiComponent]] = None,
) -> CombinationResult:
    if components is None:
        components = hemi_components(system, hemisphere)
    family = separating_family(system, i, j, hemisphere, components)
    pairs = adjacency_pairs(family, components)
    naive = naive_adjacency_pairs(family)
    if not pairs <= naive:
        msg = f"Adjacency pairs {sorted(pairs)} exceed family pairs {sorted(naive)}"
        raise AnalysisError(msg)
    required = required_pairs(system.n)
    return CombinationResult(
        family=family,
        pairs=pairs,
        naive_pairs=naive,
        missing=tuple(p for p in required if p not in pairs),
        naive_missing=tuple(p for p in required if p not in naive),
    )


def check_well_mixed(system: ArcSystem) -> WellMixedReport:
    """Decide the well-mixed condition for every corridor pair and hemisphere.

    Raises:
        AnalysisError: If the system is not reduced
    """
    if not system.is_reduced:
        msg = "The well-mixed check needs a reduced arc system"
        raise AnalysisError(msg)

    results = []
    for hemisphere in Hemisphere:
        components = hemi_components(system, hemisphere)
        for i, j in itertools.combinations(range(1, system.n + 1), 2):
            results.append(check_combination(system, i, j, hemisphere, components))

    report = WellMixedReport(system.n, tuple(results))
    logger.debug(
        f"Well-mixed check: {sum(c.passed for c in results)}/{len(results)} "
        f"combinations pass"
    )
    return report
