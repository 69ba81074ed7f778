# SPDX-FileCopyrightText: 2025-present adamws <adamws@users.noreply.github.com>
#
# SPDX-License-Identifier: MIT
"""Exact combinatorial bridge diagrams.

The axis ``l`` is a circle through the punctures q_1..q_2n, drawn as the x-axis
closed up at infinity. It splits the sphere into the upper hemisphere H+ and the
lower hemisphere H-. Underpass u_k is the stretch of ``l`` from q_(2k-1) to
q_(2k); corridor d_k is the stretch from q_(2k) to q_(2k+1), and d_n runs
through infinity back to q_1.

An arc system stores the circular order of events on ``l`` (punctures and the
points where overpass arcs cross ``l``) together with the node sequence of every
overpass arc. Consecutive nodes of an arc are joined by a chord lying in one
hemisphere, and hemispheres alternate along each arc, so an arc is fully
described by its nodes and the hemisphere of its first chord.

Event ids are integers. Puncture q_k has id ``k - 1``; crossing points get fresh
ids from ``2n`` upwards. Ids carry no geometric meaning beyond identity.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import TYPE_CHECKING, Any, Optional

if TYPE_CHECKING:
    from collections.abc import Iterator

    from bridge_distance.plat import PlatPresentation

logger = logging.getLogger(__name__)

MIN_BRIDGE_NUMBER = 2


class ArcSystemError(Exception):
    """Exception raised for invalid arc systems or operations on them."""


class Hemisphere(Enum):
    """One of the two disks bounded by the axis circle."""

    UPPER = "+"
    LOWER = "-"

    @property
    def opposite(self) -> Hemisphere:
        return Hemisphere.LOWER if self is Hemisphere.UPPER else Hemisphere.UPPER

    @property
    def sign(self) -> int:
        return 1 if self is Hemisphere.UPPER else -1

    @classmethod
    def from_token(cls, token: str) -> Hemisphere:
        """Parse ``+``/``-`` (also ``upper``/``lower``) into a hemisphere."""
        normalized = token.strip().lower()
        if normalized in ("+", "upper", "h+"):
            return cls.UPPER
        if normalized in ("-", "lower", "h-"):
            return cls.LOWER
        msg = f"Invalid hemisphere: '{token}'. Expected '+' or '-'"
        raise ArcSystemError(msg)


class IntervalKind(Enum):
    UNDERPASS = "u"
    CORRIDOR = "d"


@dataclass(frozen=True, order=True)
class Interval:
    """An underpass interval u_k or a corridor d_k of the axis."""

    kind: IntervalKind
    index: int

    def __str__(self) -> str:
        return f"{self.kind.value}{self.index}"

    @classmethod
    def from_gap(cls, gap: int) -> Interval:
        """Interval containing gap ``gap``, the stretch between q_gap and q_(gap+1)."""
        if gap % 2:
            return cls(IntervalKind.UNDERPASS, (gap + 1) // 2)
        return cls(IntervalKind.CORRIDOR, gap // 2)


@dataclass(frozen=True)
class Axis:
    """The axis circle with its 2n punctures."""

    n: int

    def __post_init__(self) -> None:
        if self.n < MIN_BRIDGE_NUMBER:
            msg = f"Bridge number must be at least {MIN_BRIDGE_NUMBER}, got {self.n}"
            raise ArcSystemError(msg)

    @property
    def puncture_count(self) -> int:
        return 2 * self.n

    @property
    def max_generator(self) -> int:
        return 2 * self.n - 1

    @property
    def punctures(self) -> range:
        """Puncture numbers 1..2n in circular order."""
        return range(1, 2 * self.n + 1)

    @property
    def underpass_intervals(self) -> tuple[tuple[int, int], ...]:
        return tuple(self.underpass(k) for k in range(1, self.n + 1))

    @property
    def corridors(self) -> tuple[tuple[int, int], ...]:
        return tuple(self.corridor(k) for k in range(1, self.n + 1))

    def underpass(self, k: int) -> tuple[int, int]:
        """Puncture numbers bounding u_k."""
        return (2 * k - 1, 2 * k)

    def corridor(self, k: int) -> tuple[int, int]:
        """Puncture numbers bounding d_k."""
        return (2 * k, 2 * k + 1 if k < self.n else 1)

    def is_puncture(self, event: int) -> bool:
        return event < 2 * self.n

    def puncture_number(self, event: int) -> int:
        return event + 1


@dataclass(frozen=True)
class Chord:
    """A component of an overpass arc inside one hemisphere."""

    owner: int
    index: int
    hemisphere: Hemisphere
    start: int
    end: int

    @property
    def ends(self) -> tuple[int, int]:
        return (self.start, self.end)


@dataclass(frozen=True)
class Arc:
    """Overpass arc ``label``: its nodes and the hemisphere of its first chord."""

    label: int
    nodes: tuple[int, ...]
    first: Hemisphere

    @property
    def endpoints(self) -> tuple[int, int]:
        return (self.nodes[0], self.nodes[-1])

    @property
    def crossings(self) -> tuple[int, ...]:
        return self.nodes[1:-1]

    @property
    def last(self) -> Hemisphere:
        """Hemisphere of the final chord."""
        return self.first if len(self.nodes) % 2 == 0 else self.first.opposite

    def chords(self) -> Iterator[Chord]:
        hemisphere = self.first
        for index, (start, end) in enumerate(zip(self.nodes, self.nodes[1:])):
            yield Chord(self.label, index, hemisphere, start, end)
            hemisphere = hemisphere.opposite

    def reverse_direction(self) -> Arc:
        return Arc(self.label, self.nodes[::-1], self.last)


@dataclass(frozen=True)
class ReducedTag:
    """Marks an arc system in minimal position with respect to the axis.

    Counts describe the reduction that produced it.
    """

    bigons: int = 0
    half_bigons: int = 0
    flipped: int = 0

    @property
    def splices(self) -> int:
        return self.bigons + self.half_bigons


@dataclass(frozen=True)
class ArcSystem:
    """Overpass arcs drawn against the axis circle."""

    axis: Axis
    events: tuple[int, ...]
    arcs: tuple[Arc, ...]
    tag: Optional[ReducedTag] = None

    @property
    def n(self) -> int:
        return self.axis.n

    @property
    def is_reduced(self) -> bool:
        return self.tag is not None

    @cached_property
    def position(self) -> dict[int, int]:
        return {event: index for index, event in enumerate(self.events)}

    @cached_property
    def owner(self) -> dict[int, int]:
        """Arc label of every event (punctures belong to the arc ending there)."""
        return {event: arc.label for arc in self.arcs for event in arc.nodes}

    @cached_property
    def chords(self) -> tuple[Chord, ...]:
        return tuple(chord for arc in self.arcs for chord in arc.chords())

    @cached_property
    def gap(self) -> dict[int, int]:
        """Gap number of every crossing event.

        Gap ``k`` is the stretch between q_k and q_(k+1); gap 2n wraps to q_1.
        """
        gaps = {}
        current = 0
        for event in self.events:
            if self.axis.is_puncture(event):
                current = event + 1
            else:
                gaps[event] = current
        return gaps

    @property
    def crossing_count(self) -> int:
        return len(self.events) - self.axis.puncture_count

    @property
    def next_event_id(self) -> int:
        return max(max(self.events) + 1, self.axis.puncture_count)

    def arc(self, label: int) -> Arc:
        return self.arcs[label - 1]

    def interval_of(self, event: int) -> Interval:
        """Interval of the axis containing crossing ``event``."""
        return Interval.from_gap(self.gap[event])

    def puncture_position(self, number: int) -> int:
        """Position of puncture q_number in the event order."""
        return self.position[number - 1]

    def validate(self) -> None:
        """Check every structural invariant of the system.

        Raises:
            ArcSystemError: If an invariant is violated
        """
        puncture_count = self.axis.puncture_count
        if len(set(self.events)) != len(self.events):
            msg = "Event order contains duplicates"
            raise ArcSystemError(msg)
        punctures = [e for e in self.events if self.axis.is_puncture(e)]
        if punctures != list(range(puncture_count)):
            msg = f"Punctures out of order on the axis: {punctures}"
            raise ArcSystemError(msg)

        if [arc.label for arc in self.arcs] != list(range(1, self.n + 1)):
            msg = f"Expected arcs labelled 1..{self.n}"
            raise ArcSystemError(msg)

        used: list[int] = []
        for arc in self.arcs:
            if len(arc.nodes) < 2:  # noqa: PLR2004
                msg = f"Arc {arc.label} has fewer than two nodes"
                raise ArcSystemError(msg)
            if not all(self.axis.is_puncture(e) for e in arc.endpoints):
                msg = f"Arc {arc.label} does not end at punctures"
                raise ArcSystemError(msg)
            if any(self.axis.is_puncture(e) for e in arc.crossings):
                msg = f"Arc {arc.label} passes through a puncture"
                raise ArcSystemError(msg)
            used.extend(arc.nodes)
        if sorted(used) != sorted(self.events):
            msg = "Arc nodes and axis events do not match one to one"
            raise ArcSystemError(msg)

        for hemisphere in Hemisphere:
            self._check_planar(hemisphere)

    def _check_planar(self, hemisphere: Hemisphere) -> None:
        """Chords of one hemisphere must nest like parentheses."""
        closing: dict[int, int] = {}
        for chord in self.chords:
            if chord.hemisphere is not hemisphere:
                continue
            a, b = sorted(self.position[e] for e in chord.ends)
            if a in closing or b in closing:
                msg = f"Two {hemisphere.value} chords share an endpoint at {a} or {b}"
                raise ArcSystemError(msg)
            closing[a] = b
            closing[b] = -1

        stack: list[int] = []
        for index in range(len(self.events)):
            partner = closing.get(index)
            if partner is None:
                continue
            if partner >= 0:
                stack.append(partner)
            elif not stack or stack.pop() != index:
                msg = f"Chords in hemisphere {hemisphere.value} interleave at {index}"
                raise ArcSystemError(msg)


@dataclass(frozen=True)
class IntersectionCounts:
    """Crossing points per underpass interval and per corridor."""

    underpasses: tuple[int, ...]
    corridors: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.underpasses) + sum(self.corridors)

    def to_dict(self) -> dict[str, Any]:
        return {
            "underpasses": list(self.underpasses),
            "corridors": list(self.corridors),
            "total": self.total,
        }


@dataclass(frozen=True)
class DiagramStats:
    """Size figures of a reduced diagram, used in reports."""

    events: int
    crossings: int
    upper_chords: int
    lower_chords: int
    arc_crossings: tuple[int, ...]
    splices: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "events": self.events,
            "crossings": self.crossings,
            "upper_chords": self.upper_chords,
            "lower_chords": self.lower_chords,
            "arc_crossings": list(self.arc_crossings),
            "splices": self.splices,
        }


def standard_top_system(n: int) -> ArcSystem:
    """Arc r is a single H+ chord from q_(2r-1) to q_(2r)."""
    axis = Axis(n)
    arcs = tuple(
        Arc(r, (2 * r - 2, 2 * r - 1), Hemisphere.UPPER) for r in range(1, n + 1)
    )
    return ArcSystem(axis, tuple(range(2 * n)), arcs, ReducedTag())


def apply_generator(system: ArcSystem, generator: int) -> ArcSystem:
    """Apply the half twist of q_k and q_(k+1), k = |generator|.

    A positive generator turns the twisted pair counter-clockwise, so q_k passes
    below q_(k+1). The twist is supported in a thin disk around the stretch E of
    the axis between the two punctures. Inside it E is turned by half a turn;
    each chord leaving E spirals once through the collar and crosses the axis
    there. For a counter-clockwise twist H+ chords cross on the left collar and
    H- chords on the right one, in the left-to-right order of their ends in E.
    The result is generally not reduced.

    Raises:
        ArcSystemError: If the generator index is out of range
    """
    axis = system.axis
    k = abs(generator)
    if generator == 0 or k > axis.max_generator:
        msg = (
            f"Generator {generator} out of range for n={axis.n} "
            f"(expected 1 <= |g| <= {axis.max_generator})"
        )
        raise ArcSystemError(msg)

    lo, hi = system.position[k - 1], system.position[k]
    segment = system.events[lo : hi + 1]
    inside = set(segment)

    stubs = set()
    for chord in system.chords:
        for end in chord.ends:
            if end in inside:
                stubs.add((end, chord.hemisphere))

    left_hemisphere = Hemisphere.UPPER if generator > 0 else Hemisphere.LOWER
    fresh = itertools.count(system.next_event_id)
    detour: dict[tuple[int, Hemisphere], int] = {}
    left: list[int] = []
    right: list[int] = []
    for event in segment:
        for hemisphere, collar in (
            (left_hemisphere, left),
            (left_hemisphere.opposite, right),
        ):
            if (event, hemisphere) in stubs:
                detour[(event, hemisphere)] = next(fresh)
                collar.append(detour[(event, hemisphere)])

    # Punctures keep their positions; the arc ends travelling with them swap.
    swap = {k - 1: k, k: k - 1}
    middle = tuple(swap.get(event, event) for event in reversed(segment))
    events = (
        *system.events[:lo],
        *left,
        *middle,
        *right,
        *system.events[hi + 1 :],
    )
    start = events.index(0)
    events = events[start:] + events[:start]

    arcs = []
    for arc in system.arcs:
        nodes = [arc.nodes[0]]
        for chord in arc.chords():
            if chord.start in inside:
                nodes.append(detour[(chord.start, chord.hemisphere)])
            if chord.end in inside:
                nodes.append(detour[(chord.end, chord.hemisphere)])
            nodes.append(chord.end)
        first = arc.first.opposite if arc.nodes[0] in inside else arc.first
        arcs.append(Arc(arc.label, tuple(swap.get(e, e) for e in nodes), first))

    result = ArcSystem(axis, events, tuple(arcs))
    result.validate()
    return result


class _Reduction:
    """Mutable linked-list view of an arc system used while removing bigons."""

    def __init__(self, system: ArcSystem) -> None:
        self.system = system
        self.axis = system.axis
        events = system.events
        self.next = {e: events[(i + 1) % len(events)] for i, e in enumerate(events)}
        self.prev = {e: events[i - 1] for i, e in enumerate(events)}
        self.arc_next: dict[int, Optional[int]] = {}
        self.arc_prev: dict[int, Optional[int]] = {}
        self.hemisphere: dict[int, Hemisphere] = {}
        for arc in system.arcs:
            self.arc_prev[arc.nodes[0]] = None
            self.arc_next[arc.nodes[-1]] = None
            for chord in arc.chords():
                self.arc_next[chord.start] = chord.end
                self.arc_prev[chord.end] = chord.start
                self.hemisphere[chord.start] = chord.hemisphere
        self.removed: set[int] = set()
        self.bigons = 0
        self.half_bigons = 0

    @staticmethod
    def linked(node: Optional[int]) -> int:
        if node is None:  # crossing points always sit inside an arc
            msg = "Internal error: crossing point at the end of an arc"
            raise ArcSystemError(msg)
        return node

    def adjacent(self, a: int, b: int) -> bool:
        return self.next[a] == b or self.next[b] == a

    def unlink(self, event: int) -> tuple[int, int]:
        before, after = self.prev[event], self.next[event]
        self.next[before] = after
        self.prev[after] = before
        self.removed.add(event)
        return before, after

    def try_chord(self, a: int) -> list[int]:
        """Remove the bigon cut off by the chord leaving ``a``, if any.

        Returns the events whose chords need another look, empty when nothing
        was removed.
        """
        b = self.arc_next.get(a)
        if b is None or not self.adjacent(a, b):
            return []
        a_puncture, b_puncture = self.axis.is_puncture(a), self.axis.is_puncture(b)
        if a_puncture and b_puncture:
            return []

        if not a_puncture and not b_puncture:
            before = self.linked(self.arc_prev[a])
            after = self.linked(self.arc_next[b])
            self.arc_next[before] = after
            self.arc_prev[after] = before
            self.unlink(a)
            left, right = self.unlink(b)
            self.bigons += 1
            return [before, after, left, right]

        if a_puncture:
            # swing the start of the arc around its puncture
            after = self.linked(self.arc_next[b])
            self.arc_next[a] = after
            self.arc_prev[after] = a
            self.hemisphere[a] = self.hemisphere[b]
            left, right = self.unlink(b)
            self.half_bigons += 1
            return [a, after, left, right]

        before = self.linked(self.arc_prev[a])
        self.arc_next[before] = b
        self.arc_prev[b] = before
        left, right = self.unlink(a)
        self.half_bigons += 1
        return [before, b, left, right]

    def run(self) -> None:
        pending = list(reversed(self.system.events))
        while pending:
            event = pending.pop()
            if event in self.removed:
                continue
            touched = self.try_chord(event)
            if not touched:
                before = self.arc_prev.get(event)
                if before is not None:
                    touched = self.try_chord(before)
            if touched:
                pending.extend(e for e in reversed(touched) if e not in self.removed)

    def result(self) -> ArcSystem:
        events = [0]
        while self.next[events[-1]] != 0:
            events.append(self.next[events[-1]])

        arcs = []
        flipped = 0
        for arc in self.system.arcs:
            nodes = [arc.nodes[0]]
            while (following := self.arc_next[nodes[-1]]) is not None:
                nodes.append(following)
            first = self.hemisphere[nodes[0]]
            if (
                len(nodes) == 2  # noqa: PLR2004
                and first is Hemisphere.LOWER
                and self.adjacent(nodes[0], nodes[1])
            ):
                # a lone chord between neighbouring punctures is isotopic to its
                # mirror image
                first = Hemisphere.UPPER
                flipped += 1
            arcs.append(Arc(arc.label, tuple(nodes), first))

        tag = ReducedTag(self.bigons, self.half_bigons, flipped)
        return ArcSystem(self.system.axis, tuple(events), tuple(arcs), tag)


def reduce(system: ArcSystem) -> ArcSystem:
    """Isotope the overpass arcs into minimal position with respect to the axis.

    Removes innermost bigons (a chord whose two crossing ends are neighbours on
    the axis) and half-bigons (a chord from a puncture to a neighbouring
    crossing) until none is left. Every removal deletes at least one crossing
    point. The returned system carries a ReducedTag.
    """
    reduction = _Reduction(system)
    reduction.run()
    result = reduction.result()
    result.validate()
    if result.tag is not None and result.tag.splices:
        logger.debug(
            f"Reduced {system.crossing_count} -> {result.crossing_count} crossings "
            f"({result.tag.bigons} bigons, {result.tag.half_bigons} half-bigons)"
        )
    return result


def find_removable_bigon(system: ArcSystem) -> Optional[Chord]:
    """Return the first chord that still bounds a removable (half-)bigon.

    Direct scan used to confirm the ReducedTag invariant; reduced systems
    return ``None``.
    """
    is_puncture = system.axis.is_puncture
    size = len(system.events)
    for chord in system.chords:
        a, b = (system.position[e] for e in chord.ends)
        if (a - b) % size not in (1, size - 1):
            continue
        if not (is_puncture(chord.start) and is_puncture(chord.end)):
            return chord
    return None


def build_diagram(plat: PlatPresentation) -> ArcSystem:
    """Reduced bridge diagram of a plat.

    Starts from the standard top system and applies the word from the top down,
    reducing after every letter.
    """
    system = standard_top_system(plat.bridge_number)
    for step, generator in enumerate(plat.word, start=1):
        system = reduce(apply_generator(system, generator))
        logger.debug(
            f"Step {step}/{len(plat.word)} ({generator:+d}): "
            f"{system.crossing_count} crossings"
        )
    return system


def intersection_counts(system: ArcSystem) -> IntersectionCounts:
    """Count crossing points per underpass interval and per corridor."""
    underpasses = [0] * system.n
    corridors = [0] * system.n
    for event in system.gap:
        interval = system.interval_of(event)
        if interval.kind is IntervalKind.UNDERPASS:
            underpasses[interval.index - 1] += 1
        else:
            corridors[interval.index - 1] += 1
    return IntersectionCounts(tuple(underpasses), tuple(corridors))


def interval_word(system: ArcSystem, label: int) -> tuple[Interval, ...]:
    """Intervals crossed by arc ``label``, from its first node."""
    return tuple(system.interval_of(event) for event in system.arc(label).crossings)


def _oriented(arc: Arc) -> Arc:
    """Orient an arc from its lower-numbered puncture."""
    return arc.reverse_direction() if arc.nodes[0] > arc.nodes[-1] else arc


def canonical_form(system: ArcSystem) -> str:
    """Serialize a reduced system so that equal embedded systems compare equal.

    Crossing points are named ``<arc>.<i>`` after their position along the arc,
    counted from the arc's lower-numbered puncture. The string lists n, the
    event order from q_1 and, per arc, its end punctures with the hemisphere of
    its first chord.

    Raises:
        ArcSystemError: If the system is not reduced
    """
    if not system.is_reduced:
        msg = "Canonical form is only defined for reduced arc systems"
        raise ArcSystemError(msg)

    names: dict[int, str] = {}
    arc_tokens = []
    for arc in map(_oriented, system.arcs):
        for index, event in enumerate(arc.crossings, start=1):
            names[event] = f"{arc.label}.{index}"
        a, b = (system.axis.puncture_number(e) for e in arc.endpoints)
        arc_tokens.append(f"{arc.label}:q{a}-q{b}{arc.first.value}")

    event_tokens = [
        f"q{system.axis.puncture_number(e)}" if system.axis.is_puncture(e) else names[e]
        for e in system.events
    ]
    return f"n={system.n}|{' '.join(event_tokens)}|{' '.join(arc_tokens)}"


def diagram_stats(system: ArcSystem) -> DiagramStats:
    upper = sum(1 for c in system.chords if c.hemisphere is Hemisphere.UPPER)
    return DiagramStats(
        events=len(system.events),
        crossings=system.crossing_count,
        upper_chords=upper,
        lower_chords=len(system.chords) - upper,
        arc_crossings=tuple(len(arc.crossings) for arc in system.arcs),
        splices=system.tag.splices if system.tag is not None else 0,
    )
