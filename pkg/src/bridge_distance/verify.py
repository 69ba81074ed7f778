# SPDX-FileCopyrightText: 2025-present adamws <adamws@users.noreply.github.com>
#
# SPDX-License-Identifier: MIT
"""Second-pass validation of certificates and witnesses.

Every check here re-derives what it needs straight from the event order and the
arc node lists, without going through the routines that produced the evidence.
Enclosing chords are found by brute force and regions by breadth-first search.
"""

from __future__ import annotations

import logging
from collections import deque
from typing import TYPE_CHECKING, NoReturn, Optional

from bridge_distance.analysis import required_pairs
from bridge_distance.arc_system import Hemisphere
from bridge_distance.bounds import (
    MIN_CURVE_GRAPH_BRIDGE_NUMBER,
    CurveKind,
    Face,
    LowerReason,
)
from bridge_distance.plat import strand_permutation

if TYPE_CHECKING:
    from bridge_distance.analysis import SeparatingFamily, WellMixedReport
    from bridge_distance.arc_system import ArcSystem
    from bridge_distance.bounds import (
        ConnectivityCertificate,
        CurveWitness,
        DisjointPairWitness,
        DistanceBoundsReport,
        WellMixedCertificate,
    )
    from bridge_distance.plat import PlatPresentation

logger = logging.getLogger(__name__)


class VerificationError(Exception):
    """Exception raised when a certificate or witness fails re-validation."""


def _fail(message: str) -> NoReturn:
    raise VerificationError(message)


class _Geometry:
    """Chords of one hemisphere with their enclosing faces, found by brute force."""

    def __init__(self, system: ArcSystem, hemisphere: Hemisphere) -> None:
        self.system = system
        self.hemisphere = hemisphere
        self.size = len(system.events)
        self.chords: dict[tuple[int, int], tuple[int, int]] = {}
        for chord in system.chords:
            if chord.hemisphere is hemisphere:
                ends = sorted(system.position[e] for e in chord.ends)
                self.chords[(chord.owner, chord.index)] = (ends[0], ends[1])

    def encloses(self, key: tuple[int, int], stretch: int) -> bool:
        a, b = self.chords[key]
        return a <= stretch < b

    def face_of_stretch(self, stretch: int) -> Face:
        best: Optional[tuple[tuple[int, int], int]] = None
        for key, (a, b) in self.chords.items():
            if a <= stretch < b and (best is None or b - a < best[1]):
                best = (key, b - a)
        return Face(self.hemisphere, best[0] if best else None)

    def parent(self, key: tuple[int, int]) -> Face:
        a, b = self.chords[key]
        best: Optional[tuple[tuple[int, int], int]] = None
        for other, (c, d) in self.chords.items():
            if other != key and c < a and b < d and (best is None or d - c < best[1]):
                best = (other, d - c)
        return Face(self.hemisphere, best[0] if best else None)

    def corridor_stretches(self, corridor: int) -> range:
        start = self.system.puncture_position(2 * corridor)
        if corridor < self.system.n:
            return range(start, self.system.puncture_position(2 * corridor + 1))
        return range(start, self.size)

    def side(self, key: tuple[int, int], corridor: int) -> set[int]:
        """Positions strictly on the side of a chord holding ``corridor``."""
        a, b = self.chords[key]
        if self.encloses(key, self.corridor_stretches(corridor)[0]):
            return set(range(a + 1, b))
        return set(range(a)) | set(range(b + 1, self.size))


def _separates(geometry: _Geometry, key: tuple[int, int], i: int, j: int) -> bool:
    sides_i = {geometry.encloses(key, t) for t in geometry.corridor_stretches(i)}
    sides_j = {geometry.encloses(key, t) for t in geometry.corridor_stretches(j)}
    return len(sides_i) == 1 and len(sides_j) == 1 and sides_i != sides_j


def _ancestors(geometry: _Geometry, face: Face) -> set[Face]:
    chain = {face}
    while face.chord is not None:
        face = geometry.parent(face.chord)
        chain.add(face)
    return chain


def verify_separating_family(system: ArcSystem, family: SeparatingFamily) -> None:
    """Check membership, nesting and dual-tree separation of a family.

    In the dual tree of a hemisphere (faces joined across chords) a chord
    separates two corridors exactly when it lies on every tree path between
    their faces.

    Raises:
        VerificationError: If the family is not exactly the set of separating
            chords in nesting order
    """
    geometry = _Geometry(system, family.hemisphere)
    i, j = family.i, family.j
    claimed = [(m.owner, m.index) for m in family.members]
    expected = {key for key in geometry.chords if _separates(geometry, key, i, j)}
    if set(claimed) != expected or len(claimed) != len(expected):
        _fail(f"Family ({i},{j},{family.hemisphere.value}) members {claimed} differ")

    faces_i = {geometry.face_of_stretch(t) for t in geometry.corridor_stretches(i)}
    faces_j = {geometry.face_of_stretch(t) for t in geometry.corridor_stretches(j)}
    lineage = {face: _ancestors(geometry, face) for face in faces_i | faces_j}
    for key in claimed:
        below = Face(family.hemisphere, key)
        in_i = {below in lineage[face] for face in faces_i}
        in_j = {below in lineage[face] for face in faces_j}
        if len(in_i) != 1 or len(in_j) != 1 or in_i == in_j:
            _fail(f"Chord {key} is not on every dual path from d{i} to d{j}")

    for inner, outer in zip(claimed, claimed[1:]):
        if not set(geometry.chords[inner]) <= geometry.side(outer, i):
            _fail(f"Chord {inner} is not nested inside the d{i} side of {outer}")


def _band_is_empty(
    geometry: _Geometry, family: SeparatingFamily, inner: int, outer: int
) -> bool:
    """No chord end of the hemisphere strictly between two consecutive members."""
    first = family.members[inner]
    second = family.members[outer]
    key = (first.owner, first.index)
    band = geometry.side((second.owner, second.index), family.i)
    band -= geometry.side(key, family.i) | set(geometry.chords[key])
    ends = {p for chord in geometry.chords.values() for p in chord}
    return not (band & ends)


def verify_well_mixed_report(system: ArcSystem, report: WellMixedReport) -> None:
    """Re-check families, adjacency pairs and verdicts of a well-mixed report.

    Raises:
        VerificationError: If any claim of the report does not hold
    """
    geometries = {h: _Geometry(system, h) for h in Hemisphere}
    required = set(required_pairs(system.n))
    expected_combinations = len(required) * len(geometries)
    if len(report.combinations) != expected_combinations:
        _fail(
            f"Report has {len(report.combinations)} combinations, "
            f"expected {expected_combinations}"
        )

    for combination in report.combinations:
        family = combination.family
        verify_separating_family(system, family)
        geometry = geometries[family.hemisphere]
        realized = set()
        for index in range(len(family.members) - 1):
            a, b = family.members[index], family.members[index + 1]
            if _band_is_empty(geometry, family, index, index + 1):
                realized.add((min(a.owner, b.owner), max(a.owner, b.owner)))
        if realized != combination.pairs:
            _fail(
                f"Pairs of {combination.key} are {sorted(realized)}, report claims "
                f"{sorted(combination.pairs)}"
            )
        if set(combination.missing) != required - combination.pairs:
            _fail(f"Missing pairs of {combination.key} do not match its pairs")


def verify_well_mixed_certificate(
    system: ArcSystem, certificate: WellMixedCertificate
) -> None:
    """Raises VerificationError unless every distinct pair is adjacent everywhere."""
    if system.n < MIN_CURVE_GRAPH_BRIDGE_NUMBER:
        _fail(f"Well-mixed certificate issued for n={system.n}")
    verify_well_mixed_report(system, certificate.report)
    required = set(required_pairs(system.n))
    for combination in certificate.report.combinations:
        if not required <= combination.pairs:
            _fail(f"Combination {combination.key} lacks {required - combination.pairs}")


def verify_disjoint_pair(system: ArcSystem, witness: DisjointPairWitness) -> None:
    """Walk overpass r and check it never touches underpass s."""
    if system.n < MIN_CURVE_GRAPH_BRIDGE_NUMBER:
        _fail(f"Disjoint pair witness issued for n={system.n}")
    lo = system.puncture_position(2 * witness.s - 1)
    hi = system.puncture_position(2 * witness.s)
    for event in system.arc(witness.r).nodes:
        if lo <= system.position[event] <= hi:
            _fail(
                f"Overpass {witness.r} meets underpass {witness.s} at position "
                f"{system.position[event]}"
            )


def _face_adjacency(
    system: ArcSystem, geometries: dict[Hemisphere, _Geometry], r: int, s: int
) -> dict[Face, set[Face]]:
    """Faces adjacent across boundaries off overpass r and underpass s."""
    lo = system.puncture_position(2 * s - 1)
    hi = system.puncture_position(2 * s)
    adjacency: dict[Face, set[Face]] = {}

    def link(a: Face, b: Face) -> None:
        adjacency.setdefault(a, set()).add(b)
        adjacency.setdefault(b, set()).add(a)

    for t in range(len(system.events)):
        above = geometries[Hemisphere.UPPER].face_of_stretch(t)
        below = geometries[Hemisphere.LOWER].face_of_stretch(t)
        adjacency.setdefault(above, set())
        adjacency.setdefault(below, set())
        if not lo <= t < hi:
            link(above, below)
    for geometry in geometries.values():
        for key in geometry.chords:
            if key[0] != r:
                link(Face(geometry.hemisphere, key), geometry.parent(key))
    return adjacency


def verify_curve_witness(system: ArcSystem, witness: CurveWitness) -> None:
    """Check that a curve witness bounds a closed region with the stated punctures.

    Raises:
        VerificationError: If the region is not closed under crossing boundaries
            away from the two arcs, the puncture sides are wrong, or the curve
            is not essential
    """
    if system.n < MIN_CURVE_GRAPH_BRIDGE_NUMBER:
        _fail(f"Curve witness issued for n={system.n}")
    everything = set(system.axis.punctures)
    if set(witness.inside) | set(witness.outside) != everything or (
        set(witness.inside) & set(witness.outside)
    ):
        _fail("Curve witness sides do not partition the punctures")
    if not witness.essential:
        _fail(f"Curve witness for ({witness.r},{witness.s}) is not essential")

    arc = system.arc(witness.r)
    lo = system.puncture_position(2 * witness.s - 1)
    hi = system.puncture_position(2 * witness.s)
    ends = {system.axis.puncture_number(e) for e in arc.endpoints}

    if witness.kind is CurveKind.ARC_NEIGHBORHOOD:
        if any(lo <= system.position[e] <= hi for e in arc.nodes):
            _fail(f"Overpass {witness.r} meets underpass {witness.s}")
        if set(witness.inside) != ends:
            _fail("Arc neighborhood must enclose exactly the ends of its arc")
        return

    geometries = {h: _Geometry(system, h) for h in Hemisphere}
    adjacency = _face_adjacency(system, geometries, witness.r, witness.s)
    region = set(witness.region)
    if not region:
        _fail("Curve witness has an empty region")
    start = witness.region[0]
    reached = {start}
    queue = deque([start])
    while queue:
        for neighbor in adjacency.get(queue.popleft(), ()):
            if neighbor not in reached:
                reached.add(neighbor)
                queue.append(neighbor)
    if reached != region:
        _fail(f"Region of curve ({witness.r},{witness.s}) is not a closed region")

    on_graph = ends | set(system.axis.underpass(witness.s))
    upper = geometries[Hemisphere.UPPER]
    inside = {
        k
        for k in everything - on_graph
        if upper.face_of_stretch(system.puncture_position(k)) in region
    }
    if inside != set(witness.inside):
        _fail(
            f"Region of curve ({witness.r},{witness.s}) holds punctures "
            f"{sorted(inside)}, witness claims {list(witness.inside)}"
        )


def verify_connectivity(
    plat: PlatPresentation, certificate: ConnectivityCertificate
) -> None:
    """Follow the recorded trace through caps and strands."""
    down = strand_permutation(plat)
    up = {bottom: top for top, bottom in enumerate(down, start=1)}
    trace = certificate.trace
    if sorted(trace) != list(range(1, plat.strands + 1)):
        _fail("Connectivity trace does not visit every top endpoint once")
    for step in range(0, len(trace), 2):
        top, capped = trace[step], trace[step + 1]
        if {top, capped} != {2 * ((top + 1) // 2) - 1, 2 * ((top + 1) // 2)}:
            _fail(f"Trace joins {top} and {capped}, which share no cap")
        bottom = down[capped - 1]
        following = up[bottom + 1 if bottom % 2 else bottom - 1]
        if following != trace[(step + 2) % len(trace)]:
            _fail(f"Trace leaves {capped} but does not arrive at {following}")


def verify_bounds_report(system: ArcSystem, report: DistanceBoundsReport) -> None:
    """Re-validate every certificate and witness behind a bounds report.

    Raises:
        VerificationError: If a bound lacks its evidence or evidence fails
    """
    if report.connectivity is not None:
        verify_connectivity(report.plat, report.connectivity)
    if report.well_mixed_certificate is not None:
        verify_well_mixed_certificate(system, report.well_mixed_certificate)
    if report.pair_witness is not None:
        verify_disjoint_pair(system, report.pair_witness)
    if report.curve_witness is not None:
        verify_curve_witness(system, report.curve_witness)

    backing = {
        LowerReason.NONE: 0,
        LowerReason.CONNECTED_LINK: 1 if report.connectivity else None,
        LowerReason.WELL_MIXED: 2 if report.well_mixed_certificate else None,
    }
    if backing[report.lower_reason] != report.lower:
        _fail(f"Lower bound {report.lower} is not backed by its certificate")
    if report.upper is not None and report.upper_witness is None:
        _fail(f"Upper bound {report.upper} has no witness")
    if report.upper is not None and report.lower > report.upper:
        _fail(f"Lower bound {report.lower} exceeds upper bound {report.upper}")
    logger.debug(f"Verified bounds report of {report.plat}")
