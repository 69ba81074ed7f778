# SPDX-FileCopyrightText: 2025-present adamws <adamws@users.noreply.github.com>
#
# SPDX-License-Identifier: MIT
"""Certified bounds on the Hempel distance of a bridge decomposition.

Lower bounds come with certificates: a connected link gives distance at least
one and a well-mixed diagram with n >= 3 gives at least two. Upper bounds come
with witnesses: a disjoint pair of bridge disk boundaries gives at most one and
an essential curve missing one top and one bottom bridge arc gives at most two.
Only sufficient conditions are checked, so a missing certificate or witness
proves nothing.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Any, Optional, Union

from bridge_distance.analysis import check_well_mixed
from bridge_distance.arc_system import (
    Hemisphere,
    IntervalKind,
    build_diagram,
    diagram_stats,
)
from bridge_distance.plat import link_components

if TYPE_CHECKING:
    from bridge_distance.analysis import WellMixedReport
    from bridge_distance.arc_system import ArcSystem, DiagramStats
    from bridge_distance.plat import PlatPresentation

logger = logging.getLogger(__name__)

MIN_CURVE_GRAPH_BRIDGE_NUMBER = 3
ESSENTIAL_SIDE_PUNCTURES = 2


class BoundsError(Exception):
    """Exception raised for bound computations that cannot proceed."""


class InapplicableError(BoundsError):
    """The operation relies on the curve graph, which is not used for n = 2."""


class InconsistentBoundsError(BoundsError):
    """The certified lower bound exceeds a witnessed upper bound."""


class LowerReason(Enum):
    NONE = "none"
    CONNECTED_LINK = "connected-link"
    WELL_MIXED = "well-mixed"


class CurveKind(Enum):
    """How a distance-two curve was obtained."""

    FACE_BOUNDARY = "face-boundary"
    ARC_NEIGHBORHOOD = "arc-neighborhood"


@dataclass(frozen=True)
class ConnectivityCertificate:
    """The plat closes up into a single component traced by ``trace``."""

    trace: tuple[int, ...]

    def to_dict(self) -> dict[str, Any]:
        return {"trace": list(self.trace)}


@dataclass(frozen=True)
class WellMixedCertificate:
    """Full well-mixed evidence for a diagram with n >= 3."""

    report: WellMixedReport


@dataclass(frozen=True)
class CertificateResult:
    certificate: Optional[WellMixedCertificate]
    note: Optional[str] = None


@dataclass(frozen=True)
class DisjointPairWitness:
    """Overpass r and underpass s share no point of the diagram."""

    r: int
    s: int

    def to_dict(self) -> dict[str, Any]:
        return {"r": self.r, "s": self.s}


@dataclass(frozen=True)
class Face:
    """A region of one hemisphere cut out by the chords of that hemisphere.

    Every chord encloses exactly one face on its inner side (the side holding
    the events between its ends); ``chord`` is ``None`` for the outer face.
    """

    hemisphere: Hemisphere
    chord: Optional[tuple[int, int]] = None

    def __str__(self) -> str:
        if self.chord is None:
            return f"{self.hemisphere.value}outer"
        return f"{self.hemisphere.value}{self.chord[0]}.{self.chord[1]}"

    @classmethod
    def parse(cls, token: str) -> Face:
        hemisphere = Hemisphere.from_token(token[:1])
        rest = token[1:]
        if rest == "outer":
            return cls(hemisphere)
        try:
            owner, index = (int(part) for part in rest.split("."))
        except ValueError as e:
            msg = f"Invalid face token: '{token}'"
            raise BoundsError(msg) from e
        return cls(hemisphere, (owner, index))


@dataclass(frozen=True)
class CurveWitness:
    """A boundary component of a regular neighborhood of overpass r and underpass s.

    ``region`` lists the faces on the side of the curve away from the two arcs
    and ``inside`` the punctures in it; ``outside`` holds the remaining ones.
    For the arc-neighborhood kind the region is empty and ``inside`` holds the
    ends of overpass r.
    """

    r: int
    s: int
    kind: CurveKind
    region: tuple[Face, ...]
    inside: tuple[int, ...]
    outside: tuple[int, ...]

    @property
    def essential(self) -> bool:
        return (
            len(self.inside) >= ESSENTIAL_SIDE_PUNCTURES
            and len(self.outside) >= ESSENTIAL_SIDE_PUNCTURES
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "r": self.r,
            "s": self.s,
            "kind": self.kind.value,
            "region": [str(face) for face in self.region],
            "inside": list(self.inside),
            "outside": list(self.outside),
        }


@dataclass(frozen=True)
class PairEntry:
    """How overpass r meets underpass s."""

    r: int
    s: int
    crossings: int
    shared_endpoints: int

    @property
    def disjoint(self) -> bool:
        return self.crossings == 0 and self.shared_endpoints == 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "r": self.r,
            "s": self.s,
            "crossings": self.crossings,
            "shared_endpoints": self.shared_endpoints,
            "disjoint": self.disjoint,
        }


@dataclass(frozen=True)
class DistanceBoundsReport:
    """Bounds on the distance with the evidence behind each of them.

    ``upper`` is ``None`` when no witness was found. A lower bound of 0 means
    that no lower bound was established.
    """

    plat: PlatPresentation
    system: ArcSystem
    stats: DiagramStats
    well_mixed: WellMixedReport
    lower: int
    lower_reason: LowerReason
    upper: Optional[int]
    connectivity: Optional[ConnectivityCertificate] = None
    well_mixed_certificate: Optional[WellMixedCertificate] = None
    well_mixed_note: Optional[str] = None
    pair_witness: Optional[DisjointPairWitness] = None
    curve_witness: Optional[CurveWitness] = None
    pair_table: tuple[PairEntry, ...] = ()
    inapplicable: tuple[str, ...] = field(default=())

    @property
    def exact(self) -> bool:
        return self.upper is not None and self.lower == self.upper

    @property
    def upper_witness(self) -> Union[DisjointPairWitness, CurveWitness, None]:
        if self.upper == 1:
            return self.pair_witness
        if self.upper == 2:  # noqa: PLR2004
            return self.curve_witness
        return None


def _require_curve_graph(system: ArcSystem, operation: str) -> None:
    if system.n < MIN_CURVE_GRAPH_BRIDGE_NUMBER:
        msg = f"{operation} is inapplicable for n={system.n} (needs n >= 3)"
        raise InapplicableError(msg)


def certify_ge_one(plat: PlatPresentation) -> Optional[ConnectivityCertificate]:
    """Certificate for distance >= 1, present exactly when the plat is a knot."""
    components = link_components(plat)
    if not components.is_knot:
        return None
    return ConnectivityCertificate(components.cycles[0])


def certify_ge_two(
    plat: PlatPresentation, report: WellMixedReport
) -> CertificateResult:
    """Certificate for distance >= 2 from a globally passing well-mixed report."""
    if plat.bridge_number < MIN_CURVE_GRAPH_BRIDGE_NUMBER:
        note = (
            f"well-mixed certificate needs n >= 3, got n={plat.bridge_number}"
            + (" (the diagram is well-mixed)" if report.passed else "")
        )
        return CertificateResult(None, note)
    if not report.passed:
        return CertificateResult(None)
    return CertificateResult(WellMixedCertificate(report))


def pair_table(system: ArcSystem) -> tuple[PairEntry, ...]:
    """Crossings and shared endpoints of every overpass r with every underpass s."""
    entries = []
    for arc in system.arcs:
        on_underpass = [0] * (system.n + 1)
        for event in arc.crossings:
            interval = system.interval_of(event)
            if interval.kind is IntervalKind.UNDERPASS:
                on_underpass[interval.index] += 1
        ends = {system.axis.puncture_number(e) for e in arc.endpoints}
        for s in range(1, system.n + 1):
            shared = len(ends & set(system.axis.underpass(s)))
            entries.append(PairEntry(arc.label, s, on_underpass[s], shared))
    return tuple(entries)


def witness_le_one(system: ArcSystem) -> Optional[DisjointPairWitness]:
    """First (r, s) whose overpass and underpass are disjoint, including ends.

    Raises:
        InapplicableError: If n = 2
    """
    _require_curve_graph(system, "Disjoint pair witness")
    for entry in pair_table(system):
        if entry.disjoint:
            return DisjointPairWitness(entry.r, entry.s)
    return None


@dataclass(frozen=True)
class FaceMap:
    """Faces of both hemispheres.

    ``stretch_faces[h][t]`` is the face of hemisphere h touching the stretch of
    the axis between event positions t and t+1 (the last stretch wraps around).
    ``parents`` maps each chord face to the face enclosing it.
    """

    stretch_faces: dict[Hemisphere, tuple[Face, ...]]
    parents: dict[Face, Face]


def face_map(system: ArcSystem) -> FaceMap:
    size = len(system.events)
    stretch_faces = {}
    parents: dict[Face, Face] = {}
    for hemisphere in Hemisphere:
        opening: dict[int, Face] = {}
        closing: set[int] = set()
        for chord in system.chords:
            if chord.hemisphere is hemisphere:
                a, b = sorted(system.position[e] for e in chord.ends)
                opening[a] = Face(hemisphere, (chord.owner, chord.index))
                closing.add(b)

        stack = [Face(hemisphere)]
        faces = []
        # an event is the end of at most one chord per hemisphere
        for t in range(size):
            if t in closing:
                stack.pop()
            elif t in opening:
                parents[opening[t]] = stack[-1]
                stack.append(opening[t])
            faces.append(stack[-1])
        stretch_faces[hemisphere] = tuple(faces)
    return FaceMap(stretch_faces, parents)


class _UnionFind:
    def __init__(self) -> None:
        self.parent: dict[Face, Face] = {}

    def find(self, face: Face) -> Face:
        self.parent.setdefault(face, face)
        root = face
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[face] != root:
            self.parent[face], face = root, self.parent[face]
        return root

    def union(self, a: Face, b: Face) -> None:
        self.parent[self.find(a)] = self.find(b)


def _on_graph(system: ArcSystem, r: int, s: int) -> set[int]:
    """Punctures lying on overpass r or underpass s."""
    ends = {system.axis.puncture_number(e) for e in system.arc(r).endpoints}
    return ends | set(system.axis.underpass(s))


def neighborhood_regions(
    system: ArcSystem, faces: FaceMap, r: int, s: int
) -> list[tuple[tuple[Face, ...], tuple[int, ...]]]:
    """Complementary regions of overpass r together with underpass s.

    Each region comes with the punctures it contains; regions are listed in
    the order their first stretch appears along the axis. Assumes the two arcs
    meet, so every region is a disk bounded by one neighborhood curve.
    """
    lo = system.puncture_position(2 * s - 1)
    hi = system.puncture_position(2 * s)
    upper = faces.stretch_faces[Hemisphere.UPPER]
    lower = faces.stretch_faces[Hemisphere.LOWER]

    union_find = _UnionFind()
    for t in range(len(system.events)):
        union_find.find(upper[t])
        union_find.find(lower[t])
        if not lo <= t < hi:
            union_find.union(upper[t], lower[t])
    for face, parent in faces.parents.items():
        if face.chord is not None and face.chord[0] != r:
            union_find.union(face, parent)

    members: dict[Face, list[Face]] = {}
    seen: set[Face] = set()
    for face in itertools.chain(upper, lower, faces.parents):
        if face not in seen:
            seen.add(face)
            members.setdefault(union_find.find(face), []).append(face)

    punctures: dict[Face, list[int]] = {root: [] for root in members}
    on_graph = _on_graph(system, r, s)
    for k in system.axis.punctures:
        if k not in on_graph:
            # every face around a puncture off the graph belongs to one region
            punctures[union_find.find(upper[system.puncture_position(k)])].append(k)

    return [(tuple(group), tuple(punctures[root])) for root, group in members.items()]


def _curve_for_pair(
    system: ArcSystem, faces: FaceMap, entry: PairEntry
) -> Optional[CurveWitness]:
    everything = set(system.axis.punctures)
    if entry.disjoint:
        arc = system.arc(entry.r)
        inside = tuple(sorted(system.axis.puncture_number(e) for e in arc.endpoints))
        witness = CurveWitness(
            entry.r,
            entry.s,
            CurveKind.ARC_NEIGHBORHOOD,
            (),
            inside,
            tuple(sorted(everything - set(inside))),
        )
        return witness if witness.essential else None

    for region, inside in neighborhood_regions(system, faces, entry.r, entry.s):
        witness = CurveWitness(
            entry.r,
            entry.s,
            CurveKind.FACE_BOUNDARY,
            region,
            inside,
            tuple(sorted(everything - set(inside))),
        )
        if witness.essential:
            return witness
    return None


def witness_le_two(system: ArcSystem) -> Optional[CurveWitness]:
    """First essential neighborhood curve of a (top arc, bottom arc) pair.

    Pairs are scanned with r outermost. Such a curve misses both bridge disks,
    which puts their boundaries at distance at most two.

    Raises:
        InapplicableError: If n = 2
    """
    _require_curve_graph(system, "Curve witness")
    faces = face_map(system)
    for entry in pair_table(system):
        witness = _curve_for_pair(system, faces, entry)
        if witness is not None:
            return witness
    return None


def _check_consistency(report: DistanceBoundsReport) -> None:
    if report.well_mixed_certificate is not None and report.pair_witness is not None:
        msg = (
            f"{report.plat} is well-mixed but overpass {report.pair_witness.r} "
            f"misses underpass {report.pair_witness.s}"
        )
        raise InconsistentBoundsError(msg)
    if report.upper is not None and report.lower > report.upper:
        msg = (
            f"Lower bound {report.lower} ({report.lower_reason.value}) exceeds "
            f"upper bound {report.upper} for {report.plat}"
        )
        raise InconsistentBoundsError(msg)


def assemble_bounds(
    plat: PlatPresentation, system: Optional[ArcSystem] = None
) -> DistanceBoundsReport:
    """Run every certificate and witness and combine them into bounds.

    Args:
        plat: Plat presentation
        system: Reduced diagram of ``plat`` when already built

    Raises:
        InconsistentBoundsError: If the lower bound exceeds the upper bound
    """
    if system is None:
        system = build_diagram(plat)
    report = check_well_mixed(system)

    connectivity = certify_ge_one(plat)
    mixed = certify_ge_two(plat, report)

    inapplicable: tuple[str, ...] = ()
    pair_witness = None
    curve_witness = None
    if system.n < MIN_CURVE_GRAPH_BRIDGE_NUMBER:
        inapplicable = ("well-mixed", "disjoint-pair", "curve")
        logger.warning(
            f"n={system.n}: only the connectivity certificate applies, "
            "curve graph bounds are skipped"
        )
    else:
        pair_witness = witness_le_one(system)
        curve_witness = witness_le_two(system)

    lower, reason = 0, LowerReason.NONE
    if mixed.certificate is not None:
        lower, reason = 2, LowerReason.WELL_MIXED
    elif connectivity is not None:
        lower, reason = 1, LowerReason.CONNECTED_LINK

    upper = None
    if pair_witness is not None:
        upper = 1
    elif curve_witness is not None:
        upper = 2

    result = DistanceBoundsReport(
        plat=plat,
        system=system,
        stats=diagram_stats(system),
        well_mixed=report,
        lower=lower,
        lower_reason=reason,
        upper=upper,
        connectivity=connectivity,
        well_mixed_certificate=mixed.certificate,
        well_mixed_note=mixed.note,
        pair_witness=pair_witness,
        curve_witness=curve_witness,
        pair_table=pair_table(system),
        inapplicable=inapplicable,
    )
    _check_consistency(result)
    logger.info(
        f"{plat}: lower {lower} ({reason.value}), "
        f"upper {upper if upper is not None else 'unknown'}"
    )
    return result
