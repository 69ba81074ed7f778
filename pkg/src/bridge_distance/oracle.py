# SPDX-FileCopyrightText: 2025-present adamws <adamws@users.noreply.github.com>
#
# SPDX-License-Identifier: MIT
"""Slow coordinate model of plat diagrams, used to cross-check the arc engine.

Overpass arcs are polylines with exact rational vertices in the plane and the
punctures sit at (k, 0) for k = 1..2n. Each half twist is applied as an explicit
piecewise-linear homeomorphism:

* inside the square of half-width 3/4 around the midpoint of the twisted pair
  the plane is turned by half a turn;
* two triangulated square annuli (out to half-widths 1 and 5/4) interpolate
  between that half turn and the identity, turning their corner rings by a
  quarter step each;
* outside the largest square nothing moves.

Crossings with the axis are read off the final polylines, then bigons and
half-bigons are cancelled on each arc's sequence of crossed gaps.

Nothing here is shared with ``bridge_distance.arc_system``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Any, Optional

if TYPE_CHECKING:
    from bridge_distance.plat import PlatPresentation

logger = logging.getLogger(__name__)

Point = tuple[Fraction, Fraction]

DEFAULT_MAX_VERTICES = 250_000

INNER_HALF_WIDTH = Fraction(3, 4)
MIDDLE_HALF_WIDTH = Fraction(1)
OUTER_HALF_WIDTH = Fraction(5, 4)
CORNERS = 4


class OracleError(Exception):
    """Exception raised when the coordinate model breaks down."""


class OracleResourceError(OracleError):
    """Exception raised when polylines grow past the vertex cap."""


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _square(center: Fraction, half_width: Fraction) -> list[Point]:
    """Corners counter-clockwise from the upper right one."""
    h = half_width
    return [
        (center + h, h),
        (center - h, h),
        (center - h, -h),
        (center + h, -h),
    ]


@dataclass(frozen=True)
class _Triangle:
    corners: tuple[Point, Point, Point]
    images: tuple[Point, Point, Point]

    def barycentric(self, p: Point) -> Optional[tuple[Fraction, Fraction, Fraction]]:
        a, b, c = self.corners
        area = _cross(a, b, c)
        wa = _cross(p, b, c) / area
        wb = _cross(a, p, c) / area
        wc = 1 - wa - wb
        if wa < 0 or wb < 0 or wc < 0:
            return None
        return wa, wb, wc

    def apply(self, weights: tuple[Fraction, Fraction, Fraction]) -> Point:
        x = sum((w * q[0] for w, q in zip(weights, self.images)), Fraction(0))
        y = sum((w * q[1] for w, q in zip(weights, self.images)), Fraction(0))
        return (x, y)


class HalfTwist:
    """Piecewise-linear half twist of punctures k and k+1."""

    def __init__(self, generator: int) -> None:
        self.generator = generator
        self.center = Fraction(abs(generator)) + Fraction(1, 2)
        step = 1 if generator > 0 else -1

        outer = _square(self.center, OUTER_HALF_WIDTH)
        middle = _square(self.center, MIDDLE_HALF_WIDTH)
        inner = _square(self.center, INNER_HALF_WIDTH)
        self.triangles = [
            *self._layer(outer, 0, middle, step),
            *self._layer(middle, step, inner, 2 * step),
        ]

    @staticmethod
    def _layer(
        outer: list[Point], outer_shift: int, inner: list[Point], inner_shift: int
    ) -> list[_Triangle]:
        """Triangulate the annulus between two squares.

        Corner i of each ring goes to corner i + shift of the same ring. The
        diagonals are chosen so that the images tile the annulus again.
        """
        rings = {"o": (outer, outer_shift), "i": (inner, inner_shift)}
        if inner_shift > outer_shift:
            shapes = ((("o", 0), ("o", 1), ("i", 0)), (("i", 0), ("o", 1), ("i", 1)))
        else:
            shapes = ((("o", 0), ("o", 1), ("i", 1)), (("i", 0), ("o", 0), ("i", 1)))

        triangles = []
        for i in range(CORNERS):
            for shape in shapes:
                corners = []
                images = []
                for ring, offset in shape:
                    square, shift = rings[ring]
                    corners.append(square[(i + offset) % CORNERS])
                    images.append(square[(i + offset + shift) % CORNERS])
                triangles.append(
                    _Triangle(
                        (corners[0], corners[1], corners[2]),
                        (images[0], images[1], images[2]),
                    )
                )
        return triangles

    def _in_square(self, p: Point, half_width: Fraction) -> bool:
        return abs(p[0] - self.center) <= half_width and abs(p[1]) <= half_width

    def touches(self, p: Point, q: Point) -> bool:
        """Whether the bounding box of segment p->q meets the support of the twist."""
        reach = OUTER_HALF_WIDTH
        return not (
            max(p[0], q[0]) < self.center - reach
            or min(p[0], q[0]) > self.center + reach
            or max(p[1], q[1]) < -reach
            or min(p[1], q[1]) > reach
        )

    def cut_edges(self) -> list[tuple[Point, Point]]:
        edges = set()
        for triangle in self.triangles:
            a, b, c = triangle.corners
            for edge in ((a, b), (b, c), (c, a)):
                edges.add(tuple(sorted(edge)))
        return sorted(edges)  # type: ignore[arg-type]

    def image(self, p: Point) -> Point:
        if self._in_square(p, INNER_HALF_WIDTH):
            return (2 * self.center - p[0], -p[1])
        if not self._in_square(p, OUTER_HALF_WIDTH):
            return p
        for triangle in self.triangles:
            weights = triangle.barycentric(p)
            if weights is not None:
                return triangle.apply(weights)
        msg = f"Point {p} is not covered by the twist triangulation"
        raise OracleError(msg)


def _split_parameters(p: Point, q: Point, edge: tuple[Point, Point]) -> list[Fraction]:
    """Parameters t in (0, 1) where segment p->q meets ``edge``."""
    a, b = edge
    d = (q[0] - p[0], q[1] - p[1])
    e = (b[0] - a[0], b[1] - a[1])
    denominator = d[0] * e[1] - d[1] * e[0]
    ap = (a[0] - p[0], a[1] - p[1])
    if denominator != 0:
        t = (ap[0] * e[1] - ap[1] * e[0]) / denominator
        u = (ap[0] * d[1] - ap[1] * d[0]) / denominator
        if 0 < t < 1 and 0 <= u <= 1:
            return [t]
        return []
    if ap[0] * d[1] - ap[1] * d[0] != 0:
        return []
    # collinear: split at the edge ends lying inside the segment
    length = d[0] * d[0] + d[1] * d[1]
    found = []
    for end in (a, b):
        t = ((end[0] - p[0]) * d[0] + (end[1] - p[1]) * d[1]) / length
        if 0 < t < 1:
            found.append(t)
    return found


def _simplify(points: list[Point]) -> list[Point]:
    """Drop repeated points and vertices in the middle of straight runs."""
    result: list[Point] = []
    for point in points:
        if result and result[-1] == point:
            continue
        if len(result) > 1 and _cross(result[-2], result[-1], point) == 0:
            a, b = result[-2], result[-1]
            forward = (b[0] - a[0]) * (point[0] - b[0])
            forward += (b[1] - a[1]) * (point[1] - b[1])
            # keep turning points of back-and-forth runs
            if forward > 0:
                result[-1] = point
                continue
        result.append(point)
    return result


@dataclass(frozen=True)
class PLArcSystem:
    """Overpass arcs as exact polylines from their first to their last puncture."""

    bridge_number: int
    polylines: tuple[tuple[Point, ...], ...]

    @classmethod
    def standard(cls, bridge_number: int) -> PLArcSystem:
        """Arc r is a tent over the segment from 2r-1 to 2r."""
        half = Fraction(1, 2)
        polylines = tuple(
            (
                (Fraction(2 * r - 1), Fraction(0)),
                (Fraction(2 * r) - half, half),
                (Fraction(2 * r), Fraction(0)),
            )
            for r in range(1, bridge_number + 1)
        )
        return cls(bridge_number, polylines)

    @property
    def vertex_count(self) -> int:
        return sum(len(polyline) for polyline in self.polylines)

    def twisted(self, generator: int) -> PLArcSystem:
        twist = HalfTwist(generator)
        edges = twist.cut_edges()
        polylines = []
        for polyline in self.polylines:
            points = [polyline[0]]
            for p, q in zip(polyline, polyline[1:]):
                cuts: list[Fraction] = []
                if twist.touches(p, q):
                    cuts = sorted(
                        {t for edge in edges for t in _split_parameters(p, q, edge)}
                    )
                points.extend(
                    (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])) for t in cuts
                )
                points.append(q)
            polylines.append(tuple(_simplify([twist.image(v) for v in points])))
        return PLArcSystem(self.bridge_number, tuple(polylines))

    def check_general_position(self) -> None:
        """Only arc ends may touch punctures.

        Raises:
            OracleError: If an interior vertex sits on a puncture
        """
        punctures = {
            (Fraction(k), Fraction(0)) for k in range(1, 2 * self.bridge_number + 1)
        }
        for polyline in self.polylines:
            if punctures.intersection(polyline[1:-1]):
                msg = "Polyline passes through a puncture"
                raise OracleError(msg)


def _axis_crossings(polyline: tuple[Point, ...]) -> list[Fraction]:
    """x-coordinates where the polyline passes to the other side of the axis."""
    crossings = []
    previous: Optional[Point] = None
    touch: Optional[Fraction] = None
    for vertex in polyline[1:-1]:
        if vertex[1] == 0:
            if touch is None:
                touch = vertex[0]
            continue
        if previous is not None and (vertex[1] > 0) != (previous[1] > 0):
            if touch is None:
                # the segment previous->vertex cuts the axis
                t = previous[1] / (previous[1] - vertex[1])
                touch = previous[0] + t * (vertex[0] - previous[0])
            crossings.append(touch)
        previous = vertex
        touch = None
    return crossings


def _gap_of(x: Fraction, puncture_count: int) -> int:
    """Gap k lies between punctures k and k+1; gap 2n contains infinity."""
    if x < 1 or x > puncture_count:
        return puncture_count
    return int(x)


def _reduce_word(
    word: list[int], start: int, end: int, puncture_count: int
) -> list[int]:
    """Cancel bigons and half-bigons on a sequence of crossed gaps."""
    stack: list[int] = []
    for gap in word:
        if stack and stack[-1] == gap:
            stack.pop()
        else:
            stack.append(gap)

    def beside(puncture: int) -> set[int]:
        return {puncture - 1 if puncture > 1 else puncture_count, puncture}

    changed = True
    while changed and stack:
        changed = False
        if stack[0] in beside(start):
            stack.pop(0)
            changed = True
        if stack and stack[-1] in beside(end):
            stack.pop()
            changed = True
    return stack


@dataclass(frozen=True)
class OracleCounts:
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


def simulate(
    plat: PlatPresentation, *, max_vertices: int = DEFAULT_MAX_VERTICES
) -> PLArcSystem:
    """Push the standard tents through every half twist of the word.

    Raises:
        OracleResourceError: If the polylines exceed ``max_vertices``
    """
    system = PLArcSystem.standard(plat.bridge_number)
    for step, generator in enumerate(plat.word, start=1):
        system = system.twisted(generator)
        if system.vertex_count > max_vertices:
            msg = (
                f"Polylines reached {system.vertex_count} vertices after step {step} "
                f"(cap {max_vertices})"
            )
            raise OracleResourceError(msg)
    system.check_general_position()
    logger.debug(f"Simulated {plat}: {system.vertex_count} vertices")
    return system


def oracle_gap_words(
    plat: PlatPresentation, *, max_vertices: int = DEFAULT_MAX_VERTICES
) -> tuple[tuple[int, ...], ...]:
    """Reduced sequence of crossed gaps for every arc, from its first puncture."""
    system = simulate(plat, max_vertices=max_vertices)
    puncture_count = 2 * plat.bridge_number
    words = []
    for polyline in system.polylines:
        start, end = int(polyline[0][0]), int(polyline[-1][0])
        gaps = [_gap_of(x, puncture_count) for x in _axis_crossings(polyline)]
        words.append(tuple(_reduce_word(gaps, start, end, puncture_count)))
    return tuple(words)


def oracle_counts(
    plat: PlatPresentation, *, max_vertices: int = DEFAULT_MAX_VERTICES
) -> OracleCounts:
    """Crossing points per underpass interval and per corridor after straightening."""
    underpasses = [0] * plat.bridge_number
    corridors = [0] * plat.bridge_number
    for word in oracle_gap_words(plat, max_vertices=max_vertices):
        for gap in word:
            if gap % 2:
                underpasses[(gap + 1) // 2 - 1] += 1
            else:
                corridors[gap // 2 - 1] += 1
    return OracleCounts(tuple(underpasses), tuple(corridors))
