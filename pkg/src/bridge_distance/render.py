# SPDX-FileCopyrightText: 2025-present adamws <adamws@users.noreply.github.com>
#
# SPDX-License-Identifier: MIT
"""SVG rendering of bridge diagrams.

The axis is drawn as a horizontal line closed up at infinity beyond both ends,
underpasses as bold segments on it and every chord of an overpass as a half
circle above (H+) or below (H-) the axis. Overpasses are told apart by color
and by a solid, dotted or dashed stroke.
"""

from __future__ import annotations

import logging
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

from bridge_distance.arc_system import Hemisphere, IntervalKind

if TYPE_CHECKING:
    from pathlib import Path

    from bridge_distance.analysis import SeparatingFamily
    from bridge_distance.arc_system import ArcSystem

logger = logging.getLogger(__name__)

SVG_NS = "http://www.w3.org/2000/svg"

DEFAULT_BACKGROUND_LIGHT = "#FFFFFF"
DEFAULT_BACKGROUND_DARK = "#282A36"
MAX_RGB_VALUE = 255
MAX_RENDER_EVENTS = 4000

STEP = 24
MARGIN = 48
AXIS_COLOR = "#44475A"

PALETTE = ("#D7263D", "#1B998B", "#2E86AB", "#F46036", "#7B2CBF", "#C5A000")
DASHES = (None, "2,4", "8,4")

NAMED_COLORS = {
    "white": "#FFFFFF",
    "black": "#000000",
    "gray": "#808080",
    "grey": "#808080",
    "ivory": "#FFFFF0",
    "beige": "#F5F5DC",
    "navy": "#000080",
    "dark": DEFAULT_BACKGROUND_DARK,
}

HIGHLIGHT_PATTERN = re.compile(r"^\s*(\d+)\s*,\s*(\d+)\s*,\s*([+-])\s*$")


class RenderError(Exception):
    """Exception raised for diagrams or options that cannot be rendered."""


def parse_color(color_value: str) -> str:
    """Parse a hex, ``rgb(...)`` or named color into ``#RRGGBB``.

    Raises:
        RenderError: If the color format is invalid
    """
    color_value = color_value.strip()
    if re.match(r"^#[0-9A-Fa-f]{6}([0-9A-Fa-f]{2})?$", color_value):
        return color_value.upper()[:7]

    rgb_match = re.match(
        r"^rgb\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)$", color_value
    )
    if rgb_match:
        r, g, b = (int(val) for val in rgb_match.groups())
        if not all(0 <= val <= MAX_RGB_VALUE for val in (r, g, b)):
            msg = f"RGB values must be between 0-{MAX_RGB_VALUE}, got ({r}, {g}, {b})"
            raise RenderError(msg)
        return f"#{r:02X}{g:02X}{b:02X}"

    if color_value.lower() in NAMED_COLORS:
        return NAMED_COLORS[color_value.lower()]

    msg = f"Invalid color format: '{color_value}'"
    raise RenderError(msg)


def parse_highlight(text: str) -> tuple[int, int, Hemisphere]:
    """Parse ``i,j,+`` or ``i,j,-`` into a corridor pair and hemisphere."""
    match = HIGHLIGHT_PATTERN.match(text)
    if not match:
        msg = f"Invalid highlight '{text}', expected i,j,+ or i,j,-"
        raise RenderError(msg)
    i, j = int(match.group(1)), int(match.group(2))
    if min(i, j) < 1:
        msg = f"Highlight corridors are numbered from 1, got {i},{j}"
        raise RenderError(msg)
    if i == j:
        msg = f"Highlight corridors must differ, got {i} twice"
        raise RenderError(msg)
    return i, j, Hemisphere(match.group(3))


@dataclass(frozen=True)
class RenderOptions:
    background: Optional[str] = DEFAULT_BACKGROUND_LIGHT
    emphasis: Optional[tuple[int, int]] = None


def _stroke(label: int) -> tuple[str, Optional[str]]:
    index = label - 1
    return PALETTE[index % len(PALETTE)], DASHES[index % len(DASHES)]


def _x(position: int) -> float:
    return MARGIN + position * STEP


def render_svg(
    system: ArcSystem,
    highlight: Optional[SeparatingFamily] = None,
    options: Optional[RenderOptions] = None,
) -> ET.ElementTree:
    """Draw a bridge diagram.

    Args:
        system: Arc system to draw
        highlight: Family whose members are emphasized; others are faded
        options: Background and witness emphasis

    Returns:
        SVG 1.1 element tree

    Raises:
        RenderError: If the diagram exceeds the render cap
    """
    options = options or RenderOptions()
    size = len(system.events)
    if size > MAX_RENDER_EVENTS:
        msg = f"Diagram has {size} events, render cap is {MAX_RENDER_EVENTS}"
        raise RenderError(msg)

    radius = max(
        (abs(system.position[c.end] - system.position[c.start]) for c in system.chords),
        default=1,
    )
    half_height = radius * STEP / 2 + MARGIN
    width = _x(size - 1) + MARGIN
    height = 2 * half_height
    axis_y = half_height

    root = ET.Element(
        "svg",
        xmlns=SVG_NS,
        version="1.1",
        width=f"{width:g}",
        height=f"{height:g}",
        viewBox=f"0 0 {width:g} {height:g}",
    )
    ET.SubElement(root, "desc").text = f"Bridge diagram, n={system.n}"
    if options.background is not None:
        ET.SubElement(
            root,
            "rect",
            x="0",
            y="0",
            width=f"{width:g}",
            height=f"{height:g}",
            fill=parse_color(options.background),
        )

    axis = ET.SubElement(root, "g", {"class": "axis"})
    ET.SubElement(
        axis,
        "line",
        x1=f"{MARGIN / 2:g}",
        y1=f"{axis_y:g}",
        x2=f"{width - MARGIN / 2:g}",
        y2=f"{axis_y:g}",
        stroke=AXIS_COLOR,
    )
    for x in (MARGIN / 4, width - MARGIN / 4):
        ET.SubElement(
            axis, "text", x=f"{x:g}", y=f"{axis_y + 4:g}", fill=AXIS_COLOR
        ).text = "∞"

    emphasized_arc, emphasized_underpass = options.emphasis or (None, None)
    underpasses = ET.SubElement(root, "g", {"class": "underpasses"})
    for k in range(1, system.n + 1):
        lo, hi = (system.puncture_position(p) for p in system.axis.underpass(k))
        css = "underpass witness" if k == emphasized_underpass else "underpass"
        ET.SubElement(
            underpasses,
            "line",
            {"class": css, "data-underpass": str(k)},
            x1=f"{_x(lo):g}",
            y1=f"{axis_y:g}",
            x2=f"{_x(hi):g}",
            y2=f"{axis_y:g}",
            stroke=AXIS_COLOR,
        ).set("stroke-width", "8" if k == emphasized_underpass else "5")

    members = set()
    if highlight is not None:
        members = {(m.owner, m.index) for m in highlight.members}

    overpasses = ET.SubElement(root, "g", {"class": "overpasses"})
    for chord in system.chords:
        a, b = sorted(system.position[e] for e in chord.ends)
        r = (_x(b) - _x(a)) / 2
        sweep = 1 if chord.hemisphere is Hemisphere.UPPER else 0
        color, dash = _stroke(chord.owner)
        classes = ["chord", f"arc-{chord.owner}", chord.hemisphere.name.lower()]
        stroke_width = "2"
        opacity = "1"
        if highlight is not None:
            if (chord.owner, chord.index) in members:
                classes.append("highlight")
                stroke_width = "4"
            else:
                opacity = "0.3"
        if chord.owner == emphasized_arc:
            classes.append("witness")
            stroke_width = "4"
        path = ET.SubElement(
            overpasses,
            "path",
            {
                "class": " ".join(classes),
                "data-owner": str(chord.owner),
                "data-index": str(chord.index),
                "fill": "none",
                "stroke": color,
                "stroke-width": stroke_width,
                "opacity": opacity,
            },
            d=f"M {_x(a):g} {axis_y:g} A {r:g} {r:g} 0 0 {sweep} {_x(b):g} {axis_y:g}",
        )
        if dash is not None:
            path.set("stroke-dasharray", dash)

    points = ET.SubElement(root, "g", {"class": "events"})
    for position, event in enumerate(system.events):
        if system.axis.is_puncture(event):
            number = system.axis.puncture_number(event)
            ET.SubElement(
                points,
                "circle",
                {"class": "puncture", "data-puncture": str(number)},
                cx=f"{_x(position):g}",
                cy=f"{axis_y:g}",
                r="4",
                fill=AXIS_COLOR,
            )
            ET.SubElement(
                points,
                "text",
                x=f"{_x(position) - 6:g}",
                y=f"{axis_y + 20:g}",
                fill=AXIS_COLOR,
            ).text = f"q{number}"
        elif system.interval_of(event).kind is IntervalKind.UNDERPASS:
            ET.SubElement(
                points,
                "circle",
                {"class": "crossing", "data-owner": str(system.owner[event])},
                cx=f"{_x(position):g}",
                cy=f"{axis_y:g}",
                r="2.5",
                fill="none",
                stroke=AXIS_COLOR,
            )

    labels = ET.SubElement(root, "g", {"class": "labels"})
    for arc in system.arcs:
        position = system.position[arc.nodes[0]]
        offset = -10 if arc.first is Hemisphere.UPPER else 28
        ET.SubElement(
            labels,
            "text",
            x=f"{_x(position) + 4:g}",
            y=f"{axis_y + offset:g}",
            fill=_stroke(arc.label)[0],
        ).text = str(arc.label)

    logger.debug(
        f"Rendered {len(system.chords)} chords over {size} events "
        f"({len(members)} highlighted)"
    )
    return ET.ElementTree(root)


def write_svg(tree: ET.ElementTree, output: Path) -> None:
    output.parent.mkdir(parents=True, exist_ok=True)
    ET.indent(tree)
    tree.write(output, encoding="unicode", xml_declaration=True)
    logger.info(f"Diagram written to {output}")
