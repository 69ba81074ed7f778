# SPDX-FileCopyrightText: 2025-present adamws <adamws@users.noreply.github.com>
#
# SPDX-License-Identifier: MIT
"""Versioned JSON report documents.

A document holds the plat, the reduced diagram (full event order and arc node
lists, so that certificates can be re-checked without this tool), diagram
statistics, the well-mixed evidence and, for bounds runs, the bounds with their
certificates and witnesses.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Optional

from bridge_distance import __version__
from bridge_distance.analysis import (
    CombinationResult,
    HemiComponent,
    SeparatingFamily,
    WellMixedReport,
)
from bridge_distance.arc_system import (
    Arc,
    ArcSystem,
    ArcSystemError,
    Axis,
    Hemisphere,
    Interval,
    IntervalKind,
    ReducedTag,
    canonical_form,
    diagram_stats,
    intersection_counts,
    interval_word,
)
from bridge_distance.bounds import (
    BoundsError,
    ConnectivityCertificate,
    CurveKind,
    CurveWitness,
    DisjointPairWitness,
    DistanceBoundsReport,
    Face,
    LowerReason,
    PairEntry,
    WellMixedCertificate,
)
from bridge_distance.plat import PlatError, PlatPresentation

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
TOOL_NAME = "bridge-distance"


class ReportError(Exception):
    """Exception raised for unreadable or unsupported report documents."""


class ReportKind(Enum):
    CHECK = "check"
    BOUNDS = "bounds"


@dataclass(frozen=True)
class ReportDocument:
    """In-memory form of a report document."""

    kind: ReportKind
    plat: PlatPresentation
    system: ArcSystem
    well_mixed: WellMixedReport
    bounds: Optional[DistanceBoundsReport] = None
    seed: Optional[int] = None


def _interval(token: str) -> Interval:
    try:
        return Interval(IntervalKind(token[:1]), int(token[1:]))
    except ValueError as e:
        msg = f"Invalid interval token: '{token}'"
        raise ReportError(msg) from e


def system_to_dict(system: ArcSystem) -> dict[str, Any]:
    tag = system.tag
    return {
        "n": system.n,
        "events": list(system.events),
        "arcs": [
            {"label": arc.label, "nodes": list(arc.nodes), "first": arc.first.value}
            for arc in system.arcs
        ],
        "reduced": None
        if tag is None
        else {
            "bigons": tag.bigons,
            "half_bigons": tag.half_bigons,
            "flipped": tag.flipped,
        },
        "canonical": canonical_form(system) if tag is not None else None,
        "stats": diagram_stats(system).to_dict(),
        "counts": intersection_counts(system).to_dict(),
        "interval_words": {
            str(arc.label): [str(i) for i in interval_word(system, arc.label)]
            for arc in system.arcs
        },
    }


def system_from_dict(data: dict[str, Any]) -> ArcSystem:
    arcs = tuple(
        Arc(arc["label"], tuple(arc["nodes"]), Hemisphere(arc["first"]))
        for arc in data["arcs"]
    )
    tag = ReducedTag(**data["reduced"]) if data.get("reduced") is not None else None
    system = ArcSystem(Axis(data["n"]), tuple(data["events"]), arcs, tag)
    system.validate()
    return system


def _component_to_dict(component: HemiComponent) -> dict[str, Any]:
    return {
        "owner": component.owner,
        "index": component.index,
        "hemisphere": component.hemisphere.value,
        "endpoints": list(component.endpoints),
        "positions": list(component.positions),
        "span": sorted(str(i) for i in component.span),
        "cut": sorted(str(i) for i in component.cut),
    }


def _component_from_dict(data: dict[str, Any]) -> HemiComponent:
    a, b = data["endpoints"]
    p, q = data["positions"]
    return HemiComponent(
        hemisphere=Hemisphere(data["hemisphere"]),
        owner=data["owner"],
        index=data["index"],
        endpoints=(a, b),
        positions=(p, q),
        span=frozenset(_interval(t) for t in data["span"]),
        cut=frozenset(_interval(t) for t in data["cut"]),
    )


def _pairs(pairs: frozenset[tuple[int, int]]) -> list[list[int]]:
    return [list(pair) for pair in sorted(pairs)]


def well_mixed_to_dict(report: WellMixedReport) -> dict[str, Any]:
    combinations = []
    for result in report.combinations:
        family = result.family
        combinations.append(
            {
                "i": family.i,
                "j": family.j,
                "hemisphere": family.hemisphere.value,
                "event_count": family.event_count,
                "members": [_component_to_dict(m) for m in family.members],
                "pairs": _pairs(result.pairs),
                "naive_pairs": _pairs(result.naive_pairs),
                "missing": [list(p) for p in result.missing],
                "naive_missing": [list(p) for p in result.naive_missing],
                "passed": result.passed,
            }
        )
    return {
        "n": report.n,
        "passed": report.passed,
        "naive_passed": report.naive_passed,
        "combinations": combinations,
    }


def _pair_set(data: list[list[int]]) -> frozenset[tuple[int, int]]:
    return frozenset((r, s) for r, s in data)


def well_mixed_from_dict(data: dict[str, Any]) -> WellMixedReport:
    results = []
    for item in data["combinations"]:
        family = SeparatingFamily(
            i=item["i"],
            j=item["j"],
            hemisphere=Hemisphere(item["hemisphere"]),
            members=tuple(_component_from_dict(m) for m in item["members"]),
            event_count=item["event_count"],
        )
        results.append(
            CombinationResult(
                family=family,
                pairs=_pair_set(item["pairs"]),
                naive_pairs=_pair_set(item["naive_pairs"]),
                missing=tuple((r, s) for r, s in item["missing"]),
                naive_missing=tuple((r, s) for r, s in item["naive_missing"]),
            )
        )
    return WellMixedReport(data["n"], tuple(results))


def bounds_to_dict(report: DistanceBoundsReport) -> dict[str, Any]:
    return {
        "lower": report.lower,
        "lower_reason": report.lower_reason.value,
        "upper": report.upper,
        "exact": report.exact,
        "connectivity": report.connectivity.to_dict() if report.connectivity else None,
        "well_mixed_certified": report.well_mixed_certificate is not None,
        "well_mixed_note": report.well_mixed_note,
        "pair_witness": report.pair_witness.to_dict() if report.pair_witness else None,
        "curve_witness": report.curve_witness.to_dict()
        if report.curve_witness
        else None,
        "pair_table": [entry.to_dict() for entry in report.pair_table],
        "inapplicable": list(report.inapplicable),
    }


def _curve_from_dict(data: dict[str, Any]) -> CurveWitness:
    return CurveWitness(
        r=data["r"],
        s=data["s"],
        kind=CurveKind(data["kind"]),
        region=tuple(Face.parse(token) for token in data["region"]),
        inside=tuple(data["inside"]),
        outside=tuple(data["outside"]),
    )


def bounds_from_dict(
    data: dict[str, Any],
    plat: PlatPresentation,
    system: ArcSystem,
    well_mixed: WellMixedReport,
) -> DistanceBoundsReport:
    connectivity = data.get("connectivity")
    pair = data.get("pair_witness")
    curve = data.get("curve_witness")
    return DistanceBoundsReport(
        plat=plat,
        system=system,
        stats=diagram_stats(system),
        well_mixed=well_mixed,
        lower=data["lower"],
        lower_reason=LowerReason(data["lower_reason"]),
        upper=data["upper"],
        connectivity=ConnectivityCertificate(tuple(connectivity["trace"]))
        if connectivity
        else None,
        well_mixed_certificate=WellMixedCertificate(well_mixed)
        if data["well_mixed_certified"]
        else None,
        well_mixed_note=data.get("well_mixed_note"),
        pair_witness=DisjointPairWitness(pair["r"], pair["s"]) if pair else None,
        curve_witness=_curve_from_dict(curve) if curve else None,
        pair_table=tuple(
            PairEntry(e["r"], e["s"], e["crossings"], e["shared_endpoints"])
            for e in data["pair_table"]
        ),
        inapplicable=tuple(data["inapplicable"]),
    )


def build_document(
    plat: PlatPresentation,
    system: ArcSystem,
    well_mixed: WellMixedReport,
    bounds: Optional[DistanceBoundsReport] = None,
    seed: Optional[int] = None,
) -> dict[str, Any]:
    """Assemble the JSON-ready report document."""
    document: dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "tool": {"name": TOOL_NAME, "version": __version__},
        "kind": (ReportKind.CHECK if bounds is None else ReportKind.BOUNDS).value,
        "seed": seed,
        "plat": plat.to_dict(),
        "diagram": system_to_dict(system),
        "well_mixed": well_mixed_to_dict(well_mixed),
    }
    if bounds is not None:
        document["bounds"] = bounds_to_dict(bounds)
    return document


def parse_document(document: dict[str, Any]) -> ReportDocument:
    """Rebuild the in-memory reports from a parsed document.

    Raises:
        ReportError: If the document has an unsupported version or is malformed
    """
    version = document.get("format_version")
    if version != FORMAT_VERSION:
        msg = (
            f"Unsupported report format_version {version!r}, "
            f"expected {FORMAT_VERSION}"
        )
        raise ReportError(msg)
    try:
        kind = ReportKind(document.get("kind", ReportKind.CHECK.value))
        plat = PlatPresentation(
            document["plat"]["bridge_number"], tuple(document["plat"]["word"])
        )
        system = system_from_dict(document["diagram"])
        well_mixed = well_mixed_from_dict(document["well_mixed"])
        bounds = None
        if "bounds" in document:
            bounds = bounds_from_dict(document["bounds"], plat, system, well_mixed)
    except (
        KeyError,
        TypeError,
        ValueError,
        PlatError,
        ArcSystemError,
        BoundsError,
    ) as e:
        msg = f"Malformed report document: {e}"
        raise ReportError(msg) from e
    return ReportDocument(
        kind=kind,
        plat=plat,
        system=system,
        well_mixed=well_mixed,
        bounds=bounds,
        seed=document.get("seed"),
    )


def write_report(document: dict[str, Any], output: Optional[Path] = None) -> str:
    """Serialize a document, writing it to ``output`` when given."""
    text = json.dumps(document, indent=2) + "\n"
    if output is not None:
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(text, encoding="utf-8")
        logger.info(f"Report written to {output}")
    return text


def read_report(source: Path) -> ReportDocument:
    """Read a report document back from disk.

    Raises:
        ReportError: If the file cannot be read or parsed
    """
    try:
        document = json.loads(source.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        msg = f"Cannot read report {source}: {e}"
        raise ReportError(msg) from e
    if not isinstance(document, dict):
        msg = f"Report {source} must contain a JSON object"
        raise ReportError(msg)
    return parse_document(document)


def format_text(
    plat: PlatPresentation,
    well_mixed: WellMixedReport,
    bounds: Optional[DistanceBoundsReport] = None,
    seed: Optional[int] = None,
) -> str:
    """Human-readable summary printed by the CLI."""
    lines = [f"Plat: {plat}"]
    if seed is not None:
        lines.append(f"Seed: {seed}")
    verdict = "PASS" if well_mixed.passed else "FAIL"
    naive = "pass" if well_mixed.naive_passed else "fail"
    lines.append(f"Well-mixed: {verdict} (within-family reading: {naive})")
    for result in well_mixed.combinations:
        family = result.family
        status = "ok" if result.passed else f"missing {list(result.missing)}"
        lines.append(
            f"  ({family.i},{family.j},{family.hemisphere.value}) "
            f"members={list(family.owners)} pairs={sorted(result.pairs)} {status}"
        )
    if bounds is not None:
        upper = "unknown" if bounds.upper is None else str(bounds.upper)
        lines.append(
            f"Distance: lower {bounds.lower} ({bounds.lower_reason.value}), "
            f"upper {upper}, exact {str(bounds.exact).lower()}"
        )
        if bounds.pair_witness is not None:
            w = bounds.pair_witness
            lines.append(f"  disjoint pair: overpass {w.r}, underpass {w.s}")
        if bounds.curve_witness is not None:
            c = bounds.curve_witness
            lines.append(
                f"  curve: around overpass {c.r} and underpass {c.s}, "
                f"punctures {list(c.inside)} | {list(c.outside)}"
            )
        if bounds.well_mixed_note:
            lines.append(f"  note: {bounds.well_mixed_note}")
        if bounds.inapplicable:
            lines.append(f"  inapplicable: {', '.join(bounds.inapplicable)}")
    return "\n".join(lines) + "\n"
