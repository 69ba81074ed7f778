# SPDX-FileCopyrightText: 2025-present adamws <adamws@users.noreply.github.com>
#
# SPDX-License-Identifier: MIT
"""Command line interface for bridge diagram analysis."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from bridge_distance.analysis import AnalysisError, check_well_mixed, separating_family
from bridge_distance.arc_system import ArcSystemError, build_diagram
from bridge_distance.bounds import (
    MIN_CURVE_GRAPH_BRIDGE_NUMBER,
    BoundsError,
    assemble_bounds,
)
from bridge_distance.log_setup import setup_logging
from bridge_distance.plat import PlatError, PlatPresentation, load_plat
from bridge_distance.render import (
    DEFAULT_BACKGROUND_LIGHT,
    RenderError,
    RenderOptions,
    parse_color,
    parse_highlight,
    render_svg,
    write_svg,
)
from bridge_distance.report import (
    ReportError,
    build_document,
    format_text,
    write_report,
)
from bridge_distance.search import (
    DEFAULT_MAX_CANDIDATES,
    SearchError,
    SearchParams,
    run_search as search_plats,
)
from bridge_distance.verify import VerificationError, verify_bounds_report

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ERROR = 2
EXIT_NO_HITS = 3

DEFAULT_WORD_CAP = 64
DEFAULT_SEED = 0
COMMANDS = ("check", "bounds", "render", "search")


class ConfigError(Exception):
    """Exception raised for invalid command line configuration."""


@dataclass(frozen=True)
class RunConfig:
    """Everything a run needs, validated before any work starts."""

    command: str
    input: Optional[Path] = None
    output_format: str = "text"
    cap: int = DEFAULT_WORD_CAP
    out: Optional[Path] = None
    seed: int = DEFAULT_SEED
    highlight: Optional[str] = None
    background: Optional[str] = DEFAULT_BACKGROUND_LIGHT
    show_witness: bool = False
    verify: bool = True
    n: int = 3
    max_len: int = 20
    budget_seconds: Optional[float] = None
    max_candidates: int = DEFAULT_MAX_CANDIDATES
    workers: int = 1

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            msg = f"Unknown command '{self.command}'"
            raise ConfigError(msg)
        if self.command != "search" and self.input is None:
            msg = f"Command '{self.command}' needs --input"
            raise ConfigError(msg)
        if self.command == "render" and self.out is None:
            msg = "Command 'render' needs --out"
            raise ConfigError(msg)
        if self.output_format not in ("text", "json"):
            msg = f"Unknown format '{self.output_format}'"
            raise ConfigError(msg)
        for name in ("cap", "max_len", "max_candidates", "workers"):
            if getattr(self, name) < 1:
                msg = f"--{name.replace('_', '-')} must be positive"
                raise ConfigError(msg)
        if self.budget_seconds is not None and self.budget_seconds <= 0:
            msg = "--budget-seconds must be positive"
            raise ConfigError(msg)
        if self.command == "search" and self.n < MIN_CURVE_GRAPH_BRIDGE_NUMBER:
            msg = f"--n must be at least {MIN_CURVE_GRAPH_BRIDGE_NUMBER} for search"
            raise ConfigError(msg)
        if self.command == "search" and self.max_len > self.cap:
            msg = f"--max-len {self.max_len} exceeds the word cap {self.cap}"
            raise ConfigError(msg)
        try:
            if self.highlight is not None:
                parse_highlight(self.highlight)
            if self.background is not None:
                parse_color(self.background)
        except RenderError as e:
            raise ConfigError(str(e)) from e


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--log-level",
        default="INFO",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help="Set the logging level (default: INFO)",
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=DEFAULT_SEED,
        help=f"Random seed, recorded in every output (default: {DEFAULT_SEED})",
    )
    parser.add_argument(
        "--cap",
        type=int,
        default=DEFAULT_WORD_CAP,
        help=f"Maximum braid word length accepted (default: {DEFAULT_WORD_CAP})",
    )
    parser.add_argument(
        "-o",
        "--out",
        type=Path,
        metavar="OUTPUT_FILE",
        help="Write the result to a file instead of stdout",
    )


def _add_input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "-i",
        "--input",
        type=Path,
        required=True,
        metavar="PLAT_FILE",
        help="Plat file (JSON with bridge_number and word)",
    )


def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        dest="output_format",
        choices=["text", "json"],
        default="text",
        help="Report format (default: text)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bridge-distance",
        description=(
            "Convert plats to bridge diagrams, check the well-mixed condition "
            "and bound the Hempel distance"
        ),
        epilog=(
            "Examples:\n"
            "  %(prog)s check --input plat.json\n"
            "  %(prog)s bounds --input plat.json --format json --out report.json\n"
            "  %(prog)s render --input plat.json --highlight 1,2,+ --out plat.svg\n"
            "  %(prog)s search --n 3 --max-len 20 --seed 7 --budget-seconds 600"
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", help="Check the well-mixed condition")
    _add_input(check)
    _add_format(check)
    _add_common(check)

    bounds = commands.add_parser("bounds", help="Certified distance bounds")
    _add_input(bounds)
    _add_format(bounds)
    _add_common(bounds)
    bounds.add_argument(
        "--no-verify",
        dest="verify",
        action="store_false",
        help="Skip the second-pass verification of certificates and witnesses",
    )

    render = commands.add_parser("render", help="Draw the bridge diagram as SVG")
    _add_input(render)
    _add_common(render)
    render.add_argument(
        "--highlight",
        metavar="I,J,SIGN",
        help="Emphasize the family separating corridors I and J, e.g. 1,2,+",
    )
    render.add_argument(
        "--background-color",
        dest="background",
        default=DEFAULT_BACKGROUND_LIGHT,
        help=f"Background color (default: {DEFAULT_BACKGROUND_LIGHT})",
    )
    render.add_argument(
        "--no-background",
        action="store_true",
        help="Leave the background transparent",
    )
    render.add_argument(
        "--show-witness",
        action="store_true",
        help="Emphasize the overpass and underpass used by the upper bound witness",
    )

    search_parser = commands.add_parser("search", help="Search for well-mixed plats")
    _add_common(search_parser)
    search_parser.add_argument("--n", type=int, default=3, help="Bridge number")
    search_parser.add_argument(
        "--max-len", type=int, default=20, help="Maximum word length (default: 20)"
    )
    search_parser.add_argument(
        "--budget-seconds", type=float, help="Stop evaluating after this many seconds"
    )
    search_parser.add_argument(
        "--max-candidates",
        type=int,
        default=DEFAULT_MAX_CANDIDATES,
        help=f"Number of candidate words (default: {DEFAULT_MAX_CANDIDATES})",
    )
    search_parser.add_argument(
        "--workers", type=int, default=1, help="Worker processes (default: 1)"
    )
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    background = getattr(args, "background", DEFAULT_BACKGROUND_LIGHT)
    if getattr(args, "no_background", False):
        background = None
    return RunConfig(
        command=args.command,
        input=getattr(args, "input", None),
        output_format=getattr(args, "output_format", "text"),
        cap=args.cap,
        out=args.out,
        seed=args.seed,
        highlight=getattr(args, "highlight", None),
        background=background,
        show_witness=getattr(args, "show_witness", False),
        verify=getattr(args, "verify", True),
        n=getattr(args, "n", 3),
        max_len=getattr(args, "max_len", 20),
        budget_seconds=getattr(args, "budget_seconds", None),
        max_candidates=getattr(args, "max_candidates", DEFAULT_MAX_CANDIDATES),
        workers=getattr(args, "workers", 1),
    )


def _load_input(config: RunConfig) -> PlatPresentation:
    if config.input is None:
        msg = "No input file given"
        raise ConfigError(msg)
    plat = load_plat(config.input)
    if len(plat.word) > config.cap:
        msg = f"Word length {len(plat.word)} exceeds the cap {config.cap} (see --cap)"
        raise ConfigError(msg)
    return plat


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    logger.info(f"Report written to {out}")


def run_check(config: RunConfig) -> int:
    plat = _load_input(config)
    system = build_diagram(plat)
    report = check_well_mixed(system)
    if config.output_format == "json":
        document = build_document(plat, system, report, seed=config.seed)
        _emit(write_report(document), config.out)
    else:
        _emit(format_text(plat, report, seed=config.seed), config.out)
    logger.info(f"Well-mixed check {'passed' if report.passed else 'failed'}")
    return EXIT_PASS if report.passed else EXIT_FAIL


def run_bounds(config: RunConfig) -> int:
    plat = _load_input(config)
    system = build_diagram(plat)
    bounds = assemble_bounds(plat, system)
    if config.verify:
        verify_bounds_report(system, bounds)
        logger.info("Certificates and witnesses re-verified")
    if config.output_format == "json":
        document = build_document(plat, system, bounds.well_mixed, bounds, config.seed)
        _emit(write_report(document), config.out)
    else:
        _emit(format_text(plat, bounds.well_mixed, bounds, config.seed), config.out)
    return EXIT_PASS


def run_render(config: RunConfig) -> int:
    plat = _load_input(config)
    system = build_diagram(plat)

    family = None
    if config.highlight is not None:
        i, j, hemisphere = parse_highlight(config.highlight)
        if max(i, j) > system.n:
            msg = f"Highlight corridors {i},{j} out of range for n={system.n}"
            raise RenderError(msg)
        family = separating_family(system, i, j, hemisphere)
        logger.info(
            f"Highlighting {len(family.members)} member(s) of "
            f"({i},{j},{hemisphere.value})"
        )

    emphasis = None
    if config.show_witness:
        bounds = assemble_bounds(plat, system)
        witness = bounds.curve_witness or bounds.pair_witness
        if witness is None:
            logger.warning("No upper bound witness to show")
        else:
            emphasis = (witness.r, witness.s)

    tree = render_svg(system, family, RenderOptions(config.background, emphasis))
    if config.out is None:
        msg = "Command 'render' needs --out"
        raise ConfigError(msg)
    write_svg(tree, config.out)
    return EXIT_PASS


def run_search(config: RunConfig) -> int:
    params = SearchParams(
        n=config.n,
        max_len=config.max_len,
        seed=config.seed,
        max_candidates=config.max_candidates,
        budget_seconds=config.budget_seconds,
        workers=config.workers,
    )
    result = search_plats(params)
    _emit(json.dumps(result.to_dict(), indent=2) + "\n", config.out)
    if not result.hits:
        logger.error(
            f"No well-mixed plat among {result.evaluated} candidates "
            f"(seed {config.seed})"
        )
        return EXIT_NO_HITS
    return EXIT_PASS


RUNNERS = {
    "check": run_check,
    "bounds": run_bounds,
    "render": run_render,
    "search": run_search,
}


def main(argv: Optional[list[str]] = None) -> None:
    args = build_parser().parse_args(argv)

    # Configure clean logging for CLI application
    setup_logging(level=getattr(logging, args.log_level.upper()))

    try:
        config = config_from_args(args)
        status = RUNNERS[config.command](config)
    except OSError as e:
        logger.error(f"I/O error: {e}")
        sys.exit(EXIT_ERROR)
    except (
        ConfigError,
        PlatError,
        ArcSystemError,
        AnalysisError,
        BoundsError,
        VerificationError,
        ReportError,
        RenderError,
        SearchError,
    ) as e:
        logger.error(f"{type(e).__name__}: {e}")
        sys.exit(EXIT_ERROR)
    sys.exit(status)


if __name__ == "__main__":
    main()
