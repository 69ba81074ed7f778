# SPDX-FileCopyrightText: 2025-present adamws <adamws@users.noreply.github.com>
#
# SPDX-License-Identifier: MIT
"""Seeded random-walk search for well-mixed plats."""

from __future__ import annotations

import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Optional

from bridge_distance import __version__
from bridge_distance.analysis import check_well_mixed
from bridge_distance.arc_system import build_diagram, canonical_form
from bridge_distance.bounds import MIN_CURVE_GRAPH_BRIDGE_NUMBER, assemble_bounds
from bridge_distance.plat import PlatPresentation
from bridge_distance.report import FORMAT_VERSION, TOOL_NAME, build_document
from bridge_distance.verify import verify_bounds_report

if TYPE_CHECKING:
    from collections.abc import Iterator

    from bridge_distance.bounds import DistanceBoundsReport

logger = logging.getLogger(__name__)

DEFAULT_MAX_CANDIDATES = 2000
BATCH_PER_WORKER = 8
# consecutive revisits after which the walk has run out of new words
MAX_STALE_STEPS = 10_000


class SearchError(Exception):
    """Exception raised for invalid search parameters or failed re-verification."""


@dataclass(frozen=True)
class SearchParams:
    n: int
    max_len: int
    seed: int
    max_candidates: int = DEFAULT_MAX_CANDIDATES
    budget_seconds: Optional[float] = None
    workers: int = 1

    def __post_init__(self) -> None:
        if self.n < MIN_CURVE_GRAPH_BRIDGE_NUMBER:
            msg = f"Search needs n >= {MIN_CURVE_GRAPH_BRIDGE_NUMBER}, got {self.n}"
            raise SearchError(msg)
        for name in ("max_len", "max_candidates", "workers"):
            if getattr(self, name) < 1:
                msg = f"{name} must be positive, got {getattr(self, name)}"
                raise SearchError(msg)
        if self.budget_seconds is not None and self.budget_seconds <= 0:
            msg = f"budget_seconds must be positive, got {self.budget_seconds}"
            raise SearchError(msg)

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "max_len": self.max_len,
            "seed": self.seed,
            "max_candidates": self.max_candidates,
            "budget_seconds": self.budget_seconds,
            "workers": self.workers,
        }


@dataclass(frozen=True)
class SearchHit:
    index: int
    plat: PlatPresentation
    bounds: DistanceBoundsReport


@dataclass(frozen=True)
class SearchResult:
    params: SearchParams
    evaluated: int
    hits: tuple[SearchHit, ...]
    truncated: bool = False

    def to_dict(self) -> dict[str, Any]:
        return {
            "format_version": FORMAT_VERSION,
            "tool": {"name": TOOL_NAME, "version": __version__},
            "seed": self.params.seed,
            "params": self.params.to_dict(),
            "evaluated": self.evaluated,
            "truncated": self.truncated,
            "hits": [
                {
                    "index": hit.index,
                    **build_document(
                        hit.plat,
                        hit.bounds.system,
                        hit.bounds.well_mixed,
                        hit.bounds,
                        self.params.seed,
                    ),
                }
                for hit in self.hits
            ],
        }


def candidate_words(params: SearchParams) -> Iterator[tuple[int, ...]]:
    """Distinct words visited by a random walk, in visiting order.

    The walk appends one letter at a time, never cancelling the previous one,
    and jumps back to a random prefix when it reaches the length cap.
    """
    rng = random.Random(params.seed)  # noqa: S311
    max_generator = 2 * params.n - 1
    letters = [g for k in range(1, max_generator + 1) for g in (k, -k)]
    seen: set[tuple[int, ...]] = set()
    word: list[int] = []
    emitted = 0
    stale = 0
    while emitted < params.max_candidates and stale < MAX_STALE_STEPS:
        if len(word) >= params.max_len:
            del word[rng.randrange(params.max_len) :]
        options = [g for g in letters if not word or g != -word[-1]]
        word.append(rng.choice(options))
        key = tuple(word)
        if key in seen:
            stale += 1
            continue
        stale = 0
        seen.add(key)
        emitted += 1
        yield key


def evaluate_candidate(
    plat: PlatPresentation,
) -> Optional[DistanceBoundsReport]:
    """Bounds report of ``plat`` when its diagram is well-mixed."""
    system = build_diagram(plat)
    if not check_well_mixed(system).passed:
        return None
    return assemble_bounds(plat, system)


def _reverify(plat: PlatPresentation, bounds: DistanceBoundsReport) -> None:
    system = build_diagram(plat)
    if canonical_form(system) != canonical_form(bounds.system):
        msg = f"Second pass built a different diagram for {plat}"
        raise SearchError(msg)
    if check_well_mixed(system) != bounds.well_mixed:
        msg = f"Second well-mixed pass disagrees for {plat}"
        raise SearchError(msg)
    verify_bounds_report(system, bounds)


def _batches(
    params: SearchParams,
) -> Iterator[list[tuple[int, PlatPresentation]]]:
    batch: list[tuple[int, PlatPresentation]] = []
    size = params.workers * BATCH_PER_WORKER
    for index, word in enumerate(candidate_words(params)):
        batch.append((index, PlatPresentation(params.n, word)))
        if len(batch) == size:
            yield batch
            batch = []
    if batch:
        yield batch


def run_search(params: SearchParams) -> SearchResult:
    """Evaluate candidates in order until the candidate or time budget runs out.

    Hits are re-verified by an independent second pass before being returned.

    Raises:
        SearchError: If a hit fails re-verification
    """
    started = time.monotonic()
    hits = []
    evaluated = 0
    truncated = False
    executor = ProcessPoolExecutor(params.workers) if params.workers > 1 else None
    try:
        for batch in _batches(params):
            if (
                params.budget_seconds is not None
                and time.monotonic() - started > params.budget_seconds
            ):
                truncated = True
                break
            plats = [plat for _, plat in batch]
            if executor is not None:
                results = list(executor.map(evaluate_candidate, plats))
            else:
                results = [evaluate_candidate(plat) for plat in plats]
            evaluated += len(batch)
            for (index, plat), bounds in zip(batch, results):
                if bounds is not None:
                    logger.info(f"Hit #{len(hits) + 1} at candidate {index}: {plat}")
                    hits.append(SearchHit(index, plat, bounds))
    finally:
        if executor is not None:
            executor.shutdown()

    for hit in hits:
        _reverify(hit.plat, hit.bounds)

    logger.info(
        f"Search n={params.n} seed={params.seed}: {evaluated} candidates evaluated, "
        f"{len(hits)} hit(s){' (time budget reached)' if truncated else ''}"
    )
    return SearchResult(params, evaluated, tuple(hits), truncated)
