# SPDX-FileCopyrightText: 2025-present adamws <adamws@users.noreply.github.com>
#
# SPDX-License-Identifier: MIT
"""Plat presentations and their link-level combinatorics.

A plat on 2n strands is a braid word capped above and below by n arcs joining
positions (2k-1, 2k). Strands are numbered 1..2n from the left and the word is
read from the top down. A positive letter +k is the half twist of strands k and
k+1 in which strand k passes over strand k+1.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any

logger = logging.getLogger(__name__)

MIN_BRIDGE_NUMBER = 2


class PlatError(Exception):
    """Exception raised for invalid plat presentations."""


@dataclass(frozen=True)
class PlatPresentation:
    """Bridge number and braid word of a plat."""

    bridge_number: int
    word: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        validate_plat(self.bridge_number, self.word)

    @property
    def strands(self) -> int:
        return 2 * self.bridge_number

    @property
    def max_generator(self) -> int:
        return 2 * self.bridge_number - 1

    def inverse(self) -> PlatPresentation:
        """Return the plat with every letter negated."""
        return PlatPresentation(self.bridge_number, tuple(-g for g in self.word))

    def to_dict(self) -> dict[str, Any]:
        return {"bridge_number": self.bridge_number, "word": list(self.word)}

    def __str__(self) -> str:
        letters = ",".join(f"{g:+d}" for g in self.word)
        return f"n={self.bridge_number} word=({letters})"


@dataclass(frozen=True)
class LinkComponents:
    """Components of the plat closure.

    Each cycle lists the top endpoints met while tracing one component: top cap,
    strand down, bottom cap, strand up, and so on.
    """

    cycles: tuple[tuple[int, ...], ...]

    @property
    def component_count(self) -> int:
        return len(self.cycles)

    @property
    def is_knot(self) -> bool:
        return self.component_count == 1


def validate_plat(bridge_number: int, word: tuple[int, ...]) -> None:
    """Validate raw plat data.

    Raises:
        PlatError: If the bridge number is too small or a letter is out of range
    """
    if isinstance(bridge_number, bool) or not isinstance(bridge_number, int):
        msg = f"Bridge number must be an integer, got {bridge_number!r}"
        raise PlatError(msg)
    if bridge_number < MIN_BRIDGE_NUMBER:
        msg = f"Bridge number must be at least {MIN_BRIDGE_NUMBER}, got {bridge_number}"
        raise PlatError(msg)

    max_generator = 2 * bridge_number - 1
    for position, letter in enumerate(word):
        if isinstance(letter, bool) or not isinstance(letter, int):
            msg = f"Letter {position} must be an integer, got {letter!r}"
            raise PlatError(msg)
        if letter == 0 or abs(letter) > max_generator:
            msg = (
                f"Letter {position} has index {letter}, expected 1 <= |index| <= "
                f"{max_generator} for n={bridge_number}"
            )
            raise PlatError(msg)


def parse_plat(text: str) -> PlatPresentation:
    """Parse plat file contents.

    The file is a JSON object with an integer ``bridge_number`` and an integer
    array ``word``.

    Args:
        text: Plat file contents

    Returns:
        Validated plat presentation

    Raises:
        PlatError: If the text is not a valid plat file
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        msg = f"Malformed plat file: {e}"
        raise PlatError(msg) from e

    if not isinstance(data, dict):
        msg = "Plat file must contain a JSON object"
        raise PlatError(msg)

    missing = [key for key in ("bridge_number", "word") if key not in data]
    if missing:
        msg = f"Plat file is missing field(s): {', '.join(missing)}"
        raise PlatError(msg)

    word = data["word"]
    if not isinstance(word, list):
        msg = f"Field 'word' must be an array, got {type(word).__name__}"
        raise PlatError(msg)

    return PlatPresentation(data["bridge_number"], tuple(word))


def load_plat(plat_file: Path) -> PlatPresentation:
    """Read and parse a plat file from disk."""
    plat = parse_plat(plat_file.read_text(encoding="utf-8"))
    logger.debug(f"Loaded {plat} from {plat_file}")
    return plat


def strand_permutation(plat: PlatPresentation) -> tuple[int, ...]:
    """Map each top position to the bottom position of its strand.

    Positions are 1-based; entry ``p - 1`` of the result is the bottom position
    of the strand starting at top position ``p``. Signs are ignored.
    """
    # occupant[pos] = top position of the strand currently at pos
    occupant = list(range(plat.strands + 1))
    for letter in plat.word:
        k = abs(letter)
        occupant[k], occupant[k + 1] = occupant[k + 1], occupant[k]

    bottom = [0] * plat.strands
    for pos in range(1, plat.strands + 1):
        bottom[occupant[pos] - 1] = pos
    return tuple(bottom)


def _partner(position: int) -> int:
    """Position joined to ``position`` by a cap."""
    return position + 1 if position % 2 else position - 1


def link_components(plat: PlatPresentation) -> LinkComponents:
    """Trace the components of the plat closure."""
    down = strand_permutation(plat)
    up = {bottom: top for top, bottom in enumerate(down, start=1)}

    seen: set[int] = set()
    cycles = []
    for start in range(1, plat.strands + 1, 2):
        if start in seen:
            continue
        cycle = []
        top = start
        while True:
            cycle.extend((top, _partner(top)))
            seen.update((top, _partner(top)))
            top = up[_partner(down[_partner(top) - 1])]
            if top == start:
                break
        cycles.append(tuple(cycle))

    logger.debug(f"{plat} closes up into {len(cycles)} component(s)")
    return LinkComponents(tuple(cycles))
