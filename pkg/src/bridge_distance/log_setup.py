# SPDX-FileCopyrightText: 2025-present adamws <adamws@users.noreply.github.com>
#
# SPDX-License-Identifier: MIT
"""Colored logging for the application."""

import logging
import os
import sys
from typing import ClassVar

LOG_FORMAT = "%(levelname)s: %(message)s"


class ColoredFormatter(logging.Formatter):
    """A logging formatter that adds colors to the output."""

    COLORS: ClassVar[dict[str, str]] = {
        "DEBUG": "\033[2m",  # Dim
        "WARNING": "\033[93m",  # Orange
        "ERROR": "\033[91m",  # Red
        "CRITICAL": "\033[91m",
        "RESET": "\033[0m",
    }

    def format(self, record: logging.LogRecord) -> str:
        log_message = super().format(record)
        color = self.COLORS.get(record.levelname, "")
        if not color:
            return log_message
        return f"{color}{log_message}{self.COLORS['RESET']}"


def setup_logging(level: int = logging.INFO) -> None:
    """Set up colored logging on stderr.

    Reports are written to stdout, so log records never go there.
    """
    root = logging.getLogger()
    if "NO_COLOR" in os.environ or sys.platform == "win32":
        logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    else:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(ColoredFormatter(LOG_FORMAT))
        root.addHandler(handler)
    root.setLevel(level)
