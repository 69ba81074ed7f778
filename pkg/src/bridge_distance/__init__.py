# SPDX-FileCopyrightText: 2025-present adamws <adamws@users.noreply.github.com>
#
# SPDX-License-Identifier: MIT
"""Bridge diagrams, well-mixed checks and Hempel distance bounds for plats."""

__version__ = "0.1.0"
