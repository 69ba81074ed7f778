# SPDX-FileCopyrightText: 2025-present adamws <adamws@users.noreply.github.com>
#
# SPDX-License-Identifier: MIT
"""Pytest configuration and fixtures for functional tests."""

import shutil
import subprocess
from pathlib import Path
from typing import Optional

import pytest

# Test data paths
FUNCTIONAL_DIR = Path(__file__).parent
DATA_DIR = FUNCTIONAL_DIR / "data"
PLATS_DIR = DATA_DIR / "plats"
REFERENCES_DIR = FUNCTIONAL_DIR / "references"


@pytest.fixture
def temp_output_dir(tmp_path) -> Path:
    """Create temporary directory for test outputs."""
    output_dir = tmp_path / "outputs"
    output_dir.mkdir()
    return output_dir


@pytest.fixture
def plats_dir() -> Path:
    """Path to plat test files directory."""
    return PLATS_DIR


@pytest.fixture
def reference_dir() -> Path:
    """Get reference directory."""
    REFERENCES_DIR.mkdir(parents=True, exist_ok=True)
    return REFERENCES_DIR


@pytest.fixture
def cli_runner(request):
    """Helper for running bridge-distance CLI commands with auto output capture."""

    def run_cli(
        args: list, cwd: Optional[Path] = None, *, check: bool = False
    ) -> subprocess.CompletedProcess:
        """Run bridge-distance CLI with given arguments."""
        cmd = ["bridge-distance", *[str(arg) for arg in args]]
        result = subprocess.run(  # noqa: S603
            cmd, capture_output=True, text=True, check=check, cwd=cwd, timeout=600
        )

        if hasattr(request.node, "_pytest_html_cli_outputs"):
            cli_outputs = getattr(request.node, "_pytest_html_cli_outputs", [])
            cli_outputs.append(
                {
                    "command": " ".join(cmd),
                    "stdout": result.stdout,
                    "stderr": result.stderr,
                    "returncode": result.returncode,
                }
            )
            request.node._pytest_html_cli_outputs = cli_outputs

        return result

    return run_cli


@pytest.fixture
def sample_plats() -> dict[str, Path]:
    """Dictionary of sample plat files."""
    return {
        "unlink3": PLATS_DIR / "unlink3.json",
        "unknot2": PLATS_DIR / "unknot2.json",
        "trefoil2": PLATS_DIR / "trefoil2.json",
        "knot3": PLATS_DIR / "knot3.json",
        "long_word": PLATS_DIR / "long_word.json",
        "malformed": PLATS_DIR / "malformed.json",
        "bad_index": PLATS_DIR / "bad_index.json",
    }


@pytest.hookimpl(tryfirst=True)
def pytest_html_report_title(report):
    """Customize HTML report title."""
    report.title = "Bridge Distance - Functional Test Report"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):  # noqa: ARG001
    """Hook to add rendered diagrams and CLI outputs to HTML report."""
    outcome = yield
    report = outcome.get_result()

    pytest_html = item.config.pluginmanager.getplugin("html")
    if pytest_html and report.when == "call":
        extras = getattr(report, "extras", [])
        test_name = item.name

        if hasattr(item, "_pytest_html_capture"):
            output_dirs = getattr(item, "_pytest_html_capture", [])
            existing_dirs = [Path(d) for d in output_dirs if Path(d).exists()]
            if existing_dirs:
                _add_svg_files_to_report(extras, existing_dirs, test_name, pytest_html)

        if hasattr(item, "_pytest_html_cli_outputs"):
            cli_outputs = getattr(item, "_pytest_html_cli_outputs", [])
            _add_cli_outputs_to_report(extras, cli_outputs, test_name, pytest_html)

        report.extras = extras


def _add_svg_files_to_report(
    extras: list, output_dirs: list, test_name: str, pytest_html
) -> None:
    """Add rendered diagrams side by side under a single header."""
    svg_files = sorted(
        (path for output_dir in output_dirs for path in output_dir.glob("*.svg")),
        key=lambda path: path.name,
    )
    if not svg_files:
        return

    extras.append(
        pytest_html.extras.html(
            f"<div><strong>Rendered diagrams for {test_name}:</strong></div>"
        )
    )
    items = []
    for svg_file in svg_files:
        try:
            content = svg_file.read_text(encoding="utf-8")
            items.append(
                f"<div><div>{svg_file.name}</div>"
                f"<div>{content.split('?>', 1)[-1]}</div></div>"
            )
        except OSError as e:
            items.append(f"<div>Could not display {svg_file.name}: {e}</div>")
    extras.append(
        pytest_html.extras.html(
            f'<div style="display:flex;flex-wrap:wrap">{" ".join(items)}</div>'
        )
    )


def _add_cli_outputs_to_report(
    extras: list, cli_outputs: list, test_name: str, pytest_html
) -> None:
    """Add CLI command outputs to HTML report extras."""
    if not cli_outputs:
        return

    extras.append(
        pytest_html.extras.html(
            f"<div><strong>CLI Commands and Outputs for {test_name}:</strong></div>"
        )
    )
    for i, output_info in enumerate(cli_outputs, 1):
        returncode = output_info.get("returncode", "Unknown")
        cli_html = (
            f"<div><strong>Command #{i}</strong> (exit code: {returncode})"
            f"<div><code>{output_info.get('command', '')}</code></div>"
            "<div><strong>STDOUT:</strong><pre>"
            f"{output_info.get('stdout') or '(no output)'}</pre></div>"
            "<div><strong>STDERR:</strong><pre>"
            f"{output_info.get('stderr') or '(no output)'}</pre></div>"
            "</div>"
        )
        extras.append(pytest_html.extras.html(cli_html))


@pytest.fixture
def generate_references(request):
    """Check if --generate-references flag is set."""
    return request.config.getoption("--generate-references")


@pytest.fixture
def capture_outputs(request, reference_dir, generate_references):
    """Fixture to capture output directories and CLI outputs for HTML reporting."""
    output_dirs = []
    cli_outputs = []

    def add_output_dir(path: Path):
        """Register an output directory to be captured in HTML report."""
        output_dirs.append(str(path))
        request.node._pytest_html_capture = output_dirs

    request.node._pytest_html_cli_outputs = cli_outputs

    def copy_to_references(test_name: str, plat_name: str):
        """Copy rendered SVGs to the reference directory if flag is set."""
        if not generate_references:
            return

        plat_ref_dir = reference_dir / plat_name
        plat_ref_dir.mkdir(parents=True, exist_ok=True)
        for output_dir_str in output_dirs:
            for svg_file in Path(output_dir_str).glob("*.svg"):
                ref_path = plat_ref_dir / f"{test_name}_{svg_file.name}"
                shutil.copy2(svg_file, ref_path)
                print(f"  -> {ref_path}")  # noqa: T201

    add_output_dir.output_dirs = output_dirs
    add_output_dir.cli_outputs = cli_outputs
    add_output_dir.copy_to_references = copy_to_references
    return add_output_dir
