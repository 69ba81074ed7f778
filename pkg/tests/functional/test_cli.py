# SPDX-FileCopyrightText: 2025-present adamws <adamws@users.noreply.github.com>
#
# SPDX-License-Identifier: MIT
"""Functional tests for the bridge-distance command line."""

import json
import xml.etree.ElementTree as ET

import pytest
from xmldiff import main as xmldiff_main

from bridge_distance.report import read_report

SVG_NS = "{http://www.w3.org/2000/svg}"

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ERROR = 2
EXIT_NO_HITS = 3


def _elements_with_class(svg_file, tag, css_class):
    root = ET.parse(svg_file).getroot()
    return [
        el
        for el in root.iter(f"{SVG_NS}{tag}")
        if css_class in el.get("class", "").split()
    ]


@pytest.mark.functional
def test_cli_help(cli_runner):
    """Test that the CLI help works."""
    result = cli_runner(["--help"])
    assert result.returncode == 0
    assert "check the well-mixed condition" in result.stdout
    for command in ("check", "bounds", "render", "search"):
        assert command in result.stdout


@pytest.mark.functional
class TestCheck:
    """Test the well-mixed check command."""

    def test_unlink_fails(self, cli_runner, sample_plats):
        result = cli_runner(["check", "--input", sample_plats["unlink3"]])
        assert result.returncode == EXIT_FAIL, result.stderr
        assert "Well-mixed: FAIL" in result.stdout
        assert result.stdout.count("missing [(1, 2), (1, 3), (2, 3)]") == 6

    def test_json_report(self, cli_runner, sample_plats, temp_output_dir):
        out = temp_output_dir / "check.json"
        result = cli_runner(
            [
                "check",
                "--input",
                sample_plats["unlink3"],
                "--format",
                "json",
                "--seed",
                "42",
                "--out",
                out,
            ]
        )
        assert result.returncode == EXIT_FAIL, result.stderr
        assert result.stdout == ""
        document = json.loads(out.read_text())
        assert document["kind"] == "check"
        assert document["seed"] == 42
        assert document["well_mixed"]["passed"] is False
        assert len(document["well_mixed"]["combinations"]) == 6

    def test_json_to_stdout(self, cli_runner, sample_plats):
        result = cli_runner(
            ["check", "--input", sample_plats["trefoil2"], "--format", "json"]
        )
        assert result.returncode in (EXIT_PASS, EXIT_FAIL), result.stderr
        document = json.loads(result.stdout)
        assert document["plat"] == {"bridge_number": 2, "word": [2, 2, 2]}
        assert document["diagram"]["stats"]["crossings"] == 4


@pytest.mark.functional
class TestBounds:
    """Test the bounds command."""

    def test_unlink(self, cli_runner, sample_plats):
        result = cli_runner(["bounds", "--input", sample_plats["unlink3"]])
        assert result.returncode == EXIT_PASS, result.stderr
        assert "Distance: lower 0 (none), upper 1, exact false" in result.stdout
        assert "disjoint pair: overpass 1, underpass 2" in result.stdout
        assert "re-verified" in result.stderr

    def test_two_bridge_unknot(self, cli_runner, sample_plats):
        result = cli_runner(
            ["bounds", "--input", sample_plats["unknot2"], "--format", "json"]
        )
        assert result.returncode == EXIT_PASS, result.stderr
        bounds = json.loads(result.stdout)["bounds"]
        assert bounds["lower"] == 1
        assert bounds["lower_reason"] == "connected-link"
        assert bounds["upper"] is None
        assert bounds["inapplicable"] == ["well-mixed", "disjoint-pair", "curve"]
        assert "only the connectivity certificate applies" in result.stderr

    def test_no_verify(self, cli_runner, sample_plats):
        result = cli_runner(
            ["bounds", "--input", sample_plats["knot3"], "--no-verify"]
        )
        assert result.returncode == EXIT_PASS, result.stderr
        assert "re-verified" not in result.stderr

    def test_report_round_trip(self, cli_runner, sample_plats, temp_output_dir):
        """Test that a written report can be read back by the library."""
        out = temp_output_dir / "bounds.json"
        result = cli_runner(
            ["bounds", "--input", sample_plats["knot3"], "--format", "json", "-o", out]
        )
        assert result.returncode == EXIT_PASS, result.stderr
        document = read_report(out)
        assert document.bounds is not None
        assert document.plat.word == (2, 4, -3, 2, 5, -4)


@pytest.mark.functional
class TestRender:
    """Test SVG rendering."""

    def test_standard_system(
        self, cli_runner, sample_plats, temp_output_dir, capture_outputs
    ):
        output_dir = temp_output_dir / "render_unlink"
        capture_outputs(output_dir)
        out = output_dir / "unlink3.svg"

        result = cli_runner(["render", "--input", sample_plats["unlink3"], "-o", out])

        assert result.returncode == EXIT_PASS, result.stderr
        assert out.exists(), f"Expected output SVG not found: {out}"
        chords = _elements_with_class(out, "path", "chord")
        assert len(chords) == 3
        assert all("upper" in c.get("class").split() for c in chords)
        assert len(_elements_with_class(out, "line", "underpass")) == 3
        assert not _elements_with_class(out, "circle", "crossing")
        capture_outputs.copy_to_references("standard", "unlink3")

    def test_highlight_matches_check(
        self, cli_runner, sample_plats, temp_output_dir, capture_outputs
    ):
        """Test that highlighted chords are the family members in the report."""
        output_dir = temp_output_dir / "render_highlight"
        capture_outputs(output_dir)
        out = output_dir / "knot3.svg"

        result = cli_runner(
            [
                "render",
                "--input",
                sample_plats["knot3"],
                "--highlight",
                "1,2,+",
                "-o",
                out,
            ]
        )
        assert result.returncode == EXIT_PASS, result.stderr

        report = cli_runner(
            ["check", "--input", sample_plats["knot3"], "--format", "json"]
        )
        combination = next(
            c
            for c in json.loads(report.stdout)["well_mixed"]["combinations"]
            if (c["i"], c["j"], c["hemisphere"]) == (1, 2, "+")
        )
        highlighted = _elements_with_class(out, "path", "highlight")
        assert len(highlighted) == len(combination["members"])
        drawn = {
            (int(h.get("data-owner")), int(h.get("data-index"))) for h in highlighted
        }
        assert drawn == {(m["owner"], m["index"]) for m in combination["members"]}
        capture_outputs.copy_to_references("highlight", "knot3")

    def test_rendering_is_deterministic(
        self, cli_runner, sample_plats, temp_output_dir, capture_outputs
    ):
        output_dir = temp_output_dir / "render_twice"
        capture_outputs(output_dir)
        first = output_dir / "first.svg"
        second = output_dir / "second.svg"
        for out in (first, second):
            result = cli_runner(
                [
                    "render",
                    "--input",
                    sample_plats["trefoil2"],
                    "--show-witness",
                    "--background-color",
                    "dark",
                    "-o",
                    out,
                ]
            )
            assert result.returncode == EXIT_PASS, result.stderr

        diff = xmldiff_main.diff_files(str(first), str(second))
        assert diff == []

    def test_no_background(self, cli_runner, sample_plats, temp_output_dir):
        out = temp_output_dir / "transparent.svg"
        result = cli_runner(
            ["render", "--input", sample_plats["unknot2"], "--no-background", "-o", out]
        )
        assert result.returncode == EXIT_PASS, result.stderr
        assert not list(ET.parse(out).getroot().iter(f"{SVG_NS}rect"))

    def test_highlight_out_of_range(self, cli_runner, sample_plats, temp_output_dir):
        result = cli_runner(
            [
                "render",
                "--input",
                sample_plats["unlink3"],
                "--highlight",
                "1,4,+",
                "-o",
                temp_output_dir / "x.svg",
            ]
        )
        assert result.returncode == EXIT_ERROR
        assert "out of range" in result.stderr


@pytest.mark.functional
class TestErrorHandling:
    """Test exit codes for bad input."""

    @pytest.mark.parametrize(
        ("plat", "fragment"),
        [
            ("malformed", "Malformed plat file"),
            ("bad_index", "index 7"),
            ("long_word", "exceeds the cap 64"),
        ],
    )
    def test_bad_plats(self, cli_runner, sample_plats, plat, fragment):
        result = cli_runner(["check", "--input", sample_plats[plat]])
        assert result.returncode == EXIT_ERROR
        assert fragment in result.stderr

    def test_raised_cap_accepts_long_word(self, cli_runner, sample_plats):
        result = cli_runner(
            ["check", "--input", sample_plats["long_word"], "--cap", "100"]
        )
        assert result.returncode in (EXIT_PASS, EXIT_FAIL), result.stderr

    def test_missing_file(self, cli_runner, temp_output_dir):
        result = cli_runner(["check", "--input", temp_output_dir / "missing.json"])
        assert result.returncode == EXIT_ERROR
        assert "I/O error" in result.stderr

    @pytest.mark.parametrize(
        "args",
        [
            ["render", "--input", "x.json"],
            ["render", "--input", "x.json", "-o", "x.svg", "--highlight", "1,2"],
            ["render", "--input", "x.json", "-o", "x.svg", "--highlight", "0,1,+"],
            ["search", "--max-len", "80"],
            ["search", "--n", "2"],
            ["search", "--workers", "0"],
        ],
    )
    def test_bad_configuration(self, cli_runner, args):
        result = cli_runner(args)
        assert result.returncode == EXIT_ERROR

    def test_unknown_command(self, cli_runner):
        result = cli_runner(["frobnicate"])
        assert result.returncode == EXIT_ERROR


@pytest.mark.functional
class TestSearch:
    """Test the search command."""

    def test_small_search(self, cli_runner, temp_output_dir):
        out = temp_output_dir / "search.json"
        result = cli_runner(
            [
                "search",
                "--n",
                "3",
                "--max-len",
                "8",
                "--max-candidates",
                "25",
                "--seed",
                "1",
                "-o",
                out,
            ]
        )
        assert result.returncode in (EXIT_PASS, EXIT_NO_HITS), result.stderr
        document = json.loads(out.read_text())
        assert document["seed"] == 1
        assert document["evaluated"] == 25
        for hit in document["hits"]:
            assert hit["bounds"]["lower"] == 2
            assert hit["well_mixed"]["passed"] is True
        if result.returncode == EXIT_NO_HITS:
            assert "No well-mixed plat" in result.stderr

    def test_same_seed_same_output(self, cli_runner):
        args = ["search", "--max-len", "6", "--max-candidates", "15", "--seed", "4"]
        first = cli_runner(args)
        second = cli_runner(args)
        assert first.stdout == second.stdout

    @pytest.mark.slow
    def test_headline_scenario(self, cli_runner, temp_output_dir):
        """Test that a budgeted search finds a plat at distance exactly two."""
        out = temp_output_dir / "hits.json"
        result = cli_runner(
            [
                "search",
                "--n",
                "3",
                "--max-len",
                "20",
                "--max-candidates",
                "50000",
                "--budget-seconds",
                "540",
                "--workers",
                "4",
                "-o",
                out,
            ]
        )
        assert result.returncode == EXIT_PASS, result.stderr
        hits = json.loads(out.read_text())["hits"]
        assert hits
        exact = [hit for hit in hits if hit["bounds"]["exact"]]
        for hit in exact:
            assert hit["bounds"]["upper"] == 2
            assert hit["bounds"]["curve_witness"] is not None

        plat_file = temp_output_dir / "hit.json"
        plat_file.write_text(json.dumps(hits[0]["plat"]))
        check = cli_runner(["check", "--input", plat_file])
        assert check.returncode == EXIT_PASS
        assert check.stdout.count(" ok") == 6
