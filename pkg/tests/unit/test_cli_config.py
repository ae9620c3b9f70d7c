"""Test scenario parsing, grid expansion, CSV output and report rendering."""

import csv
import math

import pytest

from myers_verify.cli.config import (
    build_scenario,
    expand_grid,
    load_config,
    parse_config,
)
from myers_verify.cli.output import (
    CRITERION_COLUMNS,
    columns_of,
    format_value,
    leading_for,
    write_csv,
)
from myers_verify.cli.render import render, render_constant
from myers_verify.exceptions import ScenarioError
from myers_verify.models.criterion import CriterionParams
from myers_verify.services.criteria import constant_report
from myers_verify.settings import settings


class TestParseConfig:
    """Test the key = value format."""

    def test_comments_and_blank_lines(self):
        """Test comments and surrounding whitespace are ignored."""
        raw = parse_config("# scenario\n\nworkflow = compare  # check\n n=3\n")

        assert raw == {"workflow": "compare", "n": "3"}

    def test_missing_equals_names_line(self):
        """Test a line without '=' names the source and line."""
        with pytest.raises(ScenarioError) as excinfo:
            parse_config("n = 3\nworkflow compare\n", "case.cfg")

        assert excinfo.value.field == "case.cfg:2"

    def test_empty_value(self):
        """Test an empty value names its key."""
        with pytest.raises(ScenarioError) as excinfo:
            parse_config("delta =\n")

        assert excinfo.value.field == "delta"

    def test_repeated_key(self):
        """Test a key may appear once."""
        with pytest.raises(ScenarioError, match="repeated on line 2"):
            parse_config("n = 3\nn = 4\n")

    def test_relative_file_keys(self, write_config, tmp_path):
        """Test sample file paths resolve against the scenario's directory."""
        path = write_config(manifold="tabulated", profile_file="phi.txt")

        raw = load_config(path)

        assert raw["profile_file"] == str(tmp_path / "phi.txt")

    def test_not_utf8(self, tmp_path):
        """Test undecodable files are scenario errors."""
        path = tmp_path / "bad.cfg"
        path.write_bytes(b"n = \xff\xfe\n")

        with pytest.raises(ScenarioError, match="not UTF-8"):
            load_config(path)


class TestBuildScenario:
    """Test validation of raw values."""

    def test_valid(self):
        """Test a complete compare scenario."""
        s = build_scenario(
            {"workflow": "compare", "variant": "thm22", "a": "0", "H": "1"}
        )

        assert s.a == 0.0

    def test_missing_key_reported_as_workflow(self):
        """Test a cross-field error names the workflow."""
        with pytest.raises(ScenarioError) as excinfo:
            build_scenario({"workflow": "compare", "variant": "thm21"})

        assert excinfo.value.field == "workflow"
        assert "delta" in str(excinfo.value)

    def test_bad_number_names_key(self):
        """Test a non-numeric value names its key."""
        with pytest.raises(ScenarioError) as excinfo:
            build_scenario({"workflow": "ambrose", "C": "one", "alpha": "2"})

        assert excinfo.value.field == "C"

    def test_unknown_key(self):
        """Test unknown keys are named."""
        with pytest.raises(ScenarioError) as excinfo:
            build_scenario(
                {"workflow": "ambrose", "C": "1", "alpha": "2", "beta2": "1"}
            )

        assert excinfo.value.field == "beta2"

    def test_lists_only_in_sweeps(self):
        """Test comma lists are refused outside sweeps."""
        with pytest.raises(ScenarioError, match="sweep"):
            build_scenario({"workflow": "ambrose", "C": "1,2", "alpha": "2"})

    def test_criterion_parameters_checked_early(self):
        """Test criterion constraints are validated before any run."""
        with pytest.raises(ScenarioError, match="b >= 2"):
            build_scenario(
                {"workflow": "criterion", "variant": "Wan", "b": "1.5", "r0": "1"}
            )


class TestExpandGrid:
    """Test Cartesian expansion for sweeps."""

    def test_product_in_sorted_order(self):
        """Test keys are taken in sorted order and values numerically."""
        grid = expand_grid({"delta": "0.2, 0.05, 0.1", "H": "1, 0.5", "n": "3"})

        assert len(grid) == 6
        assert [(p["H"], p["delta"]) for p in grid] == [
            ("0.5", "0.05"),
            ("0.5", "0.1"),
            ("0.5", "0.2"),
            ("1", "0.05"),
            ("1", "0.1"),
            ("1", "0.2"),
        ]
        assert all(p["n"] == "3" for p in grid)

    def test_order_independent_of_file_order(self):
        """Test the same grid results however the lists were written."""
        a = expand_grid({"delta": "0.1,0.2", "H": "1,0.5"})
        b = expand_grid({"H": "0.5,1", "delta": "0.2,0.1"})

        assert a == b

    def test_empty_list(self):
        """Test a list with no values is an error."""
        with pytest.raises(ScenarioError, match="no points"):
            expand_grid({"delta": " , "})

    def test_too_many_points(self, monkeypatch):
        """Test the grid size limit."""
        monkeypatch.setattr(settings, "sweep_max_points", 3)

        with pytest.raises(ScenarioError, match="more than 3"):
            expand_grid({"a": "1,2", "b": "1,2"})

    def test_file_keys_not_split(self):
        """Test sample paths are never treated as lists."""
        grid = expand_grid({"profile_file": "a,b.txt", "n": "2,3"})

        assert [p["profile_file"] for p in grid] == ["a,b.txt", "a,b.txt"]


class TestCsvOutput:
    """Test CSV formatting and writing."""

    def test_format_value(self):
        """Test reals keep 17 significant digits and specials are spelled out."""
        assert format_value(0.1) == "0.10000000000000001"
        assert format_value(math.inf) == "inf"
        assert format_value(-math.inf) == "-inf"
        assert format_value(math.nan) == "nan"
        assert format_value(True) == "true"
        assert format_value(None) == ""
        assert format_value(["a", "b"]) == "a; b"

    def test_columns_of(self):
        """Test leading columns come first, then first-seen keys."""
        rows = [{"x": 1, "y": 2}, {"z": 3, "x": 4}]

        assert columns_of(rows, ["y"]) == ["y", "x", "z"]

    def test_write_csv(self, tmp_path):
        """Test a written file parses back with the expected header."""
        path = tmp_path / "out.csv"

        write_csv(path, [{"t": 0.5, "ok": True}, {"t": 1.0, "ok": False}])

        with path.open() as handle:
            rows = list(csv.reader(handle))
        assert rows == [["t", "ok"], ["0.5", "true"], ["1", "false"]]
        assert list(tmp_path.iterdir()) == [path]

    def test_write_failure_leaves_no_file(self, tmp_path):
        """Test a failing write removes its temporary file."""
        path = tmp_path / "out.csv"

        class Unprintable:
            def __str__(self):
                raise RuntimeError("boom")

        with pytest.raises(RuntimeError):
            write_csv(path, [{"x": Unprintable()}])
        assert list(tmp_path.iterdir()) == []

    def test_leading_for_criterion_rows(self):
        """Test criterion rows use the documented column order."""
        assert leading_for([{"criterion_met": True}]) == CRITERION_COLUMNS
        assert leading_for([{"verdict": "holds"}]) == ()
        assert leading_for([]) == ()


class TestRender:
    """Test report templates."""

    def test_constant_report(self):
        """Test the constant table carries value and branch."""
        report = constant_report(
            CriterionParams(variant="C6", n=2, k=1.0, b=3.0, r0=1.0)
        )

        text = render_constant(report)

        assert "C6 constant" in text
        assert "b>2" in text
        assert "16" in text

    def test_missing_value_is_value_error(self):
        """Test an undefined template variable raises ValueError."""
        with pytest.raises(ValueError, match="Template rendering failed"):
            render("{{ missing }}")
