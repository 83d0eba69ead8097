import json
import math

import pytest

from risfso.results import (
    REPORT_FORMAT,
    SWEEP_COLUMNS,
    VALIDATION_COLUMNS,
    RunReport,
    format_cell,
    sweep_row,
    validation_row,
)
from risfso.row import Row


def _make_checks():
    return [
        validation_row(check="a", measured=1e-9, tolerance=1e-6, passed=True),
        validation_row(check="b", measured=0.2, tolerance=0.1, passed=False),
    ]


def _make_point(value, closed_form, flags):
    return sweep_row(
        curve="c",
        metric="op",
        axis="mu_d_db",
        value=value,
        closed_form=closed_form,
        flags=flags,
    )


def _make_sweep():
    return RunReport(
        [
            _make_point(0.0, 0.5, frozenset()),
            _make_point(10.0, 0.25, frozenset({"epsilon-split"})),
        ],
        column_names=SWEEP_COLUMNS,
        config=[{"sweep": {"metric": "op"}}],
        seed=5,
    )


def test_row_exposes_columns_by_name_index_and_attribute():
    row = Row(["check", "passed"], ["x", True])

    assert row.check == "x"
    assert row["passed"] is True
    assert row[0] == "x"
    assert row == {"check": "x", "passed": True}
    assert row == ("x", True)


def test_row_rejects_mismatched_values():
    with pytest.raises(ValueError, match="2 columns but 1 values"):
        Row(["a", "b"], [1])


def test_row_unknown_column():
    row = Row(["a"], [1])

    with pytest.raises(KeyError, match="column 'b' not found"):
        row["b"]
    with pytest.raises(TypeError, match="row indices"):
        row[1.5]


def test_row_replace_keeps_column_order():
    row = validation_row(check="a", passed=True)

    changed = row.replace(passed=False)

    assert changed.names == VALIDATION_COLUMNS
    assert changed.passed is False
    assert row.passed is True
    with pytest.raises(KeyError, match="unknown columns"):
        row.replace(colour="red")


def test_report_behaves_like_a_sequence():
    rows = _make_checks()
    report = RunReport(rows, kind="validation")

    assert len(report) == 2
    assert report[0] == rows[0]
    assert report.one() == rows[0]
    assert report.all() == rows
    assert report.column_names == VALIDATION_COLUMNS
    assert report.column("check") == ["a", "b"]
    assert RunReport([]).one() is None


def test_failures_and_passed():
    report = RunReport(_make_checks(), kind="validation")

    assert [row.check for row in report.failures] == ["b"]
    assert not report.passed
    assert RunReport(_make_checks()[:1]).passed


def test_flagged_rows():
    report = _make_sweep()

    assert [row.value for row in report.flagged] == [10.0]
    assert report.failures == []


@pytest.mark.parametrize(
    "value, text",
    [
        (None, ""),
        (True, "true"),
        (0.1, "0.1"),
        (1e-300, "1e-300"),
        (math.nan, "nan"),
        (frozenset({"b", "a"}), "a;b"),
        (3, "3"),
    ],
)
def test_format_cell(value, text):
    assert format_cell(value) == text


def test_csv_starts_with_header_lines():
    lines = _make_sweep().to_csv().splitlines()

    assert lines[0] == f"# {REPORT_FORMAT}"
    assert lines[1] == "# kind=sweep tool=risfso 0.1.0 seed=5"
    assert lines[2] == ",".join(SWEEP_COLUMNS)
    assert lines[3] == "c,op,mu_d_db,0.0,0.5,,,,,,"
    assert lines[4].endswith(",epsilon-split,")


def test_json_keeps_full_precision_and_config():
    report = _make_sweep()

    document = json.loads(report.to_json())

    assert document["format"] == REPORT_FORMAT
    assert document["seed"] == 5
    assert document["config"] == [{"sweep": {"metric": "op"}}]
    assert document["rows"][1]["flags"] == ["epsilon-split"]
    assert document["rows"][1]["closed_form"] == 0.25


def test_json_writes_non_finite_values_as_text():
    report = RunReport(
        [validation_row(check="a", measured=math.inf, passed=False)]
    )

    document = json.loads(report.to_json())

    assert document["rows"][0]["measured"] == "inf"


def test_write_and_render(tmp_path):
    report = _make_sweep()

    path = report.write(tmp_path / "out.json", fmt="json")

    assert path.read_text() == report.render("json")
    with pytest.raises(ValueError, match="unknown report format"):
        report.render("xml")
