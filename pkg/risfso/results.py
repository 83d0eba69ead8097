import csv
import io
import json
import math
from collections.abc import Sequence

from risfso.row import Row

TOOL_VERSION = "0.1.0"
REPORT_FORMAT = "risfso-report v1"

SWEEP_COLUMNS = (
    "curve",
    "metric",
    "axis",
    "value",
    "closed_form",
    "asymptotic",
    "quadrature",
    "mc_estimate",
    "mc_std_error",
    "flags",
    "error",
)

VALIDATION_COLUMNS = (
    "check",
    "measured",
    "tolerance",
    "passed",
    "gating",
    "detail",
)


def format_cell(value):
    """Locale-free text for one CSV cell."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (frozenset, set, tuple, list)):
        return ";".join(sorted(str(v) for v in value))
    return str(value)


def _json_cell(value):
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    if isinstance(value, (frozenset, set)):
        return sorted(value)
    if isinstance(value, tuple):
        return list(value)
    return value


class RunReport(Sequence):
    """Rows of a sweep or validation run with the context that produced them."""

    def __init__(
        self,
        rows,
        *,
        column_names=None,
        kind="sweep",
        config=None,
        seed=None,
        version=TOOL_VERSION,
    ):
        self._all_rows = list(rows or [])
        self._column_names = (
            tuple(column_names) if column_names else self._infer_column_names()
        )
        self.kind = kind
        self.config = list(config or [])
        self.seed = seed
        self.version = version

    def _infer_column_names(self):
        if not self._all_rows:
            return ()
        first = self._all_rows[0]
        names = getattr(first, "names", None)
        if names:
            return tuple(names)
        if isinstance(first, dict):
            return tuple(first.keys())
        return ()

    def __iter__(self):
        return iter(self._all_rows)

    def __getitem__(self, key):
        return self._all_rows[key]

    def __len__(self):
        return len(self._all_rows)

    def __eq__(self, other):
        if isinstance(other, RunReport):
            return self._all_rows == other._all_rows
        if isinstance(other, (list, tuple)):
            return self._all_rows == list(other)
        return NotImplemented

    __hash__ = None

    def one(self):
        return self._all_rows[0] if self._all_rows else None

    def all(self):
        return list(self._all_rows)

    @property
    def column_names(self):
        return self._column_names

    @property
    def failures(self):
        """Rows whose ``passed`` column is false, advisory rows excluded."""
        return [row for row in self._failed() if self._gates(row)]

    @property
    def advisories(self):
        """Failed rows marked ``gating = false``; reported, never fatal."""
        return [row for row in self._failed() if not self._gates(row)]

    def _failed(self):
        if "passed" not in self._column_names:
            return []
        return [row for row in self._all_rows if not row["passed"]]

    def _gates(self, row):
        return "gating" not in self._column_names or row["gating"] is not False

    @property
    def passed(self):
        return not self.failures

    @property
    def flagged(self):
        if "flags" not in self._column_names:
            return []
        return [row for row in self._all_rows if row["flags"]]

    def column(self, name):
        return [row[name] for row in self._all_rows]

    def to_csv(self):
        buffer = io.StringIO()
        buffer.write(f"# {REPORT_FORMAT}\n")
        buffer.write(f"# kind={self.kind} tool=risfso {self.version} ")
        buffer.write(f"seed={format_cell(self.seed)}\n")
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self._column_names)
        for row in self._all_rows:
            writer.writerow(
                [format_cell(row[name]) for name in self._column_names]
            )
        return buffer.getvalue()

    def to_json(self):
        document = {
            "format": REPORT_FORMAT,
            "kind": self.kind,
            "version": self.version,
            "seed": self.seed,
            "config": self.config,
            "columns": list(self._column_names),
            "rows": [
                {name: _json_cell(row[name]) for name in self._column_names}
                for row in self._all_rows
            ],
        }
        return json.dumps(document, indent=2, sort_keys=False) + "\n"

    def render(self, fmt="csv"):
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"unknown report format '{fmt}'; use csv or json")

    def write(self, path, fmt="csv"):
        text = self.render(fmt)
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        return path


def sweep_row(**cells):
    return Row.from_dict(SWEEP_COLUMNS, cells)


def validation_row(**cells):
    cells.setdefault("gating", True)
    return Row.from_dict(VALIDATION_COLUMNS, cells)


__all__ = [
    "TOOL_VERSION",
    "REPORT_FORMAT",
    "SWEEP_COLUMNS",
    "VALIDATION_COLUMNS",
    "format_cell",
    "RunReport",
    "sweep_row",
    "validation_row",
]
