"""
ReportFormatter service: renders results as text, JSON or CSV.

Rendering is deterministic for a given result; runtimes are the only
varying field and can be zeroed with include_runtime=False.
"""

import json
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from models.config import OUTPUT_FORMATS
from models.errors import ConfigError
from models.extremal_report import ExtremalReport
from models.verification_result import VerificationResult

_FLOAT_FORMAT = "%.12g"


def _frame_records(df: pd.DataFrame) -> List[Dict[str, Any]]:
    # numpy scalars and NaN become plain JSON values
    if df.empty:
        return []
    return json.loads(df.to_json(orient="records", double_precision=15))


def _frame_text(df: pd.DataFrame) -> str:
    if df.empty:
        return "(no rows)"
    return df.to_string(index=False, float_format=lambda x: _FLOAT_FORMAT % x)


def _frame_csv(df: pd.DataFrame) -> str:
    return df.to_csv(index=False, float_format=_FLOAT_FORMAT, lineterminator="\n").rstrip("\n")


class ReportFormatter:
    """Turns results into the configured output format."""

    def __init__(self, output_format: str = "text", include_runtime: bool = True):
        """Initialize the formatter.

        Args:
            output_format: text, json or csv
            include_runtime: Write measured runtimes; False writes 0 for reproducible output

        Raises:
            ConfigError: If the format is unknown
        """
        if output_format not in OUTPUT_FORMATS:
            raise ConfigError(f"output format must be one of {', '.join(OUTPUT_FORMATS)}, got {output_format!r}")
        self._format = output_format
        self._include_runtime = include_runtime

    def get_format(self) -> str:
        return self._format

    def _json(self, payload: Any) -> str:
        return json.dumps(payload, indent=2, sort_keys=False)

    # Extremal reports
    def format_report(self, report: ExtremalReport) -> str:
        """Render one extremal search result."""
        data = report.to_dict(include_runtime=self._include_runtime)
        if self._format == "json":
            return self._json(data)
        if self._format == "csv":
            rows = [
                {"n": data["n"], "k": data["k"], "mode": data["mode"], "objective": data["objective"],
                 "min_rho": data["min_rho"], "class_size": data["class_size"],
                 "graph6": m["graph6"], "rho": m["rho"], "family": m["family"] or "",
                 "is_tree": m["is_tree"], "runtime_ms": data["runtime_ms"]}
                for m in data["minimizers"]
            ]
            columns = ["n", "k", "mode", "objective", "min_rho", "class_size", "graph6", "rho",
                       "family", "is_tree", "runtime_ms"]
            return _frame_csv(pd.DataFrame(rows, columns=columns))

        label = "min_rho" if report.get_objective() == "min" else "max_rho"
        rho = "none" if data["min_rho"] is None else f"{data['min_rho']:.12f}"
        lines = [
            f"n={data['n']} k={data['k']} mode={data['mode']} objective={data['objective']}",
            f"class_size: {data['class_size']}",
            f"{label}: {rho}",
            f"extremizers: {len(data['minimizers'])}",
        ]
        for m in report.get_minimizers():
            lines.append(f"  {m}")
        if report.is_near_tie():
            lines.append(f"tie_confirmed: {report.get_tie_confirmed()}")
        for note in data["notes"]:
            lines.append(f"note: {note}")
        lines.append(f"runtime_ms: {data['runtime_ms']}")
        return "\n".join(lines)

    # Verification results
    def format_verification(self, result: VerificationResult) -> str:
        """Render a verification sweep with its table."""
        table = result.get_table()
        if self._format == "json":
            return self._json({
                "case": result.get_case(),
                "passed": result.is_passed(),
                "message": result.get_message(),
                "counterexample": result.get_counterexample(),
                "rows": _frame_records(table),
                "notes": result.get_notes(),
            })
        if self._format == "csv":
            return _frame_csv(table)
        lines = [str(result), _frame_text(table)]
        if result.get_counterexample():
            lines.append(f"counterexample: {result.get_counterexample()}")
        lines.extend(f"note: {note}" for note in result.get_notes())
        return "\n".join(lines)

    # Plain tables and records
    def format_table(self, df: pd.DataFrame) -> str:
        if self._format == "json":
            return self._json(_frame_records(df))
        if self._format == "csv":
            return _frame_csv(df)
        return _frame_text(df)

    def format_record(self, record: Dict[str, Any], order: Optional[Sequence[str]] = None) -> str:
        """Render a flat key/value record (diss, rho and similar one-graph answers)."""
        keys = list(order) if order else list(record)
        if self._format == "json":
            return self._json({key: record[key] for key in keys})
        if self._format == "csv":
            return _frame_csv(pd.DataFrame([{key: record[key] for key in keys}], columns=keys))
        return "\n".join(f"{key}: {record[key]}" for key in keys)
