"""
Report formatters: JSON, markdown summary and the CSV amplitude dump.

A report is a plain dict with ``command``, ``inputs``, ``summary`` (flat
mapping of figures), optional ``runs`` (list of flat mappings),
``gate_counts`` and ``artifacts``; the timing keys ``generated_at`` and
``wall_time_seconds`` are present only when timing is enabled.
"""

import csv
import io
import json
from enum import Enum
from pathlib import Path
from typing import Any

import numpy as np

from qimp.errors import IoFailureError
from qimp.statevector import QuantumState

TIMING_KEYS = ("generated_at", "wall_time_seconds")


def _jsonable(value: Any) -> Any:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (complex, np.complexfloating)):
        return {"real": float(value.real), "imag": float(value.imag)}
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"cannot serialize {type(value).__name__}")


def format_json(report: dict[str, Any]) -> str:
    return json.dumps(report, indent=2, sort_keys=True, default=_jsonable)


def _cell(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, complex):
        return f"{value.real:.6g}{value.imag:+.6g}i"
    return str(_jsonable(value) if isinstance(value, (Enum, np.generic)) else value)


def format_markdown(report: dict[str, Any]) -> str:
    lines = [f"# qimp {report['command']} report"]
    if report.get("inputs"):
        lines.append(f"\n**Input:** {', '.join(report['inputs'])}")
    if "generated_at" in report:
        lines.append(f"**Date:** {report['generated_at']}")
    lines.append("\n## Summary")
    for key, value in report["summary"].items():
        lines.append(f"- {key.replace('_', ' ').capitalize()}: {_cell(value)}")

    runs = report.get("runs") or []
    if runs:
        columns = list(runs[0])
        lines.append("\n## Runs")
        lines.append("\n| " + " | ".join(columns) + " |")
        lines.append("|" + "|".join("---" for _ in columns) + "|")
        for run in runs:
            lines.append("| " + " | ".join(_cell(run[c]) for c in columns) + " |")

    if report.get("gate_counts"):
        lines.append("\n## Gate counts")
        for name, count in report["gate_counts"].items():
            lines.append(f"- {name}: {count}")

    if report.get("artifacts"):
        lines.append("\n## Artifacts")
        for path in report["artifacts"]:
            lines.append(f"- {path}")

    if "wall_time_seconds" in report:
        lines.append(f"\n_Wall time: {report['wall_time_seconds']:.3f} s_")
    return "\n".join(lines)


def format_amplitudes_csv(state: QuantumState) -> str:
    """index, basis label, real, imag; full float precision."""
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(["index", "basis", "real", "imag"])
    for index, amplitude in enumerate(state.amplitudes):
        writer.writerow([
            index,
            state.basis_label(index),
            format(float(amplitude.real), ".17g"),
            format(float(amplitude.imag), ".17g"),
        ])
    return output.getvalue()


def strip_timing(report: dict[str, Any]) -> dict[str, Any]:
    return {key: value for key, value in report.items() if key not in TIMING_KEYS}


def write_text(path: str | Path, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise IoFailureError(f"cannot write {path}: {exc}") from exc
