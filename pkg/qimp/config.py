"""
Pipeline configuration.

Values come from three layers, later ones winning: dataclass defaults (plus
QIMP_LOG_LEVEL from the environment), a YAML file with kebab-case keys, and
explicit command-line flags. Every key is declared once in SCHEMA with its
type and allowed values.
"""

import logging
import os
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any

import yaml

from qimp.edge import EdgeMethod, Scan
from qimp.errors import ConfigError, IoFailureError
from qimp.pgm import WriteMode
from qimp.samples import SAMPLES
from qimp.transforms import TransformKind

logger = logging.getLogger(__name__)

ENV_LOG_LEVEL = "QIMP_LOG_LEVEL"

COMMANDS = ("encode", "transform", "edge", "filter", "symmetry", "compare", "sample")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")
REPORT_FORMATS = ("markdown", "json")
BUILTIN_MASKS = ("identity", "averaging")

# key -> (type, choices, minimum, maximum)
SCHEMA: dict[str, tuple[type, tuple | None, float | None, float | None]] = {
    "inputs": (list, None, None, None),
    "output": (str, None, None, None),
    "report": (str, None, None, None),
    "amplitudes": (str, None, None, None),
    "transform-kind": (str, tuple(k.value for k in TransformKind), None, None),
    "inverse": (bool, None, None, None),
    "edge-variant": (str, tuple(m.value for m in EdgeMethod), None, None),
    "scan": (str, tuple(s.value for s in Scan), None, None),
    "mask": (str, None, None, None),
    "threshold": (float, None, 0.0, None),
    "shots": (int, None, 1, 10_000_000),
    "seed": (int, None, 0, None),
    "rescale": (bool, None, None, None),
    "log-level": (str, LOG_LEVELS, None, None),
    "report-format": (str, REPORT_FORMATS, None, None),
    "symmetry-threshold": (float, None, 0.0, 1.0),
    "include-timing": (bool, None, None, None),
    "max-circuit-qubits": (int, None, 3, 26),
    "write-mode": (str, tuple(w.value for w in WriteMode), None, None),
    "plain-pgm": (bool, None, None, None),
    "sample": (str, tuple(SAMPLES), None, None),
    "sample-size": (int, None, 2, 4096),
}

INPUT_COUNTS = {"compare": 2, "sample": 0}
# commands whose result is not a quantum state
STATELESS_COMMANDS = ("compare", "sample")


def _default_log_level() -> str:
    return os.environ.get(ENV_LOG_LEVEL, "WARNING").upper()


@dataclass
class PipelineConfig:
    command: str
    inputs: list[str] = field(default_factory=list)
    output: str | None = None
    report: str | None = None
    amplitudes: str | None = None
    transform_kind: str = TransformKind.HAAR.value
    inverse: bool = False
    edge_variant: str = EdgeMethod.PAIRS.value
    scan: str = Scan.COLUMN.value
    mask: str | None = None
    threshold: float = 0.0
    shots: int = 10_000
    seed: int = 0
    rescale: bool = True
    log_level: str = field(default_factory=_default_log_level)
    report_format: str = "markdown"
    symmetry_threshold: float = 0.99
    include_timing: bool = True
    max_circuit_qubits: int = 20
    write_mode: str | None = None
    plain_pgm: bool = False
    sample: str | None = None
    sample_size: int = 256

    def _check(self, key: str, value: Any) -> None:
        if value is None:
            return
        kind, choices, minimum, maximum = SCHEMA[key]
        if kind is float and isinstance(value, int) and not isinstance(value, bool):
            value = float(value)
        if (kind is int and isinstance(value, bool)) or not isinstance(value, kind):
            raise ConfigError(f"{key}: expected {kind.__name__}, got {value!r}")
        if choices is not None and value not in choices:
            raise ConfigError(f"{key}: {value!r} not one of {', '.join(choices)}")
        if minimum is not None and value < minimum:
            raise ConfigError(f"{key}: {value} below minimum {minimum}")
        if maximum is not None and value > maximum:
            raise ConfigError(f"{key}: {value} above maximum {maximum}")

    def validate(self) -> "PipelineConfig":
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        for f in fields(self):
            if f.name != "command":
                self._check(f.name.replace("_", "-"), getattr(self, f.name))
        expected = INPUT_COUNTS.get(self.command, 1)
        if len(self.inputs) != expected:
            raise ConfigError(f"{self.command} takes {expected} input file(s), got {len(self.inputs)}")
        for path in self.inputs:
            if not isinstance(path, str):
                raise ConfigError(f"inputs: expected file paths, got {path!r}")
            if not Path(path).is_file():
                raise ConfigError(f"input file {path} does not exist")
        if self.mask is not None and self.mask not in BUILTIN_MASKS and not Path(self.mask).is_file():
            raise ConfigError(f"mask file {self.mask} does not exist")
        if self.amplitudes is not None and self.command in STATELESS_COMMANDS:
            raise ConfigError(f"{self.command} has no result state to write as amplitudes")
        if self.command == "sample" and (self.sample is None or self.output is None):
            raise ConfigError("sample needs a sample name and an output path")
        return self


def load_config(path: str | Path) -> dict[str, Any]:
    """
    Read a YAML mapping of kebab-case keys and return it keyed by
    PipelineConfig field names. Unknown keys are an error.
    """
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise IoFailureError(f"cannot read config {path}: {exc}") from exc
    try:
        data = yaml.safe_load(text) or {}
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: invalid YAML: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    unknown = sorted(str(key) for key in data if key not in SCHEMA)
    if unknown:
        raise ConfigError(f"{path}: unknown keys {', '.join(unknown)}")
    values = {key.replace("-", "_"): value for key, value in data.items()}
    if "log_level" in values and isinstance(values["log_level"], str):
        values["log_level"] = values["log_level"].upper()
    logger.debug("loaded %d settings from %s", len(values), path)
    return values
