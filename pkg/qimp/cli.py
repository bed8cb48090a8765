"""
qimp command line.

    qimp encode IMAGE [--amplitudes amps.csv]
    qimp transform IMAGE --kind haar|fourier|hadamard [--inverse] [-o out.pgm]
    qimp edge IMAGE --variant even|odd|pairs|ancilla --scan column|row [--threshold T]
    qimp filter IMAGE --mask mask.txt|identity|averaging
    qimp symmetry IMAGE [--shots N] [--seed S]
    qimp compare IMAGE REFERENCE
    qimp sample NAME -o out.pgm [--size N]

Exit codes: 0 ok, 2 input error, 3 numeric or contract violation, 4 I/O
failure, 1 anything unexpected. Failures print one JSON line to stderr.
"""

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Callable

import numpy as np

from qimp import __version__
from qimp.config import BUILTIN_MASKS, LOG_LEVELS, PipelineConfig, load_config
from qimp.decompose import elementary_gate_count
from qimp.edge import EdgeMethod, Scan, classical_edge_map, detect_edges
from qimp.errors import ConfigError, QImpError
from qimp.filtering import (
    FilterMask,
    apply_filter,
    build_filter_operator,
    filter_encoded,
    is_unitary,
    read_mask,
)
from qimp.metrics import compare_images
from qimp.pgm import WriteMode, read_image, write_image
from qimp.qpie import ImageMatrix, decode, encode
from qimp.reports import format_amplitudes_csv, format_json, format_markdown, strip_timing, write_text
from qimp.samples import SAMPLES
from qimp.statevector import QuantumState
from qimp.symmetry import detect_symmetry, rotate_180
from qimp.transforms import (
    QubitSplit,
    TransformKind,
    apply_2d,
    classical_transform,
    two_dimensional_circuit,
)

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(level: str = "WARNING") -> None:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root = logging.getLogger("qimp")
    root.handlers[:] = [handler]
    root.setLevel(level.upper())


@dataclass
class RunResult:
    exit_code: int
    report: dict[str, Any]
    artifacts: list[str] = field(default_factory=list)


@dataclass
class _Outcome:
    """What a command hands back to ``run``."""

    summary: dict[str, Any]
    image: ImageMatrix | None = None
    write_mode: WriteMode = WriteMode.AUTO
    # result states keyed by label; one entry per post-selected run for edge
    states: dict[str, QuantumState | None] = field(default_factory=dict)
    runs: list[dict[str, Any]] = field(default_factory=list)
    gate_counts: dict[str, int] = field(default_factory=dict)


def _max_abs(a: ImageMatrix, b: ImageMatrix) -> float:
    return float(np.max(np.abs(a.complex_pixels - b.complex_pixels)))


def _encode(config: PipelineConfig) -> _Outcome:
    image = read_image(config.inputs[0])
    record = encode(image)
    decoded = decode(record, rescale=config.rescale)
    return _Outcome(
        summary={
            "rows": record.rows,
            "cols": record.cols,
            "num_qubits": record.num_qubits,
            "pad_len": record.pad_len,
            "scale": record.scale,
        },
        image=decoded,
        states={"encoded": record.state},
    )


def _transform(config: PipelineConfig) -> _Outcome:
    image = read_image(config.inputs[0])
    kind = TransformKind(config.transform_kind)
    record = encode(image)
    result = apply_2d(record, kind, inverse=config.inverse)
    circuit = two_dimensional_circuit(kind, QubitSplit.for_record(record))
    summary = {
        "kind": kind.value,
        "inverse": config.inverse,
        "num_qubits": record.num_qubits,
        "circuit_steps": len(circuit),
        "elementary_gates": elementary_gate_count(circuit),
    }
    if not config.inverse:
        summary["oracle_max_abs_error"] = _max_abs(decode(result), classical_transform(image, kind))
    return _Outcome(
        summary=summary,
        image=decode(result, rescale=config.rescale),
        write_mode=WriteMode.SIGNED,
        states={"transformed": result.state},
        gate_counts=dict(sorted(circuit.counts().items())),
    )


def _edge(config: PipelineConfig) -> _Outcome:
    image = read_image(config.inputs[0])
    report = detect_edges(image, EdgeMethod(config.edge_variant), Scan(config.scan),
                          config.threshold)
    summary = {
        "method": report.method.value,
        "scan": report.scan.value,
        "threshold": report.threshold,
        "num_qubits": report.record.num_qubits,
        "boundary_pixels": report.boundary_pixels,
    }
    if report.threshold == 0 and report.method in (EdgeMethod.PAIRS, EdgeMethod.ANCILLA):
        summary["oracle_max_abs_error"] = _max_abs(report.edge_map,
                                                   classical_edge_map(image, report.scan))
    runs = [
        {
            "variant": result.variant.value,
            "success_probability": result.success_probability,
            "processing_steps": len(result.circuit),
        }
        for result in report.results
    ]
    return _Outcome(
        summary=summary,
        image=report.edge_map,
        write_mode=WriteMode.AUTO if report.threshold > 0 else WriteMode.SIGNED,
        states={result.variant.value: result.state for result in report.results},
        runs=runs,
    )


def _mask(config: PipelineConfig) -> FilterMask:
    if config.mask is None or config.mask == "identity":
        return FilterMask.identity()
    if config.mask == "averaging":
        return FilterMask.averaging()
    return read_mask(config.mask)


def _filter(config: PipelineConfig) -> _Outcome:
    image = read_image(config.inputs[0])
    mask = _mask(config)
    record = encode(image)
    filtered = filter_encoded(record, mask)
    op = build_filter_operator(mask, image.rows)
    result = decode(filtered, rescale=config.rescale)
    return _Outcome(
        summary={
            "mask": config.mask or "identity",
            "dim": op.dim,
            "nnz": op.nnz,
            "unitary": is_unitary(op),
            "norm_factor": filtered.scale / record.scale,
            "oracle_max_abs_error": _max_abs(decode(filtered), apply_filter(image, mask)),
        },
        image=result,
        states={"filtered": filtered.state},
    )


def _symmetry(config: PipelineConfig) -> _Outcome:
    image = read_image(config.inputs[0])
    record = encode(image)
    verdict = detect_symmetry(record, config.shots, config.seed, config.symmetry_threshold,
                              config.max_circuit_qubits)
    estimate = verdict.estimate
    rotated = record.with_state(rotate_180(record.state))
    return _Outcome(
        summary={
            "overlap_real": verdict.overlap.real,
            "overlap_imag": verdict.overlap.imag,
            "overlap_abs": abs(verdict.overlap),
            "overlap_squared": estimate.overlap_squared,
            "probability_zero": estimate.probability_zero,
            "zero_frequency": estimate.zero_frequency,
            "sampled_overlap_squared": estimate.sampled,
            "shots": estimate.shots,
            "seed": estimate.seed,
            "method": estimate.method,
            "threshold": verdict.threshold,
            "symmetric": verdict.symmetric,
        },
        image=decode(rotated, rescale=config.rescale),
        states={"rotated": rotated.state},
    )


def _compare(config: PipelineConfig) -> _Outcome:
    image = read_image(config.inputs[0])
    reference = read_image(config.inputs[1])
    report = compare_images(image, reference)
    return _Outcome(summary={
        "relative_euclidean": report.relative_euclidean,
        "state_fidelity": report.state_fidelity,
        "max_abs_error": report.max_abs_error,
    })


def _sample(config: PipelineConfig) -> _Outcome:
    factory = SAMPLES[config.sample]
    if config.sample in ("two-region", "inversion-symmetric"):
        image = factory(config.sample_size)
    else:
        image = factory()
    return _Outcome(summary={"sample": config.sample, "rows": image.rows, "cols": image.cols},
                    image=image)


COMMAND_RUNNERS: dict[str, Callable[[PipelineConfig], _Outcome]] = {
    "encode": _encode,
    "transform": _transform,
    "edge": _edge,
    "filter": _filter,
    "symmetry": _symmetry,
    "compare": _compare,
    "sample": _sample,
}


def _amplitude_dumps(config: PipelineConfig, outcome: _Outcome) -> dict[str, QuantumState]:
    """
    CSV path per result state. A single state goes to the requested path;
    several (edge pairs mode) get the run label before the suffix.
    """
    if not outcome.states:
        raise ConfigError(f"{config.command} produces no quantum state to dump as amplitudes")
    empty = [label for label, state in outcome.states.items() if state is None]
    if empty:
        raise ConfigError(
            f"no amplitudes to dump: post-selected branch of {', '.join(empty)} is empty"
        )
    if len(outcome.states) == 1:
        return {config.amplitudes: next(iter(outcome.states.values()))}
    base = Path(config.amplitudes)
    return {
        str(base.with_name(f"{base.stem}-{label}{base.suffix}")): state
        for label, state in outcome.states.items()
    }


def run(config: PipelineConfig) -> RunResult:
    """Validate, execute one command and write its artifacts."""
    config.validate()
    started = time.perf_counter()
    outcome = COMMAND_RUNNERS[config.command](config)
    dumps = _amplitude_dumps(config, outcome) if config.amplitudes else {}
    artifacts = []
    if config.output and outcome.image is not None:
        mode = WriteMode(config.write_mode) if config.write_mode else outcome.write_mode
        write_image(outcome.image, config.output, mode, config.plain_pgm)
        artifacts.append(config.output)
    for path, state in dumps.items():
        write_text(path, format_amplitudes_csv(state))
        artifacts.append(path)

    report: dict[str, Any] = {
        "command": config.command,
        "inputs": list(config.inputs),
        "summary": outcome.summary,
        "runs": outcome.runs,
        "gate_counts": outcome.gate_counts,
        "artifacts": artifacts,
        "version": __version__,
        "generated_at": datetime.now(timezone.utc).isoformat(),
        "wall_time_seconds": time.perf_counter() - started,
    }
    if not config.include_timing:
        report = strip_timing(report)
    if config.report:
        artifacts.append(config.report)
        write_text(config.report, format_json(report) + "\n")
    logger.info("%s finished, %d artifact(s)", config.command, len(artifacts))
    return RunResult(0, report, artifacts)


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", help="YAML file with kebab-case settings")
    common.add_argument("--log-level", type=str.upper, choices=LOG_LEVELS)
    common.add_argument("--format", dest="report_format", choices=["markdown", "json"],
                        help="stdout summary format (default: markdown)")
    common.add_argument("--report", help="write the JSON report here")
    common.add_argument("--amplitudes", help="write the result state as CSV here")
    common.add_argument("-o", "--output", help="write the result image (PGM) here")
    common.add_argument("--write-mode", choices=[m.value for m in WriteMode])
    common.add_argument("--plain", dest="plain_pgm", action="store_true",
                        help="write plain (P2) instead of raw (P5) PGM")
    common.add_argument("--no-rescale", dest="rescale", action="store_false",
                        help="keep decoded images in amplitude units")
    common.add_argument("--deterministic", dest="include_timing", action="store_false",
                        help="omit timestamp and wall time from the report")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(prog="qimp", description="Quantum image processing lab")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help_text: str, inputs: int = 1) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text,
                           argument_default=argparse.SUPPRESS)
        if inputs:
            p.add_argument("inputs", nargs=inputs, metavar="IMAGE")
        return p

    command("encode", "encode an image and dump its state")

    p = command("transform", "2D Haar, Fourier or Hadamard transform")
    p.add_argument("--kind", dest="transform_kind", choices=[k.value for k in TransformKind])
    p.add_argument("--inverse", action="store_true")

    p = command("edge", "quantum Hadamard edge detection")
    p.add_argument("--variant", dest="edge_variant", choices=[m.value for m in EdgeMethod])
    p.add_argument("--scan", choices=[s.value for s in Scan])
    p.add_argument("--threshold", type=float)

    p = command("filter", "3x3 mask filtering")
    p.add_argument("--mask", help=f"mask file or one of: {', '.join(BUILTIN_MASKS)}")

    p = command("symmetry", "inversion symmetry via SWAP test")
    p.add_argument("--shots", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--symmetry-threshold", type=float)
    p.add_argument("--max-circuit-qubits", type=int)

    command("compare", "distance and fidelity between an image and a reference", inputs=2)

    p = command("sample", "write a built-in test image", inputs=0)
    p.add_argument("sample", choices=sorted(SAMPLES))
    p.add_argument("--size", dest="sample_size", type=int)
    return parser


def build_config(args: argparse.Namespace) -> PipelineConfig:
    """Defaults < YAML file < explicit flags."""
    explicit = vars(args).copy()
    values: dict[str, Any] = {}
    config_path = explicit.pop("config", None)
    if config_path:
        values.update(load_config(config_path))
    values.update(explicit)
    return PipelineConfig(**values)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging()
    try:
        config = build_config(args)
        if config.log_level in LOG_LEVELS:
            configure_logging(config.log_level)
        result = run(config)
    except QImpError as exc:
        logger.error("%s: %s", exc.category, exc)
        print(json.dumps({"error": exc.category, "message": str(exc)}), file=sys.stderr)
        return exc.exit_code
    except Exception as exc:  # pylint: disable=broad-except
        logger.exception("unexpected failure")
        print(json.dumps({"error": "unexpected", "message": str(exc)}), file=sys.stderr)
        return 1

    if config.report_format == "json":
        print(format_json(result.report))
    else:
        print(format_markdown(result.report))
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
