"""
Quantum Hadamard edge detection (QHED).

Neighbouring pixels of a column sit at basis indices b...b0 / b...b1, so one
Hadamard on the last qubit turns each pair into (sum, difference); keeping
the outcome-1 branch of the last qubit leaves the differences. The odd pairs
come from rotating the amplitudes left by one first, and the ancilla variant
gets every neighbour difference in a single pass.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from qimp.circuit import Circuit
from qimp.errors import BadIndexError, ZeroProbabilityError
from qimp.qpie import EncodingRecord, ImageMatrix, encode, transpose_encode, unvectorize
from qimp.statevector import QuantumState, condition_on_qubit, tensor, zero_state

logger = logging.getLogger(__name__)


class EdgeVariant(str, Enum):
    EVEN_PAIRS = "even_pairs"
    ODD_PAIRS = "odd_pairs"
    ANCILLA_FULL = "ancilla_full"


class EdgeMethod(str, Enum):
    """What edge_map runs: one pair scan, both pair scans, or the ancilla pass."""

    EVEN = "even"
    ODD = "odd"
    PAIRS = "pairs"
    ANCILLA = "ancilla"


class Scan(str, Enum):
    COLUMN = "column"
    ROW = "row"


@dataclass(frozen=True, eq=False)
class BoundaryResult:
    """
    Outcome of one QHED run.

    ``differences`` are the amplitudes of the outcome-1 branch before
    renormalization, i.e. (c_a - c_b) * amplitude_factor^-1; ``state`` is the
    renormalized conditional state (None when the branch is empty).
    """

    differences: np.ndarray
    success_probability: float
    variant: EdgeVariant
    scan: Scan
    amplitude_factor: float
    circuit: Circuit
    state: QuantumState | None = None

    @property
    def has_edges(self) -> bool:
        return self.success_probability > 0.0

    def pixel_offsets(self) -> np.ndarray:
        """Index of the first pixel of the pair behind each difference."""
        count = self.differences.shape[0]
        if self.variant is EdgeVariant.EVEN_PAIRS:
            return 2 * np.arange(count)
        if self.variant is EdgeVariant.ODD_PAIRS:
            return 2 * np.arange(count) + 1
        return np.arange(count)


def _real_if_close(values: np.ndarray) -> np.ndarray:
    return np.real_if_close(values, tol=1000)


def _post_select(circuit: Circuit, state: QuantumState, variant: EdgeVariant, scan: Scan,
                 amplitude_factor: float) -> BoundaryResult:
    processed = circuit.run(state)
    last = processed.num_qubits
    try:
        conditional, probability = condition_on_qubit(processed, last, 1)
    except ZeroProbabilityError:
        logger.warning("%s scan (%s): no boundary content, all pairs cancel",
                       scan.value, variant.value)
        size = 1 << (last - 1)
        return BoundaryResult(np.zeros(size), 0.0, variant, scan, amplitude_factor, circuit)
    differences = _real_if_close(conditional.amplitudes * np.sqrt(probability))
    logger.info("%s scan (%s): success probability %.6f", scan.value, variant.value, probability)
    return BoundaryResult(differences, probability, variant, scan, amplitude_factor, circuit,
                          conditional)


def _require_qubits(record: EncodingRecord) -> int:
    if record.num_qubits < 1:
        raise BadIndexError("edge detection needs an image of at least two pixels")
    return record.num_qubits


def qhed_even(record: EncodingRecord, scan: Scan = Scan.COLUMN) -> BoundaryResult:
    """One Hadamard on the last qubit: d_k = (c_2k - c_2k+1) / sqrt(2)."""
    n = _require_qubits(record)
    circuit = Circuit(n).h(n)
    return _post_select(circuit, record.state, EdgeVariant.EVEN_PAIRS, Scan(scan), np.sqrt(2.0))


def qhed_odd(record: EncodingRecord, scan: Scan = Scan.COLUMN) -> BoundaryResult:
    """
    Rotate amplitudes left, then Hadamard: d_k = (c_2k+1 - c_2k+2) / sqrt(2),
    the last slot carrying the wrap term c_N-1 - c_0.
    """
    n = _require_qubits(record)
    circuit = Circuit(n).rotate_left().h(n)
    return _post_select(circuit, record.state, EdgeVariant.ODD_PAIRS, Scan(scan), np.sqrt(2.0))


def redundant_state(state: QuantumState) -> QuantumState:
    """|f> (x) H|0>: every amplitude duplicated, scaled by 2^-1/2."""
    redundant = tensor(state, zero_state(1))
    return Circuit(redundant.num_qubits).h(redundant.num_qubits).run(redundant)


def qhed_ancilla(record: EncodingRecord, scan: Scan = Scan.COLUMN) -> BoundaryResult:
    """
    Ancilla variant: H on the appended qubit, rotate the n+1 qubit amplitudes
    left, H on the last qubit; d_k = (c_k - c_k+1) / 2 for every k, cyclically.
    """
    n = _require_qubits(record)
    circuit = Circuit(n + 1).rotate_left().h(n + 1)
    return _post_select(circuit, redundant_state(record.state), EdgeVariant.ANCILLA_FULL,
                        Scan(scan), 2.0)


_RUNNERS = {
    EdgeVariant.EVEN_PAIRS: qhed_even,
    EdgeVariant.ODD_PAIRS: qhed_odd,
    EdgeVariant.ANCILLA_FULL: qhed_ancilla,
}

_METHOD_VARIANTS = {
    EdgeMethod.EVEN: (EdgeVariant.EVEN_PAIRS,),
    EdgeMethod.ODD: (EdgeVariant.ODD_PAIRS,),
    EdgeMethod.PAIRS: (EdgeVariant.EVEN_PAIRS, EdgeVariant.ODD_PAIRS),
    EdgeMethod.ANCILLA: (EdgeVariant.ANCILLA_FULL,),
}


@dataclass(frozen=True, eq=False)
class EdgeReport:
    """Signed difference map plus every run that went into it."""

    edge_map: ImageMatrix
    record: EncodingRecord
    method: EdgeMethod
    scan: Scan
    threshold: float
    results: list[BoundaryResult] = field(default_factory=list)

    @property
    def boundary_pixels(self) -> int:
        return int(np.count_nonzero(self.edge_map.pixels))


def _assemble(record: EncodingRecord, results: list[BoundaryResult]) -> np.ndarray:
    """
    Place pixel-unit differences F[i] - F[i+1] at the first pixel of each pair.
    Pairs that are not vertical neighbours (column seam, padding, global wrap)
    are dropped.
    """
    flat = np.zeros(record.num_pixels)
    for result in results:
        values = np.real(result.differences) * result.amplitude_factor * record.scale
        offsets = result.pixel_offsets()
        keep = (offsets < record.num_pixels) & (offsets % record.rows != record.rows - 1)
        flat[offsets[keep]] = values[keep]
    return unvectorize(flat, record.rows, record.cols)


def detect_edges(image: ImageMatrix, method: EdgeMethod = EdgeMethod.PAIRS,
                 scan: Scan = Scan.COLUMN, threshold: float = 0.0) -> EdgeReport:
    """
    Run the chosen QHED variant(s) on the column scan (vertical neighbours,
    horizontal boundaries) or the row scan (transpose encoding) and rebuild the
    boundary image in pixel units. A positive ``threshold`` turns the signed map
    into a 0/1 map of |difference| > threshold.
    """
    method, scan = EdgeMethod(method), Scan(scan)
    if threshold < 0:
        raise ValueError(f"threshold must be nonnegative, got {threshold}")
    record = encode(image) if scan is Scan.COLUMN else transpose_encode(image)
    results = [_RUNNERS[variant](record, scan) for variant in _METHOD_VARIANTS[method]]
    grid = _assemble(record, results)
    if scan is Scan.ROW:
        grid = grid.T
    if threshold > 0:
        grid = (np.abs(grid) > threshold).astype(np.float64)
    return EdgeReport(ImageMatrix(grid), record, method, scan, threshold, results)


def classical_edge_map(image: ImageMatrix, scan: Scan = Scan.COLUMN) -> ImageMatrix:
    """Neighbour differences F[i] - F[i+1] (column scan) or F[:, j] - F[:, j+1]."""
    pixels = image.pixels
    out = np.zeros_like(pixels)
    if Scan(scan) is Scan.COLUMN:
        out[:-1, :] = pixels[:-1, :] - pixels[1:, :]
    else:
        out[:, :-1] = pixels[:, :-1] - pixels[:, 1:]
    return ImageMatrix(out)


def edge_map(image: ImageMatrix, method: EdgeMethod = EdgeMethod.PAIRS,
             scan: Scan = Scan.COLUMN, threshold: float = 0.0) -> ImageMatrix:
    return detect_edges(image, method, scan, threshold).edge_map
