"""
Inversion-symmetry detection.

X on every qubit maps basis index k to 2^n - 1 - k, which for a power-of-two
image is the 180 degree rotation of the pixel grid. The overlap
<f|X^n|f> is 1 for an inversion-symmetric image; it is estimated with a
SWAP test between |f> and the rotated copy.
"""

import logging
from dataclasses import dataclass

import numpy as np

from qimp.circuit import Circuit
from qimp.errors import BadIndexError, DimensionMismatchError
from qimp.qpie import EncodingRecord
from qimp.statevector import QuantumState, from_amplitudes, inner_product, probabilities, tensor, zero_state

logger = logging.getLogger(__name__)

DEFAULT_SHOTS = 10_000
DEFAULT_THRESHOLD = 0.99
DEFAULT_MAX_CIRCUIT_QUBITS = 20


def rotation_circuit(num_qubits: int) -> Circuit:
    circuit = Circuit(num_qubits)
    for qubit in range(1, num_qubits + 1):
        circuit.x(qubit)
    return circuit


def rotate_180(state: QuantumState) -> QuantumState:
    if state.num_qubits < 1:
        raise BadIndexError("rotation needs at least one qubit")
    return from_amplitudes(state.amplitudes[::-1])


def inversion_overlap(state: QuantumState) -> complex:
    return inner_product(state, rotate_180(state))


@dataclass(frozen=True)
class OverlapEstimate:
    """
    ``analytic`` is the signed <a|b>; the SWAP test only sees
    ``overlap_squared`` = |<a|b>|^2, and ``sampled`` is its shot estimate
    2 * zero_frequency - 1 clamped to [0, 1].
    """

    analytic: complex
    overlap_squared: float
    probability_zero: float
    zero_frequency: float
    sampled: float
    shots: int
    seed: int | None
    method: str

    @property
    def standard_error(self) -> float:
        """Standard deviation of the zero frequency under the binomial draw."""
        p = self.probability_zero
        return float(np.sqrt(max(p * (1.0 - p), 0.0) / self.shots))


def swap_test_circuit(num_qubits: int) -> Circuit:
    """Ancilla on qubit 1, registers a on 2..n+1 and b on n+2..2n+1."""
    circuit = Circuit(2 * num_qubits + 1).h(1)
    for offset in range(1, num_qubits + 1):
        circuit.swap(1 + offset, 1 + num_qubits + offset, controls=[1])
    return circuit.h(1)


def _circuit_probability_zero(a: QuantumState, b: QuantumState) -> float:
    register = tensor(zero_state(1), tensor(a, b))
    final = swap_test_circuit(a.num_qubits).run(register)
    half = final.dimension // 2
    return float(np.sum(probabilities(final)[:half]))


def swap_test(a: QuantumState, b: QuantumState, shots: int = DEFAULT_SHOTS,
              seed: int | None = None,
              max_circuit_qubits: int = DEFAULT_MAX_CIRCUIT_QUBITS) -> OverlapEstimate:
    """
    P(ancilla = 0) = (1 + |<a|b>|^2) / 2. The 2n+1 qubit circuit is simulated
    when it fits in ``max_circuit_qubits``, otherwise the closed form is used.
    Shots are one binomial draw from ``numpy.random.default_rng(seed)``.
    """
    if a.num_qubits != b.num_qubits:
        raise DimensionMismatchError(
            f"SWAP test needs equal registers, got {a.num_qubits} and {b.num_qubits} qubits"
        )
    if shots < 1:
        raise ValueError(f"shots must be positive, got {shots}")
    analytic = inner_product(a, b)
    overlap_squared = float(abs(analytic) ** 2)
    if 2 * a.num_qubits + 1 <= max_circuit_qubits:
        method = "circuit"
        probability_zero = _circuit_probability_zero(a, b)
    else:
        method = "analytic"
        probability_zero = 0.5 * (1.0 + overlap_squared)
    probability_zero = float(np.clip(probability_zero, 0.0, 1.0))
    rng = np.random.default_rng(seed)
    zeros = int(rng.binomial(shots, probability_zero))
    zero_frequency = zeros / shots
    sampled = float(np.clip(2.0 * zero_frequency - 1.0, 0.0, 1.0))
    logger.info("SWAP test (%s): P(0)=%.6f, %d/%d zeros", method, probability_zero, zeros, shots)
    return OverlapEstimate(
        analytic=complex(analytic),
        overlap_squared=overlap_squared,
        probability_zero=probability_zero,
        zero_frequency=zero_frequency,
        sampled=sampled,
        shots=shots,
        seed=seed,
        method=method,
    )


@dataclass(frozen=True)
class SymmetryVerdict:
    overlap: complex
    estimate: OverlapEstimate
    threshold: float

    @property
    def symmetric(self) -> bool:
        return abs(self.overlap) >= self.threshold


def detect_symmetry(record: EncodingRecord, shots: int = DEFAULT_SHOTS, seed: int | None = None,
                    threshold: float = DEFAULT_THRESHOLD,
                    max_circuit_qubits: int = DEFAULT_MAX_CIRCUIT_QUBITS) -> SymmetryVerdict:
    if record.pad_len:
        logger.warning("%dx%d image is padded; reversal also moves the %d padding amplitudes",
                       record.rows, record.cols, record.pad_len)
    rotated = rotate_180(record.state)
    overlap = inner_product(record.state, rotated)
    estimate = swap_test(record.state, rotated, shots, seed, max_circuit_qubits)
    return SymmetryVerdict(complex(overlap), estimate, threshold)
