"""
Hadamard, Fourier and Haar image transforms.

Classically G = P F Q with Q = P^T; for the column-major encoding this is
vec(G) = (P_L (x) P_M) vec(F), so the column transform runs on the first l
qubits and the row transform on the last m qubits of the register.
"""

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from qimp import gates
from qimp.circuit import Circuit
from qimp.decompose import elementary_gate_count
from qimp.errors import NotPowerOfTwoError, SplitMismatchError
from qimp.qpie import EncodingRecord, ImageMatrix
from qimp.statevector import Polarity

logger = logging.getLogger(__name__)


class TransformKind(str, Enum):
    HADAMARD = "hadamard"
    FOURIER = "fourier"
    HAAR = "haar"


@dataclass(frozen=True)
class QubitSplit:
    """col_qubits (l) are the most significant, row_qubits (m) the least."""

    col_qubits: int
    row_qubits: int

    def __post_init__(self):
        if self.col_qubits < 0 or self.row_qubits < 0:
            raise SplitMismatchError(f"negative qubit split {self}")

    @property
    def num_qubits(self) -> int:
        return self.col_qubits + self.row_qubits

    @classmethod
    def for_record(cls, record: EncodingRecord) -> "QubitSplit":
        return cls(_log2_exact(record.cols), _log2_exact(record.rows))


def _log2_exact(size: int) -> int:
    if size < 1 or size & (size - 1):
        raise NotPowerOfTwoError(f"{size} is not a power of two")
    return size.bit_length() - 1


# dense oracles

def hadamard_matrix(size: int) -> np.ndarray:
    m = _log2_exact(size)
    out = np.ones((1, 1))
    for _ in range(m):
        out = np.kron(out, gates.H.real)
    return out


def dft_matrix(size: int) -> np.ndarray:
    """omega^(jk) / sqrt(size) with omega = exp(2 pi i / size)."""
    _log2_exact(size)
    j, k = np.meshgrid(np.arange(size), np.arange(size), indexing="ij")
    return np.exp(2j * np.pi * j * k / size) / np.sqrt(size)


def haar_matrix(size: int) -> np.ndarray:
    """
    Orthogonal Haar matrix, built by doubling: the top half is the previous
    level applied to pairwise sums, the bottom half the pairwise differences.
    """
    m = _log2_exact(size)
    pair_sum = np.array([[1.0, 1.0]]) / np.sqrt(2.0)
    pair_diff = np.array([[1.0, -1.0]]) / np.sqrt(2.0)
    out = np.ones((1, 1))
    for level in range(m):
        half = 1 << level
        out = np.vstack([np.kron(out, pair_sum), np.kron(np.eye(half), pair_diff)])
    return out


def transform_matrix(kind: TransformKind, size: int) -> np.ndarray:
    kind = TransformKind(kind)
    if kind is TransformKind.HADAMARD:
        return hadamard_matrix(size)
    if kind is TransformKind.FOURIER:
        return dft_matrix(size)
    return haar_matrix(size)


# circuits

def hadamard_circuit(m: int) -> Circuit:
    circuit = Circuit(m)
    for qubit in range(1, m + 1):
        circuit.h(qubit)
    return circuit


def qft_circuit(m: int) -> Circuit:
    """
    H plus controlled phase rotations per qubit, then the qubit-order reversal
    swaps, so the matrix is exactly the DFT matrix.
    """
    circuit = Circuit(m)
    for target in range(1, m + 1):
        circuit.h(target)
        for control in range(target + 1, m + 1):
            order = control - target + 1
            circuit.controlled(gates.phase(2 * np.pi / (1 << order)), [control], [target],
                               name=f"R{order}")
    for qubit in range(1, m // 2 + 1):
        circuit.swap(qubit, m + 1 - qubit)
    return circuit


def haar_circuit(m: int) -> Circuit:
    """
    The doubling recursion unrolled into levels: level k applies H to the
    last qubit and then the cyclic shift on qubits k+1..m, both zero-controlled
    by qubits 1..k.
    """
    circuit = Circuit(m)
    for level in range(m):
        controls = list(range(1, level + 1))
        if controls:
            circuit.controlled(gates.H, controls, [m], Polarity.ZERO, name="H")
        else:
            circuit.h(m)
        if level <= m - 2:
            circuit.cyclic_right_shift(m - level, start=level + 1, controls=controls,
                                       polarity=Polarity.ZERO)
    return circuit


def transform_circuit(kind: TransformKind, m: int) -> Circuit:
    kind = TransformKind(kind)
    if kind is TransformKind.HADAMARD:
        return hadamard_circuit(m)
    if kind is TransformKind.FOURIER:
        return qft_circuit(m)
    return haar_circuit(m)


def two_dimensional_circuit(kind: TransformKind, split: QubitSplit) -> Circuit:
    """Column transform on qubits 1..l followed by row transform on l+1..l+m."""
    n = split.num_qubits
    circuit = Circuit(n)
    if split.col_qubits:
        circuit.extend(transform_circuit(kind, split.col_qubits).shifted(0, n))
    if split.row_qubits:
        circuit.extend(transform_circuit(kind, split.row_qubits).shifted(split.col_qubits, n))
    return circuit


def apply_2d(record: EncodingRecord, kind: TransformKind, split: QubitSplit | None = None,
             inverse: bool = False) -> EncodingRecord:
    kind = TransformKind(kind)
    expected = QubitSplit.for_record(record)
    split = expected if split is None else split
    if split != expected or split.num_qubits != record.num_qubits:
        raise SplitMismatchError(
            f"split {split} does not match a {record.rows}x{record.cols} image "
            f"on {record.num_qubits} qubits"
        )
    circuit = two_dimensional_circuit(kind, split)
    if inverse:
        circuit = circuit.inverse()
    logger.info("applying %s%s transform: %d steps on %d qubits",
                kind.value, " inverse" if inverse else "", len(circuit), record.num_qubits)
    return record.with_state(circuit.run(record.state))


def classical_transform(image: ImageMatrix, kind: TransformKind) -> ImageMatrix:
    """Dense G = P_M F P_L^T."""
    row_matrix = transform_matrix(kind, image.rows)
    col_matrix = transform_matrix(kind, image.cols)
    return ImageMatrix.from_complex(row_matrix @ image.complex_pixels @ col_matrix.T)


def haar_elementary_gate_count(m: int) -> int:
    """Gate count of haar_circuit(m) after the elementary expansion."""
    return elementary_gate_count(haar_circuit(m))
