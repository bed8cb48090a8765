"""
Dense state-vector simulator.

Qubit 1 is the most significant bit of the basis index and qubit n (the
"last qubit") the least significant one, so k = sum_j i_j * 2**(n - j).
States are immutable: every operation returns a new QuantumState whose
amplitude buffer is read-only.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from qimp.errors import (
    BadIndexError,
    DimensionMismatchError,
    NormTooFarError,
    NotPowerOfTwoError,
    OverlapError,
    ZeroProbabilityError,
    ZeroVectorError,
)
from qimp.gates import require_unitary

logger = logging.getLogger(__name__)

# Drift below this is left alone.
NORM_SILENT_TOL = 1e-9
# Drift at or above this is a caller bug, not rounding.
NORM_ERROR_TOL = 1e-3
GATE_UNITARY_TOL = 1e-12
BLOCK_UNITARY_TOL = 1e-10
DENSE_UNITARY_TOL = 1e-10
ZERO_PROBABILITY_TOL = 1e-15


class Polarity(str, Enum):
    """Which control value makes a controlled gate fire."""

    ZERO = "zero"
    ONE = "one"


@dataclass(frozen=True, eq=False)
class QuantumState:
    """Pure state over ``num_qubits`` qubits with 2**num_qubits amplitudes."""

    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.num_qubits < 0:
            raise BadIndexError(f"qubit count must be nonnegative, got {self.num_qubits}")
        amplitudes = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amplitudes.shape[0] != 1 << self.num_qubits:
            raise DimensionMismatchError(
                f"{amplitudes.shape[0]} amplitudes do not fit {self.num_qubits} qubits"
            )
        deviation = abs(np.linalg.norm(amplitudes) - 1.0)
        if deviation > NORM_SILENT_TOL:
            raise NormTooFarError(f"state norm deviates from 1 by {deviation:.3e}")
        amplitudes.setflags(write=False)
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def dimension(self) -> int:
        return self.amplitudes.shape[0]

    def basis_label(self, index: int) -> str:
        return format(index, f"0{self.num_qubits}b") if self.num_qubits else ""

    def __repr__(self) -> str:
        return f"QuantumState(num_qubits={self.num_qubits})"


def _settle(amplitudes: np.ndarray, num_qubits: int, normalize: bool = False) -> QuantumState:
    """Apply the norm tolerance split and wrap the buffer."""
    norm = float(np.linalg.norm(amplitudes))
    if norm == 0.0:
        raise ZeroVectorError("all amplitudes are zero")
    deviation = abs(norm - 1.0)
    if normalize or NORM_SILENT_TOL < deviation < NORM_ERROR_TOL:
        if not normalize:
            logger.debug("renormalizing drift of %.3e", deviation)
        amplitudes = amplitudes / norm
    elif deviation >= NORM_ERROR_TOL:
        raise NormTooFarError(f"state norm deviates from 1 by {deviation:.3e}")
    return QuantumState(num_qubits, amplitudes)


def _check_qubit(num_qubits: int, qubit: int) -> int:
    if isinstance(qubit, bool) or not isinstance(qubit, (int, np.integer)):
        raise BadIndexError(f"qubit index must be an integer, got {qubit!r}")
    if not 1 <= qubit <= num_qubits:
        raise BadIndexError(f"qubit {qubit} outside [1, {num_qubits}]")
    return int(qubit)


def _check_block(num_qubits: int, start: int, span: int) -> None:
    if span < 1:
        raise BadIndexError(f"span must be at least 1, got {span}")
    _check_qubit(num_qubits, start)
    _check_qubit(num_qubits, start + span - 1)


def zero_state(num_qubits: int) -> QuantumState:
    """|0...0> on ``num_qubits`` qubits."""
    if num_qubits < 0:
        raise BadIndexError(f"qubit count must be nonnegative, got {num_qubits}")
    amplitudes = np.zeros(1 << num_qubits, dtype=np.complex128)
    amplitudes[0] = 1.0
    return QuantumState(num_qubits, amplitudes)


def from_amplitudes(values: Iterable[complex], normalize: bool = False) -> QuantumState:
    """
    Build a state from raw amplitudes.

    With ``normalize`` false the tolerance split applies: drift up to 1e-9 is
    kept verbatim, drift below 1e-3 is renormalized, anything larger raises
    NormTooFarError. With ``normalize`` true any nonzero vector is scaled to
    unit norm.
    """
    if not isinstance(values, np.ndarray):
        values = list(values)
    amplitudes = np.array(values, dtype=np.complex128).reshape(-1)
    length = amplitudes.shape[0]
    if length == 0 or length & (length - 1):
        raise NotPowerOfTwoError(f"amplitude count {length} is not a power of two")
    return _settle(amplitudes, length.bit_length() - 1, normalize=normalize)


def probabilities(state: QuantumState) -> np.ndarray:
    return np.abs(state.amplitudes) ** 2


def apply_gate(state: QuantumState, gate: np.ndarray, target: int) -> QuantumState:
    """Apply a 2x2 unitary to ``target``, mixing index pairs that differ in that bit."""
    n = state.num_qubits
    target = _check_qubit(n, target)
    gate = require_unitary(gate, GATE_UNITARY_TOL)
    if gate.shape != (2, 2):
        raise DimensionMismatchError(f"single-qubit gate must be 2x2, got {gate.shape}")
    # stride view: (higher bits, target bit, lower bits)
    psi = state.amplitudes.reshape(1 << (target - 1), 2, 1 << (n - target))
    out = np.einsum("ab,ibj->iaj", gate, psi)
    return _settle(out.reshape(-1), n)


def _apply_block(psi: np.ndarray, gate: np.ndarray, targets: Sequence[int],
                 controls: Sequence[int]) -> None:
    """In-place: apply ``gate`` on ``targets`` where every control bit is 1."""
    index = [slice(None)] * psi.ndim
    for control in controls:
        index[control - 1] = 1
    index = tuple(index)
    block = psi[index]
    axes = [t - 1 - sum(1 for c in controls if c < t) for t in targets]
    k = len(targets)
    tensor = gate.reshape((2,) * (2 * k))
    updated = np.tensordot(tensor, block, axes=(list(range(k, 2 * k)), axes))
    psi[index] = np.moveaxis(updated, list(range(k)), axes)


def apply_controlled(state: QuantumState, gate: np.ndarray, controls: Iterable[int],
                     polarity: Polarity, targets: Sequence[int]) -> QuantumState:
    """
    Apply ``gate`` to ``targets`` on the subspace where every control matches
    ``polarity``; identity elsewhere.

    Zero-polarity controls are handled by conjugating one-polarity controls
    with X on each control qubit.
    """
    n = state.num_qubits
    controls = tuple(sorted({_check_qubit(n, c) for c in controls}))
    targets = tuple(_check_qubit(n, t) for t in targets)
    if len(set(targets)) != len(targets):
        raise OverlapError(f"repeated target qubit in {targets}")
    if set(controls) & set(targets):
        raise OverlapError(f"controls {controls} and targets {targets} overlap")
    gate = np.asarray(gate, dtype=np.complex128)
    if gate.shape != (1 << len(targets), 1 << len(targets)):
        raise DimensionMismatchError(
            f"gate of shape {gate.shape} does not act on {len(targets)} target qubit(s)"
        )
    gate = require_unitary(gate, BLOCK_UNITARY_TOL, "controlled block")
    polarity = Polarity(polarity)

    psi = np.array(state.amplitudes).reshape((2,) * n)
    flip_axes = tuple(c - 1 for c in controls) if polarity is Polarity.ZERO else ()
    if flip_axes:
        psi = np.flip(psi, axis=flip_axes).copy()
    _apply_block(psi, gate, targets, controls)
    if flip_axes:
        psi = np.flip(psi, axis=flip_axes)
    return _settle(psi.reshape(-1), n)


def apply_swap(state: QuantumState, qubit_a: int, qubit_b: int) -> QuantumState:
    """Exchange the amplitudes of basis indices whose two bits are swapped."""
    n = state.num_qubits
    qubit_a = _check_qubit(n, qubit_a)
    qubit_b = _check_qubit(n, qubit_b)
    if qubit_a == qubit_b:
        raise BadIndexError(f"cannot swap qubit {qubit_a} with itself")
    psi = state.amplitudes.reshape((2,) * n).swapaxes(qubit_a - 1, qubit_b - 1)
    return _settle(psi.reshape(-1), n)


def qubit_cyclic_right_shift(state: QuantumState, span: int, start: int = 1) -> QuantumState:
    """
    |i_1 ... i_s> -> |i_s i_1 ... i_{s-1}> on qubits start..start+span-1,
    carried out as span-1 swaps.
    """
    _check_block(state.num_qubits, start, span)
    for qubit in range(start + span - 2, start - 1, -1):
        state = apply_swap(state, qubit, qubit + 1)
    return state


def qubit_cyclic_left_shift(state: QuantumState, span: int, start: int = 1) -> QuantumState:
    """Inverse of :func:`qubit_cyclic_right_shift`."""
    _check_block(state.num_qubits, start, span)
    for qubit in range(start, start + span - 1):
        state = apply_swap(state, qubit, qubit + 1)
    return state


def _rotate(state: QuantumState, shift: int, start: int, span: int | None) -> QuantumState:
    n = state.num_qubits
    if n < 1:
        raise BadIndexError("amplitude rotation needs at least one qubit")
    span = n - start + 1 if span is None else span
    _check_block(n, start, span)
    psi = state.amplitudes.reshape(1 << (start - 1), 1 << span, 1 << (n - start - span + 1))
    return _settle(np.roll(psi, shift, axis=1).reshape(-1), n)


def amplitude_rotate_left(state: QuantumState, start: int = 1,
                          span: int | None = None) -> QuantumState:
    """(a_0, a_1, ..., a_{N-1}) -> (a_1, ..., a_{N-1}, a_0) over the chosen qubit block."""
    return _rotate(state, -1, start, span)


def amplitude_rotate_right(state: QuantumState, start: int = 1,
                           span: int | None = None) -> QuantumState:
    return _rotate(state, 1, start, span)


def condition_on_qubit(state: QuantumState, qubit: int,
                       outcome: int) -> tuple[QuantumState, float]:
    """
    Project ``qubit`` onto ``outcome`` and drop it.

    Returns the renormalized state on the remaining qubits together with the
    Born probability of the outcome. Deterministic: no sampling.
    """
    n = state.num_qubits
    qubit = _check_qubit(n, qubit)
    if outcome not in (0, 1):
        raise BadIndexError(f"measurement outcome must be 0 or 1, got {outcome!r}")
    psi = state.amplitudes.reshape(1 << (qubit - 1), 2, 1 << (n - qubit))
    branch = psi[:, outcome, :].reshape(-1)
    probability = float(np.vdot(branch, branch).real)
    if probability < ZERO_PROBABILITY_TOL:
        raise ZeroProbabilityError(
            f"outcome {outcome} on qubit {qubit} has probability {probability:.3e}"
        )
    return _settle(branch / np.sqrt(probability), n - 1), min(probability, 1.0)


def apply_dense_unitary(state: QuantumState, matrix: np.ndarray) -> QuantumState:
    matrix = np.asarray(matrix, dtype=np.complex128)
    if matrix.shape != (state.dimension, state.dimension):
        raise DimensionMismatchError(
            f"matrix of shape {matrix.shape} does not act on {state.num_qubits} qubits"
        )
    matrix = require_unitary(matrix, DENSE_UNITARY_TOL, "dense matrix")
    return _settle(matrix @ state.amplitudes, state.num_qubits)


def inner_product(a: QuantumState, b: QuantumState) -> complex:
    """<a|b> = sum_k conj(a_k) b_k."""
    if a.num_qubits != b.num_qubits:
        raise DimensionMismatchError(
            f"cannot take inner product of {a.num_qubits}- and {b.num_qubits}-qubit states"
        )
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def tensor(a: QuantumState, b: QuantumState) -> QuantumState:
    """|a> (x) |b>; ``a`` occupies the most significant qubits."""
    return _settle(np.kron(a.amplitudes, b.amplitudes), a.num_qubits + b.num_qubits)
