"""
Gate-level circuits.

A Circuit is an ordered list of steps, each of which can run itself on a
QuantumState through the simulator and can also build its own dense matrix
from basis-index arithmetic. The dense path never touches the simulator, so
``Circuit.to_matrix`` is an independent oracle for ``Circuit.run``.
"""

import logging
from collections import Counter
from dataclasses import dataclass, replace
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from qimp import gates
from qimp.errors import BadIndexError, DimensionMismatchError, OverlapError
from qimp.statevector import (
    Polarity,
    QuantumState,
    amplitude_rotate_left,
    amplitude_rotate_right,
    apply_controlled,
    apply_gate,
    apply_swap,
)

logger = logging.getLogger(__name__)


def _bit(index: int, qubit: int, num_qubits: int) -> int:
    return (index >> (num_qubits - qubit)) & 1


def _with_bit(index: int, qubit: int, num_qubits: int, value: int) -> int:
    mask = 1 << (num_qubits - qubit)
    return (index | mask) if value else (index & ~mask)


def _fires(index: int, controls: Sequence[int], polarity: Polarity, num_qubits: int) -> bool:
    wanted = 1 if polarity is Polarity.ONE else 0
    return all(_bit(index, c, num_qubits) == wanted for c in controls)


@dataclass(frozen=True, eq=False)
class GateStep:
    """A (possibly controlled) unitary block on an ordered list of targets."""

    gate: np.ndarray
    targets: tuple[int, ...]
    controls: tuple[int, ...] = ()
    polarity: Polarity = Polarity.ONE
    name: str = "U"

    @property
    def qubits(self) -> tuple[int, ...]:
        return self.controls + self.targets

    def apply(self, state: QuantumState) -> QuantumState:
        if not self.controls and len(self.targets) == 1:
            return apply_gate(state, self.gate, self.targets[0])
        return apply_controlled(state, self.gate, self.controls, self.polarity, self.targets)

    def inverse(self) -> "GateStep":
        adjoint = self.gate.conj().T
        name = self.name if np.allclose(adjoint, self.gate) else f"{self.name}^dag"
        return replace(self, gate=adjoint, name=name)

    def shifted(self, offset: int) -> "GateStep":
        return replace(
            self,
            targets=tuple(t + offset for t in self.targets),
            controls=tuple(c + offset for c in self.controls),
        )

    def matrix(self, num_qubits: int) -> np.ndarray:
        dim = 1 << num_qubits
        k = len(self.targets)
        out = np.zeros((dim, dim), dtype=np.complex128)
        for index in range(dim):
            if not _fires(index, self.controls, self.polarity, num_qubits):
                out[index, index] = 1.0
                continue
            column = 0
            for target in self.targets:
                column = (column << 1) | _bit(index, target, num_qubits)
            for row in range(1 << k):
                image = index
                for position, target in enumerate(self.targets):
                    image = _with_bit(image, target, num_qubits, (row >> (k - 1 - position)) & 1)
                out[image, index] += self.gate[row, column]
        return out


@dataclass(frozen=True, eq=False)
class SwapStep:
    """Exchange of two qubits, optionally controlled."""

    qubit_a: int
    qubit_b: int
    controls: tuple[int, ...] = ()
    polarity: Polarity = Polarity.ONE
    name: str = "SWAP"

    @property
    def targets(self) -> tuple[int, ...]:
        return (self.qubit_a, self.qubit_b)

    @property
    def qubits(self) -> tuple[int, ...]:
        return self.controls + self.targets

    def apply(self, state: QuantumState) -> QuantumState:
        if not self.controls:
            return apply_swap(state, self.qubit_a, self.qubit_b)
        return apply_controlled(state, gates.SWAP, self.controls, self.polarity, self.targets)

    def inverse(self) -> "SwapStep":
        return self

    def shifted(self, offset: int) -> "SwapStep":
        return replace(
            self,
            qubit_a=self.qubit_a + offset,
            qubit_b=self.qubit_b + offset,
            controls=tuple(c + offset for c in self.controls),
        )

    def matrix(self, num_qubits: int) -> np.ndarray:
        dim = 1 << num_qubits
        out = np.zeros((dim, dim), dtype=np.complex128)
        for index in range(dim):
            image = index
            if _fires(index, self.controls, self.polarity, num_qubits):
                bit_a = _bit(index, self.qubit_a, num_qubits)
                bit_b = _bit(index, self.qubit_b, num_qubits)
                image = _with_bit(image, self.qubit_a, num_qubits, bit_b)
                image = _with_bit(image, self.qubit_b, num_qubits, bit_a)
            out[image, index] = 1.0
        return out


@dataclass(frozen=True, eq=False)
class RotateStep:
    """
    Named amplitude permutation: cyclic rotation of the sub-index formed by
    qubits start..start+span-1. shift=-1 is the rotate-left matrix with ones
    on the superdiagonal and in the bottom-left corner.
    """

    shift: int
    start: int
    span: int

    @property
    def name(self) -> str:
        return "rotate_left" if self.shift < 0 else "rotate_right"

    @property
    def targets(self) -> tuple[int, ...]:
        return tuple(range(self.start, self.start + self.span))

    @property
    def controls(self) -> tuple[int, ...]:
        return ()

    @property
    def qubits(self) -> tuple[int, ...]:
        return self.targets

    def apply(self, state: QuantumState) -> QuantumState:
        rotate = amplitude_rotate_left if self.shift < 0 else amplitude_rotate_right
        return rotate(state, self.start, self.span)

    def inverse(self) -> "RotateStep":
        return replace(self, shift=-self.shift)

    def shifted(self, offset: int) -> "RotateStep":
        return replace(self, start=self.start + offset)

    def matrix(self, num_qubits: int) -> np.ndarray:
        dim = 1 << num_qubits
        low = num_qubits - self.start - self.span + 1
        size = 1 << self.span
        out = np.zeros((dim, dim), dtype=np.complex128)
        for index in range(dim):
            sub = (index >> low) & (size - 1)
            moved = (sub + self.shift) % size
            out[index - (sub << low) + (moved << low), index] = 1.0
        return out


Step = Union[GateStep, SwapStep, RotateStep]


class Circuit:
    """Ordered gate applications on a fixed register of ``num_qubits`` qubits."""

    def __init__(self, num_qubits: int, steps: Iterable[Step] = ()):
        if num_qubits < 0:
            raise BadIndexError(f"qubit count must be nonnegative, got {num_qubits}")
        self.num_qubits = num_qubits
        self.steps: list[Step] = []
        for step in steps:
            self.append(step)

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[Step]:
        return iter(self.steps)

    def __repr__(self) -> str:
        return f"Circuit(num_qubits={self.num_qubits}, steps={len(self.steps)})"

    def append(self, step: Step) -> "Circuit":
        for qubit in step.qubits:
            if not 1 <= qubit <= self.num_qubits:
                raise BadIndexError(f"{step.name}: qubit {qubit} outside [1, {self.num_qubits}]")
        if set(step.controls) & set(step.targets):
            raise OverlapError(f"{step.name}: controls and targets overlap")
        if len(set(step.targets)) != len(step.targets):
            raise OverlapError(f"{step.name}: repeated target qubit")
        self.steps.append(step)
        return self

    def extend(self, other: "Circuit") -> "Circuit":
        if other.num_qubits != self.num_qubits:
            raise DimensionMismatchError(
                f"cannot extend a {self.num_qubits}-qubit circuit with a "
                f"{other.num_qubits}-qubit one"
            )
        for step in other:
            self.append(step)
        return self

    # builders

    def gate(self, gate: np.ndarray, target: int, name: str = "U") -> "Circuit":
        return self.append(GateStep(np.asarray(gate, dtype=np.complex128), (target,), name=name))

    def h(self, target: int) -> "Circuit":
        return self.gate(gates.H, target, "H")

    def x(self, target: int) -> "Circuit":
        return self.gate(gates.X, target, "X")

    def controlled(self, gate: np.ndarray, controls: Sequence[int], targets: Sequence[int],
                   polarity: Polarity = Polarity.ONE, name: str = "U") -> "Circuit":
        return self.append(GateStep(
            np.asarray(gate, dtype=np.complex128),
            tuple(targets),
            tuple(controls),
            Polarity(polarity),
            name,
        ))

    def swap(self, qubit_a: int, qubit_b: int, controls: Sequence[int] = (),
             polarity: Polarity = Polarity.ONE) -> "Circuit":
        return self.append(SwapStep(qubit_a, qubit_b, tuple(controls), Polarity(polarity)))

    def cyclic_right_shift(self, span: int, start: int = 1, controls: Sequence[int] = (),
                           polarity: Polarity = Polarity.ONE) -> "Circuit":
        """S on qubits start..start+span-1 as span-1 (controlled) swaps."""
        for qubit in range(start + span - 2, start - 1, -1):
            self.swap(qubit, qubit + 1, controls, polarity)
        return self

    def rotate_left(self, start: int = 1, span: int | None = None) -> "Circuit":
        span = self.num_qubits - start + 1 if span is None else span
        return self.append(RotateStep(-1, start, span))

    def rotate_right(self, start: int = 1, span: int | None = None) -> "Circuit":
        span = self.num_qubits - start + 1 if span is None else span
        return self.append(RotateStep(1, start, span))

    # transformations

    def inverse(self) -> "Circuit":
        return Circuit(self.num_qubits, (step.inverse() for step in reversed(self.steps)))

    def shifted(self, offset: int, num_qubits: int) -> "Circuit":
        """Relabel qubit q as q + offset inside a ``num_qubits`` register."""
        return Circuit(num_qubits, (step.shifted(offset) for step in self.steps))

    # evaluation

    def run(self, state: QuantumState) -> QuantumState:
        if state.num_qubits != self.num_qubits:
            raise DimensionMismatchError(
                f"{self.num_qubits}-qubit circuit cannot run on a {state.num_qubits}-qubit state"
            )
        for position, step in enumerate(self.steps):
            logger.debug("step %d: %s on %s", position, step.name, step.qubits)
            state = step.apply(state)
        return state

    def to_matrix(self) -> np.ndarray:
        out = np.eye(1 << self.num_qubits, dtype=np.complex128)
        for step in self.steps:
            out = step.matrix(self.num_qubits) @ out
        return out

    def counts(self) -> Counter:
        return Counter(step.name for step in self.steps)
