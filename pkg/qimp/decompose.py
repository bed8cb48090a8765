"""
Elementary-gate audit of circuits.

This expansion exists only to count gates; circuits always execute through
the multi-controlled simulator path. Rules:

  * zero-polarity controls are conjugated by X on every control;
  * a k-controlled SWAP becomes three (k+1)-controlled NOTs;
  * C^k(U) with k >= 2, except the Toffoli, becomes 2(k-1) Toffolis computing
    the AND of the controls into a work-qubit ladder plus one singly
    controlled U (work qubits are not allocated, only counted).

A RotateStep is kept as one named permutation.
"""

from collections import Counter
from dataclasses import dataclass

from qimp.circuit import Circuit, GateStep, RotateStep, SwapStep
from qimp.statevector import Polarity


@dataclass(frozen=True)
class ElementaryGate:
    name: str
    num_controls: int = 0


def _controlled(name: str, num_controls: int) -> list[ElementaryGate]:
    if num_controls <= 1 or (num_controls == 2 and name == "X"):
        return [ElementaryGate(name, num_controls)]
    ladder = [ElementaryGate("X", 2)] * (num_controls - 1)
    return ladder + [ElementaryGate(name, 1)] + ladder


def _zero_wrapped(gates: list[ElementaryGate], num_controls: int,
                  polarity: Polarity) -> list[ElementaryGate]:
    if polarity is Polarity.ONE or not num_controls:
        return gates
    flips = [ElementaryGate("X")] * num_controls
    return flips + gates + flips


def elementary_gates(circuit: Circuit) -> list[ElementaryGate]:
    out: list[ElementaryGate] = []
    for step in circuit:
        k = len(step.controls)
        if isinstance(step, SwapStep):
            body = [g for _ in range(3) for g in _controlled("X", k + 1)]
            out.extend(_zero_wrapped(body, k, step.polarity))
        elif isinstance(step, GateStep):
            out.extend(_zero_wrapped(_controlled(step.name, k), k, step.polarity))
        elif isinstance(step, RotateStep):
            out.append(ElementaryGate(step.name))
    return out


def elementary_gate_count(circuit: Circuit) -> int:
    return len(elementary_gates(circuit))


def elementary_gate_histogram(circuit: Circuit) -> dict[str, int]:
    counts = Counter(
        f"C{g.num_controls}({g.name})" if g.num_controls else g.name
        for g in elementary_gates(circuit)
    )
    return dict(sorted(counts.items()))
