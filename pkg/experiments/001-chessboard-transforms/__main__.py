#!/usr/bin/env python3
"""
Chessboard transforms.

Runs the 4x4 single-pixel chessboard through the Haar, Fourier and Hadamard
circuits, checks each against the dense classical transform and prints the
gate budget of every circuit.

    python experiments/001-chessboard-transforms
"""

import sys

import numpy as np

from qimp.cli import configure_logging
from qimp.decompose import elementary_gate_count, elementary_gate_histogram
from qimp.qpie import decode, encode
from qimp.samples import chessboard
from qimp.transforms import (
    QubitSplit,
    TransformKind,
    apply_2d,
    classical_transform,
    haar_elementary_gate_count,
    two_dimensional_circuit,
)


def main() -> int:
    configure_logging("INFO")
    image = chessboard()
    record = encode(image)
    split = QubitSplit.for_record(record)
    print(f"chessboard: {record.num_qubits} qubits, split {split.col_qubits}+{split.row_qubits}")

    failures = 0
    for kind in TransformKind:
        result = decode(apply_2d(record, kind))
        expected = classical_transform(image, kind)
        error = float(np.max(np.abs(result.complex_pixels - expected.complex_pixels)))
        circuit = two_dimensional_circuit(kind, split)
        mark = "✓" if error < 1e-10 else "✗"
        failures += error >= 1e-10
        print(f"{mark} {kind.value:9s} max error {error:.2e}, {len(circuit)} steps, "
              f"{elementary_gate_count(circuit)} elementary gates")
        print(f"  {elementary_gate_histogram(circuit)}")
        print(np.array2string(result.complex_pixels, precision=3, suppress_small=True))

    print("\nHaar elementary gates per register size:")
    for m in range(1, 11):
        print(f"  m={m:2d}: {haar_elementary_gate_count(m)}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
