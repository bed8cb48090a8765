#!/usr/bin/env python3
"""
3x3 masks as sparse operators.

Builds the operator for the identity, averaging and cross masks at a few
sizes and reports sparsity and unitarity, then filters the chessboard with
the cross mask read from cross.txt.
"""

import sys
from pathlib import Path

import numpy as np

from qimp.cli import configure_logging
from qimp.filtering import FilterMask, apply_filter, build_filter_operator, is_unitary, read_mask
from qimp.samples import chessboard

HERE = Path(__file__).parent


def main() -> int:
    configure_logging("WARNING")
    cross = read_mask(HERE / "cross.txt")
    masks = {"identity": FilterMask.identity(), "averaging": FilterMask.averaging(), "cross": cross}
    for name, mask in masks.items():
        for size in (4, 16, 64):
            op = build_filter_operator(mask, size)
            print(f"{name:9s} M={size:3d}: dim {op.dim:5d}, nnz {op.nnz:6d}, "
                  f"max row {op.max_row_nnz()}, unitary {is_unitary(op)}")

    filtered = apply_filter(chessboard(), cross)
    print("\ncross mask on the chessboard:")
    print(np.array2string(filtered.pixels * 2 * np.sqrt(2), precision=3))
    return 0


if __name__ == "__main__":
    sys.exit(main())
