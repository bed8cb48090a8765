#!/usr/bin/env python3
"""
Edge detection on a 256x256 two-region image.

Both scans use the full-ancilla variant (17 qubits). The merged map is the
union of the column and row boundaries; it is written as edges.pgm next to
this file and compared with the classical neighbour differences.
"""

import sys
from pathlib import Path

import numpy as np

from qimp.cli import configure_logging
from qimp.edge import EdgeMethod, Scan, classical_edge_map, detect_edges
from qimp.pgm import write_image
from qimp.qpie import ImageMatrix
from qimp.samples import two_region_image

HERE = Path(__file__).parent


def main() -> int:
    configure_logging("INFO")
    image = two_region_image(256)
    combined = np.zeros(image.shape, dtype=bool)
    ok = True
    for scan in Scan:
        report = detect_edges(image, EdgeMethod.ANCILLA, scan)
        oracle = classical_edge_map(image, scan).pixels
        found = np.abs(report.edge_map.pixels) > 1e-9
        match = bool(np.array_equal(found, oracle != 0))
        ok &= match
        probability = report.results[0].success_probability
        print(f"{'✓' if match else '✗'} {scan.value:6s} scan: {report.boundary_pixels} boundary "
              f"pixels, success probability {probability:.4e}")
        combined |= found

    out = HERE / "edges.pgm"
    write_image(ImageMatrix(combined.astype(float)), out)
    print(f"merged map: {int(combined.sum())} pixels -> {out}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
