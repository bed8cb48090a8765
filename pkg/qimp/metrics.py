"""Image and state comparison metrics."""

from dataclasses import dataclass

import numpy as np

from qimp.errors import ShapeMismatchError, ZeroReferenceError
from qimp.qpie import ImageMatrix, encode
from qimp.statevector import QuantumState, inner_product


@dataclass(frozen=True)
class ComparisonReport:
    relative_euclidean: float
    state_fidelity: float
    max_abs_error: float


def _difference(a: ImageMatrix, b: ImageMatrix) -> np.ndarray:
    if a.shape != b.shape:
        raise ShapeMismatchError(f"cannot compare {a.shape} with {b.shape}")
    return a.complex_pixels - b.complex_pixels


def relative_distance(a: ImageMatrix, b: ImageMatrix) -> float:
    """||a - b||_F / ||b||_F with ``b`` the reference."""
    difference = _difference(a, b)
    reference = float(np.linalg.norm(b.complex_pixels))
    if reference == 0.0:
        raise ZeroReferenceError("reference image is all zero")
    return float(np.linalg.norm(difference)) / reference


def state_fidelity(a: QuantumState, b: QuantumState) -> float:
    """|<a|b>| for pure states."""
    return abs(inner_product(a, b))


def compare_images(a: ImageMatrix, b: ImageMatrix) -> ComparisonReport:
    """Distance and max error in pixel units plus the fidelity of the two encodings."""
    difference = _difference(a, b)
    return ComparisonReport(
        relative_euclidean=relative_distance(a, b),
        state_fidelity=state_fidelity(encode(a).state, encode(b).state),
        max_abs_error=float(np.max(np.abs(difference))),
    )
