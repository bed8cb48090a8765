"""
3x3 spatial filtering as a sparse M^2 x M^2 operator on the column-major
amplitude vector.

With k = i + M*j the outer (block) index is the image column j and the inner
index the row i, so

    U = (J S_-1) (x) V_1 + J (x) V_2 + (J S_+1) (x) V_3 + B (x) I

where J = diag(0, 1, ..., 1, 0) keeps the interior block rows, B = I - J puts
identity blocks on the first and last block rows, and V_v carries mask column
v on its interior rows (V_2 additionally has unit first and last rows).
"""

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import sparse

from qimp.errors import (
    IoFailureError,
    MaskFormatError,
    NotPowerOfTwoError,
    ShapeMismatchError,
    TooSmallError,
    ZeroImageError,
)
from qimp.qpie import EncodingRecord, ImageMatrix, unvectorize, vectorize
from qimp.statevector import from_amplitudes

logger = logging.getLogger(__name__)

MIN_SIZE = 4


@dataclass(frozen=True, eq=False)
class FilterMask:
    """Weights w[u-1, v-1]; u walks rows (i+u-2), v walks columns (j+v-2)."""

    weights: np.ndarray

    def __post_init__(self):
        weights = np.array(self.weights, dtype=np.float64)
        if weights.shape != (3, 3):
            raise MaskFormatError(f"mask must be 3x3, got shape {weights.shape}")
        if not np.all(np.isfinite(weights)):
            raise MaskFormatError("mask weights must be finite")
        weights.setflags(write=False)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def identity(cls) -> "FilterMask":
        weights = np.zeros((3, 3))
        weights[1, 1] = 1.0
        return cls(weights)

    @classmethod
    def averaging(cls) -> "FilterMask":
        return cls(np.full((3, 3), 1.0 / 9.0))

    def column(self, v: int) -> np.ndarray:
        """(w_1v, w_2v, w_3v) for v in 1..3."""
        return self.weights[:, v - 1]


@dataclass(frozen=True, eq=False)
class SparseOperator:
    matrix: sparse.csr_matrix

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def nnz(self) -> int:
        return self.matrix.nnz

    def max_row_nnz(self) -> int:
        return int(np.diff(self.matrix.indptr).max(initial=0))

    def to_dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def matvec(self, values: np.ndarray) -> np.ndarray:
        return self.matrix @ np.asarray(values)


def read_mask(path: str | Path) -> FilterMask:
    """Plain text, three lines of three whitespace-separated reals."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise IoFailureError(f"cannot read mask {path}: {exc}") from exc
    rows = [line.split() for line in text.splitlines() if line.strip()]
    if len(rows) != 3 or any(len(row) != 3 for row in rows):
        raise MaskFormatError(f"{path}: expected 3 lines of 3 numbers")
    try:
        weights = [[float(token) for token in row] for row in rows]
    except ValueError as exc:
        raise MaskFormatError(f"{path}: {exc}") from exc
    return FilterMask(weights)


def _check_size(size: int) -> None:
    if size < MIN_SIZE:
        raise TooSmallError(f"filter operator needs M >= {MIN_SIZE}, got {size}")
    if size & (size - 1):
        raise NotPowerOfTwoError(f"filter operator needs a power-of-two M, got {size}")


def _band(weights: np.ndarray, size: int) -> sparse.dia_matrix:
    # row i gets w_1v at i-1, w_2v at i, w_3v at i+1
    return sparse.diags(list(weights), offsets=[-1, 0, 1], shape=(size, size))


def build_filter_operator(mask: FilterMask, size: int) -> SparseOperator:
    _check_size(size)
    interior = sparse.diags(np.r_[0.0, np.ones(size - 2), 0.0])
    border = sparse.identity(size) - interior
    v1 = interior @ _band(mask.column(1), size)
    v2 = interior @ _band(mask.column(2), size) + border
    v3 = interior @ _band(mask.column(3), size)
    below = interior @ sparse.eye(size, k=-1)
    above = interior @ sparse.eye(size, k=1)
    matrix = (
        sparse.kron(below, v1)
        + sparse.kron(interior, v2)
        + sparse.kron(above, v3)
        + sparse.kron(border, sparse.identity(size))
    ).tocsr()
    matrix.eliminate_zeros()
    logger.debug("filter operator for M=%d: %d nonzeros", size, matrix.nnz)
    return SparseOperator(matrix)


def is_unitary(op: SparseOperator, tol: float = 1e-12) -> bool:
    """U^T U = I within ``tol`` (the operator is real)."""
    gram = (op.matrix.T @ op.matrix - sparse.identity(op.dim, format="csr")).tocsr()
    if gram.nnz == 0:
        return True
    return float(np.max(np.abs(gram.data))) <= tol


def _square_size(rows: int, cols: int) -> int:
    if rows != cols:
        raise ShapeMismatchError(f"filtering needs a square image, got {rows}x{cols}")
    return rows


def apply_filter(image: ImageMatrix, mask: FilterMask) -> ImageMatrix:
    size = _square_size(image.rows, image.cols)
    op = build_filter_operator(mask, size)
    return ImageMatrix(unvectorize(op.matvec(vectorize(image)), size, size))


def filter_encoded(record: EncodingRecord, mask: FilterMask) -> EncodingRecord:
    """
    Apply the operator to the amplitude vector and re-encode. The operator is
    generally not unitary, so the result is renormalized and the lost norm is
    folded into the record's scale; decoding gives the filtered image.
    """
    size = _square_size(record.rows, record.cols)
    op = build_filter_operator(mask, size)
    filtered = op.matvec(record.state.amplitudes[: record.num_pixels])
    norm = float(np.linalg.norm(filtered))
    if norm == 0.0:
        raise ZeroImageError("filtered image is identically zero")
    if not is_unitary(op):
        logger.info("non-unitary filter applied classically, norm factor %.6f", norm)
    state = from_amplitudes(filtered / norm)
    return EncodingRecord(state, record.rows, record.cols, record.scale * norm, 0)
