"""
Amplitude encoding of images (QPIE).

An M x L image F is flattened column by column, k = i + M*j, and stored as
c_k = F_ij / sqrt(sum F^2) in a ceil(log2(M*L))-qubit state; indices past
M*L carry exactly zero amplitude.
"""

import logging
import math
from dataclasses import dataclass, replace

import numpy as np

from qimp.errors import InconsistentShapeError, ZeroImageError
from qimp.statevector import QuantumState, from_amplitudes

logger = logging.getLogger(__name__)

IMAGINARY_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class ImageMatrix:
    """
    M x L grid of real pixel values.

    ``imaginary`` holds the imaginary part when the image came out of a complex
    transform and it is not negligible; None otherwise.
    """

    pixels: np.ndarray
    imaginary: np.ndarray | None = None

    def __post_init__(self):
        pixels = np.array(self.pixels, dtype=np.float64)
        if pixels.ndim == 1:
            pixels = pixels.reshape(1, -1)
        if pixels.ndim != 2 or 0 in pixels.shape:
            raise InconsistentShapeError(f"image must be a non-empty 2D grid, got {pixels.shape}")
        if not np.all(np.isfinite(pixels)):
            raise InconsistentShapeError("image contains non-finite pixel values")
        pixels.setflags(write=False)
        object.__setattr__(self, "pixels", pixels)
        if self.imaginary is not None:
            imaginary = np.array(self.imaginary, dtype=np.float64).reshape(pixels.shape)
            imaginary.setflags(write=False)
            object.__setattr__(self, "imaginary", imaginary)

    @classmethod
    def from_complex(cls, values: np.ndarray) -> "ImageMatrix":
        values = np.asarray(values)
        imaginary = np.imag(values)
        if np.max(np.abs(imaginary), initial=0.0) <= IMAGINARY_TOL:
            return cls(np.real(values))
        return cls(np.real(values), imaginary)

    @property
    def rows(self) -> int:
        return self.pixels.shape[0]

    @property
    def cols(self) -> int:
        return self.pixels.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.pixels.shape

    @property
    def complex_pixels(self) -> np.ndarray:
        if self.imaginary is None:
            return self.pixels.astype(np.complex128)
        return self.pixels + 1j * self.imaginary

    def transposed(self) -> "ImageMatrix":
        imaginary = None if self.imaginary is None else self.imaginary.T
        return ImageMatrix(self.pixels.T, imaginary)


@dataclass(frozen=True, eq=False)
class EncodingRecord:
    """An encoded image: the state plus what is needed to undo the encoding."""

    state: QuantumState
    rows: int
    cols: int
    scale: float
    pad_len: int

    @property
    def num_qubits(self) -> int:
        return self.state.num_qubits

    @property
    def num_pixels(self) -> int:
        return self.rows * self.cols

    def with_state(self, state: QuantumState) -> "EncodingRecord":
        return replace(self, state=state)


def qubits_for(num_pixels: int) -> int:
    return max(0, math.ceil(math.log2(num_pixels)))


def vectorize(image: ImageMatrix) -> np.ndarray:
    """Column-major flattening: the first M entries are the first column."""
    return image.pixels.ravel(order="F")


def unvectorize(values: np.ndarray, rows: int, cols: int) -> np.ndarray:
    values = np.asarray(values)
    if values.shape[0] != rows * cols:
        raise InconsistentShapeError(f"{values.shape[0]} values cannot fill a {rows}x{cols} grid")
    return values.reshape((rows, cols), order="F")


def encode(image: ImageMatrix) -> EncodingRecord:
    values = vectorize(image)
    scale = float(np.linalg.norm(values))
    if scale == 0.0:
        raise ZeroImageError("cannot encode an image whose pixels are all zero")
    num_qubits = qubits_for(values.shape[0])
    padded = np.zeros(1 << num_qubits, dtype=np.complex128)
    padded[: values.shape[0]] = values / scale
    state = from_amplitudes(padded)
    logger.debug("encoded %dx%d image into %d qubits", image.rows, image.cols, num_qubits)
    return EncodingRecord(
        state=state,
        rows=image.rows,
        cols=image.cols,
        scale=scale,
        pad_len=padded.shape[0] - values.shape[0],
    )


def transpose_encode(image: ImageMatrix) -> EncodingRecord:
    """
    Encode the transposed image (a row-major scan of the original). The record's
    rows/cols describe the transposed grid.
    """
    return encode(image.transposed())


def decode(record: EncodingRecord, rescale: bool = True) -> ImageMatrix:
    """
    Reshape the first M*L amplitudes back into the image grid, multiplying by
    the stored scale when ``rescale`` is set.
    """
    if record.rows < 1 or record.cols < 1 or record.num_pixels > record.state.dimension:
        raise InconsistentShapeError(
            f"a {record.rows}x{record.cols} image does not fit {record.num_qubits} qubits"
        )
    if record.pad_len != record.state.dimension - record.num_pixels:
        raise InconsistentShapeError(
            f"pad length {record.pad_len} disagrees with {record.num_qubits} qubits"
        )
    values = record.state.amplitudes[: record.num_pixels]
    if rescale:
        values = values * record.scale
    image = ImageMatrix.from_complex(unvectorize(values, record.rows, record.cols))
    if image.imaginary is not None:
        logger.info("decoded image carries imaginary parts up to %.3e",
                    float(np.max(np.abs(image.imaginary))))
    return image
