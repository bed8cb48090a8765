"""Test images: the small reference grids plus generated demo images."""

import numpy as np

from qimp.qpie import ImageMatrix


def chessboard() -> ImageMatrix:
    """4x4 single-pixel chessboard, already unit norm."""
    pattern = np.indices((4, 4)).sum(axis=0) % 2 == 0
    return ImageMatrix(pattern / (2 * np.sqrt(2.0)))


def edge_test_image() -> ImageMatrix:
    """4x4 test image with a mix of edges, unit norm."""
    pattern = np.array([
        [0, 1, 0, 0],
        [1, 1, 1, 0],
        [1, 1, 1, 1],
        [0, 0, 0, 0],
    ])
    return ImageMatrix(pattern / (2 * np.sqrt(2.0)))


def symmetry_demo() -> ImageMatrix:
    """[[1, 3], [2, 4]]: column-major amplitudes (1, 2, 3, 4) / sqrt(30)."""
    return ImageMatrix([[1.0, 3.0], [2.0, 4.0]])


def two_region_image(size: int = 256, radius: float | None = None) -> ImageMatrix:
    """Binary image: a filled disk (value 1) centred on a zero background."""
    radius = size / 4 if radius is None else radius
    centre = (size - 1) / 2
    i, j = np.mgrid[0:size, 0:size]
    inside = (i - centre) ** 2 + (j - centre) ** 2 <= radius ** 2
    return ImageMatrix(inside.astype(np.float64))


def inversion_symmetric_image(size: int = 8, seed: int = 0) -> ImageMatrix:
    """Random positive image made symmetric under the 180 degree rotation."""
    rng = np.random.default_rng(seed)
    pixels = rng.uniform(0.1, 1.0, size=(size, size))
    return ImageMatrix(0.5 * (pixels + pixels[::-1, ::-1]))


SAMPLES = {
    "chessboard": chessboard,
    "edge-test": edge_test_image,
    "symmetry-demo": symmetry_demo,
    "two-region": two_region_image,
    "inversion-symmetric": inversion_symmetric_image,
}
