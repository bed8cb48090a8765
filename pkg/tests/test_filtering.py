import numpy as np
import pytest

from qimp.errors import (
    IoFailureError,
    MaskFormatError,
    NotPowerOfTwoError,
    ShapeMismatchError,
    TooSmallError,
)
from qimp.filtering import (
    FilterMask,
    apply_filter,
    build_filter_operator,
    filter_encoded,
    is_unitary,
    read_mask,
)
from qimp.qpie import ImageMatrix, decode, encode


def convolve_interior(pixels, weights):
    """Direct double loop; border pixels copied through."""
    size = pixels.shape[0]
    out = pixels.copy()
    for i in range(1, size - 1):
        for j in range(1, size - 1):
            out[i, j] = sum(
                weights[u, v] * pixels[i + u - 1, j + v - 1] for u in range(3) for v in range(3)
            )
    return out


def cross_mask():
    weights = np.zeros((3, 3))
    weights[0, 1] = weights[1, 0] = weights[1, 2] = weights[2, 1] = 1 / 8
    weights[1, 1] = 1 / 2
    return FilterMask(weights)


class TestOperator:
    def test_identity_mask(self):
        for size in (4, 8, 16):
            op = build_filter_operator(FilterMask.identity(), size)
            np.testing.assert_array_equal(op.to_dense(), np.eye(size * size))
            assert is_unitary(op)

    def test_negative_centre_is_unitary(self):
        weights = np.zeros((3, 3))
        weights[1, 1] = -1
        assert is_unitary(build_filter_operator(FilterMask(weights), 8))

    def test_averaging_rows_sum_to_one(self):
        op = build_filter_operator(FilterMask.averaging(), 4)
        np.testing.assert_allclose(op.to_dense().sum(axis=1), np.ones(16), atol=1e-15)
        assert not is_unitary(op)

    def test_block_structure(self):
        size = 4
        dense = build_filter_operator(FilterMask.averaging(), size).to_dense()
        np.testing.assert_array_equal(dense[:size, :size], np.eye(size))
        np.testing.assert_array_equal(dense[-size:, -size:], np.eye(size))
        # interior block row: first and last rows are unit rows of V_2
        block = dense[size:2 * size]
        np.testing.assert_array_equal(block[0], np.eye(16)[size])
        np.testing.assert_array_equal(block[-1], np.eye(16)[2 * size - 1])

    @pytest.mark.parametrize("size", [4, 8, 16])
    def test_sparsity(self, rng, size):
        op = build_filter_operator(FilterMask(rng.normal(size=(3, 3))), size)
        assert op.dim == size * size
        assert op.nnz <= 9 * size * size
        assert op.max_row_nnz() <= 9

    def test_unitarity_criterion(self, rng):
        for trial in range(60):
            size = (4, 8, 16)[trial % 3]
            weights = np.zeros((3, 3))
            kind = trial % 4
            if kind == 0:
                weights[1, 1] = rng.choice([-1.0, 1.0])
            elif kind == 1:
                weights[1, 1] = rng.choice([-1.0, 1.0])
                weights[rng.integers(0, 3), rng.integers(0, 3)] += rng.uniform(0.01, 1)
            elif kind == 2:
                weights[1, 1] = rng.uniform(-0.9, 0.9)
            else:
                weights = rng.normal(size=(3, 3))
            expected = abs(weights[1, 1]) == 1 and np.count_nonzero(weights) == 1
            assert is_unitary(build_filter_operator(FilterMask(weights), size)) == expected

    def test_size_checks(self):
        with pytest.raises(TooSmallError):
            build_filter_operator(FilterMask.identity(), 2)
        with pytest.raises(NotPowerOfTwoError):
            build_filter_operator(FilterMask.identity(), 6)


class TestApply:
    def test_identity_leaves_image(self, random_image):
        image = random_image(8)
        np.testing.assert_array_equal(apply_filter(image, FilterMask.identity()).pixels,
                                      image.pixels)

    def test_matches_convolution(self, rng):
        for trial in range(100):
            size = 8 if trial % 2 else 16
            pixels = rng.uniform(0, 1, size=(size, size))
            weights = rng.normal(size=(3, 3))
            result = apply_filter(ImageMatrix(pixels), FilterMask(weights))
            np.testing.assert_allclose(result.pixels, convolve_interior(pixels, weights),
                                       atol=1e-12)

    def test_cross_mask_on_chessboard(self, chessboard):
        result = apply_filter(chessboard, cross_mask()).pixels
        np.testing.assert_allclose(result[1:-1, 1:-1], 0.5 / (2 * np.sqrt(2)), atol=1e-15)
        np.testing.assert_array_equal(result[0], chessboard.pixels[0])

    def test_encoded_path_matches_classical(self, random_image):
        image = random_image(8)
        filtered = filter_encoded(encode(image), FilterMask.averaging())
        assert abs(np.linalg.norm(filtered.state.amplitudes) - 1) < 1e-12
        np.testing.assert_allclose(decode(filtered).pixels,
                                   apply_filter(image, FilterMask.averaging()).pixels, atol=1e-12)

    def test_rejects_rectangular(self, random_image):
        with pytest.raises(ShapeMismatchError):
            apply_filter(random_image(4, 8), FilterMask.identity())


class TestMaskFiles:
    def test_read(self, tmp_path):
        path = tmp_path / "mask.txt"
        path.write_text("0 0 0\n0 1 0\n0 0 0\n")
        np.testing.assert_array_equal(read_mask(path).weights, FilterMask.identity().weights)

    def test_read_scientific_and_blank_lines(self, tmp_path):
        path = tmp_path / "mask.txt"
        path.write_text("\n1e-1 0.1 .1\n0.1 0.2 0.1\n0.1 0.1 0.1\n\n")
        assert read_mask(path).weights.sum() == pytest.approx(1.0)

    @pytest.mark.parametrize("text", ["1 2 3\n4 5 6\n", "1 2\n3 4\n5 6\n", "a b c\n1 2 3\n4 5 6\n",
                                      "1 2 3\n4 nan 6\n7 8 9\n"])
    def test_bad_masks(self, tmp_path, text):
        path = tmp_path / "mask.txt"
        path.write_text(text)
        with pytest.raises(MaskFormatError):
            read_mask(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(IoFailureError):
            read_mask(tmp_path / "absent.txt")
