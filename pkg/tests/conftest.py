import numpy as np
import pytest

from qimp import samples
from qimp.qpie import ImageMatrix
from qimp.statevector import from_amplitudes


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def random_state(rng):
    def make(num_qubits, real=False):
        size = 1 << num_qubits
        values = rng.normal(size=size)
        if not real:
            values = values + 1j * rng.normal(size=size)
        return from_amplitudes(values, normalize=True)

    return make


@pytest.fixture
def random_image(rng):
    def make(rows, cols=None, low=0.0):
        cols = rows if cols is None else cols
        return ImageMatrix(rng.uniform(low, 1.0, size=(rows, cols)))

    return make


@pytest.fixture
def chessboard():
    return samples.chessboard()


@pytest.fixture
def edge_image():
    return samples.edge_test_image()


@pytest.fixture
def symmetry_image():
    return samples.symmetry_demo()


def dense_single(gate, target, num_qubits):
    """I (x) gate (x) I with qubit 1 most significant."""
    return np.kron(np.kron(np.eye(1 << (target - 1)), gate), np.eye(1 << (num_qubits - target)))


@pytest.fixture
def dense_gate():
    return dense_single
