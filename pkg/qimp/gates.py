"""Standard gate matrices and the unitarity check shared by the simulator."""

import numpy as np

from qimp.errors import NotUnitaryError

SQRT2_INV = 1.0 / np.sqrt(2.0)

I2 = np.eye(2, dtype=np.complex128)
H = np.array([[1, 1], [1, -1]], dtype=np.complex128) * SQRT2_INV
X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
# R in the two-qubit Fourier circuit
S = np.array([[1, 0], [0, 1j]], dtype=np.complex128)
SWAP = np.array(
    [[1, 0, 0, 0],
     [0, 0, 1, 0],
     [0, 1, 0, 0],
     [0, 0, 0, 1]],
    dtype=np.complex128,
)

for _gate in (I2, H, X, Z, S, SWAP):
    _gate.setflags(write=False)


def phase(theta: float) -> np.ndarray:
    """diag(1, e^{i theta})."""
    return np.array([[1, 0], [0, np.exp(1j * theta)]], dtype=np.complex128)


def is_unitary(matrix: np.ndarray, tol: float = 1e-12) -> bool:
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        return False
    identity = np.eye(matrix.shape[0])
    return bool(np.max(np.abs(matrix.conj().T @ matrix - identity)) <= tol)


def require_unitary(matrix: np.ndarray, tol: float, name: str = "gate") -> np.ndarray:
    """Return ``matrix`` as complex128, raising NotUnitaryError if U^dag U != I."""
    matrix = np.asarray(matrix, dtype=np.complex128)
    if not is_unitary(matrix, tol):
        raise NotUnitaryError(f"{name} is not unitary within {tol:g}")
    return matrix
