"""
qimp: quantum image processing on a state-vector simulator.

Images are amplitude encoded (QPIE) and processed by gate-level circuits:
Haar/Fourier/Hadamard transforms, Hadamard edge detection, 3x3 filtering and
inversion-symmetry tests.
"""

__version__ = "0.1.0"
