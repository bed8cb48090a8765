import numpy as np
import pytest

from qimp import gates
from qimp.errors import (
    BadIndexError,
    DimensionMismatchError,
    NormTooFarError,
    NotPowerOfTwoError,
    NotUnitaryError,
    OverlapError,
    ZeroProbabilityError,
    ZeroVectorError,
)
from qimp.statevector import (
    Polarity,
    amplitude_rotate_left,
    amplitude_rotate_right,
    apply_controlled,
    apply_dense_unitary,
    apply_gate,
    apply_swap,
    condition_on_qubit,
    from_amplitudes,
    inner_product,
    probabilities,
    qubit_cyclic_left_shift,
    qubit_cyclic_right_shift,
    tensor,
    zero_state,
)

APPENDIX = np.array([1.0, 2.0, 3.0, 4.0]) / np.sqrt(30.0)


class TestConstruction:
    def test_zero_state(self):
        np.testing.assert_array_equal(zero_state(2).amplitudes, [1, 0, 0, 0])
        np.testing.assert_array_equal(zero_state(0).amplitudes, [1])
        state = zero_state(4)
        assert state.dimension == 16 and state.amplitudes[0] == 1

    def test_from_amplitudes_keeps_exact_values(self):
        state = from_amplitudes(APPENDIX)
        assert state.num_qubits == 2
        np.testing.assert_allclose(state.amplitudes, APPENDIX, atol=1e-15)
        np.testing.assert_array_equal(from_amplitudes([1, 0]).amplitudes, [1, 0])

    def test_normalize_flag(self):
        state = from_amplitudes(np.ones(8), normalize=True)
        np.testing.assert_allclose(state.amplitudes, np.full(8, 1 / np.sqrt(8)))

    def test_small_drift_is_renormalized(self):
        state = from_amplitudes([1 + 1e-5, 0])
        assert abs(np.linalg.norm(state.amplitudes) - 1) < 1e-12

    def test_errors(self):
        with pytest.raises(NotPowerOfTwoError):
            from_amplitudes([1, 0, 0])
        with pytest.raises(ZeroVectorError):
            from_amplitudes([0, 0])
        with pytest.raises(NormTooFarError):
            from_amplitudes(np.ones(8))

    def test_amplitudes_are_read_only(self):
        state = zero_state(1)
        with pytest.raises(ValueError):
            state.amplitudes[0] = 0

    def test_basis_label(self):
        assert zero_state(3).basis_label(5) == "101"


class TestGates:
    def test_hadamard_on_single_qubit(self):
        out = apply_gate(zero_state(1), gates.H, 1)
        np.testing.assert_allclose(out.amplitudes, [1 / np.sqrt(2)] * 2)

    def test_hadamard_on_last_qubit_pairs_neighbours(self, random_state):
        state = random_state(2)
        c = state.amplitudes
        out = apply_gate(state, gates.H, 2)
        expected = np.array([c[0] + c[1], c[0] - c[1], c[2] + c[3], c[2] - c[3]]) / np.sqrt(2)
        np.testing.assert_allclose(out.amplitudes, expected, atol=1e-12)

    def test_x_on_msb(self):
        out = apply_gate(from_amplitudes(APPENDIX), gates.X, 1)
        np.testing.assert_allclose(out.amplitudes, APPENDIX[[2, 3, 0, 1]])

    @pytest.mark.parametrize("target", [1, 2, 3, 4])
    def test_matches_dense_kron(self, random_state, dense_gate, target):
        state = random_state(4)
        gate = gates.phase(0.3) @ gates.H
        out = apply_gate(state, gate, target)
        np.testing.assert_allclose(out.amplitudes, dense_gate(gate, target, 4) @ state.amplitudes,
                                   atol=1e-12)

    def test_rejects_bad_input(self):
        with pytest.raises(BadIndexError):
            apply_gate(zero_state(2), gates.H, 3)
        with pytest.raises(BadIndexError):
            apply_gate(zero_state(2), gates.H, 0)
        with pytest.raises(NotUnitaryError):
            apply_gate(zero_state(1), np.array([[1, 1], [0, 1]]), 1)


class TestControlled:
    def test_zero_controlled_hadamard(self):
        a, b, c, d = APPENDIX
        out = apply_controlled(from_amplitudes(APPENDIX), gates.H, [1], Polarity.ZERO, [2])
        expected = [(a + b) / np.sqrt(2), (a - b) / np.sqrt(2), c, d]
        np.testing.assert_allclose(out.amplitudes, expected, atol=1e-12)

    def test_one_controlled_not_idle(self):
        out = apply_controlled(zero_state(2), gates.X, [1], Polarity.ONE, [2])
        np.testing.assert_array_equal(out.amplitudes, [1, 0, 0, 0])

    def test_one_controlled_not_fires(self):
        state = from_amplitudes([0, 0, 1, 0])
        out = apply_controlled(state, gates.X, [1], Polarity.ONE, [2])
        np.testing.assert_array_equal(out.amplitudes, [0, 0, 0, 1])

    def test_controlled_swap_block_matches_dense(self, random_state):
        state = random_state(3)
        out = apply_controlled(state, gates.SWAP, [1], Polarity.ZERO, [2, 3])
        dense = np.eye(8, dtype=complex)
        dense[:4, :4] = gates.SWAP
        np.testing.assert_allclose(out.amplitudes, dense @ state.amplitudes, atol=1e-12)

    def test_target_order_matters(self, random_state):
        state = random_state(2)
        cnot = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
        forward = apply_controlled(state, cnot, [], Polarity.ONE, [1, 2])
        backward = apply_controlled(state, cnot, [], Polarity.ONE, [2, 1])
        flipped = cnot.reshape(2, 2, 2, 2).transpose(1, 0, 3, 2).reshape(4, 4)
        np.testing.assert_allclose(forward.amplitudes, cnot @ state.amplitudes, atol=1e-12)
        np.testing.assert_allclose(backward.amplitudes, flipped @ state.amplitudes, atol=1e-12)

    def test_errors(self):
        with pytest.raises(OverlapError):
            apply_controlled(zero_state(2), gates.X, [1], Polarity.ONE, [1])
        with pytest.raises(DimensionMismatchError):
            apply_controlled(zero_state(3), gates.X, [1], Polarity.ONE, [2, 3])


class TestPermutations:
    def test_swap(self):
        a, b, c, d = APPENDIX
        out = apply_swap(from_amplitudes(APPENDIX), 1, 2)
        np.testing.assert_allclose(out.amplitudes, [a, c, b, d])
        again = apply_swap(out, 1, 2)
        np.testing.assert_allclose(again.amplitudes, APPENDIX)
        with pytest.raises(BadIndexError):
            apply_swap(out, 2, 2)

    def test_right_shift_of_two_is_swap(self, random_state):
        state = random_state(2)
        np.testing.assert_allclose(qubit_cyclic_right_shift(state, 2).amplitudes,
                                   apply_swap(state, 1, 2).amplitudes)

    def test_right_shift_on_basis_state(self):
        basis = np.zeros(8)
        basis[0b011] = 1
        out = qubit_cyclic_right_shift(from_amplitudes(basis), 3)
        assert np.argmax(np.abs(out.amplitudes)) == 0b101

    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6])
    def test_right_shift_matches_permutation(self, random_state, m):
        state = random_state(m)
        size = 1 << m
        perm = np.zeros((size, size))
        for k in range(size):
            perm[(k >> 1) | ((k & 1) << (m - 1)), k] = 1
        out = qubit_cyclic_right_shift(state, m)
        np.testing.assert_allclose(out.amplitudes, perm @ state.amplitudes, atol=1e-12)
        back = qubit_cyclic_left_shift(out, m)
        np.testing.assert_allclose(back.amplitudes, state.amplitudes, atol=1e-12)

    def test_shift_inside_block(self, random_state):
        state = random_state(4)
        out = qubit_cyclic_right_shift(state, 2, start=3)
        np.testing.assert_allclose(out.amplitudes, apply_swap(state, 3, 4).amplitudes)
        with pytest.raises(BadIndexError):
            qubit_cyclic_right_shift(state, 3, start=3)

    def test_rotate_left(self):
        out = amplitude_rotate_left(from_amplitudes(APPENDIX))
        np.testing.assert_allclose(out.amplitudes, APPENDIX[[1, 2, 3, 0]])

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_rotate_left_matches_dense(self, random_state, n):
        state = random_state(n)
        size = 1 << n
        dense = np.roll(np.eye(size), 1, axis=1)
        out = amplitude_rotate_left(state)
        np.testing.assert_allclose(out.amplitudes, dense @ state.amplitudes, atol=1e-12)
        np.testing.assert_allclose(amplitude_rotate_right(out).amplitudes, state.amplitudes)

    def test_rotate_left_full_cycle(self, random_state):
        state = random_state(3)
        out = state
        for _ in range(8):
            out = amplitude_rotate_left(out)
        np.testing.assert_allclose(out.amplitudes, state.amplitudes)

    def test_rotate_needs_a_qubit(self):
        with pytest.raises(BadIndexError):
            amplitude_rotate_left(zero_state(0))


class TestConditioning:
    def test_even_differences_after_hadamard(self, random_state):
        state = random_state(3)
        c = state.amplitudes
        sub, probability = condition_on_qubit(apply_gate(state, gates.H, 3), 3, 1)
        differences = (c[0::2] - c[1::2]) / np.sqrt(2)
        assert probability == pytest.approx(np.sum(np.abs(differences) ** 2), abs=1e-12)
        np.testing.assert_allclose(sub.amplitudes, differences / np.sqrt(probability), atol=1e-12)

    def test_basis_state(self):
        sub, probability = condition_on_qubit(zero_state(2), 2, 0)
        np.testing.assert_array_equal(sub.amplitudes, [1, 0])
        assert probability == 1.0

    def test_probabilities_sum_to_one(self, random_state):
        for n in range(1, 7):
            state = random_state(n)
            for qubit in range(1, n + 1):
                _, p0 = condition_on_qubit(state, qubit, 0)
                _, p1 = condition_on_qubit(state, qubit, 1)
                assert p0 + p1 == pytest.approx(1.0, abs=1e-12)

    def test_zero_probability(self):
        with pytest.raises(ZeroProbabilityError):
            condition_on_qubit(zero_state(2), 1, 1)
        with pytest.raises(BadIndexError):
            condition_on_qubit(zero_state(2), 1, 2)


class TestDenseAndInner:
    def test_dense_unitary(self, random_state):
        state = random_state(2)
        np.testing.assert_allclose(apply_dense_unitary(state, np.eye(4)).amplitudes,
                                   state.amplitudes)
        out = apply_dense_unitary(zero_state(2), np.kron(gates.H, gates.H))
        np.testing.assert_allclose(out.amplitudes, [0.5] * 4)

    def test_dense_errors(self):
        with pytest.raises(NotUnitaryError):
            apply_dense_unitary(zero_state(1), np.ones((2, 2)))
        with pytest.raises(DimensionMismatchError):
            apply_dense_unitary(zero_state(1), np.eye(4))

    def test_inner_product(self, random_state):
        state = random_state(3)
        assert inner_product(state, state) == pytest.approx(1.0)
        assert inner_product(from_amplitudes([1, 0]), from_amplitudes([0, 1])) == 0
        rotated = from_amplitudes(APPENDIX[::-1])
        assert inner_product(from_amplitudes(APPENDIX), rotated) == pytest.approx(2 / 3, abs=1e-12)
        with pytest.raises(DimensionMismatchError):
            inner_product(zero_state(1), zero_state(2))

    def test_tensor_puts_first_factor_on_top(self):
        one = from_amplitudes([0, 1])
        out = tensor(one, zero_state(1))
        np.testing.assert_array_equal(out.amplitudes, [0, 0, 1, 0])

    def test_probabilities(self, random_state):
        assert probabilities(random_state(4)).sum() == pytest.approx(1.0)


def test_norm_preserved_by_every_operation(rng, random_state):
    for _ in range(1000):
        n = int(rng.integers(2, 11))
        state = random_state(n)
        target = int(rng.integers(1, n + 1))
        control = target % n + 1
        for out in (
            apply_gate(state, gates.H, target),
            apply_controlled(state, gates.phase(rng.uniform(0, 6)), [control], Polarity.ZERO, [target]),
            apply_swap(state, target, control),
            qubit_cyclic_right_shift(state, n),
            amplitude_rotate_left(state),
        ):
            assert abs(np.linalg.norm(out.amplitudes) - 1) <= 1e-9
