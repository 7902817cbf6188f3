import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import PAULI, dense_op, eig_entropy, haar_state, ptrace_keep_one
from qadv.errors import ContractError, DomainError, SizeError
from qadv.qstate import (
    LN2,
    apply_cnot,
    apply_one_qubit,
    apply_two_qubit,
    basis_state,
    bloch_from_density,
    density_from_bloch,
    density_matrix,
    entropy_dense,
    entropy_from_bloch,
    norm,
    partial_trace_dense,
    reduce_to_qubit,
    trace_distance_dense,
    trace_distance_pure,
    zero_state,
)

H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
CNOT_01 = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
PLUS = np.array([1, 1], dtype=complex) / np.sqrt(2)


def random_unitary(d, rng):
    q, r = np.linalg.qr(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


class TestConstruction:
    def test_zero_state(self):
        assert np.array_equal(zero_state(1), [1, 0])
        assert np.array_equal(zero_state(2), [1, 0, 0, 0])
        assert norm(zero_state(7)) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("m", [0, 25, -1])
    def test_zero_state_range(self, m):
        with pytest.raises(SizeError):
            zero_state(m)

    def test_non_power_of_two(self):
        with pytest.raises(SizeError):
            reduce_to_qubit(np.ones(3, dtype=complex), 0)


class TestGates:
    def test_x_flip(self):
        s = zero_state(1)
        apply_one_qubit(s, PAULI["X"], 0)
        assert np.allclose(s, [0, 1])

    def test_identity(self, rng):
        s = haar_state(3, rng)
        before = s.copy()
        apply_one_qubit(s, np.eye(2), 1)
        assert np.allclose(s, before, atol=1e-14)

    def test_hadamard(self):
        s = zero_state(1)
        apply_one_qubit(s, H, 0)
        assert np.allclose(s, [2 ** -0.5, 2 ** -0.5])

    def test_cnot_basis(self):
        # |10> means qubit 0 = 1 (control), qubit 1 = 0 -> index 1
        s = basis_state(2, 1)
        apply_cnot(s, 0, 1)
        assert np.allclose(s, basis_state(2, 3))
        s = zero_state(2)
        apply_two_qubit(s, CNOT_01, 0, 1)
        assert np.allclose(s, zero_state(2))

    def test_bell(self):
        s = zero_state(2)
        apply_one_qubit(s, H, 0)
        apply_two_qubit(s, CNOT_01, 0, 1)
        assert np.allclose(s, np.array([1, 0, 0, 1]) / np.sqrt(2))

    def test_non_unitary_rejected(self):
        with pytest.raises(ContractError):
            apply_one_qubit(zero_state(1), np.array([[1, 1], [0, 1]]), 0)

    def test_bad_indices(self):
        with pytest.raises(IndexError):
            apply_one_qubit(zero_state(2), H, 2)
        with pytest.raises(IndexError):
            apply_two_qubit(zero_state(2), CNOT_01, 1, 1)
        with pytest.raises(IndexError):
            apply_cnot(zero_state(2), 0, 0)

    @pytest.mark.parametrize("m", [1, 2, 3, 5])
    def test_one_qubit_matches_dense(self, m, rng):
        for q in range(m):
            u = random_unitary(2, rng)
            s = haar_state(m, rng)
            expect = dense_op(u, [q], m) @ s
            assert np.allclose(apply_one_qubit(s, u, q), expect, atol=1e-12)

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_two_qubit_matches_dense(self, m, rng):
        for q1 in range(m):
            for q2 in range(m):
                if q1 == q2:
                    continue
                u = random_unitary(4, rng)
                s = haar_state(m, rng)
                expect = dense_op(u, [q1, q2], m) @ s
                assert np.allclose(apply_two_qubit(s, u, q1, q2), expect, atol=1e-12)

    @given(st.integers(1, 6), st.integers(0, 2**32 - 1), st.integers(1, 20))
    @settings(max_examples=40, deadline=None)
    def test_norm_preserved(self, m, seed, depth):
        rng = np.random.default_rng(seed)
        s = haar_state(m, rng)
        for _ in range(depth):
            if m >= 2 and rng.random() < 0.5:
                q1, q2 = rng.choice(m, 2, replace=False)
                apply_two_qubit(s, random_unitary(4, rng), int(q1), int(q2))
            else:
                apply_one_qubit(s, random_unitary(2, rng), int(rng.integers(m)))
        assert abs(np.vdot(s, s).real - 1) < 1e-9


class TestReduction:
    def test_product_plus(self):
        s = np.kron(PLUS, [1, 0]).astype(complex)  # qubit 0 = |0>, qubit 1 = |+>
        assert np.allclose(reduce_to_qubit(s, 1), [[0.5, 0.5], [0.5, 0.5]])
        assert np.allclose(reduce_to_qubit(s, 0), [[1, 0], [0, 0]])

    def test_bell(self):
        s = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
        for q in (0, 1):
            assert np.allclose(reduce_to_qubit(s, q), np.eye(2) / 2)

    def test_index_error(self):
        with pytest.raises(IndexError):
            reduce_to_qubit(zero_state(2), 2)

    @pytest.mark.parametrize("m", [1, 3, 4])
    def test_matches_brute_force(self, m, rng):
        for _ in range(5):
            s = haar_state(m, rng)
            rho = np.outer(s, s.conj())
            for q in range(m):
                assert np.allclose(reduce_to_qubit(s, q), ptrace_keep_one(rho, q, m), atol=1e-12)

    def test_partial_trace_dense_oracle(self, rng):
        s = haar_state(3, rng)
        rho = np.outer(s, s.conj())
        for q in range(3):
            assert np.allclose(partial_trace_dense(rho, [q], 3), ptrace_keep_one(rho, q, 3), atol=1e-12)

    def test_hermitian_unit_trace(self, rng):
        for _ in range(1000):
            m = int(rng.integers(1, 6))
            rho = reduce_to_qubit(haar_state(m, rng), int(rng.integers(m)))
            assert np.allclose(rho, rho.conj().T, atol=1e-10)
            assert abs(np.trace(rho) - 1) < 1e-10
            assert np.linalg.eigvalsh(rho).min() > -1e-10


class TestBloch:
    @pytest.mark.parametrize(
        "rho, r",
        [
            ([[1, 0], [0, 0]], (0, 0, 1)),
            ([[0.5, 0], [0, 0.5]], (0, 0, 0)),
            ([[0.5, 0.5], [0.5, 0.5]], (1, 0, 0)),
            ([[0.5, -0.5j], [0.5j, 0.5]], (0, 1, 0)),
        ],
    )
    def test_examples(self, rho, r):
        assert np.allclose(bloch_from_density(np.array(rho, dtype=complex)), r)

    def test_roundtrip_against_traces(self, rng):
        for _ in range(50):
            rho = reduce_to_qubit(haar_state(3, rng), 0)
            r = bloch_from_density(rho)
            assert np.allclose(r, [np.trace(PAULI[a] @ rho).real for a in "XYZ"], atol=1e-12)
            assert np.allclose(density_from_bloch(r), rho, atol=1e-12)


class TestEntropy:
    def test_endpoints(self):
        assert entropy_from_bloch([0, 0, 0]) == LN2
        assert entropy_from_bloch([0, 0, 1]) == 0.0

    def test_half_norm(self):
        # frozen: -(0.75 ln 0.75 + 0.25 ln 0.25)
        assert entropy_from_bloch([0.5, 0, 0]) == pytest.approx(0.5623351446188083, abs=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            entropy_from_bloch([1.1, 0, 0])

    @given(st.floats(0, 1), st.floats(0, 1))
    def test_monotone(self, a, b):
        lo, hi = sorted((a, b))
        assert entropy_from_bloch([hi, 0, 0]) <= entropy_from_bloch([lo, 0, 0]) + 1e-15

    @given(st.floats(0, 1))
    def test_range(self, x):
        assert 0.0 <= entropy_from_bloch([0, x, 0]) <= LN2

    def test_matches_dense_eigen_entropy(self, rng):
        for _ in range(100):
            rho = reduce_to_qubit(haar_state(4, rng), 2)
            assert entropy_from_bloch(bloch_from_density(rho)) == pytest.approx(eig_entropy(rho), abs=1e-9)

    @pytest.mark.parametrize("m", [2, 3, 4, 5])
    def test_bipartite_symmetry(self, m, rng):
        s = haar_state(m, rng)
        rho = np.outer(s, s.conj())
        anc = m - 1
        rest = partial_trace_dense(rho, list(range(anc)), m)
        assert entropy_dense(reduce_to_qubit(s, anc)) == pytest.approx(eig_entropy(rest), abs=1e-9)


class TestTraceDistance:
    def test_examples(self):
        z, o = zero_state(1), basis_state(1, 1)
        assert trace_distance_pure(z, z) == 0.0
        assert trace_distance_pure(z, o) == pytest.approx(1.0)
        assert trace_distance_pure(z, PLUS) == pytest.approx(0.7071067811865476, abs=1e-12)

    def test_dense_examples(self):
        z, o = density_matrix(zero_state(1)), density_matrix(basis_state(1, 1))
        assert trace_distance_dense(z, z) == 0.0
        assert trace_distance_dense(z, o) == pytest.approx(1.0)
        assert trace_distance_dense(z, density_matrix(PLUS)) == pytest.approx(0.7071067811865476, abs=1e-12)

    def test_mismatch(self):
        with pytest.raises(SizeError):
            trace_distance_pure(zero_state(1), zero_state(2))

    def test_non_hermitian(self):
        with pytest.raises(ContractError):
            trace_distance_dense(np.array([[1, 1], [0, 0]]), np.eye(2) / 2)

    def test_dense_cap(self):
        with pytest.raises(SizeError):
            density_matrix(zero_state(9))

    def test_pure_equals_dense(self, rng):
        for _ in range(100):
            m = int(rng.integers(1, 6))
            a, b = haar_state(m, rng), haar_state(m, rng)
            assert trace_distance_pure(a, b) == pytest.approx(
                trace_distance_dense(density_matrix(a), density_matrix(b)), abs=1e-9)
