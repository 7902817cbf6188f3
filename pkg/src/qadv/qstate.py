"""Dense statevectors, single-qubit reduced states, trace distance and entropy.

Statevectors are plain 1-D ``complex128`` numpy arrays of length ``2**m``;
qubit ``k`` is bit ``k`` of the basis index. Single-qubit density matrices
are 2x2 arrays and Bloch vectors are length-3 float arrays.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .errors import ContractError, DomainError, SizeError

MAX_QUBITS = 24
DENSE_MAX_QUBITS = 8

# construction checks vs. property-test tolerances
CONSTRUCT_TOL = 1e-10
PROPERTY_TOL = 1e-9

LN2 = float(np.log(2.0))

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def num_qubits(state: np.ndarray) -> int:
    d = state.shape[-1]
    m = d.bit_length() - 1
    if m < 0 or (1 << m) != d:
        raise SizeError(f"state length {d} is not a power of two")
    return m


def zero_state(m: int) -> np.ndarray:
    """Return ``|0...0>`` on ``m`` qubits."""
    if not 1 <= m <= MAX_QUBITS:
        raise SizeError(f"qubit count must be in [1, {MAX_QUBITS}], got {m}")
    psi = np.zeros(1 << m, dtype=complex)
    psi[0] = 1.0
    return psi


def basis_state(m: int, index: int) -> np.ndarray:
    psi = zero_state(m)
    psi[0] = 0.0
    psi[index] = 1.0
    return psi


def random_state(m: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random pure state (normalized complex Gaussian vector)."""
    v = rng.normal(size=1 << m) + 1j * rng.normal(size=1 << m)
    return v / np.linalg.norm(v)


def norm(state: np.ndarray) -> float:
    return float(np.sqrt(np.vdot(state, state).real))


def _check_unitary(u: np.ndarray, dim: int) -> np.ndarray:
    u = np.ascontiguousarray(u, dtype=complex)
    if u.shape != (dim, dim):
        raise SizeError(f"expected a {dim}x{dim} matrix, got shape {u.shape}")
    if not np.allclose(u.conj().T @ u, np.eye(dim), atol=CONSTRUCT_TOL, rtol=0):
        raise ContractError("gate matrix is not unitary")
    return u


def _check_qubit(q: int, m: int) -> None:
    if not 0 <= q < m:
        raise IndexError(f"qubit index {q} out of range for {m} qubits")


def apply_one_qubit(state: np.ndarray, u: np.ndarray, q: int) -> np.ndarray:
    """Apply a 2x2 unitary to qubit ``q`` in place and return ``state``."""
    m = num_qubits(state)
    _check_qubit(q, m)
    u = _check_unitary(u, 2)
    kernels.apply_1q(state.reshape(1, -1), u, q)
    return state


def apply_two_qubit(state: np.ndarray, u: np.ndarray, q1: int, q2: int) -> np.ndarray:
    """Apply a 4x4 unitary to qubits ``(q1, q2)`` in place.

    The matrix acts on the ordered pair, i.e. its row index is
    ``2 * bit(q1) + bit(q2)``, so ``kron(A, B)`` applies ``A`` to ``q1``.
    """
    m = num_qubits(state)
    _check_qubit(q1, m)
    _check_qubit(q2, m)
    if q1 == q2:
        raise IndexError("two-qubit gate needs distinct qubits")
    u = _check_unitary(u, 4)
    kernels.apply_2q(state.reshape(1, -1), u, q1, q2)
    return state


def apply_cnot(state: np.ndarray, control: int, target: int) -> np.ndarray:
    m = num_qubits(state)
    _check_qubit(control, m)
    _check_qubit(target, m)
    if control == target:
        raise IndexError("CNOT needs distinct control and target")
    kernels.apply_cnot(state.reshape(1, -1), control, target)
    return state


def reduce_to_qubit(state: np.ndarray, q: int) -> np.ndarray:
    """Reduced density matrix of qubit ``q`` (all other qubits traced out)."""
    m = num_qubits(state)
    _check_qubit(q, m)
    v = state.reshape(-1, 2, 1 << q)
    a0 = v[:, 0, :].ravel()
    a1 = v[:, 1, :].ravel()
    r00 = np.vdot(a0, a0).real
    r11 = np.vdot(a1, a1).real
    r01 = np.vdot(a1, a0)  # sum a0 * conj(a1)
    return np.array([[r00, r01], [np.conj(r01), r11]], dtype=complex)


def bloch_from_density(rho: np.ndarray) -> np.ndarray:
    """Bloch vector ``r_i = tr(sigma_i rho)``."""
    return np.array(
        [
            2.0 * rho[0, 1].real,
            -2.0 * rho[0, 1].imag,
            (rho[0, 0] - rho[1, 1]).real,
        ]
    )


def density_from_bloch(r) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    return 0.5 * (PAULI["I"] + r[0] * PAULI["X"] + r[1] * PAULI["Y"] + r[2] * PAULI["Z"])


def _xlogx(p: float) -> float:
    return p * np.log(p) if p > 0.0 else 0.0


def entropy_from_bloch(r) -> float:
    """Von Neumann entropy in nats of the qubit state with Bloch vector ``r``."""
    length = float(np.linalg.norm(np.asarray(r, dtype=float)))
    if length > 1.0 + PROPERTY_TOL:
        raise DomainError(f"Bloch vector norm {length} exceeds 1")
    length = min(length, 1.0)
    return -_xlogx((1.0 + length) / 2.0) - _xlogx((1.0 - length) / 2.0)


def entropy_dense(rho: np.ndarray) -> float:
    """Von Neumann entropy in nats by eigendecomposition (test oracle)."""
    w = np.linalg.eigvalsh(rho)
    return float(-sum(_xlogx(x) for x in np.clip(w, 0.0, None)))


def overlap(psi1: np.ndarray, psi2: np.ndarray) -> complex:
    if psi1.shape != psi2.shape:
        raise SizeError(f"dimension mismatch: {psi1.shape} vs {psi2.shape}")
    return complex(np.vdot(psi1, psi2))


def trace_distance_pure(psi1: np.ndarray, psi2: np.ndarray) -> float:
    """Trace distance between two pure states, ``sqrt(1 - |<psi1|psi2>|^2)``."""
    # norm of the part of psi2 orthogonal to psi1; avoids cancellation in 1 - F
    a = np.asarray(psi1)
    b = np.asarray(psi2)
    resid = b - overlap(a, b) * a
    return float(min(1.0, np.linalg.norm(resid)))


def density_matrix(psi: np.ndarray) -> np.ndarray:
    if num_qubits(psi) > DENSE_MAX_QUBITS:
        raise SizeError(f"dense density matrices are capped at {DENSE_MAX_QUBITS} qubits")
    return np.outer(psi, psi.conj())


def trace_distance_dense(rho1: np.ndarray, rho2: np.ndarray) -> float:
    """Half the trace norm of ``rho1 - rho2``."""
    if rho1.shape != rho2.shape:
        raise SizeError(f"dimension mismatch: {rho1.shape} vs {rho2.shape}")
    for rho in (rho1, rho2):
        if not np.allclose(rho, rho.conj().T, atol=CONSTRUCT_TOL, rtol=0):
            raise ContractError("density matrix is not Hermitian")
    w = np.linalg.eigvalsh(rho1 - rho2)
    return float(0.5 * np.abs(w).sum())


def partial_trace_dense(rho: np.ndarray, keep: list[int], m: int) -> np.ndarray:
    """Reduce a dense ``2**m`` density matrix onto the qubits in ``keep`` (oracle)."""
    t = rho.reshape((2,) * (2 * m))
    # tensor axis a <-> qubit m-1-a (row), m+a (column)
    traced = [q for q in range(m) if q not in keep]
    letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    row = [letters[a] for a in range(m)]
    col = [letters[m + a] for a in range(m)]
    for q in traced:
        col[m - 1 - q] = row[m - 1 - q]
    kept_axes = [m - 1 - q for q in sorted(keep, reverse=True)]
    out = "".join(row[a] for a in kept_axes) + "".join(col[a] for a in kept_axes)
    r = np.einsum("".join(row) + "".join(col) + "->" + out, t)
    k = len(keep)
    return r.reshape(1 << k, 1 << k)
