"""Independent dense oracles shared by the test modules.

They build full ``2**m x 2**m`` operators by explicit bit arithmetic over basis
indices, so they share no code with the strided kernels under test.
"""

import numpy as np
import pytest
from scipy.linalg import expm

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def bit(i, q):
    return (i >> q) & 1


def dense_op(u, qubits, m):
    """Full operator of ``u`` acting on ``qubits`` (row index bits ordered as given)."""
    k = len(qubits)
    d = 1 << m
    out = np.zeros((d, d), dtype=complex)
    for col in range(d):
        sub_c = 0
        for q in qubits:
            sub_c = 2 * sub_c + bit(col, q)
        rest = col
        for q in qubits:
            rest &= ~(1 << q)
        for sub_r in range(1 << k):
            row = rest
            for pos, q in enumerate(qubits):
                if (sub_r >> (k - 1 - pos)) & 1:
                    row |= 1 << q
            out[row, col] += u[sub_r, sub_c]
    return out


def dense_cnot(control, target, m):
    d = 1 << m
    out = np.zeros((d, d))
    for i in range(d):
        j = i ^ (1 << target) if bit(i, control) else i
        out[j, i] = 1
    return out


def rotation_expm(ops, theta):
    h = PAULI[ops[0]]
    for c in ops[1:]:
        h = np.kron(h, PAULI[c])
    return expm(-0.5j * theta * h)


def circuit_unitary_oracle(circuit, params):
    """Dense product of gate matrices, built with expm and explicit bit arithmetic."""
    from qadv.circuits import CNOT

    m = circuit.num_qubits
    u = np.eye(1 << m, dtype=complex)
    for g in circuit.gates:
        if isinstance(g, CNOT):
            u = dense_cnot(g.control, g.target, m) @ u
        else:
            u = dense_op(rotation_expm(g.generator.ops, params[g.param_index]), g.qubits, m) @ u
    return u


def haar_state(m, rng):
    v = rng.normal(size=1 << m) + 1j * rng.normal(size=1 << m)
    return v / np.linalg.norm(v)


def ptrace_keep_one(rho, q, m):
    """Reduced density matrix of qubit ``q`` by summing over all other bits."""
    out = np.zeros((2, 2), dtype=complex)
    d = 1 << m
    for i in range(d):
        for j in range(d):
            if (i & ~(1 << q)) == (j & ~(1 << q)):
                out[bit(i, q), bit(j, q)] += rho[i, j]
    return out


def eig_entropy(rho):
    w = np.linalg.eigvalsh(rho)
    w = w[w > 1e-15]
    return float(-(w * np.log(w)).sum())


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one line per acceptance criterion, echoed at the end of the session
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: s.split()[1]):
            terminalreporter.write_line(line)
