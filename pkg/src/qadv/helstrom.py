"""Exact two-state discrimination: Helstrom measurement and swap test.

Dense oracles only; the trainer never calls into this module. Outcome 0
of the measurement is read as "target" and outcome 1 as "generated", so the
error probability of a POVM ``{E0, I - E0}`` is
``P(t) tr[(I - E0) rho_t] + P(g) tr[E0 rho_g] = P(t) - tr[E0 Gamma]``
with ``Gamma = P(t) rho_t - P(g) rho_g``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractError, SizeError
from .measure import ExpectationEstimate, ShotPlan, prob_zero_exact, sample_counts
from .qstate import DENSE_MAX_QUBITS, MAX_QUBITS, density_matrix, num_qubits, trace_distance_pure

SWAP_TEST_MAX_QUBITS = 21

_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


@dataclass(frozen=True)
class GammaOperator:
    matrix: np.ndarray
    prior_t: float

    @property
    def prior_g(self) -> float:
        return 1.0 - self.prior_t


@dataclass(frozen=True)
class OptimalPovm:
    e0: np.ndarray
    p_err: float
    # which eigenspace of Gamma E0 projects onto: "positive" or "negative"
    convention: str

    @property
    def e1(self) -> np.ndarray:
        return np.eye(self.e0.shape[0]) - self.e0


def _check_pair(target, generated) -> int:
    if target.shape != generated.shape:
        raise SizeError(f"dimension mismatch: {target.shape} vs {generated.shape}")
    n = num_qubits(target)
    if n > DENSE_MAX_QUBITS:
        raise SizeError(f"dense oracle capped at {DENSE_MAX_QUBITS} qubits")
    return n


def gamma(target: np.ndarray, generated: np.ndarray, prior_t: float = 0.5) -> GammaOperator:
    """``P(t) |psi_t><psi_t| - P(g) |psi_g><psi_g|``."""
    _check_pair(target, generated)
    m = prior_t * density_matrix(target) - (1.0 - prior_t) * density_matrix(generated)
    return GammaOperator(m, prior_t)


def error_probability(e0: np.ndarray, g: GammaOperator) -> float:
    return float(g.prior_t - np.trace(e0 @ g.matrix).real)


def optimal_povm(g: GammaOperator) -> OptimalPovm:
    """Minimum-error POVM, diagonal in the eigenbasis of Gamma.

    Both sign conventions for the projector (onto the strictly positive or
    the strictly negative eigenspace) are evaluated and the one with the
    smaller error probability is returned. Zero eigenvalues are excluded;
    they cannot change ``tr[E0 Gamma]``.
    """
    w, v = np.linalg.eigh(g.matrix)
    # eigenvalues at rounding level count as zero
    cut = 1e-12 * max(1.0, float(np.abs(w).max(initial=0.0)))
    best = None
    for name, mask in (("positive", w > cut), ("negative", w < -cut)):
        vecs = v[:, mask]
        e0 = vecs @ vecs.conj().T
        p = error_probability(e0, g)
        if best is None or p < best.p_err:
            best = OptimalPovm(e0, p, name)
    return best


def helstrom_bound_check(target, generated, prior_t: float = 0.5, tol: float = 1e-9) -> bool:
    """Minimal error probability equals ``(1 - D(rho_t, rho_g)) / 2`` at equal priors."""
    if prior_t != 0.5:
        raise ContractError("the trace-distance identity needs equal priors")
    povm = optimal_povm(gamma(target, generated, prior_t))
    return abs(povm.p_err - 0.5 * (1.0 - trace_distance_pure(target, generated))) < tol


def overlap_identities_check(target, generated, prior_t: float = 0.5, tol: float = 1e-10) -> bool:
    """``tr[Gamma rho_g] = P(t) F - P(g)`` and ``tr[Gamma rho_t] = P(t) - P(g) F`` with ``F = |<psi_g|psi_t>|^2``."""
    g = gamma(target, generated, prior_t)
    f = abs(np.vdot(generated, target)) ** 2
    on_g = np.vdot(generated, g.matrix @ generated).real
    on_t = np.vdot(target, g.matrix @ target).real
    return abs(on_g - (prior_t * f - g.prior_g)) < tol and abs(on_t - (prior_t - g.prior_g * f)) < tol


def _fredkin(state: np.ndarray, control: int, a: int, b: int) -> None:
    """Swap qubits ``a`` and ``b`` where qubit ``control`` is 1 (in place)."""
    idx = np.arange(state.size)
    bit_a = (idx >> a) & 1
    bit_b = (idx >> b) & 1
    sel = (((idx >> control) & 1) == 1) & (bit_a == 1) & (bit_b == 0)
    src = idx[sel]
    dst = src ^ ((1 << a) | (1 << b))
    tmp = state[src].copy()
    state[src] = state[dst]
    state[dst] = tmp


def swap_test_circuit_p0(target: np.ndarray, generated: np.ndarray) -> float:
    """Exact control-qubit zero probability of the (2n+1)-qubit swap test."""
    n = num_qubits(target)
    if target.shape != generated.shape:
        raise SizeError("swap test needs equal register sizes")
    m = 2 * n + 1
    if m > min(MAX_QUBITS, SWAP_TEST_MAX_QUBITS):
        raise SizeError(f"swap test on {n}-qubit registers needs {m} qubits (cap {SWAP_TEST_MAX_QUBITS})")
    from . import kernels

    # qubits 0..n-1 hold the target, n..2n-1 the generated state, 2n is the control
    state = np.kron(np.array([1.0, 0.0]), np.kron(generated, target)).astype(complex)
    flat = state.reshape(1, -1)
    kernels.apply_1q(flat, _H, 2 * n)
    for i in range(n):
        _fredkin(state, 2 * n, i, n + i)
    kernels.apply_1q(flat, _H, 2 * n)
    return prob_zero_exact(state, 2 * n)


def swap_test_overlap(target, generated, plan: ShotPlan | None = None, mode: str = "analytic") -> ExpectationEstimate:
    """Estimate ``|<psi_t|psi_g>|^2`` from the swap-test control qubit.

    ``analytic`` uses ``p0 = (1 + F) / 2`` directly; ``full_circuit``
    simulates the controlled-swap circuit. ``plan=None`` gives the exact value.
    """
    if mode == "analytic":
        if target.shape != generated.shape:
            raise SizeError("swap test needs equal register sizes")
        p0 = 0.5 * (1.0 + abs(np.vdot(target, generated)) ** 2)
    elif mode == "full_circuit":
        p0 = swap_test_circuit_p0(target, generated)
    else:
        raise ContractError(f"unknown swap-test mode {mode!r}")
    if plan is None:
        return ExpectationEstimate(float(np.clip(2.0 * p0 - 1.0, 0.0, 1.0)), 0)
    k = sample_counts(p0, plan.shots, plan.rng("swap_test"))
    return ExpectationEstimate(float(np.clip(2.0 * k / plan.shots - 1.0, 0.0, 1.0)), plan.shots)
