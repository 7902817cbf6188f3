"""Shot sampling of a single qubit and scaled-direct-inversion Bloch estimates.

Random streams are counter-based (Philox) and keyed by a seed plus a tuple
of integer/string tags, so every estimate draws from its own isolated
stream regardless of evaluation order.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ContractError
from .qstate import entropy_from_bloch, num_qubits, _check_qubit

_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_SDG = np.array([[1, 0], [0, -1j]], dtype=complex)
# y-basis change: S^dagger then H maps |+i> -> |0>
BASIS_CHANGE = {"x": _H, "y": _H @ _SDG, "z": None}


def _tag(t) -> int:
    if isinstance(t, str):
        return zlib.crc32(t.encode())
    return int(t)


def stream(seed: int, *tags) -> np.random.Generator:
    """Independent generator for ``(seed, *tags)``."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(_tag(t) for t in tags))
    return np.random.Generator(np.random.Philox(ss))


@dataclass(frozen=True)
class ShotPlan:
    shots: int
    rng_seed: int
    tags: tuple = ()

    def __post_init__(self):
        if self.shots < 1:
            raise ContractError("shots must be >= 1")

    def rng(self, *extra) -> np.random.Generator:
        return stream(self.rng_seed, *self.tags, *extra)

    def child(self, *extra) -> "ShotPlan":
        return ShotPlan(self.shots, self.rng_seed, self.tags + tuple(extra))


@dataclass(frozen=True)
class ExpectationEstimate:
    mean: float
    shots: int  # 0 marks an exact (infinite-shot) value


def prob_zero_exact(state: np.ndarray, q: int) -> float:
    """Probability that measuring qubit ``q`` yields 0."""
    _check_qubit(q, num_qubits(state))
    a0 = state.reshape(-1, 2, 1 << q)[:, 0, :]
    return float(min(1.0, np.vdot(a0, a0).real))


def sample_counts(p, shots: int, rng: np.random.Generator) -> np.ndarray:
    """Number of zero outcomes in ``shots`` i.i.d. Bernoulli(p) trials, vectorized over ``p``."""
    return rng.binomial(shots, np.clip(p, 0.0, 1.0))


def sample_zero(state: np.ndarray, q: int, plan: ShotPlan) -> ExpectationEstimate:
    p = prob_zero_exact(state, q)
    k = sample_counts(p, plan.shots, plan.rng("p0"))
    return ExpectationEstimate(float(k) / plan.shots, plan.shots)


def pauli_expectation(state: np.ndarray, q: int, axis: str, plan: ShotPlan | None = None) -> ExpectationEstimate:
    """Estimate ``<sigma_axis>`` on qubit ``q``; ``plan=None`` returns the exact value."""
    if axis not in BASIS_CHANGE:
        raise ContractError(f"axis must be one of x, y, z; got {axis!r}")
    _check_qubit(q, num_qubits(state))
    u = BASIS_CHANGE[axis]
    if u is not None:
        state = state.copy()
        kernels.apply_1q(state.reshape(1, -1), u, q)
    p = prob_zero_exact(state, q)
    if plan is None:
        return ExpectationEstimate(2.0 * p - 1.0, 0)
    k = sample_counts(p, plan.shots, plan.rng("pauli", axis))
    return ExpectationEstimate((2.0 * k - plan.shots) / plan.shots, plan.shots)


def sdi_bloch(ex: ExpectationEstimate, ey: ExpectationEstimate, ez: ExpectationEstimate) -> np.ndarray:
    """Raw Bloch vector from the three means, pulled back onto the unit ball if outside."""
    r = np.array([ex.mean, ey.mean, ez.mean], dtype=float)
    length = np.linalg.norm(r)
    return r / length if length > 1.0 else r


def bee_estimate(state: np.ndarray, q: int, plan: ShotPlan | None = None) -> float:
    """Entanglement entropy (nats) between qubit ``q`` and the rest, via SDI tomography."""
    ests = [pauli_expectation(state, q, a, plan) for a in "xyz"]
    return entropy_from_bloch(sdi_bloch(*ests))
