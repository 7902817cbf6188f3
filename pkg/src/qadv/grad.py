"""Value function and parameter-shift gradients of the adversarial game.

The discriminator ``D`` acts on ``n + 1`` qubits; the ancilla is qubit ``n``
(the most significant bit) and outcome 0 means "target". With
``p_t = P(0 | D, target)`` and ``p_g = P(0 | D, G|0>)`` the value is
``V = P(t) p_t - P(g) p_g``.

Every shifted-circuit probability ``P(0 | ... theta_l +- pi/2 ...)`` is
computed from a single forward sweep (states after each rotation) and a
single backward sweep of the ancilla-zero projector written as a stack of
kets, ``K <- U^dagger K`` (stored conjugated, i.e. ``conj(K) <- U^T conj(K)``).
The probability of a state ``phi`` sitting just after gate ``l`` is then
``|| conj(K_l) @ phi ||^2``. This is algebraically
the same number a full re-execution of the shifted circuit would give, at a
cost of O(gates * 2**(2n)) per gradient instead of O(gates**2 * 2**n).
In sampled mode each shifted probability is turned into a shot-noise
estimate by a binomial draw, which is distributionally identical to
sampling the ancilla ``shots`` times.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import kernels
from .circuits import CNOT, Circuit, _apply_gates, prepare, rotation_matrix
from .errors import ConfigError, SizeError
from .measure import ShotPlan, prob_zero_exact
from .qstate import num_qubits

SHIFT = np.pi / 2


@dataclass(frozen=True)
class GradientRequest:
    gen_params: np.ndarray
    disc_params: np.ndarray
    prior_t: float = 0.5
    plan: ShotPlan | None = None
    mode: str = "sampled"
    common_random_numbers: bool = False

    def __post_init__(self):
        if self.mode not in ("sampled", "exact"):
            raise ConfigError(f"mode must be 'sampled' or 'exact', got {self.mode!r}")
        if self.mode == "sampled" and self.plan is None:
            raise ConfigError("sampled mode needs a ShotPlan")
        if not 0.0 <= self.prior_t <= 1.0:
            raise ConfigError("prior_t must lie in [0, 1]")

    @property
    def prior_g(self) -> float:
        return 1.0 - self.prior_t

    @property
    def exact(self) -> bool:
        return self.mode == "exact"


@dataclass
class ExecutionCounter:
    """Tally of logical circuit executions (one per estimated probability)."""

    executions: int = 0
    by_purpose: dict = field(default_factory=dict)

    def add(self, purpose: str, k: int) -> None:
        self.executions += k
        self.by_purpose[purpose] = self.by_purpose.get(purpose, 0) + k


def check_game(target: np.ndarray, gen: Circuit, disc: Circuit) -> int:
    n = num_qubits(target)
    if gen.num_qubits != n:
        raise SizeError(f"generator acts on {gen.num_qubits} qubits, target has {n}")
    if disc.num_qubits != n + 1:
        raise SizeError(f"discriminator must act on {n + 1} qubits, got {disc.num_qubits}")
    return n


def with_ancilla(psi: np.ndarray) -> np.ndarray:
    """``psi (x) |0>`` with the ancilla as the most significant qubit."""
    out = np.zeros(2 * psi.shape[-1], dtype=complex)
    out[: psi.shape[-1]] = psi
    return out


def branch_outputs(target, gen: Circuit, disc: Circuit, gen_params, disc_params):
    """``(D(target (x) 0), D(G|0> (x) 0))`` as full ``n+1``-qubit states."""
    check_game(target, gen, disc)
    out = []
    for psi in (target, prepare(gen, gen_params)):
        s = with_ancilla(psi)
        _apply_gates(disc.gates, np.asarray(disc_params, dtype=float), s.reshape(1, -1))
        out.append(s)
    return out[0], out[1]


def _estimate(p, plan: ShotPlan | None, *tags):
    if plan is None:
        return np.asarray(p, dtype=float)
    k = plan.rng(*tags).binomial(plan.shots, np.clip(p, 0.0, 1.0))
    return k / plan.shots


def _estimate_pair(p_plus, p_minus, req: GradientRequest, purpose: str):
    """Shot estimates of the two shifted probabilities, vectorized over parameters."""
    if req.exact:
        return p_plus, p_minus
    plan = req.plan
    if req.common_random_numbers:
        u = plan.rng(purpose, "crn").random((plan.shots,) + np.shape(p_plus))
        return (u < p_plus).mean(axis=0), (u < p_minus).mean(axis=0)
    return _estimate(p_plus, plan, purpose, "+"), _estimate(p_minus, plan, purpose, "-")


def value_estimate(target, gen: Circuit, disc: Circuit, req: GradientRequest, counter=None) -> float:
    """``P(t) p_t - P(g) p_g`` with exact or shot-estimated probabilities."""
    n = check_game(target, gen, disc)
    out_t, out_g = branch_outputs(target, gen, disc, req.gen_params, req.disc_params)
    p_t = prob_zero_exact(out_t, n)
    p_g = prob_zero_exact(out_g, n)
    if not req.exact:
        p_t = float(_estimate(p_t, req.plan, "value", "t"))
        p_g = float(_estimate(p_g, req.plan, "value", "g"))
    if counter is not None:
        counter.add("value", 2)
    return req.prior_t * p_t - req.prior_g * p_g


def _ancilla_zero_kets(n: int) -> np.ndarray:
    d = 1 << (n + 1)
    return np.eye(d // 2, d, dtype=complex)


@lru_cache(maxsize=None)
def _shift_matrix(ops: str, sign: int) -> np.ndarray:
    return rotation_matrix(ops, sign * SHIFT)


def _apply_matrix(states, u, qubits) -> None:
    if len(qubits) == 1:
        kernels.apply_1q(states, u, qubits[0])
    else:
        kernels.apply_2q(states, u, *qubits)


def _backward(gates, params, kets: np.ndarray, inputs: np.ndarray | None, num_params: int):
    """Propagate conjugated ``kets`` backward through ``gates``.

    With ``inputs`` (shape ``(b, dim)``), also return the ancilla-zero
    probabilities of every +/- pi/2 shifted circuit applied to every input,
    as arrays of shape ``(num_params, b)``.
    """
    kets = np.array(kets, dtype=complex, order="C")
    p_plus = p_minus = None
    after = {}
    if inputs is not None:
        b = inputs.shape[0]
        p_plus = np.empty((num_params, b))
        p_minus = np.empty((num_params, b))
        s = np.array(inputs, dtype=complex, order="C")
        for i, g in enumerate(gates):
            _apply_gates((g,), params, s)
            if not isinstance(g, CNOT):
                after[i] = s.copy()
    for i in range(len(gates) - 1, -1, -1):
        g = gates[i]
        if isinstance(g, CNOT):
            kernels.apply_cnot(kets, g.control, g.target)
            continue
        if inputs is not None:
            # R(theta +- s) = R(+-s) R(theta)
            plus = after[i].copy()
            minus = after[i].copy()
            _apply_matrix(plus, _shift_matrix(g.generator.ops, 1), g.qubits)
            _apply_matrix(minus, _shift_matrix(g.generator.ops, -1), g.qubits)
            amp = kets @ np.concatenate([plus, minus]).T
            probs = np.einsum("kb,kb->b", amp.real, amp.real) + np.einsum("kb,kb->b", amp.imag, amp.imag)
            p_plus[g.param_index] = probs[:b]
            p_minus[g.param_index] = probs[b:]
        _apply_matrix(kets, np.ascontiguousarray(rotation_matrix(g.generator, params[g.param_index]).T), g.qubits)
    return kets, p_plus, p_minus


def shifted_probabilities(target, gen: Circuit, disc: Circuit, gen_params, disc_params,
                          need_gen: bool = True, need_disc: bool = True) -> dict:
    """Exact ancilla-zero probabilities of every shifted circuit of the game.

    Keys: ``disc_t_plus``/``disc_t_minus``/``disc_g_plus``/``disc_g_minus``
    (shape ``(|phi|,)``) and ``gen_plus``/``gen_minus`` (shape ``(|theta|,)``).
    """
    n = check_game(target, gen, disc)
    gen_params = np.asarray(gen_params, dtype=float)
    disc_params = np.asarray(disc_params, dtype=float)
    if gen_params.shape != (gen.num_params,) or disc_params.shape != (disc.num_params,):
        raise SizeError("parameter vector length does not match its circuit")
    psi_g = prepare(gen, gen_params)
    out = {}
    inputs = None
    if need_disc:
        inputs = np.stack([with_ancilla(target), with_ancilla(psi_g)])
    kets, pp, pm = _backward(disc.gates, disc_params, _ancilla_zero_kets(n), inputs, disc.num_params)
    if need_disc:
        out.update(disc_t_plus=pp[:, 0], disc_t_minus=pm[:, 0], disc_g_plus=pp[:, 1], disc_g_minus=pm[:, 1])
    if need_gen:
        # G never touches the ancilla, so only the ancilla-0 half of each ket matters
        half = np.ascontiguousarray(kets[:, : 1 << n])
        start = np.zeros((1, 1 << n), dtype=complex)
        start[0, 0] = 1.0
        _, gp, gm = _backward(gen.gates, gen_params, half, start, gen.num_params)
        out.update(gen_plus=gp[:, 0], gen_minus=gm[:, 0])
    return out


def gen_gradient(target, gen: Circuit, disc: Circuit, req: GradientRequest, counter=None) -> np.ndarray:
    """``dV/dtheta_l = -(P(g)/2) (p0[D G_l+] - p0[D G_l-])``."""
    pr = shifted_probabilities(target, gen, disc, req.gen_params, req.disc_params, need_disc=False)
    plus, minus = _estimate_pair(pr["gen_plus"], pr["gen_minus"], req, "gen")
    if counter is not None:
        counter.add("gen_gradient", 2 * gen.num_params)
    return -0.5 * req.prior_g * (plus - minus)


def disc_gradient(target, gen: Circuit, disc: Circuit, req: GradientRequest, counter=None) -> np.ndarray:
    """Target-branch and generated-branch shift differences, weighted by the priors."""
    pr = shifted_probabilities(target, gen, disc, req.gen_params, req.disc_params, need_gen=False)
    tp, tm = _estimate_pair(pr["disc_t_plus"], pr["disc_t_minus"], req, "disc_t")
    gp, gm = _estimate_pair(pr["disc_g_plus"], pr["disc_g_minus"], req, "disc_g")
    if counter is not None:
        counter.add("disc_gradient", 4 * disc.num_params)
    return 0.5 * req.prior_t * (tp - tm) - 0.5 * req.prior_g * (gp - gm)


def _exact_value(target, gen, disc, gen_params, disc_params, prior_t) -> float:
    req = GradientRequest(np.asarray(gen_params), np.asarray(disc_params), prior_t, mode="exact")
    return value_estimate(target, gen, disc, req)


def pi_shift_identity_check(gen: Circuit, disc: Circuit, target, gen_params, disc_params,
                            prior_t: float = 0.5, tol: float = 1e-9) -> bool:
    """Check the analytic gradient against ``(V(w + pi/2) - V(w - pi/2)) / 2`` by full re-simulation.

    The right-hand side is the central difference with step ``pi`` rescaled
    by ``pi / 2``; it is evaluated without the backward-sweep machinery.
    """
    gen_params = np.asarray(gen_params, dtype=float)
    disc_params = np.asarray(disc_params, dtype=float)
    req = GradientRequest(gen_params, disc_params, prior_t, mode="exact")
    analytic = [gen_gradient(target, gen, disc, req), disc_gradient(target, gen, disc, req)]
    worst = 0.0
    for which, vec in enumerate((gen_params, disc_params)):
        for i in range(vec.size):
            vals = []
            for s in (SHIFT, -SHIFT):
                w = vec.copy()
                w[i] += s
                args = (w, disc_params) if which == 0 else (gen_params, w)
                vals.append(_exact_value(target, gen, disc, *args, prior_t))
            worst = max(worst, abs(analytic[which][i] - 0.5 * (vals[0] - vals[1])))
    return worst < tol
