"""Alternating generator/discriminator training with an entropy-based stop.

Row ``t`` of the metrics describes the players' parameters after ``t``
updates. Each iteration logs its row, checks the stopping rule on the
estimated ancilla entropy, then performs the generator turn followed by the
discriminator turn (which already sees the new generator).
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from .circuits import Circuit, LayerSpec, build_layered, make_target, prepare, random_params
from .errors import ConfigError
from .grad import (
    ExecutionCounter,
    GradientRequest,
    branch_outputs,
    disc_gradient,
    gen_gradient,
    value_estimate,
)
from .measure import ShotPlan, bee_estimate, stream
from .optim import IRpropConfig, Optimizer
from .qstate import LN2, bloch_from_density, entropy_from_bloch, reduce_to_qubit, trace_distance_pure


@dataclass(frozen=True)
class StopConfig:
    window: int = 20
    epsilon_ln2: float = 0.05
    min_iters: int = 50
    enabled: bool = True

    def __post_init__(self):
        if self.window < 2:
            raise ConfigError("stop window must be >= 2")
        if self.epsilon_ln2 <= 0:
            raise ConfigError("epsilon_ln2 must be positive")


@dataclass(frozen=True)
class GameConfig:
    n: int = 4
    c_t: int = 2
    c_g: int = 2
    c_d: int = 2
    prior_t: float = 0.5
    shots: int = 100
    bee_shots: int = 100
    max_iters: int = 300
    gen_steps_per_iter: int = 1
    disc_steps_per_iter: int = 1
    optimizer: str = "irprop"
    irprop: IRpropConfig = field(default_factory=IRpropConfig)
    gdm_epsilon: float = 0.01
    gdm_mu: float = 0.9
    stop: StopConfig = field(default_factory=StopConfig)
    target_seed: int = 0
    init_seed: int = 1
    shot_seed: int = 2
    common_random_numbers: bool = False
    wall_clock: bool = False

    def __post_init__(self):
        if self.n < 2:
            raise ConfigError("layered circuits need n >= 2")
        for name in ("c_t", "c_g", "c_d", "shots", "bee_shots", "gen_steps_per_iter", "disc_steps_per_iter"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1")
        if self.max_iters < 0:
            raise ConfigError("max_iters must be >= 0")
        if not 0.0 <= self.prior_t <= 1.0:
            raise ConfigError("prior_t must lie in [0, 1]")
        if self.optimizer not in ("irprop", "gdm"):
            raise ConfigError(f"optimizer must be 'irprop' or 'gdm', got {self.optimizer!r}")

    @property
    def prior_g(self) -> float:
        return 1.0 - self.prior_t

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class MetricsRow:
    iter: int
    value_est: float
    bee_est: float
    bee_exact: float
    trace_dist: float
    wall_ms: int = 0

    @classmethod
    def header(cls) -> list[str]:
        return [f.name for f in fields(cls)]


@dataclass
class TrainResult:
    gen_params: np.ndarray
    disc_params: np.ndarray
    metrics: list[MetricsRow]
    stop_reason: str
    counter: ExecutionCounter

    @property
    def final_trace_dist(self) -> float:
        return self.metrics[-1].trace_dist if self.metrics else float("nan")


def should_stop(bee_history, stop: StopConfig, iteration: int) -> bool:
    """True once the last ``window`` entropy estimates sit flat near ln 2."""
    w = stop.window
    if iteration < stop.min_iters or len(bee_history) < w:
        return False
    recent = np.asarray(bee_history[-w:], dtype=float)
    if np.any(np.abs(recent - LN2) > stop.epsilon_ln2):
        return False
    slope = np.polyfit(np.arange(w), recent, 1)[0]
    return abs(slope) < stop.epsilon_ln2 / w


def evaluate_exact(target: np.ndarray, gen_params, gen: Circuit) -> tuple[float, np.ndarray]:
    """Simulator-only diagnostic: trace distance to the target and the generated state."""
    psi_g = prepare(gen, gen_params)
    return trace_distance_pure(target, psi_g), psi_g


def build_players(config: GameConfig) -> tuple[Circuit, Circuit]:
    gen = build_layered(LayerSpec(config.n, config.c_g))
    disc = build_layered(LayerSpec(config.n + 1, config.c_d))
    return gen, disc


def initial_params(config: GameConfig, gen: Circuit, disc: Circuit):
    rng = stream(config.init_seed, "init")
    return random_params(gen, rng), random_params(disc, rng)


def train(config: GameConfig, target: np.ndarray | None = None, callback=None) -> TrainResult:
    """Play the game for up to ``max_iters`` iterations.

    ``target`` defaults to the state of a hidden random circuit drawn from
    ``config.target_seed``; only that state is visible to the players.
    ``callback(row)`` is invoked after every logged row.
    """
    if target is None:
        _, _, target = make_target(config.target_seed, config.n, config.c_t)
    gen, disc = build_players(config)
    theta, phi = initial_params(config, gen, disc)
    counter = ExecutionCounter()
    if config.max_iters == 0:
        return TrainResult(theta, phi, [], "max_iters", counter)

    gen_opt = Optimizer(config.optimizer, gen.num_params, config.irprop, config.gdm_epsilon, config.gdm_mu)
    disc_opt = Optimizer(config.optimizer, disc.num_params, config.irprop, config.gdm_epsilon, config.gdm_mu,
                         maximize=True)
    n = config.n
    rows: list[MetricsRow] = []
    bees: list[float] = []
    stop_reason = "max_iters"

    for it in range(config.max_iters + 1):
        t0 = time.perf_counter()
        plan = ShotPlan(config.shots, config.shot_seed, (it,))
        req = GradientRequest(theta, phi, config.prior_t, plan.child("value"),
                              common_random_numbers=config.common_random_numbers)
        v = value_estimate(target, gen, disc, req, counter)
        _, out_g = branch_outputs(target, gen, disc, theta, phi)
        bee = bee_estimate(out_g, n, ShotPlan(config.bee_shots, config.shot_seed, (it, "bee")))
        bee_exact = entropy_from_bloch(bloch_from_density(reduce_to_qubit(out_g, n)))
        dist, _ = evaluate_exact(target, theta, gen)
        row = MetricsRow(it, v, bee, bee_exact, dist)
        rows.append(row)
        bees.append(bee)

        if config.stop.enabled and should_stop(bees, config.stop, it):
            stop_reason = "bee_converged"
        elif it < config.max_iters:
            for s in range(config.gen_steps_per_iter):
                req = GradientRequest(theta, phi, config.prior_t, plan.child("gen", s),
                                      common_random_numbers=config.common_random_numbers)
                theta = gen_opt.step(theta, gen_gradient(target, gen, disc, req, counter))
            for s in range(config.disc_steps_per_iter):
                req = GradientRequest(theta, phi, config.prior_t, plan.child("disc", s),
                                      common_random_numbers=config.common_random_numbers)
                phi = disc_opt.step(phi, disc_gradient(target, gen, disc, req, counter))
        if config.wall_clock:
            row.wall_ms = int(round(1000 * (time.perf_counter() - t0)))
        if callback is not None:
            callback(row)
        if stop_reason != "max_iters":
            break

    return TrainResult(theta, phi, rows, stop_reason, counter)
