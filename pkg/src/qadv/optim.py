"""Sign-based resilient backpropagation (iRprop-) and gradient descent with momentum.

All step functions minimize; wrap them with :func:`ascent_adapter` to
maximize. They are pure: they return new parameter and state objects.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .errors import ConfigError, SizeError

# step sizes used for every preset (radians)
DEFAULT_DELTA_INIT = 1.5 * np.pi * 1e-3
DEFAULT_DELTA_MIN = np.pi * 1e-6
DEFAULT_DELTA_MAX = 6 * np.pi * 1e-3


@dataclass(frozen=True)
class IRpropConfig:
    delta_init: float = DEFAULT_DELTA_INIT
    delta_min: float = DEFAULT_DELTA_MIN
    delta_max: float = DEFAULT_DELTA_MAX
    eta_plus: float = 1.2
    eta_minus: float = 0.5
    explorative: bool = False

    def __post_init__(self):
        if not 0 < self.delta_min <= self.delta_init <= self.delta_max:
            raise ConfigError("need 0 < delta_min <= delta_init <= delta_max")
        if not 0 < self.eta_minus < 1 < self.eta_plus:
            raise ConfigError("need 0 < eta_minus < 1 < eta_plus")
        if self.explorative:
            raise NotImplementedError("explorative Rprop is not implemented")


@dataclass(frozen=True)
class IRpropState:
    step_sizes: np.ndarray
    prev_grads: np.ndarray

    @classmethod
    def initial(cls, size: int, config: IRpropConfig) -> "IRpropState":
        return cls(np.full(size, config.delta_init), np.zeros(size))


def irprop_step(params, grads, state: IRpropState, config: IRpropConfig):
    """One iRprop- update; returns ``(new_params, new_state)``.

    On a sign change the step size shrinks and the current derivative is
    zeroed, so that parameter does not move this step and the next step
    takes the "no information" branch.
    """
    params = np.asarray(params, dtype=float)
    grads = np.array(grads, dtype=float)
    if not (params.shape == grads.shape == state.step_sizes.shape == state.prev_grads.shape):
        raise SizeError("params, grads and optimizer state must have equal length")
    agree = state.prev_grads * grads
    steps = state.step_sizes.copy()
    up = agree > 0
    down = agree < 0
    steps[up] = np.minimum(steps[up] * config.eta_plus, config.delta_max)
    steps[down] = np.maximum(steps[down] * config.eta_minus, config.delta_min)
    grads[down] = 0.0
    new_params = params - np.sign(grads) * steps
    return new_params, IRpropState(steps, grads)


@dataclass(frozen=True)
class GdmState:
    epsilon: float
    mu: float
    prev_delta: np.ndarray

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ConfigError("epsilon must be positive")
        if not 0 <= self.mu < 1:
            raise ConfigError("mu must lie in [0, 1)")

    @classmethod
    def initial(cls, size: int, epsilon: float, mu: float = 0.9) -> "GdmState":
        return cls(epsilon, mu, np.zeros(size))


def gdm_step(params, grads, state: GdmState):
    """``delta = -epsilon * grad + mu * delta_prev``; ``params += delta``."""
    params = np.asarray(params, dtype=float)
    grads = np.asarray(grads, dtype=float)
    if not (params.shape == grads.shape == state.prev_delta.shape):
        raise SizeError("params, grads and optimizer state must have equal length")
    delta = -state.epsilon * grads + state.mu * state.prev_delta
    return params + delta, replace(state, prev_delta=delta)


StepFn = Callable[..., tuple]


def ascent_adapter(step_fn: StepFn) -> StepFn:
    """Turn a descent step into an ascent step by negating the gradient."""

    def ascent(params, grads, *args, **kwargs):
        return step_fn(params, -np.asarray(grads, dtype=float), *args, **kwargs)

    ascent.__wrapped__ = step_fn
    return ascent


class Optimizer:
    """Stateful wrapper pairing a step rule with its state (one per player)."""

    def __init__(self, kind: str, size: int, irprop: IRpropConfig | None = None,
                 epsilon: float = 0.01, mu: float = 0.9, maximize: bool = False):
        self.kind = kind
        if kind == "irprop":
            self.config = irprop or IRpropConfig()
            self.state = IRpropState.initial(size, self.config)
            step = lambda p, g, s: irprop_step(p, g, s, self.config)  # noqa: E731
        elif kind == "gdm":
            self.config = None
            self.state = GdmState.initial(size, epsilon, mu)
            step = gdm_step
        else:
            raise ConfigError(f"unknown optimizer {kind!r}")
        self._step = ascent_adapter(step) if maximize else step

    def step(self, params, grads) -> np.ndarray:
        params, self.state = self._step(params, grads, self.state)
        return params
