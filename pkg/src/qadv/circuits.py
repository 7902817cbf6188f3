"""Parametrized circuits built from CNOTs and Pauli-generator rotations.

A rotation with generator ``H`` (a Pauli string on one or two qubits) and
angle ``theta`` is ``exp(-i theta H / 2) = cos(theta/2) I - i sin(theta/2) H``.
Circuits store their gates front-to-back: ``gates[0]`` acts first.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import ContractError, SizeError
from .qstate import PAULI, num_qubits, zero_state

BLOCK_PARAMS = 15
BLOCK_GATES = 18


@dataclass(frozen=True)
class PauliString:
    ops: str

    def __post_init__(self):
        if len(self.ops) not in (1, 2):
            raise ContractError(f"Pauli generator must act on 1 or 2 qubits, got {self.ops!r}")
        if any(c not in "IXYZ" for c in self.ops):
            raise ContractError(f"invalid Pauli letters in {self.ops!r}")
        if set(self.ops) == {"I"}:
            raise ContractError("all-identity generator does not define a rotation")

    def matrix(self) -> np.ndarray:
        out = PAULI[self.ops[0]]
        for c in self.ops[1:]:
            out = np.kron(out, PAULI[c])
        return out


@dataclass(frozen=True)
class CNOT:
    control: int
    target: int

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.control, self.target)


@dataclass(frozen=True)
class Rotation:
    generator: PauliString
    qubits: tuple[int, ...]
    param_index: int

    def __post_init__(self):
        if len(self.qubits) != len(self.generator.ops):
            raise ContractError("generator length must match the number of qubits")
        if len(set(self.qubits)) != len(self.qubits):
            raise ContractError("rotation qubits must be distinct")


Gate = CNOT | Rotation


@lru_cache(maxsize=None)
def _generator(ops: str) -> np.ndarray:
    return PauliString(ops).matrix()


def rotation_matrix(generator: PauliString | str, theta: float) -> np.ndarray:
    """``cos(theta/2) I - i sin(theta/2) H`` for a Pauli string ``H``."""
    ops = generator if isinstance(generator, str) else generator.ops
    c = math.cos(theta / 2)
    s = math.sin(theta / 2)
    # closed forms for the single-qubit generators used by every layered circuit
    if ops == "Z":
        return np.array([[complex(c, -s), 0], [0, complex(c, s)]])
    if ops == "Y":
        return np.array([[c, -s], [s, c]], dtype=complex)
    if ops == "X":
        return np.array([[c, -1j * s], [-1j * s, c]])
    h = _generator(ops)
    return c * np.eye(h.shape[0]) - 1j * s * h


@dataclass(frozen=True)
class LayerSpec:
    num_qubits: int
    num_layers: int


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    gates: tuple = ()
    num_params: int = 0
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        seen = []
        for g in self.gates:
            for q in g.qubits:
                if not 0 <= q < self.num_qubits:
                    raise ContractError(f"gate {g} touches qubit {q} outside [0, {self.num_qubits})")
            if isinstance(g, CNOT) and g.control == g.target:
                raise ContractError("CNOT control equals target")
            if isinstance(g, Rotation):
                seen.append(g.param_index)
        if sorted(seen) != list(range(self.num_params)):
            raise ContractError("every parameter index must be used by exactly one rotation")

    @property
    def rotations(self) -> list[Rotation]:
        return [g for g in self.gates if isinstance(g, Rotation)]

    def to_dict(self) -> dict:
        return {
            "num_qubits": self.num_qubits,
            "num_params": self.num_params,
            "gates": [
                {"cnot": [g.control, g.target]}
                if isinstance(g, CNOT)
                else {"rot": g.generator.ops, "qubits": list(g.qubits), "param": g.param_index}
                for g in self.gates
            ],
            **self.meta,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, d: dict) -> "Circuit":
        gates = []
        for g in d["gates"]:
            if "cnot" in g:
                gates.append(CNOT(*g["cnot"]))
            else:
                gates.append(Rotation(PauliString(g["rot"]), tuple(g["qubits"]), g["param"]))
        meta = {k: v for k, v in d.items() if k not in ("num_qubits", "num_params", "gates")}
        return cls(d["num_qubits"], tuple(gates), d["num_params"], meta)


def _rot(ops: str, qubits: Sequence[int], idx: int) -> Rotation:
    return Rotation(PauliString(ops), tuple(qubits), idx)


def two_qubit_block(q1: int, q2: int, param_base: int) -> list:
    """Three-CNOT, 15-rotation block able to reach any two-qubit unitary.

    Local Z-Y-Z Euler rotations on both qubits, an entangling core with
    three alternating CNOTs and three rotations carrying the XX/YY/ZZ
    interaction angles, then local Z-Y-Z rotations again.
    """
    if q1 == q2:
        raise ContractError("block qubits must differ")
    p = iter(range(param_base, param_base + BLOCK_PARAMS))
    gates: list = []
    for q in (q1, q2):
        gates += [_rot("Z", [q], next(p)), _rot("Y", [q], next(p)), _rot("Z", [q], next(p))]
    gates += [
        CNOT(q1, q2),
        _rot("Z", [q2], next(p)),
        _rot("Y", [q1], next(p)),
        CNOT(q2, q1),
        _rot("Y", [q1], next(p)),
        CNOT(q1, q2),
    ]
    for q in (q1, q2):
        gates += [_rot("Z", [q], next(p)), _rot("Y", [q], next(p)), _rot("Z", [q], next(p))]
    return gates


def layered_gates(spec: LayerSpec, start_param: int = 0) -> list:
    """Gate list of the layered layout with parameter indices starting at ``start_param``."""
    m, c = spec.num_qubits, spec.num_layers
    if m < 2:
        raise SizeError("layered circuits need at least two qubits")
    if c < 1:
        raise SizeError("need at least one layer")
    gates: list = []
    idx = start_param
    for _ in range(c):
        for q in brick_order(m):
            gates += two_qubit_block(q, q + 1, idx)
            idx += BLOCK_PARAMS
    return gates


def brick_order(m: int) -> list[int]:
    """Lower qubit of each block in one layer: even pairs, then odd pairs."""
    return list(range(0, m - 1, 2)) + list(range(1, m - 1, 2))


def build_layered(spec: LayerSpec) -> Circuit:
    """``num_layers`` brick layers, each with ``m - 1`` two-qubit blocks on adjacent pairs.

    A layer places blocks on (0,1), (2,3), ... and then on (1,2), (3,4), ...
    """
    gates = layered_gates(spec)
    return Circuit(spec.num_qubits, tuple(gates), num_layered_params(spec.num_qubits, spec.num_layers),
                   {"layers": spec.num_layers})


def num_layered_params(m: int, c: int) -> int:
    return c * (m - 1) * BLOCK_PARAMS


def gate_matrix(gate, params) -> np.ndarray:
    if isinstance(gate, CNOT):
        raise TypeError("CNOT has no parameter-dependent matrix")
    return rotation_matrix(gate.generator, params[gate.param_index])


def _apply_gates(gates: Iterable, params, states: np.ndarray) -> None:
    """Run gates in order on a (batch, d) array in place; no validation."""
    for g in gates:
        if isinstance(g, CNOT):
            kernels.apply_cnot(states, g.control, g.target)
        elif len(g.qubits) == 1:
            kernels.apply_1q(states, rotation_matrix(g.generator, params[g.param_index]), g.qubits[0])
        else:
            kernels.apply_2q(states, rotation_matrix(g.generator, params[g.param_index]), *g.qubits)


def apply(circuit: Circuit, params, state: np.ndarray) -> np.ndarray:
    """Apply ``circuit`` to ``state`` in place and return it."""
    params = np.asarray(params, dtype=float)
    if params.shape != (circuit.num_params,):
        raise SizeError(f"expected {circuit.num_params} parameters, got {params.shape}")
    if num_qubits(state) < circuit.num_qubits:
        raise SizeError("state has fewer qubits than the circuit")
    _apply_gates(circuit.gates, params, state.reshape(1, -1))
    return state


def prepare(circuit: Circuit, params, m: int | None = None) -> np.ndarray:
    """``circuit |0...0>`` on ``m`` qubits (defaults to the circuit width)."""
    return apply(circuit, params, zero_state(m or circuit.num_qubits))


def unitary(circuit: Circuit, params) -> np.ndarray:
    """Dense matrix of the circuit, column ``k`` = circuit applied to ``|k>``."""
    d = 1 << circuit.num_qubits
    cols = np.eye(d, dtype=complex)
    params = np.asarray(params, dtype=float)
    _apply_gates(circuit.gates, params, cols)
    return cols.T.copy()


def random_params(circuit: Circuit, rng: np.random.Generator) -> np.ndarray:
    return rng.uniform(-np.pi, np.pi, size=circuit.num_params)


def make_target(seed: int, m: int, c_t: int) -> tuple[Circuit, np.ndarray, np.ndarray]:
    """Hidden random layered circuit and the state it prepares.

    Only the returned state should be handed to a trainer; the circuit and
    its parameters are kept for provenance and tests.
    """
    circ = build_layered(LayerSpec(m, c_t))
    params = random_params(circ, np.random.default_rng(seed))
    return circ, params, prepare(circ, params)


def layout_description(kind: str, spec: LayerSpec, seed: int | None = None) -> dict:
    """JSON-serializable summary of a layered layout for experiment manifests."""
    return {
        "kind": kind,
        "qubits": spec.num_qubits,
        "layers": spec.num_layers,
        "block_order": [[q, q + 1] for q in brick_order(spec.num_qubits)],
        "block_params": BLOCK_PARAMS,
        "num_params": num_layered_params(spec.num_qubits, spec.num_layers),
        "seed": seed,
    }
