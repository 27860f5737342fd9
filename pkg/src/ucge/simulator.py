"""Dense statevector simulator used as the correctness oracle."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _accel
from .circuit import Circuit
from .state import StateVector

MAX_QUBITS = 24
MAX_UNITARY_QUBITS = 10


class ResourceError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class DenseState:
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128).ravel()
        size = len(amps)
        if size < 1 or size & (size - 1):
            raise ValueError(f"length {size} is not a power of two")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def num_qubits(self) -> int:
        return len(self.amplitudes).bit_length() - 1

    @classmethod
    def zero(cls, num_qubits: int) -> "DenseState":
        amps = np.zeros(2**num_qubits, dtype=np.complex128)
        amps[0] = 1.0
        return cls(amps)

    @classmethod
    def basis(cls, num_qubits: int, index: int) -> "DenseState":
        amps = np.zeros(2**num_qubits, dtype=np.complex128)
        amps[index] = 1.0
        return cls(amps)

    @classmethod
    def from_state(cls, state: StateVector) -> "DenseState":
        return cls(state.amplitudes)


def _guard(n, limit):
    if n > limit:
        raise ResourceError(f"{n} qubits exceeds the simulator limit of {limit}")


def run(circuit: Circuit, initial: DenseState | None = None, use_numba=None) -> DenseState:
    """Apply ``circuit`` to ``initial`` (default |0...0>) and return the result."""
    n = circuit.num_qubits
    _guard(n, MAX_QUBITS)
    if initial is None:
        initial = DenseState.zero(n)
    if initial.num_qubits != n:
        raise ValueError(f"circuit has {n} qubits but the state has {initial.num_qubits}")
    states = initial.amplitudes.copy().reshape(-1, 1)
    _accel.apply_gates(*circuit.encode(), states, n, use_numba=use_numba)
    return DenseState(states[:, 0])


def fidelity(a: DenseState | StateVector, b: DenseState | StateVector) -> float:
    """``|<a|b>|`` for two pure states of equal size."""
    va = np.asarray(a.amplitudes)
    vb = np.asarray(b.amplitudes)
    if va.shape != vb.shape:
        raise ValueError(f"size mismatch: {va.shape} vs {vb.shape}")
    return float(abs(np.vdot(va, vb)))


def unitary_of(circuit: Circuit, use_numba=None) -> np.ndarray:
    """Dense unitary of ``circuit``; column ``j`` is the image of basis state ``j``."""
    n = circuit.num_qubits
    _guard(n, MAX_UNITARY_QUBITS)
    columns = np.eye(2**n, dtype=np.complex128)
    _accel.apply_gates(*circuit.encode(), columns, n, use_numba=use_numba)
    return columns


def prepare_fidelity(circuit: Circuit, target: StateVector, use_numba=None) -> float:
    return fidelity(run(circuit, use_numba=use_numba), target)
