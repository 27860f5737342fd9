"""Real amplitude vectors, the state file format and random product states.

Qubit 0 is the most significant bit of the amplitude index throughout the
package, so ``tensor_product(a, b)`` puts ``a`` on the top wires.
"""

from __future__ import annotations

import io
import logging
import math
from dataclasses import dataclass
from typing import IO, Sequence, Union

import numpy as np

logger = logging.getLogger(__name__)

NORM_TOL = 1e-12
ZERO_NORM = 1e-12
RENORM_WARN = 1e-6


class StateFormatError(ValueError):
    """Raised for malformed state files or invalid amplitude vectors."""


def _is_power_of_two(k: int) -> bool:
    return k >= 1 and k & (k - 1) == 0


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized real amplitude vector over ``num_qubits`` qubits."""

    amplitudes: np.ndarray
    renormalized: bool = False

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.float64).ravel()
        if not _is_power_of_two(len(amps)):
            raise StateFormatError(f"length {len(amps)} is not a power of two")
        if not np.all(np.isfinite(amps)):
            raise StateFormatError("amplitudes must be finite reals")
        if abs(np.linalg.norm(amps) - 1.0) > NORM_TOL:
            raise StateFormatError("amplitudes are not normalized")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def num_qubits(self) -> int:
        return len(self.amplitudes).bit_length() - 1

    @classmethod
    def from_unnormalized(cls, values: Sequence[float]) -> "StateVector":
        amps = np.asarray(values, dtype=np.float64).ravel()
        if not _is_power_of_two(len(amps)):
            raise StateFormatError(f"length {len(amps)} is not a power of two")
        if not np.all(np.isfinite(amps)):
            raise StateFormatError("amplitudes must be finite reals")
        norm = float(np.linalg.norm(amps))
        if norm < ZERO_NORM:
            raise StateFormatError("zero vector cannot be normalized")
        return cls(amps / norm, renormalized=abs(norm - 1.0) > RENORM_WARN)

    def __len__(self):
        return len(self.amplitudes)

    def __repr__(self):
        return f"StateVector(num_qubits={self.num_qubits}, amplitudes={self.amplitudes!r})"


@dataclass(frozen=True)
class PartitionSpec:
    """Sizes of the disentangled blocks, top block first, plus an RNG seed."""

    block_sizes: tuple[int, ...]
    seed: int = 0

    def __post_init__(self):
        sizes = tuple(int(b) for b in self.block_sizes)
        if not sizes or any(b < 1 for b in sizes):
            raise ValueError(f"block sizes must be positive, got {self.block_sizes}")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        object.__setattr__(self, "block_sizes", sizes)
        object.__setattr__(self, "seed", int(self.seed))

    @property
    def num_qubits(self) -> int:
        return sum(self.block_sizes)


Source = Union[str, bytes, IO[str], IO[bytes]]


def load_state(source: Source) -> StateVector:
    """Parse the one-real-per-line state format.

    ``source`` may be the file text itself (``str``/``bytes``) or an open
    stream. Blank lines and ``#`` comments are skipped. The vector is scaled
    to unit norm; ``StateVector.renormalized`` records whether that changed
    the norm by more than 1e-6.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    values = []
    for lineno, raw in enumerate(io.StringIO(source), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            value = float(line)
        except ValueError:
            raise StateFormatError(f"line {lineno}: cannot parse {line!r} as a real number") from None
        if not math.isfinite(value):
            raise StateFormatError(f"line {lineno}: non-finite amplitude {line!r}")
        values.append(value)
    if len(values) < 2 or not _is_power_of_two(len(values)):
        raise StateFormatError(f"length {len(values)} is not a power of two >= 2")
    state = StateVector.from_unnormalized(values)
    if state.renormalized:
        logger.warning("input state was not normalized; rescaled to unit norm")
    return state


def format_state(state: StateVector) -> str:
    """Inverse of :func:`load_state` (17 significant digits per line)."""
    return "".join(f"{a:.17g}\n" for a in state.amplitudes)


def tensor_product(a: StateVector, b: StateVector) -> StateVector:
    return StateVector(np.kron(a.amplitudes, b.amplitudes))


def block_generators(spec: PartitionSpec) -> list[np.random.Generator]:
    """One independent PCG64 stream per block.

    The streams are the children of ``SeedSequence(spec.seed).spawn(k)`` for
    ``k`` blocks, in block order.
    """
    children = np.random.SeedSequence(spec.seed).spawn(len(spec.block_sizes))
    return [np.random.Generator(np.random.PCG64(child)) for child in children]


def random_partitioned_state(spec: PartitionSpec) -> StateVector:
    """Tensor product of independently drawn normalized Gaussian blocks."""
    amps = np.ones(1)
    for size, rng in zip(spec.block_sizes, block_generators(spec)):
        block = rng.standard_normal(2**size)
        amps = np.kron(amps, block / np.linalg.norm(block))
    # kron of unit vectors drifts from unit norm by a few ulps
    return StateVector(amps / np.linalg.norm(amps))
