"""Ry angle tree for real state preparation.

Level ``i`` of the tree is the operator list of the multiplexer that targets
qubit ``i`` with qubits ``0..i-1`` as controls; entry ``j`` is the rotation
applied when those controls read ``j`` (qubit 0 most significant).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .state import StateVector

DEFAULT_TOL = 1e-8
_FOUR_PI = 4.0 * math.pi


@dataclass(frozen=True, eq=False)
class AngleTree:
    levels: tuple[np.ndarray, ...]

    def __post_init__(self):
        levels = []
        for i, level in enumerate(self.levels):
            arr = np.array(level, dtype=np.float64).ravel()
            if len(arr) != 2**i:
                raise ValueError(f"level {i} must hold {2**i} angles, got {len(arr)}")
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"level {i} contains non-finite angles")
            arr.flags.writeable = False
            levels.append(arr)
        object.__setattr__(self, "levels", tuple(levels))

    @property
    def num_qubits(self) -> int:
        return len(self.levels)

    def __len__(self):
        return len(self.levels)

    def __getitem__(self, i):
        return self.levels[i]


def canonical_angle(theta):
    """Map angles into (-2pi, 2pi], the period of Ry."""
    r = np.mod(theta, _FOUR_PI)
    return np.where(r > 2.0 * math.pi, r - _FOUR_PI, r)


def angle_distance(a, b):
    """Distance between rotations modulo 4pi (works elementwise on arrays)."""
    return np.abs(canonical_angle(np.subtract(a, b)))


def angles_equal(a: float, b: float, tol: float = DEFAULT_TOL) -> bool:
    """Operator equality used by the simplifier: Ry(a) == Ry(b) within ``tol``."""
    if tol < 0:
        raise ValueError("tolerance must be non-negative")
    return bool(angle_distance(a, b) <= tol)


def _pair_angles(left, right, full_range):
    # full_range keeps the sign of the pair in the angle (root only); elsewhere
    # the sign is pushed into the parent value so product factors cancel
    norm = np.hypot(left, right)
    if full_range:
        theta = 2.0 * np.arctan2(right, left)
        parent = norm
    else:
        flip = (left < 0) | ((left == 0) & (right < 0))
        sign = np.where(flip, -1.0, 1.0)
        theta = 2.0 * np.arctan2(sign * right, sign * left)
        parent = sign * norm
    zero = norm == 0
    theta = np.where(zero, 0.0, theta)
    return theta, np.where(zero, 0.0, parent)


def build_angle_tree(state: StateVector) -> AngleTree:
    """Angles whose multiplexer cascade maps |0...0> onto ``state`` exactly.

    The tree is built bottom-up from amplitude pairs. Below the root each
    parent value carries the sign of its pair, so every level except the root
    has angles in (-pi, pi] and a tensor factor on the top qubits cancels out
    of the angles of the levels beneath it.
    """
    values = np.asarray(state.amplitudes, dtype=np.float64)
    n = state.num_qubits
    levels = [None] * n
    for i in range(n - 1, -1, -1):
        theta, values = _pair_angles(values[0::2], values[1::2], full_range=(i == 0))
        levels[i] = theta
    return AngleTree(tuple(levels))
