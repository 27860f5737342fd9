"""Multiplexer control elimination by power-of-two repetition search.

A multiplexer with ``k`` controls has ``2**k`` operators. If every operator
equals its partner at distance ``d = 2**m`` inside each block of ``2d``
entries, the operator does not depend on the control bit of weight ``d``,
which is control ``k - m`` (controls numbered 1..k from the top wire).
Removing that control halves the multiplexer.

Null entries in the working copy are represented by NaN; real angles are
always finite.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .angles import DEFAULT_TOL, AngleTree, angle_distance

NULL = np.nan


@dataclass(frozen=True, eq=False)
class SimplifiedMux:
    """One multiplexer after control elimination.

    ``retained_controls`` are 1-based indices into the level's original
    controls; control ``c`` sits on qubit ``c - 1``.
    """

    level: int
    retained_controls: tuple[int, ...]
    angles: np.ndarray

    def __post_init__(self):
        controls = tuple(sorted(int(c) for c in self.retained_controls))
        if len(set(controls)) != len(controls):
            raise ValueError("duplicate controls")
        if controls and (controls[0] < 1 or controls[-1] > self.level):
            raise ValueError(f"controls {controls} out of range for level {self.level}")
        angles = np.array(self.angles, dtype=np.float64).ravel()
        if len(angles) != 2 ** len(controls):
            raise ValueError(
                f"{len(controls)} controls need {2 ** len(controls)} angles, got {len(angles)}"
            )
        angles.flags.writeable = False
        object.__setattr__(self, "retained_controls", controls)
        object.__setattr__(self, "angles", angles)

    @property
    def control_qubits(self) -> tuple[int, ...]:
        return tuple(c - 1 for c in self.retained_controls)

    @property
    def target(self) -> int:
        return self.level

    def __eq__(self, other):
        if not isinstance(other, SimplifiedMux):
            return NotImplemented
        return (
            self.level == other.level
            and self.retained_controls == other.retained_controls
            and np.array_equal(self.angles, other.angles)
        )


@dataclass
class RepetitionReport:
    level: int
    removed_controls: list[tuple[int, int]] = field(default_factory=list)
    comparisons: int = 0

    def to_dict(self):
        return {
            "level": self.level,
            "removed": [{"control": c, "distance": d} for c, d in self.removed_controls],
            "comparisons": self.comparisons,
        }


class _Counter:
    __slots__ = ("count",)

    def __init__(self):
        self.count = 0


def repetition_verify(a, d, mux, mux_copy, tol=DEFAULT_TOL, counter=None):
    """Check that ``mux[a:a+d]`` repeats at ``mux[a+d:a+2d]``.

    Marks matching right-hand partners null in ``mux_copy`` (in place) and
    stops at the first mismatch, leaving earlier marks for the caller to roll
    back. Returns ``(valid, mux_copy)``.
    """
    mux = np.asarray(mux)
    left = mux[a : a + d]
    right = mux[a + d : a + 2 * d]
    mismatch = np.flatnonzero(angle_distance(left, right) > tol)
    if len(mismatch):
        first = int(mismatch[0])
        mux_copy[a + d : a + d + first] = NULL
        if counter is not None:
            counter.count += first + 1
        return False, mux_copy
    mux_copy[a + d : a + 2 * d] = NULL
    if counter is not None:
        counter.count += d
    return True, mux_copy


def repetition_search(mux, n, mux_copy, tol=DEFAULT_TOL, report=None):
    """Find the controls of an ``n``-control multiplexer that can be dropped.

    ``mux_copy`` is updated in place with null marks for every confirmed
    pattern. Returns ``(nc, mux_copy)`` where ``nc`` is the list of removable
    control indices in discovery order. If ``report`` is given, removed
    ``(control, d)`` pairs and the comparison count are recorded on it.
    """
    mux = np.asarray(mux, dtype=np.float64)
    size = len(mux)
    counter = _Counter()
    nc = []
    d = 1
    while d <= size // 2:
        disentangled = False
        counter.count += 1
        if angle_distance(mux[d], mux[0]) <= tol:
            mux_org = mux_copy.copy()
            repetitions = size // (2 * d)
            p = 0
            while repetitions > 0:
                repetitions -= 1
                valid, mux_copy = repetition_verify(p, d, mux, mux_copy, tol, counter)
                p += 2 * d
                if not valid:
                    mux_copy[:] = mux_org
                    break
                if repetitions == 0:
                    disentangled = True
        if disentangled:
            removed = n - (d.bit_length() - 1)
            nc.append(removed)
            if report is not None:
                report.removed_controls.append((removed, d))
        d *= 2
    if report is not None:
        report.comparisons += counter.count
    return nc, mux_copy


def simplify_level(level: int, angles, tol: float = DEFAULT_TOL):
    """Simplify a single multiplexer; returns ``(SimplifiedMux, RepetitionReport)``."""
    angles = np.asarray(angles, dtype=np.float64)
    report = RepetitionReport(level)
    mux_copy = angles.copy()
    controls = list(range(1, (len(angles).bit_length() - 1) + 1))
    nc = []
    if len(angles) > 1:
        nc, mux_copy = repetition_search(angles, level, mux_copy, tol, report)
    retained = [c for c in controls if c not in nc]
    survivors = mux_copy[~np.isnan(mux_copy)]
    return SimplifiedMux(level, tuple(retained), survivors), report


def simplify(tree: AngleTree, tol: float = DEFAULT_TOL):
    """Run control elimination over every level of ``tree``.

    Returns the list of :class:`SimplifiedMux` (one per level, in order) and
    the matching list of :class:`RepetitionReport`.
    """
    if tol < 0:
        raise ValueError("tolerance must be non-negative")
    muxes, reports = [], []
    for i, level in enumerate(tree.levels):
        mux, report = simplify_level(i, level, tol)
        muxes.append(mux)
        reports.append(report)
    return muxes, reports


def unsimplified(tree: AngleTree) -> list[SimplifiedMux]:
    """Every level with all of its controls kept."""
    return [
        SimplifiedMux(i, tuple(range(1, i + 1)), level) for i, level in enumerate(tree.levels)
    ]


def expand(muxes: list[SimplifiedMux]) -> AngleTree:
    """Rebuild the full angle tree a list of simplified multiplexers stands for."""
    levels = []
    for mux in muxes:
        i = mux.level
        full = np.empty(2**i)
        retained = mux.retained_controls
        for j in range(2**i):
            # bit of control c in j has weight 2**(i - c)
            sub = 0
            for c in retained:
                sub = (sub << 1) | ((j >> (i - c)) & 1)
            full[j] = mux.angles[sub]
        levels.append(full)
    return AngleTree(tuple(levels))
