from __future__ import annotations

from dataclasses import dataclass

from .angles import DEFAULT_TOL, AngleTree, build_angle_tree
from .circuit import Circuit, Metrics, metrics, synthesize
from .simplify import RepetitionReport, SimplifiedMux, simplify, unsimplified
from .state import StateVector


@dataclass
class Preparation:
    tree: AngleTree
    muxes: list[SimplifiedMux]
    reports: list[RepetitionReport]
    circuit: Circuit

    @property
    def metrics(self) -> Metrics:
        return metrics(self.circuit)


def prepare(state: StateVector, simplified: bool = True, tol: float = DEFAULT_TOL) -> Preparation:
    """State -> angle tree -> (optionally simplified) multiplexers -> circuit."""
    tree = build_angle_tree(state)
    if simplified:
        muxes, reports = simplify(tree, tol)
    else:
        muxes, reports = unsimplified(tree), []
    return Preparation(tree, muxes, reports, synthesize(muxes, state.num_qubits))
