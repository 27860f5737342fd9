"""Ry/CX circuit IR, Gray-code multiplexer lowering, metrics and QASM I/O."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from ._accel import OP_CX, OP_RY
from .simplify import SimplifiedMux

RY = "ry"
CX = "cx"


@dataclass(frozen=True)
class Gate:
    kind: str
    target: int
    control: Optional[int] = None
    angle: Optional[float] = None

    def __post_init__(self):
        if self.kind == RY:
            if self.angle is None or not math.isfinite(self.angle):
                raise ValueError("ry gate needs a finite angle")
            if self.control is not None:
                raise ValueError("ry gate takes no control")
        elif self.kind == CX:
            if self.control is None or self.control == self.target:
                raise ValueError("cx gate needs a control distinct from its target")
        else:
            raise ValueError(f"unknown gate kind {self.kind!r}")

    @classmethod
    def ry(cls, angle: float, target: int) -> "Gate":
        return cls(RY, int(target), angle=float(angle))

    @classmethod
    def cx(cls, control: int, target: int) -> "Gate":
        return cls(CX, int(target), control=int(control))

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.target,) if self.kind == RY else (self.control, self.target)


@dataclass
class Circuit:
    num_qubits: int
    gates: list[Gate] = field(default_factory=list)

    def __post_init__(self):
        for gate in self.gates:
            self._check(gate)

    def _check(self, gate):
        if any(not 0 <= q < self.num_qubits for q in gate.qubits):
            raise ValueError(f"{gate} acts outside a {self.num_qubits}-qubit register")

    def append(self, gate: Gate) -> None:
        self._check(gate)
        self.gates.append(gate)

    def extend(self, gates: Iterable[Gate]) -> None:
        for gate in gates:
            self.append(gate)

    def __len__(self):
        return len(self.gates)

    def __add__(self, other: "Circuit") -> "Circuit":
        if other.num_qubits != self.num_qubits:
            raise ValueError("cannot concatenate circuits of different widths")
        return Circuit(self.num_qubits, self.gates + other.gates)

    def encode(self):
        """Parallel arrays ``(ops, targets, controls, angles)`` for the kernels."""
        m = len(self.gates)
        ops = np.empty(m, dtype=np.int8)
        targets = np.empty(m, dtype=np.int64)
        controls = np.full(m, -1, dtype=np.int64)
        angles = np.zeros(m)
        for k, g in enumerate(self.gates):
            targets[k] = g.target
            if g.kind == RY:
                ops[k] = OP_RY
                angles[k] = g.angle
            else:
                ops[k] = OP_CX
                controls[k] = g.control
        return ops, targets, controls, angles


@dataclass(frozen=True)
class Metrics:
    cnot_count: int
    rotation_count: int
    depth: int

    def to_dict(self):
        return {"cnot_count": self.cnot_count, "rotation_count": self.rotation_count, "depth": self.depth}


def gray_code(k: int) -> list[int]:
    return [j ^ (j >> 1) for j in range(2**k)]


def walsh_angles(angles) -> np.ndarray:
    """Half-sum/half-difference transform of a multiplexer's angle list.

    Returns the rotation ``a[j]`` to apply at Gray codeword ``j`` so that the
    control pattern ``x`` sees ``sum_j (-1)**popcount(x & g_j) * a[j]``.
    """
    a = np.array(angles, dtype=np.float64)
    size = len(a)
    h = 1
    while h < size:
        a = a.reshape(-1, 2, h)
        a = np.stack(((a[:, 0] + a[:, 1]) / 2, (a[:, 0] - a[:, 1]) / 2), axis=1).reshape(-1)
        h *= 2
    k = size.bit_length() - 1
    return a[gray_code(k)]


def lower_mux(mux: SimplifiedMux) -> list[Gate]:
    """Lower a uniformly controlled Ry into ``2**k`` RY and ``2**k`` CX gates."""
    controls = mux.control_qubits
    k = len(controls)
    target = mux.target
    if k == 0:
        return [Gate.ry(mux.angles[0], target)]
    rotations = walsh_angles(mux.angles)
    # bit b of a codeword drives the b-th retained control counted from the bottom
    by_bit = controls[::-1]
    gates = []
    for j in range(2**k):
        gates.append(Gate.ry(rotations[j], target))
        bit = k - 1 if j == 2**k - 1 else ((j + 1) & -(j + 1)).bit_length() - 1
        gates.append(Gate.cx(by_bit[bit], target))
    return gates


def synthesize(muxes: list[SimplifiedMux], num_qubits: int) -> Circuit:
    """Concatenate the lowered multiplexers in level order.

    A multiplexer with no controls and a zero angle is the identity and emits
    nothing; everything else is lowered as-is.
    """
    circuit = Circuit(num_qubits)
    for mux in sorted(muxes, key=lambda m: m.level):
        if not mux.retained_controls and mux.angles[0] == 0.0:
            continue
        circuit.extend(lower_mux(mux))
    return circuit


def metrics(circuit: Circuit) -> Metrics:
    """Gate tallies and ASAP depth, every gate taking one layer on its wires."""
    layer = [0] * circuit.num_qubits
    cnots = 0
    for gate in circuit.gates:
        qubits = gate.qubits
        if gate.kind == CX:
            cnots += 1
        top = max(layer[q] for q in qubits) + 1
        for q in qubits:
            layer[q] = top
    return Metrics(cnots, len(circuit.gates) - cnots, max(layer, default=0))


QASM_HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'


def emit_qasm(circuit: Circuit) -> str:
    lines = [QASM_HEADER, f"qreg q[{circuit.num_qubits}];\n"]
    for g in circuit.gates:
        if g.kind == RY:
            lines.append(f"ry({g.angle:.17g}) q[{g.target}];\n")
        else:
            lines.append(f"cx q[{g.control}],q[{g.target}];\n")
    return "".join(lines)


class QasmParseError(ValueError):
    pass


_RY_RE = re.compile(r"^ry\(\s*([^)]+?)\s*\)\s+q\[(\d+)\]\s*;$")
_CX_RE = re.compile(r"^cx\s+q\[(\d+)\]\s*,\s*q\[(\d+)\]\s*;$")
_QREG_RE = re.compile(r"^qreg\s+q\[(\d+)\]\s*;$")


def parse_qasm(text: str) -> Circuit:
    """Read back the QASM subset produced by :func:`emit_qasm`.

    Accepts the two header statements, a single ``qreg q[n]``, and ``ry``/``cx``
    lines. Anything else raises :class:`QasmParseError` with the line number.
    """
    circuit = None
    seen_version = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("//", 1)[0].strip()
        if not line:
            continue
        # the two header statements may share a line
        if line.startswith("OPENQASM") or line.startswith("include"):
            for stmt in filter(None, (s.strip() for s in line.split(";"))):
                if stmt == "OPENQASM 2.0":
                    seen_version = True
                elif stmt != 'include "qelib1.inc"':
                    raise QasmParseError(f"line {lineno}: unsupported statement {stmt!r}")
            continue
        if not seen_version:
            raise QasmParseError(f"line {lineno}: missing OPENQASM 2.0 header")
        if m := _QREG_RE.match(line):
            if circuit is not None:
                raise QasmParseError(f"line {lineno}: only one register is supported")
            circuit = Circuit(int(m.group(1)))
            continue
        if circuit is None:
            raise QasmParseError(f"line {lineno}: gate before qreg declaration")
        try:
            if m := _RY_RE.match(line):
                angle = float(m.group(1))
                circuit.append(Gate.ry(angle, int(m.group(2))))
            elif m := _CX_RE.match(line):
                circuit.append(Gate.cx(int(m.group(1)), int(m.group(2))))
            else:
                raise QasmParseError(f"line {lineno}: cannot parse {line!r}")
        except QasmParseError:
            raise
        except ValueError as exc:
            raise QasmParseError(f"line {lineno}: {exc}") from None
    if circuit is None:
        raise QasmParseError("no qreg declaration found")
    return circuit
