"""Benchmark sweeps comparing plain (ucg) and simplified (ucge) synthesis."""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass
from typing import IO, Iterable

from .angles import DEFAULT_TOL
from .pipeline import prepare
from .simulator import prepare_fidelity
from .state import PartitionSpec, random_partitioned_state

METHODS = ("ucg", "ucge")
FIDELITY_FLOOR = 1 - 1e-10
CSV_HEADER = ["n", "block_sizes", "method", "cnot", "rotations", "depth", "build_seconds", "fidelity", "seed"]


class BenchCheckError(AssertionError):
    """A benchmark record failed its built-in self-check."""


@dataclass(frozen=True)
class BenchRecord:
    n: int
    block_sizes: tuple[int, ...]
    method: str
    cnot_count: int
    rotation_count: int
    depth: int
    build_seconds: float
    fidelity: float
    seed: int
    trial: int = 0

    def sort_key(self):
        return (self.n, len(self.block_sizes), self.trial, METHODS.index(self.method))

    def csv_row(self):
        return [
            self.n,
            "|".join(map(str, self.block_sizes)),
            self.method,
            self.cnot_count,
            self.rotation_count,
            self.depth,
            f"{self.build_seconds:.6g}",
            f"{self.fidelity:.17g}",
            self.seed,
        ]


def run_trial(block_sizes, seed, trial=0, tol=DEFAULT_TOL):
    """Build both methods for one random partitioned state and self-check them."""
    state = random_partitioned_state(PartitionSpec(tuple(block_sizes), seed))
    records = []
    for method in METHODS:
        start = time.perf_counter()
        prep = prepare(state, simplified=(method == "ucge"), tol=tol)
        elapsed = time.perf_counter() - start
        m = prep.metrics
        fid = prepare_fidelity(prep.circuit, state)
        if fid < FIDELITY_FLOOR:
            raise BenchCheckError(f"{method} fidelity {fid} below {FIDELITY_FLOOR} (blocks {block_sizes}, seed {seed})")
        records.append(
            BenchRecord(state.num_qubits, tuple(block_sizes), method, m.cnot_count,
                        m.rotation_count, m.depth, elapsed, fid, seed, trial)
        )
    ucg, ucge = records
    if ucge.cnot_count > ucg.cnot_count or ucge.rotation_count > ucg.rotation_count:
        raise BenchCheckError(f"simplification increased gate counts (blocks {block_sizes}, seed {seed})")
    return records


def bench_bipartite(n_range: Iterable[int], trials: int = 20, seed: int = 0, tol=DEFAULT_TOL):
    """Two-block states with blocks of ceil(n/2) and floor(n/2) qubits."""
    records = []
    for n in n_range:
        if n < 2:
            raise ValueError(f"bipartite states need at least 2 qubits, got {n}")
        blocks = ((n + 1) // 2, n // 2)
        for trial in range(trials):
            records.extend(run_trial(blocks, seed + trial, trial, tol))
    return sorted(records, key=BenchRecord.sort_key)


def check_parts(n: int, parts_range: Iterable[int]) -> list[int]:
    parts = list(parts_range)
    bad = [p for p in parts if p < 1 or n % p]
    if bad:
        raise ValueError(f"part counts {bad} do not divide {n} qubits")
    return parts


def bench_npartite(n: int, parts_range: Iterable[int], trials: int = 20, seed: int = 0, tol=DEFAULT_TOL):
    """Fixed ``n`` split into equal blocks, for every part count in ``parts_range``."""
    records = []
    for parts in check_parts(n, parts_range):
        blocks = (n // parts,) * parts
        for trial in range(trials):
            records.extend(run_trial(blocks, seed + trial, trial, tol))
    return sorted(records, key=BenchRecord.sort_key)


def write_csv(records: Iterable[BenchRecord], sink: IO[str]) -> None:
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for record in sorted(records, key=BenchRecord.sort_key):
        writer.writerow(record.csv_row())
