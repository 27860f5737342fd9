"""Compare the numba and pure-numpy simulator kernels on preparation circuits.

    python benchmarks/bench_kernels.py --qubits 6..14 --repeat 3
"""

import argparse
import time

import numpy as np

from ucge import _accel
from ucge.cli import parse_range
from ucge.pipeline import prepare
from ucge.simulator import fidelity, run
from ucge.state import PartitionSpec, random_partitioned_state


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--qubits", type=parse_range, default=parse_range("6..14"))
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    backends = ["numpy"] + (["numba"] if _accel.HAVE_NUMBA else [])
    if _accel.HAVE_NUMBA:
        # compile outside the timed region
        run(prepare(random_partitioned_state(PartitionSpec((2,), 0))).circuit, use_numba=True)

    print(f"{'n':>3} {'gates':>7} " + " ".join(f"{b + ' [s]':>12}" for b in backends) + "  speedup")
    for n in args.qubits:
        state = random_partitioned_state(PartitionSpec((n,), args.seed))
        circuit = prepare(state, simplified=False).circuit
        timings = {}
        for backend in backends:
            use = backend == "numba"
            out = run(circuit, use_numba=use)
            assert fidelity(out, state) >= 1 - 1e-10
            timings[backend] = best_of(lambda: run(circuit, use_numba=use), args.repeat)
        speedup = timings["numpy"] / timings["numba"] if "numba" in timings else float("nan")
        cols = " ".join(f"{timings[b]:12.5f}" for b in backends)
        print(f"{n:>3} {len(circuit):>7} {cols}  {speedup:6.1f}x")


if __name__ == "__main__":
    main()
