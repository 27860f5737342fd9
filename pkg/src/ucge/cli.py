"""Command-line front end: ``ucge prepare``, ``ucge verify`` and ``ucge bench``.

Exit codes: 0 success, 1 input or parse error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .angles import DEFAULT_TOL
from .bench import bench_bipartite, bench_npartite, check_parts, write_csv
from .circuit import QasmParseError, emit_qasm, parse_qasm
from .pipeline import prepare
from .simulator import DenseState, fidelity, run
from .state import StateFormatError, load_state

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VERIFY = 2
VERIFY_FLOOR = 1 - 1e-8
STATS_SCHEMA = 1

log = logging.getLogger("ucge")


def parse_range(text: str) -> range:
    """``"lo..hi"`` (inclusive) or a single integer."""
    lo, sep, hi = text.partition("..")
    try:
        lo_i = int(lo)
        hi_i = int(hi) if sep else lo_i
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid range {text!r}, expected LO..HI") from None
    if hi_i < lo_i:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo_i, hi_i + 1)


def _read_state(path):
    with open(path, "rb") as fh:
        return load_state(fh)


def cmd_prepare(args) -> int:
    try:
        state = _read_state(args.input)
    except (OSError, StateFormatError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    prep = prepare(state, simplified=not args.no_simplify, tol=args.tolerance)
    try:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(emit_qasm(prep.circuit))
    except OSError as exc:
        log.error("%s", exc)
        return EXIT_INPUT

    fid = None
    if args.verify:
        fid = fidelity(run(prep.circuit), state)

    if args.stats:
        report = {
            "schema": STATS_SCHEMA,
            "n": state.num_qubits,
            "method": "ucg" if args.no_simplify else "ucge",
            "tol": args.tolerance,
            "renormalized": state.renormalized,
            "metrics": prep.metrics.to_dict(),
            "removed_controls": [r.to_dict() for r in prep.reports],
        }
        if fid is not None:
            report["fidelity"] = fid
        try:
            with open(args.stats, "w", encoding="utf-8") as fh:
                json.dump(report, fh, indent=2)
                fh.write("\n")
        except OSError as exc:
            log.error("%s", exc)
            return EXIT_INPUT

    if fid is not None:
        print(f"fidelity {fid:.17g}")
        if fid < VERIFY_FLOOR:
            log.error("verification failed: fidelity %.3e below %.3e", fid, VERIFY_FLOOR)
            return EXIT_VERIFY
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        state = _read_state(args.input)
        with open(args.circuit, encoding="utf-8") as fh:
            circuit = parse_qasm(fh.read())
    except (OSError, StateFormatError, QasmParseError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    if circuit.num_qubits != state.num_qubits:
        log.error("circuit has %d qubits, state has %d", circuit.num_qubits, state.num_qubits)
        return EXIT_INPUT
    fid = fidelity(run(circuit, DenseState.zero(circuit.num_qubits)), state)
    print(f"fidelity {fid:.17g}")
    return EXIT_OK if fid >= VERIFY_FLOOR else EXIT_VERIFY


def _summarize(records):
    by_n = {}
    for r in records:
        by_n.setdefault((r.n, r.block_sizes), {}).setdefault(r.method, []).append(r)
    for (n, blocks), methods in sorted(by_n.items()):
        parts = " ".join(
            f"{m}: cnot={sum(r.cnot_count for r in rs) / len(rs):g}"
            f" depth={sum(r.depth for r in rs) / len(rs):g}"
            f" t={sum(r.build_seconds for r in rs) / len(rs):.3g}s"
            for m, rs in sorted(methods.items())
        )
        print(f"n={n} blocks={'|'.join(map(str, blocks))} {parts}")


def cmd_bench(args) -> int:
    try:
        if args.experiment == "bipartite":
            if args.qubits.start < 2:
                raise ValueError("bipartite sweep needs at least 2 qubits")
            records = bench_bipartite(args.qubits, args.trials, args.seed, args.tolerance)
        else:
            check_parts(args.qubits, args.parts)
            records = bench_npartite(args.qubits, args.parts, args.trials, args.seed, args.tolerance)
    except ValueError as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    try:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            write_csv(records, fh)
    except OSError as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    _summarize(records)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ucge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prepare", help="compile a state file into OpenQASM 2.0")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--stats")
    p.add_argument("--no-simplify", action="store_true")
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOL)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_prepare)

    v = sub.add_parser("verify", help="simulate a circuit and compare with a state file")
    v.add_argument("--input", required=True)
    v.add_argument("--circuit", required=True)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="run a ucg vs ucge sweep")
    experiments = b.add_subparsers(dest="experiment", required=True)
    for name in ("bipartite", "npartite"):
        e = experiments.add_parser(name)
        if name == "bipartite":
            e.add_argument("--qubits", type=parse_range, required=True, metavar="LO..HI")
        else:
            e.add_argument("--qubits", type=int, required=True, metavar="N")
            e.add_argument("--parts", type=parse_range, required=True, metavar="LO..HI")
        e.add_argument("--trials", type=int, default=20)
        e.add_argument("--seed", type=int, default=0)
        e.add_argument("--csv", required=True)
        e.add_argument("--tolerance", type=float, default=DEFAULT_TOL)
        e.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="ucge: %(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; 2 is reserved for verification
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    if getattr(args, "tolerance", 0.0) < 0:
        log.error("tolerance must be non-negative")
        return EXIT_INPUT
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
