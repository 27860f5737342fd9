"""Statevector gate kernels with an optional numba backend.

Set ``UCGE_DISABLE_NUMBA=1`` in the environment to force the pure-numpy
path; numba is also skipped silently when it is not importable.
"""

import os

import numpy as np

OP_RY = 0
OP_CX = 1


def _flag(name):
    return os.environ.get(name, "").strip().lower() in ("1", "true", "yes", "on")


try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and not _flag("UCGE_DISABLE_NUMBA")


def _identity(func):
    return func


njit = numba.njit(cache=True, nogil=True) if HAVE_NUMBA else _identity


def _apply_gates_loop(ops, targets, controls, angles, states, num_qubits):
    # states: (2**n, m) complex, updated in place column by column
    dim, m = states.shape
    for g in range(ops.shape[0]):
        tmask = 1 << (num_qubits - 1 - targets[g])
        if ops[g] == OP_RY:
            c = np.cos(0.5 * angles[g])
            s = np.sin(0.5 * angles[g])
            for i0 in range(dim):
                if i0 & tmask:
                    continue
                i1 = i0 | tmask
                for col in range(m):
                    a = states[i0, col]
                    b = states[i1, col]
                    states[i0, col] = c * a - s * b
                    states[i1, col] = s * a + c * b
        else:
            cmask = 1 << (num_qubits - 1 - controls[g])
            for i0 in range(dim):
                if (i0 & tmask) or not (i0 & cmask):
                    continue
                i1 = i0 | tmask
                for col in range(m):
                    tmp = states[i0, col]
                    states[i0, col] = states[i1, col]
                    states[i1, col] = tmp
    return states


apply_gates_numba = njit(_apply_gates_loop) if HAVE_NUMBA else None


def apply_gates_numpy(ops, targets, controls, angles, states, num_qubits):
    m = states.shape[1]
    tensor = states.reshape((2,) * num_qubits + (m,))
    for op, t, ctl, theta in zip(ops, targets, controls, angles):
        t = int(t)
        if op == OP_RY:
            c, s = np.cos(0.5 * theta), np.sin(0.5 * theta)
            lo = tensor[(slice(None),) * t + (0,)].copy()
            hi = tensor[(slice(None),) * t + (1,)]
            tensor[(slice(None),) * t + (0,)] = c * lo - s * hi
            tensor[(slice(None),) * t + (1,)] = s * lo + c * hi
        else:
            ctl = int(ctl)
            index = [slice(None)] * num_qubits
            index[ctl] = 1
            sub = tensor[tuple(index)]
            axis = t if t < ctl else t - 1
            sub[...] = np.flip(sub, axis=axis).copy()
    return states


def apply_gates(ops, targets, controls, angles, states, num_qubits, use_numba=None):
    """Apply an encoded gate list to each column of ``states`` in place."""
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not installed")
    kernel = apply_gates_numba if use_numba else apply_gates_numpy
    return kernel(
        np.ascontiguousarray(ops, dtype=np.int8),
        np.ascontiguousarray(targets, dtype=np.int64),
        np.ascontiguousarray(controls, dtype=np.int64),
        np.ascontiguousarray(angles, dtype=np.float64),
        states,
        num_qubits,
    )
