import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ucge.state import (
    PartitionSpec,
    StateFormatError,
    StateVector,
    format_state,
    load_state,
    random_partitioned_state,
    tensor_product,
)


def test_load_basis_state():
    s = load_state("1\n0\n0\n0\n")
    assert s.num_qubits == 2
    assert list(s.amplitudes) == [1, 0, 0, 0]
    assert not s.renormalized


def test_load_uniform_renormalizes():
    s = load_state(b"1\n1\n1\n1\n")
    np.testing.assert_allclose(s.amplitudes, [0.5] * 4, atol=1e-15)
    assert s.renormalized


def test_load_skips_comments_and_blanks():
    s = load_state(io.StringIO("# header\n\n0.6  # first\n0.8\n"))
    np.testing.assert_allclose(s.amplitudes, [0.6, 0.8])
    assert not s.renormalized


@pytest.mark.parametrize(
    "text, message",
    [
        ("1\n1\n1\n", "length 3"),
        ("1\n", "length 1"),
        ("0\n0\n", "zero vector"),
        ("1\nabc\n", "line 2"),
        ("1\nnan\n", "line 2"),
    ],
)
def test_load_errors(text, message):
    with pytest.raises(StateFormatError, match=message):
        load_state(text)


def test_format_round_trip(rng):
    v = rng.standard_normal(16)
    s = StateVector(v / np.linalg.norm(v))
    np.testing.assert_array_equal(load_state(format_state(s)).amplitudes, s.amplitudes)


def test_state_vector_is_immutable():
    s = StateVector([1.0, 0.0])
    with pytest.raises(ValueError):
        s.amplitudes[0] = 0.0


def test_partition_spec_validation():
    with pytest.raises(ValueError):
        PartitionSpec((2, 0), 1)
    with pytest.raises(ValueError):
        PartitionSpec((), 1)
    assert PartitionSpec([3, 4], 5).num_qubits == 7


def test_tensor_product_examples():
    zero = StateVector([1, 0])
    np.testing.assert_array_equal(tensor_product(zero, zero).amplitudes, [1, 0, 0, 0])
    np.testing.assert_array_equal(
        tensor_product(zero, StateVector([0.6, 0.8])).amplitudes, [0.6, 0.8, 0, 0]
    )
    r = 1 / math.sqrt(2)
    out = tensor_product(StateVector([r, r]), StateVector([r, -r]))
    np.testing.assert_allclose(out.amplitudes, [0.5, -0.5, 0.5, -0.5], atol=1e-15)


def test_random_two_single_qubit_blocks_matches_independent_draw():
    spec = PartitionSpec((1, 1), 99)
    # independent reimplementation of the documented stream rule
    children = np.random.SeedSequence(99).spawn(2)
    v0 = np.random.Generator(np.random.PCG64(children[0])).standard_normal(2)
    v1 = np.random.Generator(np.random.PCG64(children[1])).standard_normal(2)
    v0 /= np.linalg.norm(v0)
    v1 /= np.linalg.norm(v1)
    expected = [v0[0] * v1[0], v0[0] * v1[1], v0[1] * v1[0], v0[1] * v1[1]]
    np.testing.assert_allclose(random_partitioned_state(spec).amplitudes, expected, atol=1e-15)


def test_random_state_is_deterministic():
    a = random_partitioned_state(PartitionSpec((2, 3), 5))
    b = random_partitioned_state(PartitionSpec((2, 3), 5))
    c = random_partitioned_state(PartitionSpec((2, 3), 6))
    np.testing.assert_array_equal(a.amplitudes, b.amplitudes)
    assert not np.allclose(a.amplitudes, c.amplitudes)


def test_single_block_is_entangled():
    s = random_partitioned_state(PartitionSpec((4,), 3))
    sv = np.linalg.svd(s.amplitudes.reshape(4, 4), compute_uv=False)
    assert np.sum(sv > 1e-10) > 1


@pytest.mark.parametrize("seed", range(10))
def test_two_two_blocks_have_schmidt_rank_one(seed):
    s = random_partitioned_state(PartitionSpec((2, 2), seed))
    sv = np.linalg.svd(s.amplitudes.reshape(4, 4), compute_uv=False)
    assert np.sum(sv > 1e-10) == 1


blocks = st.lists(st.integers(1, 4), min_size=1, max_size=4)
seeds = st.integers(0, 2**64 - 8)


@given(blocks, seeds)
@settings(max_examples=60, deadline=None)
def test_random_state_unit_norm(sizes, seed):
    s = random_partitioned_state(PartitionSpec(tuple(sizes), seed))
    assert abs(np.linalg.norm(s.amplitudes) - 1) <= 1e-12
    assert s.num_qubits == sum(sizes)


@given(st.integers(1, 5), st.integers(1, 5), seeds)
@settings(max_examples=60, deadline=None)
def test_bipartite_single_singular_value(p, q, seed):
    s = random_partitioned_state(PartitionSpec((p, q), seed))
    sv = np.linalg.svd(s.amplitudes.reshape(2**p, 2**q), compute_uv=False)
    assert np.sum(sv > 1e-10) == 1


@given(seeds, st.integers(1, 3), st.integers(1, 3), st.integers(1, 3))
@settings(max_examples=40, deadline=None)
def test_tensor_product_norm_and_associativity(seed, na, nb, nc):
    a, b, c = (random_partitioned_state(PartitionSpec((k,), seed + i)) for i, k in enumerate((na, nb, nc)))
    ab = tensor_product(a, b)
    assert abs(np.linalg.norm(ab.amplitudes) - 1.0) <= 1e-12
    left = tensor_product(ab, c).amplitudes
    right = tensor_product(a, tensor_product(b, c)).amplitudes
    np.testing.assert_allclose(left, right, atol=1e-12, rtol=0)
