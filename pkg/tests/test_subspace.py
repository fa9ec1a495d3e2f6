import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from helpers import all_subspaces, naive_rank, points

from f2_subspaces.gf2 import (
    GF2Matrix,
    GF2Vector,
    Subspace,
    canonical_basis,
    contains,
    intersect,
    is_subset,
    kernel,
    random_subspace,
    sample_uniform,
    subspace_sum,
)
from f2_subspaces.rng import make_rng

E1, E2, E3 = (GF2Vector.unit(3, i) for i in range(3))


def vec(text):
    return GF2Vector.from_string(text)


def random_bits(seed, rows, cols):
    return make_rng(seed).integers(0, 2, size=(rows, cols), dtype=np.uint8)


small_matrices = st.tuples(st.integers(0, 8), st.integers(1, 8), st.integers(0, 2**32))


def test_canonical_basis_examples():
    assert canonical_basis([vec("110"), vec("011")], 3).to_strings() == ["101", "011"]

    empty = canonical_basis([], 4)
    assert empty.dim == 0
    assert empty == Subspace.zero(4)

    assert canonical_basis([vec("10"), vec("10")], 2).to_strings() == ["10"]


def test_kernel_examples():
    assert kernel(GF2Matrix.from_strings(["110", "011"])) == Subspace.span([vec("111")], 3)
    assert kernel(GF2Matrix.identity(4)).dim == 0
    assert kernel(GF2Matrix.zeros(1, 3)) == Subspace.full(3)


def test_contains_examples():
    s = Subspace.span([vec("101"), vec("010")], 3)

    assert contains(s, vec("111"))
    assert contains(s, GF2Vector.zeros(3))
    assert not contains(Subspace.span([vec("010")], 3), vec("100"))


def test_incomparable_planes_in_three_dimensions():
    a = Subspace.span([E1, E2], 3)
    b = Subspace.span([E3, E1 + E2], 3)

    assert not is_subset(a, b)
    assert not is_subset(b, a)
    assert intersect(a, b) == Subspace.span([E1 + E2], 3)
    assert subspace_sum(a, b) == Subspace.full(3)


def test_equal_subspaces_have_identical_bases():
    first = Subspace.span([vec("1100"), vec("0110")], 4)
    second = Subspace.span([vec("1010"), vec("0110"), vec("1100")], 4)

    assert first == second
    assert first.basis.data.tobytes() == second.basis.data.tobytes()
    assert first.pivots == second.pivots


def test_sample_uniform_stays_inside():
    rng = make_rng(3)
    zero = Subspace.zero(5)
    line = Subspace.span([vec("11")], 2)

    assert all(sample_uniform(zero, rng).is_zero() for _ in range(20))
    assert {sample_uniform(line, rng).to_string() for _ in range(50)} == {"00", "11"}


def test_sample_uniform_frequencies():
    draws = Subspace.full(2).sample_many(4096, make_rng(11)).to_strings()

    frequencies = Counter(draws)
    assert set(frequencies) == {"00", "10", "01", "11"}
    for count in frequencies.values():
        assert abs(count / 4096 - 0.25) <= 0.05


def test_elements_enumerates_every_point():
    s = Subspace.span([vec("1100"), vec("0011")], 4)

    assert points(s) == {"0000", "1100", "0011", "1111"}
    assert Subspace.zero(3).elements().to_strings() == ["000"]


def test_image_under_projection():
    s = Subspace.span([vec("110"), vec("001")], 3)
    drop_last = GF2Matrix.from_strings(["100", "010"])

    assert s.image(drop_last) == Subspace.span([vec("11")], 2)


def test_random_subspace_has_requested_dimension():
    rng = make_rng(5)

    for dim in range(0, 7):
        assert random_subspace(6, dim, rng).dim == dim
    with pytest.raises(ValueError):
        random_subspace(3, 4, rng)


def test_sort_key_orders_by_dimension_first():
    big = Subspace.full(3)
    small = Subspace.span([vec("100")], 3)

    assert sorted([small, big], key=lambda s: s.sort_key()) == [big, small]


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_kernel_dimension_and_annihilation(shape):
    rows, cols, seed = shape
    bits = random_bits(seed, rows, cols)
    m = GF2Matrix.from_bits(bits)

    null = kernel(m)

    assert null.dim == cols - naive_rank(bits)
    for x in null.basis.row_vectors():
        assert (m @ x).is_zero()


@settings(max_examples=150, deadline=None)
@given(small_matrices, st.integers(0, 2**32))
def test_intersection_and_sum_match_enumeration(shape, other_seed):
    rows, cols, seed = shape
    a = Subspace.from_matrix(GF2Matrix.from_bits(random_bits(seed, rows, cols)))
    b = Subspace.from_matrix(GF2Matrix.from_bits(random_bits(other_seed, rows, cols)))

    meet = a.intersect(b)
    join = a.sum(b)

    assert points(meet) == points(a) & points(b)
    assert join.dim == a.dim + b.dim - meet.dim
    assert a.is_subset(join) and b.is_subset(join)
    assert a.is_subset(b) == points(a).issubset(points(b))


@settings(max_examples=100, deadline=None)
@given(small_matrices)
def test_double_annihilator_is_identity(shape):
    rows, cols, seed = shape
    s = Subspace.from_matrix(GF2Matrix.from_bits(random_bits(seed, rows, cols)))

    assert s.annihilator().annihilator() == s
    assert s.annihilator().dim == cols - s.dim


def test_subspace_count_in_three_dimensions():
    # Gaussian binomials: 1 + 7 + 7 + 1.
    assert Counter(s.dim for s in all_subspaces(3)) == {0: 1, 1: 7, 2: 7, 3: 1}


@settings(max_examples=100, deadline=None)
@given(small_matrices, st.integers(0, 2**32))
def test_canonical_basis_ignores_input_order(shape, order_seed):
    rows, cols, seed = shape
    vectors = GF2Matrix.from_bits(random_bits(seed, rows, cols)).row_vectors()
    shuffled = [vectors[i] for i in make_rng(order_seed).permutation(len(vectors))]

    first = canonical_basis(vectors, cols)
    second = canonical_basis(shuffled, cols)

    assert first == second
    assert first.to_strings() == second.to_strings()
    assert canonical_basis(first.basis.row_vectors(), cols) == first


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 16), st.integers(0, 2**32))
def test_contains_is_closed_under_addition(ambient, seed):
    rng = make_rng(seed)
    s = random_subspace(ambient, int(rng.integers(0, ambient + 1)), rng)
    members = s.sample_many(12, rng).row_vectors()
    outsiders = GF2Matrix.from_bits(
        rng.integers(0, 2, size=(12, ambient), dtype=np.uint8)
    ).row_vectors()

    for u, v in zip(members, members[1:]):
        assert contains(s, u) and contains(s, v)
        assert contains(s, u + v)
    for u, x in zip(members, outsiders):
        # Adding a member never moves a point across the subspace boundary.
        assert contains(s, u + x) == contains(s, x)


def subset_spanning_hits(trials, seed, max_dim=8):
    """Trials where a random 90% of ``100 d`` samples from a ``d``-dim subspace spans it."""

    rng = make_rng(seed)
    hits = 0
    for _ in range(trials):
        ambient = int(rng.integers(2, 13))
        s = random_subspace(ambient, int(rng.integers(1, min(ambient, max_dim) + 1)), rng)
        k = 100 * s.dim
        samples = s.sample_many(k, rng)
        kept = rng.choice(k, size=math.ceil(0.9 * k), replace=False)
        hits += Subspace.from_matrix(samples.take(kept)) == s
    return hits


def test_most_of_a_large_sample_spans_the_subspace():
    assert subset_spanning_hits(100, 33) == 100


@pytest.mark.acceptance
def test_subset_spanning_rate_over_a_thousand_trials():
    assert subset_spanning_hits(1000, 34) >= 999
