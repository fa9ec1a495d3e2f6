import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from f2_subspaces.errors import AmbientMismatchError
from f2_subspaces.gf2 import GF2Vector
from f2_subspaces.gf2.vector import pack_bits, parity, unpack_bits, word_count

bit_lists = st.lists(st.integers(0, 1), min_size=0, max_size=200)


def test_string_layout_puts_coordinate_zero_first():
    v = GF2Vector.from_string("1000000000000000000000000000000000000000000000000000000000000001")

    assert v.length == 64
    assert v.bit(0) == 1
    assert v.bit(63) == 1
    assert v.to_int() == 1 | (1 << 63)
    assert v.to_string().startswith("1")


def test_words_span_boundaries():
    v = GF2Vector.unit(130, 129)

    assert word_count(130) == 3
    assert v.words.shape == (3,)
    assert int(v.words[2]) == 1 << 1
    assert v.weight() == 1


def test_from_int_rejects_overflow():
    with pytest.raises(ValueError):
        GF2Vector.from_int(8, 3)


def test_rejects_non_bit_characters():
    with pytest.raises(ValueError):
        GF2Vector.from_string("0120")


def test_addition_and_dot_product():
    a = GF2Vector.from_string("1101")
    b = GF2Vector.from_string("0111")

    assert (a + b).to_string() == "1010"
    assert a.dot(b) == 0
    assert a.dot(a) == 1


def test_length_mismatch_raises():
    with pytest.raises(AmbientMismatchError):
        GF2Vector.zeros(3) + GF2Vector.zeros(4)
    with pytest.raises(ValueError):
        GF2Vector.zeros(3).dot(GF2Vector.zeros(4))


def test_concat_and_delete():
    v = GF2Vector.from_string("10").concat(GF2Vector.from_string("1"))

    assert v.to_string() == "101"
    assert v.delete(1).to_string() == "11"
    with pytest.raises(IndexError):
        v.delete(3)


def test_equality_and_hash_follow_content():
    a = GF2Vector.from_string("0110")
    b = GF2Vector.from_bits([0, 1, 1, 0])

    assert a == b
    assert hash(a) == hash(b)
    assert a != GF2Vector.from_string("01100")
    assert len({a, b}) == 1


def test_words_are_read_only():
    v = GF2Vector.zeros(10)

    with pytest.raises(ValueError):
        v.words[0] = 1


def test_zero_length_vector():
    v = GF2Vector.from_bits([])

    assert v.length == 0
    assert v.is_zero()
    assert v.to_string() == ""


@given(bit_lists)
def test_pack_unpack_identity(bits):
    array = np.array(bits, dtype=np.uint8)

    assert np.array_equal(unpack_bits(pack_bits(array), len(bits)), array)


@given(bit_lists)
def test_parity_matches_bit_sum(bits):
    array = np.array(bits, dtype=np.uint8)

    assert int(parity(pack_bits(array))) == int(array.sum()) % 2
    assert GF2Vector.from_bits(bits).weight() == sum(bits)
