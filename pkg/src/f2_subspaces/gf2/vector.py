"""Bit-packed vectors over the two-element field.

Coordinates are packed little-endian into 64-bit words: coordinate ``c`` lives in word
``c // 64`` at bit ``c % 64``. Bits past the vector length are always zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ..errors import AmbientMismatchError

WORD_BITS = 64
_WORD = np.dtype("<u8")
_PARITY_SHIFTS = tuple(np.uint64(s) for s in (32, 16, 8, 4, 2, 1))


def word_count(length: int) -> int:
    return (length + WORD_BITS - 1) // WORD_BITS


def pack_bits(bits: np.ndarray) -> np.ndarray:
    """Pack a ``(..., length)`` array of 0/1 values into ``(..., words)`` uint64 words."""

    bits = np.asarray(bits, dtype=np.uint8)
    length = bits.shape[-1]
    words = word_count(length)
    if words == 0:
        return np.zeros(bits.shape[:-1] + (0,), dtype=np.uint64)
    padding = words * WORD_BITS - length
    if padding:
        pad_width = [(0, 0)] * (bits.ndim - 1) + [(0, padding)]
        bits = np.pad(bits, pad_width)
    packed = np.packbits(bits & 1, axis=-1, bitorder="little")
    return np.ascontiguousarray(packed).view(_WORD).astype(np.uint64, copy=False)


def unpack_bits(words: np.ndarray, length: int) -> np.ndarray:
    """Inverse of :func:`pack_bits`: return a ``(..., length)`` uint8 array of 0/1 values."""

    words = np.ascontiguousarray(np.asarray(words, dtype=np.uint64).astype(_WORD, copy=False))
    if words.shape[-1] == 0:
        return np.zeros(words.shape[:-1] + (length,), dtype=np.uint8)
    as_bytes = words.view(np.uint8)
    return np.unpackbits(as_bytes, axis=-1, bitorder="little")[..., :length]


def parity(words: np.ndarray) -> np.ndarray:
    """XOR of all bits along the last axis, returned as uint8."""

    words = np.asarray(words, dtype=np.uint64)
    if words.shape[-1] == 0:
        return np.zeros(words.shape[:-1], dtype=np.uint8)
    folded = np.bitwise_xor.reduce(words, axis=-1)
    for shift in _PARITY_SHIFTS:
        folded = folded ^ (folded >> shift)
    return (folded & np.uint64(1)).astype(np.uint8)


def popcount(words: np.ndarray, length: int) -> np.ndarray:
    return unpack_bits(words, length).sum(axis=-1, dtype=np.int64)


def check_same_length(*lengths: int) -> int:
    first = lengths[0]
    if any(length != first for length in lengths[1:]):
        raise AmbientMismatchError(f"Ambient dimensions differ: {sorted(set(lengths))}")
    return first


@dataclass(frozen=True, eq=False)
class GF2Vector:
    length: int
    words: np.ndarray

    def __post_init__(self) -> None:
        words = np.array(self.words, dtype=np.uint64).reshape(-1)
        if words.shape[0] != word_count(self.length):
            raise ValueError(
                f"Expected {word_count(self.length)} words for length {self.length}, "
                f"got {words.shape[0]}"
            )
        words.setflags(write=False)
        object.__setattr__(self, "words", words)

    @classmethod
    def zeros(cls, length: int) -> "GF2Vector":
        return cls(length, np.zeros(word_count(length), dtype=np.uint64))

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "GF2Vector":
        array = np.fromiter((int(b) & 1 for b in bits), dtype=np.uint8)
        return cls(array.shape[0], pack_bits(array))

    @classmethod
    def from_string(cls, text: str) -> "GF2Vector":
        """Parse ``"0101..."``; the leftmost character is coordinate 0."""

        if any(ch not in "01" for ch in text):
            raise ValueError(f"Not a bit-string: {text!r}")
        return cls.from_bits(int(ch) for ch in text)

    @classmethod
    def unit(cls, length: int, index: int) -> "GF2Vector":
        if not 0 <= index < length:
            raise IndexError(f"Coordinate {index} out of range for length {length}")
        bits = np.zeros(length, dtype=np.uint8)
        bits[index] = 1
        return cls(length, pack_bits(bits))

    @classmethod
    def from_int(cls, value: int, length: int) -> "GF2Vector":
        """Coordinate ``c`` is bit ``c`` of ``value``."""

        if value < 0 or value >> length:
            raise ValueError(f"{value} does not fit in {length} coordinates")
        words = [(value >> (WORD_BITS * w)) & (2**WORD_BITS - 1) for w in range(word_count(length))]
        return cls(length, np.array(words, dtype=np.uint64))

    def to_int(self) -> int:
        return sum(int(word) << (WORD_BITS * i) for i, word in enumerate(self.words))

    def to_bits(self) -> np.ndarray:
        return unpack_bits(self.words, self.length)

    def to_string(self) -> str:
        return "".join("1" if b else "0" for b in self.to_bits())

    def bit(self, index: int) -> int:
        if not 0 <= index < self.length:
            raise IndexError(f"Coordinate {index} out of range for length {self.length}")
        return int((int(self.words[index // WORD_BITS]) >> (index % WORD_BITS)) & 1)

    def __add__(self, other: "GF2Vector") -> "GF2Vector":
        check_same_length(self.length, other.length)
        return GF2Vector(self.length, self.words ^ other.words)

    __xor__ = __add__

    def dot(self, other: "GF2Vector") -> int:
        check_same_length(self.length, other.length)
        return int(parity(self.words & other.words))

    def weight(self) -> int:
        return int(popcount(self.words, self.length))

    def is_zero(self) -> bool:
        return not self.words.any()

    def concat(self, other: "GF2Vector") -> "GF2Vector":
        return GF2Vector.from_bits(np.concatenate([self.to_bits(), other.to_bits()]))

    def delete(self, index: int) -> "GF2Vector":
        """Drop coordinate ``index`` and shift the later coordinates down by one."""

        if not 0 <= index < self.length:
            raise IndexError(f"Coordinate {index} out of range for length {self.length}")
        return GF2Vector.from_bits(np.delete(self.to_bits(), index))

    def __len__(self) -> int:
        return self.length

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GF2Vector):
            return NotImplemented
        return self.length == other.length and self.words.tobytes() == other.words.tobytes()

    def __hash__(self) -> int:
        return hash((self.length, self.words.tobytes()))

    def __repr__(self) -> str:
        return f"GF2Vector({self.to_string()!r})"


def vectors_to_words(vectors: Sequence[GF2Vector], length: int) -> np.ndarray:
    """Stack vectors into a ``(len(vectors), words)`` array after checking their lengths."""

    check_same_length(length, *(v.length for v in vectors))
    if not vectors:
        return np.zeros((0, word_count(length)), dtype=np.uint64)
    return np.stack([v.words for v in vectors]).astype(np.uint64)
