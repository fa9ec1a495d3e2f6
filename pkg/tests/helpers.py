"""Brute-force reference implementations shared by the tests."""

import numpy as np

from f2_subspaces.gf2 import GF2Matrix, Subspace


def naive_rank(bits) -> int:
    """Row rank by plain boolean elimination on an unpacked 0/1 array."""

    work = np.array(bits, dtype=np.uint8) % 2
    rank = 0
    rows, cols = work.shape
    for col in range(cols):
        pivot = next((r for r in range(rank, rows) if work[r, col]), None)
        if pivot is None:
            continue
        work[[rank, pivot]] = work[[pivot, rank]]
        for r in range(rows):
            if r != rank and work[r, col]:
                work[r] ^= work[rank]
        rank += 1
    return rank


def points(s: Subspace) -> set[str]:
    return set(s.elements().to_strings())


def all_vectors(ambient: int) -> GF2Matrix:
    codes = np.arange(1 << ambient)
    bits = ((codes[:, None] >> np.arange(ambient)[None, :]) & 1).astype(np.uint8)
    return GF2Matrix.from_bits(bits)


def all_subspaces(ambient: int) -> list[Subspace]:
    """Every subspace of F2^ambient, grown one spanning vector at a time."""

    vectors = all_vectors(ambient).row_vectors()[1:]
    found = {Subspace.zero(ambient)}
    frontier = [Subspace.zero(ambient)]
    while frontier:
        grown = []
        for s in frontier:
            for v in vectors:
                bigger = s.sum(Subspace.span([v], ambient))
                if bigger not in found:
                    found.add(bigger)
                    grown.append(bigger)
        frontier = grown
    return sorted(found, key=lambda s: s.sort_key())
