"""Bitset helpers. Subsets of a finite ground set are Python ints."""

from typing import Iterable, Iterator, List


def bit(i: int) -> int:
    return 1 << i


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_list(mask: int) -> List[int]:
    return list(iter_bits(mask))


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def from_indices(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def full(n: int) -> int:
    return (1 << n) - 1


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0
