"""Bitmask helpers.

Point sets are plain ints: bit ``i`` set means point ``i`` is a member.
Python ints are arbitrary precision, so the same representation covers a
2 point base and a 400 point amalgam carrier, and union, intersection and
subset tests are single operations.
"""

from __future__ import annotations

from typing import Iterable, Iterator


def mask_of(points: Iterable[int]) -> int:
    m = 0
    for p in points:
        m |= 1 << p
    return m


def bits(mask: int) -> Iterator[int]:
    """Yield set bit positions in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def as_set(mask: int) -> frozenset[int]:
    return frozenset(bits(mask))


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def set_str(mask: int, labels=None) -> str:
    if labels is None:
        names = [str(i) for i in bits(mask)]
    else:
        names = [labels[i] for i in bits(mask)]
    return "{" + ",".join(names) + "}"
