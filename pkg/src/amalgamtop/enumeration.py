"""Exhaustive enumeration of small T0 topologies.

A finite T0 topology is the same thing as a partial order on the points
(rows of minimal neighborhoods form a reflexive, transitive,
antisymmetric relation).  Enumeration runs in two stages: first the
posets whose natural point order is a linear extension (every row only
mentions points at least as large), built one point at a time by
choosing a down-closed predecessor set for each new point; then each of
those is relabeled by every permutation and the results are deduped.
Every poset has a linear extension, so the orbit union is exhaustive.

Feasible through n = 6 (hundreds of thousands of topologies); the test
suite cross-validates the counts against independent brute force on
smaller n.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator

from .bitsets import bits
from .errors import SizeBound
from .spaces import TopSpace

MAX_ENUM_POINTS = 6


def natural_order_rows(n: int) -> list[tuple[int, ...]]:
    """Minimal-neighborhood rows of every poset on 0..n-1 for which the
    numeric order is a linear extension (row i only contains j >= i)."""
    if n == 0:
        return [()]
    out: list[tuple[int, ...]] = []
    rows = [1 << i for i in range(n)]

    def down_closed_subsets(j: int) -> Iterator[int]:
        # subsets D of 0..j-1 such that i in D forces everything below i
        # (anything whose row contains i) into D as well
        below = [0] * j
        for i in range(j):
            for i2 in range(j):
                if (rows[i2] >> i) & 1:
                    below[i] |= 1 << i2
        for d in range(1 << j):
            if all(below[i] & ~d == 0 for i in bits(d)):
                yield d

    def extend(j: int) -> None:
        if j == n:
            out.append(tuple(rows))
            return
        for d in down_closed_subsets(j):
            for i in bits(d):
                rows[i] |= 1 << j
            extend(j + 1)
            for i in bits(d):
                rows[i] &= ~(1 << j)

    extend(1)
    return out


def _relabel(rows: tuple[int, ...], perm: tuple[int, ...]) -> tuple[int, ...]:
    n = len(rows)
    new = [0] * n
    for i in range(n):
        m = 0
        for y in bits(rows[i]):
            m |= 1 << perm[y]
        new[perm[i]] = m
    return tuple(new)


@lru_cache(maxsize=None)
def _all_rows(n: int) -> tuple[tuple[int, ...], ...]:
    seen: set[tuple[int, ...]] = set()
    perms = list(itertools.permutations(range(n)))
    for rows in natural_order_rows(n):
        for perm in perms:
            seen.add(_relabel(rows, perm))
    return tuple(sorted(seen))


def all_t0_rows(n: int) -> tuple[tuple[int, ...], ...]:
    """Every labeled T0 topology on n points, as sorted row tuples."""
    if n < 0:
        raise ValueError("negative point count")
    if n > MAX_ENUM_POINTS:
        raise SizeBound(
            f"T0 enumeration is capped at {MAX_ENUM_POINTS} points"
        )
    return _all_rows(n)


def all_t0_spaces(n: int) -> Iterator[TopSpace]:
    for rows in all_t0_rows(n):
        yield TopSpace(n, rows)


def count_t0_topologies(n: int) -> int:
    return len(all_t0_rows(n))


__all__ = [
    "MAX_ENUM_POINTS",
    "natural_order_rows",
    "all_t0_rows",
    "all_t0_spaces",
    "count_t0_topologies",
]
