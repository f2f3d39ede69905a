"""Finite topological spaces.

A finite topology is completely determined by the smallest open
neighborhood of each point: opens are exactly the sets that contain the
minimal neighborhood of each of their members (equivalently, the up-sets
of the specialization preorder).  ``TopSpace`` therefore stores the
minimal-neighborhood system as its canonical data and materializes the
full open family only on demand, under an explicit budget.  That matters
because a space with k isolated points has at least 2**k opens, and such
spaces show up routinely as amalgam carriers and product domains.

Point sets are int bitmasks throughout (see ``bitsets``).  The
``PointSet`` wrapper exists for callers who prefer a labeled, validating
view; every function here also accepts plain masks or iterables of point
indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .bitsets import as_set, bits, is_subset, mask_of, set_str
from .errors import BoundExceeded, EmptySubspace, ValidationError

# Cap on materialized open families.  Large enough for every fixture in
# the test suite (the circle amalgam needs about 67k opens), small enough
# that a runaway discrete-ish space fails fast instead of eating memory.
DEFAULT_OPENS_LIMIT = 1 << 18

DEFAULT_IND_BOUND = 10
DEFAULT_HD_BOUND = 12


def _normalize_points(points) -> int:
    """Accept an int mask, a PointSet, or an iterable of point indices."""
    if isinstance(points, int):
        return points
    if isinstance(points, PointSet):
        return points.mask
    return mask_of(points)


@dataclass(frozen=True)
class TopSpace:
    """A finite topological space on points 0..n-1.

    ``min_nbrs[x]`` is the bitmask of the smallest open set containing x.
    A tuple of masks is a valid system iff every point belongs to its own
    neighborhood and membership is transitive (y in min_nbrs[x] implies
    min_nbrs[y] is a subset of min_nbrs[x]).
    """

    n: int
    min_nbrs: tuple[int, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.n < 0:
            raise ValidationError("point count must be nonnegative")
        if len(self.min_nbrs) != self.n:
            raise ValidationError("one minimal neighborhood per point required")
        full = (1 << self.n) - 1
        for x, m in enumerate(self.min_nbrs):
            if m & ~full:
                raise ValidationError(f"neighborhood of {x} mentions unknown points")
            if not (m >> x) & 1:
                raise ValidationError(f"point {x} missing from its own neighborhood")
        for x, m in enumerate(self.min_nbrs):
            for y in bits(m):
                if self.min_nbrs[y] & ~m:
                    raise ValidationError(
                        f"neighborhood system not transitive at {x} -> {y}"
                    )
        if self.labels is not None and len(self.labels) != self.n:
            raise ValidationError("one label per point required")

    # -- basic views ----------------------------------------------------

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def point_named(self, name: str) -> int:
        for i in range(self.n):
            if self.label(i) == name:
                return i
        raise ValidationError(f"no point named {name!r}")

    def describe(self, points) -> str:
        return set_str(_normalize_points(points), self.labels)

    # -- point-set operators --------------------------------------------

    def is_open(self, points) -> bool:
        mask = _normalize_points(points)
        return all(is_subset(self.min_nbrs[x], mask) for x in bits(mask))

    def is_closed(self, points) -> bool:
        return self.is_open(self.full_mask & ~_normalize_points(points))

    def interior(self, points) -> int:
        mask = _normalize_points(points)
        out = 0
        for x in bits(mask):
            if is_subset(self.min_nbrs[x], mask):
                out |= 1 << x
        return out

    def closure(self, points) -> int:
        # x is in the closure iff its every neighborhood meets the set,
        # and the minimal neighborhood decides that.
        mask = _normalize_points(points)
        out = 0
        for x in range(self.n):
            if self.min_nbrs[x] & mask:
                out |= 1 << x
        return out

    def boundary(self, points) -> int:
        mask = _normalize_points(points)
        return self.closure(mask) & ~self.interior(mask)

    # -- the open family ------------------------------------------------

    def open_sets(self, limit: int | None = None) -> frozenset[int]:
        """All open sets, as masks.

        Enumerates the up-sets of the specialization preorder by binary
        branching with constraint propagation: including a point pulls in
        its minimal neighborhood, excluding it pushes out everything whose
        minimal neighborhood contains it.  Raises ``BoundExceeded`` once
        more than ``limit`` opens exist.
        """
        cached = self.__dict__.get("_opens_cache")
        if cached is not None:
            return cached
        if limit is None:
            limit = DEFAULT_OPENS_LIMIT
        full = self.full_mask
        below = [0] * self.n
        for x in range(self.n):
            for y in bits(self.min_nbrs[x]):
                below[y] |= 1 << x
        out: list[int] = []
        stack = [(0, 0)]
        while stack:
            inc, exc = stack.pop()
            und = full & ~inc & ~exc
            if not und:
                out.append(inc)
                if len(out) > limit:
                    raise BoundExceeded(
                        f"open family larger than {limit} sets (n={self.n})"
                    )
                continue
            x = (und & -und).bit_length() - 1
            up = self.min_nbrs[x]
            if not up & exc:
                stack.append((inc | up, exc))
            dn = below[x]
            if not dn & inc:
                stack.append((inc, exc | dn))
        result = frozenset(out)
        object.__setattr__(self, "_opens_cache", result)
        return result

    @property
    def opens(self) -> frozenset[int]:
        return self.open_sets()

    def count_opens(self, limit: int | None = None) -> int:
        return len(self.open_sets(limit))


@dataclass(frozen=True)
class PointSet:
    """A validated subset of a space's points."""

    space: TopSpace
    members: frozenset[int]

    def __post_init__(self):
        for p in self.members:
            if not 0 <= p < self.space.n:
                raise ValidationError(f"point {p} outside space of size {self.space.n}")

    @property
    def mask(self) -> int:
        return mask_of(self.members)

    def __str__(self) -> str:
        return self.space.describe(self.mask)


@dataclass(frozen=True)
class SpecPreorder:
    """Specialization preorder: x <= y iff every open containing x
    contains y.  ``up[x]`` is the mask of all y with x <= y."""

    n: int
    up: tuple[int, ...]

    def leq(self, x: int, y: int) -> bool:
        return bool((self.up[x] >> y) & 1)

    def down(self, x: int) -> int:
        out = 0
        for y in range(self.n):
            if (self.up[y] >> x) & 1:
                out |= 1 << y
        return out


# -- constructors -------------------------------------------------------


def generate_topology(n: int, generators: Iterable, labels=None) -> TopSpace:
    """Smallest topology on 0..n-1 containing the generator sets.

    Each point's minimal neighborhood is the intersection of the
    generators containing it (the whole space when none does), which
    pins down the generated topology completely.
    """
    gens = [_normalize_points(g) for g in generators]
    full = (1 << n) - 1
    for g in gens:
        if g & ~full:
            raise ValidationError("generator mentions unknown points")
    mins = []
    for x in range(n):
        m = full
        for g in gens:
            if (g >> x) & 1:
                m &= g
        mins.append(m)
    return TopSpace(n, tuple(mins), labels)


def from_opens(n: int, opens: Iterable, labels=None) -> TopSpace:
    """Build a space from an explicit open family, validating that the
    family really is a topology (has empty and full sets, deduplicates,
    closed under pairwise union and intersection)."""
    fam = {_normalize_points(o) for o in opens}
    full = (1 << n) - 1
    for o in fam:
        if o & ~full:
            raise ValidationError("open set mentions unknown points")
    if 0 not in fam or full not in fam:
        raise ValidationError("a topology contains the empty set and the full set")
    fam_list = sorted(fam)
    for a, b in itertools.combinations(fam_list, 2):
        if a | b not in fam:
            raise ValidationError(
                f"family not closed under union: {set_str(a)} | {set_str(b)}"
            )
        if a & b not in fam:
            raise ValidationError(
                f"family not closed under intersection: {set_str(a)} & {set_str(b)}"
            )
    mins = []
    for x in range(n):
        m = full
        for o in fam_list:
            if (o >> x) & 1:
                m &= o
        mins.append(m)
    space = TopSpace(n, tuple(mins), labels)
    object.__setattr__(space, "_opens_cache", frozenset(fam))
    return space


def specialization(space: TopSpace) -> SpecPreorder:
    return SpecPreorder(space.n, space.min_nbrs)


def alexandrov(pre: SpecPreorder, labels=None) -> TopSpace:
    """The topology whose opens are the up-sets of the preorder.  Inverse
    to ``specialization``; the round trip is asserted in tests."""
    return TopSpace(pre.n, pre.up, labels)


# -- separation and countability-free classics --------------------------


def is_t0(space: TopSpace) -> bool:
    """T0 iff no two points share a minimal neighborhood."""
    return len(set(space.min_nbrs)) == space.n


def is_discrete(space: TopSpace) -> bool:
    return all(space.min_nbrs[x] == 1 << x for x in range(space.n))


def is_t1(space: TopSpace) -> bool:
    """T1 iff every singleton is closed; for finite spaces this forces
    the discrete topology (tests assert the agreement)."""
    return all(space.closure(1 << x) == 1 << x for x in range(space.n))


# -- connectedness ------------------------------------------------------


def is_connected(space: TopSpace, opens_limit: int | None = None) -> bool:
    """Scan the open family for a proper nonempty clopen set.

    The empty space counts as disconnected.  This route deliberately
    works from the open family itself; ``components`` walks the
    specialization comparability graph instead, and the two must agree
    (cross-checked in tests and in the acceptance suite).
    """
    if space.n == 0:
        return False
    fam = space.open_sets(opens_limit)
    full = space.full_mask
    for u in fam:
        if u != 0 and u != full and (full & ~u) in fam:
            return False
    return True


def _comparability_adjacency(space: TopSpace) -> list[int]:
    adj = list(space.min_nbrs)
    for x in range(space.n):
        for y in bits(space.min_nbrs[x]):
            adj[y] |= 1 << x
    return adj


def components(space: TopSpace) -> list[int]:
    """Connected components as masks, ordered by smallest member.

    Computed by flooding the comparability graph of specialization
    (x adjacent to y when one belongs to the other's minimal
    neighborhood), independently of the clopen scan in ``is_connected``.
    """
    adj = _comparability_adjacency(space)
    seen = 0
    out = []
    for x in range(space.n):
        if (seen >> x) & 1:
            continue
        comp = 1 << x
        while True:
            grown = comp
            for y in bits(comp):
                grown |= adj[y]
            if grown == comp:
                break
            comp = grown
        out.append(comp)
        seen |= comp
    return out


def is_path_connected(space: TopSpace) -> bool:
    """Nonempty and any two points joined by a fence, a chain of points
    each comparable to the next.  Finite spaces are path connected
    exactly when connected; keeping this separate from the clopen scan
    gives the test suite two independent routes."""
    if space.n == 0:
        return False
    adj = _comparability_adjacency(space)
    reach = 1
    while True:
        grown = reach
        for y in bits(reach):
            grown |= adj[y]
        if grown == reach:
            break
        reach = grown
    return reach == space.full_mask


def component_of(space: TopSpace, x: int) -> int:
    for comp in components(space):
        if (comp >> x) & 1:
            return comp
    raise ValidationError(f"point {x} outside space")


# -- dimension-flavored properties --------------------------------------


def is_zero_dimensional(space: TopSpace) -> bool:
    """Every point has a clopen neighborhood inside each of its open
    neighborhoods.

    In a finite space the smallest clopen set containing x is its
    connected component and the binding open neighborhood is the minimal
    one, so the definition collapses to: each component is contained in
    (hence equals) the minimal neighborhood of each of its points.  The
    quantifier-level definition is kept as a brute-force oracle in tests.
    """
    comps = components(space)
    for comp in comps:
        for x in bits(comp):
            if comp & ~space.min_nbrs[x]:
                return False
    return True


def is_hereditarily_disconnected(
    space: TopSpace, exhaustive: bool = False, max_points: int = DEFAULT_HD_BOUND
) -> bool:
    """No subspace with two or more points is connected.

    Fast path: for a finite space this is equivalent to being discrete
    (a non-discrete space has a point inside another point's minimal
    neighborhood, and that pair is a connected two-point subspace; two
    topologically indistinguishable points give an indiscrete pair).
    ``exhaustive=True`` instead checks every subspace directly, bounded
    by ``max_points``; the acceptance suite proves the two routes agree
    on every T0 space with at most six points.
    """
    if not exhaustive:
        return is_discrete(space)
    if space.n > max_points:
        raise BoundExceeded(
            f"exhaustive subspace scan limited to {max_points} points, got {space.n}"
        )
    masks = sorted(range(1, space.full_mask + 1), key=lambda m: (m.bit_count(), m))
    for mask in masks:
        if mask.bit_count() < 2:
            continue
        if is_connected(subspace(space, mask)):
            return False
    return True


def _subspace_min_nbrs(min_nbrs: Sequence[int], mask: int) -> dict[int, int]:
    return {x: min_nbrs[x] & mask for x in bits(mask)}


def ind(space: TopSpace, max_points: int = DEFAULT_IND_BOUND) -> int:
    """Small inductive dimension.

    ind(empty) = -1; otherwise ind <= k iff every point has, inside every
    open neighborhood, an open neighborhood whose boundary has ind <= k-1.
    In a finite space each point has a unique minimal open neighborhood,
    so the only candidate inside the minimal one is the minimal one
    itself and the recursion becomes

        ind(A) = max over x in A of ind(boundary of min nbr of x in A) + 1

    computed over subspaces with memoization.  ``max_points`` guards the
    call; pass a larger bound explicitly for bigger spaces (the circle
    demo does).  A definition-level recursion over all open sets serves
    as the oracle in tests.
    """
    if space.n > max_points:
        raise BoundExceeded(
            f"ind computation limited to {max_points} points, got {space.n}"
        )
    mins = space.min_nbrs
    memo: dict[int, int] = {0: -1}

    def rec(mask: int) -> int:
        got = memo.get(mask)
        if got is not None:
            return got
        d = -1
        for x in bits(mask):
            u = mins[x] & mask
            cl = 0
            for y in bits(mask):
                if mins[y] & u:
                    cl |= 1 << y
            d = max(d, rec(cl & ~u) + 1)
        memo[mask] = d
        return d

    return rec(space.full_mask)


# -- space combinators --------------------------------------------------


def subspace(space: TopSpace, points) -> TopSpace:
    """Subspace on the given points, reindexed in ascending original
    order; minimal neighborhoods restrict."""
    mask = _normalize_points(points)
    if mask & ~space.full_mask:
        raise ValidationError("subspace mentions unknown points")
    kept = list(bits(mask))
    pos = {p: i for i, p in enumerate(kept)}
    mins = []
    for p in kept:
        m = 0
        for q in bits(space.min_nbrs[p] & mask):
            m |= 1 << pos[q]
        mins.append(m)
    labels = tuple(space.label(p) for p in kept) or None
    return TopSpace(len(kept), tuple(mins), labels)


def product_space(spaces: Sequence[TopSpace], max_points: int = 4096) -> TopSpace:
    """Product with row-major point indexing (rightmost factor fastest),
    so index order matches ``itertools.product`` over the factor ranges.
    The empty product is the one-point space."""
    dims = [s.n for s in spaces]
    total = 1
    for d in dims:
        total *= d
    if total > max_points:
        raise BoundExceeded(f"product would have {total} points (limit {max_points})")
    if any(d == 0 for d in dims):
        return TopSpace(0, ())
    tuples = list(itertools.product(*[range(d) for d in dims]))
    pos = {t: i for i, t in enumerate(tuples)}
    mins = []
    for t in tuples:
        m = 0
        for combo in itertools.product(*[bits(spaces[k].min_nbrs[t[k]]) for k in range(len(dims))]):
            m |= 1 << pos[combo]
        mins.append(m)
    labels = tuple(
        "(" + ",".join(spaces[k].label(t[k]) for k in range(len(dims))) + ")"
        for t in tuples
    )
    return TopSpace(len(tuples), tuple(mins), labels)


def sum_space(spaces: Sequence[TopSpace]) -> TopSpace:
    """Disjoint topological sum; summand i's points are shifted after the
    points of the summands before it."""
    mins: list[int] = []
    labels: list[str] = []
    offset = 0
    for i, s in enumerate(spaces):
        for x in range(s.n):
            mins.append(s.min_nbrs[x] << offset)
            labels.append(f"{i}:{s.label(x)}")
        offset += s.n
    return TopSpace(offset, tuple(mins), tuple(labels) if labels else None)


def same_topology(a: TopSpace, b: TopSpace) -> bool:
    """Equality of point count and topology, ignoring labels."""
    return a.n == b.n and a.min_nbrs == b.min_nbrs


def dense_in(space: TopSpace, points) -> bool:
    mask = _normalize_points(points)
    if mask & ~space.full_mask:
        raise ValidationError("dense_in: unknown points")
    return space.closure(mask) == space.full_mask


def nonempty_subset(space: TopSpace, points) -> int:
    mask = _normalize_points(points)
    if mask == 0:
        raise EmptySubspace("a nonempty set of points is required")
    if mask & ~space.full_mask:
        raise ValidationError("unknown points")
    return mask


__all__ = [
    "DEFAULT_OPENS_LIMIT",
    "DEFAULT_IND_BOUND",
    "DEFAULT_HD_BOUND",
    "TopSpace",
    "PointSet",
    "SpecPreorder",
    "generate_topology",
    "from_opens",
    "specialization",
    "alexandrov",
    "is_t0",
    "is_t1",
    "is_discrete",
    "is_connected",
    "components",
    "component_of",
    "is_path_connected",
    "is_zero_dimensional",
    "is_hereditarily_disconnected",
    "ind",
    "subspace",
    "product_space",
    "sum_space",
    "same_topology",
    "dense_in",
    "nonempty_subset",
]
