"""Amalgams of finite spaces over a subbase selection.

Given a nonempty T0 base space X, a selection S of nonempty open sets
that generates X's topology, and one nonempty factor space per selected
set, the amalgam's carrier holds one point (p, f) for every base point p
and every choice function f picking a factor point for each selected set
containing p.  The topology is generated by the sets "base point lies in
member i and the chosen factor point lies in U", for U open in factor i.

Everything here is finite and explicit, so each structural claim is
checked rather than assumed: projections really are continuous and open,
fibers really carry the product topology, the reduced and added-point
presentations really are homeomorphic to what they present.  Any failed
check raises ``VerificationError``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .bitsets import bits, mask_of
from .errors import (
    EmptyFactorSubset,
    EmptySubbaseMember,
    EmptySubspace,
    MismatchedFactors,
    NotT0Base,
    PointNotInMember,
    SizeBound,
    UnknownSubbaseMember,
    ValidationError,
    VerificationError,
)
from .maps import (
    ContinuousMap,
    is_continuous,
    is_embedding,
    is_homeomorphism,
    is_open_map,
    is_quotient_map,
    is_surjective,
    verify,
)
from .spaces import TopSpace, is_t0, product_space, same_topology, subspace

DEFAULT_CARRIER_BUDGET = 2000


@dataclass(frozen=True)
class SubbaseSel:
    """A subbase selection: distinct nonempty open subsets of a nonempty
    T0 base that generate its topology.  Member order is significant and
    indexes the factor assignment."""

    base: TopSpace
    sets: tuple[int, ...]

    def __post_init__(self):
        if self.base.n == 0:
            raise ValidationError("base space must be nonempty")
        if not is_t0(self.base):
            raise NotT0Base("base space must be T0")
        seen = set()
        full = self.base.full_mask
        for s in self.sets:
            if s == 0:
                raise EmptySubbaseMember(
                    "subbase members must be nonempty, do not include ∅"
                )
            if s & ~full:
                raise ValidationError("subbase member mentions unknown points")
            if not self.base.is_open(s):
                raise ValidationError(
                    f"subbase member {self.base.describe(s)} is not open"
                )
            if s in seen:
                raise ValidationError(
                    f"duplicate subbase member {self.base.describe(s)}"
                )
            seen.add(s)
        # the members must generate the base topology: intersecting the
        # members through each point must recover its minimal neighborhood
        for x in range(self.base.n):
            m = full
            for s in self.sets:
                if (s >> x) & 1:
                    m &= s
            if m != self.base.min_nbrs[x]:
                raise ValidationError(
                    "selection does not generate the base topology "
                    f"(at point {self.base.label(x)})"
                )

    def member_index(self, member) -> int:
        mask = member if isinstance(member, int) else mask_of(member)
        for i, s in enumerate(self.sets):
            if s == mask:
                return i
        raise UnknownSubbaseMember(
            f"{self.base.describe(mask)} is not a member of this selection"
        )

    def members_containing(self, p: int) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.sets) if (s >> p) & 1)


def validate_factors(sel: SubbaseSel, factors: Sequence[TopSpace]) -> tuple[TopSpace, ...]:
    if len(factors) != len(sel.sets):
        raise MismatchedFactors(
            f"selection has {len(sel.sets)} members but {len(factors)} factors given"
        )
    for i, f in enumerate(factors):
        if f.n == 0:
            raise ValidationError(f"factor {i} must be nonempty")
    return tuple(factors)


@dataclass(frozen=True)
class AmalgamPoint:
    """Carrier point: a base point plus one factor choice per selected
    set containing it (None on the slots whose set misses the point)."""

    base_point: int
    choices: tuple[int | None, ...]


@dataclass(frozen=True, eq=False)
class AmalgamSpace:
    """The built amalgam: carrier in canonical order plus its topology.

    Carrier order is lexicographic in (base point, then factor choices
    with member index ascending and factor points ascending), which makes
    rebuilds bit-for-bit reproducible and aligns fibers with products.
    """

    sel: SubbaseSel
    factors: tuple[TopSpace, ...]
    carrier: tuple[AmalgamPoint, ...]
    space: TopSpace
    _index: dict = field(repr=False)

    @property
    def base(self) -> TopSpace:
        return self.sel.base

    def point_index(self, pt: AmalgamPoint) -> int:
        try:
            return self._index[pt]
        except KeyError:
            raise ValidationError(f"{pt} is not a carrier point") from None

    def fiber_mask(self, p: int) -> int:
        out = 0
        for i, pt in enumerate(self.carrier):
            if pt.base_point == p:
                out |= 1 << i
        return out


def _carrier_points(
    sel: SubbaseSel, factors: Sequence[TopSpace], max_points: int
) -> list[AmalgamPoint]:
    base = sel.base
    k = len(sel.sets)
    total = 0
    for p in range(base.n):
        size = 1
        for i in sel.members_containing(p):
            size *= factors[i].n
        total += size
        if total > max_points:
            raise SizeBound(
                f"amalgam carrier would exceed {max_points} points"
            )
    carrier = []
    for p in range(base.n):
        idxs = sel.members_containing(p)
        for combo in itertools.product(*[range(factors[i].n) for i in idxs]):
            choices: list[int | None] = [None] * k
            for slot, i in enumerate(idxs):
                choices[i] = combo[slot]
            carrier.append(AmalgamPoint(p, tuple(choices)))
    return carrier


def _carrier_labels(
    sel: SubbaseSel, factors: Sequence[TopSpace], carrier: Sequence[AmalgamPoint]
) -> tuple[str, ...]:
    compact = all(f.n <= 10 for f in factors)
    out = []
    for pt in carrier:
        if compact:
            body = "".join(
                "-" if c is None else str(c) for c in pt.choices
            )
        else:
            body = ",".join("-" if c is None else str(c) for c in pt.choices)
        out.append(f"{sel.base.label(pt.base_point)}|{body}")
    return tuple(out)


def build_amalgam(
    sel: SubbaseSel,
    factors: Sequence[TopSpace],
    max_points: int = DEFAULT_CARRIER_BUDGET,
    subbase_mode: str = "minimal",
) -> AmalgamSpace:
    """Construct the amalgam of ``factors`` over ``sel``.

    ``subbase_mode`` picks how the generating sets are assembled:
    "minimal" intersects preimages of the factors' minimal open
    neighborhoods, "full" intersects preimages of every factor open.
    Both generate the same topology, because a subbase of each factor
    already suffices; tests assert the agreement and the harness builds
    with "minimal".
    """
    factors = validate_factors(sel, factors)
    if subbase_mode not in ("minimal", "full"):
        raise ValidationError(f"unknown subbase_mode {subbase_mode!r}")
    carrier = _carrier_points(sel, factors, max_points)
    n = len(carrier)
    k = len(sel.sets)
    # preimage masks: for member i and factor point v, the carrier points
    # over some p in member i whose choice at i is v
    pre = [[0] * factors[i].n for i in range(k)]
    for ci, pt in enumerate(carrier):
        for i, c in enumerate(pt.choices):
            if c is not None:
                pre[i][c] |= 1 << ci
    full = (1 << n) - 1
    if subbase_mode == "minimal":
        premin = [
            [0] * factors[i].n for i in range(k)
        ]
        for i in range(k):
            for v in range(factors[i].n):
                m = 0
                for w in bits(factors[i].min_nbrs[v]):
                    m |= pre[i][w]
                premin[i][v] = m
        mins = []
        for pt in carrier:
            m = full
            for i, c in enumerate(pt.choices):
                if c is not None:
                    m &= premin[i][c]
            mins.append(m)
    else:
        subbasic = []
        for i in range(k):
            for u in sorted(factors[i].open_sets()):
                m = 0
                for v in bits(u):
                    m |= pre[i][v]
                subbasic.append(m)
        mins = []
        for ci in range(n):
            m = full
            for sb in subbasic:
                if (sb >> ci) & 1:
                    m &= sb
            mins.append(m)
    space = TopSpace(n, tuple(mins), _carrier_labels(sel, factors, carrier))
    index = {pt: i for i, pt in enumerate(carrier)}
    return AmalgamSpace(sel, factors, tuple(carrier), space, index)


# -- projections ---------------------------------------------------------


def base_projection(a: AmalgamSpace) -> ContinuousMap:
    """(p, f) -> p; verified continuous and open."""
    m = ContinuousMap(
        a.space, a.base, tuple(pt.base_point for pt in a.carrier)
    )
    verify(is_continuous(m), "base projection must be continuous")
    verify(is_open_map(m), "base projection must be open")
    return m


def partial_projection(a: AmalgamSpace, member) -> ContinuousMap:
    """Projection to the factor over one member, named by index or by its
    point set: defined on the carrier points whose base point lies in the
    member, which is an open set.  Verified continuous and open with open
    domain."""
    i = member if isinstance(member, int) else a.sel.member_index(member)
    if not 0 <= i < len(a.sel.sets):
        raise UnknownSubbaseMember(f"no member with index {i}")
    dom_mask = 0
    for ci, pt in enumerate(a.carrier):
        if pt.choices[i] is not None:
            dom_mask |= 1 << ci
    verify(a.space.is_open(dom_mask), "partial projection domain must be open")
    dom = subspace(a.space, dom_mask)
    vals = tuple(
        a.carrier[ci].choices[i] for ci in bits(dom_mask)
    )
    m = ContinuousMap(dom, a.factors[i], vals)
    verify(is_continuous(m), "partial projection must be continuous")
    verify(is_open_map(m), "partial projection must be open")
    return m


def fiber(a: AmalgamSpace, p: int) -> TopSpace:
    """Subspace over one base point; verified to carry the product
    topology of the factors whose member contains the point (carrier
    order aligns the two, so the check is direct equality)."""
    if not 0 <= p < a.base.n:
        raise ValidationError(f"no base point {p}")
    sub = subspace(a.space, a.fiber_mask(p))
    prod = product_space([a.factors[i] for i in a.sel.members_containing(p)])
    verify(
        same_topology(sub, prod),
        f"fiber over {a.base.label(p)} must carry the product topology",
    )
    return sub


# -- quotient presentation ----------------------------------------------


def quotient_presentation(
    a: AmalgamSpace, max_points: int = 4096
) -> ContinuousMap:
    """The map from (base x all factors) onto the amalgam that forgets
    the factor choices at sets missing the base point.  Verified to be a
    surjective quotient map."""
    pieces = [a.base, *a.factors]
    dims = [s.n for s in pieces]
    total = 1
    for d in dims:
        total *= d
    if total > max_points:
        raise SizeBound(f"presentation product would have {total} points")
    dom = product_space(pieces, max_points=max_points)
    k = len(a.factors)
    vals = []
    for t in itertools.product(*[range(d) for d in dims]):
        p = t[0]
        choices: list[int | None] = [None] * k
        for i in a.sel.members_containing(p):
            choices[i] = t[1 + i]
        vals.append(a.point_index(AmalgamPoint(p, tuple(choices))))
    m = ContinuousMap(dom, a.space, tuple(vals))
    verify(is_surjective(m), "presentation map must be surjective")
    verify(is_continuous(m), "presentation map must be continuous")
    verify(is_quotient_map(m), "presentation map must be a quotient map")
    return m


# -- reduced amalgam -----------------------------------------------------


def reduced_amalgam(a: AmalgamSpace, points) -> AmalgamSpace:
    """Amalgam over a nonempty subset W of the base: members are traced
    to W (dropping empty traces), members with equal traces are grouped,
    and each group's factors are replaced by their product.  Verified
    homeomorphic to the part of the original amalgam lying over W."""
    W = points if isinstance(points, int) else mask_of(points)
    if W == 0:
        raise EmptySubspace("reduced amalgam needs a nonempty base subset")
    if W & ~a.base.full_mask:
        raise ValidationError("unknown base points")
    kept = list(bits(W))
    pos = {p: i for i, p in enumerate(kept)}
    sub_base = subspace(a.base, W)

    trace_order: list[int] = []  # traces in first-appearance member order
    groups: dict[int, list[int]] = {}
    for i, s in enumerate(a.sel.sets):
        t = s & W
        if t == 0:
            continue
        if t not in groups:
            groups[t] = []
            trace_order.append(t)
        groups[t].append(i)

    reduced_sets = []
    for t in trace_order:
        m = 0
        for p in bits(t):
            m |= 1 << pos[p]
        reduced_sets.append(m)
    sel = SubbaseSel(sub_base, tuple(reduced_sets))
    new_factors = tuple(
        product_space([a.factors[i] for i in groups[t]]) for t in trace_order
    )
    reduced = build_amalgam(sel, new_factors)

    # canonical correspondence with the subspace over W
    over_mask = 0
    over_points = []
    for ci, pt in enumerate(a.carrier):
        if (W >> pt.base_point) & 1:
            over_mask |= 1 << ci
            over_points.append(pt)
    sub = subspace(a.space, over_mask)
    vals = []
    for pt in over_points:
        g: list[int | None] = [None] * len(trace_order)
        for ti, t in enumerate(trace_order):
            if not (t >> pt.base_point) & 1:
                continue
            members = groups[t]
            combo = tuple(pt.choices[i] for i in members)
            # product point index, row-major over the group's factors
            idx = 0
            for slot, i in enumerate(members):
                idx = idx * a.factors[i].n + combo[slot]
            g[ti] = idx
        vals.append(reduced.point_index(AmalgamPoint(pos[pt.base_point], tuple(g))))
    m = ContinuousMap(sub, reduced.space, tuple(vals))
    verify(
        is_homeomorphism(m),
        "reduced amalgam must be homeomorphic to the part over the subset",
    )
    return reduced


# -- amalgams of maps ----------------------------------------------------


def amalgam_of_maps(
    a: AmalgamSpace, factor_maps: Sequence[ContinuousMap]
) -> tuple[ContinuousMap, AmalgamSpace]:
    """Apply one continuous map per factor, pointwise on choices.  The
    result maps this amalgam to the amalgam of the maps' codomains over
    the same selection; verified continuous, and verified a
    homeomorphism whenever every factor map is one."""
    if len(factor_maps) != len(a.factors):
        raise MismatchedFactors("one factor map per member required")
    for i, fm in enumerate(factor_maps):
        if not same_topology(fm.dom, a.factors[i]):
            raise MismatchedFactors(f"map {i} does not start at factor {i}")
        if not is_continuous(fm):
            raise ValidationError(f"factor map {i} is not continuous")
    target = build_amalgam(a.sel, [fm.cod for fm in factor_maps])
    vals = []
    for pt in a.carrier:
        choices = tuple(
            None if c is None else factor_maps[i].values[c]
            for i, c in enumerate(pt.choices)
        )
        vals.append(target.point_index(AmalgamPoint(pt.base_point, choices)))
    m = ContinuousMap(a.space, target.space, tuple(vals))
    verify(is_continuous(m), "amalgam of continuous maps must be continuous")
    if all(is_homeomorphism(fm) for fm in factor_maps):
        verify(
            is_homeomorphism(m),
            "amalgam of homeomorphisms must be a homeomorphism",
        )
    return m, target


# -- embeddings ----------------------------------------------------------


def embed_base(a: AmalgamSpace, choice: Sequence[int]) -> ContinuousMap:
    """Copy of the base inside the amalgam: fix one factor point per
    member and send p to (p, restriction of the fixed choices).
    Verified to be an embedding."""
    if len(choice) != len(a.sel.sets):
        raise MismatchedFactors("one fixed factor point per member required")
    for i, v in enumerate(choice):
        if not 0 <= v < a.factors[i].n:
            raise ValidationError(f"choice {v} outside factor {i}")
    vals = []
    for p in range(a.base.n):
        choices = tuple(
            choice[i] if (a.sel.sets[i] >> p) & 1 else None
            for i in range(len(a.sel.sets))
        )
        vals.append(a.point_index(AmalgamPoint(p, choices)))
    m = ContinuousMap(a.base, a.space, tuple(vals))
    verify(is_embedding(m), "fixed-choice base copy must be an embedding")
    return m


def embed_factor(
    a: AmalgamSpace, p: int, member, rest: Mapping[int, int] | Sequence[tuple[int, int]] = ()
) -> ContinuousMap:
    """Copy of one factor inside the fiber over p: vary the choice at the
    given member (an index or a point set), fix the choices at the other
    members containing p to ``rest``.  Verified to be an embedding into
    the fiber."""
    i = member if isinstance(member, int) else a.sel.member_index(member)
    if not 0 <= i < len(a.sel.sets):
        raise UnknownSubbaseMember(f"no member with index {i}")
    if not (a.sel.sets[i] >> p) & 1:
        raise PointNotInMember(
            f"base point {a.base.label(p)} not in member {a.base.describe(a.sel.sets[i])}"
        )
    rest_map = dict(rest)
    others = [j for j in a.sel.members_containing(p) if j != i]
    for j in others:
        if j not in rest_map:
            raise MismatchedFactors(
                f"missing fixed choice for member {j} containing the point"
            )
        if not 0 <= rest_map[j] < a.factors[j].n:
            raise ValidationError(f"fixed choice for member {j} outside its factor")
    for j in rest_map:
        if j == i or j not in others:
            raise ValidationError(f"fixed choice given for irrelevant member {j}")
    vals = []
    k = len(a.sel.sets)
    for v in range(a.factors[i].n):
        choices: list[int | None] = [None] * k
        for j in others:
            choices[j] = rest_map[j]
        choices[i] = v
        vals.append(a.point_index(AmalgamPoint(p, tuple(choices))))
    m = ContinuousMap(a.factors[i], a.space, tuple(vals))
    verify(is_embedding(m), "factor copy must be an embedding")
    fiber_mask = a.fiber_mask(p)
    verify(
        m.image_mask() & ~fiber_mask == 0,
        "factor copy must land inside the fiber",
    )
    return m


# -- added-point presentation -------------------------------------------


def _extend_with_added_point(factor: TopSpace, isolated: bool) -> TopSpace:
    """Append one fresh point; its only neighborhood is the whole space,
    unless ``isolated``."""
    n = factor.n
    q_nbr = (1 << (n + 1)) - 1 if not isolated else 1 << n
    mins = tuple(factor.min_nbrs) + (q_nbr,)
    labels = tuple(factor.label(x) for x in range(n)) + ("q",)
    return TopSpace(n + 1, mins, labels)


def added_point_presentation(
    a: AmalgamSpace, isolate_clopen: bool = False, max_points: int = 4096
) -> tuple[TopSpace, ContinuousMap]:
    """Present the amalgam as a subspace of a product: extend each factor
    with an added point q whose only neighborhood is everything, then take
    the product points that use q at exactly the members missing their
    base point.  With ``isolate_clopen`` the added point is isolated
    instead for members that are clopen in the base.  Returns the
    presentation space and the verified homeomorphism onto it."""
    k = len(a.sel.sets)
    extended = []
    total = 1
    for i in range(k):
        iso = isolate_clopen and a.base.is_closed(a.sel.sets[i])
        z = _extend_with_added_point(a.factors[i], iso)
        extended.append(z)
        total *= z.n
    if total > max_points:
        raise SizeBound(f"extended product would have {total} points")
    # presentation carrier reuses the amalgam carrier order; coordinate i
    # of the tuple for (p, f) is f(i) when p is in member i, else q
    coords = []
    for pt in a.carrier:
        coords.append(
            tuple(
                a.factors[i].n if pt.choices[i] is None else pt.choices[i]
                for i in range(k)
            )
        )
    n = len(coords)
    mins = []
    for ci, t in enumerate(coords):
        m = 0
        for cj, u in enumerate(coords):
            if all((extended[i].min_nbrs[t[i]] >> u[i]) & 1 for i in range(k)):
                m |= 1 << cj
        mins.append(m)
    labels = tuple(
        "(" + ",".join(extended[i].label(t[i]) for i in range(k)) + ")"
        for t in coords
    )
    pres = TopSpace(n, tuple(mins), labels)
    m = ContinuousMap(a.space, pres, tuple(range(n)))
    verify(
        is_homeomorphism(m),
        "added-point presentation must be homeomorphic to the amalgam",
    )
    return pres, m


# -- subspace amalgam ----------------------------------------------------


def subspace_amalgam(
    a: AmalgamSpace, subs: Sequence
) -> tuple[AmalgamSpace, ContinuousMap]:
    """Shrink each factor to a nonempty subset of its points.  The
    amalgam of the subspaces is verified homeomorphic to the matching
    subset of the original carrier under its subspace topology; returns
    the smaller amalgam and that homeomorphism (from the subset)."""
    if len(subs) != len(a.factors):
        raise MismatchedFactors("one subset per factor required")
    masks = []
    for i, s in enumerate(subs):
        mask = s if isinstance(s, int) else mask_of(s)
        if mask == 0:
            raise EmptyFactorSubset(f"factor {i} subset must be nonempty")
        if mask & ~a.factors[i].full_mask:
            raise ValidationError(f"factor {i} subset mentions unknown points")
        masks.append(mask)
    sub_factors = [subspace(a.factors[i], masks[i]) for i in range(len(masks))]
    small = build_amalgam(a.sel, sub_factors)
    # position of an original factor point within the kept subset
    pos = [
        {p: j for j, p in enumerate(bits(masks[i]))} for i in range(len(masks))
    ]
    keep_mask = 0
    kept_points = []
    for ci, pt in enumerate(a.carrier):
        ok = all(
            c is None or (masks[i] >> c) & 1 for i, c in enumerate(pt.choices)
        )
        if ok:
            keep_mask |= 1 << ci
            kept_points.append(pt)
    sub = subspace(a.space, keep_mask)
    vals = []
    for pt in kept_points:
        choices = tuple(
            None if c is None else pos[i][c] for i, c in enumerate(pt.choices)
        )
        vals.append(small.point_index(AmalgamPoint(pt.base_point, choices)))
    m = ContinuousMap(sub, small.space, tuple(vals))
    verify(
        is_homeomorphism(m),
        "amalgam of factor subspaces must match the carrier subset",
    )
    return small, m


# -- structural facts, checked wholesale --------------------------------


def check_structural_facts(a: AmalgamSpace) -> None:
    """Assert the basic structure theory of one built amalgam:

    1. every partial projection is continuous and open with open domain
    2. the base projection is continuous and open
    3. all-singleton factors collapse the amalgam onto its base
    4. each fiber carries the product topology of its factors
    5. shrinking factors to subsets matches the carrier-subset topology
    6. generating from factor minimal neighborhoods agrees with
       generating from all factor opens

    Raises ``VerificationError`` on the first violation.
    """
    for i in range(len(a.sel.sets)):
        partial_projection(a, i)
    pi = base_projection(a)
    if all(f.n == 1 for f in a.factors):
        verify(
            is_homeomorphism(pi),
            "singleton factors must collapse the amalgam onto the base",
        )
    for p in range(a.base.n):
        fiber(a, p)
    # factor-subset probes: singletons, and everything-but-last
    subspace_amalgam(a, [1 for _ in a.factors])
    drops = [
        f.full_mask & ~(1 << (f.n - 1)) if f.n > 1 else f.full_mask
        for f in a.factors
    ]
    subspace_amalgam(a, drops)
    rebuilt = build_amalgam(
        a.sel, a.factors, max_points=max(len(a.carrier), 1), subbase_mode="full"
    )
    verify(
        rebuilt.space.min_nbrs == a.space.min_nbrs,
        "factor subbases must generate the same amalgam topology",
    )


__all__ = [
    "DEFAULT_CARRIER_BUDGET",
    "SubbaseSel",
    "validate_factors",
    "AmalgamPoint",
    "AmalgamSpace",
    "build_amalgam",
    "base_projection",
    "partial_projection",
    "fiber",
    "quotient_presentation",
    "reduced_amalgam",
    "amalgam_of_maps",
    "embed_base",
    "embed_factor",
    "added_point_presentation",
    "subspace_amalgam",
    "check_structural_facts",
]
