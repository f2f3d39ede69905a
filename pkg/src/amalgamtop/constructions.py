"""Named constructions and verified theorem procedures.

Fixtures (Sierpinski space, discrete and indiscrete spaces, a four-point
circle with its semicircle selection, pseudo-cones) plus the procedures
that reenact connectivity, connectification, and homogeneity arguments
on concrete finite instances, verifying every step:

* ``connectedness_with_witness`` checks the finite-witness hypothesis
  (a set E meeting every member whose factor is disconnected, in the
  sense that E is never contained in such a member) and asserts the
  amalgam is connected whenever the hypothesis holds.
* ``connectedness_chain`` builds the explicit chain of points and base
  copies that drags one carrier point to another through connected
  subsets.
* ``connectify`` embeds an amalgam densely and properly into a
  connected amalgam over a connected ambient extension of its base.
* ``homogeneity_transfer`` certifies homogeneity of an amalgam with
  uniform homogeneous factors over a base whose selection-preserving
  automorphisms act transitively.
"""

from __future__ import annotations

from dataclasses import dataclass

from .amalgam import (
    AmalgamPoint,
    AmalgamSpace,
    SubbaseSel,
    amalgam_of_maps,
    build_amalgam,
    embed_base,
)
from .bitsets import bits, is_subset, mask_of
from .errors import (
    FactorNotHomogeneous,
    FactorsNotUniform,
    NoCompatibleAmbientOpen,
    NotDense,
    NotEmbedding,
    PreconditionFailed,
    ValidationError,
)
from .maps import (
    ContinuousMap,
    automorphism_group,
    compose,
    find_homeomorphism,
    identity_map,
    is_embedding,
    is_homeomorphism,
    is_homogeneous,
    verify,
)
from .spaces import (
    DEFAULT_IND_BOUND,
    PointSet,
    TopSpace,
    component_of,
    dense_in,
    ind,
    is_connected,
    is_zero_dimensional,
    same_topology,
    subspace,
)

# -- fixture spaces ------------------------------------------------------


def sierpinski() -> TopSpace:
    """Two points; s1 is open and dense, s0 is closed."""
    return TopSpace(2, (0b11, 0b10), ("s0", "s1"))


def discrete(k: int) -> TopSpace:
    if k < 1:
        raise ValidationError("discrete space needs at least one point")
    return TopSpace(k, tuple(1 << i for i in range(k)), tuple(f"x{i}" for i in range(k)))


def indiscrete(k: int) -> TopSpace:
    if k < 1:
        raise ValidationError("indiscrete space needs at least one point")
    full = (1 << k) - 1
    return TopSpace(k, (full,) * k, tuple(f"u{i}" for i in range(k)))


def finite_circle() -> TopSpace:
    """Four points a, b, c, d: a and b open, c between a and b on one
    side, d between them on the other.  Connected, T0, not homogeneous;
    the smallest finite space that behaves like a circle."""
    return TopSpace(4, (0b0001, 0b0010, 0b0111, 0b1011), ("a", "b", "c", "d"))


def semicircle_subbase() -> tuple[SubbaseSel, int]:
    """The four open "semicircles" of the finite circle: {a}, {b},
    {a,b,c}, {a,b,d}.  Returns the selection and the antipode pair
    {c,d}, which no member contains; that pair witnesses connectedness
    of every amalgam over this selection."""
    circle = finite_circle()
    sel = SubbaseSel(circle, (0b0001, 0b0010, 0b0111, 0b1011))
    e = 0b1100
    for s in sel.sets:
        verify(not is_subset(e, s), "no semicircle may contain both antipodes")
    return sel, e


def semicircle_amalgam(factor: TopSpace | None = None) -> tuple[AmalgamSpace, int]:
    """Amalgam over the semicircle selection with one uniform factor
    (two-point discrete by default); returns it with the antipode pair."""
    sel, e = semicircle_subbase()
    z = discrete(2) if factor is None else factor
    return build_amalgam(sel, (z,) * len(sel.sets)), e


def pseudo_cone(k: TopSpace) -> AmalgamSpace:
    """Cone-like amalgam over the Sierpinski base: the open point's
    member carries ``k``, the full member carries a singleton.  One apex
    point sits over the closed point and its only neighborhood is the
    whole space, so the result is connected with |k| + 1 points."""
    base = sierpinski()
    sel = SubbaseSel(base, (0b10, 0b11))
    return build_amalgam(sel, (k, discrete(1)))


# -- connectedness with a finite witness --------------------------------


def _mask_in(space: TopSpace, pts) -> int:
    if isinstance(pts, PointSet):
        if not same_topology(pts.space, space):
            raise ValidationError("point set belongs to a different space")
        mask = pts.mask
    elif isinstance(pts, int):
        mask = pts
    else:
        mask = mask_of(pts)
    if mask & ~space.full_mask:
        raise ValidationError("unknown points in set")
    return mask


def witness_condition_holds(a: AmalgamSpace, e) -> bool:
    """The finite-witness hypothesis: base connected, and every member
    either fails to contain E or has a connected factor."""
    mask = _mask_in(a.base, e)
    if not is_connected(a.base):
        return False
    return all(
        not is_subset(mask, a.sel.sets[i]) or is_connected(a.factors[i])
        for i in range(len(a.sel.sets))
    )


def connectedness_with_witness(a: AmalgamSpace, e) -> bool:
    """Check the finite-witness hypothesis for E; when it holds, assert
    that the amalgam really is connected and return True.  When it
    fails, return False without claiming anything."""
    if not witness_condition_holds(a, e):
        return False
    verify(
        is_connected(a.space),
        "witness hypothesis held but the amalgam is disconnected",
    )
    return True


@dataclass(frozen=True)
class ConnWitness:
    """The explicit connectivity certificate for one pair of carrier
    points: a chain z_0 .. z_{n+1} walking from y0 to a point directly
    comparable to y1, the full factor selectors f_0 .. f_n backing each
    step, and the embedded base copies C_0 .. C_n through which
    consecutive chain points travel."""

    e: PointSet
    anchors: tuple[int, ...]  # E's points in order, then the base point of y1
    y0: AmalgamPoint
    y1: AmalgamPoint
    chain: tuple[AmalgamPoint, ...]
    selectors: tuple[tuple[int, ...], ...]
    copies: tuple[ContinuousMap, ...]


def connectedness_chain(a: AmalgamSpace, e, y0: int, y1: int) -> ConnWitness:
    """Drag carrier point y0 to y1 through connected base copies.

    With E = {p_0 .. p_{n-1}} and p_n the base point of y1, each step
    extends the current point z_i by y1's choices (then by a default on
    members touching neither) to a full selector f_i, embeds the base
    with choices fixed to f_i, and restricts f_i to the members
    containing p_i to get z_{i+1}.  Consecutive chain points share the
    copy for f_i, and the final point differs from y1 only at members
    that contain all of E, whose factors the hypothesis makes connected.

    All of that is verified on the instance; the chain plus copies form
    a machine-checked proof that y0 and y1 lie in one component.
    """
    mask = _mask_in(a.base, e)
    if not witness_condition_holds(a, mask):
        raise PreconditionFailed(
            "witness hypothesis fails for this set; no chain is promised"
        )
    carrier = a.carrier
    if not (0 <= y0 < len(carrier) and 0 <= y1 < len(carrier)):
        raise ValidationError("chain endpoints must be carrier indices")
    start, goal = carrier[y0], carrier[y1]
    k = len(a.sel.sets)
    anchors = tuple(bits(mask)) + (goal.base_point,)
    chain = [start]
    selectors: list[tuple[int, ...]] = []
    copies: list[ContinuousMap] = []
    for p in anchors:
        cur = chain[-1]
        f = tuple(
            cur.choices[j]
            if cur.choices[j] is not None
            else (goal.choices[j] if goal.choices[j] is not None else 0)
            for j in range(k)
        )
        selectors.append(f)
        copies.append(embed_base(a, f))
        nxt = AmalgamPoint(
            p, tuple(f[j] if (a.sel.sets[j] >> p) & 1 else None for j in range(k))
        )
        chain.append(nxt)

    # invariant 1: the chain starts at y0
    verify(chain[0] == start, "chain must start at y0")
    # invariant 2: consecutive chain points share an embedded base copy
    for i, copy in enumerate(copies):
        image = set(copy.values)
        verify(
            a.point_index(chain[i]) in image
            and a.point_index(chain[i + 1]) in image,
            f"steps {i} and {i + 1} must lie in base copy {i}",
        )
    # invariant 3: the chain ends over the base point of y1
    verify(
        chain[-1].base_point == goal.base_point,
        "chain must end in the fiber of y1",
    )
    # invariant 4: remaining disagreement is confined to members that
    # contain all of E, and those factors are connected
    for j in range(k):
        if chain[-1].choices[j] != goal.choices[j]:
            verify(
                is_subset(mask, a.sel.sets[j]),
                "final disagreement outside an E-containing member",
            )
            verify(
                is_connected(a.factors[j]),
                "final disagreement at a disconnected factor",
            )
    # conclusion, checked by an independent route
    verify(
        (component_of(a.space, y0) >> y1) & 1,
        "chain endpoints must share a component",
    )
    return ConnWitness(
        PointSet(a.base, frozenset(bits(mask))),
        anchors,
        start,
        goal,
        tuple(chain),
        tuple(selectors),
        tuple(copies),
    )


def second_connectedness_applies(a: AmalgamSpace) -> bool:
    """Hypothesis of the stronger connectedness criterion: base
    connected, and the full base is either not a member or carries a
    connected factor.  (Proper members need no witness at all.)"""
    if not is_connected(a.base):
        return False
    full = a.base.full_mask
    for i, s in enumerate(a.sel.sets):
        if s == full and not is_connected(a.factors[i]):
            return False
    return True


def connectedness_without_full_member(a: AmalgamSpace) -> bool:
    """Check the stronger hypothesis; when it holds, assert the amalgam
    is connected and return True, else return False with no claim."""
    if not second_connectedness_applies(a):
        return False
    verify(
        is_connected(a.space),
        "hypothesis held but the amalgam is disconnected",
    )
    return True


# -- connectification ----------------------------------------------------


@dataclass(frozen=True)
class Connectification:
    """A verified dense proper embedding of an amalgam into a connected
    amalgam over a connected extension of its base."""

    ambient: TopSpace
    dense_embed: ContinuousMap
    outside_point: int
    extended_sel: SubbaseSel
    phi: tuple[int, ...]  # ambient open chosen for each original member
    result: AmalgamSpace
    embedding: ContinuousMap


def connectify(
    a: AmalgamSpace,
    ambient: TopSpace,
    dense_embed: ContinuousMap,
    outside_point: int,
    max_points: int = 2000,
    opens_limit: int | None = None,
) -> Connectification:
    """Extend an amalgam to a connected one along a dense embedding of
    its base.

    Each member S is replaced by an ambient open avoiding the outside
    point whose trace on the embedded base is exactly the image of S
    (smallest such open, ties to the smaller bit pattern); the family is
    topped up with ambient minimal neighborhoods until it generates the
    ambient topology, the new members carrying singleton factors.  Every
    member containing the outside point is then singleton-factored, so
    the result is connected; the original amalgam embeds by keeping its
    choices on replaced members and picking the unique point on new
    ones.  Embedding, density, properness, and connectedness are all
    verified.
    """
    if not same_topology(dense_embed.dom, a.base):
        raise ValidationError("the embedding must start at the amalgam's base")
    if not same_topology(dense_embed.cod, ambient):
        raise ValidationError("the embedding must land in the ambient space")
    if not is_embedding(dense_embed):
        raise NotEmbedding("base map into the ambient space is not an embedding")
    image = dense_embed.image_mask()
    if not dense_in(ambient, image):
        raise NotDense("base image is not dense in the ambient space")
    if not 0 <= outside_point < ambient.n:
        raise ValidationError("outside point is not an ambient point")
    if (image >> outside_point) & 1:
        raise ValidationError("outside point must avoid the embedded base")
    if not is_connected(ambient):
        raise PreconditionFailed("ambient space must be connected")

    opens = sorted(ambient.open_sets(), key=lambda o: (o.bit_count(), o))
    phi: list[int] = []
    for i, s in enumerate(a.sel.sets):
        target = dense_embed.image_mask(s)
        found = None
        for o in opens:
            if (o >> outside_point) & 1:
                continue
            if o & image == target:
                found = o
                break
        if found is None:
            raise NoCompatibleAmbientOpen(
                "no ambient open avoids the outside point and traces to "
                f"member {ambient.describe(target)}",
                member=i,
            )
        phi.append(found)

    extension: list[int] = []
    chosen = set(phi)
    for x in range(ambient.n):
        cut = ambient.full_mask
        for o in phi + extension:
            if (o >> x) & 1:
                cut &= o
        need = ambient.min_nbrs[x]
        if cut != need and need not in chosen:
            extension.append(need)
            chosen.add(need)
    ext_sel = SubbaseSel(ambient, tuple(phi) + tuple(extension))
    factors = tuple(a.factors) + tuple(discrete(1) for _ in extension)
    tilde = build_amalgam(ext_sel, factors, max_points=max_points)

    vals = []
    for pt in a.carrier:
        q = dense_embed.values[pt.base_point]
        choices = list(pt.choices)
        for o in extension:
            choices.append(0 if (o >> q) & 1 else None)
        vals.append(tilde.point_index(AmalgamPoint(q, tuple(choices))))
    emb = ContinuousMap(a.space, tilde.space, tuple(vals))
    verify(is_embedding(emb), "amalgam must embed in its connectification")
    emb_image = emb.image_mask()
    verify(
        dense_in(tilde.space, emb_image),
        "embedded amalgam must be dense in its connectification",
    )
    verify(
        emb_image != tilde.space.full_mask,
        "connectification must add at least one point",
    )
    verify(
        is_connected(tilde.space, opens_limit),
        "connectification must be connected",
    )
    return Connectification(
        ambient, dense_embed, outside_point, ext_sel, tuple(phi), tilde, emb
    )


def connectify_demo() -> tuple[AmalgamSpace, Connectification]:
    """Small worked connectification: the base is the two-point discrete
    space sitting as the open points of a three-point cone.  With
    two-point discrete factors on both singleton members the amalgam is
    four discrete points; growing the selection to the cone produces a
    connected five-point extension holding it densely and properly."""
    ambient = TopSpace(3, (0b111, 0b010, 0b100), ("v", "l", "r"))
    base = subspace(ambient, 0b110)
    sel = SubbaseSel(base, (0b01, 0b10))
    a = build_amalgam(sel, (discrete(2), discrete(2)))
    inclusion = ContinuousMap(base, ambient, (1, 2))
    return a, connectify(a, ambient, inclusion, 0)


# -- homogeneity transfer ------------------------------------------------


@dataclass(frozen=True)
class HomogeneityWitness:
    """One certified automorphism moving carrier point ``source`` to
    carrier point ``target``."""

    source: int
    target: int
    map: ContinuousMap


@dataclass(frozen=True)
class HomogeneityTransfer:
    """Outcome of the transfer argument.  ``applicable`` is False when
    the selection-preserving base automorphisms fail to act transitively
    (then nothing is claimed); otherwise ``witnesses`` carries verified
    automorphisms and homogeneity of the amalgam has been asserted by
    independent search."""

    applicable: bool
    stabilizer: tuple[tuple[int, ...], ...]
    witnesses: tuple[HomogeneityWitness, ...]


def _selection_permutation(
    sel: SubbaseSel, g: ContinuousMap
) -> tuple[int, ...] | None:
    """Where g sends each member, as an index permutation; None if the
    image family is not the selection itself."""
    out = []
    lookup = {s: i for i, s in enumerate(sel.sets)}
    for s in sel.sets:
        img = g.image_mask(s)
        if img not in lookup:
            return None
        out.append(lookup[img])
    if len(set(out)) != len(out):
        return None
    return tuple(out)


def homogeneity_transfer(
    a: AmalgamSpace,
    z: TopSpace,
    all_pairs: bool = False,
    max_points: int = 10,
) -> HomogeneityTransfer:
    """Certify homogeneity of an amalgam whose factors all equal one
    homogeneous space ``z``, provided the base automorphisms that
    permute the selection act transitively on base points.

    Each witness automorphism is built as in the transfer argument: a
    base automorphism g relabels members (choices move to the image
    member), then one factor automorphism per member adjusts the
    choices; the composite is verified to be an automorphism taking the
    source point to the target.  By default witnesses move the first
    carrier point onto every carrier point, which exhibits transitivity;
    ``all_pairs`` builds one per ordered pair instead.  Applicability
    also asserts ``is_homogeneous`` by direct search, independently of
    the construction.
    """
    for i, f in enumerate(a.factors):
        if not same_topology(f, z):
            raise FactorsNotUniform(f"factor {i} differs from the common factor")
    if not is_homogeneous(z, max_points=max_points):
        raise FactorNotHomogeneous("common factor is not homogeneous")

    stab: list[tuple[ContinuousMap, tuple[int, ...]]] = []
    for g in automorphism_group(a.base, max_points=max_points):
        perm = _selection_permutation(a.sel, g)
        if perm is not None:
            stab.append((g, perm))
    orbit = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g, _ in stab:
            y = g.values[x]
            if y not in orbit:
                orbit.add(y)
                frontier.append(y)
    if len(orbit) != a.base.n:
        return HomogeneityTransfer(
            False, tuple(g.values for g, _ in stab), ()
        )

    def automorphism_moving(y0: int, y1: int) -> HomogeneityWitness:
        src, dst = a.carrier[y0], a.carrier[y1]
        g, perm = next(
            (g, perm) for g, perm in stab if g.values[src.base_point] == dst.base_point
        )
        vals = []
        for pt in a.carrier:
            moved: list[int | None] = [None] * len(perm)
            for i, c in enumerate(pt.choices):
                moved[perm[i]] = c
            vals.append(
                a.point_index(AmalgamPoint(g.values[pt.base_point], tuple(moved)))
            )
        relabel = ContinuousMap(a.space, a.space, tuple(vals))
        verify(
            is_homeomorphism(relabel),
            "base automorphism must induce an amalgam automorphism",
        )
        mid = a.carrier[relabel.values[y0]]
        factor_maps = []
        for j in range(len(a.sel.sets)):
            v, w = mid.choices[j], dst.choices[j]
            if v is None or v == w:
                factor_maps.append(identity_map(a.factors[j]))
                continue
            h = find_homeomorphism(
                a.factors[j], a.factors[j], pin=((v, w),), max_points=max_points
            )
            verify(
                h is not None,
                "homogeneous factor must have a point-moving automorphism",
            )
            factor_maps.append(h)
        adjust, _ = amalgam_of_maps(a, factor_maps)
        aut = compose(adjust, relabel)
        verify(
            is_homeomorphism(aut) and aut.values[y0] == y1,
            "composite must be an automorphism moving source to target",
        )
        return HomogeneityWitness(y0, y1, aut)

    n = len(a.carrier)
    if all_pairs:
        pairs = [(i, j) for i in range(n) for j in range(n)]
    else:
        pairs = [(0, j) for j in range(n)]
    witnesses = tuple(automorphism_moving(i, j) for i, j in pairs)
    verify(
        is_homogeneous(a.space, max_points=max(max_points, n)),
        "amalgam must be homogeneous by direct search",
    )
    return HomogeneityTransfer(
        True, tuple(g.values for g, _ in stab), witnesses
    )


# -- dimension comparison ------------------------------------------------


def ind_comparison(
    a: AmalgamSpace, max_points: int = DEFAULT_IND_BOUND
) -> tuple[int, int, bool]:
    """Small inductive dimension of the base and of the amalgam, plus
    whether every factor is zero-dimensional.  Reports the numbers side
    by side; equality is the expected pattern when the factors are
    zero-dimensional, but no claim is asserted here."""
    zero = all(is_zero_dimensional(f) for f in a.factors)
    return (
        ind(a.base, max_points=max_points),
        ind(a.space, max_points=max_points),
        zero,
    )


__all__ = [
    "sierpinski",
    "discrete",
    "indiscrete",
    "finite_circle",
    "semicircle_subbase",
    "semicircle_amalgam",
    "pseudo_cone",
    "witness_condition_holds",
    "connectedness_with_witness",
    "ConnWitness",
    "connectedness_chain",
    "second_connectedness_applies",
    "connectedness_without_full_member",
    "Connectification",
    "connectify",
    "connectify_demo",
    "HomogeneityWitness",
    "HomogeneityTransfer",
    "homogeneity_transfer",
    "ind_comparison",
]
