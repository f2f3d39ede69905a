"""Maps between finite spaces and their verified properties.

For finite (hence Alexandrov) spaces the classical definitions reduce to
conditions on minimal neighborhoods:

* continuous  iff  f(min_nbr(x)) is contained in min_nbr(f(x)) for all x
* open        iff  f(min_nbr(x)) is open in the codomain for all x
  (images of unions are unions of images, so basic sets decide it)
* quotient    iff  surjective and the codomain topology equals the final
  topology, which for finite spaces means the codomain's minimal
  neighborhoods coincide with the transitive closure of the pushed
  forward neighborhood relation.

These are exact equivalences, and the test suite re-derives each from
the quantifier-level definitions on small spaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .bitsets import bits
from .errors import BoundExceeded, ValidationError, VerificationError
from .spaces import TopSpace, subspace

DEFAULT_SEARCH_BOUND = 10


@dataclass(frozen=True)
class ContinuousMap:
    """A total point map between spaces.  Totality is validated here;
    continuity and friends are checked by the predicates below, and the
    constructors in other modules verify whatever they promise."""

    dom: TopSpace
    cod: TopSpace
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.dom.n:
            raise ValidationError("map must assign a value to every domain point")
        for v in self.values:
            if not 0 <= v < self.cod.n:
                raise ValidationError(f"value {v} outside codomain")

    def __call__(self, x: int) -> int:
        return self.values[x]

    def image_mask(self, points: int | None = None) -> int:
        mask = self.dom.full_mask if points is None else points
        out = 0
        for x in bits(mask):
            out |= 1 << self.values[x]
        return out

    def preimage_mask(self, points: int) -> int:
        out = 0
        for x in range(self.dom.n):
            if (points >> self.values[x]) & 1:
                out |= 1 << x
        return out


def identity_map(space: TopSpace) -> ContinuousMap:
    return ContinuousMap(space, space, tuple(range(space.n)))


def compose(outer: ContinuousMap, inner: ContinuousMap) -> ContinuousMap:
    if inner.cod.n != outer.dom.n or inner.cod.min_nbrs != outer.dom.min_nbrs:
        raise ValidationError("composition requires matching middle space")
    return ContinuousMap(
        inner.dom, outer.cod, tuple(outer.values[v] for v in inner.values)
    )


def is_injective(m: ContinuousMap) -> bool:
    return len(set(m.values)) == m.dom.n


def is_surjective(m: ContinuousMap) -> bool:
    return m.image_mask() == m.cod.full_mask


def is_bijective(m: ContinuousMap) -> bool:
    return is_injective(m) and is_surjective(m)


def is_continuous(m: ContinuousMap) -> bool:
    for x in range(m.dom.n):
        if m.image_mask(m.dom.min_nbrs[x]) & ~m.cod.min_nbrs[m.values[x]]:
            return False
    return True


def is_open_map(m: ContinuousMap) -> bool:
    return all(m.cod.is_open(m.image_mask(m.dom.min_nbrs[x])) for x in range(m.dom.n))


def is_homeomorphism(m: ContinuousMap) -> bool:
    if not is_bijective(m):
        return False
    for x in range(m.dom.n):
        if m.image_mask(m.dom.min_nbrs[x]) != m.cod.min_nbrs[m.values[x]]:
            return False
    return True


def inverse(m: ContinuousMap) -> ContinuousMap:
    if not is_bijective(m):
        raise ValidationError("only bijections invert")
    vals = [0] * m.cod.n
    for x, v in enumerate(m.values):
        vals[v] = x
    return ContinuousMap(m.cod, m.dom, tuple(vals))


def is_embedding(m: ContinuousMap) -> bool:
    """Injective and a homeomorphism onto the image subspace."""
    if not is_injective(m):
        return False
    image = m.image_mask()
    img_points = list(bits(image))
    pos = {p: i for i, p in enumerate(img_points)}
    img_space = subspace(m.cod, image)
    for x in range(m.dom.n):
        translated = 0
        for y in bits(m.dom.min_nbrs[x]):
            translated |= 1 << pos[m.values[y]]
        if translated != img_space.min_nbrs[pos[m.values[x]]]:
            return False
    return True


def _transitive_closure(rows: list[int], n: int) -> list[int]:
    changed = True
    while changed:
        changed = False
        for i in range(n):
            acc = rows[i]
            for j in bits(acc):
                acc |= rows[j]
            if acc != rows[i]:
                rows[i] = acc
                changed = True
    return rows


def final_min_nbrs(m: ContinuousMap) -> tuple[int, ...]:
    """Minimal neighborhoods of the final topology induced on the
    codomain carrier by the domain topology through the map."""
    n = m.cod.n
    rows = [1 << c for c in range(n)]
    for d in range(m.dom.n):
        rows[m.values[d]] |= m.image_mask(m.dom.min_nbrs[d])
    return tuple(_transitive_closure(rows, n))


def is_quotient_map(m: ContinuousMap) -> bool:
    """Surjective, and a codomain set is open exactly when its preimage
    is.  Decided by comparing the codomain's minimal neighborhoods with
    those of the final topology (two finite topologies agree iff their
    minimal neighborhood systems do); a subset-enumeration oracle backs
    this up in tests."""
    if not is_surjective(m):
        return False
    return final_min_nbrs(m) == m.cod.min_nbrs


# -- verification wrappers ----------------------------------------------


def verify(condition: bool, message: str) -> None:
    if not condition:
        raise VerificationError(message)


def verified_continuous(m: ContinuousMap, what: str) -> ContinuousMap:
    verify(is_continuous(m), f"{what}: expected a continuous map")
    return m


# -- homeomorphism search ------------------------------------------------


def _refine_colors(space: TopSpace) -> tuple[int, ...]:
    """Iterated degree refinement on the specialization digraph; a cheap
    invariant that prunes the backtracking search."""
    n = space.n
    up = space.min_nbrs
    down = [0] * n
    for x in range(n):
        for y in bits(up[x]):
            down[y] |= 1 << x
    colors = [0] * n
    key = {(up[x].bit_count(), down[x].bit_count()) for x in range(n)}
    palette = {k: i for i, k in enumerate(sorted(key))}
    for x in range(n):
        colors[x] = palette[(up[x].bit_count(), down[x].bit_count())]
    for _ in range(n):
        sigs = []
        for x in range(n):
            sig = (
                colors[x],
                tuple(sorted(colors[y] for y in bits(up[x]))),
                tuple(sorted(colors[y] for y in bits(down[x]))),
            )
            sigs.append(sig)
        palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [palette[s] for s in sigs]
        if new == colors:
            break
        colors = new
    return tuple(colors)


def _search_isomorphisms(a: TopSpace, b: TopSpace, pin: Sequence[tuple[int, int]]):
    """Lazily yield preorder isomorphisms a -> b as value tuples, with
    the images of ``pin``'s left components fixed to its right ones.
    Callers take as many results as they need; taking one keeps the
    search cheap."""
    n = a.n
    if n != b.n:
        return
    if n == 0:
        yield ()
        return
    ca = _refine_colors(a)
    cb = _refine_colors(b)
    if sorted(ca) != sorted(cb):
        return
    by_color: dict[int, list[int]] = {}
    for y in range(n):
        by_color.setdefault(cb[y], []).append(y)
    assign = [-1] * n
    used = [False] * n

    def consistent(x: int, y: int) -> bool:
        for u in range(n):
            v = assign[u]
            if v == -1 or u == x:
                continue
            if ((a.min_nbrs[x] >> u) & 1) != ((b.min_nbrs[y] >> v) & 1):
                return False
            if ((a.min_nbrs[u] >> x) & 1) != ((b.min_nbrs[v] >> y) & 1):
                return False
        return True

    for x, y in pin:
        if not (0 <= x < n and 0 <= y < n):
            raise ValidationError("pinned points outside space")
        if assign[x] not in (-1, y) or ca[x] != cb[y] or (used[y] and assign[x] != y):
            return
        if not consistent(x, y):
            return
        assign[x] = y
        used[y] = True

    order = [x for x in range(n) if assign[x] != -1] + sorted(
        (x for x in range(n) if assign[x] == -1),
        key=lambda x: (len(by_color.get(ca[x], ())), x),
    )

    def rec(idx: int):
        if idx == n:
            yield tuple(assign)
            return
        x = order[idx]
        if assign[x] != -1:
            yield from rec(idx + 1)
            return
        for y in by_color.get(ca[x], ()):
            if used[y] or not consistent(x, y):
                continue
            assign[x] = y
            used[y] = True
            yield from rec(idx + 1)
            assign[x] = -1
            used[y] = False

    yield from rec(0)


def _check_bound(a: TopSpace, b: TopSpace, max_points: int) -> None:
    if a.n > max_points or b.n > max_points:
        raise BoundExceeded(
            f"homeomorphism search limited to {max_points} points "
            f"(got {a.n} and {b.n}); pass max_points to raise the bound"
        )


def find_homeomorphism(
    a: TopSpace,
    b: TopSpace,
    pin: Sequence[tuple[int, int]] = (),
    max_points: int = DEFAULT_SEARCH_BOUND,
) -> ContinuousMap | None:
    """First homeomorphism a -> b honoring the pinned pairs, or None."""
    _check_bound(a, b, max_points)
    for vals in _search_isomorphisms(a, b, pin):
        return ContinuousMap(a, b, vals)
    return None


def homeomorphisms_between(
    a: TopSpace, b: TopSpace, max_points: int = DEFAULT_SEARCH_BOUND
) -> list[ContinuousMap]:
    _check_bound(a, b, max_points)
    return [ContinuousMap(a, b, vals) for vals in _search_isomorphisms(a, b, ())]


def are_homeomorphic(
    a: TopSpace, b: TopSpace, max_points: int = DEFAULT_SEARCH_BOUND
) -> bool:
    return find_homeomorphism(a, b, max_points=max_points) is not None


def automorphism_group(
    space: TopSpace, max_points: int = DEFAULT_SEARCH_BOUND
) -> list[ContinuousMap]:
    return homeomorphisms_between(space, space, max_points)


def is_homogeneous(space: TopSpace, max_points: int = DEFAULT_SEARCH_BOUND) -> bool:
    """The self-homeomorphism group acts transitively on points.

    It suffices that every point is reachable from point 0: given maps
    sending 0 to a and 0 to b, the composite of one with the other's
    inverse sends a to b.  The empty space counts as homogeneous
    (vacuously), the one-point space trivially so.
    """
    _check_bound(space, space, max_points)
    if space.n <= 1:
        return True
    for y in range(1, space.n):
        if find_homeomorphism(space, space, pin=[(0, y)], max_points=max_points) is None:
            return False
    return True


__all__ = [
    "DEFAULT_SEARCH_BOUND",
    "ContinuousMap",
    "identity_map",
    "compose",
    "inverse",
    "is_injective",
    "is_surjective",
    "is_bijective",
    "is_continuous",
    "is_open_map",
    "is_homeomorphism",
    "is_embedding",
    "is_quotient_map",
    "final_min_nbrs",
    "verify",
    "verified_continuous",
    "find_homeomorphism",
    "homeomorphisms_between",
    "are_homeomorphic",
    "automorphism_group",
    "is_homogeneous",
]
