"""JSON documents describing spaces and amalgam instances.

The document names every base point, gives topology generators as lists
of point names, lists the subbase members the same way, and assigns
factors by decimal member index; a member with no assignment gets a
singleton factor.  Shared factor spaces live in a "spaces" table and are
referenced by name.  Connectification inputs ride along as optional
"ambient", "embedding", and "outside_point" fields.

Example::

    {
      "points": ["a", "b", "c", "d"],
      "opens_generators": [["a"], ["b"], ["a","b","c"], ["a","b","d"]],
      "subbase": [["a"], ["b"], ["a","b","c"], ["a","b","d"]],
      "factors": {"0": "d2", "1": "d2", "2": "d2", "3": "d2"},
      "spaces": {"d2": {"points": ["x0","x1"],
                        "opens_generators": [["x0"], ["x1"]]}}
    }

Parsing normalizes to a canonical in-memory form, so parse, serialize,
and parse again always yields an equal document.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .amalgam import AmalgamSpace, SubbaseSel
from .bitsets import bits
from .errors import ValidationError
from .maps import ContinuousMap
from .spaces import TopSpace, generate_topology


@dataclass(frozen=True)
class SpaceDoc:
    points: tuple[str, ...]
    opens_generators: tuple[tuple[str, ...], ...]


@dataclass(frozen=True)
class SpecDocument:
    points: tuple[str, ...]
    opens_generators: tuple[tuple[str, ...], ...]
    subbase: tuple[tuple[str, ...], ...]
    factors: tuple[SpaceDoc | None, ...]  # aligned with subbase; None = singleton
    ambient: SpaceDoc | None = None
    embedding: tuple[tuple[str, str], ...] | None = None
    outside_point: str | None = None


@dataclass(frozen=True)
class BuiltInstance:
    sel: SubbaseSel
    factors: tuple[TopSpace, ...]
    ambient: TopSpace | None = None
    embedding: ContinuousMap | None = None
    outside_point: int | None = None


# -- documents from live objects ----------------------------------------


def _canonical_generators(space: TopSpace) -> tuple[int, ...]:
    return tuple(sorted(set(space.min_nbrs), key=lambda m: (m.bit_count(), m)))


def _names(space: TopSpace, mask: int) -> tuple[str, ...]:
    return tuple(space.label(x) for x in bits(mask))


def doc_from_space(space: TopSpace) -> SpaceDoc:
    names = tuple(space.label(x) for x in range(space.n))
    if len(set(names)) != len(names):
        raise ValidationError("space labels must be unique to serialize")
    return SpaceDoc(
        names, tuple(_names(space, g) for g in _canonical_generators(space))
    )


def instance_to_doc(
    sel: SubbaseSel,
    factors: Sequence[TopSpace],
    ambient: TopSpace | None = None,
    embedding: ContinuousMap | None = None,
    outside_point: int | None = None,
) -> SpecDocument:
    base_doc = doc_from_space(sel.base)
    fdocs: list[SpaceDoc | None] = []
    for f in factors:
        fdocs.append(None if f.n == 1 else doc_from_space(f))
    emb = None
    if embedding is not None:
        if ambient is None:
            raise ValidationError("embedding requires an ambient space")
        emb = tuple(
            (sel.base.label(x), ambient.label(embedding.values[x]))
            for x in range(sel.base.n)
        )
    return SpecDocument(
        base_doc.points,
        base_doc.opens_generators,
        tuple(_names(sel.base, s) for s in sel.sets),
        tuple(fdocs),
        None if ambient is None else doc_from_space(ambient),
        emb,
        None if outside_point is None else ambient.label(outside_point),
    )


def amalgam_to_doc(a: AmalgamSpace) -> SpecDocument:
    return instance_to_doc(a.sel, a.factors)


# -- documents to live objects ------------------------------------------


def space_from_doc(doc: SpaceDoc) -> TopSpace:
    n = len(doc.points)
    if n == 0:
        raise ValidationError("space document needs at least one point")
    if len(set(doc.points)) != n:
        raise ValidationError("point names must be unique")
    pos = {name: i for i, name in enumerate(doc.points)}
    gens = []
    for g in doc.opens_generators:
        m = 0
        for name in g:
            if name not in pos:
                raise ValidationError(f"unknown point name {name!r}")
            m |= 1 << pos[name]
        gens.append(m)
    return generate_topology(n, gens, labels=doc.points)


def build_instance(doc: SpecDocument) -> BuiltInstance:
    base = space_from_doc(SpaceDoc(doc.points, doc.opens_generators))
    pos = {name: i for i, name in enumerate(doc.points)}
    if len(doc.factors) != len(doc.subbase):
        raise ValidationError("one factor slot per subbase member required")
    sets = []
    for member in doc.subbase:
        m = 0
        for name in member:
            if name not in pos:
                raise ValidationError(f"unknown point name {name!r} in subbase")
            m |= 1 << pos[name]
        sets.append(m)
    sel = SubbaseSel(base, tuple(sets))
    factors = tuple(
        TopSpace(1, (1,)) if fd is None else space_from_doc(fd)
        for fd in doc.factors
    )
    ambient = embedding = None
    outside = None
    if doc.ambient is not None:
        ambient = space_from_doc(doc.ambient)
        apos = {name: i for i, name in enumerate(doc.ambient.points)}
        if doc.embedding is not None:
            vals = [None] * base.n
            for src, dst in doc.embedding:
                if src not in pos or dst not in apos:
                    raise ValidationError("embedding mentions unknown points")
                vals[pos[src]] = apos[dst]
            if any(v is None for v in vals):
                raise ValidationError("embedding must cover every base point")
            embedding = ContinuousMap(base, ambient, tuple(vals))
        if doc.outside_point is not None:
            if doc.outside_point not in apos:
                raise ValidationError("outside point is not an ambient point")
            outside = apos[doc.outside_point]
    elif doc.embedding is not None or doc.outside_point is not None:
        raise ValidationError("embedding and outside point require an ambient space")
    return BuiltInstance(sel, factors, ambient, embedding, outside)


# -- JSON surface --------------------------------------------------------


def _space_payload(doc: SpaceDoc) -> dict:
    return {
        "points": list(doc.points),
        "opens_generators": [list(g) for g in doc.opens_generators],
    }


def to_payload(doc: SpecDocument) -> dict:
    """Plain-dict form of the document, shared factor spaces deduped
    into a "spaces" table named s0, s1, ... in first-use order."""
    table: dict[SpaceDoc, str] = {}
    factors = {}
    for i, fd in enumerate(doc.factors):
        if fd is None:
            continue
        if fd not in table:
            table[fd] = f"s{len(table)}"
        factors[str(i)] = table[fd]
    payload: dict = {
        "points": list(doc.points),
        "opens_generators": [list(g) for g in doc.opens_generators],
        "subbase": [list(m) for m in doc.subbase],
    }
    if factors:
        payload["factors"] = factors
    if table:
        payload["spaces"] = {
            name: _space_payload(sd) for sd, name in table.items()
        }
    if doc.ambient is not None:
        payload["ambient"] = _space_payload(doc.ambient)
    if doc.embedding is not None:
        payload["embedding"] = {src: dst for src, dst in doc.embedding}
    if doc.outside_point is not None:
        payload["outside_point"] = doc.outside_point
    return payload


def serialize(doc: SpecDocument, compact: bool = False) -> str:
    payload = to_payload(doc)
    if compact:
        return json.dumps(payload, separators=(",", ":"))
    return json.dumps(payload, indent=2) + "\n"


def _parse_names(item, what: str) -> tuple[str, ...]:
    if not isinstance(item, list) or not all(isinstance(x, str) for x in item):
        raise ValidationError(f"{what} must be a list of names")
    return tuple(item)


def _parse_space(payload, what: str) -> SpaceDoc:
    if not isinstance(payload, dict):
        raise ValidationError(f"{what} must be an object")
    points = _parse_names(payload.get("points"), f"{what}.points")
    gens_raw = payload.get("opens_generators", [])
    if not isinstance(gens_raw, list):
        raise ValidationError(f"{what}.opens_generators must be a list")
    gens = tuple(
        _parse_names(g, f"{what}.opens_generators[{i}]")
        for i, g in enumerate(gens_raw)
    )
    return SpaceDoc(points, gens)


def from_payload(payload) -> SpecDocument:
    if not isinstance(payload, dict):
        raise ValidationError("document must be a JSON object")
    base = _parse_space(payload, "document")
    subbase_raw = payload.get("subbase")
    if not isinstance(subbase_raw, list):
        raise ValidationError("subbase must be a list of member name-lists")
    subbase = tuple(
        _parse_names(m, f"subbase[{i}]") for i, m in enumerate(subbase_raw)
    )
    spaces_raw = payload.get("spaces", {})
    if not isinstance(spaces_raw, dict):
        raise ValidationError("spaces must be an object")
    spaces = {
        name: _parse_space(sd, f"spaces[{name!r}]")
        for name, sd in spaces_raw.items()
    }
    factors_raw = payload.get("factors", {})
    if not isinstance(factors_raw, dict):
        raise ValidationError("factors must be an object keyed by member index")
    factors: list[SpaceDoc | None] = [None] * len(subbase)
    for key, ref in factors_raw.items():
        try:
            idx = int(key)
        except ValueError:
            raise ValidationError(f"factor key {key!r} is not a member index") from None
        if not 0 <= idx < len(subbase):
            raise ValidationError(f"factor key {key} outside the subbase")
        if isinstance(ref, str):
            if ref not in spaces:
                raise ValidationError(f"factor {key} references unknown space {ref!r}")
            factors[idx] = spaces[ref]
        else:
            factors[idx] = _parse_space(ref, f"factors[{key}]")
    ambient = None
    if "ambient" in payload:
        ambient = _parse_space(payload["ambient"], "ambient")
    embedding = None
    if "embedding" in payload:
        emb_raw = payload["embedding"]
        if not isinstance(emb_raw, dict) or not all(
            isinstance(k, str) and isinstance(v, str) for k, v in emb_raw.items()
        ):
            raise ValidationError("embedding must map base names to ambient names")
        order = {name: i for i, name in enumerate(base.points)}
        for k in emb_raw:
            if k not in order:
                raise ValidationError(f"embedding key {k!r} is not a base point")
        embedding = tuple(
            (name, emb_raw[name]) for name in base.points if name in emb_raw
        )
        if len(embedding) != len(emb_raw):
            raise ValidationError("embedding keys must be base points")
    outside = payload.get("outside_point")
    if outside is not None and not isinstance(outside, str):
        raise ValidationError("outside_point must be a point name")
    return SpecDocument(
        base.points,
        base.opens_generators,
        subbase,
        tuple(factors),
        ambient,
        embedding,
        outside,
    )


def parse(text: str) -> SpecDocument:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"not valid JSON: {exc}") from None
    return from_payload(payload)


def instance_json(sel: SubbaseSel, factors: Sequence[TopSpace], **extras) -> str:
    """One-line replayable serialization, used in failure records."""
    return serialize(instance_to_doc(sel, factors, **extras), compact=True)


__all__ = [
    "SpaceDoc",
    "SpecDocument",
    "BuiltInstance",
    "doc_from_space",
    "instance_to_doc",
    "amalgam_to_doc",
    "space_from_doc",
    "build_instance",
    "to_payload",
    "from_payload",
    "serialize",
    "parse",
    "instance_json",
]
