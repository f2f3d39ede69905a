import json

import pytest

from amalgamtop import (
    ContinuousMap,
    SpecDocument,
    ValidationError,
    build_amalgam,
    build_instance,
    parse,
    serialize,
)
from amalgamtop.constructions import connectify, semicircle_amalgam
from amalgamtop.maps import is_homeomorphism
from amalgamtop.specdoc import (
    amalgam_to_doc,
    doc_from_space,
    instance_json,
    instance_to_doc,
    space_from_doc,
)
from amalgamtop.spaces import same_topology


def test_round_trip_is_identity():
    a, _ = semicircle_amalgam()
    doc = amalgam_to_doc(a)
    again = parse(serialize(doc))
    assert again == doc
    assert parse(serialize(again, compact=True)) == doc


def test_doc_rebuilds_the_same_instance():
    a, _ = semicircle_amalgam()
    built = build_instance(amalgam_to_doc(a))
    assert same_topology(built.sel.base, a.base)
    assert built.sel.sets == a.sel.sets
    assert len(built.factors) == 4
    assert all(same_topology(f, g) for f, g in zip(built.factors, a.factors))


def test_space_doc_round_trip(circle, cone_d2):
    for space in (circle, cone_d2.space):
        back = space_from_doc(doc_from_space(space))
        ident = ContinuousMap(back, space, tuple(range(space.n)))
        assert is_homeomorphism(ident)


def test_missing_factors_become_singletons():
    doc = parse(
        json.dumps(
            {
                "points": ["p", "q"],
                "opens_generators": [["p"], ["q"]],
                "subbase": [["p"], ["q"], ["p", "q"]],
            }
        )
    )
    built = build_instance(doc)
    assert tuple(f.n for f in built.factors) == (1, 1, 1)


def test_shared_factor_table_is_deduped():
    a, _ = semicircle_amalgam()
    payload = json.loads(serialize(amalgam_to_doc(a)))
    assert list(payload["spaces"]) == ["s0"]
    assert payload["factors"] == {"0": "s0", "1": "s0", "2": "s0", "3": "s0"}


def test_connectification_fields_round_trip():
    text = json.dumps(
        {
            "points": ["l", "r"],
            "opens_generators": [["l"], ["r"]],
            "subbase": [["l"], ["r"]],
            "factors": {"0": "d", "1": "d"},
            "spaces": {"d": {"points": ["0", "1"], "opens_generators": [["0"], ["1"]]}},
            "ambient": {
                "points": ["v", "l", "r"],
                "opens_generators": [["l"], ["r"]],
            },
            "embedding": {"l": "l", "r": "r"},
            "outside_point": "v",
        }
    )
    doc = parse(text)
    assert parse(serialize(doc)) == doc
    built = build_instance(doc)
    assert built.ambient is not None and built.ambient.n == 3
    assert built.embedding.values == (1, 2)
    assert built.outside_point == 0
    a = build_amalgam(built.sel, built.factors)
    conn = connectify(a, built.ambient, built.embedding, built.outside_point)
    assert conn.result.space.n == 5


def test_parse_rejects_malformed_documents():
    with pytest.raises(ValidationError):
        parse("{not json")
    with pytest.raises(ValidationError):
        parse("[1,2]")
    with pytest.raises(ValidationError):
        parse('{"points": ["a"], "opens_generators": []}')  # no subbase
    good = {
        "points": ["a", "b"],
        "opens_generators": [["a"], ["b"]],
        "subbase": [["a"], ["b"]],
    }
    for patch in (
        {"points": ["a", "a"]},
        {"subbase": [["a"], ["zz"]]},
        {"factors": {"9": "s0"}},
        {"factors": {"x": "s0"}},
        {"factors": {"0": "missing"}},
        {"embedding": {"a": "v"}},
    ):
        bad = dict(good, **patch)
        with pytest.raises(ValidationError):
            build_instance(parse(json.dumps(bad)))


def test_instance_json_is_one_line():
    a, _ = semicircle_amalgam()
    text = instance_json(a.sel, a.factors)
    assert "\n" not in text
    assert parse(text) == amalgam_to_doc(a)


def test_instance_to_doc_validation():
    a, _ = semicircle_amalgam()
    with pytest.raises(ValidationError):
        instance_to_doc(
            a.sel,
            a.factors,
            embedding=ContinuousMap(a.base, a.base, (0, 1, 2, 3)),
        )


def test_document_equality_is_structural():
    a, _ = semicircle_amalgam()
    doc = amalgam_to_doc(a)
    clone = SpecDocument(
        doc.points, doc.opens_generators, doc.subbase, doc.factors
    )
    assert clone == doc
