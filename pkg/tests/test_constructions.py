import pytest

from amalgamtop import (
    ContinuousMap,
    SubbaseSel,
    TopSpace,
    ValidationError,
    are_homeomorphic,
    build_amalgam,
    connectedness_chain,
    connectedness_with_witness,
    connectedness_without_full_member,
    connectify,
    connectify_demo,
    discrete,
    finite_circle,
    homogeneity_transfer,
    ind,
    ind_comparison,
    indiscrete,
    pseudo_cone,
    second_connectedness_applies,
    semicircle_amalgam,
    semicircle_subbase,
    sierpinski,
    subspace,
    witness_condition_holds,
)
from amalgamtop.errors import (
    FactorNotHomogeneous,
    FactorsNotUniform,
    NoCompatibleAmbientOpen,
    NotDense,
    NotEmbedding,
    PreconditionFailed,
)
from amalgamtop.spaces import dense_in, is_connected, is_discrete, is_subset


# -- fixtures of the construction zoo ------------------------------------


def test_finite_circle_shape(circle):
    assert circle.n == 4
    assert len(circle.open_sets()) == 7
    assert is_connected(circle)


def test_semicircle_subbase_misses_antipodes(circle):
    sel, e = semicircle_subbase()
    assert sel.sets == (0b0001, 0b0010, 0b0111, 0b1011)
    assert e == 0b1100
    assert all(not is_subset(e, s) for s in sel.sets)


def test_pseudo_cone_shapes(s2):
    cone = pseudo_cone(discrete(2))
    assert cone.space.n == 3 and is_connected(cone.space)
    assert are_homeomorphic(pseudo_cone(discrete(1)).space, s2)
    wide = pseudo_cone(discrete(3))
    assert wide.space.n == 4 and is_connected(wide.space)
    assert ind(wide.space) == 1


# -- connectedness via a finite witness ----------------------------------


def test_witness_on_circle_amalgam():
    a, e = semicircle_amalgam()
    assert witness_condition_holds(a, e)
    assert connectedness_with_witness(a, e)
    assert is_connected(a.space)


def test_no_witness_on_split_amalgam():
    # the full base is a member with a disconnected factor, so the
    # hypothesis fails for every candidate set and the amalgam splits
    sel = SubbaseSel(sierpinski(), (0b10, 0b11))
    a = build_amalgam(sel, (discrete(2), discrete(2)))
    for mask in range(4):
        assert not witness_condition_holds(a, mask)
        assert not connectedness_with_witness(a, mask)
    assert not is_connected(a.space)


def test_witness_rejects_disconnected_base():
    sel = SubbaseSel(discrete(2), (0b01, 0b10))
    a = build_amalgam(sel, (discrete(1), discrete(1)))
    assert not witness_condition_holds(a, 0b01)


def test_chain_on_circle_amalgam():
    a, e = semicircle_amalgam()
    y1 = a.space.point_named("b|-000")
    w = connectedness_chain(a, e, 0, y1)
    assert w.anchors == (2, 3, 1)
    assert [a.space.label(a.point_index(z)) for z in w.chain] == [
        "a|0-00",
        "c|--0-",
        "d|---0",
        "b|-000",
    ]
    assert w.selectors == ((0, 0, 0, 0),) * 3
    assert len(w.copies) == 3
    assert w.chain[0] == w.y0 and w.chain[-1] == w.y1


def test_chain_on_cone():
    cone = pseudo_cone(discrete(2))
    w = connectedness_chain(cone, (0,), 0, 1)
    labels = [cone.space.label(cone.point_index(z)) for z in w.chain]
    assert labels == ["s0|-0", "s0|-0", "s1|00"]


def test_chain_degenerate_pair():
    a, e = semicircle_amalgam()
    w = connectedness_chain(a, e, 5, 5)
    assert w.y0 == w.y1
    assert w.chain[0] == w.y0


def test_chain_preconditions():
    sel = SubbaseSel(sierpinski(), (0b10, 0b11))
    a = build_amalgam(sel, (discrete(2), discrete(2)))
    with pytest.raises(PreconditionFailed):
        connectedness_chain(a, 0b01, 0, 1)
    circ, e = semicircle_amalgam()
    with pytest.raises(ValidationError):
        connectedness_chain(circ, e, 0, 99)


def test_second_criterion():
    a, _ = semicircle_amalgam()
    assert second_connectedness_applies(a)
    assert connectedness_without_full_member(a)
    cone = pseudo_cone(discrete(2))
    assert connectedness_without_full_member(cone)
    sel = SubbaseSel(sierpinski(), (0b10, 0b11))
    split = build_amalgam(sel, (discrete(2), discrete(2)))
    assert not second_connectedness_applies(split)
    assert not connectedness_without_full_member(split)


# -- connectification ----------------------------------------------------


def test_connectify_demo_frozen():
    a, c = connectify_demo()
    assert a.space.n == 4 and is_discrete(a.space)
    assert not is_connected(a.space)
    assert c.phi == (2, 4)
    assert c.extended_sel.sets == (2, 4)
    assert c.result.space.n == 5
    assert [c.result.space.label(i) for i in range(5)] == [
        "v|--",
        "l|0-",
        "l|1-",
        "r|-0",
        "r|-1",
    ]
    assert is_connected(c.result.space)
    assert c.embedding.values == (1, 2, 3, 4)
    assert dense_in(c.result.space, c.embedding.image_mask())
    assert c.embedding.image_mask() != c.result.space.full_mask


def _cone_ambient() -> TopSpace:
    return TopSpace(3, (0b111, 0b010, 0b100), ("v", "l", "r"))


def test_connectify_rejects_bad_embeddings():
    ambient = _cone_ambient()
    base = subspace(ambient, 0b110)
    sel = SubbaseSel(base, (0b01, 0b10))
    a = build_amalgam(sel, (discrete(2), discrete(2)))
    with pytest.raises(NotEmbedding):
        connectify(a, ambient, ContinuousMap(base, ambient, (1, 1)), 0)
    with pytest.raises(ValidationError):
        connectify(a, ambient, ContinuousMap(base, ambient, (1, 2)), 1)
    with pytest.raises(ValidationError):
        connectify(a, ambient, ContinuousMap(base, ambient, (1, 2)), 7)


def test_connectify_rejects_sparse_image():
    ambient = _cone_ambient()
    sel = SubbaseSel(discrete(1), (0b1,))
    a = build_amalgam(sel, (discrete(2),))
    with pytest.raises(NotDense):
        connectify(a, ambient, ContinuousMap(discrete(1), ambient, (1,)), 0)


def test_connectify_rejects_split_ambient():
    # two disjoint two-point cones; the open points form a dense
    # discrete pair but the ambient itself is disconnected
    ambient = TopSpace(4, (0b0011, 0b0010, 0b1100, 0b1000))
    base = discrete(2)
    sel = SubbaseSel(base, (0b01, 0b10))
    a = build_amalgam(sel, (discrete(1), discrete(1)))
    with pytest.raises(PreconditionFailed):
        connectify(a, ambient, ContinuousMap(base, ambient, (1, 3)), 0)


def test_connectify_reports_unmatchable_member():
    # chain of three points; the full base {bottom, top} only extends to
    # an ambient open through the middle, which is the outside point
    ambient = TopSpace(3, (0b001, 0b011, 0b111))
    base = subspace(ambient, 0b101)
    sel = SubbaseSel(base, (0b01, 0b11))
    a = build_amalgam(sel, (discrete(2), discrete(2)))
    with pytest.raises(NoCompatibleAmbientOpen) as exc:
        connectify(a, ambient, ContinuousMap(base, ambient, (0, 2)), 1)
    assert exc.value.member == 1


# -- homogeneity transfer ------------------------------------------------


def test_transfer_on_discrete_square():
    base = discrete(2)
    sel = SubbaseSel(base, (0b01, 0b10))
    a = build_amalgam(sel, (discrete(2), discrete(2)))
    t = homogeneity_transfer(a, discrete(2))
    assert t.applicable
    assert len(t.stabilizer) == 2
    assert len(t.witnesses) == a.space.n
    for w in t.witnesses:
        assert w.source == 0 and w.map.values[0] == w.target


def test_transfer_all_pairs():
    base = discrete(2)
    sel = SubbaseSel(base, (0b01, 0b10))
    a = build_amalgam(sel, (discrete(2), discrete(2)))
    t = homogeneity_transfer(a, discrete(2), all_pairs=True)
    assert len(t.witnesses) == a.space.n * a.space.n
    for w in t.witnesses:
        assert w.map.values[w.source] == w.target


def test_transfer_single_point_base():
    sel = SubbaseSel(discrete(1), (0b1,))
    a = build_amalgam(sel, (indiscrete(3),))
    t = homogeneity_transfer(a, indiscrete(3))
    assert t.applicable
    assert are_homeomorphic(a.space, indiscrete(3))


def test_transfer_not_applicable_on_rigid_base():
    sel = SubbaseSel(sierpinski(), (0b10, 0b11))
    a = build_amalgam(sel, (discrete(2), discrete(2)))
    t = homogeneity_transfer(a, discrete(2))
    assert not t.applicable
    assert t.witnesses == ()


def test_transfer_validation():
    cone = pseudo_cone(discrete(2))
    with pytest.raises(FactorsNotUniform):
        homogeneity_transfer(cone, discrete(2))
    sel = SubbaseSel(discrete(2), (0b01, 0b10))
    a = build_amalgam(sel, (sierpinski(), sierpinski()))
    with pytest.raises(FactorNotHomogeneous):
        homogeneity_transfer(a, sierpinski())


# -- dimension comparison ------------------------------------------------


def test_ind_comparison_cases():
    assert ind_comparison(pseudo_cone(discrete(2))) == (1, 1, True)
    sel = SubbaseSel(discrete(2), (0b01, 0b10))
    flat = build_amalgam(sel, (discrete(2), discrete(2)))
    assert ind_comparison(flat) == (0, 0, True)
    a, _ = semicircle_amalgam()
    assert ind_comparison(a, max_points=24) == (1, 1, True)
