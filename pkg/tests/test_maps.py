from itertools import product as iproduct

import pytest
from hypothesis import given

import oracles
from amalgamtop import (
    ContinuousMap,
    ValidationError,
    are_homeomorphic,
    automorphism_group,
    discrete,
    find_homeomorphism,
    indiscrete,
    is_continuous,
    is_embedding,
    is_homeomorphism,
    is_homogeneous,
    is_open_map,
    is_quotient_map,
    subspace,
)
from amalgamtop.maps import (
    BoundExceeded,
    compose,
    final_min_nbrs,
    homeomorphisms_between,
    identity_map,
    inverse,
    is_bijective,
    is_injective,
    is_surjective,
)
from strategies import space_maps, spaces


def test_totality_validation(s2, d2):
    with pytest.raises(ValidationError):
        ContinuousMap(d2, s2, (0,))
    with pytest.raises(ValidationError):
        ContinuousMap(d2, s2, (0, 2))


def test_identity_has_every_property(s2):
    m = identity_map(s2)
    assert is_continuous(m) and is_open_map(m) and is_embedding(m)
    assert is_quotient_map(m) and is_homeomorphism(m)


def test_constant_map_continuous_not_quotient(s2, d2):
    to_open = ContinuousMap(d2, s2, (1, 1))
    assert is_continuous(to_open)
    assert not is_quotient_map(to_open)
    to_closed = ContinuousMap(d2, s2, (0, 0))
    assert is_continuous(to_closed)
    assert not is_open_map(to_closed)


def test_bijective_continuous_but_not_embedding(s2, d2):
    m = ContinuousMap(d2, s2, (0, 1))
    assert is_continuous(m) and is_injective(m)
    assert not is_embedding(m)
    assert not is_homeomorphism(m)


def test_subspace_inclusion_is_embedding(circle):
    incl = ContinuousMap(subspace(circle, 0b0110), circle, (1, 2))
    assert is_embedding(incl)
    assert not is_surjective(incl)


@given(space_maps())
def test_predicates_match_subset_scan_oracles(dc):
    dom, cod, values = dc
    m = ContinuousMap(dom, cod, values)
    do = oracles.brute_opens(dom)
    co = oracles.brute_opens(cod)
    assert is_continuous(m) == oracles.map_continuous(do, co, values, dom.n)
    assert is_open_map(m) == oracles.map_open(do, co, values)
    assert is_quotient_map(m) == oracles.map_quotient(do, co, values, dom.n, cod.n)


@given(space_maps())
def test_quotient_final_topology_is_a_topology(dc):
    dom, cod, values = dc
    m = ContinuousMap(dom, cod, values)
    rows = final_min_nbrs(m)
    # a valid minimal-neighborhood table: reflexive and transitive
    for x in range(cod.n):
        assert (rows[x] >> x) & 1
        for y in oracles.bit_list(rows[x]):
            assert rows[y] & ~rows[x] == 0


def test_composition_of_continuous_is_continuous(zoo):
    small = [s for s in zoo if s.n <= 3]
    for a, b, c in iproduct(small, small, small):
        fs = [
            ContinuousMap(a, b, v)
            for v in iproduct(range(b.n), repeat=a.n)
            if is_continuous(ContinuousMap(a, b, v))
        ]
        gs = [
            ContinuousMap(b, c, v)
            for v in iproduct(range(c.n), repeat=b.n)
            if is_continuous(ContinuousMap(b, c, v))
        ]
        for f in fs[:6]:
            for g in gs[:6]:
                assert is_continuous(compose(g, f))


def test_compose_requires_matching_middle(s2, d2):
    with pytest.raises(ValidationError):
        compose(identity_map(s2), identity_map(d2))


# -- homeomorphism search ------------------------------------------------


def test_automorphism_counts(s2, d2, circle):
    assert len(automorphism_group(s2)) == 1
    assert len(automorphism_group(d2)) == 2
    assert len(automorphism_group(circle)) == 4


def test_automorphisms_form_a_group(circle):
    group = {g.values for g in automorphism_group(circle)}
    for g in automorphism_group(circle):
        assert inverse(g).values in group
        for h in automorphism_group(circle):
            assert compose(g, h).values in group


@given(spaces(max_n=4))
def test_homeomorphism_search_matches_permutation_scan(space):
    autos = automorphism_group(space)
    assert {g.values for g in autos} == set(oracles.all_homeomorphisms(space, space))
    for g in autos:
        assert is_homeomorphism(g)


@given(spaces(max_n=4), spaces(max_n=4))
def test_are_homeomorphic_matches_oracle(a, b):
    expect = bool(oracles.all_homeomorphisms(a, b))
    assert are_homeomorphic(a, b) == expect
    found = find_homeomorphism(a, b)
    assert (found is not None) == expect
    if found is not None:
        assert is_homeomorphism(found)


def test_homeomorphisms_between_counts(d2, d3):
    assert len(homeomorphisms_between(d3, d3)) == 6
    assert homeomorphisms_between(d2, d3) == []


def test_find_homeomorphism_respects_pin(s2, d2, d3):
    pinned = find_homeomorphism(d3, d3, pin=[(0, 2)])
    assert pinned is not None and pinned.values[0] == 2
    assert find_homeomorphism(d2, s2) is None


def test_search_bound():
    with pytest.raises(BoundExceeded):
        automorphism_group(discrete(11))


def test_homogeneous_fixtures(s2, d2, circle):
    assert is_homogeneous(d2)
    assert not is_homogeneous(s2)
    assert not is_homogeneous(circle)
    assert is_homogeneous(indiscrete(3))
    assert is_homogeneous(discrete(1))


@given(spaces(max_n=4))
def test_homogeneous_iff_single_orbit_of_brute_perms(space):
    perms = oracles.all_homeomorphisms(space, space)
    orbit = {p[0] for p in perms}
    assert is_homogeneous(space) == (orbit == set(range(space.n)))


def test_inverse_of_homeomorphism(circle):
    for g in automorphism_group(circle):
        assert is_homeomorphism(inverse(g))
        assert compose(g, inverse(g)).values == identity_map(circle).values
        assert is_bijective(g)
