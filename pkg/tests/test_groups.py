import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from glab.ff import build_field
from glab.groups import (AbelianGroup, CapExceeded, GroupError, InsufficientRoots, additive_characters,
                         build_group, characters, decompose_by_p, multiplicative_characters,
                         quotient_group)


def coset_oracle(G, gens):
    """Cosets of <gens> by brute-force closure."""
    H = {G.identity}
    frontier = list(H)
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x * g
            if y not in H:
                H.add(y)
                frontier.append(y)
    cosets = {frozenset(x * h for h in H) for x in G}
    return H, cosets


# -- oracles --------------------------------------------------------------------------

@pytest.mark.parametrize("orders,gens", [
    ((2, 2), [(1, 1)]), ((9,), [(3,)]), ((4, 6), [(2, 3)]), ((6, 4), [(2, 0), (0, 2)]),
    ((8,), [(0,)]), ((3, 3, 3), [(1, 1, 0), (0, 1, 1)]), ((12,), [(4,), (6,)]),
])
def test_quotient_matches_coset_enumeration(orders, gens):
    G = AbelianGroup(orders)
    gs = [G(*g) for g in gens]
    H, cosets = coset_oracle(G, gs)
    Q = quotient_group(G, gs)
    assert Q.quotient.order * len(H) == G.order
    assert Q.quotient.order == len(cosets)
    for c in cosets:
        images = {Q.project(x) for x in c}
        assert len(images) == 1
    # projection is a homomorphism onto
    for x, y in itertools.product(G, repeat=2):
        assert Q.project(x * y) == Q.project(x) * Q.project(y)
    assert {Q.project(x) for x in G} == set(Q.quotient)
    for gbar in Q.quotient:
        assert set(Q.coset(gbar)) in cosets


def test_quotient_examples():
    G = AbelianGroup((9,))
    assert quotient_group(G, [G(3)]).quotient.order == 3
    K = AbelianGroup((2, 2))
    assert quotient_group(K, [K(1, 1)]).quotient.orders == (2,)
    Q = quotient_group(K, [K.identity])
    assert Q.quotient.order == 4


# -- groups ----------------------------------------------------------------------------

def test_build_group_examples():
    Z2 = build_group([2])
    assert [g.exps for g in Z2] == [(0,), (1,)]
    Z9 = build_group([9])
    assert (Z9(1) * Z9(8)).is_identity
    assert build_group([2, 3])(1, 1).order() == 6
    with pytest.raises(CapExceeded):
        build_group([64, 65])
    with pytest.raises(GroupError):
        build_group([1, 3])


def test_lexicographic_enumeration():
    G = AbelianGroup((2, 3))
    assert [g.exps for g in G] == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]
    assert all(G.index(g) == i for i, g in enumerate(G))


@pytest.mark.parametrize("orders", [(4,), (2, 6), (3, 3), (5, 2, 2)])
def test_tables_agree_with_elements(orders):
    G = AbelianGroup(orders)
    els = G.elements
    for i, j in itertools.product(range(G.order), repeat=2):
        assert els[G.mul_table[i, j]] == els[i] * els[j]
    for i in range(G.order):
        assert (els[G.inv_table[i]] * els[i]).is_identity


@pytest.mark.parametrize("orders,p,g0,g1", [
    ((6,), 3, (2,), (3,)), ((4, 3), 3, (4,), (3,)), ((9,), 5, (9,), ()), ((12, 18), 3, (4, 2), (3, 9)),
])
def test_decompose_by_p(orders, p, g0, g1):
    d = decompose_by_p(AbelianGroup(orders), p)
    assert d.g0.orders == g0 and d.g1.orders == g1
    assert d.verify()
    for g in d.group:
        assert d.combine(*d.split(g)) == g


# -- characters -------------------------------------------------------------------------

def test_multiplicative_character_examples():
    F5 = build_field(5)
    Z2 = AbelianGroup((2,))
    chis = multiplicative_characters(Z2, F5)
    assert [c.values for c in chis] == [(1, 1), (1, 4)]
    F25 = build_field(5, 2)
    Z3 = AbelianGroup((3,))
    vals = {v for c in multiplicative_characters(Z3, F25) for v in c.values}
    assert all(int(F25.pow(v, 3)) == 1 for v in vals) and len(vals) == 3
    triv = multiplicative_characters(AbelianGroup(()), F5)
    assert len(triv) == 1
    with pytest.raises(InsufficientRoots):
        multiplicative_characters(Z3, F5)


@pytest.mark.parametrize("orders,p,k", [((2, 2), 5, 1), ((3,), 5, 2), ((4, 2), 5, 1), ((6,), 7, 1), ((8,), 3, 2)])
def test_character_group_is_complete(orders, p, k):
    G = AbelianGroup(orders)
    F = build_field(p, k)
    chis = multiplicative_characters(G, F)
    assert len({c.values for c in chis}) == G.order
    assert all(c.is_homomorphism() for c in chis)
    # closed under pointwise product
    vals = {c.values for c in chis}
    for a, b in itertools.product(chis, repeat=2):
        assert tuple(int(x) for x in F.mul(np.array(a.values), np.array(b.values))) in vals


def test_additive_character_examples():
    G = AbelianGroup((3, 3))
    a = additive_characters(G, 3)
    assert len(a) == 2
    assert [[al(g) for g in G.gens()] for al in a] == [[1, 0], [0, 1]]
    assert additive_characters(AbelianGroup((5,)), 3) == []
    (al,) = additive_characters(AbelianGroup((9,)), 3)
    assert {g for g in AbelianGroup((9,)) if al(g) == 0} == {AbelianGroup((9,))(s) for s in (0, 3, 6)}


@pytest.mark.parametrize("orders,p", [((9,), 3), ((3, 6), 3), ((25, 5), 5), ((12,), 3)])
def test_additive_characters_are_homomorphisms(orders, p):
    G = AbelianGroup(orders)
    for al in additive_characters(G, p):
        assert al.is_homomorphism()
        assert all((p * al(g)) % p == 0 and al(g ** p) == 0 for g in G)


def test_pulled_back_characters_ignore_p_part():
    F = build_field(3, 2)
    G = AbelianGroup((12,))        # Z4 x Z3
    for chi in characters(G, F):
        assert chi.is_homomorphism()
        assert chi(G(4)) == 1      # G(4) generates the 3-part


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(2, 8), min_size=1, max_size=3), st.data())
def test_quotient_projection_is_homomorphism(orders, data):
    G = AbelianGroup(tuple(orders))
    gens = [G.elements[data.draw(st.integers(0, G.order - 1))] for _ in range(data.draw(st.integers(0, 2)))]
    Q = quotient_group(G, gens)
    assert Q.quotient.order * len(G.subgroup(gens)) == G.order
    x = G.elements[data.draw(st.integers(0, G.order - 1))]
    y = G.elements[data.draw(st.integers(0, G.order - 1))]
    assert Q.project(x * y) == Q.project(x) * Q.project(y)
    assert all(Q.project(h).is_identity for h in gens)
