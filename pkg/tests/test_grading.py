import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from glab.ff import build_field
from glab.grading import (CharacteristicDividesM, Grading, NotDirectSum, Subspace, clock_shift,
                          compatible, elementary_grading, factor_grading, pauli_grading,
                          subspace_from_spanners, support, tensor_gradings, verify_grading)
from glab.groups import AbelianGroup
from glab.matrices import flatten, unit, units
from glab.linalg import rank

F5 = build_field(5)


def E(n, i, j):
    """1-based matrix unit."""
    return unit(n, i - 1, j - 1)


def span(*ms, n=2, ctx=F5):
    return subspace_from_spanners(ctx, n, ms)


def brute_verify(gr, mode):
    """Oracle: test every product of spanning vectors against membership, one pair at a time."""
    ctx = gr.ctx
    for (g, U), (h, W) in itertools.product(gr.components.items(), repeat=2):
        for x, y in itertools.product(U.matrices(), W.matrices()):
            z = ctx.matmul(x, y)
            if mode == "lie":
                z = ctx.sub(z, ctx.matmul(y, x))
            if z.any() and z not in gr[g * h]:
                return False
    return True


# -- subspaces ------------------------------------------------------------------------

def test_subspace_examples():
    s = span(E(2, 1, 2), 2 * E(2, 1, 2))
    assert s.dim == 1 and np.array_equal(s.matrices()[0], E(2, 1, 2))
    assert span().dim == 0
    s = span(E(2, 1, 1) + E(2, 2, 2), (E(2, 1, 1) - E(2, 2, 2)) % 5)
    assert s == span(E(2, 1, 1), E(2, 2, 2))
    assert [m.tolist() for m in s.matrices()] == [E(2, 1, 1).tolist(), E(2, 2, 2).tolist()]


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_subspace_canonical_and_order_insensitive(data):
    n = 2
    vecs = data.draw(st.lists(st.lists(st.integers(0, 4), min_size=4, max_size=4), max_size=5))
    ms = [np.array(v).reshape(2, 2) for v in vecs]
    a = subspace_from_spanners(F5, n, ms)
    b = subspace_from_spanners(F5, n, list(reversed(ms)))
    assert a == b
    assert subspace_from_spanners(F5, n, a.matrices()) == a
    assert a.dim == (rank(F5, np.array(vecs)) if vecs else 0)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_intersection_and_sum_dimensions(data):
    draw = lambda: [np.array(data.draw(st.lists(st.integers(0, 4), min_size=4, max_size=4))).reshape(2, 2)
                    for _ in range(data.draw(st.integers(0, 3)))]
    U, W = span(*draw()), span(*draw())
    assert (U + W).dim + (U & W).dim == U.dim + W.dim
    assert (U & W) <= U and (U & W) <= W and U <= U + W


# -- verify_grading ---------------------------------------------------------------------

Z2 = AbelianGroup((2,))
h = Z2.gen(0)


def test_elementary_examples():
    R = elementary_grading(Z2, 2, [Z2.identity, h], F5)
    assert R[Z2.identity] == span(E(2, 1, 1), E(2, 2, 2))
    assert R[h] == span(E(2, 1, 2), E(2, 2, 1))
    assert verify_grading(R, "associative").ok and verify_grading(R, "lie").ok
    triv = elementary_grading(Z2, 3, [Z2.identity] * 3, F5)
    assert set(triv.components) == {Z2.identity}
    Z3 = AbelianGroup((3,))
    a = Z3.gen(0)
    R3 = elementary_grading(Z3, 3, [Z3.identity, a, a * a], F5)
    assert R3[a] == span(E(3, 1, 2), E(3, 2, 3), E(3, 3, 1), n=3)


def test_corrupted_grading_reports_witness():
    bad = Grading(Z2, F5, 2, {Z2.identity: span(E(2, 1, 1), E(2, 2, 2), E(2, 1, 2)), h: span(E(2, 2, 1))})
    rep = verify_grading(bad, "associative")
    assert not rep.ok
    v = rep.violations[0]
    assert v.product.any() and v.product not in bad[v.g * v.h]
    assert not brute_verify(bad, "associative")


def test_not_direct_sum():
    with pytest.raises(NotDirectSum):
        Grading(Z2, F5, 2, {Z2.identity: span(E(2, 1, 1), E(2, 2, 2)), h: span(E(2, 1, 1), E(2, 2, 1))}).check_direct_sum()


def test_trivial_grading_passes_both_modes():
    triv = Grading(Z2, F5, 2, {Z2.identity: Subspace.full(F5, 2)})
    assert verify_grading(triv, "associative").ok and verify_grading(triv, "lie").ok


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_verify_matches_bruteforce_on_random_regradings(data):
    """Random assignments of matrix units to degrees: vectorized and brute-force verdicts agree."""
    G = AbelianGroup(data.draw(st.sampled_from([(2,), (3,), (2, 2)])))
    n = data.draw(st.integers(2, 3))
    degs = [G.elements[data.draw(st.integers(0, G.order - 1))] for _ in range(n * n)]
    spans = {}
    for u, g in zip(units(n), degs):
        spans.setdefault(g, []).append(u)
    gr = Grading(G, F5, n, {g: span(*v, n=n) for g, v in spans.items()})
    for mode in ("associative", "lie"):
        assert verify_grading(gr, mode).ok == brute_verify(gr, mode)


# -- constructions --------------------------------------------------------------------------

def test_pauli_examples():
    xa, xb = clock_shift(F5, 2, 4)
    assert F5.matmul(xa, xb).tolist() == [[0, 1], [4, 0]]
    assert F5.scale(4, F5.matmul(xb, xa)).tolist() == [[0, 1], [4, 0]]
    G = AbelianGroup((2, 2))
    P = pauli_grading(G, 2, G.gens(), F5)
    s, flag = support(P)
    assert flag and len(s) == 4
    assert all(V.dim == 1 for V in P.components.values())
    assert verify_grading(P, "associative").ok
    with pytest.raises(CharacteristicDividesM):
        pauli_grading(AbelianGroup((3, 3)), 3, AbelianGroup((3, 3)).gens(), build_field(3))


def test_tensor_examples():
    G = AbelianGroup((2, 2))
    P = pauli_grading(G, 2, G.gens(), F5)
    el = elementary_grading(G, 2, [G.identity, G.gen(0)], F5)
    T = tensor_gradings(P, el)
    assert T.dim == 16 and verify_grading(T, "associative").ok
    triv = elementary_grading(G, 2, [G.identity] * 2, F5)
    T2 = tensor_gradings(triv, el)
    assert {g: V.dim for g, V in T2.components.items()} == {g: 4 * V.dim for g, V in el.components.items()}
    G4 = AbelianGroup((2, 2, 2, 2))
    PP = tensor_gradings(pauli_grading(G4, 2, [G4.gen(0), G4.gen(1)], F5),
                         pauli_grading(G4, 2, [G4.gen(2), G4.gen(3)], F5))
    assert len(PP.components) == 16 and all(V.dim == 1 for V in PP.components.values())
    assert verify_grading(PP, "associative").ok


def test_factor_grading_examples():
    Z4 = AbelianGroup((4,))
    a = Z4.gen(0)
    R = elementary_grading(Z4, 3, [Z4.identity, a, a * a], F5)
    Fg = factor_grading(R, [a * a])
    Q = Fg.group
    assert Q.orders == (2,)
    abar = Q.gen(0)
    assert Fg == elementary_grading(Q, 3, [Q.identity, abar, Q.identity], F5)
    assert verify_grading(Fg, "associative").ok
    assert set(factor_grading(R, [a]).components) == {factor_grading(R, [a]).group.identity}
    same = factor_grading(R, [Z4.identity])
    assert {g.exps: V for g, V in same.components.items()} == {g.exps: V for g, V in R.components.items()}


def test_compatible_examples():
    R = elementary_grading(Z2, 2, [Z2.identity, h], F5)
    assert compatible(R, R) == (True, None)
    u = np.array([[1, 2], [3, 2]])
    ok, g = compatible(R, R.conjugate(u))
    assert not ok and g is not None


@pytest.mark.parametrize("orders,n", [((2,), 4), ((3,), 3), ((4,), 3), ((2, 2), 3), ((6,), 4)])
def test_every_elementary_grading_verifies(orders, n):
    G = AbelianGroup(orders)
    for rest in itertools.product(list(G), repeat=n - 1):
        gr = elementary_grading(G, n, (G.identity,) + rest, F5)
        assert gr.dim == n * n
        assert verify_grading(gr, "associative").ok
        assert np.eye(n, dtype=np.int64) in gr[G.identity]


def test_decompose_and_conjugate_roundtrip():
    rng = np.random.default_rng(1)
    G = AbelianGroup((3,))
    gr = elementary_grading(G, 3, [G.identity, G.gen(0), G.gen(0)], F5)
    u = np.array([[1, 1, 0], [0, 1, 2], [3, 0, 1]])
    gc = gr.conjugate(u)
    assert verify_grading(gc, "associative").ok
    for _ in range(10):
        x = rng.integers(0, 5, size=(3, 3))
        parts = gc.decompose(x)
        total = np.zeros_like(x)
        for g, xg in parts.items():
            assert xg in gc[g]
            total = F5.add(total, xg)
        assert np.array_equal(total, x)
