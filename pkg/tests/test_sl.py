import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from glab.ff import build_field, root_of_unity
from glab.grading import Grading, Subspace, elementary_grading, pauli_grading, subspace_from_spanners, verify_grading
from glab.groups import AbelianGroup
from glab.matrices import bracket, inverse, unit, units
from glab.sl import (Antiautomorphism, FactorGradingsDiffer, Involution, InvolutionNotPreserving,
                     NotCompatible, NotInvariant, OrderNotTwo, PDividesN, PreconditionFailed,
                     SearchExhausted, antidiagonal_involution, apply_involution,
                     classify_sl_grading, correct_antiautomorphism, enumerate_elementary_candidates,
                     exchange, involution_preserves, sl_subspace, symmetric_split,
                     symplectic_involution, transpose_involution, twisted_lie_grading,
                     type1_grading, type2_grading)
from glab.suites import type_two_instances

F5 = build_field(5)
F3 = build_field(3)
Z2 = AbelianGroup((2,))
h = Z2.gen(0)
one = Z2.identity


def E(n, i, j):
    return unit(n, i - 1, j - 1)


def span(*ms, n=2, ctx=F5):
    return subspace_from_spanners(ctx, n, ms)


R = elementary_grading(Z2, 2, [one, h], F5)
T = transpose_involution(F5, 2)


def test_sl_subspace_examples():
    L = sl_subspace(2, F5)
    assert L.dim == 3
    assert [m.tolist() for m in L.matrices()] == [[[1, 0], [0, 4]], [[0, 1], [0, 0]], [[0, 0], [1, 0]]]
    assert L == span(E(2, 1, 2), E(2, 2, 1), (E(2, 1, 1) - E(2, 2, 2)) % 5)
    with pytest.raises(PDividesN):
        sl_subspace(3, F3)
    assert sl_subspace(3, F5).dim == 8


def test_type1_examples():
    L = type1_grading(R)
    assert L[one] == span((E(2, 1, 1) - E(2, 2, 2)) % 5)
    assert L[h] == span(E(2, 1, 2), E(2, 2, 1))
    triv = Grading(Z2, F5, 2, {one: Subspace.full(F5, 2)})
    assert type1_grading(triv).components == {one: sl_subspace(2, F5)}
    G = AbelianGroup((2, 2))
    P = type1_grading(pauli_grading(G, 2, G.gens(), F5))
    assert G.identity not in P.components
    assert sorted(V.dim for V in P.components.values()) == [1, 1, 1]
    assert verify_grading(P, "lie").ok


def test_involution_examples():
    assert involution_preserves(T, R) == (True, None)
    Z3 = AbelianGroup((3,))
    a = Z3.gen(0)
    ok, (x, g) = involution_preserves(transpose_involution(F5, 3),
                                      elementary_grading(Z3, 3, [Z3.identity, a, a * a], F5))
    assert not ok and g == a and np.array_equal(x, E(3, 1, 2))
    assert np.array_equal(apply_involution(transpose_involution(F5, 3), E(3, 1, 2)), E(3, 2, 1))
    for inv in (T, antidiagonal_involution(F5, 3), symplectic_involution(F5, 4)):
        U = units(inv.n)
        assert np.array_equal(inv(inv(U)), U)
        x, y = U[:, None], U[None, :]
        assert np.array_equal(inv(F5.matmul(x, y)), F5.matmul(inv(y), inv(x)))


def test_involution_requires_symmetry_sign():
    with pytest.raises(Exception):
        Involution(F5, np.array([[1, 2], [3, 1]]))


def test_symmetric_split_examples():
    K, H = symmetric_split(T, Subspace.full(F5, 2))
    assert K == span((E(2, 1, 2) - E(2, 2, 1)) % 5) and H.dim == 3
    K0, H0 = symmetric_split(T, Subspace.zero(F5, 2))
    assert K0.dim == 0 and H0.dim == 0
    K, H = symmetric_split(T, R[h])
    assert K == span((E(2, 1, 2) - E(2, 2, 1)) % 5) and H == span(E(2, 1, 2) + E(2, 2, 1))
    with pytest.raises(NotInvariant):
        symmetric_split(T, span(E(2, 1, 2)))


def test_type2_examples():
    L = type2_grading(R, T, h)
    assert L[one] == span(E(2, 1, 2) + E(2, 2, 1))
    assert L[h] == span((E(2, 1, 2) - E(2, 2, 1)) % 5, (E(2, 1, 1) - E(2, 2, 2)) % 5)
    assert verify_grading(L, "lie").ok
    x, y = (E(2, 1, 2) - E(2, 2, 1)) % 5, (E(2, 1, 1) - E(2, 2, 2)) % 5
    assert np.array_equal(bracket(F5, x, y), F5.scale(F5.encode(-2), E(2, 1, 2) + E(2, 2, 1)))
    with pytest.raises(OrderNotTwo):
        type2_grading(R, T, one)
    Z4 = AbelianGroup((4,))
    with pytest.raises(OrderNotTwo):
        type2_grading(elementary_grading(Z4, 2, [Z4.identity] * 2, F5), transpose_involution(F5, 2), Z4.gen(0))
    Z6 = AbelianGroup((6,))
    with pytest.raises(InvolutionNotPreserving):
        type2_grading(elementary_grading(Z6, 3, [Z6.identity, Z6(2), Z6(4)], F5),
                      transpose_involution(F5, 3), Z6(3))
    triv = Grading(Z2, F5, 3, {one: Subspace.full(F5, 3)})
    L3 = type2_grading(triv, transpose_involution(F5, 3), h)
    assert L3[one].dim == 3 and L3[h].dim == 5 and verify_grading(L3, "lie").ok


def test_type2_matches_bracket_oracle():
    """Closure of the type II example checked product by product, without verify_grading."""
    L = type2_grading(R, T, h)
    for g1, g2 in itertools.product(Z2, repeat=2):
        for x in L[g1].matrices():
            for y in L[g2].matrices():
                z = bracket(F5, x, y)
                assert not z.any() or z in L[g1 * g2]


# -- exchange -----------------------------------------------------------------------------

def test_exchange_transpose_example():
    tw = twisted_lie_grading(R, T, h)
    assert tw[one] == span(E(2, 1, 2) + E(2, 2, 1))
    assert tw[h] == span((E(2, 1, 2) - E(2, 2, 1)) % 5, E(2, 1, 1), E(2, 2, 2))
    fam, rep = exchange(tw, R, [h])
    assert rep.ok
    K, H = symmetric_split(T, Subspace.full(F5, 2))
    assert fam[one] == K == span((E(2, 1, 2) - E(2, 2, 1)) % 5)
    assert fam[h] == H == span(E(2, 1, 1), E(2, 2, 2), E(2, 1, 2) + E(2, 2, 1))


def test_exchange_trivial_cases():
    fam, rep = exchange(R, R, [h])
    assert rep.ok and fam[one] == Subspace.full(F5, 2) and fam[h].dim == 0
    fam, rep = exchange(R, R, [])
    assert rep.ok and list(fam) == [one] and fam[one] == Subspace.full(F5, 2)


def test_exchange_errors():
    with pytest.raises(NotCompatible):
        exchange(R, R.conjugate(np.array([[1, 2], [3, 2]])), [h])
    triv = Grading(Z2, F5, 2, {one: Subspace.full(F5, 2)})
    with pytest.raises(FactorGradingsDiffer):
        exchange(R, triv, [])


def test_exchange_associative_mode_rejects_lie_pair():
    _, rep = exchange(twisted_lie_grading(R, T, h), R, [h], mode="associative")
    assert not rep.closure_ok


# -- correction search ---------------------------------------------------------------------

def test_correct_antiautomorphism_identity_case():
    c = correct_antiautomorphism(R, T)
    assert np.array_equal(c.u, np.eye(2)) and c.candidates_tried == 0


def _postconditions(gr, phi, u):
    ctx = gr.ctx
    u_inv = inverse(ctx, u)

    def psi(x):
        return ctx.matmul(ctx.matmul(u, x), u_inv)

    U = units(gr.n)
    commute = np.array_equal(phi(psi(U)), psi(phi(U)))
    squares = np.array_equal(psi(psi(U)), phi(phi(U)))
    preserves = all(all(V.contains(y) for y in psi(V.matrices())) for V in gr.components.values())
    return commute and squares and preserves


@pytest.mark.parametrize("p,k,m", [(5, 1, 4), (5, 2, 3), (7, 1, 3), (3, 2, 4)])
def test_correct_antiautomorphism_search(p, k, m):
    F = build_field(p, k)
    eps = root_of_unity(F, m).code
    phi = Antiautomorphism(F, [[0, 1], [eps, 0]])
    gr = elementary_grading(Z2, 2, [one, h], F)
    assert not np.array_equal(phi(phi(units(2))), units(2))
    c = correct_antiautomorphism(gr, phi)
    assert _postconditions(gr, phi, c.u)


def test_correct_antiautomorphism_errors():
    Z3 = AbelianGroup((3,))
    a = Z3.gen(0)
    with pytest.raises(PreconditionFailed):
        correct_antiautomorphism(elementary_grading(Z3, 3, [Z3.identity, a, a * a], F5), transpose_involution(F5, 3))
    phi = Antiautomorphism(F5, [[0, 1], [2, 0]])
    with pytest.raises(SearchExhausted):
        correct_antiautomorphism(R, phi, cap=1)


# -- classification -------------------------------------------------------------------------

def test_classify_examples():
    c = classify_sl_grading(type1_grading(R))
    assert c.kind == "TypeI" and c.candidate[0] == R
    L2 = type2_grading(R, T, h)
    c = classify_sl_grading(L2, [(R, None), (R, (T, h))])
    assert c.kind == "TypeII" and c.index == 1
    Z3 = AbelianGroup((3,))
    slg = type1_grading(elementary_grading(Z3, 2, [Z3.identity, Z3.gen(0)], F3))
    assert classify_sl_grading(slg).kind == "TypeI"
    assert len(list(enumerate_elementary_candidates(Z3, 2, F3))) == 3
    assert classify_sl_grading(L2, []).kind == "Unknown"


def test_classification_is_conjugation_covariant():
    Z3 = AbelianGroup((3,))
    cands = [c for c, _ in enumerate_elementary_candidates(Z3, 3, F5)]
    u = np.array([[1, 2, 0], [0, 1, 3], [1, 0, 1]])
    for i, src in enumerate(cands):
        plain = classify_sl_grading(type1_grading(src), [(c, None) for c in cands])
        conj = classify_sl_grading(type1_grading(src.conjugate(u)), [(c.conjugate(u), None) for c in cands])
        assert plain.kind == conj.kind == "TypeI" and plain.index == conj.index


_INSTANCES = list(itertools.islice(type_two_instances(), 0, None, 23))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(_INSTANCES))
def test_type2_roundtrip_property(inst):
    key, assoc, inv, hh = inst
    L = type2_grading(assoc, inv, hh)
    n = assoc.n
    assert L.dim == n * n - 1 and verify_grading(L, "lie").ok
    c = classify_sl_grading(L, [(assoc, None), (assoc, (inv, hh))])
    assert c.kind == "TypeII" or type1_grading(assoc) == L
    K, H = symmetric_split(inv, Subspace.full(assoc.ctx, n))
    assert K.dim + H.dim == n * n
    assert np.array_equal(inv(K.matrices()), assoc.ctx.neg(K.matrices()))
    assert np.array_equal(inv(H.matrices()), H.matrices())
