import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from glab.ff import build_field
from glab.grading import Grading, Subspace, elementary_grading, subspace_from_spanners
from glab.groups import AbelianGroup
from glab.lie import (HypothesisViolated, LinMap, NotLieDerivation, VerificationFailed, ad,
                      check_corollary_p_grading, generalized_leibniz_check, inner_generator,
                      invariant_idempotent, is_derivation, is_lie_derivation, martindale_decompose,
                      trace_map, transpose_map, zero_map)
from glab.matrices import bracket, unit
from glab import sl

F5 = build_field(5)
F3 = build_field(3)


def E(n, i, j):
    return unit(n, i - 1, j - 1)


def test_linmap_matches_function():
    s = np.array([[1, 2], [0, 4]])
    D = ad(F5, s)
    x = np.array([[3, 1], [4, 2]])
    assert np.array_equal(D(x), bracket(F5, s, x))


# -- Lie derivations ------------------------------------------------------------------

def test_is_lie_derivation_examples():
    rng = np.random.default_rng(0)
    for n in (2, 3):
        s = rng.integers(0, 5, size=(n, n))
        assert is_lie_derivation(ad(F5, s))[0]
        assert is_lie_derivation(trace_map(F5, n))[0]
    ok, (x, y) = is_lie_derivation(transpose_map(F5, 2))
    assert not ok and x.shape == (2, 2)


def test_trace_map_is_not_associative_derivation():
    assert not is_derivation(trace_map(F5, 2))[0]


def test_martindale_examples():
    s = np.array([[1, 2, 0], [0, 3, 1], [4, 0, 0]])
    split = martindale_decompose(ad(F5, s))
    assert split.tau == ad(F5, s) and split.zeta.is_zero() and split.zeta_kills_identity
    lam = 3
    split = martindale_decompose(ad(F5, s) + lam * trace_map(F5, 3))
    assert split.tau == ad(F5, s)
    assert split.zeta == lam * trace_map(F5, 3)
    assert not split.zeta_kills_identity          # zeta(1) = lam * n * 1
    z = martindale_decompose(zero_map(F5, 2))
    assert z.tau.is_zero() and z.zeta.is_zero()


def test_martindale_errors():
    with pytest.raises(NotLieDerivation):
        martindale_decompose(transpose_map(F5, 2))
    with pytest.raises(VerificationFailed):
        martindale_decompose(ad(F3, np.eye(3, dtype=np.int64)))


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 3), st.integers(0, 4), st.data())
def test_martindale_roundtrip_and_inner(n, lam, data):
    s = np.array(data.draw(st.lists(st.integers(0, 4), min_size=n * n, max_size=n * n))).reshape(n, n)
    D = ad(F5, s) + lam * trace_map(F5, n)
    split = martindale_decompose(D)
    assert split.tau + split.zeta == D
    g = inner_generator(split.tau)
    assert g is not None and ad(F5, g) == split.tau


def test_inner_generator_rejects_non_inner():
    assert inner_generator(trace_map(F5, 2)) is None


# -- corollary ------------------------------------------------------------------------------

Z9 = AbelianGroup((9,))
a = Z9.gen(0)


def test_corollary_examples():
    gr = elementary_grading(Z9, 2, [Z9.identity, a], F3)
    rep = check_corollary_p_grading(gr, 3, 2)
    assert rep.identity_in_r1 and rep.associative_ok and not rep.falsification
    u = np.array([[1, 2], [1, 0]])
    rep = check_corollary_p_grading(gr.conjugate(u))
    assert rep.identity_in_r1 and rep.associative_ok and not rep.falsification
    # 1 moved out of R_1 while keeping a Lie grading
    base = sl.type1_grading(gr)
    comps = dict(base.components)
    comps[a ** 3] = base[a ** 3] + Subspace(F3, 2, np.eye(2, dtype=np.int64).reshape(1, -1))
    moved = Grading(Z9, F3, 2, comps)
    rep = check_corollary_p_grading(moved)
    assert not rep.identity_in_r1 and not rep.associative_ok and not rep.falsification


def test_corollary_hypotheses():
    with pytest.raises(HypothesisViolated):
        check_corollary_p_grading(elementary_grading(Z9, 3, [Z9.identity] * 3, F3))
    Z2 = AbelianGroup((2,))
    with pytest.raises(HypothesisViolated):
        check_corollary_p_grading(elementary_grading(Z2, 2, [Z2.identity, Z2.gen(0)], F3))
    with pytest.raises(HypothesisViolated):
        check_corollary_p_grading(elementary_grading(Z9, 2, [Z9.identity, a], F3), p=5)


# -- generalized Leibniz ---------------------------------------------------------------------

def test_leibniz_z9_example():
    gr = elementary_grading(Z9, 2, [Z9.identity, a], F3)
    rep = generalized_leibniz_check(gr)
    assert rep.ok and rep.q == 3 and set(rep.lower_ok) == {0, 1, 2} and rep.triples == 50


def test_leibniz_degenerates_for_n_equal_one():
    Z3 = AbelianGroup((3,))
    gr = elementary_grading(Z3, 2, [Z3.identity, Z3.gen(0)], F3)
    rep = generalized_leibniz_check(gr)
    assert rep.q == 1 and rep.ok
    # q = 1: the law is the plain Leibniz rule, so delta^(1) acts as a derivation
    from glab.hopf import divided_powers, action_matrix
    A = action_matrix(divided_powers(Z3, F3)[1], gr)
    D = LinMap(F3, 2, A)
    assert is_derivation(D)[0]


def test_leibniz_fails_on_a_non_grading():
    bad = Grading(Z9, F3, 2, {
        Z9.identity: subspace_from_spanners(F3, 2, [E(2, 1, 1), E(2, 2, 2)]),
        a: subspace_from_spanners(F3, 2, [E(2, 1, 2), E(2, 2, 1)]),
    })
    rep = generalized_leibniz_check(bad, triples=5)
    assert not rep.ok and rep.failures


def test_invariant_idempotent():
    gr = elementary_grading(Z9, 2, [Z9.identity, a], F3)
    assert invariant_idempotent(gr, E(2, 1, 1))
    assert not invariant_idempotent(gr, np.array([[1, 1], [0, 0]]))
