"""Acceptance criteria, one test each.  Every test prints a single PASS/FAIL line."""

import time

import pytest

from glab.suites import run_suite

# criterion number -> (suite, short title, runtime bound in seconds or None)
CRITERIA = {
    1: ("hopf-axioms", "Hopf axioms of (FG)* for every abelian |G| <= 16, p in {3,5}", 30),
    2: ("duality-roundtrip", "grading/action roundtrip, group-like census, primitive dimension", None),
    3: ("hopf-action", "group-like acts as automorphism, primitive as derivation", 30),
    4: ("divided-powers", "divided-power coproduct and product leading coefficient", None),
    5: ("gen-leibniz", "generalized Leibniz laws for delta^(q) on Z_{p^2}-gradings", 60),
    6: ("martindale", "trace splitting of 100 Lie derivations over GF(5)", None),
    7: ("p-grading", "no falsification of the p-group corollary", 120),
    8: ("exchange", "exchange identity and closure on every type II pair", None),
    9: ("type-two", "type II gradings verify as Lie gradings of sl_n", None),
    10: ("classify-p-group", "complete type I classification for p = 3, n = 2", 60),
    11: ("pauli", "Pauli gradings: subgroup support, 1-dim components, commutation, p | m error", None),
}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    suite, title, bound = CRITERIA[number]
    t0 = time.perf_counter()
    res = run_suite(suite, seed=0)
    elapsed = time.perf_counter() - t0
    in_time = bound is None or elapsed < bound
    ok = res.ok and res.checked > 0 and in_time
    limit = f" (bound {bound}s)" if bound else ""
    line = (f"{'PASS' if ok else 'FAIL'} criterion {number:>2} [{suite}] {title}: "
            f"{res.checked} checked, {res.failures} failed, {elapsed:.1f}s{limit}")
    with capsys.disabled():
        print("\n" + line)
    assert res.ok, res.table()
    assert res.checked > 0
    assert in_time, f"took {elapsed:.1f}s, bound {bound}s"
