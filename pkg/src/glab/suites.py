"""Desk-scale sweeps, one per theorem-level property.

Each suite returns a :class:`SuiteResult` made of rows; a row records one
parameter case, how many instances were checked and how many failed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from sympy import factorint
from sympy.utilities.iterables import partitions

from . import hopf, lie, sl
from .ff import FieldCtx, binom_mod_p, build_field, min_ext_degree, root_of_unity
from .grading import (CharacteristicDividesM, Grading, Subspace, clock_shift, elementary_grading,
                      pauli_grading, support, tensor_gradings, verify_grading)
from .groups import AbelianGroup, characters, additive_characters, decompose_by_p
from .matrices import bracket, identity, random_invertible


class UnknownSuite(KeyError):
    pass


@dataclass
class CaseResult:
    case: str
    checked: int
    failures: int = 0
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.failures == 0


@dataclass
class SuiteResult:
    name: str
    rows: list[CaseResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    @property
    def checked(self) -> int:
        return sum(r.checked for r in self.rows)

    @property
    def failures(self) -> int:
        return sum(r.failures for r in self.rows)

    def add(self, case: str, checked: int, failures: int = 0, note: str = "") -> CaseResult:
        row = CaseResult(case, checked, failures, note)
        self.rows.append(row)
        return row

    def table(self) -> str:
        w = max([len(r.case) for r in self.rows] + [4])
        lines = [f"suite {self.name}", f"{'case':<{w}}  {'checked':>8}  {'failed':>6}  note"]
        for r in self.rows:
            lines.append(f"{r.case:<{w}}  {r.checked:>8}  {r.failures:>6}  {r.note}")
        lines.append(f"{'total':<{w}}  {self.checked:>8}  {self.failures:>6}  "
                     f"{'PASS' if self.ok else 'FAIL'}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"suite": self.name, "ok": self.ok, "checked": self.checked, "failures": self.failures,
                "rows": [{"case": r.case, "checked": r.checked, "failures": r.failures, "note": r.note}
                         for r in self.rows]}


# -- helpers ----------------------------------------------------------------

def auto_field(p: int, G: AbelianGroup) -> FieldCtx:
    """The smallest GF(p^k) holding all roots of unity of order exp(G0)."""
    g0 = decompose_by_p(G, p).g0
    return build_field(p, min_ext_degree(p, g0.exponent))


def abelian_groups(max_order: int) -> list[AbelianGroup]:
    """One group per isomorphism class of order at most ``max_order``, as products of cyclic p-groups."""
    out = []
    for N in range(1, max_order + 1):
        per_prime = []
        for q, e in sorted(factorint(N).items()):
            per_prime.append([sorted((q ** k for k, mult in part.items() for _ in range(mult)),
                                     reverse=True)
                              for part in (dict(x) for x in partitions(e))])
        for choice in itertools.product(*per_prime):
            orders = tuple(d for block in choice for d in block)
            out.append(AbelianGroup(orders))
    return out


def group_label(G: AbelianGroup) -> str:
    return repr(G)


def elementary_classes(G: AbelianGroup, n: int, up_to_permutation: bool = True):
    """Degree tuples with ``g_1 = 1``; with ``up_to_permutation`` the rest is a multiset."""
    elems = list(G)
    rest = (itertools.combinations_with_replacement(elems, n - 1) if up_to_permutation
            else itertools.product(elems, repeat=n - 1))
    for r in rest:
        yield (G.identity,) + tuple(r)


# -- suites -------------------------------------------------------------------

def suite_hopf_axioms(seed: int = 0) -> SuiteResult:
    """Hopf algebra laws of K = (FG)* on the e-basis, every abelian |G| <= 16."""
    res = SuiteResult("hopf-axioms")
    for p in (3, 5):
        for G in abelian_groups(16):
            ctx = auto_field(p, G)
            fails = 0
            basis = hopf.dual_basis(G, ctx)
            one = hopf.unit(G, ctx)
            for f in basis:
                d = hopf.dual_coproduct(f)
                if hopf.coproduct_slot(d, 0) != hopf.coproduct_slot(d, 1):
                    fails += 1
                if hopf.as_elem(hopf.counit_slot(d, 0)) != f or hopf.as_elem(hopf.counit_slot(d, 1)) != f:
                    fails += 1
                eps_one = one * hopf.counit(f)
                if (hopf.multiply_slots(hopf.antipode_slot(d, 0)) != eps_one
                        or hopf.multiply_slots(hopf.antipode_slot(d, 1)) != eps_one):
                    fails += 1
            C = np.stack([b.coeffs for b in basis])
            # associativity and unit of the pointwise product, plus multiplicativity of Delta
            if not np.array_equal(ctx.mul(ctx.mul(C[:, None, None], C[None, :, None]), C[None, None, :]),
                                  ctx.mul(C[:, None, None], ctx.mul(C[None, :, None], C[None, None, :]))):
                fails += 1
            if any(f * one != f for f in basis):
                fails += 1
            for f, h in itertools.product(basis[:4], repeat=2):
                dfh = hopf.dual_coproduct(f * h).coeffs
                if not np.array_equal(dfh, ctx.mul(hopf.dual_coproduct(f).coeffs,
                                                   hopf.dual_coproduct(h).coeffs)):
                    fails += 1
            res.add(f"p={p} {group_label(G)} over GF({ctx.q})", G.order, fails)
    return res


_ROUNDTRIP_GROUPS = [(2,), (3,), (4,), (2, 2), (6,), (9,), (3, 3), (5,), (2, 4)]


def suite_duality_roundtrip(seed: int = 0, count: int = 50) -> SuiteResult:
    """Grading -> e_g action -> grading, the group-like census and the primitive dimension."""
    res = SuiteResult("duality-roundtrip")
    rng = np.random.default_rng(seed)
    fails = 0
    for _ in range(count):
        G = AbelianGroup(_ROUNDTRIP_GROUPS[rng.integers(len(_ROUNDTRIP_GROUPS))])
        p = (3, 5)[rng.integers(2)]
        n = int(rng.integers(1, 5))
        ctx = build_field(p)
        degs = [G.elements[int(i)] for i in rng.integers(0, G.order, size=n)]
        gr = elementary_grading(G, n, degs, ctx)
        back = hopf.grading_from_action(G, ctx, n, lambda f, X: hopf.act(f, gr, X))
        fails += back != gr
    res.add(f"{count} random elementary gradings, n <= 4", count, fails)
    for p in (3, 5):
        for orders in _ROUNDTRIP_GROUPS:
            G = AbelianGroup(orders)
            ctx = auto_field(p, G)
            g0 = decompose_by_p(G, p).g0
            census = hopf.grouplike_census(G, ctx)
            prank = sum(1 for d in G.orders if d % p == 0)
            pdim = hopf.primitive_dimension(G, ctx)
            res.add(f"p={p} {group_label(G)}", 2, int(census != g0.order) + int(pdim != prank),
                    f"group-like {census}/{g0.order}, primitive {pdim}/{prank}")
    return res


def _action_cases(p: int):
    """Gradings used for the automorphism and derivation checks."""
    specs = [((2,), 2), ((3,), 2), ((4,), 3), ((2, 2), 3), ((6,), 3), ((9,), 2), ((3, 3), 2), ((5,), 3)]
    for orders, n in specs:
        G = AbelianGroup(orders)
        ctx = auto_field(p, G)
        for degs in elementary_classes(G, n):
            yield G, ctx, elementary_grading(G, n, degs, ctx)
    G = AbelianGroup((2, 2))
    ctx = auto_field(p, G)
    pg = pauli_grading(G, 2, G.gens(), ctx)
    yield G, ctx, pg
    yield G, ctx, tensor_gradings(pg, elementary_grading(G, 2, [G.identity, G.gen(0)], ctx))


def _action_failures(gr: Grading, f: hopf.DualElem, kind: str, mode: str) -> int:
    ctx = gr.ctx
    X = hopf.ambient_basis(gr)
    A = hopf.action_matrix(f, gr)

    def act(m):
        return ctx.matmul(m.reshape(m.shape[:-2] + (-1,)), A).reshape(m.shape)

    def prod(a, b):
        return bracket(ctx, a, b) if mode == "lie" else ctx.matmul(a, b)

    x, y = X[:, None], X[None, :]
    lhs = act(prod(x, y))
    if kind == "grouplike":
        rhs = prod(act(x), act(y))
    else:
        rhs = ctx.add(prod(act(x), y), prod(x, act(y)))
    return int((lhs != rhs).any(axis=(-1, -2)).sum())


def suite_hopf_action(seed: int = 0) -> SuiteResult:
    """Group-like elements act as automorphisms and primitive ones as derivations."""
    res = SuiteResult("hopf-action")
    for p in (3, 5):
        for G, ctx, gr in _action_cases(p):
            gens = [("grouplike", hopf.lift_mult_char(c)) for c in characters(G, ctx)]
            gens += [("primitive", hopf.lift_add_char(a, ctx)) for a in additive_characters(G, p)]
            fails = checked = 0
            for kind, f in gens:
                if kind == "grouplike" and not hopf.is_grouplike(f):
                    fails += 1
                if kind == "primitive" and not hopf.is_primitive(f):
                    fails += 1
                for mode in ("associative", "lie"):
                    fails += _action_failures(gr, f, kind, mode)
                    checked += gr.n ** 4
            res.add(f"p={p} {group_label(G)} n={gr.n} {dict((str(g), V.dim) for g, V in gr.components.items())}",
                    checked, fails)
    return res


def suite_divided_powers(seed: int = 0) -> SuiteResult:
    """Coproduct of divided powers and the leading coefficient of their products."""
    res = SuiteResult("divided-powers")
    for p in (3, 5):
        ctx = build_field(p)
        for N in (1, 2):
            G = AbelianGroup((p ** N,))
            ds = hopf.divided_powers(G, ctx)
            q = G.order
            fails = checked = 0
            for m in range(q):
                expected = None
                for i in range(m + 1):
                    t = hopf.tensor(ds[i], ds[m - i]).coeffs
                    expected = t if expected is None else ctx.add(expected, t)
                fails += not np.array_equal(hopf.dual_coproduct(ds[m]).coeffs, expected)
                checked += 1
            for i, j in itertools.product(range(q), repeat=2):
                c = hopf.divided_power_coords(ds[i] * ds[j])
                checked += 1
                if i + j < q:
                    if c[i + j] != binom_mod_p(i + j, i, p) or c[i + j + 1:].any():
                        fails += 1
            res.add(f"p={p} N={N}", checked, fails)
    return res


def suite_gen_leibniz(seed: int = 0, triples: int = 50) -> SuiteResult:
    """Expansion laws for delta^(q) on every elementary Z_{p^2}-grading of M_n."""
    res = SuiteResult("gen-leibniz")
    for p in (3, 5):
        ctx = build_field(p)
        G = AbelianGroup((p * p,))
        for n in (2, 4):
            if n % p == 0:
                continue
            fails = checked = 0
            for degs in elementary_classes(G, n):
                rep = lie.generalized_leibniz_check(elementary_grading(G, n, degs, ctx),
                                                    triples=triples, seed=seed)
                fails += not rep.ok
                checked += 1
            res.add(f"p={p} Z{p * p} n={n}", checked, fails, f"q={p}, {triples} triples each")
    return res


def suite_martindale(seed: int = 0, count: int = 100) -> SuiteResult:
    """Split ``ad s + lam * tr(.) 1`` and compare with the known parts."""
    res = SuiteResult("martindale")
    ctx = build_field(5)
    rng = np.random.default_rng(seed)
    for n in (2, 3):
        fails = 0
        trace = lie.trace_map(ctx, n)
        m = count // 2 + (count % 2 if n == 2 else 0)
        for _ in range(m):
            s = rng.integers(0, ctx.q, size=(n, n), dtype=np.int64)
            lam = int(rng.integers(0, ctx.q))
            D = lie.ad(ctx, s) + lam * trace
            try:
                split = lie.martindale_decompose(D)
            except lie.LieError:
                fails += 1
                continue
            ok = (split.tau == lie.ad(ctx, s) and split.zeta == lam * trace
                  and lie.is_derivation(split.tau)[0])
            fails += not ok
        res.add(f"GF(5) n={n}", m, fails)
    return res


def _p_grading_cases(p: int):
    for n in (2, 3, 4):
        if n % p == 0:
            continue
        for orders in ((p,), (p * p,), (p, p)):
            yield n, AbelianGroup(orders)


def suite_p_grading(seed: int = 0, conjugates: int = 20) -> SuiteResult:
    """No falsification of "a Lie p-grading of M_n is associative iff 1 is in R_1"."""
    res = SuiteResult("p-grading")
    rng = np.random.default_rng(seed)
    for p in (3, 5):
        ctx = build_field(p)
        for n, G in _p_grading_cases(p):
            grads = [elementary_grading(G, n, d, ctx) for d in elementary_classes(G, n)]
            fals = 0
            for gr in grads:
                fals += lie.check_corollary_p_grading(gr).falsification
            picks = rng.choice(len(grads), size=min(conjugates, len(grads)), replace=False)
            for i in sorted(picks):
                u = random_invertible(ctx, n, rng)
                fals += lie.check_corollary_p_grading(grads[i].conjugate(u)).falsification
            # 1 moved out of the identity component: must come out non-associative
            moved = 0
            for gr in grads[:conjugates]:
                base = sl.type1_grading(gr)
                for g in G:
                    if g.is_identity:
                        continue
                    comps = dict(base.components)
                    comps[g] = base[g] + Subspace(ctx, n, identity(n).reshape(1, -1))
                    fals += lie.check_corollary_p_grading(Grading(G, ctx, n, comps)).falsification
                    moved += 1
                    break
            res.add(f"p={p} {group_label(G)} n={n}", len(grads) + len(picks) + moved, fals,
                    f"{len(picks)} conjugates, {moved} with 1 outside R_1")
    return res


_INVOLUTIONS: dict[str, Callable] = {
    "I": sl.transpose_involution,
    "antidiag": sl.antidiagonal_involution,
    "symplectic": sl.symplectic_involution,
}


def type_two_instances():
    """Every (assoc, involution, h) of the type II sweep that meets the preconditions."""
    for p in (3, 5, 7):
        ctx = build_field(p)
        for n in (2, 3, 4):
            if n % p == 0:
                continue
            for orders in ((2,), (4,), (2, 2)):
                G = AbelianGroup(orders)
                hs = [h for h in G if not h.is_identity and (h * h).is_identity]
                assocs = [elementary_grading(G, n, d, ctx)
                          for d in elementary_classes(G, n, up_to_permutation=False)]
                if orders == (2, 2) and n in (2, 4):
                    pg = pauli_grading(G, 2, G.gens(), ctx)
                    assocs.append(pg if n == 2 else tensor_gradings(
                        pg, elementary_grading(G, 2, [G.identity, G.identity], ctx)))
                for name, make in _INVOLUTIONS.items():
                    if name == "symplectic" and n % 2:
                        continue
                    inv = make(ctx, n)
                    for R in assocs:
                        if not sl.involution_preserves(inv, R)[0]:
                            continue
                        for h in hs:
                            yield (p, n, G, name), R, inv, h


def suite_type_two(seed: int = 0) -> SuiteResult:
    res = SuiteResult("type-two")
    rows: dict = {}
    for key, R, inv, h in type_two_instances():
        p, n, G, name = key
        L = sl.type2_grading(R, inv, h)
        bad = not verify_grading(L, "lie").ok or L.dim != n * n - 1 or not sl._is_sl_grading(L)
        c = rows.setdefault((p, n, group_label(G), name), [0, 0])
        c[0] += 1
        c[1] += bad
    for (p, n, g, name), (checked, fails) in rows.items():
        res.add(f"p={p} n={n} {g} Phi={name}", checked, fails)
    return res


def transpose_example(ctx: FieldCtx | None = None):
    """The M_2 pair: elementary (1, h) and its transpose-twisted Lie regrading."""
    ctx = ctx or build_field(5)
    G = AbelianGroup((2,))
    h = G.gen(0)
    R = elementary_grading(G, 2, [G.identity, h], ctx)
    inv = sl.transpose_involution(ctx, 2)
    return R, sl.twisted_lie_grading(R, inv, h), inv, h


def suite_exchange(seed: int = 0) -> SuiteResult:
    res = SuiteResult("exchange")
    R, tw, inv, h = transpose_example()
    fam, rep = sl.exchange(tw, R, [h])
    K, H = sl.symmetric_split(inv, Subspace.full(R.ctx, 2))
    ok = rep.ok and fam[h.group.identity] == K and fam[h] == H
    res.add("M_2/GF(5) transpose example", 1, int(not ok), "R^1 = K, R^h = H")
    rows: dict = {}
    for key, R, inv, h in type_two_instances():
        p, n, G, name = key
        tw = sl.twisted_lie_grading(R, inv, h)
        fam, rep = sl.exchange(tw, R, [h])
        K, H = sl.symmetric_split(inv, Subspace.full(R.ctx, n))
        bad = not rep.ok or fam[G.identity] != K or fam[h] != H
        c = rows.setdefault((p, n, group_label(G)), [0, 0])
        c[0] += 1
        c[1] += bad
    for (p, n, g), (checked, fails) in rows.items():
        res.add(f"type II pairs p={p} n={n} {g}", checked, fails)
    return res


def suite_classify_p_group(seed: int = 0) -> SuiteResult:
    res = SuiteResult("classify-p-group")
    ctx = build_field(3)
    n = 2
    for orders in ((3,), (9,), (3, 3)):
        G = AbelianGroup(orders)
        cands = list(sl.enumerate_elementary_candidates(G, n, ctx))
        fails = checked = 0
        for degs in itertools.product(list(G), repeat=n):
            slg = sl.type1_grading(elementary_grading(G, n, degs, ctx))
            fails += sl.classify_sl_grading(slg, cands).kind != "TypeI"
            checked += 1
        res.add(f"p=3 n=2 {group_label(G)}", checked, fails, f"{len(cands)} candidates")
    return res


def suite_pauli(seed: int = 0) -> SuiteResult:
    res = SuiteResult("pauli")
    for p in (3, 5, 7):
        for m in (2, 3, 4, 5, 6):
            G = AbelianGroup((m, m))
            if m % p == 0:
                try:
                    pauli_grading(G, m, G.gens(), build_field(p))
                    res.add(f"p={p} m={m}", 1, 1, "no error for p | m")
                except CharacteristicDividesM:
                    res.add(f"p={p} m={m}", 1, 0, "CharacteristicDividesM")
                continue
            ctx = build_field(p, min_ext_degree(p, m))
            eps = root_of_unity(ctx, m)
            xa, xb = clock_shift(ctx, m, eps)
            gr = pauli_grading(G, m, G.gens(), ctx, eps)
            supp, is_sub = support(gr)
            fails = int(not is_sub) + int(any(V.dim != 1 for V in gr.components.values()))
            fails += int(not np.array_equal(ctx.matmul(xa, xb), ctx.scale(eps.code, ctx.matmul(xb, xa))))
            fails += int(not verify_grading(gr, "associative").ok)
            res.add(f"p={p} m={m} GF({ctx.q})", 4, fails, f"support {len(supp)}")
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "hopf-axioms": suite_hopf_axioms,
    "duality-roundtrip": suite_duality_roundtrip,
    "divided-powers": suite_divided_powers,
    "gen-leibniz": suite_gen_leibniz,
    "martindale": suite_martindale,
    "p-grading": suite_p_grading,
    "exchange": suite_exchange,
    "type-two": suite_type_two,
    "classify-p-group": suite_classify_p_group,
    "hopf-action": suite_hopf_action,
    "pauli": suite_pauli,
}


def run_suite(name: str, seed: int = 0) -> SuiteResult:
    try:
        fn = SUITES[name]
    except KeyError:
        raise UnknownSuite(name) from None
    return fn(seed=seed)
