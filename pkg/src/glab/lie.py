"""Lie derivations of M_n, the trace splitting of a Lie derivation, and
executable checks of the generalized Leibniz laws for divided powers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import linalg
from .ff import FieldCtx
from .grading import Grading, verify_grading
from .hopf import act, action_matrix, divided_powers, GroupNotCyclicPPower
from .matrices import bracket, flatten, identity, trace, unflatten, units


class LieError(ValueError):
    pass


class NotLieDerivation(LieError):
    pass


class VerificationFailed(LieError):
    pass


class HypothesisViolated(LieError):
    pass


class LinMap:
    """A linear map of M_n given by its ``(n^2, n^2)`` matrix on flattened row vectors."""

    __slots__ = ("ctx", "n", "matrix")

    def __init__(self, ctx: FieldCtx, n: int, matrix):
        m = np.asarray(matrix, dtype=np.int64)
        if m.shape != (n * n, n * n):
            raise LieError(f"expected a {n * n}x{n * n} matrix, got {m.shape}")
        self.ctx = ctx
        self.n = n
        self.matrix = m

    @classmethod
    def from_function(cls, ctx: FieldCtx, n: int, fn: Callable[[np.ndarray], np.ndarray]) -> "LinMap":
        """Build from a function on stacks of matrices."""
        return cls(ctx, n, flatten(fn(units(n))))

    def __call__(self, x) -> np.ndarray:
        return unflatten(self.ctx.matmul(flatten(np.asarray(x, dtype=np.int64)), self.matrix), self.n)

    def __add__(self, other):
        return LinMap(self.ctx, self.n, self.ctx.add(self.matrix, other.matrix))

    def __sub__(self, other):
        return LinMap(self.ctx, self.n, self.ctx.sub(self.matrix, other.matrix))

    def __rmul__(self, c):
        return LinMap(self.ctx, self.n, self.ctx.scale(self.ctx.encode(c), self.matrix))

    def __eq__(self, other):
        return (isinstance(other, LinMap) and self.ctx == other.ctx and self.n == other.n
                and np.array_equal(self.matrix, other.matrix))

    def __repr__(self):
        return f"LinMap(M_{self.n}({self.ctx}))"

    def is_zero(self) -> bool:
        return not self.matrix.any()


def zero_map(ctx: FieldCtx, n: int) -> LinMap:
    return LinMap(ctx, n, np.zeros((n * n, n * n), dtype=np.int64))


def ad(ctx: FieldCtx, s) -> LinMap:
    """``x -> [s, x]``."""
    s = np.asarray(s, dtype=np.int64)
    return LinMap.from_function(ctx, s.shape[0], lambda x: bracket(ctx, s, x))


def trace_map(ctx: FieldCtx, n: int) -> LinMap:
    """``x -> tr(x) 1``."""
    one = identity(n)
    return LinMap.from_function(ctx, n, lambda x: ctx.mul(trace(ctx, x)[..., None, None], one))


def transpose_map(ctx: FieldCtx, n: int) -> LinMap:
    return LinMap.from_function(ctx, n, lambda x: np.swapaxes(x, -1, -2))


def _pairs(n):
    U = units(n)
    return U[:, None], U[None, :]


def _first_witness(bad, n):
    U = units(n)
    i, j = np.argwhere(bad)[0]
    return U[i], U[j]


def is_lie_derivation(D: LinMap):
    """``D[x,y] == [Dx,y] + [x,Dy]`` on all pairs of matrix units; returns (ok, witness)."""
    ctx, n = D.ctx, D.n
    x, y = _pairs(n)
    lhs = D(bracket(ctx, x, y))
    rhs = ctx.add(bracket(ctx, D(x), y), bracket(ctx, x, D(y)))
    bad = (lhs != rhs).any(axis=(-1, -2))
    if bad.any():
        return False, _first_witness(bad, n)
    return True, None


def is_derivation(D: LinMap):
    """``D(xy) == D(x)y + xD(y)`` on all pairs of matrix units; returns (ok, witness)."""
    ctx, n = D.ctx, D.n
    x, y = _pairs(n)
    lhs = D(ctx.matmul(x, y))
    rhs = ctx.add(ctx.matmul(D(x), y), ctx.matmul(x, D(y)))
    bad = (lhs != rhs).any(axis=(-1, -2))
    if bad.any():
        return False, _first_witness(bad, n)
    return True, None


@dataclass
class MartindaleSplit:
    tau: LinMap
    zeta: LinMap
    zeta_kills_identity: bool


def martindale_decompose(D: LinMap) -> MartindaleSplit:
    """Split a Lie derivation as ``tau + zeta``: ``tau`` an associative derivation,
    ``zeta`` central-valued and zero on commutators.

    ``zeta(x) = tr(D x) / n * 1``; this needs ``p`` not dividing ``n``.
    The result is re-verified before it is returned.
    """
    ctx, n = D.ctx, D.n
    ok, wit = is_lie_derivation(D)
    if not ok:
        raise NotLieDerivation(f"fails on pair {wit}")
    if n % ctx.p == 0:
        raise VerificationFailed(f"p = {ctx.p} divides n = {n}; trace splitting undefined")
    inv_n = int(ctx.inv(n % ctx.p))
    one = identity(n)
    zeta = LinMap.from_function(
        ctx, n, lambda x: ctx.mul(ctx.scale(inv_n, trace(ctx, D(x)))[..., None, None], one))
    tau = D - zeta
    ok, wit = is_derivation(tau)
    if not ok:
        raise VerificationFailed(f"tau is not a derivation on pair {wit}")
    x, y = _pairs(n)
    if zeta(bracket(ctx, x, y)).any():
        raise VerificationFailed("zeta does not vanish on [R, R]")
    img = flatten(zeta(units(n)))
    if not (img[:, [i * n + j for i in range(n) for j in range(n) if i != j]] == 0).all() or \
            not (img[:, [i * n + i for i in range(n)]] == img[:, [0]]).all():
        raise VerificationFailed("zeta is not central-valued")
    return MartindaleSplit(tau, zeta, not zeta(one).any())


def inner_generator(tau: LinMap):
    """Some ``s`` with ``ad s == tau``, or ``None`` if ``tau`` is not inner."""
    ctx, n = tau.ctx, tau.n
    # columns of ad: ad(E_ab) flattened, one per unknown entry s_ab
    A = np.stack([ad(ctx, u).matrix.reshape(-1) for u in units(n)])
    c = linalg.solve_left(ctx, A, tau.matrix.reshape(-1))
    return None if c is None else unflatten(c, n)


# -- corollary check --------------------------------------------------------

@dataclass
class CorollaryReport:
    identity_in_r1: bool
    identity_degree: object        # degree of 1 if homogeneous, else None
    lie_ok: bool
    associative_ok: bool
    falsification: bool
    verdict: str
    witness: object = None

    def __bool__(self):
        return not self.falsification


def check_corollary_p_grading(gr: Grading, p: int | None = None, n: int | None = None) -> CorollaryReport:
    """Test "a Lie grading of M_n by a p-group is associative iff 1 is in R_1".

    A falsification is any outcome contradicting that statement; it
    signals a bug, never a property of the input.
    """
    ctx = gr.ctx
    p = ctx.p if p is None else p
    n = gr.n if n is None else n
    if p != ctx.p or n != gr.n:
        raise HypothesisViolated("p or n does not match the grading")
    if p == 2:
        raise HypothesisViolated("p = 2")
    if n % p == 0:
        raise HypothesisViolated(f"p = {p} divides n = {n}")
    if not gr.group.is_p_group(p):
        raise HypothesisViolated(f"{gr.group} is not a {p}-group")
    lie = verify_grading(gr, "lie")
    if not lie.ok:
        raise HypothesisViolated("input is not a Lie grading")
    parts = gr.decompose(identity(n))
    degree = next(iter(parts)) if len(parts) == 1 else None
    in_r1 = degree is not None and degree.is_identity
    assoc = verify_grading(gr, "associative")
    if in_r1:
        falsified = not assoc.ok
        verdict = "associative" if assoc.ok else "FALSIFIED: 1 in R_1 but not associative"
        witness = assoc.violations[0] if assoc.violations else None
    else:
        falsified = assoc.ok
        verdict = "not associative (1 not in R_1)" if not assoc.ok else "FALSIFIED: associative without 1 in R_1"
        witness = None
    return CorollaryReport(in_r1, degree, True, assoc.ok, falsified, verdict, witness)


# -- generalized Leibniz laws -----------------------------------------------

@dataclass
class LeibnizReport:
    q: int
    associative_ok: bool
    lie_ok: bool
    lower_ok: dict = field(default_factory=dict)     # m -> bool, the laws for delta^(m), m < q
    triple_ok: bool = True
    triples: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.associative_ok and self.lie_ok and all(self.lower_ok.values()) and self.triple_ok

    def __bool__(self):
        return self.ok


def _law_holds(ctx, ops, m, X, Y, mode):
    """``delta^(m)(x*y) == sum_{i+j=m} (delta^(i) x)*(delta^(j) y)`` for all pairs of X, Y."""
    prod = (lambda a, b: bracket(ctx, a, b)) if mode == "lie" else ctx.matmul
    lhs = ops[m](prod(X[:, None], Y[None, :]))
    rhs = np.zeros_like(lhs)
    for i in range(m + 1):
        rhs = ctx.add(rhs, prod(ops[i](X)[:, None], ops[m - i](Y)[None, :]))
    return bool(np.array_equal(lhs, rhs))


def _triple_failures(ctx, ops, m, x, y, z, mode):
    """Mask of the stacked triples violating the three-factor expansion law."""
    if mode == "lie":
        def prod3(a, b, c):
            return bracket(ctx, a, bracket(ctx, b, c))
    else:
        def prod3(a, b, c):
            return ctx.matmul(ctx.matmul(a, b), c)
    dx, dy, dz = ([op(v) for op in ops[:m + 1]] for v in (x, y, z))
    lhs = ops[m](prod3(x, y, z))
    rhs = np.zeros_like(lhs)
    for i in range(m + 1):
        for j in range(m + 1 - i):
            rhs = ctx.add(rhs, prod3(dx[i], dy[j], dz[m - i - j]))
    return (lhs != rhs).any(axis=(-1, -2))


def divided_power_operators(gr: Grading, upto: int | None = None):
    """The maps ``x -> delta^(m) . x`` for ``m <= upto`` on a grading by a cyclic p-group."""
    ctx = gr.ctx
    fs = divided_powers(gr.group, ctx)
    ops = []
    for f in fs[:None if upto is None else upto + 1]:
        A = action_matrix(f, gr)
        ops.append(lambda x, A=A: unflatten(ctx.matmul(flatten(x), A), gr.n))
    return ops


def generalized_leibniz_check(gr: Grading, q: int | None = None, triples: int = 50,
                              seed: int = 0) -> LeibnizReport:
    """Expansion laws for ``sigma = delta^(q)`` (default ``q = p^(N-1)``) on a Z_{p^N}-grading.

    Checks the product and commutator forms on all pairs of matrix units,
    the same product law for every ``delta^(m)`` with ``m < q``, and the
    three-factor forms on ``triples`` random triples.
    """
    ctx = gr.ctx
    p = ctx.p
    G = gr.group
    if not G.is_cyclic_p_power(p):
        raise GroupNotCyclicPPower(f"{G} is not a cyclic {p}-group")
    if q is None:
        q = G.order // p
    ops = divided_power_operators(gr, q)
    U = units(gr.n)
    rep = LeibnizReport(q, _law_holds(ctx, ops, q, U, U, "associative"),
                        _law_holds(ctx, ops, q, U, U, "lie"))
    for m in range(q):
        rep.lower_ok[m] = _law_holds(ctx, ops, m, U, U, "associative")
    rng = np.random.default_rng(seed)
    x, y, z = rng.integers(0, ctx.q, size=(3, triples, gr.n, gr.n), dtype=np.int64)
    for mode in ("associative", "lie"):
        bad = _triple_failures(ctx, ops, q, x, y, z, mode)
        if bad.any():
            rep.triple_ok = False
            rep.failures.extend((mode, x[t], y[t], z[t]) for t in np.flatnonzero(bad))
    rep.triples = triples
    if not rep.associative_ok:
        rep.failures.append("pairwise product law")
    if not rep.lie_ok:
        rep.failures.append("pairwise bracket law")
    return rep


def invariant_idempotent(gr: Grading, e, q: int | None = None) -> bool:
    """``delta^(m) . e == 0`` for ``1 <= m < q``."""
    if q is None:
        q = gr.group.order // gr.ctx.p
    fs = divided_powers(gr.group, gr.ctx)
    return all(not act(fs[m], gr, e).any() for m in range(1, q))
