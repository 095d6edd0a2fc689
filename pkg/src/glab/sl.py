"""Gradings of sl_n: type I and type II constructions, involutions of the
first kind, the exchange of compatible gradings, and a candidate-based
classifier."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .ff import FieldCtx
from .grading import (Grading, GradingError, Subspace, compatible, elementary_grading,
                      factor_grading, sl_basis, verify_grading)
from .groups import AbelianGroup, GroupElem, quotient_group
from .matrices import bracket, flatten, identity, inverse, transpose, unflatten, units


class SlError(GradingError):
    pass


class PDividesN(SlError):
    pass


class ComponentNotTraceless(SlError):
    pass


class NotInvariant(SlError):
    pass


class OrderNotTwo(SlError):
    pass


class InvolutionNotPreserving(SlError):
    def __init__(self, witness, msg=None):
        self.witness = witness
        super().__init__(msg or f"involution moves {witness}")


class NotCompatible(SlError):
    def __init__(self, g):
        self.witness = g
        super().__init__(f"component at {g} is not split by the other grading")


class FactorGradingsDiffer(SlError):
    def __init__(self, coset):
        self.witness = coset
        super().__init__(f"factor gradings differ at coset {coset}")


class PreconditionFailed(SlError):
    pass


class SearchExhausted(SlError):
    pass


# -- involutions ------------------------------------------------------------

class Antiautomorphism:
    """``x -> Phi^-1 x^T Phi`` for an invertible ``Phi``."""

    def __init__(self, ctx: FieldCtx, Phi):
        self.ctx = ctx
        self.Phi = np.asarray(Phi, dtype=np.int64)
        self.n = self.Phi.shape[0]
        self.Phi_inv = inverse(ctx, self.Phi)

    def __call__(self, x) -> np.ndarray:
        return self.ctx.matmul(self.ctx.matmul(self.Phi_inv, transpose(x)), self.Phi)

    def matrix(self) -> np.ndarray:
        """Matrix on flattened row vectors."""
        return flatten(self(units(self.n)))

    def square_conjugator(self) -> np.ndarray:
        """``u`` with ``phi^2 = conj(u)``, namely ``Phi^-1 Phi^T``."""
        return self.ctx.matmul(self.Phi_inv, transpose(self.Phi))

    def __repr__(self):
        return f"{type(self).__name__}(Phi={self.Phi.tolist()})"


class Involution(Antiautomorphism):
    """An involution of the first kind: ``Phi^T = sign * Phi``."""

    def __init__(self, ctx: FieldCtx, Phi, sign: int | None = None):
        super().__init__(ctx, Phi)
        PhiT = transpose(self.Phi)
        if sign is None:
            sign = 1 if np.array_equal(PhiT, self.Phi) else -1
        if sign not in (1, -1) or not np.array_equal(PhiT, ctx.scale(ctx.encode(sign), self.Phi)):
            raise SlError(f"Phi^T != {sign} * Phi")
        self.sign = sign


def transpose_involution(ctx: FieldCtx, n: int) -> Involution:
    return Involution(ctx, identity(n), 1)


def antidiagonal_involution(ctx: FieldCtx, n: int) -> Involution:
    return Involution(ctx, np.eye(n, dtype=np.int64)[::-1].copy(), 1)


def symplectic_involution(ctx: FieldCtx, n: int) -> Involution:
    """``Phi = [[0, I], [-I, 0]]`` for even n."""
    if n % 2:
        raise SlError("the symplectic involution needs even n")
    m = n // 2
    Phi = np.zeros((n, n), dtype=np.int64)
    Phi[:m, m:] = np.eye(m, dtype=np.int64)
    Phi[m:, :m] = ctx.neg(np.eye(m, dtype=np.int64))
    return Involution(ctx, Phi, -1)


def apply_involution(inv: Antiautomorphism, x) -> np.ndarray:
    return inv(np.asarray(x, dtype=np.int64))


def involution_preserves(inv: Antiautomorphism, gr: Grading):
    """Whether ``phi(R_g) = R_g`` for every g; returns (ok, witness) with witness ``(x, g)``."""
    ctx = gr.ctx
    for g, V in gr.components.items():
        images = inv(V.matrices())
        for x, y in zip(V.matrices(), images):
            if y.any() and not V.contains(y):
                return False, (x, g)
    return True, None


# -- sl_n and type I --------------------------------------------------------

def sl_subspace(n: int, ctx: FieldCtx) -> Subspace:
    if n % ctx.p == 0:
        raise PDividesN(f"p = {ctx.p} divides n = {n}")
    L = Subspace(ctx, n, sl_basis(ctx, n), canonical=True)
    if L.contains(identity(n)):
        raise PDividesN("identity is trace-zero")
    return L


def _is_sl_grading(gr: Grading) -> bool:
    L = sl_subspace(gr.n, gr.ctx)
    return gr.dim == L.dim and all(V <= L for V in gr.components.values())


def type1_grading(assoc: Grading) -> Grading:
    """``L_g = R_g`` for ``g != 1`` and ``L_1 = R_1 & L``."""
    ctx, n = assoc.ctx, assoc.n
    L = sl_subspace(n, ctx)
    comps = {}
    for g, V in assoc.components.items():
        if g.is_identity:
            comps[g] = V & L
        else:
            if not V <= L:
                raise ComponentNotTraceless(f"R_{g} is not trace-zero")
            comps[g] = V
    out = Grading(assoc.group, ctx, n, comps)
    if out.dim != n * n - 1:
        raise ComponentNotTraceless(f"type I components have total dimension {out.dim}")
    return out


# -- symmetric split and type II -------------------------------------------

def symmetric_split(inv: Antiautomorphism, V: Subspace) -> tuple[Subspace, Subspace]:
    """``(K, H)``: the parts of ``V`` on which ``phi`` acts as -1 and +1."""
    ctx = inv.ctx
    X = V.matrices()
    Y = inv(X)
    if any(not V.contains(y) for y in Y if y.any()):
        raise NotInvariant("subspace is not invariant under the involution")
    if ctx.p == 2:
        raise SlError("characteristic 2")
    half = int(ctx.inv(2))
    K = ctx.scale(half, ctx.sub(X, Y))
    H = ctx.scale(half, ctx.add(X, Y))
    return Subspace(ctx, V.n, flatten(K)), Subspace(ctx, V.n, flatten(H))


def _check_type2_inputs(assoc: Grading, inv: Antiautomorphism, h: GroupElem):
    if h.is_identity or not (h * h).is_identity:
        raise OrderNotTwo(f"{h} does not have order 2")
    ok, wit = involution_preserves(inv, assoc)
    if not ok:
        raise InvolutionNotPreserving(wit)


def twisted_lie_grading(assoc: Grading, inv: Antiautomorphism, h: GroupElem) -> Grading:
    """The regrading of all of M_n with ``R'_g = K(R_g) + H(R_gh)``; here 1 lies in ``R'_h``."""
    _check_type2_inputs(assoc, inv, h)
    ctx, n = assoc.ctx, assoc.n
    split = {g: symmetric_split(inv, V) for g, V in assoc.components.items()}
    zero = Subspace.zero(ctx, n)
    comps = {}
    for g in assoc.group:
        K = split[g][0] if g in split else zero
        H = split[g * h][1] if g * h in split else zero
        comps[g] = K + H
    return Grading(assoc.group, ctx, n, comps)


def type2_grading(assoc: Grading, inv: Antiautomorphism, h: GroupElem) -> Grading:
    """``L_g = K(R_g) + H(R_gh)`` for ``g != h`` and ``L_h = K(R_h) + (H(R_1) & L)``."""
    L = sl_subspace(assoc.n, assoc.ctx)
    tw = twisted_lie_grading(assoc, inv, h)
    comps = dict(tw.components)
    if h in comps:
        comps[h] = comps[h] & L
    return Grading(assoc.group, assoc.ctx, assoc.n, comps)


# -- exchange ---------------------------------------------------------------

@dataclass
class ExchangeReport:
    H: list
    identity_ok: bool
    direct_sum_ok: bool
    closure_ok: bool
    mode: str
    witness: object = None

    @property
    def ok(self) -> bool:
        return self.identity_ok and self.direct_sum_ok and self.closure_ok

    def __bool__(self):
        return self.ok


def exchange(grA: Grading, grB: Grading, H_gens: Sequence[GroupElem], mode: str = "lie"):
    """Build ``R^h = sum_g (B_g & A_gh)`` for ``h`` in ``H = <H_gens>``.

    ``grA`` plays R and ``grB`` plays R~.  Returns the family as a dict
    ``h -> Subspace`` and a report checking ``A_g = sum_h (B_{g h^-1} & R^h)``,
    that the family is direct, and that ``R^h1 R^h2`` lies in ``R^{h1 h2}``
    under ``mode`` ("lie" or "associative").
    """
    ok, g = compatible(grA, grB)
    if not ok:
        raise NotCompatible(g)
    G, ctx, n = grA.group, grA.ctx, grA.n
    H = G.subgroup(list(H_gens))
    fa, fb = factor_grading(grA, H_gens), factor_grading(grB, H_gens)
    if fa != fb:
        coset = next(c for c in fa.group if fa[c] != fb[c])
        raise FactorGradingsDiffer(coset)
    family = {}
    for h in H:
        total = Subspace.zero(ctx, n)
        for g, V in grB.components.items():
            total = total + (V & grA[g * h])
        family[h] = total
    rep = ExchangeReport(list(H), True, True, True, mode)
    for g in G:
        rebuilt = Subspace.zero(ctx, n)
        for h in H:
            rebuilt = rebuilt + (grB[g * h.inverse()] & family[h])
        if rebuilt != grA[g]:
            rep.identity_ok = False
            rep.witness = ("identity", g)
            break
    if sum(V.dim for V in family.values()) != (sum((V for V in family.values()),
                                                   Subspace.zero(ctx, n))).dim:
        rep.direct_sum_ok = False
    for h1, h2 in itertools.product(H, repeat=2):
        X, Y = family[h1].matrices(), family[h2].matrices()
        if not len(X) or not len(Y):
            continue
        x, y = X[:, None], Y[None, :]
        prods = bracket(ctx, x, y) if mode == "lie" else ctx.matmul(x, y)
        target = family[h1 * h2]
        if not all(target.contains(z) for z in prods.reshape(-1, n, n) if z.any()):
            rep.closure_ok = False
            rep.witness = ("closure", h1, h2)
            break
    return family, rep


# -- correcting an antiautomorphism -----------------------------------------

@dataclass
class Correction:
    u: np.ndarray
    candidates_tried: int

    def __call__(self, ctx: FieldCtx, x) -> np.ndarray:
        return ctx.matmul(ctx.matmul(self.u, x), inverse(ctx, self.u))


def _proportional(ctx, a, b) -> bool:
    """``a = c b`` for some nonzero scalar c."""
    i = np.flatnonzero(b.reshape(-1))
    if not len(i):
        return not a.any()
    c = ctx.mul(a.reshape(-1)[i[0]], ctx.inv(b.reshape(-1)[i[0]]))
    return c != 0 and np.array_equal(a, ctx.scale(c, b))


def _preserves(ctx, u, u_inv, gr: Grading) -> bool:
    for V in gr.components.values():
        img = ctx.matmul(ctx.matmul(u, V.matrices()), u_inv)
        if any(not V.contains(y) for y in img):
            return False
    return True


def monomial_matrices(ctx: FieldCtx, n: int, scalars: Iterable[int] | None = None):
    """Monomial matrices, ordered by permutation then by entry codes; the first entry is 1."""
    scalars = [int(c) for c in (scalars if scalars is not None else range(1, ctx.q))]
    for perm in itertools.permutations(range(n)):
        for vals in itertools.product(scalars, repeat=n - 1):
            u = np.zeros((n, n), dtype=np.int64)
            u[np.arange(n), perm] = (1,) + vals
            yield u


def correct_antiautomorphism(assoc: Grading, phi: Antiautomorphism, cap: int = 100_000,
                             scalars: Iterable[int] | None = None) -> Correction:
    """Find ``psi = conj(u)`` preserving the grading with ``phi psi = psi phi`` and ``psi^2 = phi^2``.

    ``u`` runs over monomial matrices with entries in ``scalars`` (default
    all nonzero field elements); at most ``cap`` candidates are tried.
    """
    ctx, n = assoc.ctx, assoc.n
    ok, wit = involution_preserves(phi, assoc)
    if not ok:
        raise PreconditionFailed(f"phi does not preserve the grading: {wit}")
    one = assoc.components.get(assoc.group.identity)
    if one is not None and one.dim:
        X = one.matrices()
        if not np.array_equal(phi(phi(phi(phi(X)))), X):
            raise PreconditionFailed("phi^2 is not an involution on the identity component")
    target = phi.square_conjugator()
    if _proportional(ctx, target, identity(n)):
        return Correction(identity(n), 0)
    U = units(n)
    phiU = phi(U)
    tried = 0
    for u in monomial_matrices(ctx, n, scalars):
        tried += 1
        if tried > cap:
            break
        if not _proportional(ctx, ctx.matmul(u, u), target):
            continue
        u_inv = inverse(ctx, u)
        if not _preserves(ctx, u, u_inv, assoc):
            continue
        lhs = phi(ctx.matmul(ctx.matmul(u, U), u_inv))
        rhs = ctx.matmul(ctx.matmul(u, phiU), u_inv)
        if np.array_equal(lhs, rhs):
            return Correction(u, tried)
    raise SearchExhausted(f"no monomial correction among {min(tried, cap)} candidates")


# -- classification ---------------------------------------------------------

@dataclass
class Classification:
    kind: str                      # "TypeI", "TypeII" or "Unknown"
    index: int | None = None
    candidate: object = None
    tried: int = 0

    def __bool__(self):
        return self.kind != "Unknown"


def enumerate_elementary_candidates(G: AbelianGroup, n: int, ctx: FieldCtx):
    """All elementary gradings of M_n by G with ``g_1 = 1``.

    Translating a tuple does not change its grading, so this is every
    elementary grading exactly once per tuple class.
    """
    for rest in itertools.product(list(G), repeat=n - 1):
        yield (elementary_grading(G, n, (G.identity,) + rest, ctx), None)


def classify_sl_grading(slg: Grading, candidates=None) -> Classification:
    """First candidate whose type I or type II image equals ``slg`` componentwise.

    ``candidates`` holds pairs ``(assoc, None)`` or ``(assoc, (involution, h))``;
    by default all elementary gradings are enumerated.
    """
    if candidates is None:
        candidates = enumerate_elementary_candidates(slg.group, slg.n, slg.ctx)
    tried = 0
    for i, (assoc, extra) in enumerate(candidates):
        tried += 1
        try:
            if extra is None:
                if type1_grading(assoc) == slg:
                    return Classification("TypeI", i, (assoc, None), tried)
            else:
                inv, h = extra
                if type2_grading(assoc, inv, h) == slg:
                    return Classification("TypeII", i, (assoc, extra), tried)
        except SlError:
            continue
    return Classification("Unknown", None, None, tried)
