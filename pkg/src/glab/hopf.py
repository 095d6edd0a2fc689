"""The dual Hopf algebra K = (FG)* of a finite abelian group and its action on graded matrices.

Elements of K are stored by their values on G, i.e. their coordinates in
the basis ``{e_g}`` dual to the group basis.  In these coordinates the
product is pointwise and ``Delta(f)(g, h) = f(gh)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from . import linalg
from .ff import FieldCtx, FieldElem, FieldError, binom_mod_p
from .grading import (Grading, NotInGradedSpace, Subspace, graded_space_kind, sl_basis)
from .groups import AbelianGroup, AddCharacter, GroupElem, GroupError, MultCharacter
from .matrices import bracket, flatten, unflatten, units


class HopfError(ValueError):
    pass


class GroupNotCyclicPPower(HopfError):
    pass


def _same(f, g):
    if f.group != g.group or f.ctx != g.ctx:
        raise HopfError("elements of different dual algebras")


class DualElem:
    """An element of K, given by its coefficient on each ``e_g``."""

    __slots__ = ("group", "ctx", "coeffs")

    def __init__(self, group: AbelianGroup, ctx: FieldCtx, coeffs):
        c = np.asarray(coeffs, dtype=np.int64).reshape(group.order)
        c.setflags(write=False)
        self.group = group
        self.ctx = ctx
        self.coeffs = c

    def __call__(self, g: GroupElem) -> FieldElem:
        return FieldElem(self.ctx, int(self.coeffs[self.group.index(g)]))

    def __add__(self, other):
        _same(self, other)
        return DualElem(self.group, self.ctx, self.ctx.add(self.coeffs, other.coeffs))

    def __sub__(self, other):
        _same(self, other)
        return DualElem(self.group, self.ctx, self.ctx.sub(self.coeffs, other.coeffs))

    def __neg__(self):
        return DualElem(self.group, self.ctx, self.ctx.neg(self.coeffs))

    def __mul__(self, other):
        if isinstance(other, DualElem):
            return dual_product(self, other)
        c = self.ctx.encode(other)
        return DualElem(self.group, self.ctx, self.ctx.scale(c, self.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return DualElem(self.group, self.ctx, self.ctx.pow(self.coeffs, e))

    def __eq__(self, other):
        return (isinstance(other, DualElem) and self.group == other.group and self.ctx == other.ctx
                and np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.group, self.coeffs.tobytes()))

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def __repr__(self):
        terms = [f"{FieldElem(self.ctx, c)!r}*e{g}" for g, c in zip(self.group, self.coeffs) if c]
        return " + ".join(terms) or "0"


class DualTensor:
    """An element of K^(x r), as an r-dimensional coefficient array over G^r."""

    __slots__ = ("group", "ctx", "coeffs")

    def __init__(self, group: AbelianGroup, ctx: FieldCtx, coeffs):
        c = np.asarray(coeffs, dtype=np.int64)
        if any(s != group.order for s in c.shape):
            raise HopfError("tensor coefficients must be indexed by G in every slot")
        self.group = group
        self.ctx = ctx
        self.coeffs = c

    @property
    def arity(self) -> int:
        return self.coeffs.ndim

    def __add__(self, other):
        _same(self, other)
        return DualTensor(self.group, self.ctx, self.ctx.add(self.coeffs, other.coeffs))

    def __eq__(self, other):
        return (isinstance(other, DualTensor) and self.group == other.group and self.ctx == other.ctx
                and np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.group, self.coeffs.tobytes()))

    def __repr__(self):
        return f"DualTensor(arity={self.arity}, nonzero={int(np.count_nonzero(self.coeffs))})"


def tensor(*fs: DualElem) -> DualTensor:
    f0 = fs[0]
    out = f0.coeffs
    for f in fs[1:]:
        _same(f0, f)
        out = f0.ctx.mul(out[..., None], f.coeffs)
    return DualTensor(f0.group, f0.ctx, out)


# -- Hopf structure ---------------------------------------------------------

def unit(G: AbelianGroup, ctx: FieldCtx) -> DualElem:
    """``sum_g e_g``."""
    return DualElem(G, ctx, np.ones(G.order, dtype=np.int64))


def e(G: AbelianGroup, ctx: FieldCtx, g: GroupElem) -> DualElem:
    c = np.zeros(G.order, dtype=np.int64)
    c[G.index(g)] = 1
    return DualElem(G, ctx, c)


def dual_basis(G: AbelianGroup, ctx: FieldCtx) -> list[DualElem]:
    return [e(G, ctx, g) for g in G]


def dual_product(f: DualElem, h: DualElem) -> DualElem:
    _same(f, h)
    return DualElem(f.group, f.ctx, f.ctx.mul(f.coeffs, h.coeffs))


def dual_coproduct(f: DualElem) -> DualTensor:
    return DualTensor(f.group, f.ctx, f.coeffs[f.group.mul_table])


def counit(f: DualElem) -> FieldElem:
    return FieldElem(f.ctx, int(f.coeffs[0]))


def antipode(f: DualElem) -> DualElem:
    return DualElem(f.group, f.ctx, f.coeffs[f.group.inv_table])


def coproduct_slot(t: DualTensor, slot: int) -> DualTensor:
    """Apply Delta in tensor slot ``slot``; arity grows by one."""
    c = np.moveaxis(t.coeffs, slot, 0)
    c = c[t.group.mul_table]               # new axes (a, b) replace the old slot
    c = np.moveaxis(c, (0, 1), (slot, slot + 1))
    return DualTensor(t.group, t.ctx, c)


def counit_slot(t: DualTensor, slot: int) -> DualTensor:
    return DualTensor(t.group, t.ctx, np.take(t.coeffs, 0, axis=slot))


def antipode_slot(t: DualTensor, slot: int) -> DualTensor:
    return DualTensor(t.group, t.ctx, np.take(t.coeffs, t.group.inv_table, axis=slot))


def multiply_slots(t: DualTensor) -> DualElem:
    """The multiplication ``K (x) K -> K`` applied to a 2-tensor."""
    if t.arity != 2:
        raise HopfError("multiplication needs a 2-tensor")
    return DualElem(t.group, t.ctx, np.diagonal(t.coeffs).copy())


def as_elem(t: DualTensor) -> DualElem:
    if t.arity != 1:
        raise HopfError("not a 1-tensor")
    return DualElem(t.group, t.ctx, t.coeffs)


def is_grouplike(f: DualElem) -> bool:
    if f.is_zero():
        return False
    return dual_coproduct(f) == tensor(f, f)


def is_primitive(f: DualElem) -> bool:
    one = unit(f.group, f.ctx)
    return dual_coproduct(f) == tensor(f, one) + tensor(one, f)


def lift_mult_char(chi: MultCharacter) -> DualElem:
    """``sum_g chi(g) e_g``."""
    return DualElem(chi.group, chi.ctx, chi.array())


def lift_add_char(alpha: AddCharacter, ctx: FieldCtx) -> DualElem:
    """``sum_g alpha(g) e_g``; prime-field values are valid codes of ``ctx``."""
    if alpha.p != ctx.p:
        raise FieldError(f"additive character mod {alpha.p} over {ctx}")
    return DualElem(alpha.group, ctx, alpha.array())


# -- divided powers ---------------------------------------------------------

def _check_cyclic(G: AbelianGroup, p: int):
    if not G.is_cyclic_p_power(p):
        raise GroupNotCyclicPPower(f"{G} is not a cyclic {p}-group")


@lru_cache(maxsize=64)
def _divided_powers(G: AbelianGroup, ctx: FieldCtx) -> tuple[DualElem, ...]:
    return tuple(factor_divided_power(G, 0, m, ctx) for m in range(G.order))


def divided_powers(G: AbelianGroup, ctx: FieldCtx) -> list[DualElem]:
    """``delta^(m)`` for ``m < |G|``, the basis dual to ``xi^m`` with ``xi = a - 1``.

    Since ``a^s = (1 + xi)^s``, ``delta^(m)(a^s) = C(s, m) mod p``.
    """
    _check_cyclic(G, ctx.p)
    return list(_divided_powers(G, ctx))


def divided_power_basis(N: int, p: int, ctx: FieldCtx) -> list[DualElem]:
    if ctx.p != p:
        raise FieldError(f"field {ctx} has characteristic {ctx.p}, not {p}")
    return divided_powers(AbelianGroup((p ** N,)), ctx)


def factor_divided_power(G: AbelianGroup, i: int, m: int, ctx: FieldCtx) -> DualElem:
    """Divided power of the i-th cyclic factor, inflated to G."""
    d = G.orders[i]
    if not AbelianGroup((d,)).is_p_group(ctx.p):
        raise GroupNotCyclicPPower(f"factor Z{d} of {G} is not a {ctx.p}-group")
    vals = [binom_mod_p(int(s), m, ctx.p) for s in G.exps_array[:, i]]
    return DualElem(G, ctx, vals)


def p_group_generators(G: AbelianGroup, ctx: FieldCtx) -> list[DualElem]:
    """``delta_i^(p^k)`` for every factor i and ``p^k < d_i``; these generate K for a p-group."""
    p = ctx.p
    if not G.is_p_group(p):
        raise GroupNotCyclicPPower(f"{G} is not a {p}-group")
    out = []
    for i, d in enumerate(G.orders):
        m = 1
        while m < d:
            out.append(factor_divided_power(G, i, m, ctx))
            m *= p
    return out


@lru_cache(maxsize=None)
def _pascal_inverse(p: int, order: int, ctx: FieldCtx) -> np.ndarray:
    P = np.array([[binom_mod_p(s, m, p) for s in range(order)] for m in range(order)], dtype=np.int64)
    return linalg.inverse(ctx, P)


def divided_power_coords(f: DualElem) -> np.ndarray:
    """Coordinates of ``f`` in the basis ``delta^(0), ..., delta^(|G|-1)`` of a cyclic p-group."""
    _check_cyclic(f.group, f.ctx.p)
    return f.ctx.matmul(f.coeffs, _pascal_inverse(f.ctx.p, f.group.order, f.ctx))


# -- action on graded matrices ---------------------------------------------

def action_matrix(f: DualElem, gr: Grading) -> np.ndarray:
    """``(N, N)`` matrix of ``x -> f . x`` on flattened row vectors."""
    if f.group != gr.group or f.ctx != gr.ctx:
        raise HopfError("dual element and grading do not match")
    return gr.weighted_map(f.coeffs)


def _check_in_space(gr: Grading, x):
    c = gr.coordinates(x)
    D = gr.frame.basis.shape[0]
    if c[..., D:].any():
        raise NotInGradedSpace("matrix has a component outside the graded space")


def act(f: DualElem, gr: Grading, x) -> np.ndarray:
    """``f . x = sum_g f(g) x_g`` for ``x = sum_g x_g``; works on stacks of matrices."""
    x = np.asarray(x, dtype=np.int64)
    _check_in_space(gr, x)
    return unflatten(f.ctx.matmul(flatten(x), action_matrix(f, gr)), gr.n)


def comodule_map(gr: Grading, x) -> list[tuple[np.ndarray, GroupElem]]:
    """``rho(x) = sum_g x_g (x) g`` as a list of (component, degree)."""
    return [(xg, g) for g, xg in gr.decompose(x).items()]


def comodule_coassociative(gr: Grading, x) -> bool:
    """Check ``(rho (x) id) rho(x) == (id (x) Delta) rho(x)``, decomposing twice."""
    lhs = {}
    for xg, g in comodule_map(gr, x):
        for xgg, g2 in comodule_map(gr, xg):
            lhs[(g2, g)] = xgg
    # Delta(g) = g (x) g in FG
    rhs = {(g, g): xg for xg, g in comodule_map(gr, x)}
    return lhs.keys() == rhs.keys() and all(np.array_equal(lhs[k], rhs[k]) for k in lhs)


def ambient_basis(gr: Grading) -> np.ndarray:
    """Basis matrices of the graded space's ambient: matrix units, or the sl_n basis."""
    if graded_space_kind(gr) == "sl":
        return unflatten(sl_basis(gr.ctx, gr.n), gr.n)
    return units(gr.n)


@dataclass
class ModuleViolation:
    generator: int
    x: np.ndarray
    y: np.ndarray


@dataclass
class ModuleAlgebraReport:
    mode: str
    ok: bool
    checked: int
    violations: list[ModuleViolation] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _prod(ctx, mode, a, b):
    return bracket(ctx, a, b) if mode == "lie" else ctx.matmul(a, b)


def verify_module_algebra(gr: Grading, mode: str, generators: Sequence[DualElem],
                          basis=None) -> ModuleAlgebraReport:
    """Check ``f.(x*y) = sum (f1.x)*(f2.y)`` with Delta f expanded in the e-basis.

    ``*`` is the matrix product or the commutator.  Checked for every
    generator and every pair of ``basis`` elements (default: the ambient
    basis of the graded space).
    """
    ctx, G = gr.ctx, gr.group
    X = ambient_basis(gr) if basis is None else np.asarray(basis, dtype=np.int64)
    supp = list(gr.components)
    idx = np.array([G.index(g) for g in supp], dtype=np.int64)
    # components of every basis element: (|supp|, d, n, n)
    comps = np.stack([unflatten(ctx.matmul(flatten(X), gr.projection(g)), gr.n) for g in supp]) \
        if supp else np.zeros((0,) + X.shape, dtype=np.int64)
    P = _prod(ctx, mode, X[:, None], X[None, :])
    coords = gr.coordinates(P)
    D = gr.frame.basis.shape[0]
    outside = coords[..., D:].any(axis=-1)
    violations = []
    for t, f in enumerate(generators):
        lhs = unflatten(ctx.matmul(flatten(P), action_matrix(f, gr)), gr.n)
        rhs = np.zeros_like(P)
        delta = f.coeffs[G.mul_table[idx[:, None], idx[None, :]]]   # (|supp|, |supp|)
        for a in range(len(supp)):
            w = ctx.sum(ctx.mul(delta[a][:, None, None, None], comps), axis=0)  # (d, n, n)
            rhs = ctx.add(rhs, _prod(ctx, mode, comps[a][:, None], w[None, :]))
        bad = (lhs != rhs).any(axis=(-1, -2)) | outside
        for i, j in zip(*np.nonzero(bad)):
            violations.append(ModuleViolation(t, X[i], X[j]))
            break
    checked = len(generators) * X.shape[0] ** 2
    return ModuleAlgebraReport(mode, not violations, checked, violations)


def grading_from_action(G: AbelianGroup, ctx: FieldCtx, n: int,
                        action: Callable[[DualElem, np.ndarray], np.ndarray],
                        basis=None) -> Grading:
    """Recover components as the images ``e_g . V`` of a K-action on ``V``."""
    X = units(n) if basis is None else np.asarray(basis, dtype=np.int64)
    comps = {}
    for g in G:
        img = action(e(G, ctx, g), X)
        comps[g] = Subspace(ctx, n, flatten(img))
    return Grading(G, ctx, n, comps)


def is_submodule(gr: Grading, V: Subspace) -> bool:
    """Invariance of ``V`` under every ``e_g``."""
    if not V.dim:
        return True
    X = V.matrices()
    for g in gr.group:
        img = act(e(gr.group, gr.ctx, g), gr, X)
        if not Subspace(gr.ctx, gr.n, flatten(img)).issubset(V):
            return False
    return True


def is_graded_subspace(gr: Grading, V: Subspace) -> bool:
    """``V == sum_g (V & R_g)``."""
    return sum((V & W).dim for W in gr.components.values()) == V.dim


def grouplike_census(G: AbelianGroup, ctx: FieldCtx) -> int:
    """Count group-like elements of K by brute force over generator images.

    A group-like element is a homomorphism ``G -> F^x``, so it is fixed by
    the images of the generators; each image must satisfy ``x^d = 1``.
    Every candidate is tested with :func:`is_grouplike`.
    """
    codes = ctx.all_codes[1:]
    roots = [codes[ctx.pow(codes, d) == 1] for d in G.orders]
    ex = G.exps_array
    count = 0
    for images in itertools.product(*roots):
        vals = np.ones(G.order, dtype=np.int64)
        for i, (r, d) in enumerate(zip(images, G.orders)):
            powers = np.array([int(ctx.pow(int(r), t)) for t in range(d)], dtype=np.int64)
            vals = ctx.mul(vals, powers[ex[:, i]])
        if is_grouplike(DualElem(G, ctx, vals)):
            count += 1
    return count


def primitive_dimension(G: AbelianGroup, ctx: FieldCtx) -> int:
    """Dimension of the primitive space, from the linear system ``f(gh) = f(g) + f(h)``."""
    n = G.order
    rows = np.zeros((n * n, n), dtype=np.int64)
    mt = G.mul_table.reshape(-1)
    r = np.arange(n * n)
    rows[r, mt] = 1
    gi = np.repeat(np.arange(n), n)
    hi = np.tile(np.arange(n), n)
    rows[r, gi] = ctx.sub(rows[r, gi], 1)
    rows[r, hi] = ctx.sub(rows[r, hi], 1)
    return n - linalg.rank(ctx, rows)
