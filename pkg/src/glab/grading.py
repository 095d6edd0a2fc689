"""Subspaces of M_n(F) and group gradings on M_n and sl_n.

A :class:`Subspace` is stored as the reduced row-echelon basis of its
row-major flattened matrices, so equality, membership and inclusion are
structural.  A :class:`Grading` maps group elements to subspaces; zero
components are omitted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .ff import FieldCtx, FieldElem, FieldError, root_of_unity, OrderUnavailable
from .groups import AbelianGroup, GroupElem, GroupError, quotient_group
from .matrices import MixedFields, as_matrix, bracket, conjugate, flatten, inverse, kron, unflatten, unit


class GradingError(ValueError):
    pass


class NotDirectSum(GradingError):
    def __init__(self, pair, msg=None):
        self.pair = pair
        super().__init__(msg or f"components {pair[0]} and {pair[1]} intersect nontrivially")


class DimensionMismatch(GradingError):
    pass


class NotInGradedSpace(GradingError):
    pass


class GroupMismatch(GradingError):
    pass


class FieldMismatch(GradingError):
    pass


class CharacteristicDividesM(GradingError):
    pass


class NoRootOfUnity(GradingError):
    pass


class Subspace:
    """A subspace of M_n(F) in canonical (reduced row-echelon) form."""

    __slots__ = ("ctx", "n", "basis", "__weakref__")

    def __init__(self, ctx: FieldCtx, n: int, vectors=None, canonical: bool = False):
        self.ctx = ctx
        self.n = n
        N = n * n
        if vectors is None:
            b = np.zeros((0, N), dtype=np.int64)
        else:
            b = np.asarray(vectors, dtype=np.int64).reshape(-1, N)
            if not canonical and b.shape[0]:
                b = linalg.rref(ctx, b)[0]
        b.setflags(write=False)
        self.basis = b

    @classmethod
    def zero(cls, ctx, n):
        return cls(ctx, n)

    @classmethod
    def full(cls, ctx, n):
        return cls(ctx, n, np.eye(n * n, dtype=np.int64), canonical=True)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __len__(self):
        return self.dim

    def __bool__(self):
        return self.dim > 0

    def matrices(self) -> np.ndarray:
        return unflatten(self.basis, self.n)

    def _compat(self, other):
        if other.ctx != self.ctx or other.n != self.n:
            raise MixedFields("subspaces over different fields or sizes")

    def contains(self, x) -> bool:
        v = flatten(np.asarray(x, dtype=np.int64)).reshape(-1)
        if not v.any():
            return True
        if not self.dim:
            return False
        return linalg.rank(self.ctx, np.vstack([self.basis, v])) == self.dim

    __contains__ = contains

    def __add__(self, other: "Subspace") -> "Subspace":
        self._compat(other)
        return Subspace(self.ctx, self.n, np.vstack([self.basis, other.basis]))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._compat(other)
        if not self.dim or not other.dim:
            return Subspace(self.ctx, self.n)
        # a.U = b.W  <=>  (a, b) in the left kernel of [U; -W]
        stacked = np.vstack([self.basis, self.ctx.neg(other.basis)])
        ker = linalg.left_nullspace(self.ctx, stacked)
        if not ker.shape[0]:
            return Subspace(self.ctx, self.n)
        return Subspace(self.ctx, self.n, self.ctx.matmul(ker[:, :self.dim], self.basis))

    __and__ = intersect

    def issubset(self, other: "Subspace") -> bool:
        self._compat(other)
        return (self + other).dim == other.dim

    __le__ = issubset

    def map(self, fn) -> "Subspace":
        """Image under a linear map given on matrices."""
        if not self.dim:
            return Subspace(self.ctx, self.n)
        return Subspace(self.ctx, self.n, flatten(fn(self.matrices())))

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ctx == other.ctx and self.n == other.n
                and self.basis.shape == other.basis.shape and np.array_equal(self.basis, other.basis))

    def __hash__(self):
        return hash((self.ctx, self.n, self.basis.tobytes()))

    def __repr__(self):
        return f"Subspace(dim={self.dim} in M_{self.n}({self.ctx}))"


def subspace_from_spanners(ctx: FieldCtx, n: int, spanners: Iterable) -> Subspace:
    mats = [as_matrix(ctx, s, n) for s in spanners]
    if not mats:
        return Subspace(ctx, n)
    return Subspace(ctx, n, flatten(np.stack(mats)))


@dataclass
class _Frame:
    basis: np.ndarray        # (D, N) homogeneous basis, grouped by component
    degrees: np.ndarray      # (D,) group-element indices
    completed: np.ndarray    # (N, N) basis extended by standard vectors
    inv: np.ndarray          # inverse of ``completed``


class Grading:
    """A decomposition of (a subspace of) M_n into components indexed by G."""

    def __init__(self, group: AbelianGroup, ctx: FieldCtx, n: int,
                 components: dict[GroupElem, Subspace] | None = None):
        self.group = group
        self.ctx = ctx
        self.n = n
        comps = {}
        for g, V in (components or {}).items():
            if g.group != group:
                raise GroupMismatch(f"degree {g} not in {group}")
            if V.ctx != ctx or V.n != n:
                raise MixedFields("component over a different field or size")
            if V.dim:
                comps[g] = V
        self.components = dict(sorted(comps.items(), key=lambda kv: group.index(kv[0])))

    def __getitem__(self, g: GroupElem) -> Subspace:
        return self.components.get(g) or Subspace(self.ctx, self.n)

    component = __getitem__

    @property
    def dim(self) -> int:
        return sum(V.dim for V in self.components.values())

    @property
    def support(self) -> set[GroupElem]:
        return set(self.components)

    def space(self) -> Subspace:
        if not self.components:
            return Subspace(self.ctx, self.n)
        return Subspace(self.ctx, self.n, np.vstack([V.basis for V in self.components.values()]))

    def __eq__(self, other):
        return (isinstance(other, Grading) and self.group == other.group and self.ctx == other.ctx
                and self.n == other.n and self.components == other.components)

    def __hash__(self):
        return hash((self.group, self.n, tuple(self.components.items())))

    def __repr__(self):
        dims = ", ".join(f"{g}:{V.dim}" for g, V in self.components.items())
        return f"Grading({self.group}, M_{self.n}({self.ctx}); {dims})"

    def check_direct_sum(self):
        """Raise :class:`NotDirectSum` naming an overlapping pair if the sum is not direct."""
        items = list(self.components.items())
        total = self.dim
        if not total:
            return
        if linalg.rank(self.ctx, np.vstack([V.basis for _, V in items])) == total:
            return
        for (g, U), (h, W) in itertools.combinations(items, 2):
            if (U + W).dim < U.dim + W.dim:
                raise NotDirectSum((g, h))
        raise NotDirectSum((None, None), "components are dependent (no pairwise overlap)")

    @cached_property
    def frame(self) -> _Frame:
        self.check_direct_sum()
        N = self.n * self.n
        if self.components:
            B = np.vstack([V.basis for V in self.components.values()])
            deg = np.concatenate([np.full(V.dim, self.group.index(g), dtype=np.int64)
                                  for g, V in self.components.items()])
        else:
            B = np.zeros((0, N), dtype=np.int64)
            deg = np.zeros(0, dtype=np.int64)
        M = linalg.complete_basis(self.ctx, B)
        return _Frame(B, deg, M, linalg.inverse(self.ctx, M))

    def coordinates(self, x) -> np.ndarray:
        """Coordinates of matrices ``x`` (..., n, n) in the completed frame."""
        return self.ctx.matmul(flatten(np.asarray(x, dtype=np.int64)), self.frame.inv)

    def decompose(self, x) -> dict[GroupElem, np.ndarray]:
        """Homogeneous components of ``x``; zero components are omitted."""
        fr = self.frame
        c = self.coordinates(x)
        D = fr.basis.shape[0]
        if c[D:].any():
            raise NotInGradedSpace("matrix has a component outside the graded space")
        out = {}
        for g in self.components:
            mask = fr.degrees == self.group.index(g)
            if c[:D][mask].any():
                out[g] = unflatten(self.ctx.matmul(c[:D][mask], fr.basis[mask]), self.n)
        return out

    def weighted_map(self, weights) -> np.ndarray:
        """``(N, N)`` matrix of ``x -> sum_g w(g) x_g`` acting on flattened row vectors.

        ``weights`` is indexed by group-element index.  Vectors outside the
        graded space are sent to zero.
        """
        fr = self.frame
        w = np.zeros(self.n * self.n, dtype=np.int64)
        D = fr.basis.shape[0]
        w[:D] = np.asarray(weights, dtype=np.int64)[fr.degrees]
        return self.ctx.matmul(self.ctx.mul(fr.inv, w[None, :]), fr.completed)

    def projection(self, g: GroupElem) -> np.ndarray:
        w = np.zeros(self.group.order, dtype=np.int64)
        w[self.group.index(g)] = 1
        return self.weighted_map(w)

    def conjugate(self, u) -> "Grading":
        """The grading ``u R_g u^-1``."""
        u_inv = inverse(self.ctx, u)
        return Grading(self.group, self.ctx, self.n,
                       {g: V.map(lambda m: conjugate(self.ctx, u, m, u_inv))
                        for g, V in self.components.items()})

    def with_component(self, g: GroupElem, V: Subspace) -> "Grading":
        comps = dict(self.components)
        comps[g] = V
        return Grading(self.group, self.ctx, self.n, comps)


def sl_basis(ctx: FieldCtx, n: int) -> np.ndarray:
    """Canonical basis rows of the trace-zero matrices."""
    rows = []
    for i in range(n):
        for j in range(n):
            if i != j:
                rows.append(flatten(unit(n, i, j)))
    for i in range(n - 1):
        rows.append(flatten(ctx.sub(unit(n, i, i), unit(n, n - 1, n - 1))))
    if not rows:
        return np.zeros((0, n * n), dtype=np.int64)
    return linalg.rref(ctx, np.array(rows, dtype=np.int64))[0]


def graded_space_kind(gr: Grading) -> str:
    """``'gl'`` for M_n, ``'sl'`` for sl_n; raise DimensionMismatch otherwise."""
    n = gr.n
    if gr.dim == n * n:
        return "gl"
    if gr.dim == n * n - 1 and gr.space() == Subspace(gr.ctx, n, sl_basis(gr.ctx, n), canonical=True):
        return "sl"
    raise DimensionMismatch(f"graded space has dimension {gr.dim}; expected {n * n} or sl_{n}")


@dataclass
class Violation:
    g: GroupElem
    h: GroupElem
    x: np.ndarray
    y: np.ndarray
    product: np.ndarray

    def __repr__(self):
        return f"Violation({self.g} * {self.h}, product not in component {self.g * self.h})"


@dataclass
class GradingReport:
    mode: str
    ok: bool
    kind: str = "gl"
    violations: list[Violation] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _products(ctx, X, Y, mode):
    a = X[:, None]
    b = Y[None, :]
    if mode == "lie":
        return bracket(ctx, a, b)
    return ctx.matmul(a, b)


def verify_grading(gr: Grading, mode: str = "associative") -> GradingReport:
    """Check ``R_g R_h <= R_gh`` (or ``[R_g, R_h] <= R_gh``) on all basis pairs."""
    if mode not in ("associative", "lie"):
        raise ValueError(f"unknown mode {mode!r}")
    gr.check_direct_sum()
    kind = graded_space_kind(gr)
    fr = gr.frame
    D = fr.basis.shape[0]
    if not D:
        return GradingReport(mode, True, kind)
    X = unflatten(fr.basis, gr.n)
    P = _products(gr.ctx, X, X, mode)                       # (D, D, n, n)
    C = gr.coordinates(P)                                   # (D, D, N)
    target = gr.group.mul_table[fr.degrees[:, None], fr.degrees[None, :]]   # (D, D)
    row_deg = np.full(gr.n * gr.n, -1, dtype=np.int64)
    row_deg[:D] = fr.degrees
    allowed = row_deg[None, None, :] == target[:, :, None]
    bad = ((C != 0) & ~allowed).any(axis=-1)
    violations = []
    seen = set()
    for a, b in zip(*np.nonzero(bad)):
        key = (int(fr.degrees[a]), int(fr.degrees[b]))
        if key in seen:
            continue
        seen.add(key)
        g, h = gr.group.elements[key[0]], gr.group.elements[key[1]]
        violations.append(Violation(g, h, X[a], X[b], P[a, b]))
    return GradingReport(mode, not violations, kind, violations)


def elementary_grading(G: AbelianGroup, n: int, degrees: Sequence[GroupElem], ctx: FieldCtx) -> Grading:
    """Grading with ``deg E_ij = g_i^-1 g_j``."""
    degrees = list(degrees)
    if len(degrees) != n:
        raise GradingError(f"need {n} degrees, got {len(degrees)}")
    spans: dict[GroupElem, list] = {}
    for i, j in itertools.product(range(n), repeat=2):
        spans.setdefault(degrees[i].inverse() * degrees[j], []).append(flatten(unit(n, i, j)))
    return Grading(G, ctx, n, {g: Subspace(ctx, n, np.array(v)) for g, v in spans.items()})


def clock_shift(ctx: FieldCtx, m: int, eps: FieldElem | int | None = None):
    """Generalized Pauli matrices ``(X_a, X_b)`` with ``X_a X_b = eps X_b X_a``.

    ``X_a = diag(1, eps, ..., eps^(m-1))`` and ``X_b`` maps e_i to e_(i+1 mod m).
    """
    if m % ctx.p == 0:
        raise CharacteristicDividesM(f"p = {ctx.p} divides m = {m}")
    if eps is None:
        try:
            eps = root_of_unity(ctx, m)
        except OrderUnavailable as exc:
            raise NoRootOfUnity(str(exc)) from exc
    e = ctx.encode(eps)
    if e == 0 or ctx.order_of(e) != m:
        raise NoRootOfUnity(f"{eps!r} is not a primitive {m}-th root of unity")
    xa = np.zeros((m, m), dtype=np.int64)
    for i in range(m):
        xa[i, i] = int(ctx.pow(e, i))
    xb = np.zeros((m, m), dtype=np.int64)
    for i in range(m):
        xb[(i + 1) % m, i] = 1
    return xa, xb


def pauli_grading(G: AbelianGroup, m: int, embed: Sequence[GroupElem], ctx: FieldCtx,
                  eps=None) -> Grading:
    """Fine grading of M_m with ``X_a^i X_b^j`` of degree ``embed_a^i embed_b^j``.

    ``embed`` gives the images of the two generators of ``Z_m x Z_m``.
    """
    xa, xb = clock_shift(ctx, m, eps)
    ga, gb = embed
    if ga.group != G or gb.group != G:
        raise GroupMismatch("embedding images must lie in G")
    if not (ga ** m).is_identity or not (gb ** m).is_identity:
        raise GroupError("embedding images must have order dividing m")
    images = {ga ** i * gb ** j for i in range(m) for j in range(m)}
    if len(images) != m * m:
        raise GroupError("embedding of Z_m x Z_m is not injective")
    comps = {}
    pa = np.eye(m, dtype=np.int64)
    for i in range(m):
        pb = np.eye(m, dtype=np.int64)
        for j in range(m):
            comps[ga ** i * gb ** j] = Subspace(ctx, m, flatten(ctx.matmul(pa, pb))[None])
            pb = ctx.matmul(pb, xb)
        pa = ctx.matmul(pa, xa)
    return Grading(G, ctx, m, comps)


def tensor_gradings(gr_a: Grading, gr_b: Grading) -> Grading:
    """Grading of ``M_k (x) M_l = M_kl`` with ``deg(a (x) b) = deg a deg b``."""
    if gr_a.group != gr_b.group:
        raise GroupMismatch(f"{gr_a.group} vs {gr_b.group}")
    if gr_a.ctx != gr_b.ctx:
        raise FieldMismatch(f"{gr_a.ctx} vs {gr_b.ctx}")
    ctx, k, l = gr_a.ctx, gr_a.n, gr_b.n
    spans: dict[GroupElem, list] = {}
    for g, U in gr_a.components.items():
        for h, W in gr_b.components.items():
            prods = kron(ctx, U.matrices()[:, None], W.matrices()[None, :])
            spans.setdefault(g * h, []).append(flatten(prods).reshape(-1, k * l * k * l))
    return Grading(gr_a.group, ctx, k * l,
                   {g: Subspace(ctx, k * l, np.vstack(v)) for g, v in spans.items()})


def factor_grading(gr: Grading, gens: Sequence[GroupElem]) -> Grading:
    """Coarsening to ``G/H``: the component at a coset is the sum over the coset."""
    quo = quotient_group(gr.group, gens)
    spans: dict[GroupElem, list] = {}
    for g, V in gr.components.items():
        spans.setdefault(quo.project(g), []).append(V.basis)
    return Grading(quo.quotient, gr.ctx, gr.n,
                   {g: Subspace(gr.ctx, gr.n, np.vstack(v)) for g, v in spans.items()})


def support(gr: Grading) -> tuple[set[GroupElem], bool]:
    s = gr.support
    return s, gr.group.is_subgroup(s)


def compatible(gr_a: Grading, gr_b: Grading) -> tuple[bool, GroupElem | None]:
    """Whether each B-component is the direct sum of its intersections with A-components."""
    if gr_a.group != gr_b.group:
        raise GroupMismatch(f"{gr_a.group} vs {gr_b.group}")
    for g, W in gr_b.components.items():
        total = sum((U & W).dim for U in gr_a.components.values())
        if total != W.dim:
            return False, g
    return True, None
