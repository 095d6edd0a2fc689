"""Finite abelian groups stored as products of cyclic factors.

Elements of ``Z_{d_1} x ... x Z_{d_r}`` are exponent tuples; the group
operation is written multiplicatively (componentwise addition mod d_i).
Enumeration is lexicographic in the exponent tuple, so the first factor
is the most significant digit of an element's index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .ff import FieldCtx, FieldElem, root_of_unity

MAX_ORDER = 4096


class GroupError(ValueError):
    pass


class CapExceeded(GroupError):
    pass


class InsufficientRoots(GroupError):
    pass


@dataclass(frozen=True)
class AbelianGroup:
    orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(d) for d in self.orders)
        object.__setattr__(self, "orders", orders)
        if any(d < 2 for d in orders):
            raise GroupError(f"cyclic factor orders must be >= 2, got {orders}")
        if math.prod(orders) > MAX_ORDER:
            raise CapExceeded(f"|G| = {math.prod(orders)} exceeds {MAX_ORDER}")

    def __repr__(self):
        if not self.orders:
            return "Z1"
        return " x ".join(f"Z{d}" for d in self.orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    def __len__(self):
        return self.order

    @property
    def exponent(self) -> int:
        return math.lcm(*self.orders) if self.orders else 1

    @property
    def identity(self) -> "GroupElem":
        return GroupElem(self, (0,) * self.rank)

    def gen(self, i: int) -> "GroupElem":
        e = [0] * self.rank
        e[i] = 1
        return GroupElem(self, tuple(e))

    def gens(self) -> list["GroupElem"]:
        return [self.gen(i) for i in range(self.rank)]

    def __call__(self, *exps) -> "GroupElem":
        if len(exps) == 1 and isinstance(exps[0], (tuple, list)):
            exps = exps[0]
        if len(exps) != self.rank:
            raise GroupError(f"{self} needs {self.rank} exponents, got {len(exps)}")
        return GroupElem(self, tuple(int(e) % d for e, d in zip(exps, self.orders)))

    @cached_property
    def _strides(self) -> np.ndarray:
        s = [1] * self.rank
        for i in range(self.rank - 2, -1, -1):
            s[i] = s[i + 1] * self.orders[i + 1]
        return np.array(s, dtype=np.int64)

    @cached_property
    def exps_array(self) -> np.ndarray:
        """``(|G|, rank)`` array of exponent tuples in enumeration order."""
        idx = np.arange(self.order, dtype=np.int64)
        if not self.rank:
            return np.zeros((1, 0), dtype=np.int64)
        return (idx[:, None] // self._strides) % np.array(self.orders, dtype=np.int64)

    def index_of_exps(self, exps) -> np.ndarray:
        exps = np.asarray(exps, dtype=np.int64) % np.array(self.orders, dtype=np.int64)
        return exps @ self._strides

    @cached_property
    def elements(self) -> list["GroupElem"]:
        return [GroupElem(self, tuple(int(x) for x in row)) for row in self.exps_array]

    def __iter__(self):
        return iter(self.elements)

    def index(self, g: "GroupElem") -> int:
        self._check(g)
        return int(np.dot(g.exps, self._strides)) if self.rank else 0

    def _check(self, g):
        if not isinstance(g, GroupElem) or g.group != self:
            raise GroupError(f"{g!r} is not an element of {self}")

    @cached_property
    def mul_table(self) -> np.ndarray:
        """Index table: ``mul_table[i, j]`` is the index of ``g_i g_j``."""
        e = self.exps_array
        s = e[:, None, :] + e[None, :, :]
        return self.index_of_exps(s)

    @cached_property
    def inv_table(self) -> np.ndarray:
        return self.index_of_exps(-self.exps_array)

    def is_p_group(self, p: int) -> bool:
        n = self.order
        while n % p == 0:
            n //= p
        return n == 1

    def is_cyclic_p_power(self, p: int) -> bool:
        return self.rank == 1 and self.is_p_group(p)

    def subgroup(self, gens: Sequence["GroupElem"]) -> list["GroupElem"]:
        """Elements of the subgroup generated by ``gens``, in enumeration order."""
        seen = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        for g in gens:
            self._check(g)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = x * g
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen, key=self.index)

    def is_subgroup(self, elems) -> bool:
        s = set(elems)
        if self.identity not in s:
            return False
        return all(x * y in s for x in s for y in s) and all(x.inverse() in s for x in s)


@dataclass(frozen=True)
class GroupElem:
    group: AbelianGroup
    exps: tuple[int, ...]

    def __mul__(self, other: "GroupElem") -> "GroupElem":
        if not isinstance(other, GroupElem):
            return NotImplemented
        if other.group != self.group:
            raise GroupError("elements of different groups")
        return GroupElem(self.group, tuple((a + b) % d for a, b, d in zip(self.exps, other.exps, self.group.orders)))

    def inverse(self) -> "GroupElem":
        return GroupElem(self.group, tuple((-a) % d for a, d in zip(self.exps, self.group.orders)))

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, e: int) -> "GroupElem":
        return GroupElem(self.group, tuple((a * e) % d for a, d in zip(self.exps, self.group.orders)))

    @property
    def is_identity(self) -> bool:
        return not any(self.exps)

    def order(self) -> int:
        o = 1
        for a, d in zip(self.exps, self.group.orders):
            o = math.lcm(o, d // math.gcd(a, d))
        return o

    @property
    def index(self) -> int:
        return self.group.index(self)

    def __repr__(self):
        return "(" + ",".join(map(str, self.exps)) + ")"


def build_group(orders: Sequence[int]) -> AbelianGroup:
    return AbelianGroup(tuple(orders))


def _p_split(d: int, p: int) -> tuple[int, int]:
    pv = 1
    while d % p == 0:
        d //= p
        pv *= p
    return d, pv


@dataclass(frozen=True)
class PrimaryDecomposition:
    """``G = G0 x G1`` with ``|G0|`` prime to p and ``G1`` a p-group."""

    group: AbelianGroup
    p: int
    g0: AbelianGroup
    g1: AbelianGroup
    _split: tuple = field(repr=False)

    def split(self, g: GroupElem) -> tuple[GroupElem, GroupElem]:
        e0, e1 = [], []
        for a, (d0, d1) in zip(g.exps, self._split):
            if d0 > 1:
                e0.append(a % d0)
            if d1 > 1:
                e1.append(a % d1)
        return GroupElem(self.g0, tuple(e0)), GroupElem(self.g1, tuple(e1))

    def combine(self, g0: GroupElem, g1: GroupElem) -> GroupElem:
        i0 = iter(g0.exps)
        i1 = iter(g1.exps)
        out = []
        for d0, d1 in self._split:
            a0 = next(i0) if d0 > 1 else 0
            a1 = next(i1) if d1 > 1 else 0
            # CRT; pow(d, -1, 1) == 0 handles trivial parts
            x = a0 * d1 * pow(d1, -1, d0) + a1 * d0 * pow(d0, -1, d1)
            out.append(x % (d0 * d1))
        return GroupElem(self.group, tuple(out))

    def embed0(self, g0: GroupElem) -> GroupElem:
        return self.combine(g0, self.g1.identity)

    def embed1(self, g1: GroupElem) -> GroupElem:
        return self.combine(self.g0.identity, g1)

    def verify(self) -> bool:
        seen = set()
        for a in self.g0:
            for b in self.g1:
                g = self.combine(a, b)
                if self.split(g) != (a, b):
                    return False
                seen.add(g)
        if len(seen) != self.group.order:
            return False
        gens0, gens1 = self.g0.gens(), self.g1.gens()
        for a in gens0 + [self.g0.identity]:
            for b in gens1 + [self.g1.identity]:
                for c in gens0:
                    if self.combine(a * c, b) != self.combine(a, b) * self.embed0(c):
                        return False
                for c in gens1:
                    if self.combine(a, b * c) != self.combine(a, b) * self.embed1(c):
                        return False
        return True


def decompose_by_p(G: AbelianGroup, p: int) -> PrimaryDecomposition:
    split = tuple(_p_split(d, p) for d in G.orders)
    g0 = AbelianGroup(tuple(d0 for d0, _ in split if d0 > 1))
    g1 = AbelianGroup(tuple(d1 for _, d1 in split if d1 > 1))
    dec = PrimaryDecomposition(G, p, g0, g1, split)
    if not dec.verify():
        raise GroupError("primary decomposition failed to verify")  # defensive
    return dec


@dataclass(frozen=True)
class Quotient:
    """``G / H`` in factored form together with the projection."""

    group: AbelianGroup
    quotient: AbelianGroup
    kernel: tuple[GroupElem, ...]
    _V: tuple = field(repr=False)
    _keep: tuple = field(repr=False)

    def project(self, g: GroupElem) -> GroupElem:
        r = len(g.exps)
        x = [sum(g.exps[i] * self._V[i * r + j] for i in range(r)) for j in range(r)]
        return GroupElem(self.quotient, tuple(x[j] % d for j, d in self._keep))

    __call__ = project

    def coset(self, gbar: GroupElem) -> list[GroupElem]:
        return [g for g in self.group if self.project(g) == gbar]


def quotient_group(G: AbelianGroup, gens: Sequence[GroupElem]) -> Quotient:
    """``G / <gens>`` via Smith normal form of the relation lattice."""
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_decomp

    for g in gens:
        G._check(g)
    r = G.rank
    kernel = tuple(G.subgroup(gens))
    if r == 0:
        return Quotient(G, AbelianGroup(()), kernel, (), ())
    rel = [[d if i == j else 0 for j in range(r)] for i, d in enumerate(G.orders)]
    rel += [list(g.exps) for g in gens]
    D, _, V = smith_normal_decomp(Matrix(rel), domain=ZZ)
    diag = [abs(int(D[i, i])) for i in range(min(D.shape))]
    keep = tuple((i, d) for i, d in enumerate(diag) if d > 1)
    Vt = tuple(int(V[i, j]) for i in range(r) for j in range(r))
    quo = Quotient(G, AbelianGroup(tuple(d for _, d in keep)), kernel, Vt, keep)
    if quo.quotient.order * len(kernel) != G.order:
        raise GroupError("quotient order check failed")  # defensive
    return quo


@dataclass(frozen=True)
class MultCharacter:
    """A homomorphism ``G -> F^x``; ``values[i]`` is the code of chi(g_i)."""

    group: AbelianGroup
    ctx: FieldCtx
    values: tuple[int, ...]

    def __call__(self, g: GroupElem) -> FieldElem:
        return FieldElem(self.ctx, self.values[self.group.index(g)])

    def array(self) -> np.ndarray:
        return np.array(self.values, dtype=np.int64)

    def is_homomorphism(self) -> bool:
        v = self.array()
        mt = self.group.mul_table
        return bool(v[0] == 1 and np.array_equal(self.ctx.mul(v[:, None], v[None, :]), v[mt]))


@dataclass(frozen=True)
class AddCharacter:
    """A homomorphism ``G -> (GF(p), +)``."""

    group: AbelianGroup
    p: int
    values: tuple[int, ...]

    def __call__(self, g: GroupElem) -> int:
        return self.values[self.group.index(g)]

    def array(self) -> np.ndarray:
        return np.array(self.values, dtype=np.int64)

    def is_homomorphism(self) -> bool:
        v = self.array()
        mt = self.group.mul_table
        return bool(v[0] == 0 and np.array_equal((v[:, None] + v[None, :]) % self.p, v[mt]))


def multiplicative_characters(G0: AbelianGroup, ctx: FieldCtx) -> list[MultCharacter]:
    """All ``|G0|`` characters, indexed like the elements of ``G0``.

    The character attached to ``c`` sends the i-th generator to
    ``eps_i ** c_i`` where ``eps_i`` is a fixed primitive d_i-th root.
    """
    if (ctx.q - 1) % G0.exponent:
        raise InsufficientRoots(f"{ctx} lacks roots of unity of order {G0.exponent}")
    eps = [root_of_unity(ctx, d).code for d in G0.orders]
    ex = G0.exps_array
    # powers[i][e] = eps_i ** e
    powers = [np.array([int(ctx.pow(e_i, t)) for t in range(d)], dtype=np.int64)
              for e_i, d in zip(eps, G0.orders)]
    chars = []
    for c in ex:
        vals = np.ones(G0.order, dtype=np.int64)
        for i, d in enumerate(G0.orders):
            vals = ctx.mul(vals, powers[i][(c[i] * ex[:, i]) % d])
        chars.append(MultCharacter(G0, ctx, tuple(int(v) for v in vals)))
    return chars


def additive_characters(G: AbelianGroup, p: int) -> list[AddCharacter]:
    """Basis of ``Hom(G, GF(p))``: one character per factor with ``p | d_i``.

    The character for factor i sends ``a_i ** s`` to ``s mod p``, which is
    well defined because p divides d_i.
    """
    out = []
    for i, d in enumerate(G.orders):
        if d % p == 0:
            vals = G.exps_array[:, i] % p
            out.append(AddCharacter(G, p, tuple(int(v) for v in vals)))
    return out


def characters(G: AbelianGroup, ctx: FieldCtx) -> list[MultCharacter]:
    """Characters of ``G``, pulled back from its p'-part ``G0``."""
    dec = decompose_by_p(G, ctx.p)
    out = []
    for chi in multiplicative_characters(dec.g0, ctx):
        vals = tuple(chi.values[dec.g0.index(dec.split(g)[0])] for g in G)
        out.append(MultCharacter(G, ctx, vals))
    return out
