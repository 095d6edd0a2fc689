"""Square matrices over GF(p^k) as int64 code arrays of shape ``(..., n, n)``."""

from __future__ import annotations

import numpy as np

from .ff import FieldCtx, FieldElem, FieldError
from . import linalg


class MixedFields(FieldError):
    pass


def as_matrix(ctx: FieldCtx, x, n: int | None = None) -> np.ndarray:
    """Coerce ``x`` (array of codes, nested lists of ints/FieldElem) to codes.

    Plain ints are read as prime-field elements; FieldElem entries must
    belong to ``ctx``.
    """
    if isinstance(x, np.ndarray) and x.dtype != object:
        a = x.astype(np.int64, copy=False)
        if a.size and (a.min() < 0 or a.max() >= ctx.q):
            raise MixedFields(f"entries outside {ctx}")
    else:
        def enc(v):
            if isinstance(v, FieldElem):
                if v.ctx != ctx:
                    raise MixedFields(f"entry {v!r} from {v.ctx}, expected {ctx}")
                return v.code
            return ctx.encode(v)
        a = np.array([[enc(v) for v in row] for row in x], dtype=np.int64)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or (n is not None and a.shape[0] != n):
        raise MixedFields(f"expected a square {n}x{n} matrix, got shape {a.shape}")
    return a


def unit(n: int, i: int, j: int) -> np.ndarray:
    """Matrix unit E_ij (0-based indices)."""
    e = np.zeros((n, n), dtype=np.int64)
    e[i, j] = 1
    return e


def units(n: int) -> np.ndarray:
    """All matrix units as an ``(n*n, n, n)`` stack in row-major order."""
    return np.eye(n * n, dtype=np.int64).reshape(n * n, n, n)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def mm(ctx: FieldCtx, x, y) -> np.ndarray:
    return ctx.matmul(x, y)


def bracket(ctx: FieldCtx, x, y) -> np.ndarray:
    return ctx.sub(ctx.matmul(x, y), ctx.matmul(y, x))


def trace(ctx: FieldCtx, x) -> np.ndarray:
    return ctx.sum(np.diagonal(np.asarray(x), axis1=-2, axis2=-1), axis=-1)


def transpose(x) -> np.ndarray:
    return np.swapaxes(np.asarray(x), -1, -2)


def kron(ctx: FieldCtx, a, b) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    k, l = a.shape[-1], b.shape[-1]
    prod = ctx.mul(a[..., :, None, :, None], b[..., None, :, None, :])
    return prod.reshape(prod.shape[:-4] + (k * l, k * l))


def inverse(ctx: FieldCtx, x) -> np.ndarray:
    return linalg.inverse(ctx, x)


def conjugate(ctx: FieldCtx, u, x, u_inv=None) -> np.ndarray:
    """``u x u^-1``."""
    if u_inv is None:
        u_inv = inverse(ctx, u)
    return ctx.matmul(ctx.matmul(u, x), u_inv)


def random_matrix(ctx: FieldCtx, n: int, rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, ctx.q, size=(n, n), dtype=np.int64)


def random_invertible(ctx: FieldCtx, n: int, rng: np.random.Generator) -> np.ndarray:
    while True:
        u = random_matrix(ctx, n, rng)
        if linalg.rank(ctx, u) == n:
            return u


def flatten(x) -> np.ndarray:
    x = np.asarray(x)
    return x.reshape(x.shape[:-2] + (x.shape[-1] * x.shape[-2],))


def unflatten(v, n: int) -> np.ndarray:
    v = np.asarray(v)
    return v.reshape(v.shape[:-1] + (n, n))


def to_json(ctx: FieldCtx, x) -> list:
    """Row-major entry lists: ints over a prime field, coefficient lists otherwise."""
    x = np.asarray(x)
    if ctx.k == 1:
        return [[int(v) for v in row] for row in x]
    return [[ctx.coefficients(int(v)) for v in row] for row in x]
