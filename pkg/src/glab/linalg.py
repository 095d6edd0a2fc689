"""Row reduction, kernels and inverses over a :class:`~glab.ff.FieldCtx`.

Matrices are int64 code arrays; rows are vectors.
"""

from __future__ import annotations

import numpy as np

from .ff import FieldCtx


class SingularMatrix(ValueError):
    pass


def rref(ctx: FieldCtx, a) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form and pivot columns.  Zero rows are dropped."""
    m = np.array(a, dtype=np.int64, copy=True)
    if m.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            m[[r, i]] = m[[i, r]]
        lead = int(m[r, c])
        if lead != 1:
            m[r] = ctx.scale(int(ctx.inv(lead)), m[r])
        col = m[:, c].copy()
        col[r] = 0
        others = np.nonzero(col)[0]
        if others.size:
            m[others] = ctx.sub(m[others], ctx.mul(col[others, None], m[r][None, :]))
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(ctx: FieldCtx, a) -> int:
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return 0
    return len(rref(ctx, a)[1])


def nullspace(ctx: FieldCtx, a) -> np.ndarray:
    """Basis (as rows) of ``{x : a @ x = 0}``."""
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    r, piv = rref(ctx, a)
    free = [c for c in range(cols) if c not in piv]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, pc in enumerate(piv):
            basis[t, pc] = int(ctx.neg(r[i, f]))
    return basis


def left_nullspace(ctx: FieldCtx, a) -> np.ndarray:
    """Basis (as rows) of ``{y : y @ a = 0}``."""
    a = np.asarray(a, dtype=np.int64)
    return nullspace(ctx, a.T)


def inverse(ctx: FieldCtx, a) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse expects a square matrix")
    aug = np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1)
    r, piv = rref(ctx, aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise SingularMatrix("matrix is not invertible")
    return r[:n, n:]


def solve_left(ctx: FieldCtx, basis, v):
    """Coefficients ``c`` with ``c @ basis == v``, or ``None`` if ``v`` is outside the row span."""
    basis = np.asarray(basis, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    d = basis.shape[0]
    aug = np.concatenate([basis.T, v.reshape(-1, 1)], axis=1)
    r, piv = rref(ctx, aug)
    if d in piv:
        return None
    c = np.zeros(d, dtype=np.int64)
    for i, pc in enumerate(piv):
        c[pc] = r[i, d]
    return c


def complete_basis(ctx: FieldCtx, rows) -> np.ndarray:
    """Extend independent ``rows`` by standard vectors to a basis of the ambient space."""
    rows = np.asarray(rows, dtype=np.int64)
    dim = rows.shape[1]
    if rows.shape[0] == 0:
        return np.eye(dim, dtype=np.int64)
    _, piv = rref(ctx, rows)
    extra = [c for c in range(dim) if c not in piv]
    ext = np.zeros((len(extra), dim), dtype=np.int64)
    ext[np.arange(len(extra)), extra] = 1
    return np.concatenate([rows, ext], axis=0)
