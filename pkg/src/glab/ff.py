"""Exact arithmetic in GF(p^k) for odd p.

Elements are encoded as integers ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}``
where ``c_i`` are the coefficients of the residue polynomial modulo the
field's irreducible modulus.  Prime-field elements are therefore plain
integers in ``[0, p)``.

All array operations on :class:`FieldCtx` accept and return ``int64``
numpy arrays of such codes, so matrices over the field are ordinary
integer arrays.  :class:`FieldElem` wraps a single code for scalar work.
"""

from __future__ import annotations

import itertools
from functools import cached_property

import numpy as np

MAX_DEGREE = 8


class FieldError(ValueError):
    pass


class NonPrime(FieldError):
    pass


class EvenCharacteristic(FieldError):
    pass


class NoIrreducibleFound(FieldError):
    pass


class PDividesM(FieldError):
    pass


class OrderUnavailable(FieldError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over GF(p) as coefficient lists, low degree first ----------

def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a, b, p):
    a = _poly_trim(a)
    b = _poly_trim(b)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a = _poly_trim(a)
    return a


def is_irreducible(modulus, p: int) -> bool:
    """Irreducibility of a monic polynomial over GF(p) by trial division.

    Checks for roots first, then divides by every monic polynomial of
    degree 2..deg/2.
    """
    f = _poly_trim([c % p for c in modulus])
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    for x in range(p):
        if sum(c * pow(x, i, p) for i, c in enumerate(f)) % p == 0:
            return False
    for d in range(2, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            if not _poly_rem(f, list(tail) + [1], p):
                return False
    return True


def least_irreducible(p: int, k: int) -> list[int]:
    """Least monic irreducible of degree ``k``.

    Candidates are ordered by the integer code of their non-leading
    coefficients, ``m_0 + m_1 p + ... + m_{k-1} p^{k-1}``.
    """
    for code in range(p ** k):
        tail = [(code // p ** i) % p for i in range(k)]
        cand = tail + [1]
        if is_irreducible(cand, p):
            return cand
    raise NoIrreducibleFound(f"no monic irreducible of degree {k} over GF({p})")


class FieldCtx:
    """The field GF(p^k) with a fixed irreducible modulus."""

    def __init__(self, p: int, k: int, modulus=None):
        if not is_prime(p):
            raise NonPrime(p)
        if p == 2:
            raise EvenCharacteristic("characteristic 2 is not supported")
        if not 1 <= k <= MAX_DEGREE:
            raise FieldError(f"extension degree must be in 1..{MAX_DEGREE}, got {k}")
        if modulus is None:
            modulus = least_irreducible(p, k)
        modulus = [int(c) % p for c in modulus]
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree k")
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = tuple(modulus)
        self._pw = np.array([p ** i for i in range(k)], dtype=np.int64)
        # row t-k holds x^t mod modulus, for t = k .. 2k-2
        red = []
        cur = [(-c) % p for c in modulus[:k]]  # x^k
        for _ in range(max(k - 1, 0)):
            red.append(cur)
            nxt = [0] + cur[:-1]
            top = cur[-1]
            nxt = [(nxt[i] + top * (-modulus[i])) % p for i in range(k)]
            cur = nxt
        self._red = np.array(red, dtype=np.int64).reshape(max(k - 1, 0), k)

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return (isinstance(other, FieldCtx) and self.p == other.p
                and self.k == other.k and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    # -- digit conversion -------------------------------------------------

    def to_digits(self, a):
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._pw) % self.p

    def from_digits(self, d):
        return np.asarray(d, dtype=np.int64) @ self._pw

    def _reduce_poly(self, c):
        """Reduce a digit array with trailing axis of length 2k-1."""
        k = self.k
        low = c[..., :k]
        if k > 1:
            low = low + c[..., k:] @ self._red
        return low % self.p

    # -- vectorized arithmetic on codes -----------------------------------

    def asarray(self, a):
        return np.asarray(a, dtype=np.int64)

    def add(self, a, b):
        if self.k == 1:
            return (np.asarray(a, dtype=np.int64) + b) % self.p
        return self.from_digits((self.to_digits(a) + self.to_digits(b)) % self.p)

    def neg(self, a):
        if self.k == 1:
            return (-np.asarray(a, dtype=np.int64)) % self.p
        return self.from_digits((-self.to_digits(a)) % self.p)

    def sub(self, a, b):
        if self.k == 1:
            return (np.asarray(a, dtype=np.int64) - b) % self.p
        return self.from_digits((self.to_digits(a) - self.to_digits(b)) % self.p)

    def mul(self, a, b):
        if self.k == 1:
            return (np.asarray(a, dtype=np.int64) * b) % self.p
        da, db = self.to_digits(a), self.to_digits(b)
        da, db = np.broadcast_arrays(da, db)
        k = self.k
        c = np.zeros(da.shape[:-1] + (2 * k - 1,), dtype=np.int64)
        for i in range(k):
            c[..., i:i + k] += da[..., i:i + 1] * db
        return self.from_digits(self._reduce_poly(c))

    def pow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        if e < 0:
            a = self.inv(a)
            e = -e
        result = np.ones_like(a)
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("zero has no inverse")
        return self.pow(a, self.q - 2)

    def sum(self, a, axis=None):
        if self.k == 1:
            return np.sum(np.asarray(a, dtype=np.int64), axis=axis) % self.p
        d = self.to_digits(a)
        if axis is None:
            d = d.reshape(-1, self.k)
            axis = 0
        elif axis < 0:
            axis -= 1
        return self.from_digits(np.sum(d, axis=axis) % self.p)

    def matmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return np.matmul(a, b) % self.p
        da, db = self.to_digits(a), self.to_digits(b)
        k = self.k
        parts = [None] * (2 * k - 1)
        for i in range(k):
            for j in range(k):
                t = np.matmul(da[..., i], db[..., j])
                parts[i + j] = t if parts[i + j] is None else parts[i + j] + t
        c = np.stack(parts, axis=-1) % self.p
        return self.from_digits(self._reduce_poly(c))

    def scale(self, c, a):
        return self.mul(np.asarray(a, dtype=np.int64), np.int64(int(c)))

    # -- scalars ----------------------------------------------------------

    def __call__(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            if value.ctx != self:
                raise FieldError("element belongs to a different field")
            return value
        return FieldElem(self, self.encode(value))

    def encode(self, value) -> int:
        """Field code of an int (prime-field element) or a coefficient list."""
        if isinstance(value, FieldElem):
            if value.ctx != self:
                raise FieldError("element belongs to a different field")
            return value.code
        if isinstance(value, (list, tuple)):
            if len(value) != self.k:
                raise FieldError(f"expected {self.k} coefficients, got {len(value)}")
            return int(sum((int(c) % self.p) * self.p ** i for i, c in enumerate(value)))
        return int(value) % self.p

    def coefficients(self, code: int) -> list[int]:
        return [(int(code) // self.p ** i) % self.p for i in range(self.k)]

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, 0)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(self, 1)

    def elements(self) -> list["FieldElem"]:
        return [FieldElem(self, c) for c in range(self.q)]

    @cached_property
    def all_codes(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def order_of(self, code: int) -> int:
        """Multiplicative order of a nonzero element."""
        if code == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        n = self.q - 1
        order = n
        for r in prime_factors(n):
            while order % r == 0 and int(self.pow(code, order // r)) == 1:
                order //= r
        return order


class FieldElem:
    """A single element of a :class:`FieldCtx`; immutable."""

    __slots__ = ("ctx", "code")

    def __init__(self, ctx: FieldCtx, code: int):
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "code", int(code))

    def __setattr__(self, name, value):
        raise AttributeError("FieldElem is immutable")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.ctx.coefficients(self.code))

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                raise FieldError("mixed fields")
            return other.code
        if isinstance(other, (int, np.integer)):
            return int(other) % self.ctx.p
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx, self.ctx.add(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx, self.ctx.sub(self.code, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx, self.ctx.sub(o, self.code))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.code))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx, self.ctx.mul(self.code, o))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.inv(self.code))

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx, self.ctx.mul(self.code, self.ctx.inv(o)))

    def __pow__(self, e: int):
        return FieldElem(self.ctx, self.ctx.pow(self.code, e))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.ctx == other.ctx and self.code == other.code
        if isinstance(other, (int, np.integer)):
            return self.code == int(other) % self.ctx.p if self.code < self.ctx.p else False
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.code))

    def __bool__(self):
        return self.code != 0

    def __int__(self):
        return self.code

    def __repr__(self):
        if self.ctx.k == 1:
            return str(self.code)
        return "(" + ",".join(map(str, self.coeffs)) + ")"

    def order(self) -> int:
        return self.ctx.order_of(self.code)


def build_field(p: int, k: int = 1) -> FieldCtx:
    return FieldCtx(p, k)


def min_ext_degree(p: int, m: int) -> int:
    """Least ``k >= 1`` with ``m | p^k - 1``."""
    if m < 1:
        raise ValueError("m must be positive")
    if m % p == 0:
        raise PDividesM(f"{p} divides {m}: no primitive {m}-th root of unity in characteristic {p}")
    k = 1
    while (p ** k - 1) % m:
        k += 1
    return k


def root_of_unity(ctx: FieldCtx, m: int) -> FieldElem:
    """A primitive ``m``-th root of unity in ``ctx``."""
    n = ctx.q - 1
    if m < 1 or n % m:
        raise OrderUnavailable(f"{ctx} has no element of order {m}")
    rs = prime_factors(m)
    for cand in range(1, ctx.q):
        eps = int(ctx.pow(cand, n // m))
        if all(int(ctx.pow(eps, m // r)) != 1 for r in rs):
            return FieldElem(ctx, eps)
    raise OrderUnavailable(f"{ctx} has no element of order {m}")  # unreachable


def binom_mod_p(s: int, m: int, p: int) -> int:
    """C(s, m) mod p via Lucas' theorem."""
    if m < 0 or s < 0:
        return 0
    result = 1
    while s or m:
        si, mi = s % p, m % p
        if mi > si:
            return 0
        num = den = 1
        for t in range(mi):
            num = num * (si - t) % p
            den = den * (t + 1) % p
        result = result * num * pow(den, p - 2, p) % p
        s //= p
        m //= p
    return result
