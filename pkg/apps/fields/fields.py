"""
Exact arithmetic in GF(p^n) on the polynomial basis.

Elements are int64 numpy arrays whose last axis holds the n coefficients over
GF(p), lowest degree first. Array-level operations live on FieldCtx so that
matrices of elements are processed in one vectorized call; FFElement wraps a
single element for the scalar API.

A context may carry a subfield marker h (q = p^h, m = n / h). GF(q) is then
realized as the fixed field of the q-power Frobenius, with its own degree-h
context and a GF(p)-linear embedding into the big field.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache

import galois
import numpy as np

from apps.utils.exceptions import (
    DivisionByZero,
    FieldMismatch,
    InternalInvariantViolation,
    MissingSubfield,
    NotPrime,
    OutOfRange,
    ReducibleModulus,
    UnsupportedField,
)

logger = logging.getLogger(__name__)

# exact accumulator bounds for float64 and int64 dot products
FLOAT_EXACT = 2 ** 52
INT_EXACT = 2 ** 62


def matmul_mod(a, b, p):
    """Batched ``a @ b mod p`` that never overflows the accumulator.

    The contraction axis is split into chunks whose partial sums stay exact;
    float64 (BLAS) is used whenever the chunk bound allows it.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    bound = (p - 1) ** 2
    inner = a.shape[-1]
    if inner == 0:
        return np.matmul(a, b)

    if bound < FLOAT_EXACT:
        dtype, chunk = np.float64, FLOAT_EXACT // bound
    else:
        dtype, chunk = np.int64, INT_EXACT // bound

    out = None
    for start in range(0, inner, chunk):
        stop = start + chunk
        part = np.matmul(
            a[..., start:stop].astype(dtype, copy=False),
            b[..., start:stop, :].astype(dtype, copy=False),
        )
        part = np.remainder(part, p).astype(np.int64)
        out = part if out is None else (out + part) % p
    return out


def matrix_power_mod(matrix, exponent, p):
    """Square-and-multiply power of a square GF(p) matrix"""
    size = matrix.shape[-1]
    result = np.eye(size, dtype=np.int64)
    base = np.asarray(matrix, dtype=np.int64) % p
    while exponent:
        if exponent & 1:
            result = matmul_mod(result, base, p)
        exponent >>= 1
        if exponent:
            base = matmul_mod(base, base, p)
    return result


@lru_cache(maxsize=None)
def prime_field(p):
    return galois.GF(p)


@lru_cache(maxsize=None)
def least_irreducible(p, n):
    """Least monic irreducible of degree n, comparing coefficient tuples
    lexicographically with the constant term first."""
    if n == 1:
        return (0, 1)
    GF = prime_field(p)
    # a zero constant term means x divides the polynomial
    for constant in range(1, p):
        for middle in itertools.product(range(p), repeat=n - 1):
            coeffs = (constant, *middle, 1)
            if galois.Poly(list(coeffs), field=GF, order="asc").is_irreducible():
                return coeffs
    raise InternalInvariantViolation(f"No irreducible polynomial of degree {n} over GF({p})")


@dataclass(frozen=True)
class FieldCtx:
    """Immutable descriptor of GF(p^n), optionally marking the subfield GF(p^h)"""
    p: int
    n: int
    modulus: tuple
    h: int | None = None

    def __post_init__(self):
        if self.h is not None and (self.h < 1 or self.n % self.h):
            raise OutOfRange(f"Subfield degree {self.h} does not divide {self.n}")

    def __repr__(self):
        marker = f", q={self.q}" if self.h else ""
        return f"GF({self.p}^{self.n}{marker})"

    @property
    def order(self):
        return self.p ** self.n

    @property
    def q(self):
        return self.p ** self.require_subfield()

    @property
    def m(self):
        return self.n // self.require_subfield()

    def require_subfield(self):
        if self.h is None:
            raise MissingSubfield(f"{self!r} has no subfield marker")
        return self.h

    # construction helpers

    @cached_property
    def GF(self):
        return prime_field(self.p)

    @cached_property
    def tail(self):
        return np.asarray(self.modulus[:self.n], dtype=np.int64)

    def zeros(self, *shape):
        return np.zeros(shape + (self.n,), dtype=np.int64)

    @cached_property
    def one(self):
        one = self.zeros()
        one[0] = 1
        return one

    def identity(self, size):
        eye = self.zeros(size, size)
        eye[np.arange(size), np.arange(size), 0] = 1
        return eye

    def scalar(self, value):
        """Image of the integer ``value`` in the prime field"""
        return self.one * (value % self.p)

    def from_poly(self, coeffs):
        """Reduce an arbitrary-degree coefficient list (lowest degree first)"""
        coeffs = [int(c) % self.p for c in coeffs] or [0]
        poly = galois.Poly(coeffs, field=self.GF, order="asc")
        reduced = poly % galois.Poly(list(self.modulus), field=self.GF, order="asc")
        out = self.zeros()
        low = reduced.coeffs[::-1]
        out[:len(low)] = np.asarray(low, dtype=np.int64)
        return out

    @cached_property
    def generator(self):
        """Residue class of x"""
        return self.from_poly([0, 1])

    def power_basis(self, size=None):
        """1, x, x^2, ... as a (size, n) array"""
        size = self.n if size is None else size
        rows = [self.one]
        for _ in range(size - 1):
            rows.append(self.mul(rows[-1], self.generator))
        return np.stack(rows)

    def asarray(self, values):
        values = np.asarray(values, dtype=np.int64)
        if values.shape[-1:] != (self.n,):
            raise FieldMismatch(f"Expected trailing axis of length {self.n}, got shape {values.shape}")
        return values % self.p

    def random(self, rng, *shape):
        return rng.integers(0, self.p, size=shape + (self.n,), dtype=np.int64)

    def elements(self):
        """Every element of the field, in coefficient-odometer order"""
        grid = itertools.product(range(self.p), repeat=self.n)
        return np.asarray([tuple(reversed(c)) for c in grid], dtype=np.int64).reshape(-1, self.n)

    # arithmetic on arrays

    def is_zero(self, a):
        return ~np.any(np.asarray(a), axis=-1)

    def add(self, a, b):
        return (np.asarray(a) + np.asarray(b)) % self.p

    def sub(self, a, b):
        return (np.asarray(a) - np.asarray(b)) % self.p

    def neg(self, a):
        return (-np.asarray(a)) % self.p

    def mul_matrices(self, a):
        """Matrices of y -> a*y: row i holds a * x^i mod f"""
        a = np.asarray(a, dtype=np.int64) % self.p
        rows = np.empty(a.shape[:-1] + (self.n, self.n), dtype=np.int64)
        current = a
        for i in range(self.n):
            rows[..., i, :] = current
            if i + 1 < self.n:
                top = current[..., -1:]
                shifted = np.concatenate([np.zeros_like(top), current[..., :-1]], axis=-1)
                current = (shifted - top * self.tail) % self.p
        return rows

    def mul(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        return matmul_mod(b[..., None, :], self.mul_matrices(a), self.p)[..., 0, :]

    def outer(self, left, right):
        """(R, n) x (C, n) -> (R, C, n) table of products left[i] * right[j]"""
        return matmul_mod(np.asarray(right)[None], self.mul_matrices(left), self.p)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64) % self.p
        if not np.any(a):
            raise DivisionByZero(f"Inverse of zero in {self!r}")
        GF = self.GF
        solution = np.linalg.solve(GF(self.mul_matrices(a).T), GF(self.one))
        return np.asarray(solution, dtype=np.int64)

    def power(self, a, exponent):
        a = np.asarray(a, dtype=np.int64) % self.p
        if exponent < 0:
            a, exponent = self.inv(a), -exponent
        result = np.broadcast_to(self.one, a.shape).copy()
        base = a
        while exponent:
            if exponent & 1:
                result = self.mul(result, base)
            exponent >>= 1
            if exponent:
                base = self.mul(base, base)
        return result

    # Frobenius and trace

    @cached_property
    def frobenius_matrix(self):
        """GF(p)-matrix of a -> a^p: row i holds (x^p)^i"""
        xp = self.power(self.generator, self.p)
        rows = [self.one]
        for _ in range(self.n - 1):
            rows.append(self.mul(rows[-1], xp))
        return np.stack(rows)

    def frobenius_power(self, j):
        """Matrix of a -> a^(p^j)"""
        return _frobenius_power(self, j % self.n)

    def frob(self, a, e):
        """a^(q^e), with e reduced mod m"""
        j = self.require_subfield() * (e % self.m)
        if j == 0:
            return np.asarray(a, dtype=np.int64) % self.p
        return matmul_mod(a, self.frobenius_power(j), self.p)

    @cached_property
    def trace_matrix(self):
        h = self.require_subfield()
        total = np.zeros((self.n, self.n), dtype=np.int64)
        for i in range(self.m):
            total = (total + self.frobenius_power(h * i)) % self.p
        return total

    def trace(self, a):
        """Relative trace to GF(q), returned in subfield coordinates"""
        values = matmul_mod(a, self.trace_matrix, self.p)
        if not np.array_equal(self.frob(values, 1), values):
            raise InternalInvariantViolation("Trace is not fixed by the q-Frobenius")
        return self.subfield.coerce(values)

    # subfield

    @cached_property
    def subfield(self):
        return _realize_subfield(self)


@lru_cache(maxsize=4096)
def _frobenius_power(ctx, j):
    return matrix_power_mod(ctx.frobenius_matrix, j, ctx.p)


@dataclass(frozen=True, eq=False)
class Subfield:
    """GF(q) inside GF(q^m): row i of ``embedding`` is t^i for the generator t"""
    ctx: FieldCtx
    embedding: np.ndarray
    columns: tuple
    solver: np.ndarray
    big: FieldCtx

    def embed(self, c):
        return matmul_mod(np.asarray(c, dtype=np.int64), self.embedding, self.ctx.p)

    def coerce(self, a):
        a = np.asarray(a, dtype=np.int64) % self.ctx.p
        c = matmul_mod(a[..., list(self.columns)], self.solver, self.ctx.p)
        if not np.array_equal(self.embed(c), a):
            raise InternalInvariantViolation(f"Value does not lie in GF({self.ctx.order}) of {self.big!r}")
        return c

    def contains(self, a):
        a = np.asarray(a, dtype=np.int64) % self.ctx.p
        c = matmul_mod(a[..., list(self.columns)], self.solver, self.ctx.p)
        return np.all(self.embed(c) == a, axis=-1)


def _pivot_columns(GF, matrix):
    reduced = GF(matrix).row_reduce()
    columns = []
    for row in np.asarray(reduced):
        nonzero = np.flatnonzero(row)
        if nonzero.size:
            columns.append(int(nonzero[0]))
    return tuple(columns)


def _realize_subfield(ctx):
    p, n, h = ctx.p, ctx.n, ctx.require_subfield()
    GF = ctx.GF

    if h == n:
        sub = FieldCtx(p, n, ctx.modulus)
        embedding = np.eye(n, dtype=np.int64)
    elif h == 1:
        sub = FieldCtx(p, 1, (0, 1))
        embedding = ctx.one[None, :].copy()
    else:
        shift = (ctx.frobenius_power(h) - np.eye(n, dtype=np.int64)) % p
        fixed = GF(shift).left_null_space()
        if fixed.shape[0] != h:
            raise InternalInvariantViolation(f"Fixed space has dimension {fixed.shape[0]}, expected {h}")

        embedding, minimal = None, None
        for combo in itertools.product(range(p), repeat=h):
            if not any(combo):
                continue
            t = np.asarray(GF(list(combo)) @ fixed, dtype=np.int64)
            powers = [ctx.one]
            for _ in range(h):
                powers.append(ctx.mul(powers[-1], t))
            if np.linalg.matrix_rank(GF(np.stack(powers[:h]))) < h:
                continue
            relation = np.asarray(GF(np.stack(powers)).left_null_space()[0])
            relation = np.asarray(GF(relation) / GF(int(relation[h])), dtype=np.int64)
            minimal = tuple(int(c) for c in relation)
            embedding = np.stack(powers[:h])
            break
        if embedding is None:
            raise InternalInvariantViolation(f"No generator of GF({p}^{h}) inside {ctx!r}")
        sub = FieldCtx(p, h, minimal)

    columns = _pivot_columns(GF, embedding)
    solver = np.asarray(np.linalg.inv(GF(embedding[:, list(columns)])), dtype=np.int64)
    logger.debug(f"Realized GF({p}^{h}) inside {ctx!r} with modulus {sub.modulus}")
    return Subfield(ctx=sub, embedding=embedding, columns=columns, solver=solver, big=ctx)


@dataclass(frozen=True)
class FFElement:
    """A single element of a FieldCtx"""
    ctx: FieldCtx
    coeffs: tuple

    @classmethod
    def from_array(cls, ctx, array):
        return cls(ctx, tuple(int(c) for c in np.asarray(array).reshape(-1) % ctx.p))

    @property
    def array(self):
        return np.asarray(self.coeffs, dtype=np.int64)

    def is_zero(self):
        return not any(self.coeffs)

    def __repr__(self):
        from .polynomials import render_element
        return render_element(self.ctx, self.array)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __mul__(self, other):
        return mul(self, other)

    def __truediv__(self, other):
        return mul(self, inv(other))

    def __neg__(self):
        return neg(self)

    def __pow__(self, exponent):
        return power(self, exponent)


@lru_cache(maxsize=256)
def make_field(p, n, modulus, h=None):
    ctx = FieldCtx(p, n, modulus, h)
    if n >= 32:
        logger.info(f"Constructed {ctx!r} with modulus {modulus}")
    return ctx


def field_make(p, n, modulus=None, h=1):
    """Build GF(p^n) over GF(p^h); the default modulus is the least irreducible of degree n.

    Pass h=None for a bare field with no subfield marker.
    """
    if not galois.is_prime(int(p)):
        raise NotPrime(f"{p} is not prime")
    if n < 1:
        raise OutOfRange(f"Degree must be positive, got {n}")
    p, n = int(p), int(n)
    if (p - 1) ** 2 >= INT_EXACT:
        raise UnsupportedField(f"Characteristic {p} is too large")

    if modulus is None:
        modulus = least_irreducible(p, n)
    else:
        if isinstance(modulus, galois.Poly):
            modulus = modulus.coeffs[::-1]
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise OutOfRange(f"Modulus must be monic of degree {n}, got coefficients {modulus}")
        poly = galois.Poly(list(modulus), field=prime_field(p), order="asc")
        if not poly.is_irreducible():
            raise ReducibleModulus(f"{poly} is reducible over GF({p})")

    return make_field(p, n, modulus, None if h is None else int(h))


def _check(a, b):
    if a.ctx != b.ctx:
        raise FieldMismatch(f"{a.ctx!r} and {b.ctx!r}")
    return a.ctx


def add(a, b):
    ctx = _check(a, b)
    return FFElement.from_array(ctx, ctx.add(a.array, b.array))


def sub(a, b):
    ctx = _check(a, b)
    return FFElement.from_array(ctx, ctx.sub(a.array, b.array))


def mul(a, b):
    ctx = _check(a, b)
    return FFElement.from_array(ctx, ctx.mul(a.array, b.array))


def neg(a):
    return FFElement.from_array(a.ctx, a.ctx.neg(a.array))


def inv(a):
    return FFElement.from_array(a.ctx, a.ctx.inv(a.array))


def power(a, exponent):
    return FFElement.from_array(a.ctx, a.ctx.power(a.array, exponent))


def frob(a, e):
    """a^(q^e) for the q marked on the element's context"""
    if e < 0:
        raise OutOfRange(f"Frobenius exponent must be nonnegative, got {e}")
    return FFElement.from_array(a.ctx, a.ctx.frob(a.array, e))


def trace(a):
    """Tr(a) over GF(q), as an element of the subfield context"""
    ctx = a.ctx
    return FFElement.from_array(ctx.subfield.ctx, ctx.trace(a.array))


def element(ctx, coeffs):
    """Element from a coefficient list of any length (reduced mod the modulus)"""
    return FFElement.from_array(ctx, ctx.from_poly(coeffs))


def zero(ctx):
    return FFElement.from_array(ctx, ctx.zeros())


def one(ctx):
    return FFElement.from_array(ctx, ctx.one)
