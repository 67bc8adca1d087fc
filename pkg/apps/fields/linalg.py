"""
Dense exact linear algebra over a FieldCtx.

Matrices store their entries as an int64 array of shape (rows, cols, n).
Elimination pivots on the first nonzero entry of each column, so every
result is deterministic.
"""
import logging
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from django.conf import settings

from apps.utils.exceptions import FieldMismatch, InternalInvariantViolation, ShapeMismatch, Singular
from .fields import FFElement, FieldCtx, matmul_mod

logger = logging.getLogger(__name__)

# bytes of multiplication matrices materialized per batch
BATCH_BYTES = 2 ** 26


def strict_checks():
    return settings.CODING.get('STRICT_CHECKS', False)


def cross_checks(size):
    """Whether results for matrices of this size are recomputed by a second method"""
    return strict_checks() or size <= settings.CODING.get('CROSS_CHECK_MAX_SIZE', 12)


@dataclass(frozen=True, eq=False)
class FFMatrix:
    """Matrix over ``ctx``; ``data`` has shape (rows, cols, n)"""
    ctx: FieldCtx
    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.int64)
        if data.ndim != 3 or data.shape[-1] != self.ctx.n:
            raise ShapeMismatch(f"Expected (rows, cols, {self.ctx.n}) entries, got {data.shape}")
        object.__setattr__(self, 'data', data % self.ctx.p)

    @classmethod
    def zeros(cls, ctx, rows, cols):
        return cls(ctx, ctx.zeros(rows, cols))

    @classmethod
    def identity(cls, ctx, size):
        return cls(ctx, ctx.identity(size))

    @classmethod
    def from_rows(cls, ctx, rows, cols=None):
        rows = [np.asarray(r, dtype=np.int64) for r in rows]
        if not rows:
            return cls.zeros(ctx, 0, cols or 0)
        return cls(ctx, np.stack(rows))

    @property
    def rows(self):
        return self.data.shape[0]

    @property
    def cols(self):
        return self.data.shape[1]

    @property
    def shape(self):
        return self.rows, self.cols

    def entry(self, i, j):
        return FFElement.from_array(self.ctx, self.data[i, j])

    def row(self, i):
        return self.data[i]

    def stack(self, other):
        _same_field(self, other)
        if self.cols != other.cols:
            raise ShapeMismatch(f"Cannot stack {self.shape} on {other.shape}")
        return FFMatrix(self.ctx, np.concatenate([self.data, other.data], axis=0))

    def transpose(self):
        return FFMatrix(self.ctx, self.data.transpose(1, 0, 2))

    @property
    def T(self):
        return self.transpose()

    def frob(self, e):
        """Entry-wise q^e Frobenius"""
        return FFMatrix(self.ctx, self.ctx.frob(self.data, e))

    def select_columns(self, columns):
        return FFMatrix(self.ctx, self.data[:, list(columns)])

    def __matmul__(self, other):
        return matmul(self, other)

    def __neg__(self):
        return FFMatrix(self.ctx, self.ctx.neg(self.data))

    def equals(self, other):
        return self.ctx == other.ctx and np.array_equal(self.data, other.data)

    def is_zero(self):
        return not np.any(self.data)

    def tolist(self):
        return self.data.tolist()

    def __repr__(self):
        return f"FFMatrix({self.rows}x{self.cols} over {self.ctx!r})"


class RowEchelon(NamedTuple):
    matrix: FFMatrix
    rank: int
    pivots: tuple


def _same_field(a, b):
    if a.ctx != b.ctx:
        raise FieldMismatch(f"{a.ctx!r} and {b.ctx!r}")


def matmul(a, b):
    _same_field(a, b)
    if a.cols != b.rows:
        raise ShapeMismatch(f"Cannot multiply {a.shape} by {b.shape}")
    ctx = a.ctx
    out = ctx.zeros(a.rows, b.cols)
    if a.cols == 0:
        return FFMatrix(ctx, out)
    # (c, s*n) against the stacked multiplication matrices of one row of a
    right = b.data.transpose(1, 0, 2).reshape(b.cols, b.rows * ctx.n)
    for i in range(a.rows):
        left = ctx.mul_matrices(a.data[i]).reshape(a.cols * ctx.n, ctx.n)
        out[i] = matmul_mod(right, left, ctx.p)
    return FFMatrix(ctx, out)


def rref(matrix, reduced=True):
    """Row echelon form, rank and pivot columns.

    With ``reduced=False`` only rows below each pivot are cleared and pivots
    are not normalized, which is enough for rank.
    """
    ctx = matrix.ctx
    data = matrix.data.copy()
    rows, cols = matrix.shape
    pivots = []
    r = 0
    for col in range(cols):
        if r == rows:
            break
        nonzero = np.flatnonzero(np.any(data[r:, col], axis=-1))
        if nonzero.size == 0:
            continue
        pivot = r + int(nonzero[0])
        if pivot != r:
            data[[r, pivot]] = data[[pivot, r]]

        if reduced:
            scale = ctx.inv(data[r, col])
            data[r, col:] = ctx.outer(scale[None], data[r, col:])[0]
            targets = np.flatnonzero(np.arange(rows) != r)
            factors = data[targets, col]
        else:
            targets = np.arange(r + 1, rows)
            factors = ctx.mul(data[targets, col], ctx.inv(data[r, col]))

        live = np.any(factors, axis=-1)
        targets, factors = targets[live], factors[live]
        if targets.size:
            data[targets, col:] = ctx.sub(data[targets, col:], ctx.outer(factors, data[r, col:]))
        pivots.append(col)
        r += 1
    return RowEchelon(FFMatrix(ctx, data), r, tuple(pivots))


def rank(matrix):
    return rref(matrix, reduced=False).rank


def kernel(matrix):
    """Rows spanning {x : M x^T = 0}"""
    ctx = matrix.ctx
    echelon = rref(matrix)
    cols = matrix.cols
    free = [c for c in range(cols) if c not in echelon.pivots]
    basis = ctx.zeros(len(free), cols)
    if free:
        basis[np.arange(len(free)), free, 0] = 1
        reduced = echelon.matrix.data
        for i, pivot in enumerate(echelon.pivots):
            basis[:, pivot] = ctx.neg(reduced[i, free])
    result = FFMatrix(ctx, basis)

    if strict_checks():
        if result.rows + echelon.rank != cols:
            raise InternalInvariantViolation('Rank-nullity violated')
        if result.rows and not matmul(matrix, result.T).is_zero():
            raise InternalInvariantViolation('Kernel vector is not annihilated')
    return result


def inverse(matrix):
    if matrix.rows != matrix.cols:
        raise ShapeMismatch(f"Cannot invert a {matrix.rows}x{matrix.cols} matrix")
    ctx = matrix.ctx
    size = matrix.rows
    augmented = FFMatrix(ctx, np.concatenate([matrix.data, ctx.identity(size)], axis=1))
    echelon = rref(augmented)
    if echelon.pivots[:size] != tuple(range(size)):
        raise Singular(f"Matrix of rank {sum(1 for c in echelon.pivots if c < size)} < {size}")
    return FFMatrix(ctx, echelon.matrix.data[:, size:])


def intersection_dim(a, b):
    """dim(rowspace(a) ∩ rowspace(b))"""
    _same_field(a, b)
    if a.cols != b.cols:
        raise ShapeMismatch(f"Column counts differ: {a.cols} and {b.cols}")
    return rank(a) + rank(b) - rank(a.stack(b))


def intersection_basis(a, b):
    """Basis of rowspace(a) ∩ rowspace(b), from u·a = v·b solved as a kernel"""
    _same_field(a, b)
    if a.cols != b.cols:
        raise ShapeMismatch(f"Column counts differ: {a.cols} and {b.cols}")
    ctx = a.ctx
    system = FFMatrix(ctx, np.concatenate([a.data, ctx.neg(b.data)], axis=0).transpose(1, 0, 2))
    solutions = kernel(system)
    if solutions.rows == 0:
        return FFMatrix.zeros(ctx, 0, a.cols)
    coefficients = FFMatrix(ctx, solutions.data[:, :a.rows])
    vectors = matmul(coefficients, a)
    echelon = rref(vectors)
    return FFMatrix(ctx, echelon.matrix.data[:echelon.rank])


def in_rowspace(matrix, vector):
    vector = np.asarray(vector, dtype=np.int64).reshape(1, matrix.cols, matrix.ctx.n)
    return rank(matrix.stack(FFMatrix(matrix.ctx, vector))) == rank(matrix)


def rowspace_equal(a, b):
    """Same row space, compared through canonical reduced forms"""
    left, right = rref(a), rref(b)
    if left.rank != right.rank:
        return False
    return np.array_equal(left.matrix.data[:left.rank], right.matrix.data[:right.rank])


def rank_fraction_free(matrix):
    """Rank by inverse-free elimination: row <- pivot * row - factor * pivot_row"""
    ctx = matrix.ctx
    data = matrix.data.copy()
    rows, cols = matrix.shape
    r = 0
    for col in range(cols):
        if r == rows:
            break
        nonzero = np.flatnonzero(np.any(data[r:, col], axis=-1))
        if nonzero.size == 0:
            continue
        pivot = r + int(nonzero[0])
        if pivot != r:
            data[[r, pivot]] = data[[pivot, r]]
        below = np.arange(r + 1, rows)
        if below.size:
            scaled = matmul_mod(data[below, col:], ctx.mul_matrices(data[r, col]), ctx.p)
            data[below, col:] = ctx.sub(scaled, ctx.outer(data[below, col], data[r, col:]))
        r += 1
    return r


def nonsingular_batch(ctx, minors):
    """Nonsingularity of a stack of k x k matrices of shape (B, k, k, n).

    Fraction-free elimination with an independent pivot choice per matrix.
    """
    minors = np.asarray(minors, dtype=np.int64)
    total, k = minors.shape[0], minors.shape[1]
    chunk = max(1, BATCH_BYTES // max(1, k * k * ctx.n * ctx.n * 8))
    verdicts = np.empty(total, dtype=bool)
    for start in range(0, total, chunk):
        verdicts[start:start + chunk] = _nonsingular_chunk(ctx, minors[start:start + chunk].copy())
    return verdicts


def _nonsingular_chunk(ctx, data):
    batch, k = data.shape[0], data.shape[1]
    alive = np.ones(batch, dtype=bool)
    index = np.arange(batch)
    for col in range(k):
        mask = np.any(data[:, col:, col], axis=-1)
        alive &= mask.any(axis=1)
        choice = col + np.argmax(mask, axis=1)
        pivot_rows = data[index, choice].copy()
        data[index, choice] = data[index, col]
        data[index, col] = pivot_rows
        if col + 1 == k:
            break
        pivot = data[:, col, col]
        below = data[:, col + 1:, col:]
        factors = data[:, col + 1:, col]
        scaled = ctx.mul(pivot[:, None, None, :], below)
        cross = ctx.mul(factors[:, :, None, :], data[:, None, col, col:])
        data[:, col + 1:, col:] = ctx.sub(scaled, cross)
    return alive


def rank_batch(ctx, matrices):
    """Ranks of a stack of matrices of shape (B, rows, cols, n).

    Each matrix keeps its own pivot row; elimination is fraction-free.
    """
    matrices = np.asarray(matrices, dtype=np.int64)
    total, rows, cols = matrices.shape[:3]
    chunk = max(1, BATCH_BYTES // max(1, rows * cols * ctx.n * ctx.n * 8))
    ranks = np.empty(total, dtype=np.int64)
    for start in range(0, total, chunk):
        ranks[start:start + chunk] = _rank_chunk(ctx, matrices[start:start + chunk].copy())
    return ranks


def _rank_chunk(ctx, data):
    batch, rows, cols = data.shape[:3]
    ranks = np.zeros(batch, dtype=np.int64)
    row_index = np.arange(rows)
    for col in range(cols):
        eligible = row_index[None, :] >= ranks[:, None]
        mask = np.any(data[:, :, col], axis=-1) & eligible
        found = np.flatnonzero(mask.any(axis=1))
        if found.size == 0:
            continue
        choice = np.argmax(mask[found], axis=1)
        target = ranks[found]
        swapped = data[found, choice].copy()
        data[found, choice] = data[found, target]
        data[found, target] = swapped

        block = data[found]
        pivot = block[np.arange(found.size), target, col]
        pivot_row = block[np.arange(found.size), target]
        factors = block[:, :, col]
        # pivot * block - factor * pivot_row, through per-entry multiplication matrices
        updated = ctx.sub(
            matmul_mod(block, ctx.mul_matrices(pivot)[:, None], ctx.p),
            matmul_mod(pivot_row[:, None], ctx.mul_matrices(factors), ctx.p),
        )
        below = row_index[None, :] > target[:, None]
        data[found] = np.where(below[:, :, None, None], updated, block)
        ranks[found] += 1
    return ranks
