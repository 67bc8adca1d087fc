"""
Bases of GF(q^m) over GF(q): Moore matrices, trace Gram matrices, dual bases
and self-dual bases obtained by congruence reduction of the Gram matrix.
"""
import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from apps.fields.fields import FFElement, FieldCtx
from apps.fields.linalg import FFMatrix, inverse, matmul, rank
from apps.utils.exceptions import (
    FactorizationFailed,
    InternalInvariantViolation,
    NoSelfDualBasis,
    NotABasis,
    RowCountOutOfRange,
    Singular,
)
from apps.utils.performance import log_performance

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class BasisVec:
    """Ordered basis (α_1, ..., α_m) of GF(q^m) over GF(q); ``elems`` is (m, n)"""
    ctx: FieldCtx
    elems: np.ndarray

    @property
    def m(self):
        return self.elems.shape[0]

    @property
    def q(self):
        return self.ctx.q

    @cached_property
    def frobenius_images(self):
        """(m, m, n) stack whose slice i is the basis raised to q^i"""
        return np.stack([self.ctx.frob(self.elems, i) for i in range(self.m)])

    @cached_property
    def dual(self):
        return _dual_of(self)

    def elements(self):
        return [FFElement.from_array(self.ctx, e) for e in self.elems]

    def as_row(self):
        return FFMatrix(self.ctx, self.elems[None])

    def equals(self, other):
        return self.ctx == other.ctx and np.array_equal(self.elems, other.elems)


def make_basis(ctx, elems):
    """Validated basis: the full Moore matrix must be nonsingular"""
    elems = ctx.asarray(elems)
    if elems.ndim != 2 or elems.shape[0] != ctx.m:
        raise NotABasis(f"Expected {ctx.m} elements, got {elems.shape[0] if elems.ndim == 2 else 0}")
    basis = BasisVec(ctx, elems)
    if rank(moore_matrix(basis, ctx.m)) != ctx.m:
        raise NotABasis(f"Elements are dependent over GF({ctx.q})")
    return basis


def power_basis(ctx):
    """{1, x, ..., x^(m-1)}"""
    return BasisVec(ctx, ctx.power_basis(ctx.m))


def moore_matrix(basis, rows):
    """Row i (from 0) is the basis raised coordinate-wise to q^i"""
    ctx = basis.ctx
    if not 1 <= rows <= basis.m:
        raise RowCountOutOfRange(f"Moore matrix needs 1 <= rows <= {basis.m}, got {rows}")
    return FFMatrix(ctx, basis.frobenius_images[:rows].copy())


def gram_matrix(basis):
    """Tr(α_i α_j) as an m x m matrix over GF(q)"""
    ctx = basis.ctx
    products = ctx.outer(basis.elems, basis.elems)
    return FFMatrix(ctx.subfield.ctx, ctx.trace(products))


def is_self_dual(basis):
    gram = gram_matrix(basis)
    return gram.equals(FFMatrix.identity(gram.ctx, basis.m))


def dual_basis(basis):
    """The β with Moore(β)^T = Moore(α)^-1, i.e. Tr(α_i β_j) = δ_ij; computed once per basis"""
    return basis.dual


def _dual_of(basis):
    ctx = basis.ctx
    moore = moore_matrix(basis, basis.m)
    try:
        inverted = inverse(moore)
    except Singular as exc:
        raise NotABasis(str(exc)) from exc
    dual = BasisVec(ctx, inverted.data[:, 0])

    identity = FFMatrix.identity(ctx, basis.m)
    if not matmul(moore_matrix(dual, basis.m).T, moore).equals(identity):
        raise InternalInvariantViolation('Moore(β)^T Moore(α) is not the identity')
    pairings = ctx.trace(ctx.outer(basis.elems, dual.elems))
    if not np.array_equal(pairings, FFMatrix.identity(ctx.subfield.ctx, basis.m).data):
        raise InternalInvariantViolation('Tr(α_i β_j) is not δ_ij')
    return dual


def self_dual_exists(q, m):
    """A self-dual basis of GF(q^m)/GF(q) exists iff q is even or q and m are both odd"""
    return q % 2 == 0 or (q % 2 == 1 and m % 2 == 1)


def is_square(S, a):
    if not np.any(a):
        return True
    if S.p == 2:
        return True
    return np.array_equal(S.power(a, (S.order - 1) // 2), S.one)


def sqrt(S, a):
    """Square root in GF(q)"""
    a = np.asarray(a, dtype=np.int64) % S.p
    q = S.order
    if not np.any(a):
        return a
    if S.p == 2:
        return S.power(a, q // 2)
    if not is_square(S, a):
        raise FactorizationFailed(f"{a.tolist()} is not a square in GF({q})")
    if q % 4 == 3:
        return S.power(a, (q + 1) // 4)
    return _tonelli_shanks(S, a)


def _tonelli_shanks(S, a):
    q = S.order
    odd, twos = q - 1, 0
    while odd % 2 == 0:
        odd, twos = odd // 2, twos + 1
    nonsquare = next(z for z in S.elements() if not is_square(S, z))

    c = S.power(nonsquare, odd)
    t = S.power(a, odd)
    root = S.power(a, (odd + 1) // 2)
    bound = twos
    while not np.array_equal(t, S.one):
        i, probe = 0, t
        while not np.array_equal(probe, S.one):
            probe = S.mul(probe, probe)
            i += 1
        b = S.power(c, 2 ** (bound - i - 1))
        bound = i
        c = S.mul(b, b)
        t = S.mul(t, c)
        root = S.mul(root, b)
    return root


class CongruenceReduction:
    """
    Finds E over GF(q) with E M E^T = I for a symmetric nonsingular M.

    Vectors are rows of coefficients over GF(q) with respect to the starting
    basis; B(x, y) = x M y^T and Q(x) = B(x, x).
    """

    def __init__(self, S, gram):
        self.S = S
        self.gram = FFMatrix(S, gram)
        self.m = self.gram.rows

    def images(self, W):
        if len(W) == 0:
            return W
        return matmul(FFMatrix(self.S, W), self.gram).data

    def pair(self, images, y):
        """B(w, y) for each w whose image w M is a row of ``images``"""
        return self.S.mul(images, y[None]).sum(axis=1) % self.S.p

    def quadratic(self, W, images):
        return self.S.mul(W, images).sum(axis=1) % self.S.p

    def reduce(self):
        if self.S.p == 2:
            return self._reduce_even()
        return self._reduce_odd()

    def _reduce_odd(self):
        S = self.S
        W = S.identity(self.m)
        vectors, values = [], []
        while len(W):
            images = self.images(W)
            Q = self.quadratic(W, images)
            candidates = np.flatnonzero(np.any(Q, axis=-1))
            if candidates.size:
                i = int(candidates[0])
            else:
                # Q(w_0 + w_j) = 2 B(w_0, w_j)
                cross = self.pair(images, W[0])
                partners = np.flatnonzero(np.any(cross, axis=-1))
                if partners.size == 0:
                    raise FactorizationFailed('Gram matrix is degenerate')
                j = int(partners[0])
                W[0] = S.add(W[0], W[j])
                images[0] = S.add(images[0], images[j])
                i = 0

            u, value = W[i], self.quadratic(W[i:i + 1], images[i:i + 1])[0]
            keep = np.arange(len(W)) != i
            factors = S.mul(self.pair(images[keep], u), S.inv(value))
            W = S.sub(W[keep], S.outer(factors, u))
            vectors.append(u)
            values.append(value)

        rows, leftovers = [], []
        for u, value in zip(vectors, values):
            if is_square(S, value):
                rows.append(S.mul(u, S.inv(sqrt(S, value))))
            else:
                leftovers.append((u, value))
        if len(leftovers) % 2:
            raise FactorizationFailed('A single non-square diagonal entry remains')

        for (ua, a), (ub, b) in zip(leftovers[0::2], leftovers[1::2]):
            x, y = self._two_squares(a, b)
            rows.append(S.add(S.mul(ua, x), S.mul(ub, y)))
            scale = S.inv(sqrt(S, S.mul(a, b)))
            rotated = S.add(S.mul(ua, S.neg(S.mul(b, y))), S.mul(ub, S.mul(a, x)))
            rows.append(S.mul(rotated, scale))
        return np.stack(rows)

    def _two_squares(self, a, b):
        """x, y with a x^2 + b y^2 = 1"""
        S = self.S
        b_inv = S.inv(b)
        for x in S.elements():
            rest = S.mul(S.sub(S.one, S.mul(a, S.mul(x, x))), b_inv)
            if is_square(S, rest):
                return x, sqrt(S, rest)
        raise FactorizationFailed('No representation a x^2 + b y^2 = 1')

    def _reduce_even(self):
        S = self.S
        W = S.identity(self.m)
        orthonormal = []
        while len(W):
            images = self.images(W)
            Q = self.quadratic(W, images)
            candidates = np.flatnonzero(np.any(Q, axis=-1))
            if candidates.size:
                i = int(candidates[0])
                u = S.mul(W[i], S.inv(sqrt(S, Q[i])))
                keep = np.arange(len(W)) != i
                W = S.sub(W[keep], S.outer(self.pair(images[keep], u), u))
                orthonormal.append(u)
                continue

            # alternating remainder: trade one orthonormal vector and a
            # hyperbolic pair for three orthonormal vectors
            if not orthonormal:
                raise FactorizationFailed('Trace form is alternating')
            w1 = W[0]
            cross = self.pair(images, w1)
            partners = np.flatnonzero(np.any(cross, axis=-1))
            if partners.size == 0:
                raise FactorizationFailed('Gram matrix is degenerate')
            j = int(partners[0])
            w2 = S.mul(W[j], S.inv(cross[j]))
            keep = (np.arange(len(W)) != 0) & (np.arange(len(W)) != j)
            rest, rest_images = W[keep], images[keep]
            rest = S.sub(rest, S.outer(self.pair(rest_images, w2), w1))
            rest = S.sub(rest, S.outer(self.pair(rest_images, w1), w2))
            u = orthonormal.pop()
            orthonormal.extend([
                S.add(S.add(u, w1), w2),
                S.add(u, w1),
                S.add(u, w2),
            ])
            W = rest
        return np.stack(orthonormal)


@dataclass(frozen=True, eq=False)
class SelfDualConstruction:
    start: BasisVec
    gram: FFMatrix
    transform: FFMatrix
    basis: BasisVec


@log_performance()
def self_dual_construction(ctx, start=None):
    """Start basis, its Gram matrix M, E with E M E^T = I, and α = E β"""
    q, m = ctx.q, ctx.m
    if not self_dual_exists(q, m):
        raise NoSelfDualBasis(
            f"GF({q}^{m}) over GF({q}) has no self-dual basis: "
            f"one exists if and only if q is even or q and m are both odd"
        )
    start = start or power_basis(ctx)
    gram = gram_matrix(start)
    S = gram.ctx

    transform = CongruenceReduction(S, gram.data).reduce()
    embedded = ctx.subfield.embed(transform)
    alpha = matmul(FFMatrix(ctx, embedded), FFMatrix(ctx, start.elems[:, None])).data[:, 0]
    basis = BasisVec(ctx, alpha)

    if not is_self_dual(basis):
        raise InternalInvariantViolation(f"Constructed basis of {ctx!r} fails Gram(α) = I")
    logger.info(f"Constructed self-dual basis of GF({q}^{m}) over GF({q})")
    return SelfDualConstruction(start=start, gram=gram, transform=FFMatrix(S, transform), basis=basis)


def self_dual_basis(ctx, start=None):
    return self_dual_construction(ctx, start).basis
