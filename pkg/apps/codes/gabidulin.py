"""
Gabidulin codes G_k(α) of length m over GF(q^m).

The generator has rows α^(q^0), ..., α^(q^(k-1)); the parity check has rows
β^(q^k), ..., β^(q^(m-1)) for the dual basis β. The e-Galois dual follows one
of two conventions:

  theorem        x is dual when G (x^(q^e))^T = 0; generator H^(q^(m-e))
  preliminaries  x is dual when x ._e y = 0 for every codeword y; generator H^(q^e)
"""
import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from math import comb

import numpy as np
from django.conf import settings

from apps.fields.fields import FFElement
from apps.fields.linalg import (
    FFMatrix,
    kernel,
    matmul,
    nonsingular_batch,
    rank_batch,
)
from apps.utils.exceptions import (
    DimensionOutOfRange,
    FieldMismatch,
    FullDimension,
    InternalInvariantViolation,
    OutOfRange,
    ShapeMismatch,
    TooLarge,
)
from .bases import BasisVec, dual_basis, moore_matrix

logger = logging.getLogger(__name__)

# combinations gathered per nonsingularity batch
MINOR_BATCH = 4096


class DualConvention(str, Enum):
    THEOREM = 'theorem'
    PRELIMINARIES = 'preliminaries'

    def __str__(self):
        return self.value


class MdsStatus(str, Enum):
    VERIFIED = 'verified'
    FAILED = 'failed'
    NOT_VERIFIED = 'not-verified'

    def __str__(self):
        return self.value


@dataclass(frozen=True, eq=False)
class GabidulinCode:
    basis: BasisVec
    k: int
    generator: FFMatrix
    dual: BasisVec

    @property
    def ctx(self):
        return self.basis.ctx

    @property
    def m(self):
        return self.basis.m

    @property
    def q(self):
        return self.basis.q

    def __repr__(self):
        return f"G_{self.k}(α) over {self.ctx!r}"


def code_new(basis, k):
    m = basis.m
    if not 1 <= k <= m:
        raise DimensionOutOfRange(f"Need 1 <= k <= {m}, got k={k}")
    # NotABasis for dependent elements, whose Moore matrix has no inverse
    dual = dual_basis(basis)
    return GabidulinCode(basis=basis, k=k, generator=moore_matrix(basis, k), dual=dual)


def _frobenius_rows(basis, exponents):
    """Rows basis^(q^j) taken from the cached Frobenius images, exponents mod m"""
    index = np.asarray([j % basis.m for j in exponents], dtype=np.intp)
    return FFMatrix(basis.ctx, basis.frobenius_images[index])


def _require_proper(code):
    if code.k >= code.m:
        raise FullDimension(f"k = m = {code.m}: the dual code is zero")


def _check_e(code, e):
    if not 0 <= e <= code.m - 1:
        raise OutOfRange(f"Need 0 <= e <= {code.m - 1}, got e={e}")


def parity_check(code):
    """Rows β^(q^k), ..., β^(q^(m-1)); satisfies G H^T = 0"""
    _require_proper(code)
    parity = _frobenius_rows(code.dual, range(code.k, code.m))
    if not matmul(code.generator, parity.T).is_zero():
        raise InternalInvariantViolation('G H^T is not zero')
    return parity


def galois_dual_gen(code, e, convention=DualConvention.THEOREM):
    """Closed-form generator of the e-Galois dual"""
    _require_proper(code)
    _check_e(code, e)
    m, k = code.m, code.k
    convention = DualConvention(convention)

    if convention is DualConvention.THEOREM:
        # β^(q^(k-e+i)), exponents mod m
        dual = _frobenius_rows(code.dual, range(k - e, m - e))
    else:
        dual = _frobenius_rows(code.dual, range(k + e, m + e))
    if not e_orthogonal(code, dual, e, convention):
        raise InternalInvariantViolation(f"Dual generator fails e-orthogonality at e={e}")
    return dual


def e_orthogonal(code, rows, e, convention):
    """Whether every row is e-orthogonal to the code under the convention"""
    if convention is DualConvention.THEOREM:
        return matmul(code.generator, rows.frob(e).T).is_zero()
    return matmul(rows, code.generator.frob(e).T).is_zero()


def galois_dual_oracle(code, e, convention=DualConvention.THEOREM):
    """Dual basis from a kernel solve, independent of the closed form"""
    _require_proper(code)
    _check_e(code, e)
    convention = DualConvention(convention)
    if convention is DualConvention.THEOREM:
        return kernel(code.generator).frob(code.m - e)
    return kernel(code.generator.frob(e))


def _as_vector(values, ctx=None):
    if isinstance(values, np.ndarray):
        return ctx, values
    values = list(values)
    if values and isinstance(values[0], FFElement):
        ctx = ctx or values[0].ctx
        if any(v.ctx != ctx for v in values):
            raise FieldMismatch('Vector entries belong to different fields')
        return ctx, np.stack([v.array for v in values])
    return ctx, np.asarray(values, dtype=np.int64)


def galois_ip(x, y, e, ctx=None):
    """sum_i x_i y_i^(q^e)"""
    ctx, x = _as_vector(x, ctx)
    ctx_y, y = _as_vector(y, ctx)
    if ctx is None or ctx_y != ctx:
        raise FieldMismatch('Galois inner product needs both vectors in one field')
    if x.shape != y.shape:
        raise ShapeMismatch(f"Vector shapes differ: {x.shape} and {y.shape}")
    terms = ctx.mul(x, ctx.frob(y, e))
    return FFElement.from_array(ctx, terms.sum(axis=0) % ctx.p)


def encode(code, message):
    """message G for a message of k field elements; returns an (m, n) array"""
    ctx, message = _as_vector(message, code.ctx)
    if ctx != code.ctx:
        raise FieldMismatch(f"Message is not over {code.ctx!r}")
    if message.shape != (code.k, ctx.n):
        raise ShapeMismatch(f"Message must hold {code.k} elements, got shape {message.shape}")
    return matmul(FFMatrix(ctx, message[None]), code.generator).data[0]


def all_minors_nonsingular(generator, budget=None):
    """Whether every k x k minor over all column selections is nonsingular"""
    budget = settings.CODING['MAX_MINORS'] if budget is None else budget
    k, m = generator.shape
    count = comb(m, k)
    if count > budget:
        raise TooLarge(f"{count} minors exceed the budget of {budget}")

    ctx = generator.ctx
    selections = itertools.combinations(range(m), k)
    while True:
        batch = list(itertools.islice(selections, MINOR_BATCH))
        if not batch:
            return True
        columns = np.asarray(batch)
        minors = generator.data[:, columns].transpose(1, 0, 2, 3)
        if not nonsingular_batch(ctx, minors).all():
            return False


def is_mds(code, budget=None):
    return all_minors_nonsingular(code.generator, budget)


def mds_status(code, budget=None):
    try:
        verified = is_mds(code, budget)
    except TooLarge as exc:
        logger.warning(f"MDS check skipped for {code!r}: {exc}")
        return MdsStatus.NOT_VERIFIED
    return MdsStatus.VERIFIED if verified else MdsStatus.FAILED


def expand(code, words):
    """Coordinates over GF(q) of each word position: (..., m, m, h), entry [i, j] = Tr(c_j β_i)"""
    ctx = code.ctx
    words = np.asarray(words, dtype=np.int64)
    products = ctx.mul(code.dual.elems[:, None, :], words[..., None, :, :])
    return ctx.trace(products)


def rank_weight(code, word):
    """Rank over GF(q) of the m x m expansion of a word"""
    ctx, word = _as_vector(word, code.ctx)
    matrices = expand(code, word[None])
    return int(rank_batch(ctx.subfield.ctx, matrices)[0])


def min_rank_distance(code, budget=None):
    """Exhaustive minimum rank weight over all nonzero codewords"""
    budget = settings.CODING['MRD_MAX_CODEWORDS'] if budget is None else budget
    ctx = code.ctx
    count = ctx.order ** code.k
    if count > budget:
        raise TooLarge(f"{count} codewords exceed the budget of {budget}")

    elements = ctx.elements()
    messages = np.asarray(list(itertools.product(elements, repeat=code.k)), dtype=np.int64)[1:]
    best = code.m
    for start in range(0, len(messages), MINOR_BATCH):
        block = messages[start:start + MINOR_BATCH]
        words = ctx.mul(block[:, :, None, :], code.generator.data[None]).sum(axis=1) % ctx.p
        weights = rank_batch(ctx.subfield.ctx, expand(code, words))
        best = min(best, int(weights.min()))
    return best


def mrd_check(code, budget=None):
    """Minimum rank distance equals m - k + 1"""
    return min_rank_distance(code, budget) == code.m - code.k + 1
