"""
e-Galois hulls of Gabidulin codes.

For a self-dual basis the hull dimension has the closed form
min(m-k, e) when e <= k and min(m-e, k) otherwise; the oracle computes it
from ranks alone and is the only source of truth for other bases.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Optional

from apps.fields.linalg import (
    FFMatrix,
    cross_checks,
    in_rowspace,
    intersection_basis,
    intersection_dim,
    matmul,
    rank,
    rank_fraction_free,
)
from apps.utils.exceptions import InternalInvariantViolation, OddLength, OutOfRange
from .bases import is_self_dual
from .gabidulin import DualConvention, code_new, e_orthogonal, galois_dual_gen, galois_dual_oracle

logger = logging.getLogger(__name__)


class Classification(str, Enum):
    LCD = 'LCD'
    SELF_ORTHOGONAL = 'self-orthogonal-proper'
    SELF_DUAL = 'self-dual'
    DUAL_CONTAINING = 'dual-containing'
    GENERIC = 'generic'

    def __str__(self):
        return self.value

    @property
    def self_orthogonal(self):
        return self in (Classification.SELF_ORTHOGONAL, Classification.SELF_DUAL)


@dataclass
class HullReport:
    p: int
    h: int
    m: int
    k: int
    e: int
    dim_formula: Optional[int]
    dim_oracle: int
    classification: Classification
    convention: DualConvention = DualConvention.THEOREM
    formula_applicable: bool = True
    hull_basis: Optional[FFMatrix] = field(default=None, repr=False)

    @property
    def q(self):
        return self.p ** self.h

    @property
    def agree(self):
        if self.dim_formula is None:
            return None
        return self.dim_formula == self.dim_oracle

    @property
    def sort_key(self):
        return self.p, self.h, self.m, self.k, self.e


def hull_dim_formula(m, k, e):
    if not 1 <= k <= m - 1:
        raise OutOfRange(f"Need 1 <= k <= {m - 1}, got k={k}")
    if not 0 <= e <= m - 1:
        raise OutOfRange(f"Need 0 <= e <= {m - 1}, got e={e}")
    if e <= k:
        return min(m - k, e)
    return min(m - e, k)


def classify_dim(dim, m, k):
    if dim == 0:
        return Classification.LCD
    if dim == k and k == m - k:
        return Classification.SELF_DUAL
    if dim == k:
        return Classification.SELF_ORTHOGONAL
    if dim == m - k:
        return Classification.DUAL_CONTAINING
    return Classification.GENERIC


def hull_dim_oracle(code, e, convention=DualConvention.THEOREM):
    """m - rank(G stacked on the dual generator), cross-checked by a kernel solve.

    The rank is taken by inverse-free elimination.
    """
    dual = galois_dual_gen(code, e, convention)
    dim = code.m - rank_fraction_free(code.generator.stack(dual))
    _cross_check(code, e, convention, dim)
    if not 0 <= dim <= min(code.k, code.m - code.k):
        raise InternalInvariantViolation(f"Hull dimension {dim} out of range")
    return dim


def _cross_check(code, e, convention, dim):
    """dim(C ∩ dual) with the dual from a kernel solve.

    Above ``CODING['CROSS_CHECK_MAX_SIZE']`` only the stacked rank is
    recomputed: G has rank k and kernel rows are independent.
    """
    oracle = galois_dual_oracle(code, e, convention)
    if cross_checks(code.m):
        independent = intersection_dim(code.generator, oracle)
    else:
        independent = code.k + oracle.rows - rank(code.generator.stack(oracle))
    if independent != dim:
        raise InternalInvariantViolation(
            f"Hull dimension paths disagree for k={code.k}, e={e}: {dim} vs {independent}"
        )


def hull_basis(code, e, convention=DualConvention.THEOREM):
    """Rows spanning C ∩ C^(⊥e)"""
    convention = DualConvention(convention)
    dual = galois_dual_gen(code, e, convention)
    basis = intersection_basis(code.generator, dual)

    expected = code.m - rank(code.generator.stack(dual))
    if basis.rows != expected:
        raise InternalInvariantViolation(f"Hull basis has {basis.rows} rows, expected {expected}")
    for i in range(basis.rows):
        row = basis.row(i)
        if not (in_rowspace(code.generator, row) and in_rowspace(dual, row)):
            raise InternalInvariantViolation('Hull basis row is outside the code or its dual')
    if basis.rows and not e_orthogonal(code, basis, e, convention):
        raise InternalInvariantViolation('Hull basis row is not e-orthogonal to the code')
    return basis


def classify(code, e, convention=DualConvention.THEOREM):
    return classify_dim(hull_dim_oracle(code, e, convention), code.m, code.k)


def hull_report(code, e, convention=DualConvention.THEOREM, with_basis=False, self_dual=None):
    convention = DualConvention(convention)
    ctx = code.ctx
    if self_dual is None:
        self_dual = is_self_dual(code.basis)
    applicable = self_dual and convention is DualConvention.THEOREM

    dim = hull_dim_oracle(code, e, convention)
    report = HullReport(
        p=ctx.p,
        h=ctx.h,
        m=code.m,
        k=code.k,
        e=e,
        dim_formula=hull_dim_formula(code.m, code.k, e) if applicable else None,
        dim_oracle=dim,
        classification=classify_dim(dim, code.m, code.k),
        convention=convention,
        formula_applicable=applicable,
        hull_basis=hull_basis(code, e, convention) if with_basis else None,
    )
    if report.agree is False:
        logger.warning(
            f"Formula/oracle disagreement at q={report.q} m={report.m} k={report.k} e={e}: "
            f"{report.dim_formula} vs {report.dim_oracle}"
        )
    return report


class TransposeTests(NamedTuple):
    lcd_euclidean: bool
    selfdual_hermitian: bool


def euclidean_lcd_test(code):
    """G G^T nonsingular"""
    product = matmul(code.generator, code.generator.T)
    return rank(product) == code.k


def hermitian_conjugate(code):
    if code.m % 2:
        raise OddLength(f"Hermitian conjugation needs even m, got m={code.m}")
    return code.generator.frob(code.m // 2)


def hermitian_self_dual_test(code):
    """G (G^(q^(m/2)))^T = 0 with k = m/2"""
    conjugate = hermitian_conjugate(code)
    return 2 * code.k == code.m and matmul(code.generator, conjugate.T).is_zero()


def gg_transpose_tests(code):
    return TransposeTests(
        lcd_euclidean=euclidean_lcd_test(code),
        selfdual_hermitian=hermitian_self_dual_test(code),
    )


def hull_reports(basis, k_values, e_values, convention=DualConvention.THEOREM, with_basis=False):
    """Reports for every (k, e), ordered by (k, e)"""
    self_dual = is_self_dual(basis)
    if not self_dual:
        logger.info(f"Basis of {basis.ctx!r} is not self-dual: reporting oracle dimensions only")
    reports = []
    for k in sorted(k_values):
        code = code_new(basis, k)
        for e in sorted(e_values):
            reports.append(hull_report(code, e, convention, with_basis=with_basis, self_dual=self_dual))
    return reports
