"""
Entanglement-assisted quantum code parameters from e-Galois hulls.

An [m, k] MDS code with an e-Galois hull of dimension l gives an
[[m, k - l, m - k + 1; m - k - l]] code over GF(q^m). Rows derived here
always attain 2d = n - k_q + 2 + c; the bound is only known to hold for
d <= n/2 + 1, which ``regime_validated`` records.
"""
import logging
import math
from dataclasses import dataclass, replace
from typing import NamedTuple, Optional

import galois

from apps.codes.bases import self_dual_exists
from apps.codes.hulls import hull_dim_formula
from apps.utils.exceptions import (
    InternalInvariantViolation,
    InvalidHullDim,
    NoSelfDualBasis,
    OutOfRange,
)

logger = logging.getLogger(__name__)

# p^e is compared with m - 1 in log form unless the two are this close
LOG_MARGIN = 1e-9


@dataclass(frozen=True)
class EaqeccParams:
    n: int
    k_q: int
    d: int
    c: int
    m: int
    k: int
    hull_dim: int
    singleton_equality: bool
    regime_validated: bool
    p: Optional[int] = None
    h: int = 1
    e: Optional[int] = None
    grs_threshold: Optional[int] = None
    exceeds_grs_threshold: Optional[bool] = None

    @property
    def q(self):
        return None if self.p is None else self.p ** self.h

    @property
    def notation(self):
        return f"[[{self.n},{self.k_q},{self.d};{self.c}]]"


def derive_params(m, k, hull_dim):
    """[[m, k - l, m - k + 1; m - k - l]] for hull dimension l"""
    if not 1 <= k <= m - 1:
        raise OutOfRange(f"Need 1 <= k <= {m - 1}, got k={k}")
    if not 0 <= hull_dim <= min(k, m - k):
        raise InvalidHullDim(f"Hull dimension {hull_dim} outside [0, {min(k, m - k)}] for m={m}, k={k}")

    n, k_q, d, c = m, k - hull_dim, m - k + 1, m - k - hull_dim
    equality = 2 * d == n - k_q + 2 + c
    if not equality or k_q < 0 or c < 0:
        raise InternalInvariantViolation(f"Derived parameters [[{n},{k_q},{d};{c}]] break the Singleton identity")
    return EaqeccParams(
        n=n,
        k_q=k_q,
        d=d,
        c=c,
        m=m,
        k=k,
        hull_dim=hull_dim,
        singleton_equality=equality,
        regime_validated=2 * d <= n + 2,
    )


def grs_threshold(p, m, e):
    """floor((p^e + m) / (p^e + 1)) without forming p^e when it dwarfs m"""
    if m - 1 <= 0:
        return 1
    gap = e * math.log(p) - math.log(m - 1)
    if gap > LOG_MARGIN:
        return 1
    power = p ** e
    return (power + m) // (power + 1)


def threshold_sweep(p, m):
    """Thresholds for e = 0, ..., m-1; checked to be non-increasing"""
    values = [grs_threshold(p, m, e) for e in range(m)]
    if any(later > earlier for earlier, later in zip(values, values[1:])):
        raise InternalInvariantViolation(f"Threshold increases with e for p={p}, m={m}: {values}")
    return values


def _characteristic(q):
    if not galois.is_prime_power(int(q)):
        raise OutOfRange(f"{q} is not a prime power")
    primes, exponents = galois.factors(int(q))
    return int(primes[0]), int(exponents[0])


def table_row(q, m, e, k):
    """Parameters from the code over GF(q^m) with a self-dual basis, hull by formula"""
    p, h = _characteristic(q)
    if not self_dual_exists(q, m):
        raise NoSelfDualBasis(
            f"GF({q}^{m}) over GF({q}) has no self-dual basis: "
            f"one exists if and only if q is even or q and m are both odd"
        )
    params = derive_params(m, k, hull_dim_formula(m, k, e))
    threshold = grs_threshold(p, m, e)
    return replace(
        params,
        p=p,
        h=h,
        e=e,
        grs_threshold=threshold,
        exceeds_grs_threshold=k > threshold,
    )


class TableSpec(NamedTuple):
    q: int
    m: int
    e: int
    k_values: range
    formula: str = ''


# Rows of the published parameter table, keyed by (q, m, e)
TABLE1_PRESET = (
    TableSpec(2, 100, 2, range(21, 99), '[[100,k-2,101-k;98-k]]'),
    TableSpec(2, 100, 2, range(98, 100), '[[100,2k-100,101-k;0]]'),
    TableSpec(3, 67, 40, range(2, 28), '[[67,0,68-k;67-2k]]'),
    TableSpec(3, 67, 40, range(27, 40), '[[67,k-27,68-k;40-k]]'),
)


def table_generate(specs):
    """Every row of every (q, m, e, k-range) spec, in spec order.

    Adjacent specs may share a boundary k; each (q, m, e, k) is emitted once.
    """
    rows = []
    seen = set()
    for spec in specs:
        spec = TableSpec(*spec)
        for k in spec.k_values:
            key = (spec.q, spec.m, spec.e, k)
            if key in seen:
                logger.debug(f"Skipping repeated row q={spec.q} m={spec.m} e={spec.e} k={k}")
                continue
            seen.add(key)
            rows.append(table_row(*key))
    logger.info(f"Generated {len(rows)} EAQECC rows from {len(specs)} table spec(s)")
    return rows
