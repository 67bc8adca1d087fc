"""
Formula/oracle sweep over every admissible (p, h, m).

Each field is evaluated independently: a self-dual basis is built, every
code G_k(α) with 1 <= k <= m-1 is checked for the MDS criterion, and every
(k, e) pair yields a HullReport. Audits run per field on those reports.
"""
import logging
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

import galois
import numpy as np
from django.conf import settings

from apps.fields.fields import field_make
from apps.fields.linalg import FFMatrix, matmul
from apps.utils.performance import log_performance
from .bases import self_dual_basis, self_dual_exists
from .gabidulin import MdsStatus, code_new, encode, mds_status, parity_check
from .hulls import (
    Classification,
    euclidean_lcd_test,
    hermitian_self_dual_test,
    hull_report,
)

logger = logging.getLogger(__name__)

# q = 2 fields where a Hermitian self-dual code must be constructed
EXISTENCE_LENGTHS = (2, 4, 6)


@dataclass(frozen=True)
class SweepOptions:
    max_field_size: int = 2 ** 20
    max_minors: int = 10 ** 5
    check_mds: bool = True
    spot_checks: int = 0
    seed: Optional[int] = None

    @classmethod
    def from_settings(cls, **overrides):
        coding = settings.CODING
        values = {
            'max_field_size': coding['MAX_FIELD_SIZE'],
            'max_minors': coding['MAX_MINORS'],
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def as_dict(self):
        return {
            'max_field_size': self.max_field_size,
            'max_minors': self.max_minors,
            'check_mds': self.check_mds,
            'spot_checks': self.spot_checks,
            'seed': self.seed,
        }


@dataclass
class Violation:
    check: str
    p: int
    h: int
    m: int
    k: Optional[int] = None
    e: Optional[int] = None
    detail: str = ''


@dataclass
class FieldResult:
    p: int
    h: int
    m: int
    reports: list = field(default_factory=list)
    mds: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    spot_checks: int = 0


@dataclass
class SweepSummary:
    fields: int = 0
    instances: int = 0
    disagreements: int = 0
    classifications: Counter = field(default_factory=Counter)
    mds: Counter = field(default_factory=Counter)
    violations: list = field(default_factory=list)
    spot_checks: int = 0
    duration: float = 0.0

    @property
    def passed(self):
        return not self.violations

    def as_dict(self):
        return {
            'fields': self.fields,
            'instances': self.instances,
            'disagreements': self.disagreements,
            'classifications': dict(sorted(self.classifications.items())),
            'mds': dict(sorted(self.mds.items())),
            'violations': len(self.violations),
            'spot_checks': self.spot_checks,
            'duration': round(self.duration, 3),
            'passed': self.passed,
        }


def admissible_fields(max_field_size, q_values=None, m_values=None):
    """(p, h, m) with m >= 2, q^m within budget and a self-dual basis"""
    fields = []
    limit = int(max_field_size ** 0.5) + 1
    for p in galois.primes(limit):
        p = int(p)
        h = 1
        while p ** (2 * h) <= max_field_size:
            q = p ** h
            m = 2
            while q ** m <= max_field_size:
                admitted = self_dual_exists(q, m)
                admitted = admitted and (q_values is None or q in q_values)
                admitted = admitted and (m_values is None or m in m_values)
                if admitted:
                    fields.append((p, h, m))
                m += 1
            h += 1
    return sorted(fields)


def audit_reports(p, h, m, reports):
    """Classification audits on the reports of one field"""
    violations = []
    q = p ** h

    def flag(check, report, detail):
        violations.append(Violation(check, p, h, m, report.k, report.e, detail))

    for report in reports:
        k, e, dim = report.k, report.e, report.dim_oracle
        if report.agree is False:
            flag('formula', report, f"formula {report.dim_formula} != oracle {dim}")

        if (report.classification is Classification.LCD) != (e == 0):
            flag('lcd', report, f"classification {report.classification} at e={e}")

        if 2 * k <= m:
            self_orthogonal = dim == k
            if self_orthogonal != (k <= e <= m - k):
                flag('self-orthogonal', report, f"dim {dim} with k={k}, e={e}")

        if m % 2 == 0 and 2 * k == m:
            self_dual = report.classification is Classification.SELF_DUAL
            if self_dual != (2 * e == m):
                flag('self-dual', report, f"classification {report.classification} at e={e}")

        if q % 2 == 0 and e == 0 and report.classification is Classification.SELF_DUAL:
            flag('euclidean-self-dual', report, 'Euclidean self-dual code for even q')

    if q == 2 and m in EXISTENCE_LENGTHS:
        found = any(
            r.k == m // 2 and r.e == m // 2 and r.classification is Classification.SELF_DUAL
            for r in reports
        )
        if not found:
            violations.append(Violation('existence', p, h, m, m // 2, m // 2, 'no Hermitian self-dual code'))
    return violations


def _spot_check(code, rng, count):
    """Random messages encode to words annihilated by the parity check"""
    ctx = code.ctx
    parity = parity_check(code)
    for _ in range(count):
        word = encode(code, ctx.random(rng, code.k))
        if not matmul(parity, FFMatrix(ctx, word[:, None, :])).is_zero():
            return False
    return True


@log_performance()
def evaluate_field(p, h, m, options):
    """Reports, MDS statuses and audit violations for GF((p^h)^m)"""
    ctx = field_make(p, h * m, h=h)
    basis = self_dual_basis(ctx)
    result = FieldResult(p=p, h=h, m=m)
    rng = np.random.default_rng(options.seed) if options.spot_checks else None

    for k in range(1, m):
        code = code_new(basis, k)
        if options.check_mds:
            status = mds_status(code, options.max_minors)
            result.mds[k] = status
            if status is MdsStatus.FAILED:
                result.violations.append(Violation('mds', p, h, m, k, None, 'singular k x k minor'))

        lcd_euclidean = euclidean_lcd_test(code)
        for e in range(m):
            report = hull_report(code, e, self_dual=True)
            result.reports.append(report)
            if e == 0 and (report.classification is Classification.LCD) != lcd_euclidean:
                result.violations.append(
                    Violation('gg-transpose', p, h, m, k, e, f"G G^T nonsingular is {lcd_euclidean}")
                )
            if 2 * k == m and 2 * e == m and p ** h == 2 and m in EXISTENCE_LENGTHS:
                if not hermitian_self_dual_test(code):
                    result.violations.append(
                        Violation('existence', p, h, m, k, e, 'G (G^(q^(m/2)))^T is not zero')
                    )

        if rng is not None:
            result.spot_checks += options.spot_checks
            if not _spot_check(code, rng, options.spot_checks):
                result.violations.append(Violation('encode', p, h, m, k, None, 'H c^T != 0'))

    result.violations.extend(audit_reports(p, h, m, result.reports))
    for violation in result.violations:
        logger.warning(f"Sweep violation {violation.check} at p={p} h={h} m={m}: {violation.detail}")
    return result


def summarize(results, duration=0.0):
    summary = SweepSummary(duration=duration)
    for result in sorted(results, key=lambda r: (r.p, r.h, r.m)):
        summary.fields += 1
        summary.instances += len(result.reports)
        summary.disagreements += sum(1 for r in result.reports if r.agree is False)
        summary.classifications.update(str(r.classification) for r in result.reports)
        summary.mds.update(str(status) for status in result.mds.values())
        summary.violations.extend(result.violations)
        summary.spot_checks += result.spot_checks
    return summary


def ordered_reports(results):
    return sorted((r for result in results for r in result.reports), key=lambda r: r.sort_key)


def run_sweep(fields, options, evaluate_all=None):
    """Evaluate every field; results come back ordered by (p, h, m)"""
    if evaluate_all is None:
        def evaluate_all(items):
            return [evaluate_field(p, h, m, options) for p, h, m in items]
    logger.info(f"Sweep over {len(fields)} fields started with {options.as_dict()}")
    start = time.perf_counter()
    results = sorted(evaluate_all(fields), key=lambda r: (r.p, r.h, r.m))
    summary = summarize(results, time.perf_counter() - start)
    logger.info(
        f"Sweep finished: {summary.instances} instances, {summary.disagreements} disagreements, "
        f"{len(summary.violations)} violations"
    )
    return summary, results
