import logging

from django.db import transaction

from apps.fields.fields import field_make
from apps.fields.polynomials import parse_element, parse_polynomial
from .bases import make_basis, self_dual_basis
from .models import HullRecord, SweepRun

logger = logging.getLogger(__name__)


def field_from_config(config):
    """GF((p^h)^m) described by a validated RunConfig"""
    p, h, m = config['p'], config.get('h') or 1, config['m']
    modulus = config.get('modulus')
    if modulus:
        modulus = parse_polynomial(modulus, p)
    return field_make(p, h * m, modulus or None, h=h)


def basis_from_config(ctx, config):
    """User basis when given (checked to be a basis), otherwise the self-dual basis"""
    elements = config.get('basis')
    if elements:
        return make_basis(ctx, [parse_element(ctx, text) for text in elements])
    return self_dual_basis(ctx)


def k_values(config, m):
    return config.get('k') or list(range(1, m))


def e_values(config, m):
    values = config.get('e')
    return list(range(m)) if values is None else values


class SweepRecorder:
    """
    Persist a finished sweep as a SweepRun with one HullRecord per instance
    """

    @staticmethod
    def record(summary, results, options, dispatch='local'):
        with transaction.atomic():
            run = SweepRun.objects.create(
                dispatch=dispatch,
                max_field_size=options.max_field_size,
                max_minors=options.max_minors,
                check_mds=options.check_mds,
                spot_checks=options.spot_checks,
                seed=options.seed,
            )
            records = []
            for result in results:
                for report in result.reports:
                    status = result.mds.get(report.k)
                    records.append(HullRecord(
                        run=run,
                        p=report.p,
                        h=report.h,
                        m=report.m,
                        k=report.k,
                        e=report.e,
                        dim_formula=report.dim_formula,
                        dim_oracle=report.dim_oracle,
                        agree=report.agree,
                        classification=str(report.classification),
                        convention=str(report.convention),
                        mds_status='' if status is None else str(status),
                    ))
            HullRecord.objects.bulk_create(records, batch_size=1000)

            run.status = 'passed' if summary.passed else 'failed'
            run.fields_count = summary.fields
            run.instances = summary.instances
            run.disagreements = summary.disagreements
            run.violations = len(summary.violations)
            run.duration = summary.duration
            run.summary = summary.as_dict()
            run.save()

        logger.info(f"Recorded sweep run {run.run_id} with {len(records)} hull records")
        return run
