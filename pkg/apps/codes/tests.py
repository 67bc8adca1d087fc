import itertools
import json
import tempfile
from io import StringIO
from pathlib import Path
from unittest import mock

import galois
import numpy as np
from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase, override_settings, tag

from apps.fields.fields import element, field_make, frob, one, zero
from apps.fields.linalg import FFMatrix, intersection_dim, matmul, rank, rank_batch, rowspace_equal
from apps.utils.exceptions import (
    DimensionOutOfRange,
    FullDimension,
    InternalInvariantViolation,
    NoSelfDualBasis,
    NotABasis,
    OddLength,
    OutOfRange,
    RowCountOutOfRange,
    ShapeMismatch,
    TooLarge,
)
from apps.utils.exports import read_csv
from .bases import (
    BasisVec,
    dual_basis,
    gram_matrix,
    is_self_dual,
    make_basis,
    moore_matrix,
    power_basis,
    self_dual_basis,
    self_dual_construction,
    self_dual_exists,
)
from .gabidulin import (
    DualConvention,
    MdsStatus,
    all_minors_nonsingular,
    code_new,
    encode,
    galois_dual_gen,
    galois_dual_oracle,
    galois_ip,
    is_mds,
    mds_status,
    min_rank_distance,
    mrd_check,
    parity_check,
    rank_weight,
)
from .hulls import (
    Classification,
    classify,
    classify_dim,
    gg_transpose_tests,
    hermitian_conjugate,
    hermitian_self_dual_test,
    hull_dim_formula,
    hull_dim_oracle,
    hull_report,
    hull_reports,
)
from .models import HullRecord, SweepRun
from .serializers import (
    FieldResultSerializer,
    HullReportSerializer,
    SweepRunSerializer,
    field_result_from_data,
    parse_reports,
)
from .sweeps import (
    FieldResult,
    SweepOptions,
    Violation,
    admissible_fields,
    audit_reports,
    evaluate_field,
    run_sweep,
)
from .tasks import evaluate_field_task, evaluate_fields
from .utils import SweepRecorder

X4_X_1 = [1, 1, 0, 0, 1]

GRAM_X4_X_1 = [
    [0, 0, 0, 1],
    [0, 0, 1, 0],
    [0, 1, 0, 0],
    [1, 0, 0, 1],
]
TRANSFORM_X4_X_1 = [
    [1, 0, 0, 1],
    [0, 1, 0, 1],
    [0, 0, 1, 1],
    [0, 1, 1, 1],
]
# 1+ω^3, ω+ω^3, ω^2+ω^3, ω+ω^2+ω^3
SELF_DUAL_X4_X_1 = [
    [1, 0, 0, 1],
    [0, 1, 0, 1],
    [0, 0, 1, 1],
    [0, 1, 1, 1],
]


def gf16():
    return field_make(2, 4, X4_X_1, h=1)


def over_subfield(ctx, rows):
    return FFMatrix(ctx, np.asarray(rows, dtype=np.int64)[..., None])


def run_command(name, *args, **options):
    out = StringIO()
    call_command(name, *args, stdout=out, stderr=StringIO(), **options)
    return out.getvalue()


class WorkedExampleTests(SimpleTestCase):
    """GF(16) over GF(2) with modulus x^4 + x + 1"""

    def setUp(self):
        self.ctx = gf16()
        self.S = self.ctx.subfield.ctx

    def test_gram_of_power_basis(self):
        gram = gram_matrix(power_basis(self.ctx))
        self.assertTrue(gram.equals(over_subfield(self.S, GRAM_X4_X_1)))

    def test_published_transform_congruence(self):
        M = over_subfield(self.S, GRAM_X4_X_1)
        E = over_subfield(self.S, TRANSFORM_X4_X_1)
        self.assertTrue(matmul(matmul(E, M), E.T).equals(FFMatrix.identity(self.S, 4)))

    def test_published_basis_is_self_dual(self):
        basis = make_basis(self.ctx, SELF_DUAL_X4_X_1)
        self.assertTrue(is_self_dual(basis))
        self.assertTrue(dual_basis(basis).equals(basis))

    def test_constructed_basis(self):
        construction = self_dual_construction(self.ctx)
        self.assertTrue(construction.gram.equals(over_subfield(self.S, GRAM_X4_X_1)))
        identity = FFMatrix.identity(self.S, 4)
        congruence = matmul(matmul(construction.transform, construction.gram), construction.transform.T)
        self.assertTrue(congruence.equals(identity))
        self.assertTrue(gram_matrix(construction.basis).equals(identity))

    def test_generator_times_transpose_is_identity(self):
        code = code_new(self_dual_basis(self.ctx), 2)
        product = matmul(code.generator, code.generator.T)
        self.assertTrue(product.equals(FFMatrix.identity(self.ctx, 2)))

    def test_hull_dimensions(self):
        code = code_new(self_dual_basis(self.ctx), 2)
        self.assertEqual([hull_dim_oracle(code, e) for e in range(4)], [0, 1, 2, 1])
        self.assertEqual([hull_dim_formula(4, 2, e) for e in range(4)], [0, 1, 2, 1])

    def test_hull_dimensions_do_not_depend_on_self_dual_basis(self):
        reports = hull_reports(make_basis(self.ctx, SELF_DUAL_X4_X_1), [2], range(4))
        self.assertEqual([r.dim_oracle for r in reports], [0, 1, 2, 1])
        self.assertTrue(all(r.agree for r in reports))

    def test_hermitian_self_dual(self):
        code = code_new(self_dual_basis(self.ctx), 2)
        self.assertTrue(matmul(code.generator, hermitian_conjugate(code).T).is_zero())
        self.assertTrue(hermitian_self_dual_test(code))
        self.assertEqual(classify(code, 2), Classification.SELF_DUAL)

    def test_code_stacked_on_hermitian_dual(self):
        code = code_new(self_dual_basis(self.ctx), 2)
        dual = galois_dual_gen(code, 2)
        self.assertEqual(rank(code.generator.stack(dual)), 2)
        self.assertEqual(rank(code.generator.stack(galois_dual_gen(code, 1))), 3)


class BasisTests(SimpleTestCase):

    def test_existence_condition(self):
        self.assertTrue(self_dual_exists(2, 4))
        self.assertTrue(self_dual_exists(4, 3))
        self.assertTrue(self_dual_exists(3, 5))
        self.assertFalse(self_dual_exists(3, 2))
        self.assertFalse(self_dual_exists(9, 4))

    def test_no_self_dual_basis(self):
        with self.assertRaises(NoSelfDualBasis) as cm:
            self_dual_basis(field_make(3, 2))
        self.assertIn('q is even or q and m are both odd', str(cm.exception))

    def test_self_dual_bases_of_several_fields(self):
        for p, h, m in [(2, 1, 2), (2, 1, 3), (2, 1, 5), (2, 2, 3), (3, 1, 3), (5, 1, 3), (3, 2, 3), (7, 1, 5)]:
            with self.subTest(p=p, h=h, m=m):
                basis = self_dual_basis(field_make(p, h * m, h=h))
                self.assertEqual(basis.m, m)
                self.assertTrue(is_self_dual(basis))

    def test_dual_basis_pairs_to_identity(self):
        ctx = gf16()
        basis = power_basis(ctx)
        dual = dual_basis(basis)
        pairings = ctx.trace(ctx.outer(basis.elems, dual.elems))
        np.testing.assert_array_equal(pairings, FFMatrix.identity(ctx.subfield.ctx, 4).data)
        self.assertFalse(is_self_dual(basis))

    def test_moore_matrix_rows(self):
        basis = power_basis(gf16())
        self.assertEqual(moore_matrix(basis, 1).shape, (1, 4))
        self.assertEqual(rank(moore_matrix(basis, 4)), 4)
        with self.assertRaises(RowCountOutOfRange):
            moore_matrix(basis, 0)
        with self.assertRaises(RowCountOutOfRange):
            moore_matrix(basis, 5)

    def test_dependent_elements_are_not_a_basis(self):
        ctx = gf16()
        with self.assertRaises(NotABasis):
            make_basis(ctx, [[1, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
        with self.assertRaises(NotABasis):
            make_basis(ctx, [[1, 0, 0, 0], [0, 1, 0, 0]])

    def test_default_field_is_over_prime_field(self):
        basis = self_dual_basis(field_make(2, 3))
        self.assertEqual((basis.q, basis.m), (2, 3))
        self.assertTrue(is_self_dual(basis))

    def test_dual_basis_is_an_involution(self):
        for ctx in (gf16(), field_make(3, 3), field_make(2, 6, h=2), field_make(5, 2)):
            with self.subTest(ctx=ctx):
                basis = power_basis(ctx)
                self.assertTrue(dual_basis(dual_basis(basis)).equals(basis))

    def test_moore_rank_matches_independence_exhaustively(self):
        # every m-tuple of GF(p^m), at most 2^12 of them per field
        for p, m in [(2, 2), (2, 3), (3, 2), (5, 2), (7, 2)]:
            ctx = field_make(p, m)
            GF = galois.GF(p)
            values = ctx.elements()
            tuples = values[np.asarray(list(itertools.product(range(ctx.order), repeat=m)))]
            moore = np.stack([BasisVec(ctx, elems).frobenius_images for elems in tuples])
            ranks = rank_batch(ctx, moore)
            with self.subTest(p=p, m=m):
                self.assertEqual(len(tuples), ctx.order ** m)
                for elems, moore_rank in zip(tuples, ranks):
                    independent = np.linalg.matrix_rank(GF(elems)) == m
                    self.assertEqual(bool(moore_rank == m), bool(independent))

    def test_frobenius_images_and_dual_computed_once(self):
        ctx = field_make(2, 5)
        basis = self_dual_basis(ctx)
        images = basis.frobenius_images
        self.assertEqual(images.shape, (5, 5, 5))
        for i in range(5):
            np.testing.assert_array_equal(images[i], ctx.frob(basis.elems, i))
        self.assertIs(basis.frobenius_images, images)
        self.assertTrue(moore_matrix(basis, 3).equals(FFMatrix(ctx, images[:3])))
        self.assertIs(code_new(basis, 1).dual, code_new(basis, 3).dual)
        self.assertIs(dual_basis(basis), code_new(basis, 2).dual)


class GabidulinCodeTests(SimpleTestCase):

    def setUp(self):
        self.ctx = field_make(2, 3)
        self.basis = self_dual_basis(self.ctx)

    def test_dimension_bounds(self):
        with self.assertRaises(DimensionOutOfRange):
            code_new(self.basis, 0)
        with self.assertRaises(DimensionOutOfRange):
            code_new(self.basis, 4)
        with self.assertRaises(FullDimension):
            parity_check(code_new(self.basis, 3))

    def test_parity_check(self):
        for k in (1, 2):
            code = code_new(self.basis, k)
            parity = parity_check(code)
            self.assertEqual(parity.shape, (3 - k, 3))
            self.assertTrue(matmul(code.generator, parity.T).is_zero())

    def test_dual_generator_matches_kernel_solve(self):
        for convention in DualConvention:
            for k in (1, 2):
                code = code_new(self.basis, k)
                for e in range(3):
                    with self.subTest(convention=convention, k=k, e=e):
                        dual = galois_dual_gen(code, e, convention)
                        self.assertEqual(dual.rows, 3 - k)
                        self.assertTrue(rowspace_equal(dual, galois_dual_oracle(code, e, convention)))

    def test_dual_generator_for_non_self_dual_basis(self):
        code = code_new(power_basis(gf16()), 2)
        for convention in DualConvention:
            for e in range(4):
                dual = galois_dual_gen(code, e, convention)
                self.assertTrue(rowspace_equal(dual, galois_dual_oracle(code, e, convention)))

    def test_dual_rows_are_galois_orthogonal(self):
        ctx = gf16()
        code = code_new(self_dual_basis(ctx), 2)
        for e in range(4):
            theorem = galois_dual_gen(code, e, DualConvention.THEOREM)
            preliminaries = galois_dual_gen(code, e, DualConvention.PRELIMINARIES)
            for i in range(2):
                word = code.generator.row(i)
                for j in range(2):
                    self.assertTrue(galois_ip(word, theorem.row(j), e, ctx).is_zero())
                    self.assertTrue(galois_ip(preliminaries.row(j), word, e, ctx).is_zero())

    def test_galois_parameter_bounds(self):
        code = code_new(self.basis, 1)
        with self.assertRaises(OutOfRange):
            galois_dual_gen(code, 3)
        with self.assertRaises(OutOfRange):
            galois_dual_oracle(code, -1)

    def test_galois_inner_product(self):
        ctx = gf16()
        x = [one(ctx), zero(ctx)]
        y = [element(ctx, [0, 1]), one(ctx)]
        # 1 * ω^2 + 0
        self.assertTrue(np.array_equal(galois_ip(x, y, 1).array, element(ctx, [0, 0, 1]).array))
        with self.assertRaises(ShapeMismatch):
            galois_ip(x, y[:1], 0)

    def test_galois_inner_product_conjugation(self):
        # x ._e y = (y ._(m-e) x)^(q^e)
        rng = np.random.default_rng(0)
        for ctx in (gf16(), field_make(3, 3), field_make(2, 6, h=2)):
            m = ctx.m
            for _ in range(5):
                x, y = ctx.random(rng, 6), ctx.random(rng, 6)
                for e in range(m):
                    with self.subTest(ctx=ctx, e=e):
                        left = galois_ip(x, y, e, ctx)
                        self.assertEqual(left, frob(galois_ip(y, x, m - e, ctx), e))

    def test_encode(self):
        code = code_new(self.basis, 2)
        word = encode(code, [one(self.ctx), zero(self.ctx)])
        np.testing.assert_array_equal(word, code.generator.data[0])
        with self.assertRaises(ShapeMismatch):
            encode(code, [one(self.ctx)])

    def test_rank_weight_of_basis_word(self):
        code = code_new(self.basis, 1)
        self.assertEqual(rank_weight(code, code.generator.row(0)), 3)

    def test_mds(self):
        for k in (1, 2):
            code = code_new(self.basis, k)
            self.assertTrue(is_mds(code))
            self.assertEqual(mds_status(code), MdsStatus.VERIFIED)
        code = code_new(self_dual_basis(gf16()), 2)
        self.assertEqual(mds_status(code, budget=1), MdsStatus.NOT_VERIFIED)
        with self.assertRaises(TooLarge):
            is_mds(code, budget=1)

    def test_singular_minor_fails_mds(self):
        code = code_new(self.basis, 1)
        data = code.generator.data.copy()
        data[0, 0] = 0
        self.assertFalse(all_minors_nonsingular(FFMatrix(self.ctx, data)))

    def test_minimum_rank_distance(self):
        for k in (1, 2):
            code = code_new(self.basis, k)
            self.assertEqual(min_rank_distance(code), 4 - k)
            self.assertTrue(mrd_check(code))
        self.assertTrue(mrd_check(code_new(self_dual_basis(gf16()), 2)))
        with self.assertRaises(TooLarge):
            min_rank_distance(code_new(self.basis, 2), budget=10)


class HullTests(SimpleTestCase):

    def test_formula(self):
        self.assertEqual([hull_dim_formula(5, 2, e) for e in range(5)], [0, 1, 2, 2, 1])
        with self.assertRaises(OutOfRange):
            hull_dim_formula(5, 5, 0)
        with self.assertRaises(OutOfRange):
            hull_dim_formula(5, 2, 5)

    def test_oracle_over_gf_243(self):
        basis = self_dual_basis(field_make(3, 5))
        reports = hull_reports(basis, [2], range(5))
        self.assertEqual([r.dim_oracle for r in reports], [0, 1, 2, 2, 1])
        self.assertEqual(
            [r.classification for r in reports],
            [
                Classification.LCD,
                Classification.GENERIC,
                Classification.SELF_ORTHOGONAL,
                Classification.SELF_ORTHOGONAL,
                Classification.GENERIC,
            ],
        )

    def test_classify_dim(self):
        self.assertEqual(classify_dim(0, 4, 2), Classification.LCD)
        self.assertEqual(classify_dim(2, 4, 2), Classification.SELF_DUAL)
        self.assertEqual(classify_dim(1, 5, 1), Classification.SELF_ORTHOGONAL)
        self.assertEqual(classify_dim(2, 5, 3), Classification.DUAL_CONTAINING)
        self.assertEqual(classify_dim(1, 5, 2), Classification.GENERIC)
        self.assertTrue(Classification.SELF_DUAL.self_orthogonal)
        self.assertFalse(Classification.DUAL_CONTAINING.self_orthogonal)

    def test_non_self_dual_basis_reports_oracle_only(self):
        reports = hull_reports(power_basis(gf16()), [1, 2, 3], range(4))
        self.assertEqual(len(reports), 12)
        for report in reports:
            self.assertIsNone(report.dim_formula)
            self.assertIsNone(report.agree)
            self.assertFalse(report.formula_applicable)
            self.assertLessEqual(report.dim_oracle, min(report.k, 4 - report.k))

    def test_preliminaries_convention_has_no_formula(self):
        code = code_new(self_dual_basis(gf16()), 2)
        report = hull_report(code, 1, DualConvention.PRELIMINARIES)
        self.assertIsNone(report.dim_formula)
        self.assertEqual(report.convention, DualConvention.PRELIMINARIES)

    def test_hull_basis_rows(self):
        code = code_new(self_dual_basis(gf16()), 2)
        for e in range(4):
            report = hull_report(code, e, with_basis=True)
            self.assertEqual(report.hull_basis.rows, report.dim_oracle)

    def test_transpose_tests(self):
        ctx = gf16()
        basis = self_dual_basis(ctx)
        tests = gg_transpose_tests(code_new(basis, 2))
        self.assertTrue(tests.lcd_euclidean)
        self.assertTrue(tests.selfdual_hermitian)
        self.assertFalse(gg_transpose_tests(code_new(basis, 1)).selfdual_hermitian)
        with self.assertRaises(OddLength):
            hermitian_conjugate(code_new(self_dual_basis(field_make(2, 3)), 1))

    def test_cross_check_above_size_limit(self):
        coding = {**settings.CODING, 'CROSS_CHECK_MAX_SIZE': 0, 'STRICT_CHECKS': False}
        basis = self_dual_basis(field_make(2, 8))
        with override_settings(CODING=coding):
            with mock.patch('apps.codes.hulls.intersection_dim') as intersection:
                with mock.patch('apps.codes.hulls.galois_dual_oracle', wraps=galois_dual_oracle) as oracle:
                    reports = hull_reports(basis, range(1, 8), range(8))
        intersection.assert_not_called()
        self.assertEqual(oracle.call_count, 56)
        self.assertEqual(len(reports), 56)
        self.assertTrue(all(r.agree for r in reports))

    def test_small_codes_recompute_intersection(self):
        code = code_new(self_dual_basis(gf16()), 2)
        with mock.patch('apps.codes.hulls.intersection_dim', wraps=intersection_dim) as intersection:
            self.assertEqual(hull_dim_oracle(code, 1), 1)
        intersection.assert_called_once()

    def test_cross_check_disagreement(self):
        code = code_new(self_dual_basis(gf16()), 2)
        with mock.patch('apps.codes.hulls.intersection_dim', return_value=0):
            with self.assertRaises(InternalInvariantViolation):
                hull_dim_oracle(code, 1)


class SweepTests(SimpleTestCase):

    def test_admissible_fields(self):
        self.assertEqual(
            admissible_fields(64),
            [
                (2, 1, 2), (2, 1, 3), (2, 1, 4), (2, 1, 5), (2, 1, 6),
                (2, 2, 2), (2, 2, 3), (2, 3, 2), (3, 1, 3),
            ],
        )
        self.assertEqual(admissible_fields(64, q_values=[2], m_values=[2, 3]), [(2, 1, 2), (2, 1, 3)])
        self.assertEqual(admissible_fields(64, q_values=[9]), [])

    def test_evaluate_field(self):
        result = evaluate_field(3, 1, 3, SweepOptions())
        self.assertEqual(len(result.reports), 6)
        self.assertEqual(result.violations, [])
        self.assertEqual(result.mds, {1: MdsStatus.VERIFIED, 2: MdsStatus.VERIFIED})
        self.assertTrue(all(r.agree for r in result.reports))

    def test_binary_sweep(self):
        fields = [(2, 1, m) for m in range(2, 7)]
        summary, results = run_sweep(fields, SweepOptions(spot_checks=2, seed=0))
        self.assertTrue(summary.passed)
        self.assertEqual(summary.fields, 5)
        self.assertEqual(summary.instances, 70)
        self.assertEqual(summary.disagreements, 0)
        self.assertEqual(summary.classifications['LCD'], 15)
        self.assertEqual(summary.spot_checks, 2 * 15)
        self.assertEqual([(r.p, r.h, r.m) for r in results], fields)

    def test_sweep_within_small_budget(self):
        options = SweepOptions(max_field_size=2 ** 8)
        fields = admissible_fields(options.max_field_size)
        self.assertEqual(len(fields), 15)
        summary, results = run_sweep(fields, options)
        self.assertTrue(summary.passed)
        self.assertEqual(summary.disagreements, 0)
        self.assertEqual(summary.fields, 15)
        self.assertEqual(summary.instances, sum((m - 1) * m for _, _, m in fields))

    def test_sweep_without_mds(self):
        summary, results = run_sweep([(2, 2, 2)], SweepOptions(check_mds=False))
        self.assertEqual(results[0].mds, {})
        self.assertEqual(summary.as_dict()['mds'], {})
        self.assertTrue(summary.passed)

    def test_audit_flags_wrong_classification(self):
        result = evaluate_field(2, 1, 2, SweepOptions())
        report = result.reports[0]
        report.classification = Classification.GENERIC
        checks = {v.check for v in audit_reports(2, 1, 2, result.reports)}
        self.assertIn('lcd', checks)

    def test_field_result_payload(self):
        result = evaluate_field(2, 1, 3, SweepOptions())
        restored = field_result_from_data(FieldResultSerializer(result).data)
        self.assertEqual(restored.reports, result.reports)
        self.assertEqual(restored.mds, result.mds)
        self.assertEqual(restored.violations, [])

    def test_tasks_local_and_eager(self):
        options = SweepOptions()
        data = evaluate_field_task(2, 1, 2, options.as_dict())
        self.assertEqual(len(data['reports']), 2)
        local = evaluate_fields([(2, 1, 2), (3, 1, 3)], options)
        eager = evaluate_fields([(2, 1, 2), (3, 1, 3)], options, dispatch='celery')
        self.assertEqual([r.reports for r in local], [r.reports for r in eager])


class HullReportSerializerTests(SimpleTestCase):

    def test_json_records_parse_back(self):
        reports = hull_reports(self_dual_basis(gf16()), [1, 2, 3], range(4))
        records = json.loads(json.dumps(HullReportSerializer(reports, many=True).data))
        self.assertEqual(parse_reports(records), reports)

    def test_classification_must_be_known(self):
        serializer = HullReportSerializer(data={
            'p': 2, 'h': 1, 'm': 4, 'k': 2, 'e': 0, 'dim_oracle': 0, 'classification': 'odd',
        })
        self.assertFalse(serializer.is_valid())
        self.assertIn('classification', serializer.errors)


class SweepRecordTests(TestCase):

    def test_record_sweep(self):
        options = SweepOptions()
        summary, results = run_sweep([(2, 1, 2), (2, 1, 3)], options)
        with self.assertLogs('apps.codes.signals', 'INFO') as logs:
            run = SweepRecorder.record(summary, results, options)
        self.assertTrue(run.passed)
        self.assertEqual(run.records.count(), 8)
        self.assertEqual(run.instances, 8)
        self.assertTrue(any('passed' in line for line in logs.output))

        record = run.records.get(m=3, k=1, e=0)
        self.assertEqual(record.classification, 'LCD')
        self.assertEqual(record.mds_status, 'verified')
        self.assertTrue(record.agree)
        self.assertEqual(SweepRunSerializer(run).data['records_count'], 8)

    def test_failed_run_logs_error(self):
        summary, results = run_sweep([(2, 1, 2)], SweepOptions())
        summary.violations.append(Violation('formula', 2, 1, 2, 1, 1, 'forced'))
        with self.assertLogs('apps.codes.signals', 'ERROR'):
            run = SweepRecorder.record(summary, results, SweepOptions())
        self.assertEqual(run.status, 'failed')
        self.assertEqual(run.violations, 1)


class SelfDualBasisCommandTests(SimpleTestCase):

    def test_text_output(self):
        out = run_command('selfdual_basis', p=3, m=3)
        self.assertIn('Gram(α) = I: yes', out)
        self.assertEqual(out.count('  Tr(α_'), 9)

    def test_json_output(self):
        body = json.loads(run_command('selfdual_basis', p=2, m=4, modulus='x^4+x+1', format='json'))
        self.assertTrue(body['self_dual'])
        self.assertEqual(body['field']['modulus'], X4_X_1)
        self.assertEqual([[entry[0] for entry in row] for row in body['gram']], GRAM_X4_X_1)
        self.assertEqual(len(body['records']), 4)

    def test_verifies_given_basis(self):
        basis = ['1+x^3', 'x+x^3', 'x^2+x^3', 'x+x^2+x^3']
        out = run_command('selfdual_basis', p=2, m=4, modulus='x^4+x+1', basis=basis)
        self.assertIn('Gram(α) = I: yes', out)

    def test_power_basis_fails_verification(self):
        with self.assertRaises(CommandError) as cm:
            run_command('selfdual_basis', p=2, m=4, modulus='[1,1,0,0,1]', basis=['1', 'x', 'x^2', 'x^3'])
        self.assertEqual(cm.exception.returncode, 1)

    def test_no_self_dual_basis_is_usage_error(self):
        with self.assertRaises(CommandError) as cm:
            run_command('selfdual_basis', p=3, m=2)
        self.assertEqual(cm.exception.returncode, 2)
        self.assertIn('NoSelfDualBasis', str(cm.exception))

    def test_reducible_modulus(self):
        with self.assertRaises(CommandError) as cm:
            run_command('selfdual_basis', p=2, m=4, modulus='x^4+1')
        self.assertEqual(cm.exception.returncode, 2)


class HullCommandTests(SimpleTestCase):

    def test_worked_example_json(self):
        body = json.loads(run_command('hull', p=2, m=4, modulus='x^4+x+1', k='2', e='0..3', format='json'))
        records = body['records']
        self.assertEqual([r['dim_oracle'] for r in records], [0, 1, 2, 1])
        self.assertEqual([r['dim_formula'] for r in records], [0, 1, 2, 1])
        self.assertTrue(all(r['agree'] for r in records))
        self.assertEqual(records[2]['classification'], 'self-dual')
        self.assertEqual(body['meta']['command'], 'hull')

    def test_csv_rows_parse_back(self):
        out = run_command('hull', p=3, m=3, format='csv')
        rows = read_csv(out)
        self.assertEqual(len(rows), 6)
        self.assertEqual(list(rows[0]), ['p', 'h', 'm', 'k', 'e', 'dim_formula', 'dim_oracle', 'agree', 'classification'])
        reports = parse_reports(rows)
        expected = hull_reports(self_dual_basis(field_make(3, 3)), [1, 2], range(3))
        self.assertEqual(reports, expected)

    def test_text_with_hull_basis(self):
        out = run_command('hull', p=2, m=4, k='2', e='2', with_basis=True)
        self.assertIn('1 instance(s)', out)
        self.assertIn('self-dual', out)

    def test_json_with_hull_basis(self):
        body = json.loads(run_command('hull', p=2, m=4, k='2', e='0..3', with_basis=True, format='json'))
        self.assertEqual([len(r['hull_basis']) for r in body['records']], [0, 1, 2, 1])

    def test_preliminaries_convention(self):
        body = json.loads(run_command(
            'hull', p=2, m=4, k='2', dual_convention='preliminaries', format='json'
        ))
        self.assertTrue(all(r['dim_formula'] is None for r in body['records']))
        self.assertTrue(all(r['convention'] == 'preliminaries' for r in body['records']))

    def test_non_self_dual_basis(self):
        body = json.loads(run_command(
            'hull', p=2, m=4, modulus='x^4+x+1', basis=['1', 'x', 'x^2', 'x^3'], format='json'
        ))
        self.assertEqual(len(body['records']), 12)
        self.assertTrue(all(r['agree'] is None for r in body['records']))

    def test_out_of_range_k(self):
        with self.assertRaises(CommandError) as cm:
            run_command('hull', p=2, m=4, k='5')
        self.assertEqual(cm.exception.returncode, 2)

    def test_config_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'hull.env'
            path.write_text('p=2\nm=4\nmodulus=x^4+x+1\nk=2\nformat=json\n', encoding='utf-8')
            body = json.loads(run_command('hull', config=str(path), e='1'))
        self.assertEqual(len(body['records']), 1)
        self.assertEqual(body['records'][0]['dim_oracle'], 1)

    def test_missing_config_file(self):
        with self.assertRaises(CommandError) as cm:
            run_command('hull', config='/nonexistent/hull.env')
        self.assertEqual(cm.exception.returncode, 2)

    def test_out_writes_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            with override_settings(CODING={**settings.CODING, 'OUTPUT_DIR': Path(tmp)}):
                out = run_command('hull', p=2, m=2, format='csv', out='hull.csv')
                content = (Path(tmp) / 'hull.csv').read_text(encoding='utf-8')
        self.assertIn('hull.csv', out)
        self.assertEqual(len(read_csv(content)), 2)


class ClassifyCommandTests(SimpleTestCase):

    def test_gg_transpose_columns(self):
        body = json.loads(run_command('classify', p=2, m=4, k='2', format='json'))
        by_e = {r['e']: r for r in body['records']}
        self.assertTrue(by_e[0]['lcd_euclidean'])
        self.assertIsNone(by_e[1]['lcd_euclidean'])
        self.assertTrue(by_e[2]['selfdual_hermitian'])
        self.assertTrue(by_e[2]['self_orthogonal'])
        self.assertEqual(by_e[0]['classification'], 'LCD')

    def test_text_output(self):
        out = run_command('classify', p=2, m=2)
        self.assertIn('k=1 e=0: LCD', out)
        self.assertIn('k=1 e=1: self-dual', out)

    def test_csv_output(self):
        rows = read_csv(run_command('classify', p=3, m=3, k='1', format='csv'))
        self.assertEqual([r['classification'] for r in rows], ['LCD', 'self-orthogonal-proper', 'self-orthogonal-proper'])


class DualGenCommandTests(SimpleTestCase):

    def test_json_output(self):
        body = json.loads(run_command('dual_gen', p=2, m=3, format='json'))
        self.assertEqual(len(body['records']), 6)
        for record in body['records']:
            self.assertTrue(record['oracle_agrees'])
            self.assertEqual(record['dual_rows'], 3 - record['k'])
            self.assertEqual(len(record['parity_check']), 3 - record['k'])

    def test_text_output_both_conventions(self):
        for convention in ('theorem', 'preliminaries'):
            out = run_command('dual_gen', p=2, m=4, k='2', e='1', dual_convention=convention)
            self.assertIn(f'({convention} convention)', out)
            self.assertIn('matches kernel solve: yes', out)

    def test_disagreement_exits_one(self):
        target = 'apps.codes.management.commands.dual_gen.rowspace_equal'
        with mock.patch(target, return_value=False):
            with self.assertRaises(CommandError) as cm:
                run_command('dual_gen', p=2, m=2, format='csv')
        self.assertEqual(cm.exception.returncode, 1)


class VerifySweepCommandTests(TestCase):

    def test_small_sweep_json(self):
        body = json.loads(run_command('verify_sweep', q='3', m='3', max_field_size=27, format='json'))
        self.assertEqual(body['summary']['instances'], 6)
        self.assertTrue(body['summary']['passed'])
        self.assertEqual(body['fields'], [[3, 1, 3]])
        self.assertIsNone(body['run_id'])

    def test_record_run(self):
        body = json.loads(run_command(
            'verify_sweep', q='2', m='2..4', max_field_size=16, record=True, format='json'
        ))
        run = SweepRun.objects.get(run_id=body['run_id'])
        self.assertTrue(run.passed)
        self.assertEqual(HullRecord.objects.filter(run=run).count(), 20)

    def test_text_output(self):
        out = run_command('verify_sweep', q='2', m='2..3', max_field_size=8, spot_checks=1)
        self.assertIn('Result: PASSED', out)
        self.assertIn('Instances:        8', out)

    def test_seedless_refuses_spot_checks(self):
        with self.assertRaises(CommandError) as cm:
            run_command('verify_sweep', q='2', m='2', max_field_size=4, spot_checks=1, seedless=True)
        self.assertEqual(cm.exception.returncode, 2)

    def test_violation_exits_one(self):
        failing = FieldResult(p=2, h=1, m=2, violations=[Violation('formula', 2, 1, 2, 1, 1, 'forced')])
        with mock.patch('apps.codes.tasks.evaluate_field', return_value=failing):
            with self.assertRaises(CommandError) as cm:
                run_command('verify_sweep', q='2', m='2', max_field_size=4, format='json')
        self.assertEqual(cm.exception.returncode, 1)


@tag('slow')
class LargeFieldTests(SimpleTestCase):

    def test_gf_2_100_at_e_2(self):
        basis = self_dual_basis(field_make(2, 100))
        for k in (21, 50, 98):
            code = code_new(basis, k)
            self.assertEqual(hull_dim_oracle(code, 2), hull_dim_formula(100, k, 2))

    def test_gf_3_15(self):
        reports = hull_reports(self_dual_basis(field_make(3, 15)), range(1, 15), range(15))
        self.assertEqual(len(reports), 14 * 15)
        self.assertTrue(all(r.agree for r in reports))

    def test_default_sweep(self):
        options = SweepOptions.from_settings()
        summary, _ = run_sweep(admissible_fields(options.max_field_size), options)
        self.assertTrue(summary.passed)
        self.assertEqual(summary.disagreements, 0)

    def test_binary_sweep_to_length_ten(self):
        fields = [(2, 1, m) for m in range(2, 11)]
        summary, results = run_sweep(fields, SweepOptions(check_mds=False))
        self.assertTrue(summary.passed)
        for result in results:
            lcd = [r for r in result.reports if r.classification is Classification.LCD]
            self.assertEqual(len(lcd), result.m - 1)
            self.assertTrue(all(r.e == 0 for r in lcd))
