import json
from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, tag

from apps.codes.bases import self_dual_basis
from apps.codes.gabidulin import code_new
from apps.codes.hulls import hull_dim_oracle
from apps.fields.fields import field_make
from apps.utils.exceptions import InvalidHullDim, NoSelfDualBasis, OutOfRange
from apps.utils.exports import read_csv
from .eaqecc import (
    TABLE1_PRESET,
    TableSpec,
    derive_params,
    grs_threshold,
    table_generate,
    table_row,
    threshold_sweep,
)
from .serializers import EAQECC_CSV_COLUMNS, EaqeccParamsSerializer, params_from_data


def run_command(*args, **options):
    out = StringIO()
    call_command('eaqecc_table', *args, stdout=out, stderr=StringIO(), **options)
    return out.getvalue()


class DeriveParamsTests(SimpleTestCase):

    def test_examples(self):
        self.assertEqual(derive_params(100, 50, 2).notation, '[[100,48,51;48]]')
        self.assertEqual(derive_params(67, 30, 27).notation, '[[67,3,38;10]]')
        self.assertEqual(derive_params(4, 2, 2).notation, '[[4,0,3;0]]')

    def test_singleton_equality_and_regime(self):
        params = derive_params(100, 50, 2)
        self.assertTrue(params.singleton_equality)
        self.assertEqual(2 * params.d, params.n - params.k_q + 2 + params.c)
        self.assertTrue(params.regime_validated)
        self.assertFalse(derive_params(67, 30, 27).regime_validated)

    def test_invalid_inputs(self):
        with self.assertRaises(InvalidHullDim):
            derive_params(4, 2, 3)
        with self.assertRaises(InvalidHullDim):
            derive_params(5, 1, 2)
        with self.assertRaises(OutOfRange):
            derive_params(4, 4, 0)

    def test_no_field_attached(self):
        params = derive_params(6, 3, 1)
        self.assertIsNone(params.p)
        self.assertIsNone(params.q)
        self.assertIsNone(params.exceeds_grs_threshold)


class ThresholdTests(SimpleTestCase):

    def test_small_thresholds(self):
        self.assertEqual([grs_threshold(3, 15, e) for e in (1, 2, 3)], [4, 2, 1])

    def test_published_thresholds(self):
        self.assertEqual(grs_threshold(2, 100, 2), 20)
        self.assertEqual(grs_threshold(3, 67, 40), 1)

    def test_sweep_is_non_increasing(self):
        values = threshold_sweep(3, 15)
        self.assertEqual(len(values), 15)
        self.assertEqual(values[:4], [8, 4, 2, 1])
        self.assertEqual(values[-1], 1)
        self.assertEqual(threshold_sweep(2, 100)[2], 20)


class TableTests(SimpleTestCase):

    def test_table_rows(self):
        row = table_row(2, 100, 2, 21)
        self.assertEqual(row.notation, '[[100,19,80;77]]')
        self.assertEqual(row.grs_threshold, 20)
        self.assertTrue(row.exceeds_grs_threshold)
        self.assertEqual((row.p, row.h, row.q, row.e), (2, 1, 2, 2))

        row = table_row(3, 67, 40, 2)
        self.assertEqual(row.notation, '[[67,0,66;63]]')
        self.assertTrue(row.exceeds_grs_threshold)

    def test_subfield_power(self):
        row = table_row(4, 3, 1, 1)
        self.assertEqual((row.p, row.h, row.q), (2, 2, 4))

    def test_published_formulas(self):
        formulas = [
            lambda k: (100, k - 2, 101 - k, 98 - k),
            lambda k: (100, 2 * k - 100, 101 - k, 0),
            lambda k: (67, 0, 68 - k, 67 - 2 * k),
            lambda k: (67, k - 27, 68 - k, 40 - k),
        ]
        for spec, formula in zip(TABLE1_PRESET, formulas):
            rows = table_generate([spec])
            self.assertEqual([r.k for r in rows], list(spec.k_values))
            for row in rows:
                with self.subTest(q=spec.q, e=spec.e, k=row.k):
                    self.assertEqual((row.n, row.k_q, row.d, row.c), formula(row.k))
                    self.assertTrue(row.singleton_equality)

    def test_shared_boundary_rows_emitted_once(self):
        rows = table_generate(TABLE1_PRESET)
        keys = [(r.q, r.m, r.e, r.k) for r in rows]
        self.assertEqual(len(keys), len(set(keys)))
        self.assertEqual([r.k for r in rows if r.q == 2].count(98), 1)
        self.assertEqual([r.k for r in rows if r.q == 3].count(27), 1)
        self.assertEqual([r.k for r in rows if r.q == 2], list(range(21, 100)))
        self.assertEqual([r.k for r in rows if r.q == 3], list(range(2, 40)))

    def test_binary_length_six(self):
        rows = table_generate([TableSpec(2, 6, 3, range(1, 6))])
        self.assertEqual([r.hull_dim for r in rows], [1, 2, 3, 2, 1])
        self.assertTrue(all(r.singleton_equality for r in rows))

    def test_empty_specs(self):
        self.assertEqual(table_generate([]), [])

    def test_field_without_self_dual_basis(self):
        with self.assertRaises(NoSelfDualBasis):
            table_row(9, 4, 1, 1)
        with self.assertRaises(OutOfRange):
            table_row(6, 3, 1, 1)


class EaqeccSerializerTests(SimpleTestCase):

    def test_json_records_parse_back(self):
        rows = table_generate(TABLE1_PRESET[2:])
        records = json.loads(json.dumps(EaqeccParamsSerializer(rows, many=True).data))
        self.assertEqual(params_from_data(records), rows)

    def test_rejects_bound_violation(self):
        record = dict(EaqeccParamsSerializer(derive_params(4, 2, 2)).data)
        record['d'] = 5
        serializer = EaqeccParamsSerializer(data=record)
        self.assertFalse(serializer.is_valid())


class EaqeccTableCommandTests(SimpleTestCase):

    def test_published_table_json(self):
        body = json.loads(run_command(paper_table1=True, format='json'))
        self.assertEqual(len(body['records']), 78 + 1 + 26 + 12)
        self.assertEqual(len(body['specs']), 4)
        first = body['records'][0]
        self.assertEqual(first['notation'], '[[100,19,80;77]]')
        self.assertTrue(first['exceeds_grs_threshold'])

    def test_published_table_csv(self):
        rows = read_csv(run_command(paper_table1=True, format='csv'))
        self.assertEqual(list(rows[0]), EAQECC_CSV_COLUMNS)
        params = params_from_data(rows)
        self.assertEqual(params[-1].notation, '[[67,12,29;1]]')

    def test_text_output(self):
        out = run_command(p=2, m=6, e='3')
        self.assertIn('5 row(s)', out)
        self.assertIn('[[6,0,6;4]]', out)

    def test_hull_dim_mode(self):
        body = json.loads(run_command(p=2, m=4, k='2', hull_dim=2, format='json'))
        self.assertEqual([r['notation'] for r in body['records']], ['[[4,0,3;0]]'])
        self.assertIsNone(body['records'][0]['e'])

    def test_usage_errors(self):
        for options in (
            {'m': 4, 'e': '1'},
            {'p': 2, 'm': 4},
            {'p': 2, 'm': 4, 'k': '2', 'hull_dim': 3},
            {'p': 3, 'm': 4, 'e': '1'},
            {'p': 2, 'm': 4, 'e': '4'},
        ):
            with self.subTest(**options):
                with self.assertRaises(CommandError) as cm:
                    run_command(**options)
                self.assertEqual(cm.exception.returncode, 2)


@tag('slow')
class LargeFieldParamsTests(SimpleTestCase):

    def test_oracle_dimensions_give_published_rows(self):
        basis = self_dual_basis(field_make(2, 100))
        for k, notation in ((21, '[[100,19,80;77]]'), (50, '[[100,48,51;48]]'), (98, '[[100,96,3;0]]')):
            with self.subTest(k=k):
                dim = hull_dim_oracle(code_new(basis, k), 2)
                self.assertEqual(dim, 2)
                self.assertEqual(derive_params(100, k, dim).notation, notation)
                self.assertEqual(table_row(2, 100, 2, k).notation, notation)
