import tempfile
from pathlib import Path

from django.conf import settings
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings
from rest_framework import serializers

from .exceptions import (
    EXIT_USAGE,
    EXIT_VERIFICATION_FAILED,
    InternalInvariantViolation,
    NoSelfDualBasis,
    command_error,
)
from .exports import read_csv, resolve_output_path, to_csv, to_json, write_output
from .performance import log_performance
from .serializers import RangeField, RunConfigSerializer


class RangeFieldTests(SimpleTestCase):

    def setUp(self):
        self.field = RangeField()

    def test_forms(self):
        self.assertEqual(self.field.to_internal_value(3), [3])
        self.assertEqual(self.field.to_internal_value('0..3'), [0, 1, 2, 3])
        self.assertEqual(self.field.to_internal_value('1,2, 5'), [1, 2, 5])
        self.assertEqual(self.field.to_internal_value(['2', 4]), [2, 4])

    def test_invalid(self):
        for value in ('a..3', 'x', True, '3..1', ''):
            with self.subTest(value=value):
                with self.assertRaises(serializers.ValidationError):
                    self.field.to_internal_value(value)


class RunConfigSerializerTests(SimpleTestCase):

    def validate(self, **values):
        serializer = RunConfigSerializer(data={'command': 'hull', **values})
        return serializer.is_valid(), serializer

    def test_defaults(self):
        valid, serializer = self.validate(p=2, m=4)
        self.assertTrue(valid)
        self.assertEqual(serializer.validated_data['h'], 1)
        self.assertEqual(serializer.validated_data['format'], 'text')
        self.assertEqual(serializer.validated_data['dual_convention'], 'theorem')

    def test_ranges_checked_against_m(self):
        self.assertFalse(self.validate(p=2, m=4, k='0..2')[0])
        self.assertFalse(self.validate(p=2, m=4, e='4')[0])
        self.assertFalse(self.validate(p=2, m=4, basis=['1', 'x'])[0])
        self.assertTrue(self.validate(p=2, m=4, k='1..3', e='0..3')[0])

    def test_unknown_format(self):
        valid, serializer = self.validate(p=2, m=4, format='xml')
        self.assertFalse(valid)
        self.assertIn('format', serializer.errors)


class ExportTests(SimpleTestCase):

    def test_csv_literals(self):
        rows = [
            {'k': 1, 'agree': True, 'dim_formula': None, 'classification': 'LCD', 'extra': 'dropped'},
            {'k': 2, 'agree': False, 'dim_formula': 1, 'classification': 'generic'},
        ]
        text = to_csv(rows, ['k', 'agree', 'dim_formula', 'classification'])
        self.assertEqual(text.splitlines()[0], 'k,agree,dim_formula,classification')
        self.assertEqual(text.splitlines()[1], '1,true,null,LCD')
        self.assertEqual(read_csv(text), [
            {'k': 1, 'agree': True, 'dim_formula': None, 'classification': 'LCD'},
            {'k': 2, 'agree': False, 'dim_formula': 1, 'classification': 'generic'},
        ])

    def test_json_ends_with_newline(self):
        self.assertTrue(to_json({'a': 1}).endswith('}\n'))

    def test_output_paths(self):
        with tempfile.TemporaryDirectory() as tmp:
            with override_settings(CODING={**settings.CODING, 'OUTPUT_DIR': Path(tmp)}):
                self.assertEqual(resolve_output_path('a/b.json'), Path(tmp) / 'a' / 'b.json')
                path = write_output('a/b.json', '{}\n')
                self.assertEqual(path.read_text(encoding='utf-8'), '{}\n')
                absolute = Path(tmp) / 'c.csv'
                self.assertEqual(resolve_output_path(str(absolute)), absolute)


class CommandErrorTests(SimpleTestCase):

    def test_exit_codes(self):
        error = command_error(NoSelfDualBasis())
        self.assertIsInstance(error, CommandError)
        self.assertEqual(error.returncode, EXIT_USAGE)
        self.assertIn('NoSelfDualBasis', str(error))

        with self.assertLogs('apps.utils.exceptions', 'ERROR'):
            error = command_error(InternalInvariantViolation('broken'))
        self.assertEqual(error.returncode, EXIT_VERIFICATION_FAILED)

    def test_details_kept(self):
        exc = NoSelfDualBasis('none here', q=3, m=2)
        self.assertEqual(str(exc), 'none here')
        self.assertEqual(exc.details, {'q': 3, 'm': 2})


class LogPerformanceTests(SimpleTestCase):

    def test_slow_call_warns(self):
        @log_performance(threshold=-1)
        def instant():
            return 7

        with self.assertLogs('apps.utils.performance', 'WARNING') as logs:
            self.assertEqual(instant(), 7)
        self.assertIn('Slow execution', logs.output[0])

    def test_fast_call_logs_debug(self):
        @log_performance(threshold=60)
        def instant():
            return 7

        with self.assertLogs('apps.utils.performance', 'DEBUG') as logs:
            instant()
        self.assertIn('instant took', logs.output[0])
