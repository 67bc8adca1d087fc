"""
Base class for the coding-theory management commands.

Every command accepts ``--format``, ``--out``, ``--seedless`` and
``--config``. A config file holds dotenv-style ``key=value`` lines whose keys
mirror the long flag names; explicit flags win over file values. The merged
options are validated by the command's serializer before ``run`` sees them.
"""
import logging
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError
from django.template.loader import render_to_string
from dotenv import dotenv_values

from .exceptions import EXIT_USAGE, EXIT_VERIFICATION_FAILED, CodingError, command_error
from .exports import to_csv, to_json, write_output
from .serializers import OUTPUT_FORMATS, RunConfigSerializer

logger = logging.getLogger(__name__)

# config keys holding several values, separated by ';' in config files
LIST_OPTIONS = ('basis',)


class CodingCommand(BaseCommand):
    config_serializer_class = RunConfigSerializer
    csv_columns = ()
    text_template = None

    def add_arguments(self, parser):
        parser.add_argument(
            '--format',
            choices=OUTPUT_FORMATS,
            help='Output format (default: text)',
        )
        parser.add_argument(
            '--out',
            type=str,
            help='Write output to this path (relative paths resolve against CODING["OUTPUT_DIR"])',
        )
        parser.add_argument(
            '--seedless',
            action='store_true',
            help='Refuse any randomized code path',
        )
        parser.add_argument(
            '--config',
            type=str,
            help='key=value file mirroring the long flag names',
        )
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def add_field_arguments(self, parser):
        parser.add_argument('--p', type=int, help='Characteristic')
        parser.add_argument('--h', type=int, help='Subfield degree: q = p^h (default 1)')
        parser.add_argument('--m', type=int, help='Extension degree over GF(q)')
        parser.add_argument(
            '--modulus',
            type=str,
            help='Modulus of degree h*m, as "x^4+x+1" or "[1,1,0,0,1]"',
        )

    def handle(self, *args, **options):
        config = self.load_config(options)
        logger.debug(f"{self.command_name()} running with {config}")
        try:
            self.run(config)
        except CodingError as exc:
            raise command_error(exc)

    def run(self, config):
        raise NotImplementedError

    def command_name(self):
        return self.__module__.rsplit('.', 1)[-1]

    # configuration

    def load_config(self, options):
        values = {}
        if options.get('config'):
            path = Path(options['config'])
            if not path.is_file():
                raise CommandError(f"Config file not found: {path}", returncode=EXIT_USAGE)
            file_values = dotenv_values(path)
            for key, value in file_values.items():
                key = key.strip().lower().lstrip('-').replace('-', '_')
                if key in LIST_OPTIONS and isinstance(value, str):
                    value = [item.strip() for item in value.split(';') if item.strip()]
                values[key] = value

        skip = {'config', 'verbosity', 'settings', 'pythonpath', 'traceback', 'no_color',
                'force_color', 'skip_checks', 'stdout', 'stderr'}
        for key, value in options.items():
            if key in skip or value is None or value is False:
                continue
            values[key] = value
        values['command'] = self.command_name()

        serializer = self.config_serializer_class(data=values)
        if not serializer.is_valid():
            errors = '; '.join(f"{field}: {' '.join(map(str, msgs))}" for field, msgs in serializer.errors.items())
            logger.warning(f"Invalid configuration for {self.command_name()}: {errors}")
            raise CommandError(f"Invalid configuration: {errors}", returncode=EXIT_USAGE)
        return dict(serializer.validated_data)

    # output

    def meta(self, config):
        return {
            'command': self.command_name(),
            'config': {k: v for k, v in config.items() if k not in ('command',)},
            'seedless': config.get('seedless', False),
        }

    def emit(self, config, records, payload=None, context=None):
        """Render records in the configured format and write or print them"""
        fmt = config.get('format', 'text')
        if fmt == 'json':
            body = {'meta': self.meta(config), 'records': records}
            body.update(payload or {})
            content = to_json(body)
        elif fmt == 'csv':
            content = to_csv(records, list(self.csv_columns))
        else:
            context = dict(context or {})
            context.setdefault('records', records)
            context.setdefault('config', config)
            content = render_to_string(self.text_template, context)

        out = config.get('out')
        if out:
            path = write_output(out, content)
            self.stdout.write(self.style.SUCCESS(f'Wrote {fmt} output to {path}'))
        else:
            self.stdout.write(content, ending='' if content.endswith('\n') else '\n')
        return content

    def fail(self, message):
        """Verification failure: exit status 1"""
        self.stderr.write(self.style.ERROR(message))
        raise CommandError(message, returncode=EXIT_VERIFICATION_FAILED)
