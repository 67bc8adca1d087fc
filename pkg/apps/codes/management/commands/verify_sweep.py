"""
Management command to compare the hull-dimension formula with the rank oracle over every admissible field
"""
import logging

from apps.codes.serializers import HULL_CSV_COLUMNS, HullReportSerializer, SweepConfigSerializer, ViolationSerializer
from apps.codes.sweeps import SweepOptions, admissible_fields, ordered_reports, run_sweep
from apps.codes.tasks import evaluate_fields
from apps.codes.utils import SweepRecorder
from apps.utils.commands import CodingCommand

logger = logging.getLogger(__name__)


class Command(CodingCommand):
    help = 'Sweep every (p, h, m) with a self-dual basis and q^m within budget; exit 1 on any violation'
    config_serializer_class = SweepConfigSerializer
    csv_columns = HULL_CSV_COLUMNS
    text_template = 'codes/verify_sweep.txt'

    def add_command_arguments(self, parser):
        parser.add_argument('--max-field-size', type=int, help='Largest q^m swept (default: CODING["MAX_FIELD_SIZE"])')
        parser.add_argument('--max-minors', type=int, help='Largest minor count for the MDS check')
        parser.add_argument('--q', type=str, help='Only these subfield sizes: 2,3 or 2..9')
        parser.add_argument('--m', type=str, help='Only these extension degrees: 2..10')
        parser.add_argument('--no-mds', action='store_true', help='Skip the all-minors MDS criterion')
        parser.add_argument('--spot-checks', type=int, help='Random encodings checked per code')
        parser.add_argument('--seed', type=int, help='Seed for the spot checks (default 0)')
        parser.add_argument(
            '--dispatch',
            choices=['local', 'celery'],
            help='Evaluate fields in-process or as Celery tasks (default: local)',
        )
        parser.add_argument('--record', action='store_true', help='Persist the run and its hull records')

    def run(self, config):
        options = SweepOptions.from_settings(
            max_field_size=config.get('max_field_size'),
            max_minors=config.get('max_minors'),
            check_mds=not config['no_mds'],
            spot_checks=config['spot_checks'],
            seed=config['seed'],
        )
        fields = admissible_fields(options.max_field_size, config.get('q'), config.get('m'))
        dispatch = config['dispatch']

        summary, results = run_sweep(
            fields,
            options,
            evaluate_all=lambda items: evaluate_fields(items, options, dispatch),
        )
        reports = ordered_reports(results)

        run = None
        if config['record']:
            run = SweepRecorder.record(summary, results, options, dispatch)

        records = HullReportSerializer(reports, many=True).data
        violations = ViolationSerializer(summary.violations, many=True).data
        payload = {
            'summary': summary.as_dict(),
            'fields': [list(f) for f in fields],
            'violations': violations,
            'run_id': None if run is None else str(run.run_id),
        }
        context = {
            'summary': summary.as_dict(),
            'fields': fields,
            'violations': violations,
            'run': run,
        }
        self.emit(config, records, payload, context)

        if not summary.passed:
            self.fail(
                f"Sweep failed: {summary.disagreements} disagreements and "
                f"{len(summary.violations)} violations over {summary.instances} instances"
            )
