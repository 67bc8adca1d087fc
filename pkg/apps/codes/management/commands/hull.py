"""
Management command to compute e-Galois hull dimensions by formula and oracle
"""
from apps.codes.hulls import hull_reports
from apps.codes.serializers import HULL_CSV_COLUMNS, HullConfigSerializer, HullReportSerializer, field_payload
from apps.codes.utils import basis_from_config, e_values, field_from_config, k_values
from apps.fields.polynomials import render_matrix
from apps.utils.commands import CodingCommand


class Command(CodingCommand):
    help = 'Hull dimension of G_k(α) and its e-Galois dual for every requested (k, e)'
    config_serializer_class = HullConfigSerializer
    csv_columns = HULL_CSV_COLUMNS
    text_template = 'codes/hull.txt'

    def add_command_arguments(self, parser):
        self.add_field_arguments(parser)
        parser.add_argument('--k', type=str, help='Code dimension: 2, 1..3 or 1,3 (default: all)')
        parser.add_argument('--e', type=str, help='Galois parameter: 0, 0..3 or 0,2 (default: all)')
        parser.add_argument('--basis', nargs='+', help='Use this basis instead of the self-dual one')
        parser.add_argument(
            '--dual-convention',
            choices=['theorem', 'preliminaries'],
            help='Which e-Galois dual to form (default: theorem)',
        )
        parser.add_argument(
            '--with-basis',
            action='store_true',
            help='Include a basis of each hull',
        )

    def run(self, config):
        ctx = field_from_config(config)
        reports = hull_reports(
            basis_from_config(ctx, config),
            k_values(config, ctx.m),
            e_values(config, ctx.m),
            convention=config['dual_convention'],
            with_basis=config['with_basis'],
        )
        records = HullReportSerializer(reports, many=True).data
        rows = [
            {**record, 'hull_rows': self.hull_rows(report)}
            for record, report in zip(records, reports)
        ]
        context = {'field': ctx, 'reports': rows, 'with_basis': config['with_basis']}
        self.emit(config, records, {'field': field_payload(ctx)}, context)

    def hull_rows(self, report):
        if report.hull_basis is None:
            return []
        ctx = report.hull_basis.ctx
        return ['(' + ', '.join(row) + ')' for row in render_matrix(ctx, report.hull_basis.data)]
