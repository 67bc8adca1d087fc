"""
Management command to classify Gabidulin codes as LCD, self-orthogonal, self-dual or dual-containing
"""
from apps.codes.bases import is_self_dual
from apps.codes.gabidulin import code_new
from apps.codes.hulls import euclidean_lcd_test, hermitian_self_dual_test, hull_report
from apps.codes.serializers import HullConfigSerializer, field_payload
from apps.codes.utils import basis_from_config, e_values, field_from_config, k_values
from apps.utils.commands import CodingCommand

CLASSIFY_CSV_COLUMNS = [
    'p', 'h', 'm', 'k', 'e', 'dim_oracle', 'classification', 'self_orthogonal',
    'lcd_euclidean', 'selfdual_hermitian',
]


class Command(CodingCommand):
    help = 'Classify G_k(α) against its e-Galois dual, with the G G^T tests where they apply'
    config_serializer_class = HullConfigSerializer
    csv_columns = CLASSIFY_CSV_COLUMNS
    text_template = 'codes/classify.txt'

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

    def run(self, config):
        ctx = field_from_config(config)
        basis = basis_from_config(ctx, config)
        self_dual = is_self_dual(basis)
        m = ctx.m

        records = []
        for k in sorted(k_values(config, m)):
            code = code_new(basis, k)
            for e in sorted(e_values(config, m)):
                report = hull_report(code, e, config['dual_convention'], self_dual=self_dual)
                records.append({
                    'p': report.p,
                    'h': report.h,
                    'm': m,
                    'k': k,
                    'e': e,
                    'dim_oracle': report.dim_oracle,
                    'classification': str(report.classification),
                    'self_orthogonal': report.classification.self_orthogonal,
                    'lcd_euclidean': euclidean_lcd_test(code) if e == 0 else None,
                    'selfdual_hermitian': (
                        hermitian_self_dual_test(code) if 2 * e == m and 2 * k == m else None
                    ),
                })
        self.emit(config, records, {'field': field_payload(ctx)}, {'field': ctx, 'reports': records})
