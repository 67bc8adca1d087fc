"""
Management command to tabulate EAQECC parameters from e-Galois hull dimensions
"""
from dataclasses import replace

from apps.quantum.eaqecc import TABLE1_PRESET, TableSpec, derive_params, table_generate
from apps.quantum.serializers import EAQECC_CSV_COLUMNS, EaqeccConfigSerializer, EaqeccParamsSerializer
from apps.utils.commands import CodingCommand


class Command(CodingCommand):
    help = 'EAQECC parameters [[n, k_q, d; c]] with Singleton, regime and threshold flags'
    config_serializer_class = EaqeccConfigSerializer
    csv_columns = EAQECC_CSV_COLUMNS
    text_template = 'quantum/eaqecc_table.txt'

    def add_command_arguments(self, parser):
        parser.add_argument(
            '--paper-table1',
            action='store_true',
            help='Reproduce the four published rows over their k ranges',
        )
        parser.add_argument('--p', type=int, help='Characteristic')
        parser.add_argument('--h', type=int, help='Subfield degree: q = p^h (default 1)')
        parser.add_argument('--m', type=int, help='Code length (extension degree)')
        parser.add_argument('--e', type=str, help='Galois parameter: 2, 0..3 or 1,2')
        parser.add_argument('--k', type=str, help='Code dimension (default: 1..m-1)')
        parser.add_argument('--hull-dim', type=int, help='Use this hull dimension instead of the formula')

    def run(self, config):
        specs = []
        if config['paper_table1']:
            specs = list(TABLE1_PRESET)
            rows = table_generate(specs)
        else:
            p, h, m = config['p'], config['h'], config['m']
            k_values = config.get('k') or list(range(1, m))
            if config.get('hull_dim') is not None:
                rows = [
                    replace(derive_params(m, k, config['hull_dim']), p=p, h=h)
                    for k in k_values
                ]
            else:
                specs = [TableSpec(p ** h, m, e, k_values) for e in config['e']]
                rows = table_generate(specs)

        records = EaqeccParamsSerializer(rows, many=True).data
        payload = {
            'specs': [
                {'q': s.q, 'm': s.m, 'e': s.e, 'k': list(s.k_values), 'formula': s.formula}
                for s in specs
            ],
        }
        self.emit(config, records, payload, {'rows': records, 'specs': specs})
