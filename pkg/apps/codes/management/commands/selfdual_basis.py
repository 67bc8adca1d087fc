"""
Management command to construct (or verify) a self-dual basis of GF(q^m) over GF(q)
"""
import logging

from apps.codes.bases import gram_matrix, is_self_dual, make_basis, power_basis, self_dual_construction
from apps.codes.serializers import field_payload, matrix_payload
from apps.codes.utils import field_from_config
from apps.fields.polynomials import coefficient_list, parse_element, render_element, render_matrix
from apps.utils.commands import CodingCommand

logger = logging.getLogger(__name__)


class Command(CodingCommand):
    help = 'Print the Gram matrix M, the transform E, the self-dual basis α and its trace checks'
    csv_columns = ('index', 'element', 'coefficients')
    text_template = 'codes/selfdual_basis.txt'

    def add_command_arguments(self, parser):
        self.add_field_arguments(parser)
        parser.add_argument(
            '--basis',
            nargs='+',
            help='Verify this basis instead of constructing one (m elements)',
        )

    def run(self, config):
        ctx = field_from_config(config)
        S = ctx.subfield.ctx

        if config.get('basis'):
            basis = make_basis(ctx, [parse_element(ctx, text) for text in config['basis']])
            start, gram, transform = basis, gram_matrix(basis), None
        else:
            construction = self_dual_construction(ctx, power_basis(ctx))
            start, gram, transform = construction.start, construction.gram, construction.transform
            basis = construction.basis

        checks = gram_matrix(basis)
        verified = is_self_dual(basis)
        records = [
            {
                'index': i + 1,
                'element': render_element(ctx, elem),
                'coefficients': coefficient_list(elem),
            }
            for i, elem in enumerate(basis.elems)
        ]
        trace_checks = [
            {'i': i + 1, 'j': j + 1, 'value': render_element(S, checks.data[i, j])}
            for i in range(basis.m)
            for j in range(basis.m)
        ]
        payload = {
            'field': field_payload(ctx),
            'start_basis': coefficient_list(start.elems),
            'gram': matrix_payload(gram),
            'transform': None if transform is None else matrix_payload(transform),
            'basis': coefficient_list(basis.elems),
            'trace_checks': trace_checks,
            'self_dual': verified,
        }
        context = {
            'field': ctx,
            'start': [render_element(ctx, elem) for elem in start.elems],
            'gram_rows': [' '.join(row) for row in render_matrix(S, gram.data)],
            'transform_rows': None if transform is None else [' '.join(row) for row in render_matrix(S, transform.data)],
            'basis': records,
            'trace_checks': trace_checks,
            'self_dual': verified,
        }
        self.emit(config, records, payload, context)

        if not verified:
            self.fail(f"Basis of {ctx!r} is not self-dual: Tr(α_i α_j) differs from δ_ij")
