"""
Text forms of moduli and field elements.

Two input forms are accepted everywhere: polynomial text such as
``x^4+x+1`` (the generator may also be written ``w`` or ``ω``) and a
coefficient list such as ``[1,1,0,0,1]`` with the constant term first.
"""
import json
import re

import galois
import numpy as np

from apps.utils.exceptions import ParseError
from .fields import prime_field

GENERATOR_SYMBOL = 'ω'

_VARIABLE = re.compile(r'(alpha|ω|w|a|x)')


def parse_polynomial(text, p):
    """Coefficients (lowest degree first) of a polynomial over GF(p)"""
    if isinstance(text, (list, tuple)):
        return [int(c) % p for c in text]
    text = str(text).strip()
    if not text:
        raise ParseError('Empty polynomial')

    if text.startswith('['):
        try:
            values = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"Invalid coefficient list {text!r}: {exc}") from exc
        if not isinstance(values, list) or not all(isinstance(v, int) for v in values):
            raise ParseError(f"Coefficient list must hold integers: {text!r}")
        return [v % p for v in values]

    normalized = _VARIABLE.sub('x', text.replace(' ', '')).replace('**', '^').replace('*', '')
    try:
        poly = galois.Poly.Str(normalized, field=prime_field(p))
    except (ValueError, TypeError, SyntaxError) as exc:
        raise ParseError(f"Invalid polynomial {text!r}: {exc}") from exc
    return [int(c) for c in poly.coeffs[::-1]]


def parse_element(ctx, text):
    """Element array of ``ctx`` from polynomial text or a coefficient list"""
    return ctx.from_poly(parse_polynomial(text, ctx.p))


def coefficient_list(values):
    return np.asarray(values, dtype=np.int64).tolist()


def render_element(ctx, value):
    """``1+ω^3`` in characteristic 2, integers in prime fields, lists otherwise"""
    coeffs = np.asarray(value, dtype=np.int64).reshape(-1)
    if ctx.n == 1:
        return str(int(coeffs[0]))
    if ctx.p == 2 and ctx.h in (None, 1):
        terms = []
        for degree, c in enumerate(coeffs):
            if not c:
                continue
            if degree == 0:
                terms.append('1')
            elif degree == 1:
                terms.append(GENERATOR_SYMBOL)
            else:
                terms.append(f"{GENERATOR_SYMBOL}^{degree}")
        return '+'.join(terms) or '0'
    return '[' + ','.join(str(int(c)) for c in coeffs) + ']'


def render_matrix(ctx, data):
    """Rows of rendered elements for text output"""
    data = np.asarray(data, dtype=np.int64)
    return [[render_element(ctx, entry) for entry in row] for row in data]
