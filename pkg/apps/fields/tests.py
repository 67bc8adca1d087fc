import numpy as np
from django.test import SimpleTestCase

from apps.utils.exceptions import (
    DivisionByZero,
    FieldMismatch,
    MissingSubfield,
    NotPrime,
    OutOfRange,
    ParseError,
    ReducibleModulus,
    Singular,
    ShapeMismatch,
)
from .fields import (
    FFElement,
    element,
    field_make,
    frob,
    inv,
    least_irreducible,
    one,
    power,
    trace,
    zero,
)
from .linalg import (
    FFMatrix,
    intersection_dim,
    inverse,
    kernel,
    matmul,
    nonsingular_batch,
    rank,
    rank_batch,
    rank_fraction_free,
    rref,
)
from .polynomials import parse_element, parse_polynomial, render_element

X4_X_1 = [1, 1, 0, 0, 1]


def gf16(h=1):
    return field_make(2, 4, X4_X_1, h=h)


def omega_power(ctx, i):
    return element(ctx, [0] * i + [1])


class FieldConstructionTests(SimpleTestCase):

    def test_explicit_modulus(self):
        ctx = gf16()
        self.assertEqual(ctx.modulus, (1, 1, 0, 0, 1))
        self.assertEqual(ctx.order, 16)
        self.assertEqual((ctx.q, ctx.m), (2, 4))

    def test_prime_field_degree_one(self):
        ctx = field_make(2, 1)
        self.assertEqual(ctx.modulus, (0, 1))
        self.assertEqual(ctx.order, 2)

    def test_default_modulus_is_least_irreducible(self):
        self.assertEqual(field_make(3, 2).modulus, (1, 0, 1))
        self.assertEqual(field_make(2, 2).modulus, (1, 1, 1))
        self.assertEqual(field_make(2, 3).modulus, (1, 0, 1, 1))
        self.assertEqual(field_make(2, 4).modulus, (1, 0, 0, 1, 1))

    def test_default_modulus_matches_enumeration(self):
        # least monic irreducible quadratic over GF(3): first without roots
        for coeffs in [(c0, c1, 1) for c0 in range(3) for c1 in range(3)]:
            if all((coeffs[0] + coeffs[1] * x + x * x) % 3 for x in range(3)):
                expected = coeffs
                break
        self.assertEqual(least_irreducible(3, 2), expected)

    def test_deterministic(self):
        self.assertEqual(field_make(5, 3).modulus, field_make(5, 3).modulus)

    def test_errors(self):
        with self.assertRaises(NotPrime):
            field_make(4, 2)
        with self.assertRaises(ReducibleModulus):
            field_make(2, 2, [1, 0, 1])
        with self.assertRaises(OutOfRange):
            field_make(2, 3, X4_X_1)
        with self.assertRaises(OutOfRange):
            field_make(2, 4, X4_X_1, h=3)

    def test_missing_subfield(self):
        ctx = field_make(2, 4, X4_X_1, h=None)
        with self.assertRaises(MissingSubfield):
            ctx.frob(ctx.one, 1)

    def test_default_subfield_is_prime_field(self):
        ctx = field_make(2, 3)
        self.assertEqual((ctx.h, ctx.q, ctx.m), (1, 2, 3))
        self.assertEqual(field_make(3, 4, h=2).q, 9)
        self.assertIsNone(field_make(2, 3, h=None).h)


class ElementArithmeticTests(SimpleTestCase):

    def setUp(self):
        self.ctx = gf16()
        self.w = omega_power(self.ctx, 1)

    def test_omega_fourth_power(self):
        self.assertEqual(omega_power(self.ctx, 3) * self.w, element(self.ctx, [1, 1]))
        self.assertEqual(self.w ** 4, element(self.ctx, [1, 1]))

    def test_inverse_of_omega(self):
        w_inv = inv(self.w)
        self.assertEqual(w_inv, power(self.w, 14))
        self.assertEqual(self.w * w_inv, one(self.ctx))
        self.assertEqual(w_inv, element(self.ctx, [1, 0, 0, 1]))

    def test_additive_inverse_exhaustive(self):
        for coeffs in self.ctx.elements():
            a = FFElement.from_array(self.ctx, coeffs)
            self.assertEqual(a + (-a), zero(self.ctx))
            self.assertEqual(a - a, zero(self.ctx))

    def test_division(self):
        a = element(self.ctx, [1, 0, 1])
        self.assertEqual((a / self.w) * self.w, a)

    def test_inverse_of_zero(self):
        with self.assertRaises(DivisionByZero):
            inv(zero(self.ctx))

    def test_field_mismatch(self):
        other = field_make(2, 4, [1, 0, 0, 1, 1], h=1)
        with self.assertRaises(FieldMismatch):
            self.w + one(other)

    def test_fermat_exhaustive(self):
        for p, n in [(2, 4), (3, 2), (2, 8), (5, 2)]:
            ctx = field_make(p, n)
            values = ctx.elements()[1:]
            powers = ctx.power(values, ctx.order - 1)
            self.assertTrue(np.array_equal(powers, np.broadcast_to(ctx.one, values.shape)))

    def test_mul_commutes_with_vectorized_table(self):
        ctx = field_make(3, 2)
        values = ctx.elements()
        table = ctx.outer(values, values)
        self.assertTrue(np.array_equal(table, table.transpose(1, 0, 2)))
        self.assertTrue(np.array_equal(table[1], values))


class FrobeniusTests(SimpleTestCase):

    def test_frob_worked_example(self):
        ctx = gf16()
        w = omega_power(ctx, 1)
        self.assertEqual(frob(w, 2), element(ctx, [1, 1]))

    def test_frob_order(self):
        ctx = gf16()
        for coeffs in ctx.elements():
            a = FFElement.from_array(ctx, coeffs)
            self.assertEqual(frob(a, 4), a)
            self.assertEqual(frob(a, 0), a)

    def test_frob_matches_power(self):
        ctx = field_make(3, 2, h=1)
        g = FFElement.from_array(ctx, ctx.generator)
        self.assertEqual(frob(g, 1), power(g, 3))

    def test_frob_over_larger_subfield(self):
        ctx = field_make(2, 6, h=2)
        values = ctx.elements()
        self.assertTrue(np.array_equal(ctx.frob(values, 1), ctx.power(values, 4)))

    def test_frob_additive(self):
        ctx = field_make(2, 8, h=1)
        values = ctx.elements()
        rng = np.random.default_rng(7)
        a, b = values[rng.integers(0, 256, 64)], values[rng.integers(0, 256, 64)]
        left = ctx.frob(ctx.add(a, b), 1)
        right = ctx.add(ctx.frob(a, 1), ctx.frob(b, 1))
        self.assertTrue(np.array_equal(left, right))

    def test_negative_exponent(self):
        with self.assertRaises(OutOfRange):
            frob(one(gf16()), -1)


class TraceTests(SimpleTestCase):

    def test_worked_example_entries(self):
        ctx = gf16()
        self.assertEqual(trace(omega_power(ctx, 3)).coeffs, (1,))
        self.assertEqual(trace(omega_power(ctx, 1)).coeffs, (0,))

    def test_trace_of_zero_and_one(self):
        for p, h, m in [(2, 1, 4), (3, 1, 3), (5, 1, 3), (3, 1, 5)]:
            ctx = field_make(p, h * m, h=h)
            self.assertTrue(trace(zero(ctx)).is_zero())
            self.assertEqual(trace(one(ctx)).coeffs, (m % p,))

    def test_trace_is_linear(self):
        ctx = field_make(3, 4, h=2)
        S = ctx.subfield.ctx
        values = ctx.elements()
        rng = np.random.default_rng(11)
        for _ in range(20):
            a, b = values[rng.integers(0, len(values))], values[rng.integers(0, len(values))]
            c = S.elements()[rng.integers(0, S.order)]
            left = ctx.trace(ctx.add(ctx.mul(ctx.subfield.embed(c), a), b))
            right = S.add(S.mul(c, ctx.trace(a)), ctx.trace(b))
            self.assertTrue(np.array_equal(left, right))

    def test_trace_form_nondegenerate(self):
        ctx = field_make(2, 6, h=2)
        basis = ctx.power_basis(ctx.m)
        gram = ctx.trace(ctx.outer(basis, basis))
        self.assertEqual(rank(FFMatrix(ctx.subfield.ctx, gram)), ctx.m)


class SubfieldTests(SimpleTestCase):

    def test_prime_subfield(self):
        sub = gf16().subfield
        self.assertEqual(sub.ctx.modulus, (0, 1))
        self.assertTrue(np.array_equal(sub.embed([[1]]), [gf16().one]))

    def test_proper_subfield_is_fixed(self):
        ctx = gf16(h=2)
        sub = ctx.subfield
        self.assertEqual(sub.ctx.n, 2)
        images = sub.embed(sub.ctx.elements())
        self.assertTrue(np.array_equal(ctx.frob(images, 1), images))
        self.assertTrue(sub.contains(images).all())
        self.assertTrue(np.array_equal(sub.coerce(images), sub.ctx.elements()))

    def test_embedding_is_multiplicative(self):
        ctx = field_make(3, 4, h=2)
        sub = ctx.subfield
        values = sub.ctx.elements()
        products = sub.ctx.outer(values, values)
        left = sub.embed(products)
        images = sub.embed(values)
        self.assertTrue(np.array_equal(left, ctx.outer(images, images)))

    def test_element_outside_subfield(self):
        ctx = gf16(h=2)
        self.assertFalse(ctx.subfield.contains(ctx.generator))


class PolynomialTextTests(SimpleTestCase):

    def test_parse_forms(self):
        self.assertEqual(parse_polynomial('x^4+x+1', 2), X4_X_1)
        self.assertEqual(parse_polynomial('[1,1,0,0,1]', 2), X4_X_1)
        self.assertEqual(parse_polynomial('w^4 + w + 1', 2), X4_X_1)
        self.assertEqual(parse_polynomial('2*x^2 + 1', 3), [1, 0, 2])

    def test_parse_errors(self):
        with self.assertRaises(ParseError):
            parse_polynomial('', 2)
        with self.assertRaises(ParseError):
            parse_polynomial('[1, "a"]', 2)

    def test_parse_element_reduces(self):
        ctx = gf16()
        self.assertTrue(np.array_equal(parse_element(ctx, 'ω^4'), [1, 1, 0, 0]))

    def test_render(self):
        ctx = gf16()
        self.assertEqual(render_element(ctx, [1, 0, 0, 1]), '1+ω^3')
        self.assertEqual(render_element(ctx, [0, 0, 0, 0]), '0')
        self.assertEqual(render_element(field_make(3, 1), [2]), '2')
        self.assertEqual(render_element(field_make(3, 2), [1, 2]), '[1,2]')
        self.assertEqual(repr(omega_power(ctx, 1)), 'ω')


class LinalgTests(SimpleTestCase):

    def setUp(self):
        self.gf2 = field_make(2, 1)

    def coordinate(self, rows, size):
        data = self.gf2.zeros(len(rows), size)
        for i, j in enumerate(rows):
            data[i, j, 0] = 1
        return FFMatrix(self.gf2, data)

    def test_identity_rank(self):
        self.assertEqual(rank(FFMatrix.identity(self.gf2, 4)), 4)

    def test_stacked_frobenius_rows(self):
        ctx = gf16()
        alpha = np.stack([parse_element(ctx, t) for t in ['1+w^3', 'w+w^3', 'w^2+w^3', 'w+w^2+w^3']])
        rows = [ctx.frob(alpha, j) for j in (0, 1, 1, 2)]
        self.assertEqual(rank(FFMatrix(ctx, np.stack(rows))), 3)

    def test_rank_cross_check(self):
        ctx = field_make(3, 2)
        rng = np.random.default_rng(3)
        for _ in range(10):
            matrix = FFMatrix(ctx, ctx.random(rng, 5, 5))
            self.assertEqual(rank(matrix), rank_fraction_free(matrix))
        singular = FFMatrix(ctx, ctx.random(rng, 5, 5))
        singular.data[4] = singular.data[0]
        self.assertEqual(rank(singular), rank_fraction_free(singular))
        self.assertLessEqual(rank(singular), 4)

    def test_rank_row_permutation(self):
        ctx = field_make(5, 2)
        matrix = FFMatrix(ctx, ctx.random(np.random.default_rng(5), 4, 6))
        permuted = FFMatrix(ctx, matrix.data[[2, 0, 3, 1]])
        self.assertEqual(rank(matrix), rank(permuted))

    def test_rref_idempotent(self):
        ctx = field_make(3, 2)
        matrix = FFMatrix(ctx, ctx.random(np.random.default_rng(1), 3, 5))
        once = rref(matrix).matrix
        self.assertTrue(rref(once).matrix.equals(once))

    def test_kernel(self):
        self.assertEqual(kernel(FFMatrix.identity(self.gf2, 3)).rows, 0)
        self.assertEqual(kernel(FFMatrix.zeros(self.gf2, 2, 3)).rows, 3)

        ctx = field_make(3, 3)
        matrix = FFMatrix(ctx, ctx.random(np.random.default_rng(9), 2, 4))
        null = kernel(matrix)
        self.assertEqual(null.rows + rank(matrix), 4)
        self.assertTrue(matmul(matrix, null.T).is_zero())

    def test_inverse(self):
        ctx = field_make(2, 3, h=1)
        moore = FFMatrix(ctx, np.stack([ctx.frob(ctx.power_basis(3), i) for i in range(3)]))
        inv_moore = inverse(moore)
        identity = FFMatrix.identity(ctx, 3)
        self.assertTrue(matmul(inv_moore, moore).equals(identity))
        self.assertTrue(matmul(moore, inv_moore).equals(identity))
        self.assertTrue(inverse(identity).equals(identity))

    def test_inverse_errors(self):
        with self.assertRaises(Singular):
            inverse(FFMatrix.zeros(self.gf2, 2, 2))
        with self.assertRaises(ShapeMismatch):
            inverse(FFMatrix.zeros(self.gf2, 2, 3))

    def test_intersection_dim(self):
        a = self.coordinate([0, 1], 4)
        b = self.coordinate([2, 3], 4)
        self.assertEqual(intersection_dim(a, b), 0)
        self.assertEqual(intersection_dim(a, a), 2)
        self.assertEqual(intersection_dim(a, self.coordinate([1, 2], 4)), 1)
        with self.assertRaises(ShapeMismatch):
            intersection_dim(a, self.coordinate([0], 3))

    def test_batched_checks_agree(self):
        ctx = field_make(2, 3)
        rng = np.random.default_rng(21)
        stack = ctx.random(rng, 40, 3, 3)
        stack[0, 2] = stack[0, 1]
        expected = [rank(FFMatrix(ctx, m)) for m in stack]
        self.assertEqual(list(rank_batch(ctx, stack)), expected)
        self.assertEqual(list(nonsingular_batch(ctx, stack)), [r == 3 for r in expected])

    def test_eliminations_agree_over_extension_field(self):
        ctx = field_make(2, 8)
        rng = np.random.default_rng(13)
        stack = ctx.random(rng, 12, 4, 6)
        stack[0, 3] = ctx.add(stack[0, 1], stack[0, 2])
        stack[1, 2:] = 0
        expected = [rank(FFMatrix(ctx, m)) for m in stack]
        self.assertEqual([rank_fraction_free(FFMatrix(ctx, m)) for m in stack], expected)
        self.assertEqual(list(rank_batch(ctx, stack)), expected)
        self.assertLessEqual(expected[0], 3)
        self.assertLessEqual(expected[1], 2)
