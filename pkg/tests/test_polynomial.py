import random

import pytest

from errors import ArithmeticBug, ExponentOverflow, InvalidFrobeniusPower, RingMismatch
from finite_field import PrimeFieldElement
from polynomial import (Comparison, Monomial, MonomialOrder, Polynomial, PolynomialRing,
                        divide_exact, is_power_of, monomial_compare)


def random_poly(ring, rng, terms=4, degree=3):
    return ring({tuple(rng.randrange(degree + 1) for _ in range(ring.nvars)):
                 rng.randrange(ring.characteristic) for _ in range(terms)})


class TestMonomial:
    def test_basic_ops(self):
        a, b = Monomial((2, 0, 1)), Monomial((1, 3, 0))
        assert (a * b).exponents == (3, 3, 1)
        assert a.lcm(b).exponents == (2, 3, 1)
        assert (a ** 3).exponents == (6, 0, 3)
        assert Monomial((1, 0, 1)).divides(a)
        assert not b.divides(a)
        assert a.quotient(Monomial((1, 0, 0))).exponents == (1, 0, 1)
        assert a.total_degree == 3

    def test_quotient_needs_divisor(self):
        with pytest.raises(ArithmeticBug):
            Monomial((1, 0)).quotient(Monomial((0, 1)))

    def test_pure_power(self):
        assert Monomial((0, 4, 0)).is_pure_power()
        assert not Monomial((1, 1, 0)).is_pure_power()
        assert not Monomial((0, 0, 0)).is_pure_power()

    def test_exponent_limits(self):
        with pytest.raises(ValueError):
            Monomial((-1, 0))
        with pytest.raises(ExponentOverflow):
            Monomial((2**31, 0))


class TestOrders:
    @pytest.mark.parametrize('kind,expected', [
        ('degrevlex', Comparison.LT),
        ('deglex', Comparison.GT),
        ('lex', Comparison.GT),
    ])
    def test_xz_against_y_squared(self, kind, expected):
        assert monomial_compare((1, 0, 1), (0, 2, 0), MonomialOrder(kind)) == expected

    def test_degree_first(self):
        for kind in ('deglex', 'degrevlex'):
            assert MonomialOrder(kind).compare((0, 0, 2), (1, 0, 0)) == Comparison.GT
        assert MonomialOrder('lex').compare((0, 0, 2), (1, 0, 0)) == Comparison.LT

    def test_precedence(self):
        order = MonomialOrder('lex', (2, 1, 0))
        assert order.compare((1, 0, 0), (0, 0, 1)) == Comparison.LT
        assert order.compare(Monomial((0, 1, 0)), Monomial((0, 1, 0))) == Comparison.EQ

    def test_bad_order(self):
        with pytest.raises(ValueError):
            MonomialOrder('revlex')
        with pytest.raises(ValueError):
            PolynomialRing(5, ('x', 'y'), MonomialOrder('lex', (0, 0)))

    def test_total_order_on_small_box(self):
        mons = [(a, b, c) for a in range(3) for b in range(3) for c in range(3)]
        for kind in ('lex', 'deglex', 'degrevlex'):
            order = MonomialOrder(kind)
            ranked = sorted(mons, key=order.key_function(3))
            assert len(set(ranked)) == len(mons)
            # multiplicative: m1 < m2 implies m1*m3 < m2*m3
            for m1, m2 in zip(ranked, ranked[1:]):
                shifted = tuple(a + 1 for a in m1), tuple(a + 1 for a in m2)
                assert order.compare(*shifted) == Comparison.LT


class TestPolynomial:
    def test_display(self, r3):
        x, y, z = r3.gens()
        assert str(4 * x ** 2 * y + 3) == '4*x^2*y + 3'
        assert str(r3.zero()) == '0'
        assert str(x - y) == 'x + 4*y'

    def test_leading_term_follows_order(self, r3):
        x, y, z = r3.gens()
        f = x + y ** 2
        assert f.leading_monomial().exponents == (0, 2, 0)
        assert f.in_order(MonomialOrder('lex')).leading_monomial().exponents == (1, 0, 0)

    def test_coefficients_reduce(self, r3):
        x = r3.var('x')
        assert (x * 5).is_zero()
        assert r3({(1, 0, 0): 7, (0, 0, 0): -1}) == r3({(1, 0, 0): 2, (0, 0, 0): 4})
        assert r3.constant(PrimeFieldElement(3, 5)) == 3

    def test_frobenius_matches_power(self, r3):
        x, y, z = r3.gens()
        f = x + 2 * y + z ** 2
        slow = f * f * f * f * f
        assert f ** 5 == slow == f.frobenius(5)
        assert f ** 5 == x ** 5 + 2 * y ** 5 + z ** 10

    def test_frobenius_needs_power_of_p(self, r3):
        with pytest.raises(InvalidFrobeniusPower):
            r3.var('x').frobenius(3)

    def test_ring_mismatch(self, r3):
        other = PolynomialRing(7, ('x', 'y', 'z'))
        with pytest.raises(RingMismatch):
            r3.var('x') + other.var('x')
        with pytest.raises(RingMismatch):
            r3({(1, 0): 1})

    def test_homogeneity(self, r3):
        x, y, z = r3.gens()
        assert (x ** 2 + y * z).is_homogeneous()
        assert not (x ** 2 + y).is_homogeneous()
        assert (x ** 2 + y).total_degree() == 2
        assert r3.zero().total_degree() == -1

    def test_monic(self, r3):
        x, y, _ = r3.gens()
        f = (3 * x ** 2 + y).monic()
        assert f.leading_coefficient() == 1
        assert f == x ** 2 + 2 * y

    def test_lift_and_restrict(self, r3):
        x, y, z = r3.gens()
        ext = r3.extend(('t',), MonomialOrder('lex'))
        f = x * y + z ** 3
        g = f.lift(ext)
        assert g.ring.variables == ('t', 'x', 'y', 'z')
        assert g.restrict(r3) == f
        with pytest.raises(RingMismatch):
            (g * ext.var('t')).restrict(r3)

    def test_exponent_overflow(self, r3):
        big = r3.monomial((2**30, 0, 0))
        with pytest.raises(ExponentOverflow):
            big * big


class TestAxioms:
    @pytest.mark.parametrize('seed', range(8))
    def test_ring_axioms(self, r3, seed):
        rng = random.Random(seed)
        f, g, h = (random_poly(r3, rng) for _ in range(3))
        assert f * (g + h) == f * g + f * h
        assert f * g == g * f
        assert (f + g) + h == f + (g + h)
        assert (f * g) * h == f * (g * h)
        assert f - f == 0
        assert f + r3.zero() == f

    @pytest.mark.parametrize('seed', range(6))
    def test_exact_division(self, r3, seed):
        rng = random.Random(100 + seed)
        f, g = random_poly(r3, rng), random_poly(r3, rng)
        if f.is_zero():
            return
        assert divide_exact(f * g, f) == g

    @pytest.mark.parametrize('p', [2, 3, 5, 7])
    @pytest.mark.parametrize('seed', range(4))
    def test_frobenius_is_additive(self, p, seed):
        ring = PolynomialRing(p, ('x', 'y', 'z'))
        rng = random.Random(200 + 10 * p + seed)
        f, g = random_poly(ring, rng), random_poly(ring, rng)
        lhs = f + g
        by_product = ring.one()
        for _ in range(p):
            by_product = by_product * lhs
        assert by_product == lhs.frobenius(p) == f.frobenius(p) + g.frobenius(p)
        q = p * p
        assert lhs.frobenius(q) == f.frobenius(q) + g.frobenius(q)
        assert (f * g).frobenius(p) == f.frobenius(p) * g.frobenius(p)


class TestDivision:
    def test_difference_of_squares(self, r3):
        x, y, _ = r3.gens()
        assert divide_exact(x ** 2 - y ** 2, x - y) == x + y

    def test_remainder_is_a_bug(self, r3):
        x = r3.var('x')
        with pytest.raises(ArithmeticBug):
            divide_exact(x ** 2 + 1, x)
        with pytest.raises(ArithmeticBug):
            divide_exact(x, r3.zero())

    @pytest.mark.parametrize('q,p,expected', [
        (1, 5, True), (5, 5, True), (125, 5, True), (10, 5, False), (0, 5, False), (8, 2, True),
    ])
    def test_is_power_of(self, q, p, expected):
        assert is_power_of(q, p) is expected


def test_polynomial_is_hashable(r3):
    x, y, _ = r3.gens()
    assert len({x + y, y + x, x}) == 2
    assert isinstance(x + y, Polynomial)
