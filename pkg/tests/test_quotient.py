from fractions import Fraction

import pytest

from errors import BudgetExceeded, HypothesisViolation, InvalidParameters, InvalidSubgroup
from hk_estimator import FAIL, NOT_APPLICABLE, PASS
from quotient import (QuotientParams, VeroneseParams, canonical_cover_check, quotient_ehk,
                      quotient_ehk_ideal, quotient_mhk, veronese_convergence,
                      veronese_extended_length, veronese_generators, veronese_mu,
                      veronese_semigroup_length)


class TestQuotientFormulas:
    def test_a1_singularity(self):
        assert quotient_ehk(QuotientParams(2, 3)) == Fraction(3, 2)
        assert quotient_mhk(2) == Fraction(1, 2)

    def test_ideal_version(self):
        assert quotient_ehk_ideal(2, 3) == Fraction(3, 2)
        assert quotient_ehk_ideal(6, 9, characteristic=5) == Fraction(3, 2)

    def test_wild_characteristic(self):
        with pytest.raises(HypothesisViolation):
            quotient_ehk(QuotientParams(4, 5, characteristic=2))
        with pytest.raises(HypothesisViolation):
            quotient_ehk_ideal(3, 4, characteristic=3)

    def test_pseudo_reflections(self):
        with pytest.raises(HypothesisViolation):
            quotient_mhk(3, no_pseudo_reflections=False)

    @pytest.mark.parametrize('order,mu', [(0, 1), (2, 0), (-3, 2), (True, 2)])
    def test_validation(self, order, mu):
        with pytest.raises(InvalidParameters):
            QuotientParams(order, mu)


class TestVeronese:
    @pytest.mark.parametrize('e', range(1, 7))
    def test_mu(self, e):
        assert veronese_mu(e) == e * (e + 1) // 2
        assert VeroneseParams(e).mu == veronese_extended_length(e)

    def test_generators(self):
        assert veronese_generators(2, 0) == [(0, 0)]
        assert sorted(veronese_generators(2, 1)) == [(0, 1), (1, 0)]
        with pytest.raises(InvalidParameters):
            veronese_generators(3, 3)

    @pytest.mark.parametrize('q', [1, 3, 5, 9, 27])
    def test_e2_lattice_count(self, q):
        assert veronese_semigroup_length(2, q) == (3 * q * q - 1) // 2

    def test_e2_even_q(self):
        assert veronese_semigroup_length(2, 4) == 24

    @pytest.mark.parametrize('q', [2, 4, 8, 16])
    def test_e3_close_to_limit(self, q):
        ratio = Fraction(veronese_semigroup_length(3, q), q * q)
        assert abs(ratio - 2) <= Fraction(1, q * q)

    def test_convergence(self):
        rows, verdict = veronese_convergence(2, (3, 9, 27, 81))
        assert verdict.passed
        assert rows[0].length == 13
        assert rows[-1].error == Fraction(1, 2 * 81 ** 2)

    def test_e3_ladder_ends_close(self):
        _, verdict = veronese_convergence(3, (2, 4, 8, 16))
        assert verdict.final_error < 0.05

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            veronese_semigroup_length(2, 1000, budget=10)

    def test_bad_degree(self):
        with pytest.raises(InvalidParameters):
            VeroneseParams(0)


class TestCanonicalCover:
    def test_index_relation(self):
        check = canonical_cover_check(6, 2)
        assert check.status == PASS
        assert check.index == 3
        assert check.mhk_cover == 3 * check.mhk_base == Fraction(1, 2)
        assert check.index_coprime is None

    def test_coprimality_recorded(self):
        assert canonical_cover_check(6, 2, characteristic=3).index_coprime is False
        assert canonical_cover_check(6, 2, characteristic=5).index_coprime is True

    @pytest.mark.parametrize('g', range(1, 61))
    def test_every_divisor(self, g):
        for h in range(1, g + 1):
            if g % h == 0:
                assert canonical_cover_check(g, h).status == PASS

    @pytest.mark.parametrize('g', range(1, 61))
    def test_index_and_coprimality_sweep(self, g):
        for h in (h for h in range(1, g + 1) if g % h == 0):
            check = canonical_cover_check(g, h, characteristic=61)
            assert check.index * h == g
            assert check.mhk_cover == Fraction(1, h) == check.index * check.mhk_base
            assert check.index_coprime is True

    def test_not_a_subgroup(self):
        with pytest.raises(InvalidSubgroup):
            canonical_cover_check(6, 4)

    def test_quadric_estimate(self):
        assert canonical_cover_check(2, 1, quadric_estimate=Fraction(1, 2)).estimate_status == PASS
        assert canonical_cover_check(2, 1, quadric_estimate=Fraction(9, 10)).estimate_status == FAIL
        assert canonical_cover_check(4, 2, quadric_estimate=Fraction(1, 2)).estimate_status \
            == NOT_APPLICABLE
