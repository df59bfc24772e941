import logging
from fractions import Fraction

import pytest

from errors import (HypothesisViolation, InsufficientData, InvalidPair, InvalidParameters,
                    NotGorensteinQuotient, RingMismatch)
from groebner import IdealSpec
from hk_estimator import (FAIL, NOT_APPLICABLE, PASS, HKSample, HKSampleSequence, RingSpec,
                          bounds_report, converges_along, diagonal_hypersurface, ehk_samples,
                          estimate_ehk, extrapolate, hypersurface_ehk_lower_coefficient,
                          hypersurface_mhk_bound, mhk_gorenstein, probe_diagonal_hypersurface,
                          relative_hk_sample, two_point_fit)


@pytest.fixture
def plane():
    return RingSpec(3, ('x', 'y'))


def sequence(d, *pairs):
    return HKSampleSequence(d, tuple(HKSample(e, q, n, Fraction(n, q ** d))
                                     for e, (q, n) in enumerate(pairs, 1)))


class TestRingSpec:
    def test_dimension_and_shape(self, quadric, plane):
        assert quadric.dimension == 2 and quadric.is_hypersurface
        assert plane.dimension == 2 and plane.is_regular
        assert RingSpec(3, ('x', 'y'), dimension=5).dimension == 5

    def test_negative_dimension(self):
        with pytest.raises(InvalidParameters):
            RingSpec(3, ('x',), dimension=-1)

    def test_diagonal_hypersurface(self):
        ring = diagonal_hypersurface(7, 3)
        assert ring.variables == ('x0', 'x1', 'x2', 'x3')
        assert str(ring.relations[0]) == 'x0^3 + x1^3 + x2^3 + x3^3'


class TestSamples:
    def test_regular_ring_ratios_are_one(self, plane):
        m = plane.ideal(plane.ring.gens())
        samples = ehk_samples(plane, m, 3)
        assert [s.q for s in samples] == [3, 9, 27]
        assert samples.ratios() == [1, 1, 1]
        assert estimate_ehk(plane, m, 3).value == 1

    def test_worker_pool_gives_same_samples(self, plane):
        x, y = plane.ring.gens()
        I = plane.ideal((x ** 2, y))
        assert ehk_samples(plane, I, 2, workers=2) == ehk_samples(plane, I, 2)

    def test_quadric_first_sample(self, quadric):
        m = quadric.ideal(quadric.ring.gens())
        sample = ehk_samples(quadric, m, 1).samples[0]
        assert (sample.q, sample.length, sample.ratio) == (5, 37, Fraction(37, 25))

    def test_ideal_independent_of_generators(self, quadric):
        x, y, z = quadric.ring.gens()
        J = quadric.ideal((y, z))
        J2 = quadric.ideal((y + z, y - z))
        assert ehk_samples(quadric, J, 1).ratios() == ehk_samples(quadric, J2, 1).ratios() == [2]

    def test_bad_e_max(self, plane):
        with pytest.raises(InvalidParameters):
            ehk_samples(plane, plane.ideal(plane.ring.gens()), 0)

    def test_q_must_increase(self):
        with pytest.raises(InvalidParameters):
            sequence(2, (5, 37), (5, 37))

    @pytest.mark.slow
    def test_quadric_estimates(self, quadric):
        x, y, z = quadric.ring.gens()
        ehk = estimate_ehk(quadric, quadric.ideal((x, y, z)), 2)
        assert [s.length for s in ehk.samples] == [37, 937]
        assert abs(ehk.value - Fraction(3, 2)) < Fraction(1, 100)
        mhk = mhk_gorenstein(quadric, quadric.ideal((y, z)), 2)
        assert mhk.samples.ratios() == [Fraction(13, 25), Fraction(313, 625)]
        assert abs(mhk.value - Fraction(1, 2)) < Fraction(1, 100)
        other = mhk_gorenstein(quadric, quadric.ideal((y + z, y - z)), 2)
        assert other.samples.ratios() == mhk.samples.ratios()
        assert abs(other.value - mhk.value) < Fraction(1, 10 ** 6)
        checks = {c.name: c.status for c in bounds_report(2, ehk.value, mhk.value, 2)}
        assert checks['regular_iff_one'] == PASS

    @pytest.mark.slow
    def test_quadric_three_samples(self, quadric):
        x, y, z = quadric.ring.gens()
        ehk = estimate_ehk(quadric, quadric.ideal((x, y, z)), 3)
        mhk = mhk_gorenstein(quadric, quadric.ideal((y, z)), 3)
        assert [s.q for s in ehk.samples] == [5, 25, 125]
        assert ehk.monotone
        assert abs(ehk.value - Fraction(3, 2)) < Fraction(1, 20)
        assert abs(mhk.value - Fraction(1, 2)) < Fraction(1, 20)


class TestExtrapolation:
    def test_two_point_fit_recovers_leading_coefficient(self):
        assert two_point_fit(5, 35, 25, 925, 2) == Fraction(3, 2)
        with pytest.raises(InsufficientData):
            two_point_fit(5, 35, 5, 35, 2)

    def test_fit_is_preferred(self):
        est = extrapolate(sequence(2, (5, 35), (25, 925)))
        assert est.method == 'two-point-fit'
        assert est.value == Fraction(3, 2)
        assert est.last_sample == Fraction(37, 25)
        assert est.monotone

    def test_dimension_zero_uses_last_sample(self):
        est = extrapolate(sequence(0, (2, 3), (4, 3)), d=0)
        assert est.method == 'last-sample'
        assert est.value == 3

    def test_non_monotone_warns(self, caplog):
        with caplog.at_level(logging.WARNING):
            est = extrapolate(sequence(1, (2, 2), (4, 8), (8, 8)))
        assert not est.monotone
        assert est.deltas == (1, -1)
        assert 'non-monotone' in caplog.text

    def test_needs_two_samples(self):
        with pytest.raises(InsufficientData):
            extrapolate(sequence(2, (5, 37)))


class TestConvergenceRule:
    def test_reaches_zero(self):
        v = converges_along([Fraction(1, 2), Fraction(1, 4), Fraction(0), Fraction(0)])
        assert v.decreasing and v.passed

    @pytest.mark.parametrize('errors', [
        [Fraction(1, 2), Fraction(1, 2)],
        [Fraction(0), Fraction(1, 4)],
        [Fraction(1, 2), Fraction(1, 50)],
    ])
    def test_fails(self, errors):
        assert not converges_along(errors).passed

    def test_threshold_override(self):
        assert converges_along([Fraction(1, 2), Fraction(1, 50)], threshold=0.05).passed

    def test_empty(self):
        with pytest.raises(InsufficientData):
            converges_along([])


class TestGorenstein:
    def test_regular_ring(self, plane):
        est = mhk_gorenstein(plane, plane.ideal(plane.ring.gens()), 2)
        assert est.samples.ratios() == [1, 1]
        assert est.value == 1

    def test_socle_must_be_one_dimensional(self, plane):
        x, y = plane.ring.gens()
        with pytest.raises(NotGorensteinQuotient):
            mhk_gorenstein(plane, plane.ideal((x ** 2, x * y, y ** 2)), 2)


class TestRelative:
    def test_colength_one_pair(self, plane):
        x, y = plane.ring.gens()
        est = relative_hk_sample(plane, plane.ideal((x ** 2, y)), plane.ideal((x, y)), 2)
        assert est.samples.ratios() == [1, 1]
        assert est.samples.samples[0].parts == (18, 9)
        mhk = mhk_gorenstein(plane, plane.ideal((x, y)), 2)
        upper = ehk_samples(plane, plane.ideal((x, y)), 2)
        for rel, low, high in zip(est.samples, mhk.samples, upper):
            assert low.ratio <= rel.ratio <= high.ratio

    def test_not_contained(self, plane):
        x, y = plane.ring.gens()
        with pytest.raises(InvalidPair):
            relative_hk_sample(plane, plane.ideal((x, y)), plane.ideal((x ** 2, y)), 2)

    def test_colength_two(self, plane):
        x, y = plane.ring.gens()
        with pytest.raises(InvalidPair):
            relative_hk_sample(plane, plane.ideal((x ** 3, y)), plane.ideal((x, y)), 2)

    def test_quadric_pair(self, quadric):
        x, y, z = quadric.ring.gens()
        J, m = quadric.ideal((y, z)), quadric.ideal((x, y, z))
        # one sample is not enough to extrapolate
        with pytest.raises(InsufficientData):
            relative_hk_sample(quadric, J, m, 1)


class TestBounds:
    def test_coefficients(self):
        assert hypersurface_ehk_lower_coefficient(1) == 1
        assert hypersurface_ehk_lower_coefficient(2) == Fraction(3, 4)
        assert hypersurface_ehk_lower_coefficient(3) == Fraction(2, 3)
        assert hypersurface_mhk_bound(2) == Fraction(1, 2)
        assert hypersurface_mhk_bound(3) == Fraction(1, 8)

    def test_regular_only_range_applies(self):
        checks = {c.name: c for c in bounds_report(1, 1, 1, 2)}
        assert checks['mhk_range'].status == PASS
        assert checks['regular_iff_one'].status == PASS
        assert all(c.status == NOT_APPLICABLE for n, c in checks.items()
                   if n not in ('mhk_range', 'regular_iff_one'))
        assert checks['ehk_lower_bound'].bound == Fraction(3, 4)

    def test_regular_plane_mhk_is_one(self, plane):
        mhk = mhk_gorenstein(plane, plane.ideal(plane.ring.gens()), 2).value
        checks = {c.name: c.status for c in bounds_report(1, 1, mhk, 2)}
        assert checks['regular_iff_one'] == PASS

    @pytest.mark.parametrize('e_mult, mhk', [(1, Fraction(1, 2)), (2, 1)])
    def test_regular_iff_one_fails(self, e_mult, mhk):
        checks = {c.name: c.status for c in bounds_report(e_mult, 1, mhk, 2)}
        assert checks['regular_iff_one'] == FAIL

    def test_quadric_meets_every_bound(self):
        checks = bounds_report(2, Fraction(3, 2), Fraction(1, 2), 2, hypersurface=True)
        assert [c.status for c in checks] == [PASS] * 6

    def test_segre_two_by_two(self):
        checks = {c.name: c.status for c in
                  bounds_report(2, Fraction(4, 3), Fraction(2, 3), 3, hypersurface=True)}
        assert checks == {
            'mhk_range': PASS,
            'regular_iff_one': PASS,
            'mhk_multiplicity_bound': PASS,
            'hypersurface_mhk_bound': NOT_APPLICABLE,
            'ehk_lower_bound': PASS,
            'multiplicity_two_relation': PASS,
        }

    def test_violation(self):
        checks = {c.name: c.status for c in bounds_report(2, Fraction(3, 2), Fraction(9, 10), 2)}
        assert checks['mhk_multiplicity_bound'] == FAIL

    def test_bad_input(self):
        with pytest.raises(InvalidParameters):
            bounds_report(0, 1, 1, 2)


class TestProbe:
    def test_needs_large_characteristic(self):
        with pytest.raises(HypothesisViolation):
            probe_diagonal_hypersurface(3, 3, 2)
        with pytest.raises(InvalidParameters):
            probe_diagonal_hypersurface(5, 1, 2)

    @pytest.mark.slow
    def test_quadric_probe(self):
        report = probe_diagonal_hypersurface(5, 2, 2)
        assert report.conjectural == Fraction(1, 2)
        assert report.estimate.samples.ratios()[0] == Fraction(13, 25)


def test_ideal_spec_rejects_foreign_generators(quadric, plane):
    with pytest.raises(RingMismatch):
        IdealSpec(quadric.ring, plane.ring.gens())
