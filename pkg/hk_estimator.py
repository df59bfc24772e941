"""
hilbert-kunz sample sequences l(A/I^[q])/q^d over q = p^e,
finite-q extrapolation, m_HK of gorenstein rings and the inequality suite
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import pairwise
from math import comb, factorial

import config
from errors import (ArithmeticBug, HypothesisViolation, InsufficientData,
                    InvalidPair, InvalidParameters, NotGorensteinQuotient)
from groebner import (IdealSpec, artinian_length, bracket_power, buchberger,
                      coerce, colon_maximal, normal_form)
from polynomial import PolynomialRing

log = logging.getLogger(__name__)

PASS = 'pass'
FAIL = 'fail'
NOT_APPLICABLE = 'not-applicable'


@dataclass(frozen=True)
class RingSpec:
    """F_p[variables]/(relations); relations are trusted to be a regular sequence"""
    characteristic: int
    variables: tuple
    relations: tuple = ()
    dimension: int = None
    ring: PolynomialRing = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        ring = PolynomialRing(self.characteristic, tuple(self.variables))
        object.__setattr__(self, 'variables', ring.variables)
        object.__setattr__(self, 'ring', ring)
        object.__setattr__(self, 'relations', tuple(coerce(f, ring) for f in self.relations if f))
        if self.dimension is None:
            object.__setattr__(self, 'dimension', ring.nvars - len(self.relations))
        if self.dimension < 0:
            raise InvalidParameters(f"dimension must be >= 0, got {self.dimension}")

    @property
    def is_regular(self):
        return not self.relations

    @property
    def is_hypersurface(self):
        return len(self.relations) == 1

    def ideal(self, generators):
        return IdealSpec(self.ring, tuple(coerce(g, self.ring) for g in generators))


@dataclass(frozen=True)
class HKSample:
    e: int
    q: int
    length: int
    ratio: Fraction
    parts: tuple = ()  # lengths the sample was formed from, when it is a difference


@dataclass(frozen=True)
class HKSampleSequence:
    dimension: int
    samples: tuple

    def __post_init__(self):
        qs = [s.q for s in self.samples]
        if any(b <= a for a, b in pairwise(qs)):
            raise InvalidParameters(f"q values must be strictly increasing, got {qs}")

    def ratios(self):
        return [s.ratio for s in self.samples]

    def __len__(self):
        return len(self.samples)

    def __iter__(self):
        return iter(self.samples)


@dataclass(frozen=True)
class HKEstimate:
    value: Fraction
    method: str
    last_sample: Fraction
    two_point_fit: Fraction = None
    deltas: tuple = ()
    monotone: bool = True
    samples: HKSampleSequence = None


@dataclass(frozen=True)
class ConvergenceVerdict:
    decreasing: bool
    final_error: Fraction
    threshold: float

    @property
    def passed(self):
        return self.decreasing and self.final_error < self.threshold


def converges_along(errors, threshold=None):
    """errors strictly decrease while nonzero, stay zero once zero, and end below threshold"""
    threshold = config.CONVERGENCE_THRESHOLD if threshold is None else threshold
    if not errors:
        raise InsufficientData("empty error ladder")
    decreasing = all(cur == 0 if prev == 0 else cur < prev for prev, cur in pairwise(errors))
    return ConvergenceVerdict(decreasing, errors[-1], threshold)


# ---- per-q lengths ----

def _bracket_length(task):
    ideal, relations, q, budget = task
    return artinian_length(bracket_power(ideal, q), relations, budget)


def _bracket_lengths(ideal, relations, qs, budget, workers):
    tasks = [(ideal, relations, q, budget) for q in qs]
    if workers and workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            lengths = list(pool.map(_bracket_length, tasks))
    else:
        lengths = [_bracket_length(t) for t in tasks]
    for q, n in zip(qs, lengths):
        log.info("l(A/I^[%d]) = %d for I = %s", q, n, ideal)
    return dict(zip(qs, lengths))


def _frobenius_powers(ring, e_max):
    if isinstance(e_max, bool) or not isinstance(e_max, int) or e_max < 1:
        raise InvalidParameters(f"e_max must be a positive int, got {e_max!r}")
    p = ring.characteristic
    return [(e, p ** e) for e in range(1, e_max + 1)]


def ehk_samples(ring, I, e_max, budget=None, workers=1):
    """l(A/I^[q]) and its ratio to q^d for q = p, p^2, ..., p^e_max"""
    I = ring.ideal(I.generators)
    powers = _frobenius_powers(ring, e_max)
    lengths = _bracket_lengths(I, ring.relations, [q for _, q in powers], budget, workers)
    d = ring.dimension
    samples = tuple(HKSample(e, q, lengths[q], Fraction(lengths[q], q ** d)) for e, q in powers)
    return HKSampleSequence(d, samples)


def _difference_samples(ring, big, small, e_max, budget, workers):
    """samples of [l(A/big^[q]) - l(A/small^[q])] / q^d, big ⊆ small"""
    powers = _frobenius_powers(ring, e_max)
    qs = [q for _, q in powers]
    outer = _bracket_lengths(big, ring.relations, qs, budget, workers)
    inner = _bracket_lengths(small, ring.relations, qs, budget, workers)
    d = ring.dimension
    samples = []
    for e, q in powers:
        diff = outer[q] - inner[q]
        if diff < 0:
            raise ArithmeticBug(f"containment broken at q={q}: {outer[q]} < {inner[q]}")
        samples.append(HKSample(e, q, diff, Fraction(diff, q ** d), (outer[q], inner[q])))
    return HKSampleSequence(d, tuple(samples))


# ---- extrapolation ----

def two_point_fit(q1, l1, q2, l2, d):
    """a in l(q) = a q^d + b q^(d-1) through two samples"""
    det = (q1 * q2) ** (d - 1) * (q1 - q2)
    if det == 0:
        raise InsufficientData("two-point fit needs distinct q values")
    return Fraction(l1 * q2 ** (d - 1) - l2 * q1 ** (d - 1), det)


def extrapolate(samples, d=None):
    if len(samples) < 2:
        raise InsufficientData(f"need at least 2 samples, got {len(samples)}")
    d = samples.dimension if d is None else d
    rows = samples.samples
    ratios = [s.ratio for s in rows]
    deltas = tuple(b - a for a, b in pairwise(ratios))
    monotone = all(x >= 0 for x in deltas) or all(x <= 0 for x in deltas)
    if not monotone:
        log.warning("non-monotone sample deltas: %s", [str(x) for x in deltas])
    last = ratios[-1]
    fit = None
    if d >= 1:
        s1, s2 = rows[-2], rows[-1]
        fit = two_point_fit(s1.q, s1.length, s2.q, s2.length, d)
    value, method = (fit, 'two-point-fit') if fit is not None else (last, 'last-sample')
    return HKEstimate(value, method, last, fit, deltas, monotone, samples)


def estimate_ehk(ring, I, e_max=None, budget=None, workers=1):
    e_max = config.DEFAULT_E_MAX if e_max is None else e_max
    return extrapolate(ehk_samples(ring, I, e_max, budget, workers))


# ---- m_HK and relative samples ----

def mhk_gorenstein(ring, J, e_max=None, budget=None, workers=1):
    """
    m_HK = e_HK(J) - e_HK(J:m) for a parameter ideal J with A/J gorenstein;
    J:m is computed once and then bracket-powered
    """
    e_max = config.DEFAULT_E_MAX if e_max is None else e_max
    J = ring.ideal(J.generators)
    wide = colon_maximal(J, ring.relations, budget)
    socle = artinian_length(J, ring.relations, budget) - artinian_length(wide, ring.relations, budget)
    if socle != 1:
        raise NotGorensteinQuotient(f"socle of A/J has dimension {socle}, expected 1")
    log.info("J:m = %s", wide)
    samples = _difference_samples(ring, J, wide, e_max, budget, workers)
    return extrapolate(samples)


def relative_hk_sample(ring, I, Iprime, e_max=None, budget=None, workers=1):
    """samples of e_HK(I) - e_HK(I') for a colength-one pair I ⊆ I'"""
    e_max = config.DEFAULT_E_MAX if e_max is None else e_max
    I, Iprime = ring.ideal(I.generators), ring.ideal(Iprime.generators)
    basis = buchberger(Iprime.with_generators(ring.relations), budget=budget)
    if any(normal_form(g, basis, budget) for g in I):
        raise InvalidPair(f"{I} is not contained in {Iprime}")
    colength = artinian_length(I, ring.relations, budget) - artinian_length(Iprime, ring.relations, budget)
    if colength != 1:
        raise InvalidPair(f"l(I'/I) = {colength}, expected 1")
    samples = _difference_samples(ring, I, Iprime, e_max, budget, workers)
    return extrapolate(samples)


# ---- bounds ----

@dataclass(frozen=True)
class BoundCheck:
    name: str
    status: str
    value: Fraction = None
    bound: Fraction = None
    detail: str = ''


def hypersurface_ehk_lower_coefficient(d):
    """c_d with e_HK >= c_d * e(A) for the hypersurfaces in question"""
    if d < 1:
        raise InvalidParameters(f"d must be >= 1, got {d}")
    total = sum((-1) ** i * (d + 1 - 2 * i) ** d * comb(d + 1, i) for i in range(d // 2 + 1))
    return Fraction(total, 2 ** d * factorial(d))


def hypersurface_mhk_bound(d):
    return Fraction(1, 2 ** (d - 1) * factorial(d - 1))


def _status(ok):
    return PASS if ok else FAIL


def bounds_report(e_mult, ehk, mhk, d, hypersurface=False):
    e_mult, ehk, mhk = Fraction(e_mult), Fraction(ehk), Fraction(mhk)
    if e_mult < 1 or d < 1:
        raise InvalidParameters(f"need e(A) >= 1 and d >= 1, got {e_mult}, {d}")
    checks = [BoundCheck('mhk_range', _status(0 <= mhk <= 1), mhk, Fraction(1),
                         '0 <= m_HK <= 1')]
    # m_HK = 1 exactly for regular rings, i.e. e(A) = 1
    checks.append(BoundCheck('regular_iff_one', _status((mhk == 1) == (e_mult == 1)), mhk,
                             Fraction(1), 'm_HK = 1 iff e(A) = 1'))

    if e_mult >= 2:
        bound = (e_mult - ehk) / (e_mult - 1)
        checks.append(BoundCheck('mhk_multiplicity_bound', _status(mhk <= bound), mhk, bound,
                                 'm_HK <= (e - e_HK)/(e - 1)'))
    else:
        checks.append(BoundCheck('mhk_multiplicity_bound', NOT_APPLICABLE, detail='needs e(A) >= 2'))

    if hypersurface and e_mult == d:
        bound = hypersurface_mhk_bound(d)
        checks.append(BoundCheck('hypersurface_mhk_bound', _status(mhk <= bound), mhk, bound,
                                 'm_HK <= 1/(2^(d-1) (d-1)!)'))
    else:
        checks.append(BoundCheck('hypersurface_mhk_bound', NOT_APPLICABLE,
                                 detail='needs a hypersurface with e(A) = d'))

    coeff = hypersurface_ehk_lower_coefficient(d)
    if hypersurface:
        checks.append(BoundCheck('ehk_lower_bound', _status(ehk >= coeff * e_mult), ehk,
                                 coeff * e_mult, f'e_HK >= {coeff} * e(A)'))
    else:
        checks.append(BoundCheck('ehk_lower_bound', NOT_APPLICABLE, bound=coeff,
                                 detail=f'coefficient {coeff}; needs a hypersurface'))

    if hypersurface and e_mult == 2:
        checks.append(BoundCheck('multiplicity_two_relation', _status(mhk == 2 - ehk), mhk,
                                 2 - ehk, 'm_HK = 2 - e_HK'))
    else:
        checks.append(BoundCheck('multiplicity_two_relation', NOT_APPLICABLE,
                                 detail='needs a hypersurface with e(A) = 2'))
    return checks


# ---- diagonal hypersurface probe ----

@dataclass(frozen=True)
class ProbeReport:
    characteristic: int
    d: int
    estimate: HKEstimate
    conjectural: Fraction


def diagonal_hypersurface(p, d):
    """x_0^d + ... + x_d^d in d+1 variables"""
    names = tuple(f"x{i}" for i in range(d + 1))
    ring = PolynomialRing(p, names)
    relation = ring.zero()
    for x in ring.gens():
        relation = relation + x ** d
    return RingSpec(p, names, (relation,))


def probe_diagonal_hypersurface(p, d, e_max=None, budget=None, workers=1):
    """m_HK samples of the diagonal hypersurface next to 1/(2^(d-1) (d-1)!); no verdict"""
    if d < 2:
        raise InvalidParameters(f"d must be >= 2, got {d}")
    if p <= d:
        raise HypothesisViolation(f"probe needs p > d, got p={p}, d={d}")
    ring = diagonal_hypersurface(p, d)
    J = ring.ideal(ring.ring.gens()[1:])
    estimate = mhk_gorenstein(ring, J, e_max, budget, workers)
    return ProbeReport(p, d, estimate, hypersurface_mhk_bound(d))
