"""
quotient singularities k[[x_1..x_d]]^G: e_HK = mu/|G|, m_HK = 1/|G|,
the veronese family as a lattice-counting oracle, and the canonical cover relation
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import config
from errors import BudgetExceeded, HypothesisViolation, InvalidParameters, InvalidSubgroup
from groebner import IdealSpec, artinian_length
from hk_estimator import FAIL, NOT_APPLICABLE, PASS, converges_along
from polynomial import PolynomialRing

log = logging.getLogger(__name__)

# veronese subrings live in two variables
VERONESE_DIMENSION = 2


def _positive_int(name, v):
    if isinstance(v, bool) or not isinstance(v, int) or v < 1:
        raise InvalidParameters(f"{name} must be a positive int, got {v!r}")
    return v


@dataclass(frozen=True)
class QuotientParams:
    """
    group_order |G| and mu = number of generators of the ambient ring as an
    A-module; no_pseudo_reflections is recorded as given, never checked
    """
    group_order: int
    mu: int
    characteristic: int = None
    no_pseudo_reflections: bool = True

    def __post_init__(self):
        _positive_int('group order', self.group_order)
        _positive_int('mu', self.mu)


@dataclass(frozen=True)
class VeroneseParams:
    e: int

    def __post_init__(self):
        _positive_int('veronese degree', self.e)

    @property
    def group_order(self):
        return self.e

    @property
    def mu(self):
        return veronese_mu(self.e)

    def quotient_params(self, characteristic=None):
        return QuotientParams(self.e, self.mu, characteristic)


def _check_tame(group_order, characteristic):
    if characteristic is not None and gcd(characteristic, group_order) != 1:
        raise HypothesisViolation(f"char {characteristic} divides |G| = {group_order}")


def quotient_ehk(params):
    _check_tame(params.group_order, params.characteristic)
    return Fraction(params.mu, params.group_order)


def quotient_ehk_ideal(group_order, extended_length, characteristic=None):
    """e_HK(I) = l(S/IS)/|G| for an m-primary ideal I of the invariant ring"""
    _positive_int('group order', group_order)
    _check_tame(group_order, characteristic)
    return Fraction(extended_length, group_order)


def quotient_mhk(group_order, no_pseudo_reflections=True):
    _positive_int('group order', group_order)
    if not no_pseudo_reflections:
        raise HypothesisViolation("m_HK = 1/|G| needs a group without pseudo-reflections")
    return Fraction(1, group_order)


# ---- veronese ----

def _degree_e_multiple(a, b, e):
    """x^a y^b is divisible by some degree-e monomial"""
    return any(a >= c and b >= e - c for c in range(e + 1))


def veronese_generators(e, i):
    """minimal generators of the module of degrees ≡ i mod e over the e-th veronese"""
    _positive_int('veronese degree', e)
    if not 0 <= i < e:
        raise InvalidParameters(f"class must lie in 0..{e - 1}, got {i}")
    gens = []
    for n in range(i, i + e + 1, e):
        for a in range(n + 1):
            if not _degree_e_multiple(a, n - a, e):
                gens.append((a, n - a))
    return gens


def veronese_mu(e):
    return sum(len(veronese_generators(e, i)) for i in range(e))


def veronese_extended_length(e, characteristic=5, budget=None):
    """l(S/m_A S): S = k[x,y], m_A S generated by all degree-e monomials"""
    _positive_int('veronese degree', e)
    ring = PolynomialRing(characteristic, ('x', 'y'))
    gens = tuple(ring.monomial((a, e - a)) for a in range(e + 1))
    return artinian_length(IdealSpec(ring, gens), budget=budget)


def veronese_semigroup_length(e, q, budget=None):
    """
    l(A/m_A^[q]) for the e-th veronese of k[x,y]: lattice points (a, b) with
    e | a+b that dominate none of (q i, q (e-i)), i = 0..e
    """
    _positive_int('veronese degree', e)
    _positive_int('q', q)
    budget = config.ENUMERATION_BUDGET if budget is None else budget
    side = q * e
    if side > budget:
        raise BudgetExceeded(f"veronese enumeration over {side} columns exceeds {budget}",
                             spent=side, budget=budget)
    total = 0
    for a in range(side):
        # the generators a clears are i = 0..a//q; the tightest one caps b
        cap = q * (e - min(a // q, e))
        total += len(range((-a) % e, cap, e))
    return total


@dataclass(frozen=True)
class VeroneseRow:
    q: int
    length: int
    ratio: Fraction
    error: Fraction


def veronese_convergence(e, ladder, threshold=0.05, budget=None):
    limit = quotient_ehk(VeroneseParams(e).quotient_params())
    rows = []
    for q in ladder:
        length = veronese_semigroup_length(e, q, budget)
        ratio = Fraction(length, q ** VERONESE_DIMENSION)
        rows.append(VeroneseRow(q, length, ratio, abs(ratio - limit)))
        log.debug("veronese e=%d q=%d ratio %s", e, q, ratio)
    return rows, converges_along([row.error for row in rows], threshold)


# ---- canonical covers ----

@dataclass(frozen=True)
class CoverCheck:
    status: str
    index: int
    mhk_cover: Fraction
    mhk_base: Fraction
    index_coprime: bool = None
    estimate_status: str = NOT_APPLICABLE
    detail: str = ''


def canonical_cover_check(G_order, H_order, characteristic=None, quadric_estimate=None,
                          tolerance=0.05):
    """m_HK(B) = r m_HK(A) with B = S^H the cover of A = S^G, r = (G:H)"""
    _positive_int('|G|', G_order)
    _positive_int('|H|', H_order)
    if G_order % H_order:
        raise InvalidSubgroup(f"|H| = {H_order} does not divide |G| = {G_order}")
    r = G_order // H_order
    cover, base = quotient_mhk(H_order), quotient_mhk(G_order)
    ok = Fraction(1, H_order) == r * Fraction(1, G_order) and cover == r * base
    coprime = None if characteristic is None else gcd(r, characteristic) == 1
    estimate_status = NOT_APPLICABLE
    if quadric_estimate is not None and G_order == 2:
        close = abs(Fraction(quadric_estimate) - base) < Fraction(str(tolerance))
        estimate_status = PASS if close else FAIL
    return CoverCheck(PASS if ok else FAIL, r, cover, base, coprime, estimate_status,
                      f"1/{H_order} = {r} * 1/{G_order}")
