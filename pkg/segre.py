"""
hilbert-kunz invariants of segre products k[x_1..x_r] # k[y_1..y_s]

closed forms in stirling numbers, the finite-q counting sums they are limits of,
and two brute-force enumerators used as independent oracles
"""
import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial
from typing import NamedTuple

import config
from errors import BudgetExceeded, InvalidPair, InvalidParameters
from hk_estimator import converges_along
from stirling import binomial, stirling2, surjection_count

log = logging.getLogger(__name__)

# above this many tuples the auto method tallies each side separately
RAW_TUPLE_LIMIT = 2**20


@dataclass(frozen=True)
class SegreParams:
    r: int
    s: int

    def __post_init__(self):
        for v in (self.r, self.s):
            if isinstance(v, bool) or not isinstance(v, int):
                raise InvalidPair(f"r, s must be ints, got {self.r!r}, {self.s!r}")
        if not 2 <= self.r <= self.s:
            raise InvalidPair(f"need 2 <= r <= s, got r={self.r}, s={self.s}")

    @property
    def d(self):
        return self.r + self.s - 1

    @property
    def is_gorenstein(self):
        return self.r == self.s

    def __str__(self):
        return f"({self.r},{self.s})"


def _check_q(q):
    if isinstance(q, bool) or not isinstance(q, int) or q < 1:
        raise InvalidParameters(f"q must be a positive int, got {q!r}")


# ---- graded piece counts ----

def alpha(r, n):
    """monomials of degree n in r variables"""
    if n < 0:
        return 0
    return binomial(n + r - 1, r - 1)


def alpha_q(r, n, q):
    """monomials of degree n in r variables with every exponent <= q-1"""
    _check_q(q)
    if n < 0 or n > r * (q - 1):
        return 0
    return sum((-1) ** i * binomial(r, i) * binomial(n - i * q + r - 1, r - 1)
               for i in range(r + 1))


def alpha_q_bruteforce(r, n, q):
    _check_q(q)
    return sum(1 for a in product(range(q), repeat=r) if sum(a) == n)


@dataclass(frozen=True)
class AlphaTable:
    """alpha_{r,n} and alpha_{r,n,q} for n in 0..r(q-1)"""
    r: int
    q: int
    alpha: tuple
    alpha_q: tuple

    @classmethod
    def build(cls, r, q):
        _check_q(q)
        top = r * (q - 1)
        return cls(r, q,
                   tuple(alpha(r, n) for n in range(top + 1)),
                   tuple(alpha_q(r, n, q) for n in range(top + 1)))

    def violations(self):
        """names of broken invariants, empty when the table is consistent"""
        bad = []
        if sum(self.alpha_q) != self.q ** self.r:
            bad.append('box_sum')
        if self.alpha_q != self.alpha_q[::-1]:
            bad.append('symmetry')
        if any(self.alpha_q[n] != self.alpha[n] for n in range(min(self.q, len(self.alpha)))):
            bad.append('truncation')
        if any(v < 0 or v > a for v, a in zip(self.alpha_q, self.alpha)):
            bad.append('range')
        return bad


# ---- closed forms ----

def _correction_sum(p):
    r, s, d = p.r, p.s, p.d
    return sum(binomial(r, k + j) * binomial(s, j) * (-1) ** (r + k) * k ** d
               for k in range(1, r) for j in range(1, r - k + 1))


def segre_ehk_closed(p):
    return Fraction(surjection_count(p.d, p.s) - _correction_sum(p), factorial(p.d))


def segre_mhk_closed(p):
    return Fraction(surjection_count(p.d, p.r) + _correction_sum(p), factorial(p.d))


def segre_mhk_pair_sum_form(p):
    """the same m_HK written as a sum over pairs 0 < j < i <= r"""
    r, s, d = p.r, p.s, p.d
    extra = sum(binomial(r, i) * binomial(s, j) * (-1) ** (r - i + j) * (i - j) ** d
                for i in range(1, r + 1) for j in range(1, i))
    return Fraction(surjection_count(d, r) + extra, factorial(d))


def truncated_sum_limit(p):
    """limit of q^-d * sum_n alpha_{r,n,q} alpha_{s,n}"""
    return Fraction(surjection_count(p.d, p.r), factorial(p.d))


def sum_identity(p):
    """e_HK + m_HK = (r! S(d,r) + s! S(d,s)) / d!"""
    return Fraction(surjection_count(p.d, p.r) + surjection_count(p.d, p.s), factorial(p.d))


def segre_multiplicity(p):
    """e(A) of the segre product: C(r+s-2, r-1)"""
    return binomial(p.r + p.s - 2, p.r - 1)


def rees_formulas(s):
    """e_HK, m_HK of k[x1,x2] # k[y1..ys], the rees algebra of the maximal ideal"""
    if isinstance(s, bool) or not isinstance(s, int) or s < 2:
        raise InvalidParameters(f"s must be an int >= 2, got {s!r}")
    ehk = s * (Fraction(1, 2) + Fraction(1, factorial(s + 1)))
    mhk = Fraction(2 ** (s + 1) - s - 2, factorial(s + 1))
    return ehk, mhk


def gorenstein_sum(r):
    """e_HK + m_HK for the gorenstein case r = s"""
    if isinstance(r, bool) or not isinstance(r, int) or r < 2:
        raise InvalidParameters(f"r must be an int >= 2, got {r!r}")
    return Fraction(2 * factorial(r) * stirling2(2 * r - 1, r), factorial(2 * r - 1))


# ---- finite q ----

class SegreCounts(NamedTuple):
    ehk_numerator: int
    mhk_numerator: int


def segre_finite_q(p, q):
    """numerators of the finite-q e_HK and m_HK estimates (divide by q^d)"""
    _check_q(q)
    top = p.s * (q - 1)
    ehk = mhk = 0
    for n in range(top + 1):
        ar, a_s = alpha(p.r, n), alpha(p.s, n)
        arq, asq = alpha_q(p.r, n, q), alpha_q(p.s, n, q)
        ehk += ar * asq + arq * a_s - arq * asq
        mhk += arq * asq
    return SegreCounts(ehk, mhk)


def truncated_sum_numerator(p, q):
    _check_q(q)
    return sum(alpha_q(p.r, n, q) * alpha(p.s, n) for n in range(p.r * (q - 1) + 1))


def _compositions(n, parts):
    """exponent vectors with `parts` entries summing to n"""
    if parts == 1:
        yield (n,)
        return
    for a in range(n + 1):
        for rest in _compositions(n - a, parts - 1):
            yield (a,) + rest


def segre_bracket_length(p, q, budget=None):
    """
    l(A/M^[q]) by enumeration: a degree-n pair (a, b) lies in M^[q]
    exactly when some a_i >= q and some b_j >= q
    """
    _check_q(q)
    budget = config.ENUMERATION_BUDGET if budget is None else budget
    top = p.s * (q - 1)
    size = sum(alpha(p.r, n) + alpha(p.s, n) for n in range(top + 1))
    if size > budget:
        raise BudgetExceeded(f"segre enumeration needs {size} vectors, budget {budget}",
                             spent=size, budget=budget)
    total = 0
    for n in range(top + 1):
        left = list(_compositions(n, p.r))
        right = list(_compositions(n, p.s))
        big_left = sum(1 for a in left if max(a) >= q)
        big_right = sum(1 for b in right if max(b) >= q)
        total += len(left) * len(right) - big_left * big_right
    return total


def socle_annihilator_count(p, q, method='auto', budget=None):
    """
    #{(a, b) in [0,q)^r x [0,q)^s : sum(a) == sum(b)} by enumeration
    raw walks all q^(r+s) tuples; split tallies each side and matches sums
    p may be SegreParams or an (r, s) pair with r, s >= 1
    """
    _check_q(q)
    r, s = (p.r, p.s) if isinstance(p, SegreParams) else p
    if r < 1 or s < 1:
        raise InvalidParameters(f"r, s must be >= 1, got {r}, {s}")
    budget = config.ENUMERATION_BUDGET if budget is None else budget
    if method == 'auto':
        method = 'raw' if q ** (r + s) <= min(budget, RAW_TUPLE_LIMIT) else 'split'
    if method == 'raw':
        if q ** (r + s) > budget:
            raise BudgetExceeded(f"{q}^{r + s} tuples exceed budget {budget}",
                                 spent=q ** (r + s), budget=budget)
        return sum(1 for t in product(range(q), repeat=r + s) if sum(t[:r]) == sum(t[r:]))
    if method != 'split':
        raise InvalidParameters(f"unknown method {method!r}")
    if q ** max(r, s) > budget:
        raise BudgetExceeded(f"{q}^{max(r, s)} tuples exceed budget {budget}",
                             spent=q ** max(r, s), budget=budget)
    left = Counter(sum(a) for a in product(range(q), repeat=r))
    right = Counter(sum(b) for b in product(range(q), repeat=s))
    return sum(c * right[n] for n, c in left.items())


# ---- convergence ladders ----

@dataclass(frozen=True)
class LadderRow:
    q: int
    ehk_ratio: Fraction
    mhk_ratio: Fraction
    truncated_ratio: Fraction
    ehk_error: Fraction
    mhk_error: Fraction
    truncated_error: Fraction


def segre_convergence(p, ladder):
    """finite-q ratios against the closed forms along a q ladder"""
    ehk, mhk, truncated = segre_ehk_closed(p), segre_mhk_closed(p), truncated_sum_limit(p)
    rows = []
    for q in ladder:
        counts = segre_finite_q(p, q)
        scale = q ** p.d
        er = Fraction(counts.ehk_numerator, scale)
        mr = Fraction(counts.mhk_numerator, scale)
        lr = Fraction(truncated_sum_numerator(p, q), scale)
        rows.append(LadderRow(q, er, mr, lr, abs(er - ehk), abs(mr - mhk), abs(lr - truncated)))
        log.debug("segre %s q=%d ehk~%s mhk~%s", p, q, float(er), float(mr))
    verdict = {
        'ehk': converges_along([row.ehk_error for row in rows]),
        'mhk': converges_along([row.mhk_error for row in rows]),
        'truncated': converges_along([row.truncated_error for row in rows]),
    }
    return rows, verdict
