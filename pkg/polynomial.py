"""
monomials, monomial orders and sparse polynomials over F_p

polynomials are immutable; terms are kept as (exponent tuple, coeff) pairs
sorted from the leading term down under the ring's order
"""
from dataclasses import dataclass, field
from enum import IntEnum
from functools import lru_cache

from config import MAX_EXPONENT
from errors import (ArithmeticBug, ExponentOverflow, InvalidFrobeniusPower,
                    RingMismatch)
from finite_field import PrimeFieldElement, check_characteristic, inverse_mod

ORDERS = ('lex', 'deglex', 'degrevlex')


class Comparison(IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def check_exponents(exps):
    for e in exps:
        if e < 0:
            raise ValueError(f"negative exponent in {exps}")
        if e > MAX_EXPONENT:
            raise ExponentOverflow(f"exponent {e} exceeds {MAX_EXPONENT}")
    return exps


@dataclass(frozen=True)
class Monomial:
    """product of variables, stored as an exponent vector"""
    exponents: tuple

    def __post_init__(self):
        object.__setattr__(self, 'exponents', check_exponents(tuple(self.exponents)))

    @property
    def total_degree(self):
        return sum(self.exponents)

    @property
    def nvars(self):
        return len(self.exponents)

    def _other(self, other):
        if len(other.exponents) != len(self.exponents):
            raise RingMismatch("monomials over different variable counts")
        return other.exponents

    def __mul__(self, other):
        return Monomial(tuple(a + b for a, b in zip(self.exponents, self._other(other))))

    def __pow__(self, k):
        return Monomial(tuple(a * k for a in self.exponents))

    def divides(self, other):
        return all(a <= b for a, b in zip(self.exponents, self._other(other)))

    def lcm(self, other):
        return Monomial(tuple(max(a, b) for a, b in zip(self.exponents, self._other(other))))

    def quotient(self, divisor):
        """self / divisor, divisor must divide self"""
        if not divisor.divides(self):
            raise ArithmeticBug(f"{divisor.exponents} does not divide {self.exponents}")
        return Monomial(tuple(a - b for a, b in zip(self.exponents, divisor.exponents)))

    def is_pure_power(self):
        return sum(1 for a in self.exponents if a) == 1


@lru_cache(maxsize=64)
def _key_function(order, nvars):
    prec = order.precedence if order.precedence is not None else tuple(range(nvars))
    if sorted(prec) != list(range(nvars)):
        raise ValueError(f"precedence {prec} is not a permutation of {nvars} vars")
    identity = prec == tuple(range(nvars))
    rev = tuple(reversed(prec))

    if order.kind == 'lex':
        if identity:
            return lambda e: e
        return lambda e: tuple(e[i] for i in prec)
    if order.kind == 'deglex':
        if identity:
            return lambda e: (sum(e),) + e
        return lambda e: (sum(e),) + tuple(e[i] for i in prec)
    # degrevlex: higher degree wins, then smaller exponent in the last variable
    return lambda e: (sum(e),) + tuple(-e[i] for i in rev)


@dataclass(frozen=True)
class MonomialOrder:
    """
    lex / deglex / degrevlex with an optional variable precedence
    (indices from most to least significant variable)
    """
    kind: str = 'degrevlex'
    precedence: tuple = None

    def __post_init__(self):
        if self.kind not in ORDERS:
            raise ValueError(f"order must be one of {ORDERS}, got {self.kind!r}")
        if self.precedence is not None:
            object.__setattr__(self, 'precedence', tuple(self.precedence))

    def key_function(self, nvars):
        """sort key on exponent tuples: larger key means larger monomial"""
        return _key_function(self, nvars)

    def compare(self, a, b):
        ea = a.exponents if isinstance(a, Monomial) else tuple(a)
        eb = b.exponents if isinstance(b, Monomial) else tuple(b)
        if len(ea) != len(eb):
            raise RingMismatch("monomials over different variable counts")
        key = self.key_function(len(ea))
        ka, kb = key(ea), key(eb)
        if ka == kb:
            return Comparison.EQ
        return Comparison.GT if ka > kb else Comparison.LT


DEGREVLEX = MonomialOrder('degrevlex')


def monomial_compare(m1, m2, order=DEGREVLEX):
    return order.compare(m1, m2)


@dataclass(frozen=True)
class PolynomialRing:
    """F_p[variables] with a fixed monomial order"""
    characteristic: int
    variables: tuple
    order: MonomialOrder = field(default=DEGREVLEX)

    def __post_init__(self):
        check_characteristic(self.characteristic)
        object.__setattr__(self, 'variables', tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        self.order.key_function(self.nvars)  # validates precedence length

    @property
    def nvars(self):
        return len(self.variables)

    def key_function(self):
        return self.order.key_function(self.nvars)

    def with_order(self, order):
        return PolynomialRing(self.characteristic, self.variables, order)

    def extend(self, names, order=None):
        """ring with extra variables placed in front"""
        return PolynomialRing(self.characteristic, tuple(names) + self.variables,
                              order or self.order)

    # ---- constructors ----

    def zero(self):
        return Polynomial(self)

    def one(self):
        return self.constant(1)

    def constant(self, c):
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, name_or_index):
        idx = name_or_index
        if isinstance(name_or_index, str):
            idx = self.variables.index(name_or_index)
        exps = [0] * self.nvars
        exps[idx] = 1
        return Polynomial(self, {tuple(exps): 1})

    def gens(self):
        return tuple(self.var(i) for i in range(self.nvars))

    def monomial(self, exps, coeff=1):
        return Polynomial(self, {tuple(exps): coeff})

    def __call__(self, terms):
        return Polynomial(self, terms)


class Polynomial:
    """immutable sparse polynomial, canonical term order fixed by the ring"""
    __slots__ = ('ring', '_terms')

    def __init__(self, ring, terms=None):
        p = ring.characteristic
        n = ring.nvars
        clean = {}
        for m, c in (terms or {}).items():
            exps = m.exponents if isinstance(m, Monomial) else tuple(m)
            if len(exps) != n:
                raise RingMismatch(f"monomial {exps} has wrong length for {ring.variables}")
            check_exponents(exps)
            if isinstance(c, PrimeFieldElement) and c.modulus != p:
                raise RingMismatch(f"coefficient in F_{c.modulus}, ring over F_{p}")
            c = (clean.get(exps, 0) + int(c)) % p
            if c:
                clean[exps] = c
            else:
                clean.pop(exps, None)
        self.ring = ring
        self._terms = _sorted_terms(ring, clean)

    @classmethod
    def from_dict(cls, ring, terms):
        """trusted constructor: coeffs already reduced and nonzero"""
        poly = cls.__new__(cls)
        poly.ring = ring
        poly._terms = _sorted_terms(ring, terms)
        return poly

    @classmethod
    def _from_sorted(cls, ring, terms):
        poly = cls.__new__(cls)
        poly.ring = ring
        poly._terms = terms
        return poly

    # ---- access ----

    def items(self):
        """(exponent tuple, int coeff) pairs, leading term first"""
        return self._terms

    def terms(self):
        p = self.ring.characteristic
        return {Monomial(e): PrimeFieldElement(c, p) for e, c in self._terms}

    def to_dict(self):
        return dict(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_monomial(self):
        return len(self._terms) == 1

    def is_constant(self):
        return not self._terms or (len(self._terms) == 1 and not any(self._terms[0][0]))

    @property
    def lead_exponents(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return self._terms[0][0]

    def leading_monomial(self):
        return Monomial(self.lead_exponents)

    def leading_coefficient(self):
        if not self._terms:
            return 0
        return self._terms[0][1]

    def leading_term(self):
        return Polynomial._from_sorted(self.ring, self._terms[:1])

    def total_degree(self):
        if not self._terms:
            return -1
        return max(sum(e) for e, _ in self._terms)

    def is_homogeneous(self):
        return len({sum(e) for e, _ in self._terms}) <= 1

    # ---- arithmetic ----

    def _operand(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring.variables}/F_{self.ring.characteristic} vs "
                                   f"{other.ring.variables}/F_{other.ring.characteristic}")
            return other
        if isinstance(other, (int, PrimeFieldElement)) and not isinstance(other, bool):
            return self.ring.constant(other)
        return None

    def __add__(self, other):
        other = self._operand(other)
        if other is None:
            return NotImplemented
        p = self.ring.characteristic
        acc = dict(self._terms)
        for e, c in other._terms:
            v = (acc.get(e, 0) + c) % p
            if v:
                acc[e] = v
            else:
                acc.pop(e, None)
        return Polynomial.from_dict(self.ring, acc)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.characteristic
        return Polynomial._from_sorted(self.ring, tuple((e, p - c) for e, c in self._terms))

    def __sub__(self, other):
        other = self._operand(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._operand(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c):
        p = self.ring.characteristic
        c = int(c) % p
        if not c:
            return self.ring.zero()
        return Polynomial._from_sorted(self.ring, tuple((e, v * c % p) for e, v in self._terms))

    def mul_term(self, exps, c=1):
        """multiply by c * x^exps; order is multiplicative so sorting survives"""
        p = self.ring.characteristic
        c = int(c) % p
        if not c:
            return self.ring.zero()
        shifted = tuple((check_exponents(tuple(a + b for a, b in zip(e, exps))), v * c % p)
                        for e, v in self._terms)
        return Polynomial._from_sorted(self.ring, shifted)

    def __mul__(self, other):
        other = self._operand(other)
        if other is None:
            return NotImplemented
        p = self.ring.characteristic
        acc = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                v = (acc.get(e, 0) + c1 * c2) % p
                if v:
                    acc[e] = v
                else:
                    acc.pop(e, None)
        for e in acc:
            check_exponents(e)
        return Polynomial.from_dict(self.ring, acc)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError(f"power must be a non-negative int, got {k!r}")
        if k and is_power_of(k, self.ring.characteristic):
            return self.frobenius(k)
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def frobenius(self, q):
        """f^q computed termwise, q a power of the characteristic"""
        if not is_power_of(q, self.ring.characteristic):
            raise InvalidFrobeniusPower(
                f"q={q} is not a power of char {self.ring.characteristic}")
        if q == 1:
            return self
        return Polynomial._from_sorted(
            self.ring, tuple((check_exponents(tuple(a * q for a in e)), c) for e, c in self._terms))

    def monic(self):
        if not self._terms:
            return self
        return self.scale(inverse_mod(self._terms[0][1], self.ring.characteristic))

    # ---- ring changes ----

    def in_order(self, order):
        ring = self.ring.with_order(order)
        return Polynomial.from_dict(ring, dict(self._terms))

    def lift(self, ring):
        """embed into a ring built with PolynomialRing.extend"""
        k = ring.nvars - self.ring.nvars
        if k < 0 or ring.variables[k:] != self.ring.variables \
                or ring.characteristic != self.ring.characteristic:
            raise RingMismatch(f"cannot lift {self.ring.variables} into {ring.variables}")
        pad = (0,) * k
        return Polynomial.from_dict(ring, {pad + e: c for e, c in self._terms})

    def restrict(self, ring):
        """inverse of lift; the extra variables must not occur"""
        k = self.ring.nvars - ring.nvars
        if k < 0 or self.ring.variables[k:] != ring.variables:
            raise RingMismatch(f"cannot restrict {self.ring.variables} to {ring.variables}")
        terms = {}
        for e, c in self._terms:
            if any(e[:k]):
                raise RingMismatch(f"term {e} uses eliminated variables")
            terms[e[k:]] = c
        return Polynomial.from_dict(ring, terms)

    # ---- comparison / display ----

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, int) and not isinstance(other, bool):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self._terms))

    def __str__(self):
        if not self._terms:
            return '0'
        return ' + '.join(format_term(self.ring.variables, e, c) for e, c in self._terms)

    def __repr__(self):
        return f"Polynomial({self})"


def format_term(names, exps, coeff):
    factors = []
    for name, a in zip(names, exps):
        if a == 1:
            factors.append(name)
        elif a:
            factors.append(f"{name}^{a}")
    if not factors:
        return str(coeff)
    if coeff == 1:
        return '*'.join(factors)
    return f"{coeff}*" + '*'.join(factors)


def _sorted_terms(ring, terms):
    key = ring.key_function()
    return tuple(sorted(terms.items(), key=lambda t: key(t[0]), reverse=True))


def is_power_of(q, p):
    if isinstance(q, bool) or not isinstance(q, int) or q < 1:
        return False
    while q % p == 0:
        q //= p
    return q == 1


def poly_multiply(f, g):
    if f.ring != g.ring:
        raise RingMismatch("cannot multiply polynomials from different rings")
    return f * g


def divide_exact(g, f):
    """quotient h with g = f*h; a nonzero remainder is an ArithmeticBug"""
    if f.ring != g.ring:
        raise RingMismatch("cannot divide polynomials from different rings")
    if f.is_zero():
        raise ArithmeticBug("exact division by the zero polynomial")
    p = g.ring.characteristic
    lead_e, lead_c = f.items()[0]
    inv = inverse_mod(lead_c, p)
    quotient = {}
    rest = g
    while rest:
        e, c = rest.items()[0]
        shift = tuple(a - b for a, b in zip(e, lead_e))
        if min(shift) < 0:
            raise ArithmeticBug(f"{f} does not divide {g}")
        coeff = c * inv % p
        quotient[shift] = coeff
        rest = rest - f.mul_term(shift, coeff)
    return Polynomial.from_dict(g.ring, quotient)
