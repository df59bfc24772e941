"""
prime field arithmetic F_p
"""
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

from config import MAX_CHARACTERISTIC
from errors import DivisionByZero, InvalidCharacteristic, RingMismatch


@lru_cache(maxsize=256)
def is_prime(n):
    """trial division up to sqrt(n)"""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def check_characteristic(p):
    if isinstance(p, bool) or not isinstance(p, int):
        raise InvalidCharacteristic(f"char must be an int, got {p!r}")
    if p >= MAX_CHARACTERISTIC or not is_prime(p):
        raise InvalidCharacteristic(f"char must be a prime below 2^31, got {p}")
    return p


def inverse_mod(a, p):
    a %= p
    if a == 0:
        raise DivisionByZero(f"0 has no inverse mod {p}")
    return pow(a, p - 2, p)


@dataclass(frozen=True)
class PrimeFieldElement:
    """element of F_p, value kept in [0, p)"""
    value: int
    modulus: int

    def __post_init__(self):
        check_characteristic(self.modulus)
        object.__setattr__(self, 'value', self.value % self.modulus)

    def _coerce(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.modulus != self.modulus:
                raise RingMismatch(f"F_{self.modulus} vs F_{other.modulus}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def _make(self, value):
        return PrimeFieldElement(value % self.modulus, self.modulus)

    def __add__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else self._make(self.value + v)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else self._make(self.value - v)

    def __rsub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else self._make(v - self.value)

    def __mul__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else self._make(self.value * v)

    __rmul__ = __mul__

    def __neg__(self):
        return self._make(-self.value)

    def inverse(self):
        return self._make(inverse_mod(self.value, self.modulus))

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return self._make(self.value * inverse_mod(v, self.modulus))

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return self._make(pow(self.value, k, self.modulus))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __str__(self):
        return str(self.value)


def field_arith(p, op, a, b=None):
    """
    apply op in F_p to canonical ints a, b
    ops: add, sub, mul, neg, inv, div
    """
    check_characteristic(p)
    a %= p
    if op == 'neg':
        return (-a) % p
    if op == 'inv':
        return inverse_mod(a, p)
    if b is None:
        raise ValueError(f"op {op} needs two operands")
    b %= p
    if op == 'add':
        return (a + b) % p
    if op == 'sub':
        return (a - b) % p
    if op == 'mul':
        return (a * b) % p
    if op == 'div':
        return (a * inverse_mod(b, p)) % p
    raise ValueError(f"unknown field op {op}")
