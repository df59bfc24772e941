"""
stirling numbers of the second kind and the combinatorial helpers around them
"""
import threading
from math import comb, factorial

import config
from errors import ArithmeticBug, InvalidParameters


def binomial(n, k):
    """C(n, k), zero outside 0 <= k <= n (including negative n)"""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def falling_factorial(x, k):
    """x (x-1) ... (x-k+1)"""
    out = 1
    for i in range(k):
        out *= x - i
    return out


def _check_nk(n, k):
    if isinstance(n, bool) or isinstance(k, bool) or not isinstance(n, int) or not isinstance(k, int):
        raise InvalidParameters(f"n, k must be ints, got {n!r}, {k!r}")
    if n < 0 or k < 0:
        raise InvalidParameters(f"n, k must be non-negative, got {n}, {k}")


class StirlingTable:
    """
    memoized triangle S(n, k) via S(n,k) = k S(n-1,k) + S(n-1,k-1)
    grown on demand, safe to share across threads
    """

    def __init__(self, n_max=None):
        self.n_max = config.STIRLING_N_MAX if n_max is None else n_max
        self._rows = [[1]]
        self._lock = threading.Lock()

    def _grow(self, n):
        with self._lock:
            while len(self._rows) <= n:
                prev = self._rows[-1]
                m = len(self._rows)
                row = [0] * (m + 1)
                for k in range(1, m + 1):
                    left = prev[k] if k < m else 0
                    row[k] = k * left + prev[k - 1]
                self._rows.append(row)

    def value(self, n, k):
        _check_nk(n, k)
        if k > n:
            return 0
        if n > self.n_max:
            return stirling2_explicit(n, k)
        if n >= len(self._rows):
            self._grow(n)
        return self._rows[n][k]

    def row(self, n):
        return [self.value(n, k) for k in range(n + 1)]


_TABLE = StirlingTable()


def stirling2(n, k):
    """number of partitions of an n-set into k non-empty blocks"""
    return _TABLE.value(n, k)


def stirling2_explicit(n, k):
    """(1/k!) sum_j (-1)^j C(k,j) (k-j)^n, with the division checked"""
    _check_nk(n, k)
    total = sum((-1) ** j * comb(k, j) * (k - j) ** n for j in range(k + 1))
    q, r = divmod(total, factorial(k))
    if r:
        raise ArithmeticBug(f"explicit sum for S({n},{k}) not divisible by {k}!")
    return q


def set_partitions(n, k):
    """
    partitions of {0..n-1} into exactly k blocks, as restricted growth strings:
    element i carries the index of its block, blocks numbered by first element
    """
    _check_nk(n, k)
    labels = []

    def grow(used):
        remaining = n - len(labels)
        if remaining < k - used:
            return
        if not remaining:
            yield tuple(labels)
            return
        for label in range(min(used + 1, k)):
            labels.append(label)
            yield from grow(max(used, label + 1))
            labels.pop()

    yield from grow(0)


def stirling2_bruteforce(n, k):
    return sum(1 for _ in set_partitions(n, k))


def bell_numbers(n):
    """first n+1 bell numbers from the bell triangle"""
    bells = [1]
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
        bells.append(row[0])
    return bells


def falling_factorial_identity_check(n, x):
    """x^n == sum_k S(n,k) x(x-1)...(x-k+1)"""
    _check_nk(n, 0)
    lhs = x ** n
    rhs = sum(stirling2(n, k) * falling_factorial(x, k) for k in range(n + 1))
    return lhs == rhs


def surjection_count(n, k):
    """k! S(n, k): onto maps from an n-set to a k-set"""
    return factorial(k) * stirling2(n, k)
