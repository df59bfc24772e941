"""
independent length oracle for graded quotients

for homogeneous generators g_j the degree-n piece of k[x]/I has dimension
#monomials(n) - rank of span{m * g_j : deg m = n - deg g_j}; the length is the
sum over n until a piece vanishes. ranks are taken over F_p with numpy
"""
import logging
from itertools import combinations_with_replacement

import numpy as np

from errors import NotArtinian

log = logging.getLogger(__name__)


def monomials_of_degree(nvars, n):
    """exponent tuples of total degree n, in a fixed order"""
    result = []
    for combo in combinations_with_replacement(range(nvars), n):
        exps = [0] * nvars
        for i in combo:
            exps[i] += 1
        result.append(tuple(exps))
    return result


def rank_mod_p(matrix, p):
    """row echelon rank of an int64 matrix over F_p (p < 2^31)"""
    M = np.array(matrix, dtype=np.int64) % p
    rows, cols = M.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(M[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            M[[rank, piv]] = M[[piv, rank]]
        inv = pow(int(M[rank, c]), p - 2, p)
        M[rank] = (M[rank] * inv) % p
        below = rank + 1 + np.nonzero(M[rank + 1:, c])[0]
        if below.size:
            M[below] = (M[below] - np.outer(M[below, c], M[rank]) % p) % p
        rank += 1
    return rank


def graded_piece_dimension(generators, nvars, p, n):
    basis = monomials_of_degree(nvars, n)
    if not basis:
        return 0
    index = {m: i for i, m in enumerate(basis)}
    rows = []
    for g in generators:
        d = g.total_degree()
        if d > n:
            continue
        for m in monomials_of_degree(nvars, n - d):
            row = np.zeros(len(basis), dtype=np.int64)
            for e, c in g.items():
                row[index[tuple(a + b for a, b in zip(e, m))]] = c
            rows.append(row)
    if not rows:
        return len(basis)
    return len(basis) - rank_mod_p(np.vstack(rows), p)


def graded_quotient_length(ideal, relations=(), max_degree=None):
    """
    length of k[x]/(I + relations) for homogeneous generators
    raises NotArtinian if no graded piece vanishes up to max_degree
    """
    gens = list(ideal.generators) + [g for g in relations if g]
    if not all(g.is_homogeneous() for g in gens):
        raise ValueError("linear algebra oracle needs homogeneous generators")
    ring = ideal.ring
    nvars, p = ring.nvars, ring.characteristic
    if max_degree is None:
        # a regularity bound for m-primary ideals generated in degree <= D
        top = max((g.total_degree() for g in gens), default=0)
        max_degree = max(1, nvars * top)
    total = 0
    for n in range(max_degree + 2):
        dim = graded_piece_dimension(gens, nvars, p, n)
        log.debug("degree %d piece has dimension %d", n, dim)
        if dim == 0:
            return total
        total += dim
    raise NotArtinian(f"quotient does not vanish up to degree {max_degree + 1}")

