"""
groebner bases over F_p and the ideal operations built on them:
frobenius bracket powers, colon ideals, intersections, artinian lengths
"""
import heapq
import logging
from dataclasses import dataclass

import config
from errors import BudgetExceeded, InvalidFrobeniusPower, NotArtinian, RingMismatch
from finite_field import inverse_mod
from polynomial import MonomialOrder, Polynomial, divide_exact, is_power_of

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class IdealSpec:
    """ideal given by a finite list of nonzero generators in one ring"""
    ring: object
    generators: tuple = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        for g in gens:
            if g.ring != self.ring:
                raise RingMismatch(f"generator {g} not in ring {self.ring.variables}")
        object.__setattr__(self, 'generators', tuple(g for g in gens if g))

    def with_generators(self, extra):
        return IdealSpec(self.ring, self.generators + tuple(coerce(g, self.ring) for g in extra))

    def in_order(self, order):
        ring = self.ring.with_order(order)
        return IdealSpec(ring, tuple(g.in_order(order) for g in self.generators))

    def is_monomial(self):
        return all(g.is_monomial() for g in self.generators)

    def is_homogeneous(self):
        return all(g.is_homogeneous() for g in self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __str__(self):
        return '(' + ', '.join(str(g) for g in self.generators) + ')'


def coerce(f, ring):
    """move f into ring when only the monomial order differs"""
    if f.ring == ring:
        return f
    if f.ring.with_order(ring.order) == ring:
        return f.in_order(ring.order)
    raise RingMismatch(f"{f} lives over {f.ring.variables}, expected {ring.variables}")


@dataclass(frozen=True)
class GroebnerBasis:
    """monic basis sorted by leading monomial, smallest first"""
    ring: object
    elements: tuple
    reduced: bool = True

    @property
    def order(self):
        return self.ring.order

    @property
    def leading_monomials(self):
        return tuple(g.lead_exponents for g in self.elements)

    def ideal(self):
        return IdealSpec(self.ring, self.elements)

    def is_unit(self):
        return any(not any(m) for m in self.leading_monomials)

    def standard_monomials(self):
        return StandardMonomialSet(self.leading_monomials, self.ring.nvars)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


class _Budget:
    def __init__(self, steps=None, pairs=None):
        self.step_limit = config.REDUCTION_BUDGET if steps is None else steps
        self.pair_limit = config.PAIR_BUDGET if pairs is None else pairs
        self.steps = 0
        self.pairs = 0

    def spend_step(self):
        self.steps += 1
        if self.steps > self.step_limit:
            raise BudgetExceeded(f"reduction budget of {self.step_limit} steps exhausted",
                                 spent=self.steps, budget=self.step_limit)

    def spend_pair(self):
        self.pairs += 1
        if self.pairs > self.pair_limit:
            raise BudgetExceeded(f"pair budget of {self.pair_limit} s-pairs exhausted",
                                 spent=self.pairs, budget=self.pair_limit)


class _Reducer:
    """full reduction of dict polynomials by a list of monic (lead, tail) pairs"""

    def __init__(self, ring, budget):
        self.p = ring.characteristic
        self.key = ring.key_function()
        self.budget = budget
        self.leads = []
        self.tails = []

    def add(self, terms):
        """append monic polynomial given as a dict; returns its index"""
        lead = max(terms, key=self.key)
        inv = inverse_mod(terms[lead], self.p)
        tail = tuple((e, c * inv % self.p) for e, c in terms.items() if e != lead)
        self.leads.append(lead)
        self.tails.append(tail)
        return len(self.leads) - 1

    def divisor(self, m, skip=None):
        for idx, lead in enumerate(self.leads):
            if idx != skip and all(a >= b for a, b in zip(m, lead)):
                return idx
        return None

    def reduce(self, terms, skip=None):
        """remainder of terms (dict, consumed) modulo the basis"""
        p, key = self.p, self.key
        heap = [(_neg(key(e)), e) for e in terms]
        heapq.heapify(heap)
        remainder = {}
        while heap:
            _, m = heapq.heappop(heap)
            c = terms.pop(m, 0)
            if not c:
                continue
            idx = self.divisor(m, skip)
            if idx is None:
                remainder[m] = c
                continue
            self.budget.spend_step()
            shift = tuple(a - b for a, b in zip(m, self.leads[idx]))
            for e, gc in self.tails[idx]:
                ne = tuple(a + b for a, b in zip(e, shift))
                old = terms.get(ne)
                v = ((old or 0) - c * gc) % p
                if v:
                    if old is None:
                        heapq.heappush(heap, (_neg(key(ne)), ne))
                    terms[ne] = v
                elif old is not None:
                    del terms[ne]
        return remainder

    def spoly(self, i, j):
        li, lj = self.leads[i], self.leads[j]
        lcm = tuple(max(a, b) for a, b in zip(li, lj))
        si = tuple(a - b for a, b in zip(lcm, li))
        sj = tuple(a - b for a, b in zip(lcm, lj))
        acc = {}
        for e, c in self.tails[i]:
            acc[tuple(a + b for a, b in zip(e, si))] = c
        for e, c in self.tails[j]:
            ne = tuple(a + b for a, b in zip(e, sj))
            v = (acc.get(ne, 0) - c) % self.p
            if v:
                acc[ne] = v
            else:
                acc.pop(ne, None)
        return acc


def _neg(k):
    return tuple(-a for a in k)


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _disjoint(a, b):
    return all(not (x and y) for x, y in zip(a, b))


class _PairQueue:
    """normal selection: smallest lcm degree first, ties by the monomial order"""

    def __init__(self, key):
        self.key = key
        self.live = set()
        self.heap = []

    def add(self, i, j, lcm):
        pair = (i, j)
        if pair not in self.live:
            self.live.add(pair)
            heapq.heappush(self.heap, (sum(lcm), self.key(lcm), i, j))

    def discard(self, pairs):
        self.live -= pairs

    def pop(self):
        while self.heap:
            *_, i, j = heapq.heappop(self.heap)
            if (i, j) in self.live:
                self.live.remove((i, j))
                return i, j
        return None

    def __bool__(self):
        return bool(self.live)


def _update(reducer, queue, new):
    """gebauer-moeller pair update after basis element `new` was appended"""
    leads = reducer.leads
    lf = leads[new]
    drop = set()
    for i, j in queue.live:
        L = _lcm(leads[i], leads[j])
        if _divides(lf, L) and L != _lcm(leads[i], lf) and L != _lcm(leads[j], lf):
            drop.add((i, j))
    queue.discard(drop)

    by_lcm = {}
    for i in range(new):
        by_lcm.setdefault(_lcm(leads[i], lf), []).append(i)
    minimal = []
    for L in sorted(by_lcm, key=reducer.key):
        if all(not _divides(M, L) for M in minimal):
            minimal.append(L)
    for L in minimal:
        # product criterion: skip when some lead is coprime to lf
        if not any(_disjoint(leads[i], lf) for i in by_lcm[L]):
            queue.add(min(by_lcm[L]), new, L)


def buchberger(ideal, order=None, budget=None, pair_budget=None):
    """
    reduced groebner basis of ideal (IdealSpec) under order
    budget caps reduction steps, raises BudgetExceeded
    """
    if order is not None and order != ideal.ring.order:
        ideal = ideal.in_order(order)
    ring = ideal.ring
    spend = _Budget(budget, pair_budget)
    reducer = _Reducer(ring, spend)
    queue = _PairQueue(reducer.key)
    key = reducer.key

    for f in sorted(ideal.generators, key=lambda g: key(g.lead_exponents)):
        r = reducer.reduce(f.to_dict())
        if r:
            _update(reducer, queue, reducer.add(r))

    while queue:
        i, j = queue.pop()
        spend.spend_pair()
        r = reducer.reduce(reducer.spoly(i, j))
        if r:
            _update(reducer, queue, reducer.add(r))
            if len(reducer.leads) % 50 == 0:
                log.debug("basis size %d, %d pairs queued, %d steps",
                          len(reducer.leads), len(queue.live), spend.steps)

    elements = _interreduce(ring, reducer, spend)
    log.debug("groebner basis of %d elements (%d pairs, %d steps)",
              len(elements), spend.pairs, spend.steps)
    return GroebnerBasis(ring, elements, reduced=True)


def _interreduce(ring, reducer, spend):
    key = reducer.key
    order = sorted(range(len(reducer.leads)), key=lambda i: key(reducer.leads[i]))
    minimal = []
    for i in order:
        if all(not _divides(reducer.leads[j], reducer.leads[i]) for j in minimal):
            minimal.append(i)

    final = _Reducer(ring, spend)
    for i in minimal:
        final.leads.append(reducer.leads[i])
        final.tails.append(reducer.tails[i])
    elements = []
    for idx, lead in enumerate(final.leads):
        tail = final.reduce(dict(final.tails[idx]), skip=idx)
        tail[lead] = 1
        elements.append(Polynomial.from_dict(ring, tail))
    return tuple(elements)


def normal_form(f, basis, budget=None):
    """remainder of f on division by a groebner basis"""
    f = coerce(f, basis.ring)
    reducer = _Reducer(basis.ring, _Budget(budget))
    for g in basis.elements:
        reducer.add(g.to_dict())
    return Polynomial.from_dict(basis.ring, reducer.reduce(f.to_dict()))


def is_groebner_basis(polys, budget=None):
    """every s-pair reduces to zero"""
    polys = [g for g in polys if g]
    if not polys:
        return True
    reducer = _Reducer(polys[0].ring, _Budget(budget))
    for g in polys:
        reducer.add(g.to_dict())
    n = len(polys)
    return all(not reducer.reduce(reducer.spoly(i, j))
               for i in range(n) for j in range(i + 1, n))


def ideal_contains(ideal, f, budget=None):
    return normal_form(f, buchberger(ideal, budget=budget), budget).is_zero()


# ---- frobenius powers ----

def bracket_power(ideal, q):
    """I^[q]: generated by the q-th powers of the generators"""
    p = ideal.ring.characteristic
    if not is_power_of(q, p):
        raise InvalidFrobeniusPower(f"q={q} is not a power of char {p}")
    return IdealSpec(ideal.ring, tuple(g.frobenius(q) for g in ideal.generators))


# ---- standard monomials ----

def _minimal_monomials(monomials):
    mons = sorted(set(monomials), key=lambda m: (sum(m), m))
    kept = []
    for m in mons:
        if all(not _divides(k, m) for k in kept):
            kept.append(m)
    return tuple(kept)


@dataclass(frozen=True)
class StandardMonomialSet:
    """monomials outside a monomial ideal given by its generators"""
    leading: tuple
    nvars: int

    def __post_init__(self):
        object.__setattr__(self, 'leading', _minimal_monomials(self.leading))

    def is_unit(self):
        return any(not any(m) for m in self.leading)

    def pure_power_bounds(self):
        bounds = [None] * self.nvars
        for m in self.leading:
            support = [i for i, a in enumerate(m) if a]
            if len(support) == 1:
                i = support[0]
                bounds[i] = m[i] if bounds[i] is None else min(bounds[i], m[i])
        return bounds

    def is_artinian(self):
        return self.is_unit() or None not in self.pure_power_bounds()

    def require_artinian(self):
        bounds = self.pure_power_bounds()
        missing = [i for i, b in enumerate(bounds) if b is None]
        if missing:
            raise NotArtinian(f"no pure power of variable(s) {missing} among leading monomials")
        return bounds

    def count(self):
        """number of standard monomials"""
        if self.is_unit():
            return 0
        if self.nvars == 0:
            return 1
        bounds = self.require_artinian()
        return _count_staircase(list(self.leading), 0, self.nvars, bounds)

    def monomials(self):
        """yield standard monomials as exponent tuples"""
        if self.is_unit():
            return
        if self.nvars == 0:
            yield ()
            return
        bounds = self.require_artinian()
        yield from _walk_staircase(list(self.leading), (), self.nvars, bounds)


def _count_staircase(active, i, n, bounds):
    if i == n - 1:
        return min(m[i] for m in active)
    total = 0
    for a in range(bounds[i]):
        sub = [m for m in active if m[i] <= a]
        if any(not any(m[i + 1:]) for m in sub):
            break
        total += _count_staircase(sub, i + 1, n, bounds)
    return total


def _walk_staircase(active, prefix, n, bounds):
    i = len(prefix)
    if i == n - 1:
        for b in range(min(m[i] for m in active)):
            yield prefix + (b,)
        return
    for a in range(bounds[i]):
        sub = [m for m in active if m[i] <= a]
        if any(not any(m[i + 1:]) for m in sub):
            break
        yield from _walk_staircase(sub, prefix + (a,), n, bounds)


def leading_ideal(ideal, budget=None):
    """leading monomials of the ideal; monomial ideals skip buchberger"""
    if ideal.is_monomial():
        return tuple(g.lead_exponents for g in ideal.generators)
    return buchberger(ideal, budget=budget).leading_monomials


def artinian_length(ideal, relations=(), budget=None):
    """length of k[x]/(I + relations), counted as standard monomials"""
    full = ideal.with_generators(relations)
    lead = leading_ideal(full, budget)
    return StandardMonomialSet(lead, full.ring.nvars).count()


# ---- intersections and colons ----

def _aux_name(ring):
    name = '_t'
    while name in ring.variables:
        name += '_'
    return name


def intersect_ideals(I, J, budget=None):
    """I ∩ J by eliminating t from t*I + (1-t)*J under lex"""
    if I.ring != J.ring:
        J = IdealSpec(I.ring, tuple(coerce(g, I.ring) for g in J.generators))
    ring = I.ring
    if not I.generators or not J.generators:
        return IdealSpec(ring)
    if I.is_monomial() and J.is_monomial():
        lcms = {_lcm(f.lead_exponents, g.lead_exponents) for f in I for g in J}
        return IdealSpec(ring, tuple(ring.monomial(m) for m in _minimal_monomials(lcms)))

    ext = ring.extend((_aux_name(ring),), MonomialOrder('lex'))
    t = ext.var(0)
    one_minus_t = ext.one() - t
    gens = [t * f.lift(ext) for f in I] + [one_minus_t * g.lift(ext) for g in J]
    gb = buchberger(IdealSpec(ext, gens), budget=budget)
    kept = tuple(g.restrict(ring) for g in gb.elements if g.lead_exponents[0] == 0)
    return IdealSpec(ring, kept)


def colon(I, f, budget=None):
    """I : f = (I ∩ (f)) / f"""
    f = coerce(f, I.ring)
    if f.is_zero():
        return IdealSpec(I.ring, (I.ring.one(),))
    if I.is_monomial() and f.is_monomial():
        fe = f.lead_exponents
        gens = {tuple(max(a - b, 0) for a, b in zip(g.lead_exponents, fe)) for g in I}
        return IdealSpec(I.ring, tuple(I.ring.monomial(m) for m in _minimal_monomials(gens)))
    inter = intersect_ideals(I, IdealSpec(I.ring, (f,)), budget)
    return IdealSpec(I.ring, tuple(divide_exact(g, f) for g in inter.generators))


def colon_maximal(ideal, relations=(), budget=None):
    """
    (I + relations) : m with m the ideal of all variables,
    computed as the intersection of the colons by each variable
    """
    base = ideal.with_generators(relations)
    StandardMonomialSet(leading_ideal(base, budget), base.ring.nvars).require_artinian()
    result = None
    for x in base.ring.gens():
        part = colon(base, x, budget)
        result = part if result is None else intersect_ideals(result, part, budget)
    if result is None:
        return base
    if result.is_monomial():
        return result
    return buchberger(result, budget=budget).ideal()


def socle_dimension(ideal, relations=(), budget=None):
    """dim of (I : m)/I, computed as a difference of lengths"""
    wide = colon_maximal(ideal, relations, budget)
    return artinian_length(ideal, relations, budget) - artinian_length(wide, relations, budget)
