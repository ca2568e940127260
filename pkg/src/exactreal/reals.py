"""Real numbers as increasing chains of rational intervals.

A :class:`Real` is a chain ``x_0 ⊑ x_1 ⊑ ...`` of :class:`IntervalQ` whose
widths become arbitrarily small.  Arithmetic acts level by level.  Order and
equality of reals cannot be decided, so comparisons are probes that return
``ConfirmedUpTo``, ``Refuted`` or ``Inconclusive``.

The module also converts between three presentations of the same number:
interval chains, Cauchy sequences with a modulus of convergence, and
sequences that come with a null sequence bounding their oscillation
("Markov" sequences).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable

from .completion import Chain, ConfirmedUpTo, Inconclusive, Refuted, embed, leq_probe
from .errors import BudgetExhausted, DomainError, InconsistentError
from .interval import IQ, IntervalQ
from .numerics import Q, pow2
from .predomain import BOTTOM

INF = math.inf


# -- interval arithmetic -----------------------------------------------------

def iv_add(a: IntervalQ, b: IntervalQ) -> IntervalQ:
    return IntervalQ(a.lo + b.lo, a.hi + b.hi)


def iv_neg(a: IntervalQ) -> IntervalQ:
    return IntervalQ(-a.hi, -a.lo)


def iv_sub(a: IntervalQ, b: IntervalQ) -> IntervalQ:
    return IntervalQ(a.lo - b.hi, a.hi - b.lo)


def iv_abs(a: IntervalQ) -> IntervalQ:
    if a.lo >= 0:
        return a
    if a.hi <= 0:
        return iv_neg(a)
    return IntervalQ(0, max(-a.lo, a.hi))


def iv_le(a: IntervalQ, b: IntervalQ) -> bool:
    """The endpoint order on intervals: ``a <= b`` iff ``a.lo <= b.hi``."""
    return a.lo <= b.hi


def iv_pad(a: IntervalQ, eps) -> IntervalQ:
    return IntervalQ(a.lo - eps, a.hi + eps)


# -- reals -------------------------------------------------------------------

class Real:
    """An increasing chain of rational intervals.

    ``width_hint``, when given, maps ``k`` to an index whose interval has
    width at most ``2**-k``.  It is an optional certificate of totality that
    makes :func:`refine` fast; without it refine searches up to a budget.
    """

    __slots__ = ("chain", "width_hint")

    def __init__(self, chain: Chain, width_hint: Callable[[int], int] | None = None):
        if chain.base is not IQ:
            raise DomainError("a Real must be a chain of rational intervals")
        self.chain = chain
        self.width_hint = width_hint

    @classmethod
    def from_function(cls, gen: Callable[[int], IntervalQ], width_hint=None, name=None):
        return cls(Chain(IQ, gen, name=name), width_hint)

    def __getitem__(self, n: int) -> IntervalQ:
        return self.chain[n]

    def hint(self, k: int):
        return None if self.width_hint is None else self.width_hint(k)

    def by_precision(self, budget: int | None = None) -> "Real":
        """The same real with term ``n`` of width at most ``2**-n``.

        Fast chains such as Newton iterates have enormous late terms; tools
        that walk a chain by position (probes, conversions) stay cheap on the
        reindexed chain.
        """
        return Real(Chain(IQ, lambda n: refine(self, n, budget), name=self.chain.name),
                    lambda k: max(k, 0))

    def __add__(self, other):
        return add(self, _coerce(other))

    def __radd__(self, other):
        return add(_coerce(other), self)

    def __neg__(self):
        return neg(self)

    def __sub__(self, other):
        return sub(self, _coerce(other))

    def __rsub__(self, other):
        return sub(_coerce(other), self)

    def __abs__(self):
        return real_abs(self)

    def __rmul__(self, n):
        if isinstance(n, int) and n >= 0:
            return nat_scale(n, self)
        return NotImplemented

    def __repr__(self):
        return f"Real({self.chain!r})"


def _coerce(v) -> Real:
    if isinstance(v, Real):
        return v
    if isinstance(v, IntervalQ):
        return embed_real(v)
    return exact(v)


def embed_real(a: IntervalQ) -> Real:
    """The constant chain at ``a``.  It is total only when ``a`` is a point."""
    hint = (lambda k: 0) if a.lo == a.hi else None
    return Real(embed(IQ, a), hint)


def exact(q) -> Real:
    """The rational ``q`` as a real."""
    q = Q(q)
    return embed_real(IntervalQ(q, q))


def _pointwise(op, *xs, constant=None, name=None):
    chains = [x.chain for x in xs]
    if constant is None:
        constant = all(c.constant for c in chains)
    return Chain(IQ, lambda n: op(*(c[n] for c in chains)), constant=constant, name=name)


def add(x: Real, y: Real) -> Real:
    hint = None
    if x.width_hint is not None and y.width_hint is not None:
        hint = lambda k: max(x.width_hint(k + 1), y.width_hint(k + 1))
    return Real(_pointwise(iv_add, x, y, name="sum"), hint)


def neg(x: Real) -> Real:
    return Real(_pointwise(iv_neg, x, name="negation"), x.width_hint)


def sub(x: Real, y: Real) -> Real:
    return add(x, neg(y))


def real_abs(x: Real) -> Real:
    return Real(_pointwise(iv_abs, x, name="abs"), x.width_hint)


def nat_scale(n: int, x: Real) -> Real:
    """``n * x`` by repeated doubling and addition."""
    if n < 0:
        raise DomainError("nat_scale takes a natural number")
    result = None
    power = x
    while n:
        if n & 1:
            result = power if result is None else add(result, power)
        n >>= 1
        if n:
            power = add(power, power)
    return exact(0) if result is None else result


def pad(x: Real, eps) -> Real:
    """``x ± eps`` at every level, for a fixed rational ``eps >= 0``."""
    eps = Q(eps)
    if eps < 0:
        raise DomainError("padding must be nonnegative")
    return Real(_pointwise(lambda a: iv_pad(a, eps), x, name="padded"))


def pad_null(x: Real, q: Callable[[int], Fraction]) -> Real:
    """``x_n ± q_n`` for a nonincreasing null sequence ``q``; the result is
    the same real as ``x``."""
    c = x.chain
    return Real(Chain(IQ, lambda n: iv_pad(c[n], q(n)), name="null-padded"))


def _width(v) -> Fraction | float:
    return INF if v is BOTTOM else v.hi - v.lo


def default_budget(k: int) -> int:
    return 4 * k + 64


def refine_index(x, k: int, budget: int | None = None) -> int:
    """Index of the first term of ``x`` with width at most ``2**-k``.

    The search runs up to ``width_hint(k)`` when a hint exists and up to
    ``budget`` (default ``4k + 64``) otherwise.  Widths shrink along a chain,
    so the search gallops and then bisects.
    """
    chain = x.chain if isinstance(x, Real) else x
    hint = x.hint(k) if isinstance(x, Real) else None
    target = pow2(-k)
    if hint is not None:
        bound = hint
    else:
        bound = default_budget(k) if budget is None else budget
    if chain.constant:
        bound = 0
    # gallop first: late terms of fast chains can be enormous
    prev, p, step = -1, 0, 1
    while p < bound and _width(chain[p]) > target:
        prev = p
        step *= 2
        p = min(bound, prev + step)
    if _width(chain[p]) > target:
        raise BudgetExhausted(
            f"no term up to index {bound} has width at most 2^-{k}; "
            "the real may not be total")
    lo, hi = prev + 1, p
    while lo < hi:
        mid = (lo + hi) // 2
        if _width(chain[mid]) <= target:
            hi = mid
        else:
            lo = mid + 1
    return lo


def refine(x, k: int, budget: int | None = None) -> IntervalQ:
    """The first term of ``x`` with width at most ``2**-k``; see
    :func:`refine_index` for how far it looks.  Raises
    :class:`BudgetExhausted` when nothing narrow enough turns up."""
    chain = x.chain if isinstance(x, Real) else x
    return chain[refine_index(x, k, budget)]


def nonneg_probe(x: Real, k: int, budget: int):
    """Probe ``-2**-k <= x``: confirmed when some lower endpoint reaches it,
    refuted when some upper endpoint falls below it."""
    bound = -pow2(-k)
    for n in range(budget + 1):
        v = x[n]
        if v.lo >= bound:
            return ConfirmedUpTo(n)
        if v.hi < bound:
            return Refuted(n, n)
    return Inconclusive(budget)


def le_probe(x: Real, y: Real, budget: int):
    """Probe ``x <= y`` as ``0 <= y - x`` at every precision ``k <= budget``."""
    d = sub(y, x)
    inconclusive = False
    for k in range(budget + 1):
        r = nonneg_probe(d, k, budget)
        if isinstance(r, Refuted):
            return r
        if isinstance(r, Inconclusive):
            inconclusive = True
    return Inconclusive(budget) if inconclusive else ConfirmedUpTo(budget)


def real_leq_probe(x: Real, y: Real, budget: int, lookahead: int | None = None):
    """Information order between two reals, via the chain probe."""
    return leq_probe(x.chain, y.chain, budget, lookahead)


def is_total_probe(x: Real, k: int, budget: int):
    """Confirmed when some term within ``budget`` has width at most ``2**-k``."""
    target = pow2(-k)
    for n in range(budget + 1):
        if _width(x[n]) <= target:
            return ConfirmedUpTo(n)
    return Inconclusive(budget)


# -- Cauchy and Markov presentations -----------------------------------------

class ClassicalNullSeq:
    """A nonincreasing sequence of nonnegative rationals (or ``INF``) that
    tends to zero."""

    def __init__(self, terms: Callable[[int], object]):
        self._terms = terms
        self._cache: dict[int, object] = {}

    def __call__(self, n: int):
        if n not in self._cache:
            t = self._terms(n)
            self._cache[n] = t if t == INF else Q(t)
        return self._cache[n]

    def check(self, upto: int) -> bool:
        """Nonnegative and nonincreasing on ``0 .. upto``."""
        vals = [self(n) for n in range(upto + 1)]
        return all(v >= 0 for v in vals) and all(a >= b for a, b in zip(vals, vals[1:]))


class CauchyReal:
    """A rational sequence with a modulus of convergence ``M``: from index
    ``M(k)`` on, terms differ by at most ``2**-k``."""

    def __init__(self, seq: Callable[[int], object], M: Callable[[int], int]):
        self.seq = lambda n: Q(seq(n))
        self.M = M

    def check(self, k_max: int, n_max: int) -> bool:
        for k in range(k_max + 1):
            start = self.M(k)
            terms = [self.seq(n) for n in range(start, max(start, n_max) + 1)]
            if terms and max(terms) - min(terms) > pow2(-k):
                return False
        return True


class MarkovReal:
    """A rational sequence whose oscillation after index ``N`` is bounded
    by ``modulus(N)``."""

    def __init__(self, seq: Callable[[int], object], modulus: ClassicalNullSeq):
        self.seq = lambda n: Q(seq(n))
        self.modulus = modulus

    def check(self, upto: int) -> bool:
        """Brute-force check of the bound on the prefix ``0 .. upto``."""
        terms = [self.seq(n) for n in range(upto + 1)]
        for N in range(upto + 1):
            c = self.modulus(N)
            if c == INF:
                continue
            tail = terms[N:]
            if max(tail) - min(tail) > c:
                return False
        return True


def waiting_function(M: Callable[[int], int]) -> Callable[[int], int]:
    """``W`` with ``W(n) = 0`` up to ``M(0)`` that then steps up exactly when
    ``M(W(n-1) + 1) <= n``.  It is nondecreasing, unbounded, and satisfies
    ``M(W(n)) <= n`` from ``M(0)`` on."""
    start = M(0)
    values: list[int] = []

    def W(n: int) -> int:
        if n < 0:
            raise DomainError("W is defined on natural numbers")
        if n <= start:
            return 0
        if not values:
            values.append(0)  # W(start)
        while start + len(values) - 1 < n:
            m = start + len(values)
            prev = values[-1]
            values.append(prev + 1 if M(prev + 1) <= m else prev)
        return values[n - start]

    return W


def cauchy_to_markov(c: CauchyReal) -> MarkovReal:
    """Same sequence, with the oscillation bound derived from ``M``: below
    ``M(0)`` it is one more than the spread of the remaining terms up to
    ``M(0)``, and from ``M(0)`` on it is ``2**-W(n)``."""
    W = waiting_function(c.M)
    m0 = c.M(0)
    head = [c.seq(n) for n in range(m0 + 1)]

    def modulus(n):
        if n < m0:
            tail = head[n:]
            return 1 + (max(tail) - min(tail))
        return pow2(-W(n))

    return MarkovReal(c.seq, ClassicalNullSeq(modulus))


def total_to_markov(x: Real) -> MarkovReal:
    """Midpoints as the sequence and widths as the oscillation bound."""
    return MarkovReal(lambda n: x[n].midpoint, ClassicalNullSeq(lambda n: x[n].length))


def markov_to_total(q: MarkovReal) -> Real:
    """The chain of running intersections of ``q_i ± c_i``.

    Terms with an infinite bound carry no information and are skipped.  An
    empty intersection means the bound was not valid and raises
    :class:`InconsistentError`.
    """
    levels: list[IntervalQ | None] = []

    def level(n):
        while len(levels) <= n:
            i = len(levels)
            prev = levels[-1] if levels else None
            c = q.modulus(i)
            if c == INF:
                levels.append(prev)
                continue
            cur = IntervalQ(q.seq(i) - c, q.seq(i) + c)
            if prev is not None:
                lo, hi = max(prev.lo, cur.lo), min(prev.hi, cur.hi)
                if lo > hi:
                    raise InconsistentError(
                        f"oscillation bound violated at level {i}", [prev, cur], i)
                cur = IntervalQ(lo, hi)
            levels.append(cur)
        if levels[n] is None:
            raise DomainError(f"no finite bound among the first {n + 1} terms")
        return levels[n]

    return Real(Chain(IQ, level, name="markov"))


__all__ = [
    "INF", "Real", "embed_real", "exact", "add", "neg", "sub", "real_abs",
    "nat_scale", "pad", "pad_null", "refine", "refine_index", "default_budget",
    "nonneg_probe", "le_probe", "real_leq_probe", "is_total_probe",
    "iv_add", "iv_neg", "iv_sub", "iv_abs", "iv_le", "iv_pad",
    "ClassicalNullSeq", "CauchyReal", "MarkovReal", "waiting_function",
    "cauchy_to_markov", "total_to_markov", "markov_to_total",
]
