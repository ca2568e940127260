"""Increasing chains over a predomain base, and the order between them.

An element of the completion is an increasing sequence ``x_0 ⊑ x_1 ⊑ ...``
of base elements.  Two chains are compared by asking whether everything way
below some ``x_n`` is eventually way below some ``y_m``.  That question has a
"for all, exists" shape, so no finite computation settles it.  The probes
here return one of three answers:

``ConfirmedUpTo(depth)``
    every instance checked within the budget succeeded.  This is evidence,
    not proof.
``Refuted(n, m)``
    a failure was found at ``x_n`` against ``y_m`` that no later ``y``
    can repair.  This is a proof.
``Inconclusive(budget)``
    some check failed but the failure might still be repaired later.
"""

from __future__ import annotations

import bisect
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .errors import DomainError, InconsistentError, MonotonicityError
from .predomain import PredomainBase


@dataclass(frozen=True)
class ConfirmedUpTo:
    depth: int


@dataclass(frozen=True)
class Refuted:
    n: int
    m: int


@dataclass(frozen=True)
class Inconclusive:
    budget: int


ProbeResult = (ConfirmedUpTo, Refuted, Inconclusive)


class Chain:
    """A lazily evaluated increasing sequence over ``base``.

    ``gen(n)`` must be deterministic.  Computed terms are memoized, and each
    new term is compared with its nearest computed neighbours, so a
    decreasing step raises :class:`MonotonicityError` as soon as it is seen.
    ``constant=True`` records that every term equals ``gen(0)``, which lets
    probes treat a failure against the chain as final.
    """

    def __init__(self, base: PredomainBase, gen: Callable[[int], object],
                 constant: bool = False, check: bool = True, name: str | None = None):
        self.base = base
        self.gen = gen
        self.constant = constant
        self.check = check
        self.name = name
        self._memo: dict[int, object] = {}
        self._keys: list[int] = []
        self._lock = threading.RLock()

    def __getitem__(self, n: int):
        if n < 0:
            raise IndexError("chain indices are natural numbers")
        if self.constant:
            n = 0
        memo = self._memo
        if n in memo:
            return memo[n]
        value = self.gen(n)
        with self._lock:
            if n in memo:
                return memo[n]
            if self.check:
                self._check_neighbours(n, value)
            memo[n] = value
            bisect.insort(self._keys, n)
        return value

    def _check_neighbours(self, n, value):
        keys = self._keys
        pos = bisect.bisect_left(keys, n)
        leq = self.base.leq
        if pos > 0:
            i = keys[pos - 1]
            if not leq(self._memo[i], value):
                raise MonotonicityError(
                    f"chain term {i} = {self._memo[i]} is not below term {n} = {value}", i, n)
        if pos < len(keys):
            j = keys[pos]
            if not leq(value, self._memo[j]):
                raise MonotonicityError(
                    f"chain term {n} = {value} is not below term {j} = {self._memo[j]}", n, j)

    def prefix(self, n: int) -> list:
        """Terms ``0 .. n`` inclusive."""
        return [self[i] for i in range(n + 1)]

    def computed(self) -> dict:
        return dict(self._memo)

    def __repr__(self):
        label = self.name or ("constant" if self.constant else "chain")
        return f"<Chain {label} over {self.base.name}>"


def embed(base: PredomainBase, b) -> Chain:
    """The constant chain at ``b``."""
    return Chain(base, lambda n: b, constant=True, name=f"embed {b}")


def _first_excluded(base, p, y: Chain, hi: int) -> int:
    # exclusion is permanent along y, so the first excluded index is found
    # by bisection
    lo = 0
    while lo < hi:
        mid = (lo + hi) // 2
        if base.excludes(p, y[mid]):
            hi = mid
        else:
            lo = mid + 1
    return lo


def leq_probe(x: Chain, y: Chain, budget: int, lookahead: int | None = None):
    """Bounded evidence for ``x ⊑ y``.

    For each ``n <= budget`` the probe element is ``approx(x_n, budget)``; it
    must be way below some ``y_m`` with ``m <= lookahead`` (default
    ``2 * budget``).  As ``y`` increases it is enough to test ``y_lookahead``.
    A failure is reported as :class:`Refuted` when it is permanent: either the
    base's exclusion rule fires or ``y`` is constant.
    """
    if budget < 0:
        raise DomainError("budget must be a natural number")
    base = x.base
    if lookahead is None:
        lookahead = 2 * budget
    lookahead = max(lookahead, budget)
    top = y[lookahead]
    failed = False
    for n in range(budget + 1):
        p = base.approx(x[n], budget)
        if base.way_below(p, top):
            continue
        if y.constant:
            return Refuted(n, 0)
        if base.excludes(p, top):
            return Refuted(n, _first_excluded(base, p, y, lookahead))
        failed = True
    return Inconclusive(budget) if failed else ConfirmedUpTo(budget)


def probe_equal(x: Chain, y: Chain, budget: int, lookahead: int | None = None):
    """Both directions of :func:`leq_probe`; the first non-confirmation wins."""
    first = leq_probe(x, y, budget, lookahead)
    if not isinstance(first, ConfirmedUpTo):
        return first
    return leq_probe(y, x, budget, lookahead)


def basic_open_member(b, x: Chain, budget: int):
    """Semi-decide whether ``b`` is way below the limit of ``x``.

    Confirmation is a genuine proof here: some ``x_n`` already has ``b`` way
    below it.  The reported depth is that first ``n``.
    """
    base = x.base
    for n in range(budget + 1):
        xn = x[n]
        if base.way_below(b, xn):
            return ConfirmedUpTo(n)
        if x.constant or base.excludes(b, xn):
            return Refuted(n, n)
    return Inconclusive(budget)


GENERAL = "general"
CONTINUOUS_CONSISTENCY = "continuous_consistency"


def sup_increasing(chains: Callable[[int], Chain], mode: str = GENERAL,
                   base: PredomainBase | None = None) -> Chain:
    """Supremum of an increasing sequence of chains ``c_0 ⊑ c_1 ⊑ ...``.

    ``general`` takes, at level ``k``, the supremum of the approximants
    ``approx(c_{n,m}, k)`` for ``n, m <= k``.  ``continuous_consistency``
    takes the supremum of ``c_{n,k}`` for ``n <= k``, which is valid when
    consistency of the base is continuous (intervals qualify).
    """
    if mode not in (GENERAL, CONTINUOUS_CONSISTENCY):
        raise DomainError(f"unknown mode {mode!r}")
    family = lru_cache(maxsize=None)(chains)
    if base is None:
        base = family(0).base

    def level(k):
        if mode == GENERAL:
            items = [base.approx(family(n)[m], k)
                     for n in range(k + 1) for m in range(k + 1)]
        else:
            items = [family(n)[k] for n in range(k + 1)]
        if not base.consistent(items):
            raise InconsistentError(f"level {k} of the supremum is inconsistent", items, k)
        return base.sup(items)

    return Chain(base, level, name=f"sup ({mode})")


def sup_finite(xs) -> Chain:
    """Pointwise supremum of finitely many chains."""
    xs = list(xs)
    if not xs:
        raise DomainError("sup_finite needs at least one chain")
    if len(xs) == 1:
        return xs[0]
    base = xs[0].base

    def level(n):
        items = [x[n] for x in xs]
        if not base.consistent(items):
            raise InconsistentError(f"chains are inconsistent at level {n}", items, n)
        return base.sup(items)

    return Chain(base, level, constant=all(x.constant for x in xs), name="pointwise sup")


__all__ = [
    "Chain", "ConfirmedUpTo", "Refuted", "Inconclusive", "ProbeResult",
    "embed", "leq_probe", "probe_equal", "basic_open_member",
    "sup_increasing", "sup_finite", "GENERAL", "CONTINUOUS_CONSISTENCY",
]
