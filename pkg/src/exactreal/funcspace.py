"""Step functions between predomain bases, and extension of real functions.

A single step ``b ↘ c`` sends ``x`` to ``c`` when ``b`` is way below ``x``
and to bottom otherwise.  A step function is a finite join of single steps.
Joins are only meaningful when overlapping guards carry overlapping values,
which :func:`validate_step` checks.  The order between step functions is
decided by :func:`step_leq` via separated sets in the domain.

:func:`extend_nondiscontinuous` turns a function on rationals, together with
an output tolerance for every input interval, into a chain of step functions
whose limit extends it to all reals.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable

from .completion import Chain, Refuted, leq_probe
from .errors import DomainError, InconsistentError, MonotonicityError, UnsupportedOperation
from .interval import IQ, IntervalBase, IntervalQ
from .predomain import BOTTOM, LiftedBase, PredomainBase, pair, unpair

SIZE_CAP = 12


@dataclass(frozen=True)
class SingleStep:
    guard: object
    value: object

    def __str__(self):
        return f"{self.guard}↘{self.value}"


class StepFunction:
    """A validated finite join of single steps.  Build one with
    :func:`validate_step` or :meth:`StepSpace.make`."""

    __slots__ = ("steps", "space")

    def __init__(self, steps, space: "StepSpace"):
        self.steps = tuple(steps)
        self.space = space

    def __call__(self, x):
        return eval_step(self, x)

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __eq__(self, other):
        return isinstance(other, StepFunction) and self.steps == other.steps

    def __hash__(self):
        return hash(self.steps)

    def __repr__(self):
        inner = " ⊔ ".join(map(str, self.steps)) or "⊥"
        return f"StepFunction({inner})"


class StepSpace(PredomainBase):
    """Step functions from ``dom`` to ``cod``, ordered pointwise.

    ``cod`` must be pointed so that a step which does not fire has a value;
    an unpointed codomain is lifted automatically.
    """

    def __init__(self, dom: PredomainBase, cod: PredomainBase, cap: int = SIZE_CAP):
        if not cod.pointed:
            cod = LiftedBase(cod)
        self.dom = dom
        self.cod = cod
        self.cap = cap
        self.name = f"({dom.name} → {cod.name})"
        self.pointed = True

    def make(self, steps) -> StepFunction:
        return validate_step(steps, self)

    def leq(self, s, t):
        return step_leq(s, t)

    def chain_leq(self, s, t):
        # monotonicity of long chains is established by construction; the
        # exact test is exponential, so it runs only below the size cap
        if len(s) > self.cap or len(t) > self.cap:
            return True
        return step_leq(s, t)

    def bottom(self):
        return StepFunction((), self)

    def approx(self, s, n):
        return approx_step(s, n)

    def enumerate(self, i):
        steps = []
        while i:
            head, i = unpair(i - 1)
            a, b = unpair(head)
            steps.append(SingleStep(self.dom.enumerate(a), self.cod.enumerate(b)))
        try:
            return validate_step(steps, self)
        except InconsistentError:
            return self.bottom()

    def index_of(self, s):
        i = 0
        for st in reversed(s.steps):
            i = 1 + pair(pair(self.dom.index_of(st.guard), self.cod.index_of(st.value)), i)
        return i

    def consistent(self, xs):
        try:
            self.sup(xs)
        except InconsistentError:
            return False
        return True

    def sup(self, xs):
        steps = [st for s in xs for st in s.steps]
        return validate_step(steps, self)


def eval_single(s: SingleStep, x, space: StepSpace):
    if space.dom.way_below(s.guard, x):
        return s.value
    return space.cod.bottom()


def eval_step(s: StepFunction, x):
    """Join of the values of the steps whose guard is way below ``x``."""
    space = s.space
    wb = space.dom.way_below
    fired = [st.value for st in s.steps if wb(st.guard, x)]
    if not fired:
        return space.cod.bottom()
    try:
        return space.cod.sup(fired)
    except InconsistentError as e:
        raise InconsistentError(f"step function {s} is not valid at {x}", e.items) from e


# -- validation --------------------------------------------------------------

def _is_interval_space(space: StepSpace) -> bool:
    cod = space.cod.inner if isinstance(space.cod, LiftedBase) else space.cod
    return isinstance(space.dom, IntervalBase) and isinstance(cod, IntervalBase)


def _interval_conflict(steps):
    """A pair ``(i, j)`` of steps whose guards meet but whose values do not,
    or ``None``.  Runs in ``O(n log n)``.

    Looks for ``value_i.hi < value_j.lo`` with overlapping guards, over all
    ordered pairs.  Queries are taken in order of ``guard.hi`` while steps
    are inserted in order of ``guard.lo``; a Fenwick tree over ``guard.hi``
    keeps the least ``value.hi`` among inserted steps whose guard ends at or
    beyond a point.
    """
    items = [(i, st.guard, st.value) for i, st in enumerate(steps) if st.value is not BOTTOM]
    if len(items) < 2:
        return None
    his = sorted({g.hi for _, g, _ in items})
    size = len(his)
    # suffix-min Fenwick: slot k covers coordinate size - k
    tree = [None] * (size + 1)

    def update(pos, key):
        k = size - pos
        while k <= size:
            if tree[k] is None or key < tree[k]:
                tree[k] = key
            k += k & -k

    def query(pos):
        k = size - pos
        best = None
        while k > 0:
            if tree[k] is not None and (best is None or tree[k] < best):
                best = tree[k]
            k -= k & -k
        return best

    by_lo = sorted(items, key=lambda t: t[1].lo)
    by_hi = sorted(items, key=lambda t: t[1].hi)
    p = 0
    for j, g, v in by_hi:
        while p < len(by_lo) and by_lo[p][1].lo <= g.hi:
            i2, g2, v2 = by_lo[p]
            update(bisect.bisect_left(his, g2.hi), (v2.hi, i2))
            p += 1
        best = query(bisect.bisect_left(his, g.lo))
        if best is not None and best[0] < v.lo:
            return (min(best[1], j), max(best[1], j))
    return None


def _first_conflict(steps, space: StepSpace):
    if _is_interval_space(space):
        hit = _interval_conflict(steps)
        return None if hit is None else list(hit)
    dom, cod = space.dom, space.cod
    n = len(steps)
    if dom.pairwise_consistency and cod.pairwise_consistency:
        for i, j in combinations(range(n), 2):
            if dom.consistent([steps[i].guard, steps[j].guard]) and \
                    not cod.consistent([steps[i].value, steps[j].value]):
                return [i, j]
        return None
    if n > space.cap:
        raise UnsupportedOperation(
            f"validating {n} steps exceeds the cap of {space.cap} for {space.name}")
    for r in range(2, n + 1):
        for J in combinations(range(n), r):
            if dom.consistent([steps[j].guard for j in J]) and \
                    not cod.consistent([steps[j].value for j in J]):
                return list(J)
    return None


def validate_step(steps, space: StepSpace) -> StepFunction:
    """Check that every family of steps with consistent guards has
    consistent values, and return the step function.

    Raises :class:`InconsistentError` whose ``items`` lists the offending
    step indices.
    """
    steps = [st if isinstance(st, SingleStep) else SingleStep(*st) for st in steps]
    J = _first_conflict(steps, space)
    if J is not None:
        shown = ", ".join(str(steps[j]) for j in J)
        raise InconsistentError(f"guards are consistent but values are not: {shown}", J)
    return StepFunction(steps, space)


# -- order ---------------------------------------------------------------------

def _single_below(alpha, beta, t: StepFunction) -> bool:
    space = t.space
    dom, cod = space.dom, space.cod
    if beta is BOTTOM or (cod.pointed and cod.leq(beta, cod.bottom())):
        return True
    # only steps whose guard is consistent with alpha can join a separated A
    cand = [i for i, st in enumerate(t.steps) if dom.consistent([alpha, st.guard])]
    if len(cand) > space.cap:
        raise UnsupportedOperation(
            f"deciding the order against {len(cand)} relevant steps exceeds the cap of {space.cap}")
    others = [st.guard for i, st in enumerate(t.steps) if i not in set(cand)]
    for r in range(len(cand) + 1):
        for I0 in combinations(cand, r):
            inside = set(I0)
            A = [alpha] + [t.steps[i].guard for i in I0]
            D = others + [t.steps[i].guard for i in cand if i not in inside]
            ok, _ = dom.separated(A, D)
            if not ok:
                continue
            vals = [t.steps[i].value for i in I0]
            top = cod.sup(vals) if vals else cod.bottom()
            if not cod.leq(beta, top):
                return False
    return True


def step_leq(s: StepFunction, t: StepFunction) -> bool:
    """Decide ``s ⊑ t`` pointwise.

    For each single ``α ↘ β`` of ``s`` and each set ``I`` of steps of ``t``
    such that some input is way above ``α`` and the guards in ``I`` but way
    above no other guard, ``β`` must lie below the join of the values in
    ``I``.
    """
    return all(_single_below(st.guard, st.value, t) for st in s.steps)


def step_equal(s: StepFunction, t: StepFunction) -> bool:
    return step_leq(s, t) and step_leq(t, s)


def approx_step(s: StepFunction, n: int) -> StepFunction:
    """``⊔_{i<=n} b_i ↘ approx(s(b_i), n)`` over the domain's enumeration."""
    space = s.space
    steps = []
    for i in range(n + 1):
        b = space.dom.enumerate(i)
        steps.append(SingleStep(b, space.cod.approx(eval_step(s, b), n)))
    return validate_step(steps, space)


# -- chains of step functions ----------------------------------------------------

class FunctionChain(Chain):
    """An increasing chain of step functions."""

    def __init__(self, space: StepSpace, gen, check=True, name=None):
        super().__init__(space, gen, check=check, name=name)
        self.space = space

    def _check_neighbours(self, n, value):
        keys = self._keys
        pos = bisect.bisect_left(keys, n)
        leq = self.space.chain_leq
        if pos > 0 and not leq(self._memo[keys[pos - 1]], value):
            raise MonotonicityError(f"step function {keys[pos - 1]} is not below {n}", keys[pos - 1], n)
        if pos < len(keys) and not leq(value, self._memo[keys[pos]]):
            raise MonotonicityError(f"step function {n} is not below {keys[pos]}", n, keys[pos])


def lift_chain(x: Chain, base: PredomainBase | None = None) -> Chain:
    """View a chain in the lifted base (no-op when it already is)."""
    if isinstance(x.base, LiftedBase):
        return x
    base = base or LiftedBase(x.base)
    return Chain(base, x.__getitem__, constant=x.constant, check=False, name=x.name)


def from_base_function(f: Callable[[object], Chain], space: StepSpace,
                       sample: int = 6, probe_budget: int = 6) -> FunctionChain:
    """``s_n = ⊔_{i<=n} b_i ↘ f(b_i)_n`` for a monotone ``f`` from base
    elements to chains.

    Monotonicity of ``f`` is spot-checked on the first ``sample`` enumerated
    elements: whenever ``b_i ⊑ b_j`` the probe ``f(b_i) ⊑ f(b_j)`` must not
    be refuted.
    """
    dom = space.dom
    cache: dict[int, Chain] = {}

    def fb(i):
        if i not in cache:
            cache[i] = f(dom.enumerate(i))
        return cache[i]

    for i in range(sample):
        for j in range(sample):
            if i != j and dom.leq(dom.enumerate(i), dom.enumerate(j)):
                a, b = lift_chain(fb(i), space.cod), lift_chain(fb(j), space.cod)
                r = leq_probe(a, b, probe_budget)
                if isinstance(r, Refuted):
                    raise MonotonicityError(
                        f"f is not monotone: f({dom.enumerate(i)}) is not below f({dom.enumerate(j)})", i, j)

    def level(n):
        return validate_step([SingleStep(dom.enumerate(i), fb(i)[n]) for i in range(n + 1)], space)

    return FunctionChain(space, level, name="from base function")


def apply(F: FunctionChain, x: Chain) -> Chain:
    """The chain ``k ↦ F_k(x_k)`` in the codomain."""
    space = F.space
    return Chain(space.cod, lambda k: eval_step(F[k], x[k]), name="apply")


# -- extension of real functions -------------------------------------------------

@dataclass(frozen=True)
class NondiscontinuityModulus:
    """An output tolerance ``omega(α) > 0`` for each input interval ``α``
    of positive length."""

    omega: Callable[[IntervalQ], Fraction]

    def __call__(self, a: IntervalQ) -> Fraction:
        return self.omega(a)

    def check(self, f, xs, ys) -> bool:
        """Sample check: for each interval ``a`` in ``xs`` and rational ``y``
        in ``ys`` with ``|m(a) - y| <= ℓ(a)``, ``|f(m(a)) - f(y)|`` must stay
        within ``omega(a)``.  ``f`` maps rationals to rationals here."""
        for a in xs:
            m = a.midpoint
            for y in ys:
                if abs(m - y) <= a.length and abs(f(m) - f(y)) > self.omega(a):
                    return False
        return True


def _as_chain(v) -> Chain:
    return v.chain if hasattr(v, "chain") else v


def _guards(limit: int, cache: list):
    i = cache[-1][0] + 1 if cache else 0
    while len(cache) <= limit:
        a = IQ.enumerate(i)
        if a.lo != a.hi:
            cache.append((i, a))
        i += 1


def extend_nondiscontinuous(f: Callable[[Fraction], object], omega,
                            space: StepSpace | None = None) -> FunctionChain:
    """``g_n = ⊔_{i<=n} α_i ↘ f(m(α_i))_n ± ω(α_i)``.

    ``α_0, α_1, ...`` are the enumerated intervals of positive length and
    ``m(α)`` is the midpoint.  ``f`` maps a rational to a real (or an
    interval chain).  Each level is validated; a failure means ``omega`` is
    too small for ``f`` and raises :class:`InconsistentError` carrying the
    level.  When every ``f(m(α))`` is an exact constant, consecutive levels
    are prefixes of one list and the largest prefix known to be valid is
    remembered.
    """
    if space is None:
        space = StepSpace(IQ, IQ)
    if not isinstance(omega, NondiscontinuityModulus):
        omega = NondiscontinuityModulus(omega)
    guards: list = []
    info: list = []  # per guard: (alpha, chain of f at midpoint, omega)
    valid_upto = [-1]

    def ensure(n):
        _guards(n, guards)
        while len(info) <= n:
            _, a = guards[len(info)]
            w = Fraction(omega(a))
            if w <= 0:
                raise DomainError(f"omega must be positive, got {w} at {a}")
            info.append((a, _as_chain(f(a.midpoint)), w))

    def value(k, n):
        a, c, w = info[k]
        v = c[n]
        return SingleStep(a, IntervalQ(v.lo - w, v.hi + w))

    def level(n):
        ensure(n)
        steps = [value(k, n) for k in range(n + 1)]
        constant = all(info[k][1].constant for k in range(n + 1))
        if constant and n <= valid_upto[0]:
            return StepFunction(steps, space)
        try:
            s = validate_step(steps, space)
        except InconsistentError as e:
            raise InconsistentError(f"modulus too small: level {n} is not a valid step function. {e}",
                                    e.items, n) from e
        if constant:
            valid_upto[0] = max(valid_upto[0], n)
        return s

    return FunctionChain(space, level, check=False, name="extension")


def step_pointwise_leq(s: StepFunction, t: StepFunction, grid) -> bool:
    """``s(x) ⊑ t(x)`` for every ``x`` in ``grid``: a one-sided sample check."""
    cod = s.space.cod
    return all(cod.leq(eval_step(s, x), eval_step(t, x)) for x in grid)


__all__ = [
    "SingleStep", "StepFunction", "StepSpace", "SIZE_CAP", "eval_single",
    "eval_step", "validate_step", "step_leq", "step_equal", "approx_step",
    "FunctionChain", "lift_chain", "from_base_function", "apply",
    "NondiscontinuityModulus", "extend_nondiscontinuous", "step_pointwise_leq",
]
