"""Randomized law checks behind ``exactreal selftest``.

Every suite draws plain data (tuples of rationals and integers) from a
seeded generator and checks one family of laws on it.  A failing case is
shrunk greedily before it is reported, so the dump is small.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import interval as ivm
from .completion import (ConfirmedUpTo, Chain, basic_open_member, embed, leq_probe,
                         sup_finite, sup_increasing, CONTINUOUS_CONSISTENCY)
from .funcspace import StepSpace, SingleStep, eval_step, step_leq, validate_step
from .interval import IQ, IntervalQ
from .newton import sqrt
from .predomain import (FlatBase, LiftedBase, ProductBase, SeqBase, check_base_laws)
from .reals import iv_abs, iv_add, iv_le, iv_neg, waiting_function
from .errors import InconsistentError


def _iv(p) -> IntervalQ:
    a, b = p
    return IntervalQ(min(a, b), max(a, b))


def _rat(rng, den=16, span=4):
    d = rng.randint(1, den)
    return Fraction(rng.randint(-span * d, span * d), d)


def _pair(rng, den=16, span=4):
    return (_rat(rng, den, span), _rat(rng, den, span))


# -- suites ------------------------------------------------------------------

def gen_ring(rng):
    return tuple(_pair(rng) for _ in range(3))


def check_ring(case):
    a, b, c = map(_iv, case)
    if iv_add(a, b) != iv_add(b, a):
        return False
    if iv_add(iv_add(a, b), c) != iv_add(a, iv_add(b, c)):
        return False
    if iv_neg(iv_neg(a)) != a or iv_abs(iv_neg(a)) != iv_abs(a):
        return False
    zero = IntervalQ(0, 0)
    if iv_add(a, zero) != a:
        return False
    lhs = iv_le(iv_abs(a), b)
    rhs = iv_le(iv_neg(b), a) and iv_le(a, b) and iv_le(zero, b)
    return lhs == rhs


def gen_waybelow(rng):
    a = _pair(rng, den=32)
    if rng.random() < 0.5:
        lo, hi = sorted(a)
        b = (lo + Fraction(rng.randint(0, 4), 32), hi - Fraction(rng.randint(0, 4), 32))
        if b[0] > b[1]:
            b = (b[0], b[0])
        return a, b
    return a, _pair(rng, den=32)


def check_waybelow(case):
    a, b = map(_iv, case)
    # independent oracle: a is way below b iff b can be widened by some
    # small dyadic amount and still sit inside a
    oracle = any(ivm.leq(a, ivm.extend(b, Fraction(1, 2 ** e))) for e in range(1, 21))
    return IQ.way_below(a, b) == oracle


def gen_base_laws(rng):
    return tuple(_pair(rng, den=4, span=2) for _ in range(3)), \
        tuple(tuple(rng.randint(0, 1) for _ in range(rng.randint(0, 4))) for _ in range(3))


_SEQ = SeqBase((0, 1))
_LIFT = LiftedBase(IQ)
_PROD = ProductBase(IQ, _SEQ)
_FLAT = FlatBase(lambda i: i, lambda x: x)


def check_base_laws_case(case):
    ivs, words = case
    a, b, c = map(_iv, ivs)
    for base, triple in ((IQ, (a, b, c)), (_SEQ, words), (_LIFT, (a, b, c)),
                         (_PROD, tuple(zip((a, b, c), words))),
                         (_FLAT, tuple(len(w) for w in words))):
        if check_base_laws(base, [triple]) is not None:
            return False
    return True


def gen_separated(rng):
    A = tuple(_pair(rng, den=4) for _ in range(rng.randint(1, 4)))
    D = tuple(_pair(rng, den=4) for _ in range(rng.randint(0, 4)))
    return A, D


def check_separated(case):
    A = [_iv(p) for p in case[0]]
    D = [_iv(p) for p in case[1]]
    if not A:
        return True
    ok, w = ivm.separated(A, D)
    if ok:
        return all(ivm.way_below(a, w) for a in A) and not any(ivm.way_below(d, w) for d in D)
    lo, hi = max(a.lo for a in A), min(a.hi for a in A)
    return lo >= hi or any(d.lo <= lo and hi <= d.hi for d in D)


def _random_steps(rng, k):
    space = StepSpace(IQ, IQ)
    for _ in range(50):
        steps = []
        for _ in range(rng.randint(1, k)):
            g = _pair(rng, den=2, span=2)
            v = _pair(rng, den=2, span=2)
            steps.append((g, v))
        try:
            validate_step([SingleStep(_iv(g), _iv(v)) for g, v in steps], space)
            return tuple(steps)
        except InconsistentError:
            continue
    return ((((0, 0), (0, 0))),)


def gen_step(rng):
    return _random_steps(rng, 3), _random_steps(rng, 3)


GRID = [IntervalQ(Fraction(i, 4), Fraction(i + w, 4)) for i in range(-10, 6) for w in range(4)]


def check_step(case):
    space = StepSpace(IQ, IQ)
    try:
        s, t = (validate_step([SingleStep(_iv(g), _iv(v)) for g, v in steps], space)
                for steps in case)
    except InconsistentError:
        return True  # shrinking may break validity; such cases are out of scope
    if not step_leq(s, s) or not step_leq(t, t):
        return False
    if step_leq(s, t):
        cod = space.cod
        return all(cod.leq(eval_step(s, x), eval_step(t, x)) for x in GRID)
    return True


def gen_completion(rng):
    c = _rat(rng, den=8, span=2)
    w = Fraction(rng.randint(1, 8), 4)
    return c, w, rng.randint(1, 3)


def _chain(c, w, rate):
    return Chain(IQ, lambda n: IntervalQ(c - w / 2 ** (rate * n), c + w / 2 ** (rate * n)))


def check_completion(case):
    c, w, rate = case
    if w <= 0 or rate <= 0:
        return True
    x = _chain(c, w, rate)
    own = sup_increasing(lambda n: embed(IQ, x[n]), CONTINUOUS_CONSISTENCY)
    for r in (leq_probe(x, own, 12), leq_probe(own, x, 12)):
        if not isinstance(r, ConfirmedUpTo):
            return False
    both = sup_finite([x, _chain(c, w * 2, rate)])
    if any(both[n] != x[n] for n in range(8)):
        return False
    outer = IntervalQ(c - 2 * w, c + 2 * w)
    return isinstance(basic_open_member(outer, x, 4), ConfirmedUpTo)


def gen_waiting(rng):
    return tuple(rng.randint(0, 3) for _ in range(40))


def check_waiting(case):
    steps = list(case)

    def M(k):
        return sum(steps[:k + 1]) if k < len(steps) else sum(steps) + (k - len(steps) + 1)

    W = waiting_function(M)
    vals = [W(n) for n in range(121)]
    if W(M(0)) != 0 or any(a > b for a, b in zip(vals, vals[1:])):
        return False
    return all(M(vals[n]) <= n for n in range(M(0), 121))


def gen_sqrt(rng):
    return Fraction(rng.randint(1, 400), rng.randint(1, 40))


def check_sqrt(q):
    if q <= 0:
        return True
    x = sqrt(q)
    prev = None
    for n in range(7):
        v = x[n]
        if not (v.lo * v.lo <= q <= v.hi * v.hi):
            return False
        if prev is not None and v.length > prev.length / 2:
            return False
        prev = v
    return True


@dataclass
class Suite:
    name: str
    gen: Callable
    check: Callable


SUITES = [
    Suite("interval-ring", gen_ring, check_ring),
    Suite("way-below-oracle", gen_waybelow, check_waybelow),
    Suite("base-laws", gen_base_laws, check_base_laws_case),
    Suite("separated", gen_separated, check_separated),
    Suite("step-order", gen_step, check_step),
    Suite("completion-probes", gen_completion, check_completion),
    Suite("waiting-function", gen_waiting, check_waiting),
    Suite("sqrt-enclosure", gen_sqrt, check_sqrt),
]


# -- shrinking ---------------------------------------------------------------

def _fails(check, case) -> bool:
    try:
        return not check(case)
    except Exception:
        return True


def _simpler(v):
    if isinstance(v, bool):
        return
    if isinstance(v, int):
        if v != 0:
            yield 0
            if abs(v) > 1:
                yield v // 2
        return
    if isinstance(v, Fraction):
        if v != 0:
            yield Fraction(0)
        if v.denominator != 1:
            yield Fraction(int(v))
            yield Fraction(round(v))
            for d in (2, 4):
                if v.denominator > d:
                    yield v.limit_denominator(d)
        elif abs(v) > 1:
            yield Fraction(int(v / 2))
        return
    if isinstance(v, tuple):
        for i in range(len(v)):
            if len(v) > 1:
                yield v[:i] + v[i + 1:]
        for i, item in enumerate(v):
            for s in _simpler(item):
                yield v[:i] + (s,) + v[i + 1:]


def shrink(check, case, limit=500):
    """Greedily replace parts of ``case`` by simpler values while it still fails."""
    tries = 0
    improved = True
    while improved and tries < limit:
        improved = False
        for cand in _simpler(case):
            tries += 1
            if _fails(check, cand):
                case = cand
                improved = True
                break
            if tries >= limit:
                break
    return case


def _show(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, tuple):
        return "(" + ", ".join(_show(x) for x in v) + ("," if len(v) == 1 else "") + ")"
    return repr(v)


def run(cases: int, seed: int, out) -> int:
    """Run every suite; return the number of failing suites."""
    print(f"selftest seed={seed} cases={cases}", file=out)
    if cases <= 0:
        print("0 suites run", file=out)
        return 0
    failures = 0
    for suite in SUITES:
        rng = random.Random(f"{seed}:{suite.name}")
        passed = 0
        bad = None
        for _ in range(cases):
            case = suite.gen(rng)
            if _fails(suite.check, case):
                bad = case
                break
            passed += 1
        if bad is None:
            print(f"  {suite.name:<20} {passed}/{cases} passed", file=out)
            continue
        failures += 1
        small = shrink(suite.check, bad)
        print(f"  {suite.name:<20} FAILED after {passed} passing cases", file=out)
        print(f"    counterexample: {_show(bad)}", file=out)
        print(f"    minimized:      {_show(small)}", file=out)
    ran = len(SUITES)
    if failures:
        print(f"{failures} of {ran} suites failed", file=out)
    else:
        print(f"{ran} suites run, all passed", file=out)
    return failures
