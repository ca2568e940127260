"""Closed rational intervals ordered by reverse inclusion.

Smaller intervals carry more information, so ``[0, 4] ⊑ [1, 3]``.  An
interval is way below another when it contains it strictly on both sides.
"""

from __future__ import annotations

import re
import math
from fractions import Fraction
from math import isqrt

from .errors import DomainError, InconsistentError
from .numerics import Q, format_rational, parse_rational, pow2
from .predomain import PredomainBase, pair, unpair, unzigzag, zigzag


class IntervalQ:
    """The interval ``[lo, hi]`` with exact rational endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = Q(lo)
        hi = lo if hi is None else Q(hi)
        if lo > hi:
            raise DomainError(f"empty interval: {format_rational(lo)} > {format_rational(hi)}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):
        raise AttributeError("IntervalQ is immutable")

    def __eq__(self, other):
        if not isinstance(other, IntervalQ):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __iter__(self):
        yield self.lo
        yield self.hi

    def __reduce__(self):
        return (IntervalQ, (self.lo, self.hi))

    def __repr__(self):
        return f"IntervalQ({format_rational(self.lo)}, {format_rational(self.hi)})"

    def __str__(self):
        return f"[{format_rational(self.lo)}, {format_rational(self.hi)}]"

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def is_singleton(self) -> bool:
        return self.lo == self.hi


def iv(lo, hi=None) -> IntervalQ:
    """Shorthand constructor: ``iv(0, 1)``, ``iv("1/3", "1/2")``, ``iv(2)``."""
    return IntervalQ(lo, hi)


def leq(a: IntervalQ, b: IntervalQ) -> bool:
    return a.lo <= b.lo and b.hi <= a.hi


def way_below(a: IntervalQ, b: IntervalQ) -> bool:
    return a.lo < b.lo and b.hi < a.hi


def extend(a: IntervalQ, delta) -> IntervalQ:
    """``[a.lo - delta, a.hi + delta]``."""
    delta = Q(delta)
    if delta < 0:
        raise DomainError(f"cannot extend by a negative amount {format_rational(delta)}")
    return IntervalQ(a.lo - delta, a.hi + delta)


def length(a: IntervalQ) -> Fraction:
    return a.hi - a.lo


def consistent(xs) -> bool:
    xs = list(xs)
    if not xs:
        raise DomainError("consistency of an empty family is not defined here")
    return max(x.lo for x in xs) <= min(x.hi for x in xs)


def sup(xs) -> IntervalQ:
    xs = list(xs)
    if not xs:
        raise DomainError("supremum of an empty family of intervals")
    lo, hi = max(x.lo for x in xs), min(x.hi for x in xs)
    if lo > hi:
        raise InconsistentError(f"intervals {', '.join(map(str, xs))} do not overlap", xs)
    return IntervalQ(lo, hi)


def interpolate(b: IntervalQ, c: IntervalQ) -> IntervalQ:
    """Midpoints of the two margins between ``b`` and ``c``."""
    return IntervalQ((b.lo + c.lo) / 2, (c.hi + b.hi) / 2)


def separated(A, D):
    """Decide whether some interval is way above all of ``A`` but way above
    none of ``D``.

    Returns ``(True, witness)`` or ``(False, None)``.  This holds exactly when
    ``A`` has a supremum ``[a, b]`` with ``a < b`` and no member of ``D`` lies
    below ``[a, b]``.
    """
    A, D = list(A), list(D)
    if not A:
        raise DomainError("separatedness needs a nonempty A")
    if not consistent(A):
        return False, None
    top = sup(A)
    a, b = top.lo, top.hi
    if a == b or any(leq(d, top) for d in D):
        return False, None
    C = [d.lo for d in D if a < d.lo < b]
    E = [d.hi for d in D if a < d.hi < b]
    if C and E:
        c, d = min(C), max(E)
        eps, dlt = min(c, d), max(c, d)
    elif C:
        eps = dlt = min(C)
    elif E:
        eps = dlt = max(E)
    else:
        m = (a + b) / 2
        return True, IntervalQ(m, m)
    return True, IntervalQ((eps + a) / 2, (dlt + b) / 2)


# -- enumeration -------------------------------------------------------------
#
# Indices that are perfect squares r*r run through every interval via a
# pairing of (numerator, denominator, width numerator, width denominator).
# All other indices list the dyadic intervals [lo, lo + 2^(1-s)] with lo a
# multiple of 2^-s.  They come in blocks (s, u) holding the 2^s such
# intervals with lo in [u, u+1).  Round k holds the blocks with
# s + h(u) = k, where h(u) = max(u, -u-1) is the distance of [u, u+1) from
# [-1, 1), so narrow intervals near the origin appear early and every real
# is eventually reached at every scale.

def _generic(r: int) -> IntervalQ:
    x, y = unpair(r)
    a, b = unpair(x)
    c, d = unpair(y)
    lo = Fraction(zigzag(a), b + 1)
    return IntervalQ(lo, lo + Fraction(c, d + 1))


def _generic_index(v: IntervalQ) -> int:
    lo, w = v.lo, v.hi - v.lo
    x = pair(unzigzag(lo.numerator), lo.denominator - 1)
    y = pair(w.numerator, w.denominator - 1)
    return pair(x, y)


def _round_offset(k: int) -> int:
    # round k has 2 * (2^(k+1) - 1) intervals
    return (1 << (k + 2)) - 4 - 2 * k


def _dyadic(e: int) -> IntervalQ:
    k = 0
    while _round_offset(k + 1) <= e:
        k += 1
    rem = e - _round_offset(k)
    h = 0
    while rem >= 1 << (k - h + 1):
        rem -= 1 << (k - h + 1)
        h += 1
    s = k - h
    u = h
    if rem >= 1 << s:
        rem -= 1 << s
        u = -h - 1
    lo = u + Fraction(rem, 1 << s)
    return IntervalQ(lo, lo + Fraction(2, 1 << s))


def _dyadic_index(v: IntervalQ):
    w = v.hi - v.lo
    if w <= 0 or w > 2 or w.numerator != 1 and w != 2:
        return None
    den = w.denominator
    if den & (den - 1):
        return None
    s = 0 if w == 2 else den.bit_length()  # w = 2^(1-s)
    j = v.lo * (1 << s)
    if j.denominator != 1:
        return None
    u = math.floor(v.lo)
    h = max(u, -u - 1)
    k = s + h
    e = _round_offset(k) + (1 << (k + 2)) - (1 << (s + 2))
    if u < 0:
        e += 1 << s
    return e + int(j) - (u << s)


def _nonsquare(e: int) -> int:
    """The ``e``-th natural that is not a perfect square."""
    r = (1 + isqrt(1 + 4 * e)) // 2
    while r * r - r > e:
        r -= 1
    while (r + 1) * (r + 1) - (r + 1) <= e:
        r += 1
    return e + r + 1


def enumerate_iq(i: int) -> IntervalQ:
    if i < 0:
        raise DomainError("enumeration index must be a natural number")
    r = isqrt(i)
    if r * r == i:
        return _generic(r)
    return _dyadic(i - r - 1)


def index_of_iq(v: IntervalQ) -> int:
    e = _dyadic_index(v)
    if e is not None:
        return _nonsquare(e)
    r = _generic_index(v)
    return r * r


class IntervalBase(PredomainBase):
    """The base of closed rational intervals."""

    name = "IQ"
    pointed = False
    pairwise_consistency = True

    def leq(self, b, c):
        return leq(b, c)

    def way_below(self, b, c):
        return way_below(b, c)

    def enumerate(self, i):
        return enumerate_iq(i)

    def index_of(self, b):
        return index_of_iq(b)

    def approx(self, b, i):
        return IntervalQ(b.lo - pow2(-i), b.hi + pow2(-i))

    def consistent(self, xs):
        return consistent(xs)

    def sup(self, xs):
        return sup(xs)

    def excludes(self, b, c):
        # anything above c lies inside c; b's open interior must meet it
        return b.lo == b.hi or b.hi <= c.lo or b.lo >= c.hi

    def interpolate(self, b, c):
        return interpolate(b, c)

    def separated(self, A, D):
        return separated(A, D)


IQ = IntervalBase()


_IV_TEXT = re.compile(r"^\s*\[\s*([^,\]]+?)\s*,\s*([^,\]]+?)\s*\]\s*$")


def format_interval(v: IntervalQ) -> str:
    return str(v)


def parse_interval(text: str) -> IntervalQ:
    """Parse ``"[p, q]"`` where ``p`` and ``q`` are rational literals."""
    m = _IV_TEXT.match(text)
    if not m:
        raise ValueError(f"not an interval literal: {text!r}")
    return IntervalQ(parse_rational(m.group(1)), parse_rational(m.group(2)))


__all__ = [
    "IntervalQ", "iv", "leq", "way_below", "extend", "length", "consistent",
    "sup", "interpolate", "separated", "enumerate_iq", "index_of_iq",
    "IntervalBase", "IQ", "format_interval", "parse_interval",
]
