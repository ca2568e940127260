"""Certified square roots.

For a positive rational ``q`` the Newton step ``u -> (u + q/u) / 2``,
started from ``1``, gives upper bounds ``u_n`` decreasing to ``sqrt(q)``,
and ``q / u_n`` are matching lower bounds.  The enclosures
``[q/u_n, u_n]`` form a real whose width at least halves at every step.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .completion import Chain, ConfirmedUpTo, Refuted
from .errors import CertificateError, DomainError
from .interval import IQ, IntervalQ
from .numerics import Q, format_rational, pow2, to_decimal_string
from .reals import Real, refine_index


def _log2_ceil(w: Fraction) -> int:
    """Least ``e`` with ``w <= 2**e``, for ``w > 0``."""
    e = w.numerator.bit_length() - w.denominator.bit_length()
    while pow2(e) < w:
        e += 1
    while pow2(e - 1) >= w:
        e -= 1
    return e


class _Iterates:
    """Upper Newton iterates, computed once and shared."""

    def __init__(self, q: Fraction):
        self.q = q
        self.upper = [(1 + q) / 2]

    def __getitem__(self, n: int) -> IntervalQ:
        up = self.upper
        while len(up) <= n:
            u = up[-1]
            up.append((u + self.q / u) / 2)
        u = up[n]
        return IntervalQ(self.q / u, u)


def sqrt(q) -> Real:
    """``sqrt(q)`` for a rational ``q > 0`` as the chain of Newton enclosures.

    The width hint uses only the halving bound, so it may point further
    along the chain than needed; :func:`refine` still returns the first
    narrow enough term.
    """
    q = Q(q)
    if q <= 0:
        raise DomainError(f"sqrt needs a positive rational, got {format_rational(q)}")
    its = _Iterates(q)
    w0 = its[0].length

    def hint(k):
        if w0 == 0:
            return 0
        return max(0, _log2_ceil(w0) + k)

    return Real(Chain(IQ, its.__getitem__, name=f"sqrt({format_rational(q)})"), hint)


@dataclass(frozen=True)
class SqrtTableRow:
    iteration: int
    lower: Fraction
    upper: Fraction
    width: Fraction
    modulus_bound: Fraction

    @property
    def width_decimal(self) -> str:
        return to_decimal_string(self.width, 2, scientific=True)

    @property
    def modulus_decimal(self) -> str:
        return to_decimal_string(self.modulus_bound, 2, scientific=True)

    def as_strings(self) -> dict:
        return {
            "iteration": self.iteration,
            "lower": format_rational(self.lower),
            "upper": format_rational(self.upper),
            "width": format_rational(self.width),
            "width_decimal": self.width_decimal,
            "modulus": format_rational(self.modulus_bound),
            "modulus_decimal": self.modulus_decimal,
        }


def sqrt_table(q, iters: int) -> list[SqrtTableRow]:
    """Rows ``1 .. iters``: the enclosure, its width, and the bound
    ``w_0 / 2**n`` that a Cauchy-style analysis guarantees instead."""
    x = sqrt(q)
    w0 = x[0].length
    rows = []
    for n in range(1, iters + 1):
        v = x[n]
        rows.append(SqrtTableRow(n, v.lo, v.hi, v.length, w0 / (1 << n)))
    return rows


# -- square roots of arbitrary positive reals --------------------------------

def positivity_certificate(x: Real, budget: int):
    """First index ``n <= budget`` with ``x_n.lo > 0``.

    Returns ``ConfirmedUpTo(n)``, ``Refuted(n, n)`` when some ``x_n.hi <= 0``
    (then ``x`` cannot be positive), or ``None`` when the budget runs out.
    """
    for n in range(budget + 1):
        v = x[n]
        if v.lo > 0:
            return ConfirmedUpTo(n)
        if v.hi <= 0:
            return Refuted(n, n)
    return None


def _isqrt_floor(a: Fraction, p: int) -> Fraction:
    # largest multiple of 2^-p that is at most sqrt(a)
    m = (a.numerator << (2 * p)) // a.denominator
    return Fraction(isqrt(m), 1 << p)


def _isqrt_ceil(b: Fraction, p: int) -> Fraction:
    m = -((-b.numerator << (2 * p)) // b.denominator)
    r = isqrt(m)
    if r * r < m:
        r += 1
    return Fraction(r, 1 << p)


def sqrt_real(x: Real, budget: int = 64) -> Real:
    """Square root of a real certified positive within ``budget`` terms.

    Level ``n`` takes the first term of ``x`` narrower than ``2**-(n+2)``,
    encloses the square roots of its endpoints to ``n + 2`` binary places and
    intersects with the previous level.  Indexing ``x`` by precision rather
    than by position keeps fast chains (whose late terms are huge) cheap.
    """
    cert = positivity_certificate(x, budget)
    if isinstance(cert, Refuted):
        raise CertificateError(f"argument of sqrt is not positive (term {cert.n} is {x[cert.n]})")
    if cert is None:
        raise CertificateError(f"could not certify the argument of sqrt positive within {budget} terms")
    N = cert.depth
    levels: list[IntervalQ] = []

    def level(n):
        while len(levels) <= n:
            i = len(levels)
            p = i + 2
            v = x[max(N, refine_index(x, p, budget + 4 * p))]
            cur = IntervalQ(_isqrt_floor(v.lo, p), _isqrt_ceil(v.hi, p))
            if levels:
                prev = levels[-1]
                cur = IntervalQ(max(prev.lo, cur.lo), min(prev.hi, cur.hi))
            levels.append(cur)
        return levels[n]

    return Real(Chain(IQ, level, name="sqrt"))


__all__ = ["sqrt", "sqrt_table", "SqrtTableRow", "sqrt_real", "positivity_certificate"]
