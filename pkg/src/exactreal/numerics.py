"""Exact rational arithmetic.

``Rational`` is :class:`fractions.Fraction`: it is immutable, always stored in
lowest terms with a positive denominator, and arbitrary precision.  The
functions below are the operations the rest of the package relies on.
"""

from __future__ import annotations

import re
from fractions import Fraction

Rational = Fraction

__all__ = [
    "Rational", "Q", "add", "sub", "mul", "neg", "div", "cmp", "qabs", "qmin",
    "qmax", "pow2", "floor_log10", "to_decimal_string", "format_rational",
    "parse_rational",
]


def Q(value, den=None) -> Fraction:
    """Coerce ``value`` (int, Fraction, text such as ``"3/4"`` or ``"1.25"``)."""
    if den is not None:
        return Fraction(value, den)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def add(a: Fraction, b: Fraction) -> Fraction:
    return a + b


def sub(a: Fraction, b: Fraction) -> Fraction:
    return a - b


def mul(a: Fraction, b: Fraction) -> Fraction:
    return a * b


def neg(a: Fraction) -> Fraction:
    return -a


def div(a: Fraction, b: Fraction) -> Fraction:
    # Fraction raises ZeroDivisionError itself; keep the message uniform.
    if b == 0:
        raise ZeroDivisionError(f"division of {a} by zero")
    return Fraction(a) / b


def cmp(a: Fraction, b: Fraction) -> int:
    return (a > b) - (a < b)


def qabs(a: Fraction) -> Fraction:
    return -a if a < 0 else a


def qmin(a: Fraction, b: Fraction) -> Fraction:
    return a if a <= b else b


def qmax(a: Fraction, b: Fraction) -> Fraction:
    return a if a >= b else b


def pow2(k: int) -> Fraction:
    """``2**k`` as an exact rational, for any integer ``k``."""
    return Fraction(1 << k) if k >= 0 else Fraction(1, 1 << -k)


def floor_log10(a: Fraction) -> int:
    """Largest ``e`` with ``10**e <= |a|``; ``a`` must be nonzero."""
    a = qabs(Fraction(a))
    if a == 0:
        raise ValueError("floor_log10 of zero")
    # digit-count estimate, then correct by at most a step or two
    e = len(str(a.numerator)) - len(str(a.denominator))
    while _pow10(e) > a:
        e -= 1
    while _pow10(e + 1) <= a:
        e += 1
    return e


def _pow10(e: int) -> Fraction:
    return Fraction(10 ** e) if e >= 0 else Fraction(1, 10 ** -e)


def _round_half_away(a: Fraction) -> int:
    n, d = a.numerator, a.denominator
    q, r = divmod(abs(n), d)
    if 2 * r >= d:
        q += 1
    return q if n >= 0 else -q


def to_decimal_string(a: Fraction, sig_figs: int, scientific: bool | None = None) -> str:
    """Round ``a`` to ``sig_figs`` significant digits, ties away from zero.

    With ``scientific=None`` the notation is chosen by magnitude: scientific
    (``"4.9e-3"``) for ``|a| < 1e-2`` or ``|a| >= 1e4``, positional otherwise.
    ``True``/``False`` force one notation.
    """
    if sig_figs < 1:
        raise ValueError("sig_figs must be at least 1")
    a = Fraction(a)
    if a == 0:
        return "0." + "0" * max(sig_figs - 1, 1)
    e = floor_log10(a)
    digits = _round_half_away(qabs(a) / _pow10(e - sig_figs + 1))
    if digits >= 10 ** sig_figs:  # rounding carried into a new decade
        e += 1
        digits = _round_half_away(qabs(a) / _pow10(e - sig_figs + 1))
    sign = "-" if a < 0 else ""
    s = str(digits)
    if scientific is None:
        scientific = e < -2 or e >= 4
    if scientific:
        mant = s[0] + ("." + s[1:] if len(s) > 1 else "")
        return f"{sign}{mant}e{e}"
    point = e + 1  # digits before the decimal point
    if point <= 0:
        return f"{sign}0.{'0' * -point}{s}"
    if point >= len(s):
        return f"{sign}{s}{'0' * (point - len(s))}"
    return f"{sign}{s[:point]}.{s[point:]}"


def format_rational(a: Fraction) -> str:
    """``"num/den"``, or just ``"num"`` for integers."""
    a = Fraction(a)
    return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


_RAT = re.compile(r"^\s*([+-]?)(\d+)(?:\.(\d+))?(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"a/b"``, ``"-a/b"``, integers and finite decimals like ``"1.25"``."""
    m = _RAT.match(text)
    if not m:
        raise ValueError(f"not a rational literal: {text!r}")
    sign, whole, frac, den = m.groups()
    value = Fraction(int(whole))
    if frac:
        value += Fraction(int(frac), 10 ** len(frac))
    if den is not None:
        if int(den) == 0:
            raise ZeroDivisionError(f"zero denominator in {text!r}")
        value /= int(den)
    return -value if sign == "-" else value
