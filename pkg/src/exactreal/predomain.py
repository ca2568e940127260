"""Predomain bases: countable posets with decidable order in which every
element has an approximating sequence.

A concrete base subclasses :class:`PredomainBase` and supplies ``leq``,
``enumerate``/``index_of`` and ``approx``; ``way_below``, consistency and
suprema are supplied by the bases that support them.  The combinators
``FlatBase``, ``SeqBase``, ``ProductBase``, ``CoproductBase`` and
``LiftedBase`` build new bases from old ones.
"""

from __future__ import annotations

from math import isqrt
from typing import Any, Callable, Sequence

from .errors import (DomainError, InconsistentError, MonotonicityError,
                     NotWayBelowError, UnsupportedOperation)


class _Bottom:
    """The least element added by lifting."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "BOTTOM"

    def __str__(self):
        return "⊥"

    def __reduce__(self):
        return (_Bottom, ())


BOTTOM = _Bottom()


# -- pairing functions -------------------------------------------------------

def pair(a: int, b: int) -> int:
    """Cantor pairing of two naturals."""
    return (a + b) * (a + b + 1) // 2 + b


def unpair(n: int) -> tuple[int, int]:
    w = (isqrt(8 * n + 1) - 1) // 2
    b = n - w * (w + 1) // 2
    return w - b, b


def zigzag(n: int) -> int:
    """0, 1, -1, 2, -2, ... : a bijection from naturals onto integers."""
    return (n + 1) // 2 if n % 2 else -(n // 2)


def unzigzag(z: int) -> int:
    return 2 * z - 1 if z > 0 else -2 * z


# -- the base contract -------------------------------------------------------

class PredomainBase:
    """Abstract predomain base.

    Subclasses override what they support.  ``pointed`` says whether
    :meth:`bottom` exists; ``pairwise_consistency`` says that a finite set is
    consistent as soon as every pair in it is (true for intervals), which lets
    step-function validation avoid enumerating subsets.
    """

    name = "base"
    pointed = False
    pairwise_consistency = False

    def leq(self, b, c) -> bool:
        raise NotImplementedError

    def way_below(self, b, c) -> bool:
        raise UnsupportedOperation(f"{self.name} has no decidable way-below relation")

    def enumerate(self, i: int):
        raise NotImplementedError

    def index_of(self, b) -> int:
        raise NotImplementedError

    def approx(self, b, i: int):
        raise NotImplementedError

    def consistent(self, xs) -> bool:
        raise UnsupportedOperation(f"{self.name} has no consistency decision procedure")

    def sup(self, xs):
        raise UnsupportedOperation(f"{self.name} has no finite suprema")

    def bottom(self):
        raise UnsupportedOperation(f"{self.name} is not pointed")

    def excludes(self, b, c) -> bool:
        """True when no element above ``c`` can be way above ``b``.

        This is the rule that makes a failed probe permanent.  The default is
        the safe answer: never.
        """
        return False

    def interpolate(self, b, c):
        raise UnsupportedOperation(f"no interpolation strategy registered for {self.name}")

    def separated(self, A, D):
        raise UnsupportedOperation(f"separatedness is not decidable on {self.name}")

    def eq(self, b, c) -> bool:
        return self.leq(b, c) and self.leq(c, b)

    def __repr__(self):
        return f"<{self.name}>"


class FlatBase(PredomainBase):
    """A countable set with decidable equality, ordered by equality."""

    def __init__(self, enum: Callable[[int], Any], index: Callable[[Any], int], name="Flat"):
        self._enum = enum
        self._index = index
        self.name = name

    @classmethod
    def of(cls, items: Sequence, name="Flat"):
        items = list(items)
        return cls(lambda i: items[i % len(items)], items.index, name=name)

    def leq(self, b, c):
        return b == c

    way_below = leq

    def enumerate(self, i):
        return self._enum(i)

    def index_of(self, b):
        return self._index(b)

    def approx(self, b, i):
        return b

    def consistent(self, xs):
        xs = list(xs)
        return all(x == xs[0] for x in xs)

    def sup(self, xs):
        xs = list(xs)
        if not xs or not self.consistent(xs):
            raise InconsistentError(f"no supremum of {xs!r} in a flat base", xs)
        return xs[0]

    def interpolate(self, b, c):
        return c

    def separated(self, A, D):
        A = list(A)
        if len(set(A)) == 1 and A[0] not in set(D):
            return True, A[0]
        return False, None


class SeqBase(PredomainBase):
    """Finite sequences (tuples) over a finite alphabet under prefix order."""

    pointed = True

    def __init__(self, alphabet: Sequence, name="Seq"):
        self.alphabet = tuple(alphabet)
        if not self.alphabet:
            raise DomainError("SeqBase needs a nonempty alphabet")
        self.name = name

    @staticmethod
    def _prefix(u, v):
        return len(u) <= len(v) and tuple(v[:len(u)]) == tuple(u)

    def leq(self, u, v):
        return self._prefix(u, v)

    way_below = leq

    def enumerate(self, i):
        # shortlex: all words of length L precede those of length L + 1
        k = len(self.alphabet)
        length, count = 0, 1
        while i >= count:
            i -= count
            length += 1
            count *= k
        word = []
        for _ in range(length):
            i, r = divmod(i, k)
            word.append(self.alphabet[r])
        return tuple(reversed(word))

    def index_of(self, u):
        k = len(self.alphabet)
        offset = sum(k ** L for L in range(len(u)))
        pos = 0
        for a in u:
            pos = pos * k + self.alphabet.index(a)
        return offset + pos

    def approx(self, u, i):
        return tuple(u)

    def bottom(self):
        return ()

    def consistent(self, xs):
        xs = sorted(xs, key=len)
        return all(self._prefix(a, b) for a, b in zip(xs, xs[1:]))

    def sup(self, xs):
        xs = list(xs)
        if not xs:
            return ()
        if not self.consistent(xs):
            raise InconsistentError(f"sequences {xs!r} are not prefix-comparable", xs)
        return tuple(max(xs, key=len))

    def excludes(self, u, v):
        # once v has left u's prefix cone no extension of v can return
        n = min(len(u), len(v))
        return tuple(u[:n]) != tuple(v[:n])

    def interpolate(self, u, v):
        return tuple(v)

    def separated(self, A, D):
        A = list(A)
        if not A or not self.consistent(A):
            return False, None
        top = self.sup(A)
        if any(self._prefix(d, top) for d in D):
            return False, None
        return True, top


class ProductBase(PredomainBase):
    """Pairs, ordered componentwise."""

    def __init__(self, left: PredomainBase, right: PredomainBase):
        self.left, self.right = left, right
        self.name = f"({left.name} x {right.name})"
        self.pointed = left.pointed and right.pointed
        self.pairwise_consistency = False

    def leq(self, b, c):
        return self.left.leq(b[0], c[0]) and self.right.leq(b[1], c[1])

    def way_below(self, b, c):
        return self.left.way_below(b[0], c[0]) and self.right.way_below(b[1], c[1])

    def enumerate(self, i):
        a, b = unpair(i)
        return (self.left.enumerate(a), self.right.enumerate(b))

    def index_of(self, b):
        return pair(self.left.index_of(b[0]), self.right.index_of(b[1]))

    def approx(self, b, i):
        return (self.left.approx(b[0], i), self.right.approx(b[1], i))

    def consistent(self, xs):
        xs = list(xs)
        return self.left.consistent([x[0] for x in xs]) and self.right.consistent([x[1] for x in xs])

    def sup(self, xs):
        xs = list(xs)
        return (self.left.sup([x[0] for x in xs]), self.right.sup([x[1] for x in xs]))

    def bottom(self):
        return (self.left.bottom(), self.right.bottom())

    def excludes(self, b, c):
        return self.left.excludes(b[0], c[0]) or self.right.excludes(b[1], c[1])

    def interpolate(self, b, c):
        return (self.left.interpolate(b[0], c[0]), self.right.interpolate(b[1], c[1]))


class CoproductBase(PredomainBase):
    """Tagged union ``(0, b)`` / ``(1, c)``; elements with different tags are
    incomparable."""

    def __init__(self, left: PredomainBase, right: PredomainBase):
        self.parts = (left, right)
        self.name = f"({left.name} + {right.name})"

    def leq(self, b, c):
        return b[0] == c[0] and self.parts[b[0]].leq(b[1], c[1])

    def way_below(self, b, c):
        return b[0] == c[0] and self.parts[b[0]].way_below(b[1], c[1])

    def enumerate(self, i):
        tag, j = i % 2, i // 2
        return (tag, self.parts[tag].enumerate(j))

    def index_of(self, b):
        return 2 * self.parts[b[0]].index_of(b[1]) + b[0]

    def approx(self, b, i):
        return (b[0], self.parts[b[0]].approx(b[1], i))

    def consistent(self, xs):
        xs = list(xs)
        tags = {x[0] for x in xs}
        return len(tags) == 1 and self.parts[xs[0][0]].consistent([x[1] for x in xs])

    def sup(self, xs):
        xs = list(xs)
        if not xs or not self.consistent(xs):
            raise InconsistentError(f"no supremum of {xs!r} in a coproduct", xs)
        tag = xs[0][0]
        return (tag, self.parts[tag].sup([x[1] for x in xs]))

    def excludes(self, b, c):
        return b[0] != c[0] or self.parts[b[0]].excludes(b[1], c[1])

    def interpolate(self, b, c):
        return (b[0], self.parts[b[0]].interpolate(b[1], c[1]))


class LiftedBase(PredomainBase):
    """``B`` with a fresh least element :data:`BOTTOM` below everything."""

    pointed = True

    def __init__(self, inner: PredomainBase):
        self.inner = inner
        self.name = f"{inner.name}_⊥"
        self.pairwise_consistency = inner.pairwise_consistency

    def leq(self, b, c):
        if b is BOTTOM:
            return True
        return c is not BOTTOM and self.inner.leq(b, c)

    def way_below(self, b, c):
        if b is BOTTOM:
            return True
        return c is not BOTTOM and self.inner.way_below(b, c)

    def enumerate(self, i):
        return BOTTOM if i == 0 else self.inner.enumerate(i - 1)

    def index_of(self, b):
        return 0 if b is BOTTOM else self.inner.index_of(b) + 1

    def approx(self, b, i):
        return BOTTOM if b is BOTTOM else self.inner.approx(b, i)

    def bottom(self):
        return BOTTOM

    def consistent(self, xs):
        proper = [x for x in xs if x is not BOTTOM]
        return not proper or self.inner.consistent(proper)

    def sup(self, xs):
        proper = [x for x in xs if x is not BOTTOM]
        return self.inner.sup(proper) if proper else BOTTOM

    def excludes(self, b, c):
        if b is BOTTOM or c is BOTTOM:
            return False
        return self.inner.excludes(b, c)

    def interpolate(self, b, c):
        if b is BOTTOM:
            return BOTTOM
        return self.inner.interpolate(b, c)

    def separated(self, A, D):
        if any(d is BOTTOM for d in D):
            return False, None
        proper = [a for a in A if a is not BOTTOM]
        if not proper:
            # nothing proper is way below BOTTOM
            return True, BOTTOM
        return self.inner.separated(proper, D)


# -- generic constructions over any base -------------------------------------

def sup_preserves_waybelow_check(base: PredomainBase, pairs) -> bool:
    """Given pairs ``(b_i, b'_i)`` with each ``b_i << b'_i``, report whether
    ``sup b_i << sup b'_i``.  On valid input the answer is always ``True``;
    the function exists so tests can exercise that fact."""
    pairs = list(pairs)
    if not pairs:
        raise DomainError("sup_preserves_waybelow_check needs at least one pair")
    for b, c in pairs:
        if not base.way_below(b, c):
            raise NotWayBelowError(f"{b} is not way below {c}")
    lows, highs = [b for b, _ in pairs], [c for _, c in pairs]
    for side in (lows, highs):
        if not base.consistent(side):
            raise InconsistentError(f"{side} has no supremum", side)
    return base.way_below(base.sup(lows), base.sup(highs))


def interpolate(base: PredomainBase, b, c):
    """Some ``y`` with ``b << y << c``."""
    if not base.way_below(b, c):
        raise NotWayBelowError(f"cannot interpolate: {b} is not way below {c}")
    return base.interpolate(b, c)


def interpolate_multi(base: PredomainBase, bs, c):
    """Some ``y`` with ``b << y`` for every ``b`` in ``bs`` and ``y << c``:
    the supremum of the pairwise interpolants."""
    bs = list(bs)
    if not bs:
        raise DomainError("interpolate_multi needs at least one element")
    ys = [interpolate(base, b, c) for b in bs]
    return base.sup(ys)


def diagonal_sup(base: PredomainBase, f: Callable[[int, int], Any], depth: int):
    """Supremum of ``f(n, n)`` for ``n <= depth``, checked against the
    iterated supremum over the whole grid.

    ``f`` must be monotone in both arguments on ``[0, depth]^2``; a violation
    raises :class:`MonotonicityError`.
    """
    grid = [[f(n, m) for m in range(depth + 1)] for n in range(depth + 1)]
    for n in range(depth + 1):
        for m in range(depth + 1):
            if n < depth and not base.leq(grid[n][m], grid[n + 1][m]):
                raise MonotonicityError(f"f({n},{m}) not below f({n + 1},{m})", n, m)
            if m < depth and not base.leq(grid[n][m], grid[n][m + 1]):
                raise MonotonicityError(f"f({n},{m}) not below f({n},{m + 1})", n, m)
    diag = base.sup([grid[n][n] for n in range(depth + 1)])
    iterated = base.sup([base.sup([grid[n][m] for n in range(depth + 1)])
                         for m in range(depth + 1)])
    if not base.eq(diag, iterated):
        raise DomainError(f"diagonal supremum {diag} differs from iterated {iterated}")
    return diag


def check_base_laws(base: PredomainBase, triples, approx_depth=4):
    """Return the first law violated by some triple, or ``None``.

    Checked: order is reflexive, transitive and antisymmetric; way-below
    implies below; mixing below and way-below stays way-below; approximants
    increase and are way below their target.
    """
    for a, b, c in triples:
        if not base.leq(a, a):
            return ("reflexive", (a,))
        if base.leq(a, b) and base.leq(b, c) and not base.leq(a, c):
            return ("transitive", (a, b, c))
        if base.leq(a, b) and base.leq(b, a) and a != b:
            return ("antisymmetric", (a, b))
        try:
            wb = base.way_below
            if wb(a, b) and not base.leq(a, b):
                return ("way-below implies below", (a, b))
            if base.leq(a, b) and wb(b, c) and not wb(a, c):
                return ("below then way-below", (a, b, c))
            if wb(a, b) and base.leq(b, c) and not wb(a, c):
                return ("way-below then below", (a, b, c))
            for i in range(approx_depth):
                lo, hi = base.approx(a, i), base.approx(a, i + 1)
                if not base.leq(lo, hi):
                    return ("approximants increase", (a, i))
                if not wb(lo, a):
                    return ("approximant way below", (a, i))
        except UnsupportedOperation:
            pass
    return None


__all__ = [
    "BOTTOM", "PredomainBase", "FlatBase", "SeqBase", "ProductBase",
    "CoproductBase", "LiftedBase", "pair", "unpair", "zigzag", "unzigzag",
    "sup_preserves_waybelow_check", "interpolate", "interpolate_multi",
    "diagonal_sup", "check_base_laws",
]
