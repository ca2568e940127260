from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from exactreal.completion import (CONTINUOUS_CONSISTENCY, GENERAL, Chain, ConfirmedUpTo,
                                  Inconclusive, Refuted, basic_open_member, embed, leq_probe,
                                  probe_equal, sup_finite, sup_increasing)
from exactreal.errors import DomainError, InconsistentError, MonotonicityError
from exactreal.interval import IQ, iv
from exactreal.predomain import BOTTOM, LiftedBase, SeqBase
from strategies import intervals, iq_chains

LIFT = LiftedBase(IQ)


def shrinking(center):
    return Chain(IQ, lambda n: iv(center - Fraction(1, 2 ** n), center + Fraction(1, 2 ** n)))


def test_embed_is_constant():
    x = embed(IQ, iv(0, 1))
    assert x[7] == iv(0, 1) and x.constant


def test_reflexive_probe():
    x = embed(IQ, iv(0, 1))
    assert leq_probe(x, x, 5) == ConfirmedUpTo(5)


def test_disjoint_limits_are_refuted():
    # approx(x_1, 10) = [-1/2 - 2^-10, 1/2 + 2^-10] first lies wholly below
    # y_2 = [3/4, 5/4]; y_1 = [1/2, 3/2] still overlaps it
    assert leq_probe(shrinking(0), shrinking(1), 10) == Refuted(1, 2)


def test_point_is_not_below_a_fat_interval():
    x, y = shrinking(0), embed(IQ, iv(-1, 1))
    assert leq_probe(y, x, 10) == ConfirmedUpTo(10)
    assert leq_probe(x, y, 10) == Refuted(1, 0)


def test_embedding_of_bottom_is_least():
    bot = embed(LIFT, BOTTOM)
    for v in (iv(0, 1), iv(3, 3), BOTTOM):
        assert leq_probe(bot, embed(LIFT, v), 6) == ConfirmedUpTo(6)


@given(intervals(16, 2), intervals(16, 2))
def test_embedding_preserves_and_reflects_order(a, b):
    r = leq_probe(embed(IQ, a), embed(IQ, b), 12)
    assert (r == ConfirmedUpTo(12)) == IQ.leq(a, b)
    if not IQ.leq(a, b):
        assert isinstance(r, Refuted)
    if IQ.way_below(a, b):
        assert basic_open_member(a, embed(IQ, b), 0) == ConfirmedUpTo(0)


def test_monotonicity_is_enforced():
    bad = Chain(IQ, lambda n: iv(0, 1) if n % 2 == 0 else iv(2, 3))
    bad[0]
    with pytest.raises(MonotonicityError):
        bad[1]
    sparse = Chain(IQ, lambda n: iv(-n, n))
    sparse[10]
    with pytest.raises(MonotonicityError):
        sparse[3]


def test_chains_memoize():
    calls = []
    x = Chain(IQ, lambda n: calls.append(n) or iv(-1, 1))
    x[4], x[4], x[4]
    assert calls == [4]


def test_sup_increasing_of_constant_family():
    x = shrinking(Fraction(1, 3))
    for mode in (GENERAL, CONTINUOUS_CONSISTENCY):
        d = sup_increasing(lambda n: x, mode)
        assert probe_equal(x, d, 10) == ConfirmedUpTo(10)


def test_sup_increasing_nested_constants():
    fam = lambda n: embed(IQ, iv(-1 - Fraction(1, 2 ** n), 1 + Fraction(1, 2 ** n)))
    d = sup_increasing(fam, CONTINUOUS_CONSISTENCY)
    for k in range(10):
        assert d[k] == iv(-1 - Fraction(1, 2 ** k), 1 + Fraction(1, 2 ** k))


def test_sup_increasing_rejects_inconsistent_levels():
    fam = lambda n: embed(IQ, iv(n, n))
    d = sup_increasing(fam, CONTINUOUS_CONSISTENCY)
    with pytest.raises(InconsistentError):
        d[1]
    with pytest.raises(DomainError):
        sup_increasing(fam, "sideways")


@given(iq_chains(), st.integers(0, 3))
def test_sup_increasing_modes_agree(x, shift):
    fam = lambda n: Chain(IQ, lambda m: x[n + m + shift])
    g = sup_increasing(fam, GENERAL)
    c = sup_increasing(fam, CONTINUOUS_CONSISTENCY)
    assert probe_equal(g, c, 12) == ConfirmedUpTo(12)


@given(iq_chains())
def test_own_sup(x):
    own = sup_increasing(lambda n: embed(IQ, x[n]), CONTINUOUS_CONSISTENCY)
    assert probe_equal(x, own, 10) == ConfirmedUpTo(10)


@given(iq_chains())
def test_sup_is_an_upper_bound(x):
    fam = lambda n: Chain(IQ, lambda m: x[n + m])
    d = sup_increasing(fam, GENERAL)
    for n in range(9):
        assert leq_probe(fam(n), d, 10) == ConfirmedUpTo(10)


def test_sup_finite_examples():
    a = Chain(IQ, lambda n: iv(-Fraction(1, 2 ** n), 1))
    b = Chain(IQ, lambda n: iv(0, 1 + Fraction(1, 2 ** n)))
    s = sup_finite([a, b])
    assert all(s[n] == iv(0, 1) for n in range(10))
    assert sup_finite([a]) is a
    bad = sup_finite([embed(IQ, iv(0, 1)), embed(IQ, iv(2, 3))])
    with pytest.raises(InconsistentError) as info:
        bad[0]
    assert info.value.level == 0


@given(iq_chains(), iq_chains())
def test_sup_finite_is_pointwise_upper_bound(x, y):
    if not all(IQ.consistent([x[n], y[n]]) for n in range(25)):
        return
    s = sup_finite([x, y])
    for n in range(12):
        assert s[n] == iv(max(x[n].lo, y[n].lo), min(x[n].hi, y[n].hi))
    assert leq_probe(x, s, 12) == ConfirmedUpTo(12)
    assert leq_probe(y, s, 12) == ConfirmedUpTo(12)


def test_basic_open_membership():
    assert basic_open_member(iv(-1, 2), shrinking(0), 5) == ConfirmedUpTo(1)
    assert basic_open_member(iv(0, 2), embed(IQ, iv(1, 1)), 5) == ConfirmedUpTo(0)
    assert basic_open_member(iv(1, 1), embed(IQ, iv(0, 2)), 5) == Refuted(0, 0)
    assert isinstance(basic_open_member(iv(5, 6), shrinking(0), 5), Refuted)


def test_probes_without_exclusion_rule_never_refute():
    seq = SeqBase("ab")
    x = Chain(seq, lambda n: ("a",) * n)
    y = Chain(seq, lambda n: ("a",) * min(n, 2))
    assert leq_probe(y, x, 4) == ConfirmedUpTo(4)
    assert isinstance(leq_probe(x, y, 4), (Inconclusive, Refuted))


def test_negative_budget_rejected():
    with pytest.raises(DomainError):
        leq_probe(shrinking(0), shrinking(0), -1)
