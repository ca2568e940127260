from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from exactreal.completion import Chain, ConfirmedUpTo, Inconclusive, Refuted, probe_equal
from exactreal.errors import BudgetExhausted, InconsistentError
from exactreal.interval import IQ, iv
from exactreal.newton import sqrt
from exactreal.reals import (INF, CauchyReal, ClassicalNullSeq, MarkovReal, Real, add,
                             cauchy_to_markov, embed_real, exact, le_probe, markov_to_total,
                             nat_scale, neg, nonneg_probe, pad, pad_null, real_abs,
                             real_leq_probe, refine, refine_index, sub, total_to_markov,
                             waiting_function)
from oracles import newton_sqrt_iterates, waiting_by_search
from strategies import make_iq_chain, rationals


def around(c, rate=1):
    return Real.from_function(lambda n: iv(c - Fraction(1, 2 ** (rate * n)), c + Fraction(1, 2 ** (rate * n))))


@st.composite
def total_reals(draw):
    kind = draw(st.sampled_from(["chain", "sqrt", "sum"]))
    c = draw(rationals(8, 2))
    if kind == "sqrt":
        # reindexed by precision so that late terms stay small
        r = sqrt(draw(st.integers(1, 30)))
        return Real.from_function(lambda n: refine(r, n)) + exact(c)
    x = Real(make_iq_chain(c, Fraction(0), draw(st.integers(1, 4)) * Fraction(1, 4),
                           draw(st.integers(1, 4)) * Fraction(1, 4), 2, 1))
    if kind == "sum":
        return x + around(draw(rationals(4, 1)), 2)
    return x


def test_pointwise_arithmetic():
    s = embed_real(iv(0, 1)) + embed_real(iv(2, 3))
    assert s[0] == iv(2, 4) and s.chain.constant
    assert neg(embed_real(iv(1, 2)))[5] == iv(-2, -1)
    assert sub(exact(1), exact(3))[0] == iv(-2, -2)


def test_x_minus_x_encloses_zero():
    x = around(1)
    d = x + neg(x)
    for n in range(10):
        w = x[n].length
        assert d[n] == iv(-w, w)
    assert probe_equal(d.chain, exact(0).chain, 12) == ConfirmedUpTo(12)


def test_abs_examples():
    assert real_abs(embed_real(iv(-2, 1)))[0] == iv(0, 2)
    assert real_abs(embed_real(iv(1, 2)))[0] == iv(1, 2)
    assert real_abs(embed_real(iv(-3, -2)))[0] == iv(2, 3)


def test_nat_scale():
    assert nat_scale(0, exact(5))[0] == iv(0, 0)
    assert nat_scale(7, exact(Fraction(1, 3)))[0] == iv(Fraction(7, 3), Fraction(7, 3))
    assert (3 * around(0))[2] == iv(Fraction(-3, 4), Fraction(3, 4))


def test_nonneg_probe():
    assert nonneg_probe(exact(0), 5, 10) == ConfirmedUpTo(0)
    assert nonneg_probe(exact(-1), 2, 10) == Refuted(0, 0)
    assert nonneg_probe(around(0), 3, 10) == ConfirmedUpTo(3)
    assert nonneg_probe(around(0), 30, 10) == Inconclusive(10)


def test_le_probe():
    assert le_probe(exact(1), sqrt(2), 10) == ConfirmedUpTo(10)
    assert isinstance(le_probe(sqrt(3), sqrt(2), 10), Refuted)


def test_refine_examples():
    assert refine(exact(1), 50) == iv(1, 1)
    # exact Newton iterates from an independent rational implementation
    its = newton_sqrt_iterates(Fraction(2), 3)
    s2, s3 = its[2], its[3]
    x = sqrt(2)
    assert refine_index(x, 10) == 2
    assert refine(x, 10) == iv(Fraction(int(s2[0].numerator), int(s2[0].denominator)),
                              Fraction(int(s2[1].numerator), int(s2[1].denominator)))
    v = refine(x, 20)
    assert v == iv(Fraction(941664, 665857), Fraction(665857, 470832))
    assert (v.lo, v.hi) == tuple(Fraction(int(e.numerator), int(e.denominator)) for e in s3)
    with pytest.raises(BudgetExhausted):
        refine(embed_real(iv(0, 1)), 1)


def test_refine_without_hint_uses_budget():
    x = around(0)
    assert refine(x, 8, budget=20) == iv(Fraction(-1, 512), Fraction(1, 512))
    with pytest.raises(BudgetExhausted):
        refine(x, 30, budget=20)


@given(total_reals(), st.integers(0, 40))
def test_refine_returns_first_narrow_term(x, k):
    n = refine_index(x, k, 400)
    assert x[n].length <= Fraction(1, 2 ** k)
    assert n == 0 or x[n - 1].length > Fraction(1, 2 ** k)


@given(total_reals(), total_reals())
def test_hints_are_honest(x, y):
    s = x + y
    if s.width_hint is None:
        return
    for k in range(0, 30, 3):
        assert s[s.hint(k)].length <= Fraction(1, 2 ** k)


# -- waiting function and modulus conversions ----------------------------------

def test_waiting_function_examples():
    W = waiting_function(lambda k: k)
    assert [W(n) for n in range(101)] == list(range(101))
    W = waiting_function(lambda k: 2 * k)
    assert [W(n) for n in range(101)] == [n // 2 for n in range(101)]
    W = waiting_function(lambda k: 5)
    assert [W(n) for n in range(6)] == [0] * 6
    assert [W(n) for n in range(5, 40)] == list(range(35))


@st.composite
def nondecreasing_moduli(draw):
    steps = draw(st.lists(st.integers(0, 4), min_size=1, max_size=60))
    base = draw(st.integers(0, 10))

    def M(k):
        if k < len(steps):
            return base + sum(steps[:k + 1])
        return base + sum(steps) + 3 * (k - len(steps) + 1)

    return M


@given(nondecreasing_moduli())
def test_waiting_function_laws(M):
    W = waiting_function(M)
    vals = [W(n) for n in range(201)]
    assert W(M(0)) == 0
    assert all(a <= b for a, b in zip(vals, vals[1:]))
    assert all(M(vals[n]) <= n for n in range(M(0), 201))
    assert vals == [waiting_by_search(M, n) for n in range(201)]


def test_cauchy_to_markov_constant_zero():
    m = cauchy_to_markov(CauchyReal(lambda n: 0, lambda k: 0))
    assert [m.modulus(n) for n in range(20)] == [Fraction(1, 2 ** n) for n in range(20)]


def test_cauchy_to_markov_geometric():
    c = CauchyReal(lambda n: Fraction(1, 2 ** n), lambda k: k + 1)
    assert c.check(10, 60)
    m = cauchy_to_markov(c)
    mods = [m.modulus(n) for n in range(101)]
    assert all(a >= b for a, b in zip(mods, mods[1:]))
    assert m.check(50)


@given(rationals(4, 2), st.integers(1, 3), st.integers(0, 6))
def test_cauchy_to_markov_modulus_is_valid(c, rate, delay):
    # q_n = c + (-1)^n 2^-(rate n); M(k) = ceil((k+1)/rate) + delay is a modulus
    seq = lambda n: c + Fraction((-1) ** n, 2 ** (rate * n))
    M = lambda k: -(-(k + 1) // rate) + delay
    cr = CauchyReal(seq, M)
    assert cr.check(12, 60)
    m = cauchy_to_markov(cr)
    assert m.modulus.check(80)
    assert m.check(40)


def test_total_to_markov_examples():
    m = total_to_markov(embed_real(iv(1, 3)))
    assert [m.seq(n) for n in range(5)] == [2] * 5
    assert [m.modulus(n) for n in range(5)] == [2] * 5
    m = total_to_markov(around(0))
    assert [m.seq(n) for n in range(8)] == [0] * 8
    assert [m.modulus(n) for n in range(8)] == [Fraction(2, 2 ** n) for n in range(8)]
    m = total_to_markov(sqrt(2))
    assert [m.modulus(n) for n in range(1, 3)] == [Fraction(1, 204), Fraction(1, 235416)]


def test_markov_to_total_examples():
    x = markov_to_total(MarkovReal(lambda n: 1, ClassicalNullSeq(lambda n: Fraction(1, 2 ** n))))
    assert [x[n] for n in range(6)] == [iv(1 - Fraction(1, 2 ** n), 1 + Fraction(1, 2 ** n)) for n in range(6)]
    bad = markov_to_total(MarkovReal(lambda n: n % 2, ClassicalNullSeq(lambda n: Fraction(1, 4))))
    with pytest.raises(InconsistentError):
        bad[3]


def test_markov_to_total_skips_infinite_bounds():
    mod = ClassicalNullSeq(lambda n: INF if n < 2 else Fraction(1, 2 ** n))
    assert mod.check(10)
    x = markov_to_total(MarkovReal(lambda n: 7 if n < 2 else 1, mod))
    assert x[2] == iv(Fraction(3, 4), Fraction(5, 4))
    with pytest.raises(Exception):
        x[0]


@given(total_reals())
def test_markov_round_trip(x):
    y = markov_to_total(total_to_markov(x))
    assert probe_equal(x.chain, y.chain, 12) == ConfirmedUpTo(12)


# -- order facts as probes ----------------------------------------------------

@given(total_reals())
def test_null_padding_is_invisible(x):
    z = around(Fraction(1, 3), 2)
    xp = pad_null(x, lambda n: Fraction(1, 2 ** n))
    assert probe_equal(add(x, z).chain, add(xp, z).chain, 12) == ConfirmedUpTo(12)
    assert probe_equal(neg(x).chain, neg(xp).chain, 12) == ConfirmedUpTo(12)
    assert probe_equal(real_abs(x).chain, real_abs(xp).chain, 12) == ConfirmedUpTo(12)


@given(total_reals(), st.integers(1, 8), st.integers(-8, 8))
def test_padding_by_distance_is_below(x, e, d):
    eps = Fraction(e, 8)
    delta = eps * Fraction(d, 8)
    y = x + exact(delta)
    assert real_leq_probe(pad(x, eps), y, 12) == ConfirmedUpTo(12)


@given(total_reals(), st.integers(1, 8), st.integers(-8, 8), st.integers(-8, 8))
def test_distance_bounded_by_common_lower_bound(z, e, d1, d2):
    eps = Fraction(e, 8)
    w = pad(z, eps)
    x, y = z + exact(eps * Fraction(d1, 8)), z + exact(eps * Fraction(d2, 8))
    assert real_leq_probe(w, x, 12) == ConfirmedUpTo(12)
    for n in range(9):
        gap = exact(w[n].length) - real_abs(x - y)
        assert isinstance(nonneg_probe(gap, 10, 40), ConfirmedUpTo)


@given(total_reals(), st.integers(0, 6))
def test_padding_by_own_width_is_below(x, n):
    assert real_leq_probe(pad(x, x[n].length), x, 12) == ConfirmedUpTo(12)


@given(st.integers(1, 50), st.integers(0, 8))
def test_sqrt_hint_is_an_upper_bound_on_the_needed_index(q, k):
    x = sqrt(q)
    assert refine_index(x, k) <= x.hint(k)
    assert x[x.hint(k)].length <= Fraction(1, 2 ** k)


@given(st.integers(1, 60), st.integers(0, 40))
def test_by_precision_keeps_the_value(q, k):
    x = sqrt(q)
    y = x.by_precision()
    assert y[k].length <= Fraction(1, 2 ** k)
    assert y[k] == refine(x, k)
    assert refine_index(y, k) <= y.hint(k)


def test_by_precision_makes_probes_cheap():
    y = sqrt(5).by_precision()
    assert probe_equal(y.chain, markov_to_total(total_to_markov(y)).chain, 12) == ConfirmedUpTo(12)
