"""End-to-end acceptance checks.  Each test prints one PASS/FAIL line."""

import io
import json
import random
import time
from fractions import Fraction

import pytest

from exactreal.cli import main
from exactreal.completion import (CONTINUOUS_CONSISTENCY, GENERAL, Chain, ConfirmedUpTo, embed,
                                  leq_probe, probe_equal, sup_finite, sup_increasing)
from exactreal.errors import InconsistentError
from exactreal.funcspace import (SingleStep, StepSpace, apply, extend_nondiscontinuous,
                                 step_leq, step_pointwise_leq, validate_step)
from exactreal.interval import IQ, IntervalQ, extend, leq, separated, way_below
from exactreal.newton import sqrt
from exactreal.predomain import diagonal_sup
from exactreal.reals import (Real, exact, markov_to_total, refine, refine_index,
                             total_to_markov, waiting_function)
from oracles import isqrt_scaled, newton_sqrt_iterates, waiting_by_search


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else ""))
        assert ok, f"criterion {number} failed: {detail}"
    return emit


def rat(rng, den=16, span=4):
    d = rng.randint(1, den)
    return Fraction(rng.randint(-span * d, span * d), d)


def interval(rng, den=16, span=4):
    a, b = rat(rng, den, span), rat(rng, den, span)
    return IntervalQ(min(a, b), max(a, b))


def test_1_table_reproduction(report):
    t = time.perf_counter()
    out = io.StringIO()
    code = main(["sqrt", "2", "--iters", "5"], out)
    rows = [line.split() for line in out.getvalue().splitlines()[1:]]
    jout = io.StringIO()
    main(["sqrt", "2", "--iters", "2", "--format", "json"], jout)
    widths = [r["width"] for r in json.loads(jout.getvalue())]
    elapsed = time.perf_counter() - t
    ok = (code == 0
          and [r[1] for r in rows] == ["4.9e-3", "4.2e-6", "3.2e-12", "1.8e-24", "5.7e-49"]
          and [r[2] for r in rows] == ["8.3e-2", "4.2e-2", "2.1e-2", "1.0e-2", "5.2e-3"]
          and widths == ["1/204", "1/235416"]
          and elapsed < 1)
    report(1, "width and modulus columns for sqrt 2", ok, f"{elapsed:.3f}s")


def test_2_enclosure_soundness(report):
    t = time.perf_counter()
    ok = True
    for q in (Fraction(2), Fraction(3), Fraction(5), Fraction(1, 2), Fraction(10)):
        x = sqrt(q)
        ref = newton_sqrt_iterates(q, 10)
        for n in range(11):
            v = x[n]
            ok &= v.lo ** 2 <= q <= v.hi ** 2
            ok &= (v.lo, v.hi) == tuple(Fraction(int(e.numerator), int(e.denominator)) for e in ref[n])
            if n:
                ok &= v.length <= x[n - 1].length / 2
    elapsed = time.perf_counter() - t
    report(2, "Newton enclosures contain sqrt(q) and halve", ok and elapsed < 1, f"{elapsed:.3f}s")


def test_3_high_precision(report):
    t = time.perf_counter()
    v = refine(sqrt(2), 100)
    r = Fraction(isqrt_scaled(2, 200), 2 ** 200)
    elapsed = time.perf_counter() - t
    ok = v.lo <= r <= v.hi and v.length <= Fraction(1, 2 ** 100) and elapsed < 5
    report(3, "refine(sqrt 2, 100) brackets the integer-sqrt oracle", ok, f"{elapsed:.3f}s")


def test_4_way_below_oracle(report):
    rng = random.Random(4)
    agree = 0
    for i in range(10_000):
        a = interval(rng, 32)
        if i % 2:
            lo, hi = a.lo + Fraction(rng.randint(0, 3), 32), a.hi - Fraction(rng.randint(0, 3), 32)
            b = IntervalQ(lo, max(lo, hi))
        else:
            b = interval(rng, 32)
        endpoints = a.lo < b.lo and b.hi < a.hi
        widening = any(leq(a, extend(b, Fraction(1, 2 ** e))) for e in range(1, 16))
        agree += way_below(a, b) == endpoints == widening
    report(4, "way_below agrees with strict containment", agree == 10_000, f"{agree}/10000")


def test_5_separated(report):
    rng = random.Random(5)
    good = 0
    for _ in range(10_000):
        A = [interval(rng, 4) for _ in range(rng.randint(1, 4))]
        D = [interval(rng, 4) for _ in range(rng.randint(0, 4))]
        ok, w = separated(A, D)
        if ok:
            good += all(way_below(a, w) for a in A) and not any(way_below(d, w) for d in D)
        else:
            lo, hi = max(a.lo for a in A), min(a.hi for a in A)
            good += lo > hi or lo == hi or any(d.lo <= lo and hi <= d.hi for d in D)
    report(5, "separated answers are justified", good == 10_000, f"{good}/10000")


GRID = [IntervalQ(Fraction(i, 4), Fraction(i + w, 4)) for i in range(-10, 6) for w in range(4)]


def random_step(rng, space):
    while True:
        steps = [SingleStep(interval(rng, 2, 2), interval(rng, 2, 2)) for _ in range(rng.randint(1, 4))]
        try:
            return validate_step(steps, space)
        except InconsistentError:
            continue


def test_6_step_order(report):
    assert len(GRID) == 64
    rng = random.Random(6)
    space = StepSpace(IQ, IQ)
    fs = [random_step(rng, space) for _ in range(2001)]
    violations = 0
    below = 0
    for s, t in zip(fs[::2], fs[1::2]):
        if step_leq(s, t):
            below += 1
            violations += not step_pointwise_leq(s, t, GRID)
    for s, t, u in zip(fs, fs[1:], fs[2:]):
        violations += not step_leq(s, s)
        if step_leq(s, t) and step_leq(t, u):
            violations += not step_leq(s, u)
        if step_leq(s, t) and step_leq(t, s):
            violations += not all(s(x) == t(x) for x in GRID)
    report(6, "step order is sound on a 64-point grid", violations == 0,
           f"{violations} violations, {below}/1000 related pairs")


def random_chain(rng):
    c = rat(rng, 8, 2)
    width = rng.choice([Fraction(0), Fraction(0), Fraction(1, 4), Fraction(1)])
    a, b = Fraction(rng.randint(1, 8), 4), Fraction(rng.randint(1, 8), 4)
    rate, step = rng.randint(1, 2), rng.randint(1, 2)

    def gen(n):
        e = Fraction(1, 2 ** (rate * (n // step)))
        return IntervalQ(c - a * e, c + width + b * e)

    return Chain(IQ, gen)


def test_7_completion_laws(report):
    rng = random.Random(7)
    budget = 12
    bad = 0
    for _ in range(200):
        x, y = random_chain(rng), random_chain(rng)
        own = sup_increasing(lambda n: embed(IQ, x[n]), CONTINUOUS_CONSISTENCY)
        own_general = sup_increasing(lambda n: embed(IQ, x[n]), GENERAL)
        checks = [probe_equal(x, own, budget), probe_equal(x, own_general, budget),
                  probe_equal(own, own_general, budget)]
        checks += [leq_probe(embed(IQ, x[n]), own, budget) for n in range(0, budget + 1, 3)]
        a = x[0]
        b = IntervalQ(a.lo + a.length / 4, a.hi - a.length / 4)
        checks.append(leq_probe(embed(IQ, a), embed(IQ, b), budget))
        bad += sum(r != ConfirmedUpTo(budget) for r in checks)
        # the finite sup is the pointwise sup of the terms
        if all(IQ.consistent([x[n], y[n]]) for n in range(budget + 1)):
            z = sup_finite([x, y])
            bad += any(z[n] != IQ.sup([x[n], y[n]]) for n in range(budget + 1))
        # the diagonal of a doubly indexed family agrees with the iterated sup
        d = diagonal_sup(IQ, lambda n, m: IQ.approx(x[n], m), 8)
        bad += d != IQ.sup([IQ.approx(x[n], n) for n in range(9)])
    report(7, "own-sup, upper bound, embedding, finite and diagonal sups", bad == 0,
           f"{bad} failures over 200 chains")


def random_modulus(rng):
    steps = [rng.randint(0, 3) for _ in range(rng.randint(1, 80))]
    base = rng.randint(0, 5)
    prefix = [base]
    for d in steps[1:]:
        prefix.append(prefix[-1] + d)

    def M(k):
        return prefix[k] if k < len(prefix) else prefix[-1] + 2 * (k - len(prefix) + 1)

    return M


def random_total_real(rng):
    kind = rng.randrange(3)
    c = rat(rng, 8, 2)
    if kind == 0:
        return exact(c)
    if kind == 1:
        a, b = Fraction(rng.randint(1, 8), 4), Fraction(rng.randint(1, 8), 4)
        return Real.from_function(lambda n: IntervalQ(c - a / 2 ** n, c + b / 2 ** n))
    r = sqrt(rng.randint(1, 50))
    return Real.from_function(lambda n: refine(r, n)) + exact(c)


def test_8_markov_cauchy(report):
    rng = random.Random(8)
    bad = 0
    for _ in range(50):
        M = random_modulus(rng)
        W = waiting_function(M)
        vals = [W(n) for n in range(201)]
        bad += W(M(0)) != 0
        bad += any(p > q for p, q in zip(vals, vals[1:]))
        bad += any(M(vals[n]) > n for n in range(M(0), 201))
        bad += vals != [waiting_by_search(M, n) for n in range(201)]
    W = waiting_function(lambda k: 2 * k)
    bad += [W(n) for n in range(201)] != [n // 2 for n in range(201)]
    for _ in range(100):
        x = random_total_real(rng)
        bad += probe_equal(x.chain, markov_to_total(total_to_markov(x)).chain, 12) != ConfirmedUpTo(12)
    report(8, "waiting function laws and Markov round trip", bad == 0, f"{bad} failures")


def test_9_extension_of_doubling(report):
    rng = random.Random(9)
    g = extend_nondiscontinuous(lambda q: exact(q) + exact(q), lambda a: 3 * a.length)
    budget = 1 << 14
    bad, deepest = 0, 0
    t = time.perf_counter()
    inputs = [(Fraction(1), None)]
    while len(inputs) < 20:
        c = Fraction(rng.randint(-56, 64), 64)
        if rng.random() < 0.5:
            inputs.append((c, None))
        else:
            inputs.append((None, (rng.randint(1, 3), c)))
    for q, irr in inputs:
        if q is not None:
            x = Real.from_function(lambda n, q=q: IntervalQ(q - Fraction(1, 2 ** n), q + Fraction(1, 2 ** n)))
        else:
            # sqrt(k)/4 + c stays in a range where the guards come early
            p, c = irr
            r = sqrt(p)
            x = Real.from_function(lambda n, r=r, c=c: (lambda v: IntervalQ(v.lo / 4 + c, v.hi / 4 + c))(refine(r, n)))
        y = apply(g, x.chain)
        i = refine_index(y, 6, budget)
        deepest = max(deepest, i)
        v = y[i]
        bad += v.length > Fraction(1, 64)
        if q is not None:
            bad += not (v.lo <= 2 * q <= v.hi)
    rejected = False
    g_small = extend_nondiscontinuous(lambda q: exact(q) + exact(q), lambda a: a.length / 10)
    try:
        for n in range(200):
            g_small[n]
    except InconsistentError:
        rejected = True
    elapsed = time.perf_counter() - t
    report(9, "extension of 2x with tolerance 3*length", bad == 0 and rejected,
           f"20 inputs, deepest level {deepest}, too-small tolerance rejected: {rejected}, {elapsed:.1f}s")
