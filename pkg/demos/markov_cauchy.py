# %% [markdown]
# From a Cauchy modulus to interval bounds
#
# A Cauchy sequence with modulus M can be turned into a rational sequence
# with an explicit error bound.  The waiting function W inverts M, and the
# error at step n is 2^-W(n).

# %%
from fractions import Fraction

from exactreal.reals import (CauchyReal, cauchy_to_markov, markov_to_total,
                             total_to_markov, waiting_function)
from exactreal import sqrt, probe_equal

W = waiting_function(lambda k: 2 * k)
print([W(n) for n in range(12)])

# %% Partial sums of 1/2^k converge to 2; M(k) = k + 1 works as a modulus.
partial = lambda n: 2 - Fraction(1, 2 ** n)
m = cauchy_to_markov(CauchyReal(partial, lambda k: k + 1))
for n in (0, 4, 8, 16):
    print(n, m.seq(n), m.modulus(n))

# %% Interval reals and sequences with error bounds describe the same numbers.
# Newton terms grow fast, so walk sqrt(5) by precision rather than by step.
x = sqrt(5).by_precision()
back = markov_to_total(total_to_markov(x))
print(back[3], probe_equal(x.chain, back.chain, 12))
