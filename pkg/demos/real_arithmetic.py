# %% [markdown]
# Reals as shrinking rational intervals
#
# A real is an increasing chain of intervals.  Arithmetic works term by
# term, and `refine` finds the first term that is narrow enough.

# %%
from fractions import Fraction

from exactreal import ConfirmedUpTo, exact, iv, nonneg_probe, real_abs, refine, sqrt
from exactreal.reals import Real

x = sqrt(2) + -sqrt(3)
print("sqrt 2 - sqrt 3 within 2^-40:", refine(x, 40))

# %% The absolute value is computed endpoint-wise.
print(refine(real_abs(x), 20))

# %% Comparisons can only be confirmed up to a depth.
print(nonneg_probe(sqrt(3) + -sqrt(2), 20, 64))
print(nonneg_probe(exact(-1), 2, 10))

# %% A chain without width information needs a budget.
slow = Real.from_function(lambda n: iv(Fraction(1, 3) - Fraction(1, n + 1), Fraction(1, 3) + Fraction(1, n + 1)))
try:
    refine(slow, 12, budget=100)
except Exception as exc:
    print(type(exc).__name__, exc)
print(refine(slow, 6, budget=200))
