# %% [markdown]
# Extending a function given on rationals
#
# f(q) = 2q is known on rationals only.  With a tolerance of three times the
# guard length, each level of g joins one more step α↘f(mid α)±ω(α).  The
# limit of g extends f to every real.

# %%
from fractions import Fraction

from exactreal import exact, iv, refine_index, sqrt
from exactreal.funcspace import apply, extend_nondiscontinuous
from exactreal.reals import Real

g = extend_nondiscontinuous(lambda q: exact(q) + exact(q), lambda a: 3 * a.length)
print(g[3])

# %% Apply g to sqrt(2)/2 and read off an enclosure of sqrt(2).
r = sqrt(2).by_precision()
x = Real.from_function(lambda n: iv(r[n].lo / 2, r[n].hi / 2))
y = apply(g, x.chain)
n = refine_index(y, 6, 1 << 14)
print(n, y[n], float(y[n].lo), float(y[n].hi))

# %% A tolerance that is too tight is caught while building the levels.
from exactreal.errors import InconsistentError

tight = extend_nondiscontinuous(lambda q: exact(2 * q), lambda a: a.length / 10)
try:
    tight[5]
except InconsistentError as exc:
    print("level", exc.level, "->", exc)
