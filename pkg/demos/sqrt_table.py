# %% [markdown]
# Newton enclosures of sqrt(2)
#
# Each Newton step from 1 gives an upper bound u_n and a lower bound 2/u_n.
# The width of [2/u_n, u_n] falls quadratically.  A proof that only knows
# the widths halve can promise much less; the second column shows that
# promise.

# %%
from exactreal import sqrt, sqrt_table

for row in sqrt_table(2, 5):
    print(f"{row.iteration}  width {row.width_decimal:>8}   halving bound {row.modulus_decimal}")

# %% Exact endpoints are kept as rationals.
x = sqrt(2)
print(x[1], x[2])

# %% Six iterations are plenty for 100 bits.
from exactreal import refine, refine_index

print(refine_index(x, 100), float(refine(x, 100).lo))
