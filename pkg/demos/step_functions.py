# %% [markdown]
# Step functions on intervals
#
# A single step b↘c returns c on inputs strictly inside b.  Joins of steps
# are valid when overlapping guards carry overlapping values, and the order
# between two step functions is decided exactly.

# %%
from exactreal import IQ, iv
from exactreal.funcspace import SingleStep, StepSpace, step_leq, validate_step
from exactreal.errors import InconsistentError

space = StepSpace(IQ, IQ)
s = validate_step([SingleStep(iv(0, 4), iv(1, 3)), SingleStep(iv(1, 5), iv(2, 3))], space)
print(s(iv(2, 3)), s(iv(0, 4)))

# %% Values must agree where guards meet.
try:
    validate_step([SingleStep(iv(0, 2), iv(0, 1)), SingleStep(iv(1, 3), iv(2, 3))], space)
except InconsistentError as exc:
    print("rejected:", exc)

# %% Two steps that always fire together act like one step with the
# joined value, so these two functions are equal.
t = validate_step([SingleStep(iv(0, 4), iv(0, 2)), SingleStep(iv(0, 4), iv(2, 4))], space)
u = validate_step([SingleStep(iv(0, 4), iv(2, 2))], space)
print(step_leq(u, t), step_leq(t, u))

# %% The decision rests on separated sets in the domain.
from exactreal.interval import separated

print(separated([iv(0, 2)], [iv(1, 3)]))
print(separated([iv(0, 2)], [iv(-1, 3)]))
