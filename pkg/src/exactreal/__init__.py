"""Exact real arithmetic built from rational intervals.

Reals are increasing chains of rational intervals.  The package provides
the underlying order theory (predomain bases and their completion), real
arithmetic with certified enclosures, Newton square roots, and step
functions that extend real functions to the whole interval domain.
"""

from .completion import (Chain, ConfirmedUpTo, Inconclusive, Refuted, basic_open_member,
                         embed, leq_probe, probe_equal, sup_finite, sup_increasing)
from .errors import (BudgetExhausted, CertificateError, DomainError, InconsistentError,
                     MonotonicityError, NotWayBelowError, UnsupportedOperation)
from .funcspace import (NondiscontinuityModulus, SingleStep, StepFunction, StepSpace, apply,
                        approx_step, eval_step, extend_nondiscontinuous, from_base_function,
                        step_leq, validate_step)
from .interval import IQ, IntervalQ, iv
from .newton import sqrt, sqrt_table
from .predomain import BOTTOM, CoproductBase, FlatBase, LiftedBase, ProductBase, SeqBase
from .reals import (CauchyReal, ClassicalNullSeq, MarkovReal, Real, cauchy_to_markov, exact,
                    markov_to_total, nat_scale, nonneg_probe, real_abs, refine, refine_index,
                    total_to_markov, waiting_function)

__version__ = "0.1.0"
