"""Envelopes, weakly p-closures and weakly radicals of submodules of free
modules over Q[x_1, ..., x_n]."""

from .algebra import (
    colon_ideal_into_ideal,
    colon_vector,
    ideal_module_product,
    ideal_times_module,
    intersect,
    stable_quotient,
    sum_modules,
)
from .decomposition import (
    Decomposition,
    DecompositionOracle,
    PrimaryComponent,
    closure,
    closure_by_colon,
    isolated_primes,
    minimal_primes_monomial,
    monomial_primary_decomposition,
    quasi_primary_split,
    verify_decomposition,
)
from .envelope import (
    certify_weakly_prime,
    envelope,
    find_weak_counterexample,
    iterate_envelope,
    semiprime_spot_check,
    weakly_closure,
    weakly_radical,
)
from .errors import (
    ContextMismatch,
    EnvradError,
    IterationLimit,
    OracleMiss,
    ParseError,
    PreconditionError,
)
from .groebner import Ideal, Submodule, buchberger
from .module import FreeModuleContext, ModuleVector
from .parser import parse_session, print_session
from .poly import Polynomial, RingContext

__version__ = "0.1.0"
