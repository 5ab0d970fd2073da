"""Envelopes, iterated envelopes, weakly p-closures and the weakly radical."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations

from .algebra import (
    colon_ideal_into_ideal,
    ideal_module_product,
    ideal_times_module,
    intersect_all,
    sum_modules,
)
from .decomposition import (
    DEFAULT_KMAX,
    DecompositionOracle,
    minimal_primes_monomial,
    verify_decomposition,
)
from .errors import IterationLimit, PreconditionError
from .groebner import Ideal, Submodule
from .module import ModuleVector
from .poly import degrevlex_key

log = logging.getLogger(__name__)

MAX_COMPONENTS = 12
DEFAULT_MAX_ITER = 32


@dataclass(frozen=True)
class EnvelopeTrace:
    input: Submodule
    decomposition: object
    radical: Ideal
    radical_term: Submodule
    summands: tuple  # ((T as 1-based indices, label, Submodule), ...)
    result: Submodule


@dataclass(frozen=True)
class IterationResult:
    chain: tuple
    fixed_point: Submodule
    steps: int


@dataclass(frozen=True)
class WeaklyPrimeVerdict:
    status: str  # "certified-weakly-prime" | "counterexample" | "unknown"
    witness: tuple | None = None  # (a, b, m)


@dataclass(frozen=True)
class SemiprimeCheck:
    status: str  # "no-violation" | "witness"
    witness: tuple | None = None  # (r, m, k)


def _subset_label(D, T):
    names = [c.label or f"Q{i + 1}" for i, c in enumerate(D.components)]
    primes = "∩".join(f"p{i + 1}" for i in T)
    rest = [i for i in range(len(names)) if i not in T]
    mods = "∩".join(names[i] for i in rest)
    return f"({primes})({mods})"


def envelope(D, check=True, kmax=DEFAULT_KMAX, max_components=MAX_COMPONENTS):
    """The submodule generated by the envelope of ``D.target``.

    Sums N, (∩ p_i)M and (∩_{i∈T} p_i)(∩_{i∉T} Q_i) over every nonempty proper
    subset T of the components.
    """
    k = len(D.components)
    if k > max_components:
        raise PreconditionError(
            f"{k} components give {2 ** k - 2} subset products; the limit is {max_components}"
        )
    if check:
        report = verify_decomposition(D, kmax)
        if not report.valid:
            raise PreconditionError(
                "invalid decomposition: " + ", ".join(report.failed_checks())
            )
    ctx = D.ctx
    prime_meets = {}
    module_meets = {}

    def primes_of(T):
        if T not in prime_meets:
            prime_meets[T] = intersect_all([D.components[i].p for i in T])
        return prime_meets[T]

    def modules_of(T):
        if T not in module_meets:
            module_meets[T] = intersect_all([D.components[i].Q for i in T], ctx)
        return module_meets[T]

    everything = tuple(range(k))
    radical = primes_of(everything)
    radical_term = ideal_times_module(radical, ctx)
    summands = []
    for size in range(1, k):
        for T in combinations(everything, size):
            rest = tuple(i for i in everything if i not in T)
            prod = ideal_module_product(primes_of(T), modules_of(rest))
            summands.append((tuple(i + 1 for i in T), _subset_label(D, T), prod))
    gens = list(D.target.gb) + list(radical_term.gb)
    for _, _, s in summands:
        gens.extend(s.gb)
    result = Submodule(ctx, gens)
    return EnvelopeTrace(D.target, D, Ideal.from_submodule(radical), radical_term,
                         tuple(summands), result)


def iterate_envelope(N, oracle=None, max_iter=DEFAULT_MAX_ITER):
    """Iterate the envelope until two consecutive submodules agree (UE_M(N))."""
    oracle = oracle or DecompositionOracle()
    chain = [N]
    current = N
    for step in range(1, max_iter + 1):
        if current.is_full():
            nxt = current
        else:
            nxt = envelope(oracle.decompose(current), check=False).result
        if not current.leq(nxt):
            raise AssertionError("envelope chain is not ascending")
        chain.append(nxt)
        if nxt == current:
            log.debug("envelope iteration fixed after %d steps", step)
            return IterationResult(tuple(chain), nxt, step)
        current = nxt
    raise IterationLimit(f"no envelope fixed point within {max_iter} iterations")


def weakly_closure(N, p, oracle=None, max_iter=DEFAULT_MAX_ITER, return_iteration=False):
    """wcl_p(N + pM) for a prime p containing (N:M)."""
    if not colon_ideal_into_ideal(N).leq(p):
        raise PreconditionError(f"(N:M) is not contained in {p}")
    W = sum_modules(N, ideal_times_module(p, N.ctx))
    if colon_ideal_into_ideal(W) != p:
        raise PreconditionError(f"(N + pM : M) differs from {p}; is it really prime?")
    it = iterate_envelope(W, oracle, max_iter)
    return it if return_iteration else it.fixed_point


def weakly_radical(N, min_primes=None, oracle=None, max_iter=DEFAULT_MAX_ITER):
    """Intersection of wcl_p(N + pM) over the minimal primes of (N:M)."""
    colon = colon_ideal_into_ideal(N)
    if min_primes is None:
        if not colon.is_monomial():
            raise PreconditionError(
                f"(N:M) = {colon} is not monomial; supply its minimal primes explicitly"
            )
        min_primes = minimal_primes_monomial(colon)
    else:
        for p in min_primes:
            if not colon.leq(p):
                raise PreconditionError(f"(N:M) is not contained in {p}")
    closures = [weakly_closure(N, p, oracle, max_iter) for p in min_primes]
    return intersect_all(closures, N.ctx)


def primes_form_chain(primes):
    return all(a.leq(b) or b.leq(a) for a, b in combinations(primes, 2))


def certify_weakly_prime(D):
    """Certified when the primes form a chain and the envelope is N itself.

    The condition is sufficient only, so a failure yields "unknown".
    """
    if primes_form_chain(D.primes) and envelope(D, check=False).result == D.target:
        return WeaklyPrimeVerdict("certified-weakly-prime")
    return WeaklyPrimeVerdict("unknown")


def _monomials_up_to(nvars, bound):
    out = []

    def rec(prefix, left):
        if len(prefix) == nvars:
            out.append(tuple(prefix))
            return
        for e in range(left + 1):
            rec(prefix + [e], left - e)

    rec([], bound)
    out.sort(key=degrevlex_key)
    return out


class _TermMembership:
    def __init__(self, N):
        self.N = N
        self.cache = {}

    def __call__(self, pos, exps):
        key = (pos, exps)
        if key not in self.cache:
            self.cache[key] = self.N.contains(ModuleVector._raw(self.N.ctx, {key: 1}))
        return self.cache[key]


def find_weak_counterexample(N, degree_bound):
    """Search monomials a, b and terms m of degree <= degree_bound with
    abm ∈ N, am ∉ N, bm ∉ N.  Enumeration is ascending, a then b then m."""
    if degree_bound < 1:
        raise PreconditionError("degree bound must be at least 1")
    ring = N.ctx.ring
    monos = _monomials_up_to(ring.num_vars, degree_bound)
    terms = [(pos, m) for m in monos for pos in range(N.ctx.rank)]
    inside = _TermMembership(N)
    mul = lambda u, v: tuple(x + y for x, y in zip(u, v))  # noqa: E731
    for a in monos:
        for b in monos:
            ab = mul(a, b)
            for pos, m in terms:
                if inside(pos, mul(a, m)) or inside(pos, mul(b, m)):
                    continue
                if inside(pos, mul(ab, m)):
                    witness = (ring.monomial(a), ring.monomial(b),
                               ModuleVector._raw(N.ctx, {(pos, m): 1}))
                    return WeaklyPrimeVerdict("counterexample", witness)
    return WeaklyPrimeVerdict("unknown")


def semiprime_spot_check(N, degree_bound):
    """Search r, m of degree <= degree_bound and 2 <= k <= degree_bound with
    r^k m ∈ N but r m ∉ N."""
    if degree_bound < 1:
        raise PreconditionError("degree bound must be at least 1")
    if N.is_full():
        raise PreconditionError("semiprimality is defined for proper submodules only")
    ring = N.ctx.ring
    monos = _monomials_up_to(ring.num_vars, degree_bound)
    terms = [(pos, m) for m in monos for pos in range(N.ctx.rank)]
    inside = _TermMembership(N)
    for r in monos[1:]:
        for pos, m in terms:
            rm = tuple(x + y for x, y in zip(r, m))
            if inside(pos, rm):
                continue
            for k in range(2, degree_bound + 1):
                rkm = tuple(k * x + y for x, y in zip(r, m))
                if inside(pos, rkm):
                    witness = (ring.monomial(r), ModuleVector._raw(N.ctx, {(pos, m): 1}), k)
                    return SemiprimeCheck("witness", witness)
    return SemiprimeCheck("no-violation")
