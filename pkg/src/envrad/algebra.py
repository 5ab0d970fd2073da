"""Sum, intersection, colon, saturation, annihilator and ideal-module products."""

from __future__ import annotations

import logging
from functools import reduce

from .errors import ContextMismatch, PreconditionError
from .groebner import Ideal, Submodule, groebner_raw
from .module import ModuleVector
from .poly import Polynomial, degrevlex_key, mono_div, mono_divides, mono_mul

log = logging.getLogger(__name__)


def _check(N, L):
    if N.ctx != L.ctx:
        raise ContextMismatch("submodules of different free modules")


def _wrap(template, sub):
    if isinstance(template, Ideal):
        return Ideal.from_submodule(sub)
    return sub


def sum_modules(N, L):
    _check(N, L)
    return _wrap(N, Submodule(N.ctx, N.gb + L.gb))


def _elim_key(term):
    # auxiliary variable t sits at exponent index 0 and dominates everything
    pos, exps = term
    return (exps[0], -pos, degrevlex_key(exps[1:]))


def intersect(N, L):
    """N ∩ L from a Groebner basis of t*N + (1 - t)*L, eliminating t."""
    _check(N, L)
    if N.is_full() or L.is_zero():
        return L
    if L.is_full() or N.is_zero():
        return N
    gens = []
    for g in N.gb:
        gens.append({(p, (1,) + e): c for (p, e), c in g.items()})
    for h in L.gb:
        v = {}
        for (p, e), c in h.items():
            v[(p, (0,) + e)] = c
            v[(p, (1,) + e)] = -c
        gens.append(v)
    basis = groebner_raw(gens, _elim_key)
    kept = [{(p, e[1:]): c for (p, e), c in g.items()} for lead, g in basis if lead[1][0] == 0]
    return _wrap(N, Submodule.from_groebner(N.ctx, kept))


def intersect_all(modules, ctx=None):
    modules = list(modules)
    if not modules:
        if ctx is None:
            raise ValueError("empty intersection needs an ambient context")
        return Submodule.full(ctx)
    return reduce(intersect, modules)


def exact_divide(a, f):
    """Quotient of ``a`` by ``f``; the division must be exact."""
    ring = a.ring
    rem = dict(a.terms)
    lm, lc = f.leading_monomial(), f.leading_coefficient()
    quot = {}
    while rem:
        m = max(rem, key=degrevlex_key)
        if not mono_divides(lm, m):
            raise AssertionError(f"{f} does not divide {a}")
        q = mono_div(m, lm)
        c = rem[m] / lc
        quot[q] = c
        for fm, fc in f.items():
            k = mono_mul(q, fm)
            s = rem.get(k, 0) - c * fc
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    return Polynomial(ring, quot)


def colon_vector(N, f):
    """N : f = {m in M : f m in N}."""
    if not isinstance(f, Polynomial) or f.ring != N.ctx.ring:
        raise ContextMismatch("colon element must be a polynomial over the module's ring")
    if f.is_zero():
        raise PreconditionError("cannot take the colon by the zero polynomial")
    ctx = N.ctx
    if f.total_degree() == 0:
        return N
    fM = Submodule(ctx, [f * ctx.basis(i) for i in range(ctx.rank)])
    meet = intersect(N, fM)
    quotients = [
        ModuleVector.from_components(ctx, [exact_divide(c, f) for c in g.components])
        for g in meet.gb
    ]
    return _wrap(N, Submodule(ctx, quotients))


def positional_ideal(N, i):
    """The ideal {r in R : r e_i in N}."""
    ctx = N.ctx
    meet = intersect(N, Submodule(ctx, [ctx.basis(i)]))
    return Ideal(ctx.ring, [g.components[i] for g in meet.gb])


def colon_ideal_into_ideal(N):
    """(N : M) = {r in R : r M ⊆ N}."""
    ring = N.ctx.ring
    if N.is_full():
        return Ideal.unit(ring)
    return reduce(intersect, [positional_ideal(N, i) for i in range(N.ctx.rank)])


annihilator = colon_ideal_into_ideal


def stable_quotient(N, I, with_steps=False):
    """N : I^∞ by iterating the colon by every generator of I until it stabilises."""
    if I.ctx.ring != N.ctx.ring:
        raise ContextMismatch("ideal over a different ring")
    if I.is_zero():
        raise PreconditionError("cannot saturate by the zero ideal")
    gens = Ideal.from_submodule(I).polys if I.ctx.rank == 1 else None
    if gens is None:
        raise ContextMismatch("saturation needs an ideal")
    current = N
    steps = 0
    while True:
        steps += 1
        nxt = intersect_all([colon_vector(current, f) for f in gens])
        if nxt == current:
            break
        current = nxt
    log.debug("stable quotient settled after %d colon steps", steps)
    return (current, steps) if with_steps else current


def ideal_module_product(I, L):
    """The submodule I·L, generated by products of basis elements."""
    if I.ctx.ring != L.ctx.ring:
        raise ContextMismatch("ideal over a different ring")
    polys = Ideal.from_submodule(I).polys
    return _wrap(L, Submodule(L.ctx, [f * v for f in polys for v in L.gb]))


def ideal_times_module(I, ctx):
    """I·M for the whole free module M."""
    return ideal_module_product(I, Submodule.full(ctx))


def ideal_power(I, k):
    out = Ideal.unit(I.ring)
    for _ in range(k):
        out = ideal_module_product(I, out)
    return out
