"""Buchberger's algorithm for submodules of R^n.

The engine works on raw term maps ``{(position, exponents): Fraction}`` and a
term-order key function, so the same code serves the position-over-term
order of the public API and the internal elimination orders used for
intersections.
"""

from __future__ import annotations

import heapq

from .errors import ContextMismatch
from .module import FreeModuleContext, ModuleVector, pot_key
from .poly import Polynomial, mono_div, mono_divides, mono_lcm, mono_mul


def _monic(v, lead):
    c = v[lead]
    if c == 1:
        return v
    return {t: a / c for t, a in v.items()}


def reduce_raw(v, basis, key):
    """Full normal form of ``v`` modulo ``basis``, a list of ``(lead, monic vector)``."""
    v = dict(v)
    rem = {}
    while v:
        t = max(v, key=key)
        c = v.pop(t)
        pos, exps = t
        for lead, g in basis:
            if lead[0] == pos and mono_divides(lead[1], exps):
                q = mono_div(exps, lead[1])
                for (p2, e2), a in g.items():
                    if p2 == pos and e2 == lead[1]:
                        continue
                    k = (p2, mono_mul(q, e2))
                    s = v.get(k, 0) - c * a
                    if s:
                        v[k] = s
                    else:
                        v.pop(k, None)
                break
        else:
            rem[t] = c
    return rem


def _spoly(f, lf, g, lg):
    lcm = mono_lcm(lf[1], lg[1])
    qf, qg = mono_div(lcm, lf[1]), mono_div(lcm, lg[1])
    out = {}
    for (p, e), a in f.items():
        out[(p, mono_mul(qf, e))] = a
    for (p, e), a in g.items():
        k = (p, mono_mul(qg, e))
        s = out.get(k, 0) - a
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def interreduce(basis, key):
    """Turn a Groebner basis into the reduced one, sorted by descending lead."""
    basis = sorted(basis, key=lambda lg: key(lg[0]))
    kept = []
    for lead, g in basis:
        if not any(l2[0] == lead[0] and mono_divides(l2[1], lead[1]) for l2, _ in kept):
            kept.append((lead, g))
    out = []
    for i, (lead, g) in enumerate(kept):
        others = kept[:i] + kept[i + 1:]
        r = reduce_raw(g, others, key)
        out.append((lead, _monic(r, lead)))
    out.sort(key=lambda lg: key(lg[0]), reverse=True)
    return out


def groebner_raw(gens, key):
    """Reduced Groebner basis of raw generators as a list of ``(lead, monic vector)``.

    Pairs are processed smallest lcm first.  Pairs with leads in different
    positions are never formed, and Buchberger's chain criterion is applied.
    """
    G = []
    pending = set()
    heap = []

    def add(v):
        lead = max(v, key=key)
        v = _monic(v, lead)
        n = len(G)
        G.append((lead, v))
        for i, (li, _) in enumerate(G[:-1]):
            if li[0] != lead[0]:
                continue
            lcm = (lead[0], mono_lcm(li[1], lead[1]))
            pending.add((i, n))
            heapq.heappush(heap, (key(lcm), i, n))

    for g in gens:
        if g:
            add(dict(g))
    while heap:
        _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        li, gi = G[i]
        lj, gj = G[j]
        lcm = mono_lcm(li[1], lj[1])
        if _chain_skip(G, pending, i, j, li[0], lcm):
            continue
        r = reduce_raw(_spoly(gi, li, gj, lj), G, key)
        if r:
            add(r)
    return interreduce(G, key)


def _chain_skip(G, pending, i, j, pos, lcm):
    for k, (lk, _) in enumerate(G):
        if k == i or k == j or lk[0] != pos or not mono_divides(lk[1], lcm):
            continue
        if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
            return True
    return False


class Submodule:
    """A finitely generated submodule of R^n with its reduced Groebner basis.

    The basis is computed at construction, so instances are immutable and
    safe to share.  Equality compares reduced bases term for term.
    """

    def __init__(self, ctx, generators=()):
        gens = tuple(generators)
        for g in gens:
            if g.ctx != ctx:
                raise ContextMismatch("generator lives in a different free module")
        self._setup(ctx, gens, groebner_raw([g._terms for g in gens], pot_key))

    def _setup(self, ctx, gens, basis):
        self.ctx = ctx
        self.generators = gens
        self._basis = basis
        self.gb = tuple(ModuleVector._raw(ctx, g) for _, g in basis)
        self._key = tuple(tuple(g._terms.items()) for g in self.gb)

    @classmethod
    def _make(cls, ctx, basis, generators=None):
        obj = cls.__new__(cls)
        gb_vectors = tuple(ModuleVector._raw(ctx, g) for _, g in basis)
        obj._setup(ctx, tuple(generators) if generators is not None else gb_vectors, basis)
        return obj

    @classmethod
    def from_groebner(cls, ctx, raw_gb):
        """Build from a raw list that is already a Groebner basis for the POT order."""
        basis = [(max(g, key=pot_key), g) for g in raw_gb if g]
        return cls._make(ctx, interreduce(basis, pot_key))

    @classmethod
    def full(cls, ctx):
        return cls(ctx, [ctx.basis(i) for i in range(ctx.rank)])

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, [])

    @property
    def key(self):
        """Canonical hashable form (the reduced basis)."""
        return self._key

    def normal_form(self, v):
        if v.ctx != self.ctx:
            raise ContextMismatch("vector lives in a different free module")
        return ModuleVector._raw(self.ctx, reduce_raw(v._terms, self._basis, pot_key))

    def contains(self, v):
        return not reduce_raw(v._terms, self._basis, pot_key)

    def __contains__(self, v):
        return self.contains(v)

    def leq(self, other):
        self._same(other)
        return all(other.contains(g) for g in self.gb)

    __le__ = leq

    def __ge__(self, other):
        return other.leq(self)

    def __lt__(self, other):
        return self.leq(other) and self != other

    def _same(self, other):
        if self.ctx != other.ctx:
            raise ContextMismatch("submodules of different free modules")

    def __eq__(self, other):
        if not isinstance(other, Submodule):
            return NotImplemented
        return self.ctx == other.ctx and self._key == other._key

    def __hash__(self):
        return hash((self.ctx, self._key))

    def is_zero(self):
        return not self._basis

    def is_full(self):
        one = self.ctx.ring.one_exps()
        return {lead for lead, _ in self._basis} == {(i, one) for i in range(self.ctx.rank)}

    def is_monomial(self):
        return all(len(g) == 1 for _, g in self._basis)

    def lead_terms(self):
        return [lead for lead, _ in self._basis]

    def __str__(self):
        return "\n".join(str(g) for g in self.gb) if self.gb else "0"

    def __repr__(self):
        inner = ", ".join(str(g) for g in self.gb)
        return f"{type(self).__name__}<{inner}>"


class Ideal(Submodule):
    """An ideal of R, stored as a rank-1 submodule."""

    def __init__(self, ring, polys=()):
        ctx = FreeModuleContext(ring, 1)
        vecs = []
        for p in polys:
            if not isinstance(p, Polynomial) or p.ring != ring:
                raise ContextMismatch("ideal generator over a different ring")
            vecs.append(ModuleVector.from_components(ctx, [p]))
        super().__init__(ctx, vecs)

    @classmethod
    def from_submodule(cls, sub):
        if sub.ctx.rank != 1:
            raise ContextMismatch("only rank-1 submodules are ideals")
        return cls._make(sub.ctx, sub._basis, sub.generators)

    @classmethod
    def unit(cls, ring):
        return cls(ring, [ring.const(1)])

    @property
    def ring(self):
        return self.ctx.ring

    @property
    def polys(self):
        return tuple(g.components[0] for g in self.gb)

    def contains_poly(self, f):
        return self.contains(ModuleVector.from_components(self.ctx, [f]))

    def reduce_poly(self, f):
        return self.normal_form(ModuleVector.from_components(self.ctx, [f])).components[0]

    def is_unit(self):
        return self.is_full()

    def __str__(self):
        return "ideal(" + ", ".join(str(p) for p in self.polys) + ")" if self.gb else "ideal(0)"


def buchberger(gens):
    """Reduced Groebner basis of a list of vectors (all in one free module)."""
    gens = list(gens)
    if not gens:
        return []
    ctx = gens[0].ctx
    return list(Submodule(ctx, gens).gb)


def normal_form(v, N):
    return N.normal_form(v)


def contains(N, v):
    return N.contains(v)


def submodule_eq(N, L):
    N._same(L)
    return N == L


def submodule_leq(N, L):
    return N.leq(L)


__all__ = [
    "Ideal",
    "Submodule",
    "buchberger",
    "contains",
    "groebner_raw",
    "interreduce",
    "normal_form",
    "reduce_raw",
    "submodule_eq",
    "submodule_leq",
]
