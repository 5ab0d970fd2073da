"""Vectors in the free module R^n.

Terms are keyed by ``(position, exponents)`` with a 0-based position, so the
basis vector ``e1`` is position 0.  The module order is position over term
with ``e1`` largest, ties broken by degrevlex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import NamedTuple

from .errors import ContextMismatch
from .poly import Polynomial, RingContext, degrevlex_key, format_terms, mono_mul


@dataclass(frozen=True)
class FreeModuleContext:
    ring: RingContext
    rank: int

    def __post_init__(self):
        if not isinstance(self.rank, int) or self.rank < 1:
            raise ValueError("rank must be a positive integer")

    def basis(self, i):
        """The basis vector e_{i+1}."""
        if not 0 <= i < self.rank:
            raise IndexError(f"basis index {i + 1} out of range for rank {self.rank}")
        return ModuleVector(self, {(i, self.ring.one_exps()): 1})

    def zero(self):
        return ModuleVector(self, {})

    def ideal_context(self):
        return FreeModuleContext(self.ring, 1)


def pot_key(term):
    pos, exps = term
    return (-pos, degrevlex_key(exps))


class ModuleTerm(NamedTuple):
    monomial: tuple
    coefficient: Fraction
    position: int


def module_term_compare(a, b):
    """Compare two module terms in the position-over-term order (coefficients ignored)."""
    ka = pot_key((a.position, tuple(a.monomial)))
    kb = pot_key((b.position, tuple(b.monomial)))
    return (ka > kb) - (ka < kb)


class ModuleVector:
    """Immutable element of R^n stored as a sparse term map."""

    __slots__ = ("ctx", "_terms", "_hash")

    def __init__(self, ctx, terms=None):
        n = ctx.ring.num_vars
        clean = {}
        for (pos, exps), c in (terms or {}).items():
            exps = tuple(exps)
            if not 0 <= pos < ctx.rank:
                raise IndexError(f"basis index {pos + 1} out of range for rank {ctx.rank}")
            if len(exps) != n:
                raise ValueError("exponent vector has the wrong length")
            c = Fraction(c)
            if c:
                clean[(pos, exps)] = clean.get((pos, exps), 0) + c
        self.ctx = ctx
        self._terms = _sorted({k: v for k, v in clean.items() if v})
        self._hash = None

    @classmethod
    def _raw(cls, ctx, terms):
        v = cls.__new__(cls)
        v.ctx = ctx
        v._terms = _sorted(terms)
        v._hash = None
        return v

    @classmethod
    def from_components(cls, ctx, components):
        components = list(components)
        if len(components) != ctx.rank:
            raise ContextMismatch(f"expected {ctx.rank} components, got {len(components)}")
        terms = {}
        for pos, p in enumerate(components):
            if isinstance(p, Rational):
                p = ctx.ring.const(p)
            if p.ring != ctx.ring:
                raise ContextMismatch("component over a different ring")
            for exps, c in p.items():
                terms[(pos, exps)] = c
        return cls._raw(ctx, terms)

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    @property
    def components(self):
        parts = [{} for _ in range(self.ctx.rank)]
        for (pos, exps), c in self._terms.items():
            parts[pos][exps] = c
        return tuple(Polynomial._raw(self.ctx.ring, t) for t in parts)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def leading_term(self):
        if not self._terms:
            return None
        (pos, exps), c = next(iter(self._terms.items()))
        return ModuleTerm(exps, c, pos)

    def is_term(self):
        return len(self._terms) == 1

    def _check(self, other):
        if not isinstance(other, ModuleVector):
            return False
        if other.ctx != self.ctx:
            raise ContextMismatch("vectors in different free modules")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        return ModuleVector._raw(self.ctx, _axpy(self._terms, 1, other._terms))

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return ModuleVector._raw(self.ctx, _axpy(self._terms, -1, other._terms))

    def __neg__(self):
        return ModuleVector._raw(self.ctx, {t: -c for t, c in self._terms.items()})

    def __rmul__(self, f):
        if isinstance(f, Rational):
            f = self.ctx.ring.const(f)
        if not isinstance(f, Polynomial):
            return NotImplemented
        if f.ring != self.ctx.ring:
            raise ContextMismatch("scalar over a different ring")
        out = {}
        for m, a in f.items():
            for (pos, exps), b in self._terms.items():
                key = (pos, mono_mul(m, exps))
                s = out.get(key, 0) + a * b
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return ModuleVector._raw(self.ctx, out)

    __mul__ = __rmul__

    def __eq__(self, other):
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return self.ctx == other.ctx and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, tuple(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_vector(self.ctx, self._terms)

    def __repr__(self):
        return f"ModuleVector({str(self)!r})"


def vector_arith(a, b, op):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    raise ValueError(f"unknown operation {op!r}")


def scalar_mul(f, v):
    return f * v


def format_vector(ctx, terms):
    fm = ctx.ring.format_monomial
    pieces = []
    for (pos, exps), c in terms.items():
        mono = fm(exps)
        basis = f"e{pos + 1}"
        pieces.append((c, f"{mono}*{basis}" if mono else basis))
    return format_terms(pieces)


def _sorted(terms):
    return dict(sorted(terms.items(), key=lambda kv: pot_key(kv[0]), reverse=True))


def _axpy(x, a, y):
    out = dict(x)
    for t, c in y.items():
        s = out.get(t, 0) + a * c
        if s:
            out[t] = s
        else:
            out.pop(t, None)
    return out
