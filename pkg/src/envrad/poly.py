"""Sparse multivariate polynomials over Q.

Monomials are plain tuples of exponents.  The only supported monomial order
is graded reverse lexicographic, with variables ranked in declaration order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .errors import ContextMismatch

Monomial = tuple  # tuple[int, ...]

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@lru_cache(maxsize=None)
def degrevlex_key(exps):
    """Sort key for a monomial; a larger key means a larger monomial."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


def monomial_compare(a, b):
    """Return 1, 0 or -1 as ``a`` is larger than, equal to or smaller than ``b``."""
    if len(a) != len(b):
        raise ContextMismatch("monomials live in different rings")
    ka, kb = degrevlex_key(a), degrevlex_key(b)
    return (ka > kb) - (ka < kb)


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mono_div(b, a):
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


@dataclass(frozen=True)
class RingContext:
    """The ring Q[x_1, ..., x_n] with a fixed variable order."""

    variable_names: tuple
    order: str = "degrevlex"

    def __post_init__(self):
        names = tuple(self.variable_names)
        object.__setattr__(self, "variable_names", names)
        if not names:
            raise ValueError("a ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for name in names:
            if not _IDENT.match(name):
                raise ValueError(f"bad variable name {name!r}")
        if self.order != "degrevlex":
            raise ValueError(f"unsupported monomial order {self.order!r}")

    @property
    def num_vars(self):
        return len(self.variable_names)

    def one_exps(self):
        return (0,) * self.num_vars

    def var(self, name):
        i = self.variable_names.index(name)
        exps = [0] * self.num_vars
        exps[i] = 1
        return Polynomial(self, {tuple(exps): 1})

    def gens(self):
        return [self.var(n) for n in self.variable_names]

    def const(self, c):
        return Polynomial(self, {self.one_exps(): c})

    def monomial(self, exps, coeff=1):
        return Polynomial(self, {tuple(exps): coeff})

    def format_monomial(self, exps):
        parts = []
        for name, e in zip(self.variable_names, exps):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)


def format_coeff(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_terms(pieces):
    """Join ``(coefficient, body)`` pairs, where an empty body means a constant."""
    if not pieces:
        return "0"
    out = []
    for i, (c, body) in enumerate(pieces):
        neg = c < 0
        a = -c if neg else c
        if not body:
            s = format_coeff(a)
        elif a == 1:
            s = body
        else:
            s = f"{format_coeff(a)}*{body}"
        if i == 0:
            out.append(f"-{s}" if neg else s)
        else:
            out.append(f" - {s}" if neg else f" + {s}")
    return "".join(out)


def _sorted_terms(terms):
    return dict(sorted(terms.items(), key=lambda kv: degrevlex_key(kv[0]), reverse=True))


class Polynomial:
    """Immutable polynomial; terms are kept in descending monomial order."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring, terms=None):
        n = ring.num_vars
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != n or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for {ring.variable_names}")
            c = Fraction(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
        self.ring = ring
        self._terms = _sorted_terms({k: v for k, v in clean.items() if v})
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        # trusted path: terms already clean
        p = cls.__new__(cls)
        p.ring = ring
        p._terms = _sorted_terms(terms)
        p._hash = None
        return p

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def leading_monomial(self):
        return next(iter(self._terms)) if self._terms else None

    def leading_coefficient(self):
        return next(iter(self._terms.values())) if self._terms else Fraction(0)

    def total_degree(self):
        return max((sum(e) for e in self._terms), default=-1)

    def is_monomial(self):
        return len(self._terms) == 1

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ContextMismatch("polynomials over different rings")
            return other
        if isinstance(other, Rational):
            return self.ring.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial._raw(self.ring, out)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Rational):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, tuple(self._terms.items())))
        return self._hash

    def __str__(self):
        fm = self.ring.format_monomial
        return format_terms([(c, fm(m)) for m, c in self._terms.items()])

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


def poly_arith(a, b, op):
    """Apply ``op`` in {"add", "sub", "mul"} to two polynomials."""
    if not isinstance(a, Polynomial) or not isinstance(b, Polynomial):
        raise TypeError("poly_arith expects two polynomials")
    if a.ring != b.ring:
        raise ContextMismatch("polynomials over different rings")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")
