"""Session files: ring, rank, submodules, primes, primary components,
decompositions and oracle fixtures.

    ring Q[x, y, z];
    free 3;
    N = [x*z*e3 - z*e1, x^2*e3, x^2y^3*e1 + x^2y^2z*e2];
    prime p1 = ideal(z);
    primary Q1 = [e3, z*e1, y*e1 + z*e2, z^2*e2] with p1;
    decomp N : Q1, Q2, Q3;
    fixture F1 uses N;

``#`` and ``//`` start comments.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import intersect_all
from .decomposition import Decomposition, PrimaryComponent
from .errors import EnvradError, ParseError
from .groebner import Ideal, Submodule
from .module import FreeModuleContext, ModuleVector
from .poly import Polynomial, RingContext

_TOKEN = re.compile(
    r"(?P<ws>\s+|#[^\n]*|//[^\n]*)|(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<sym>[-+*/^()\[\],;:=])"
)
_BASIS = re.compile(r"e(\d+)\Z")
KEYWORDS = {"ring", "free", "prime", "primary", "decomp", "fixture", "with", "uses", "ideal"}


@dataclass
class Token:
    kind: str  # "num" | "ident" | "sym" | "eof"
    text: str
    line: int
    col: int


def tokenize(text):
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character", line, pos - line_start + 1, text[pos])
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text, ctx=None):
        self.tokens = tokenize(text)
        self.i = 0
        self.ctx = ctx

    # -- token helpers
    @property
    def tok(self):
        return self.tokens[self.i]

    def error(self, message, tok=None):
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.col, tok.text or "end of input")

    def at(self, text):
        return self.tok.kind in ("sym", "ident") and self.tok.text == text

    def expect(self, text):
        if not self.at(text):
            raise self.error(f"expected {text!r}")
        return self._advance()

    def _advance(self):
        tok = self.tok
        self.i += 1
        return tok

    def ident(self):
        if self.tok.kind != "ident":
            raise self.error("expected a name")
        return self._advance()

    def number(self):
        if self.tok.kind != "num":
            raise self.error("expected an integer")
        return int(self._advance().text)

    # -- expressions
    def _split_ident(self, tok):
        """Split a run like ``xyz`` or ``xe1`` into known variable/basis names."""
        names = self.ctx.ring.variable_names
        s, parts, k = tok.text, [], 0
        while k < len(s):
            best = max((n for n in names if s.startswith(n, k)), key=len, default=None)
            if best is None:
                m = re.match(r"e\d+", s[k:])
                if not m:
                    raise self.error(f"unknown name {s!r}", tok)
                best = m.group()
            parts.append(Token("ident", best, tok.line, tok.col + k))
            k += len(best)
        self.tokens[self.i:self.i + 1] = parts

    def _starts_factor(self):
        t = self.tok
        if t.kind == "num":
            return True
        if t.kind == "ident":
            return t.text not in KEYWORDS
        return t.kind == "sym" and t.text in "(["

    def expr(self):
        sign = 1
        if self.at("+") or self.at("-"):
            sign = -1 if self._advance().text == "-" else 1
        value = self.term()
        if sign < 0:
            value = -value
        while self.at("+") or self.at("-"):
            op = self._advance()
            rhs = self.term()
            value = self._combine(value, rhs, op)
        return value

    def _combine(self, a, b, op):
        if isinstance(a, ModuleVector) != isinstance(b, ModuleVector):
            raise self.error("cannot add a polynomial and a vector", op)
        return a + b if op.text == "+" else a - b

    def term(self):
        value = self.factor()
        while True:
            if self.at("*"):
                op = self._advance()
            elif self._starts_factor():
                op = self.tok
            else:
                return value
            rhs = self.factor()
            if isinstance(value, ModuleVector) and isinstance(rhs, ModuleVector):
                raise self.error("cannot multiply two vectors", op)
            value = value * rhs

    def factor(self):
        base = self.atom()
        if self.at("^"):
            op = self._advance()
            k = self.number()
            if isinstance(base, ModuleVector):
                raise self.error("cannot raise a vector to a power", op)
            base = base ** k
        return base

    def atom(self):
        ring = self.ctx.ring
        tok = self.tok
        if tok.kind == "num":
            self._advance()
            c = Fraction(int(tok.text))
            if self.at("/"):
                self._advance()
                d = self.number()
                if d == 0:
                    raise self.error("division by zero", tok)
                c /= d
            return ring.const(c)
        if tok.kind == "ident" and tok.text not in KEYWORDS:
            if tok.text in ring.variable_names:
                self._advance()
                return ring.var(tok.text)
            m = _BASIS.match(tok.text)
            if m:
                self._advance()
                k = int(m.group(1))
                if not 1 <= k <= self.ctx.rank:
                    raise ParseError("basis index out of range", tok.line, tok.col, tok.text)
                return self.ctx.basis(k - 1)
            self._split_ident(tok)
            return self.atom()
        if self.at("("):
            self._advance()
            value = self.expr()
            self.expect(")")
            return value
        if self.at("["):
            start = self._advance()
            comps = [self.poly()]
            while self.at(","):
                self._advance()
                comps.append(self.poly())
            self.expect("]")
            if len(comps) != self.ctx.rank:
                raise ParseError(
                    f"bracket vector has {len(comps)} entries, rank is {self.ctx.rank}",
                    start.line, start.col, "[",
                )
            return ModuleVector.from_components(self.ctx, comps)
        raise self.error("expected a polynomial or vector")

    def poly(self):
        tok = self.tok
        value = self.expr()
        if isinstance(value, ModuleVector):
            raise self.error("expected a polynomial, got a vector", tok)
        return value

    def vector(self):
        tok = self.tok
        value = self.expr()
        if isinstance(value, Polynomial):
            if value.is_zero():
                return self.ctx.zero()
            if self.ctx.rank != 1:
                raise self.error("expected a vector (use e1..en)", tok)
            return value * self.ctx.basis(0)
        return value

    def vector_list(self):
        self.expect("[")
        out = []
        if not self.at("]"):
            out.append(self.vector())
            while self.at(","):
                self._advance()
                out.append(self.vector())
        self.expect("]")
        return out


@dataclass
class SessionFile:
    ring: RingContext
    ctx: FreeModuleContext
    modules: dict = field(default_factory=dict)  # name -> Submodule
    sources: dict = field(default_factory=dict)  # name -> generators as written
    primes: dict = field(default_factory=dict)  # name -> Ideal
    prime_sources: dict = field(default_factory=dict)
    primaries: dict = field(default_factory=dict)  # name -> PrimaryComponent
    primary_primes: dict = field(default_factory=dict)  # name -> prime name
    decomps: dict = field(default_factory=dict)  # name -> Decomposition
    decomp_parts: dict = field(default_factory=dict)  # name -> component names
    fixtures: dict = field(default_factory=dict)  # label -> decomposition name
    statements: list = field(default_factory=list)  # (kind, name) in file order

    def module(self, name):
        if name not in self.modules:
            raise EnvradError(f"undefined submodule {name!r}")
        return self.modules[name]

    def prime(self, name):
        if name not in self.primes:
            raise EnvradError(f"undefined prime {name!r}")
        return self.primes[name]

    def decomposition(self, name):
        if name not in self.decomps:
            raise EnvradError(f"undefined decomposition {name!r}")
        return self.decomps[name]

    def fixture_decompositions(self):
        return [self.decomps[d] for d in self.fixtures.values()]

    def parse_poly(self, text):
        p = _Parser(text, self.ctx)
        value = p.poly()
        if p.tok.kind != "eof":
            raise p.error("trailing input")
        return value

    def parse_ideal(self, text):
        """A prime name, ``ideal(f, g, ...)`` or a bare list ``f, g, ...``."""
        text = text.strip()
        if text in self.primes:
            return self.primes[text]
        p = _Parser(text, self.ctx)
        if p.at("ideal"):
            p._advance()
            p.expect("(")
            polys = [p.poly()]
            while p.at(","):
                p._advance()
                polys.append(p.poly())
            p.expect(")")
        else:
            polys = [p.poly()]
            while p.at(","):
                p._advance()
                polys.append(p.poly())
        if p.tok.kind != "eof":
            raise p.error("trailing input")
        return Ideal(self.ring, polys)


def parse_session(text):
    p = _Parser(text)
    p.expect("ring")
    q = p.ident()
    if q.text != "Q":
        raise p.error("only the rationals Q are supported as coefficients", q)
    p.expect("[")
    names = [p.ident()]
    while p.at(","):
        p._advance()
        names.append(p.ident())
    p.expect("]")
    p.expect(";")
    for tok in names:
        if tok.text in KEYWORDS or _BASIS.match(tok.text):
            raise p.error("reserved word used as a variable", tok)
    try:
        ring = RingContext(tuple(t.text for t in names))
    except ValueError as exc:
        raise p.error(str(exc), names[0]) from None
    p.expect("free")
    rank_tok = p.tok
    rank = p.number()
    if rank < 1:
        raise p.error("rank must be positive", rank_tok)
    p.expect(";")
    ctx = FreeModuleContext(ring, rank)
    p.ctx = ctx
    s = SessionFile(ring, ctx)
    taken = set()

    def claim(tok):
        if tok.text in taken:
            raise p.error(f"name {tok.text!r} already defined", tok)
        if tok.text in ring.variable_names or tok.text in KEYWORDS or _BASIS.match(tok.text):
            raise p.error(f"name {tok.text!r} is reserved", tok)
        taken.add(tok.text)

    while p.tok.kind != "eof":
        if p.at("prime"):
            p._advance()
            name = p.ident()
            claim(name)
            p.expect("=")
            p.expect("ideal")
            p.expect("(")
            polys = [p.poly()]
            while p.at(","):
                p._advance()
                polys.append(p.poly())
            p.expect(")")
            p.expect(";")
            s.primes[name.text] = Ideal(ring, polys)
            s.prime_sources[name.text] = polys
            s.statements.append(("prime", name.text))
        elif p.at("primary"):
            p._advance()
            name = p.ident()
            claim(name)
            p.expect("=")
            vecs = p.vector_list()
            p.expect("with")
            pname = p.ident()
            if pname.text not in s.primes:
                raise p.error(f"undefined prime {pname.text!r}", pname)
            p.expect(";")
            Q = Submodule(ctx, vecs)
            s.modules[name.text] = Q
            s.sources[name.text] = vecs
            s.primaries[name.text] = PrimaryComponent(Q, s.primes[pname.text], name.text)
            s.primary_primes[name.text] = pname.text
            s.statements.append(("primary", name.text))
        elif p.at("decomp"):
            p._advance()
            name = p.ident()
            if name.text in s.decomps:
                raise p.error(f"decomposition {name.text!r} already defined", name)
            p.expect(":")
            parts = [p.ident()]
            while p.at(","):
                p._advance()
                parts.append(p.ident())
            p.expect(";")
            comps = []
            for tok in parts:
                if tok.text not in s.primaries:
                    raise p.error(f"undefined primary component {tok.text!r}", tok)
                comps.append(s.primaries[tok.text])
            if name.text in s.modules:
                D = Decomposition(s.modules[name.text], comps)
            else:
                claim(name)
                D = Decomposition(intersect_all([c.Q for c in comps]), comps)
                s.modules[name.text] = D.target
            s.decomps[name.text] = D
            s.decomp_parts[name.text] = [t.text for t in parts]
            s.statements.append(("decomp", name.text))
        elif p.at("fixture"):
            p._advance()
            label = p.ident()
            if label.text in s.fixtures:
                raise p.error(f"fixture {label.text!r} already defined", label)
            p.expect("uses")
            dname = p.ident()
            if dname.text not in s.decomps:
                raise p.error(f"undefined decomposition {dname.text!r}", dname)
            p.expect(";")
            s.fixtures[label.text] = dname.text
            s.statements.append(("fixture", label.text))
        elif p.tok.kind == "ident" and p.tok.text not in KEYWORDS:
            name = p._advance()
            claim(name)
            p.expect("=")
            vecs = p.vector_list()
            p.expect(";")
            s.modules[name.text] = Submodule(ctx, vecs)
            s.sources[name.text] = vecs
            s.statements.append(("module", name.text))
        else:
            raise p.error("expected a statement")
    return s


def print_session(s):
    """Canonical text of a session; parsing it back gives the same session."""
    lines = [f"ring Q[{', '.join(s.ring.variable_names)}];", f"free {s.ctx.rank};"]
    for kind, name in s.statements:
        if kind == "module":
            lines.append(f"{name} = [{', '.join(str(v) for v in s.sources[name])}];")
        elif kind == "prime":
            lines.append(f"prime {name} = ideal({', '.join(str(f) for f in s.prime_sources[name])});")
        elif kind == "primary":
            vecs = ", ".join(str(v) for v in s.sources[name])
            lines.append(f"primary {name} = [{vecs}] with {s.primary_primes[name]};")
        elif kind == "decomp":
            lines.append(f"decomp {name} : {', '.join(s.decomp_parts[name])};")
        elif kind == "fixture":
            lines.append(f"fixture {name} uses {s.fixtures[name]};")
    return "\n".join(lines) + "\n"
