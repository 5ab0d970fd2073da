"""Primary decomposition certificates, monomial decomposition, closures.

Primality of a certificate's primes is never decided here: callers supply
primes and the checks below only verify what a Groebner basis can verify.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .algebra import (
    colon_ideal_into_ideal,
    colon_vector,
    ideal_module_product,
    ideal_times_module,
    intersect,
    intersect_all,
    stable_quotient,
    sum_modules,
)
from .errors import ContextMismatch, OracleMiss, PreconditionError
from .groebner import Ideal, Submodule
from .module import ModuleVector

log = logging.getLogger(__name__)

DEFAULT_KMAX = 20


@dataclass(frozen=True)
class PrimaryComponent:
    Q: Submodule
    p: Ideal
    label: str | None = None

    def __post_init__(self):
        if self.Q.ctx.ring != self.p.ring:
            raise ContextMismatch("component and prime over different rings")


@dataclass(frozen=True)
class Decomposition:
    target: Submodule
    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise PreconditionError("a decomposition needs at least one component")
        for c in comps:
            if c.Q.ctx != self.target.ctx:
                raise ContextMismatch("component lives in a different free module")

    @classmethod
    def of(cls, components):
        """Decomposition whose target is the intersection of the given components."""
        components = tuple(components)
        return cls(intersect_all([c.Q for c in components]), components)

    @property
    def primes(self):
        return [c.p for c in self.components]

    @property
    def ctx(self):
        return self.target.ctx

    def __len__(self):
        return len(self.components)


@dataclass
class VerificationReport:
    entries: list = field(default_factory=list)

    def add(self, check, ok, detail=""):
        self.entries.append((check, ok, detail))

    @property
    def failures(self):
        return [e for e in self.entries if e[1] is False]

    @property
    def valid(self):
        return not self.failures

    def failed_checks(self):
        return sorted({e[0] for e in self.failures})

    def lines(self):
        out = []
        for check, ok, detail in self.entries:
            status = "assumed" if ok is None else ("ok" if ok else "FAILED")
            out.append(f"{check}: {status}" + (f" ({detail})" if detail else ""))
        out.append("valid" if self.valid else "invalid")
        return out

    def __str__(self):
        return "\n".join(self.lines())


def _name(c, i):
    return c.label or f"Q{i + 1}"


def _power_index(p, colon, kmax):
    """Smallest k <= kmax with p^k ⊆ colon, or None."""
    power = Ideal.unit(p.ring)
    for k in range(1, kmax + 1):
        power = ideal_module_product(p, power)
        if power.leq(colon):
            return k
    return None


def verify_decomposition(D, kmax=DEFAULT_KMAX):
    """Check a certificate: (a) intersection, (b) colon in prime, (c) prime power,
    (d) distinct primes, (e) irredundancy.  Primality itself is only assumed."""
    report = VerificationReport()
    mods = [c.Q for c in D.components]
    report.add("(a) intersection equals target", intersect_all(mods) == D.target)
    for i, c in enumerate(D.components):
        name = _name(c, i)
        if c.Q.is_full():
            report.add(f"proper {name}", False, "component is the whole module")
            continue
        colon = colon_ideal_into_ideal(c.Q)
        report.add(f"(b) ({name}:M) in prime", colon.leq(c.p))
        k = _power_index(c.p, colon, kmax)
        report.add(f"(c) prime power in {name}", k is not None,
                   f"k={k}" if k is not None else f"no k <= {kmax}")
    distinct = all(a.p != b.p for a, b in combinations(D.components, 2))
    report.add("(d) primes pairwise distinct", distinct)
    irredundant = True
    if len(mods) > 1:
        for j in range(len(mods)):
            rest = intersect_all(mods[:j] + mods[j + 1:])
            if rest.leq(mods[j]):
                irredundant = False
                report.add("(e) irredundant", False, f"{_name(D.components[j], j)} is redundant")
    if irredundant:
        report.add("(e) irredundant", True)
    report.add("primality of primes", None)
    return report


# ---------------------------------------------------------------------------
# monomial ideals as sets of exponent tuples


def _minimalize(gens):
    gens = sorted(set(gens), key=lambda e: (sum(e), e))
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return tuple(sorted(out))


@lru_cache(maxsize=4096)
def _irreducible(gens):
    # gens: minimal generators; result: tuple of frozensets of (var, exponent)
    for g in gens:
        support = [j for j, e in enumerate(g) if e > 0]
        if len(support) >= 2:
            j = support[0]
            pure = tuple(g[j] if k == j else 0 for k in range(len(g)))
            rest = tuple(0 if k == j else g[k] for k in range(len(g)))
            left = _irreducible(_minimalize(gens + (pure,)))
            right = _irreducible(_minimalize(gens + (rest,)))
            return _prune_irreducible(left + right)
    comp = {}
    for g in gens:
        support = [j for j, e in enumerate(g) if e > 0]
        if not support:
            return ()  # unit ideal: no components
        j = support[0]
        comp[j] = min(comp.get(j, g[j]), g[j])
    return (frozenset(comp.items()),)


def _irr_contains(big, small):
    """Whether irreducible ideal ``big`` contains irreducible ideal ``small``."""
    b = dict(big)
    return all(j in b and b[j] <= a for j, a in small)


def _prune_irreducible(comps):
    uniq = sorted(set(comps), key=lambda c: (len(c), sorted(c)))
    kept = []
    for c in uniq:
        if not any(c != d and _irr_contains(c, d) for d in uniq):
            kept.append(c)
    return tuple(kept)


def irreducible_components(gens, nvars):
    """Irredundant irreducible decomposition of the monomial ideal with the given
    exponent generators.  Each component is a dict ``{var index: exponent}``; an
    empty dict is the zero ideal.  The unit ideal has no components."""
    gens = [tuple(g) for g in gens]
    if any(len(g) != nvars for g in gens):
        raise ValueError("exponent vector has the wrong length")
    if not gens:
        return [{}]
    comps = _irreducible(_minimalize(gens))
    return sorted((dict(c) for c in comps), key=lambda c: (len(c), sorted(c.items())))


def _monomial_intersection(a, b):
    return _minimalize(tuple(max(x, y) for x, y in zip(g, h)) for g in a for h in b)


def _monomial_position_ideals(N):
    if not N.is_monomial():
        raise PreconditionError("submodule is not generated by monomial terms")
    per = [[] for _ in range(N.ctx.rank)]
    for pos, exps in N.lead_terms():
        per[pos].append(exps)
    return per


def monomial_primary_decomposition(N):
    """Primary decomposition of a submodule generated by terms c·x^a·e_i."""
    ctx = N.ctx
    ring = ctx.ring
    n = ring.num_vars
    per = _monomial_position_ideals(N)
    # radical (variable set) -> position -> list of irreducible generator sets
    groups = {}
    for pos, gens in enumerate(per):
        for comp in irreducible_components(gens, n):
            rad = frozenset(comp)
            gens_c = tuple(tuple(a if k == j else 0 for k in range(n)) for j, a in comp.items())
            groups.setdefault(rad, {}).setdefault(pos, []).append(gens_c)
    if not groups:
        raise PreconditionError("the whole module has no primary decomposition")
    components = []
    for rad in sorted(groups, key=lambda r: (len(r), sorted(r))):
        vecs = []
        for pos in range(ctx.rank):
            if pos not in groups[rad]:
                vecs.append(ctx.basis(pos))
                continue
            ideals = groups[rad][pos]
            if any(not g for g in ideals):
                continue  # a zero ideal makes the whole position zero
            meet = ideals[0]
            for other in ideals[1:]:
                meet = _monomial_intersection(meet, other)
            for exps in meet:
                vecs.append(ModuleVector(ctx, {(pos, exps): 1}))
        prime = Ideal(ring, [ring.gens()[j] for j in sorted(rad)])
        components.append(PrimaryComponent(Submodule(ctx, vecs), prime))
    return Decomposition(N, components)


def minimal_primes_monomial(I):
    """Minimal primes of a monomial ideal: minimal vertex covers of generator supports."""
    if I.ctx.rank != 1:
        raise ContextMismatch("minimal primes are defined for ideals")
    if not I.is_monomial():
        raise PreconditionError("ideal is not monomial")
    ring = I.ctx.ring
    if I.is_full():
        return []
    covers = [frozenset()]
    for _, exps in I.lead_terms():
        support = frozenset(j for j, e in enumerate(exps) if e > 0)
        nxt = set()
        for c in covers:
            if c & support:
                nxt.add(c)
            else:
                nxt.update(c | {v} for v in support)
        covers = [c for c in nxt if not any(d < c for d in nxt)]
    covers.sort(key=lambda c: (len(c), sorted(c)))
    gens = ring.gens()
    return [Ideal(ring, [gens[j] for j in sorted(c)]) for c in covers]


def isolated_primes(D):
    """Components whose prime is minimal among the decomposition's primes."""
    out = []
    for c in D.components:
        if not any(d.p != c.p and d.p.leq(c.p) for d in D.components):
            out.append(c)
    return out


@dataclass(frozen=True)
class QuasiPrimarySplit:
    groups: tuple  # (isolated prime, separator, Decomposition of N_i)
    remainder: Submodule
    separators: tuple


def _separator(intersection, p):
    for f in intersection.polys:
        if not p.contains_poly(f):
            return f
    raise AssertionError(f"no separator outside {p}; certificate primes are inconsistent")


def quasi_primary_split(D):
    """Split N into quasi-primary pieces N_i = N : f_i^∞ and the rest N + J M."""
    ring = D.ctx.ring
    iso = isolated_primes(D)
    groups = []
    seps = []
    for c in iso:
        others = [d.p for d in iso if d is not c]
        meet = intersect_all(others) if others else Ideal.unit(ring)
        f = _separator(meet, c.p)
        seps.append(f)
        Ni = stable_quotient(D.target, Ideal(ring, [f]))
        members = [d for d in D.components if not d.p.contains_poly(f)]
        sub = Decomposition(Ni, members)
        groups.append((c.p, f, sub))
    J = Ideal(ring, seps)
    remainder = sum_modules(D.target, ideal_times_module(J, D.ctx))
    return QuasiPrimarySplit(tuple(groups), remainder, tuple(seps))


def closure(D, p):
    """cl_p(N): intersection of the components whose prime lies in p."""
    _check_closure_pre(D, p)
    kept = [c.Q for c in D.components if c.p.leq(p)]
    if not kept:
        log.warning("no component prime lies in %s; closure is the whole module", p)
        return Submodule.full(D.ctx)
    return intersect_all(kept)


def closure_by_colon(D, p):
    """cl_p(N) as N : r0, with r0 a product of elements of (Q_i:M) outside p
    over the discarded components."""
    _check_closure_pre(D, p)
    ring = D.ctx.ring
    r0 = ring.const(1)
    for c in D.components:
        if c.p.leq(p):
            continue
        colon = colon_ideal_into_ideal(c.Q)
        r0 = r0 * _separator(colon, p)
    return colon_vector(D.target, r0)


def _check_closure_pre(D, p):
    if p.ring != D.ctx.ring:
        raise ContextMismatch("prime over a different ring")
    if not colon_ideal_into_ideal(D.target).leq(p):
        raise PreconditionError(f"(N:M) is not contained in {p}")


class DecompositionOracle:
    """Source of decompositions for modules met during envelope iteration.

    Fixtures are looked up by the canonical reduced basis of their target;
    monomial modules are decomposed automatically when ``automatic`` is set.
    """

    def __init__(self, fixtures=(), automatic=True, kmax=DEFAULT_KMAX, verify=True):
        self.automatic = automatic
        self.kmax = kmax
        self.verify = verify
        self._table = {}
        self._lock = threading.Lock()
        for D in fixtures:
            self.add(D)

    @property
    def mode(self):
        if self._table:
            return "fixture-table"
        return "automatic-monomial" if self.automatic else "fail"

    def add(self, D):
        if self.verify:
            report = verify_decomposition(D, self.kmax)
            if not report.valid:
                raise PreconditionError(
                    "fixture decomposition does not verify: " + ", ".join(report.failed_checks())
                )
        with self._lock:
            self._table[(D.ctx, D.target.key)] = D

    def __len__(self):
        return len(self._table)

    def lookup(self, N):
        return self._table.get((N.ctx, N.key))

    def decompose(self, N):
        D = self.lookup(N)
        if D is not None:
            return D
        if self.automatic and N.is_monomial() and not N.is_full():
            return monomial_primary_decomposition(N)
        raise OracleMiss(N)
