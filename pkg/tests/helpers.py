"""Shared builders and independent oracles for the test suite."""

import itertools
import random

from envrad import FreeModuleContext, Ideal, ModuleVector, RingContext, Submodule
from envrad.parser import _Parser

VARS = ("x", "y", "z")


def ring(names=VARS):
    return RingContext(tuple(names))


def ctx(rank=3, names=VARS):
    return FreeModuleContext(ring(names), rank)


def P(C, text):
    """Parse a polynomial in the ring of ``C``."""
    p = _Parser(text, C if isinstance(C, FreeModuleContext) else FreeModuleContext(C, 1))
    return p.poly()


def V(C, text):
    return _Parser(text, C).vector()


def S(C, *texts):
    return Submodule(C, [V(C, t) for t in texts])


def I(R, *texts):
    return Ideal(R, [P(R, t) for t in texts])


def random_monomial_submodule(rng, max_vars=3, max_rank=3, max_degree=4, max_gens=4):
    while True:
        nvars = rng.randint(2, max_vars)
        rank = rng.randint(1, max_rank)
        C = ctx(rank, VARS[:nvars])
        vecs = []
        for _ in range(rng.randint(1, max_gens)):
            deg = rng.randint(1, max_degree)
            exps = [0] * nvars
            for _ in range(deg):
                exps[rng.randrange(nvars)] += 1
            vecs.append(ModuleVector(C, {(rng.randrange(rank), tuple(exps)): 1}))
        N = Submodule(C, vecs)
        if not N.is_full():
            return N


def corpus(n=50, seed=20261017):
    rng = random.Random(seed)
    return [random_monomial_submodule(rng) for _ in range(n)]


def random_poly(rng, R, max_terms=2, max_degree=2):
    """Small nonzero polynomial with integer coefficients."""
    n = R.num_vars
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = [0] * n
        for _ in range(rng.randint(0, max_degree)):
            exps[rng.randrange(n)] += 1
        terms[tuple(exps)] = rng.choice([-2, -1, 1, 2, 3])
    f = R.const(0)
    for e, c in terms.items():
        f = f + R.monomial(e, c)
    return f if f else R.const(1)


def box_monomials(n, bound):
    return list(itertools.product(range(bound + 1), repeat=n))


def in_monomial_ideal(gens, exps):
    return any(all(a <= b for a, b in zip(g, exps)) for g in gens)


SESSIONS = __import__("pathlib").Path(__file__).resolve().parent.parent / "sessions"


def load(name):
    from envrad import parse_session
    return parse_session((SESSIONS / name).read_text())


def monomial_antichains(nvars, bound):
    """Every minimal generating set of a monomial ideal with exponents <= bound."""
    box = box_monomials(nvars, bound)
    out = []
    for r in range(len(box) + 1):
        for subset in itertools.combinations(box, r):
            if all(not all(a <= b for a, b in zip(g, h))
                   for g in subset for h in subset if g != h):
                out.append(list(subset))
    return out


def brute_irreducible(gens, nvars, bound):
    """Minimal irreducible monomial ideals containing the ideal, found by search.

    Candidates are <x_j^a_j : j in S> with 1 <= a_j <= bound; the irredundant
    irreducible decomposition consists exactly of the minimal ones."""
    choices = [None] + list(range(1, bound + 1))
    containing = []
    for combo in itertools.product(choices, repeat=nvars):
        J = {j: a for j, a in enumerate(combo) if a is not None}
        if all(any(g[j] >= a for j, a in J.items()) for g in gens):
            containing.append(J)

    def inside(A, B):  # A ⊆ B
        return all(j in B and B[j] <= a for j, a in A.items())

    return [J for J in containing if not any(K != J and inside(K, J) for K in containing)]
