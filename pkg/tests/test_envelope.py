import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from envrad import (
    Decomposition,
    DecompositionOracle,
    Ideal,
    PrimaryComponent,
    Submodule,
    certify_weakly_prime,
    colon_ideal_into_ideal,
    envelope,
    find_weak_counterexample,
    ideal_module_product,
    iterate_envelope,
    minimal_primes_monomial,
    monomial_primary_decomposition,
    quasi_primary_split,
    semiprime_spot_check,
    stable_quotient,
    sum_modules,
    weakly_closure,
    weakly_radical,
)
from envrad.algebra import ideal_times_module, intersect_all
from envrad.errors import IterationLimit, PreconditionError

from helpers import I, S, V, corpus, ctx, load, random_monomial_submodule

SEC1 = load("envelope_example.env")
SEC2 = load("weakly_prime_counterexample.env")
SEC3 = load("weakly_radical_example.env")
D1 = SEC1.decomposition("N")
C = D1.ctx
R = C.ring
C2 = SEC2.ctx

# products listed for the three-component example, keyed by the subset T
EXPECTED_SUMMANDS = {
    (1,): ("x*z*e1", "x*z*e3 - z*e1", "x^2*y^2*z*e2"),
    (2,): ("x*y*z*e3 - y*z*e1", "x^2*y*e3", "x^2*y^2*e1 + x^2*y*z*e2"),
    (3,): ("x*e3", "x*z*e1", "x*y^3*e1 + x*y^2*z*e2"),
    (1, 2): ("x*y*z*e1", "x*y*z*e3 - y*z*e1", "x^2*y*z*e2"),
    (1, 3): ("x*z*e1", "x*z*e3", "x*y^2*z*e2"),
    (2, 3): ("x*y*e3", "x*y*z*e1", "x*y^2*e1 + x*y*z*e2", "x*y*z^2*e2"),
}


def sec3_oracle():
    return DecompositionOracle(SEC3.fixture_decompositions())


def test_three_component_envelope():
    trace = envelope(D1)
    assert trace.result == S(C, "z*e1", "x*e3", "x*y*z*e2", "x*y^2*e1")
    assert trace.radical == I(R, "x*y*z")
    assert trace.radical_term == S(C, "x*y*z*e1", "x*y*z*e2", "x*y*z*e3")


def test_three_component_summands():
    trace = envelope(D1)
    assert [T for T, _, _ in trace.summands] == list(EXPECTED_SUMMANDS)
    for T, label, prod in trace.summands:
        assert prod == S(C, *EXPECTED_SUMMANDS[T]), label
    assert trace.summands[0][1] == "(p1)(Q2∩Q3)"


def test_envelope_rejects_bad_certificate():
    with pytest.raises(PreconditionError):
        envelope(Decomposition(D1.target, D1.components[:2]))


def test_envelope_component_limit():
    with pytest.raises(PreconditionError):
        envelope(D1, max_components=2)


def test_two_generator_example():
    N = SEC2.module("N")
    assert colon_ideal_into_ideal(N) == I(C2.ring, "x^2")
    E = envelope(SEC2.decomposition("N")).result
    assert E == SEC2.module("E")
    assert E.contains(V(C2, "[0, y^3]"))
    assert not E.contains(V(C2, "[0, y^2]"))


def test_counterexample_in_envelope():
    E = SEC2.module("E")
    verdict = find_weak_counterexample(E, 3)
    assert verdict.status == "counterexample"
    a, b, m = verdict.witness
    assert (str(a), str(b), str(m)) == ("y", "y", "y*e2")
    assert E.contains(a * b * m)
    assert not E.contains(a * m) and not E.contains(b * m)


def test_no_counterexample_for_prime_submodule():
    W1 = SEC3.module("W1")
    assert find_weak_counterexample(W1, 2).witness is None


def test_counterexample_principal():
    C1 = ctx(1, ("x",))
    a, b, m = find_weak_counterexample(S(C1, "x^2*e1"), 2).witness
    assert (str(a), str(b), str(m)) == ("x", "x", "e1")


def test_iteration_on_prime_fixture():
    it = iterate_envelope(SEC3.module("W1"), sec3_oracle())
    assert it.steps == 1
    assert it.fixed_point == SEC3.module("W1")


def test_iteration_on_w2():
    it = iterate_envelope(SEC3.module("W2"), sec3_oracle())
    assert it.steps <= 2
    assert it.fixed_point == SEC3.module("EW2")
    for a, b in zip(it.chain, it.chain[1:]):
        assert a <= b


def test_iteration_limit():
    with pytest.raises(IterationLimit) as exc:
        iterate_envelope(SEC3.module("W2"), sec3_oracle(), max_iter=1)
    assert exc.value.exit_code == 4


def test_weakly_radical_example():
    N = SEC3.module("N")
    oracle = sec3_oracle()
    assert weakly_closure(N, I(R, "z"), oracle) == SEC3.module("W1")
    assert weakly_closure(N, I(R, "x"), oracle) == SEC3.module("EW2")
    expected = S(C, "y*z*e2", "x*z*e1", "x*z*e2", "x*z*e3", "x^2*e1 + y^2*e2",
                 "y^3*z*e1 + z^3*e3")
    assert weakly_radical(N, oracle=oracle) == expected
    assert weakly_radical(N, [I(R, "z"), I(R, "x")], oracle) == expected


def test_weakly_radical_of_square():
    C1 = ctx(1, ("x",))
    assert weakly_radical(S(C1, "x^2*e1")) == S(C1, "x*e1")


def test_weakly_closure_preconditions():
    N = SEC3.module("N")
    with pytest.raises(PreconditionError):
        weakly_closure(N, I(R, "y"))
    with pytest.raises(PreconditionError):
        weakly_closure(N, I(R, "x + y"))


def test_certifier_verdicts():
    assert certify_weakly_prime(SEC3.decomposition("W1")).status == "certified-weakly-prime"
    E = SEC2.module("E")
    assert certify_weakly_prime(monomial_primary_decomposition(E)).status == "unknown"
    assert certify_weakly_prime(D1).status == "unknown"


def test_semiprime_checks():
    C1 = ctx(1, ("x",))
    res = semiprime_spot_check(S(C1, "x^2*e1"), 2)
    r, m, k = res.witness
    assert (str(r), str(m), k) == ("x", "e1", 2)
    # the envelope of the three-component example is not semiprime:
    # x*y*e1 lies outside but y^2 * x*e1 = x*y^2*e1 is a generator
    E = envelope(D1).result
    res = semiprime_spot_check(E, 2)
    r, m, k = res.witness
    assert (str(r), str(m), k) == ("y", "x*e1", 2)
    assert E.contains(r ** k * m) and not E.contains(r * m)
    with pytest.raises(PreconditionError):
        semiprime_spot_check(Submodule.full(C), 2)


def test_semiprime_no_violation_on_prime():
    assert semiprime_spot_check(SEC3.module("W1"), 2).status == "no-violation"


# properties over monomial submodules and fixtures

def _subset_terms(D):
    k = len(D.components)
    everything = range(k)
    for size in range(1, k):
        for T in combinations(everything, size):
            rest = [i for i in everything if i not in T]
            yield (intersect_all([D.components[i].p for i in T]),
                   intersect_all([D.components[i].Q for i in rest], D.ctx))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_sandwich_and_subset_products(seed):
    N = random_monomial_submodule(random.Random(seed))
    D = monomial_primary_decomposition(N)
    E = envelope(D).result
    assert N <= E
    for pT, QS in _subset_terms(D):
        assert ideal_module_product(pT, QS) <= E


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_summand_generators_are_envelope_elements(seed):
    N = random_monomial_submodule(random.Random(seed))
    D = monomial_primary_decomposition(N)
    for pT, QS in _subset_terms(D):
        for f in pT.polys:
            sat = stable_quotient(N, Ideal(N.ctx.ring, [f]))
            for v in QS.gb:
                assert sat.contains(v)


def test_fixture_sandwich_and_quasienv():
    oracle = sec3_oracle()
    for name in ("W1", "W2", "EW2"):
        D = SEC3.decomposition(name)
        E = envelope(D).result
        assert D.target <= E
        p = colon_ideal_into_ideal(D.target)
        assert colon_ideal_into_ideal(E) == p
        chain = iterate_envelope(D.target, oracle).chain
        assert all(a <= b for a, b in zip(chain, chain[1:]))


def test_closure_inside_weakly_prime_fixtures():
    N = SEC3.module("N")
    oracle = sec3_oracle()
    assert weakly_closure(N, I(R, "z"), oracle) <= SEC3.module("W1")
    assert weakly_closure(N, I(R, "x"), oracle) <= SEC3.module("EW2")


def test_closure_monotone_in_prime():
    N = SEC3.module("N")
    oracle = sec3_oracle()
    small = weakly_closure(N, I(R, "x"), oracle)
    for big in (I(R, "x", "y"), I(R, "x", "z")):
        assert small <= weakly_closure(N, big, oracle)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_closure_monotone_on_monomial_modules(seed):
    rng = random.Random(seed)
    N = random_monomial_submodule(rng)
    Rn = N.ctx.ring
    colon = colon_ideal_into_ideal(N)
    primes = minimal_primes_monomial(colon)
    p = rng.choice(primes)
    extra = [g for g in Rn.gens() if not p.contains_poly(g)]
    small = weakly_closure(N, p)
    if extra:
        bigger = Ideal(Rn, list(p.polys) + [rng.choice(extra)])
        assert small <= weakly_closure(N, bigger)
    assert N <= small


def test_decomposition_independence():
    C1 = ctx(1, ("x", "y"))
    Rx = C1.ring
    N = S(C1, "x^2*e1", "x*y*e1")
    iso = PrimaryComponent(S(C1, "x*e1"), I(Rx, "x"))
    D_a = Decomposition(N, (iso, PrimaryComponent(S(C1, "x^2*e1", "y*e1"), I(Rx, "x", "y"))))
    D_b = Decomposition(N, (iso, PrimaryComponent(S(C1, "x^2*e1", "x*y*e1", "y^2*e1"),
                                                  I(Rx, "x", "y"))))
    assert envelope(D_a).result == envelope(D_b).result


def test_certified_corpus_has_no_counterexample():
    certified = 0
    for N in corpus(25, seed=11):
        D = monomial_primary_decomposition(N)
        if certify_weakly_prime(D).status == "certified-weakly-prime":
            certified += 1
            assert find_weak_counterexample(N, 3).witness is None
    assert certified > 0


def test_envelope_fixed_modules_split_into_fixed_pieces():
    checked = 0
    for N in corpus(20, seed=5):
        F = iterate_envelope(N).fixed_point
        if F.is_full():
            continue
        D = monomial_primary_decomposition(F)
        split = quasi_primary_split(D)
        pieces = [g[2].target for g in split.groups]
        if intersect_all(pieces, F.ctx) != F:
            continue
        checked += 1
        for piece in pieces:
            assert envelope(monomial_primary_decomposition(piece)).result == piece
    assert checked > 0


def test_radical_term_is_product():
    trace = envelope(D1)
    assert trace.radical_term == ideal_times_module(trace.radical, C)
    assert sum_modules(trace.input, trace.radical_term) <= trace.result
