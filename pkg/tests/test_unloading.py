import random

import pytest
from hypothesis import given, settings, strategies as st

from multiplier_ideals import (
    Divisor,
    MalformedInput,
    antinef_closure,
    ideal_codim,
    monomial_resolution,
    unloading_step,
    virtual_codim,
)

from corpus import corpus, example_3_10, staircase_codim


def _antinef(D, rd):
    return all(rd.graph.dot_component(D, i) <= 0 for i in range(rd.n))


def test_single_step_on_two_component_chain():
    # E1^2 = -2, E2^2 = -1: blow-up of a point, then a free point on E1
    rd = monomial_resolution(1, 2)
    assert rd.graph.self_int == (-2, -1)
    after, theta, tame = unloading_step(Divisor.of([0, 1]), rd)
    assert theta == frozenset({0})
    assert after == Divisor.of([1, 1])
    assert tame


def test_antinef_input_is_fixed():
    rd = example_3_10()
    after, theta, tame = unloading_step(rd.F, rd)
    assert after == rd.F and theta == frozenset() and tame
    assert antinef_closure(rd.F, rd).steps == ()


def test_closure_of_last_component_is_fundamental_cycle():
    rd = example_3_10()
    trace = antinef_closure(Divisor.unit(6, 5), rd)
    assert trace.result == Divisor.of([1, 1, 1, 1, 2, 3])
    assert len(trace.steps) == 4


def test_closure_rejects_non_effective():
    with pytest.raises(MalformedInput):
        antinef_closure(Divisor.of([-1, 0, 0, 0, 0, 0]), example_3_10())


def test_codim_of_x3_y10():
    rd = example_3_10()
    assert ideal_codim(rd.F, rd) == 21
    assert virtual_codim(rd.F, rd) == 21


def test_ideal_codim_ignores_negative_part():
    rd = example_3_10()
    D = Divisor.of([-5, 0, 0, 0, 0, 1])
    assert ideal_codim(D, rd) == ideal_codim(Divisor.unit(6, 5), rd) == 1


@pytest.mark.parametrize("a,b", [(1, 1), (2, 3), (3, 10), (4, 6), (5, 8), (7, 7)])
def test_codim_matches_staircase(a, b):
    rd = monomial_resolution(a, b)
    assert ideal_codim(rd.F, rd) == staircase_codim(a, b)


def test_staircase_small_values():
    assert staircase_codim(2, 3) == 5
    assert staircase_codim(3, 10) == 21


def _check_trace(trace, rd):
    for step in trace.steps:
        before, after = virtual_codim(step.before, rd), virtual_codim(step.after, rd)
        assert after <= before
        assert (after == before) == step.tame
    assert _antinef(trace.result, rd)


def test_unloading_tameness_on_corpus_samples():
    rng = random.Random(7)
    for rd in corpus():
        for _ in range(5):
            D = Divisor.of(rng.randint(0, 4) for _ in range(rd.n))
            _check_trace(antinef_closure(D, rd), rd)


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_closure_is_smallest_antinef_above(data):
    rd = data.draw(st.sampled_from(corpus()[:12]))
    D = Divisor.of(data.draw(st.lists(st.integers(0, 3), min_size=rd.n, max_size=rd.n)))
    trace = antinef_closure(D, rd)
    _check_trace(trace, rd)
    closure = trace.result
    assert D <= closure
    # idempotent, and below any antinef divisor dominating D (here a multiple of F)
    assert antinef_closure(closure, rd).result == closure
    big = max(1, max(int(x) for x in D)) * rd.F
    assert closure <= big
    # monotone in D
    bumped = D + Divisor.unit(rd.n, data.draw(st.integers(0, rd.n - 1)))
    assert closure <= antinef_closure(bumped, rd).result


def test_closure_commutes_with_relabelling():
    from multiplier_ideals import DualGraph, ResolutionData

    rng = random.Random(19)
    for rd in corpus()[:15]:
        perm = list(range(rd.n))
        rng.shuffle(perm)  # new index of old component i is perm[i]
        inv = [0] * rd.n
        for i, p in enumerate(perm):
            inv[p] = i
        g = rd.graph
        g2 = DualGraph(
            tuple(g.self_int[inv[p]] for p in range(rd.n)),
            tuple((perm[i], perm[j]) for i, j in g.edges),
        )
        rd2 = ResolutionData.from_graph(g2, Divisor.of(rd.F[inv[p]] for p in range(rd.n)))
        for _ in range(3):
            D = Divisor.of(rng.randint(0, 3) for _ in range(rd.n))
            D2 = Divisor.of(D[inv[p]] for p in range(rd.n))
            C = antinef_closure(D, rd).result
            C2 = antinef_closure(D2, rd2).result
            assert C2 == Divisor.of(C[inv[p]] for p in range(rd.n))
