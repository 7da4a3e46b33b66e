from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from multiplier_ideals import (
    CrossCheckError,
    Divisor,
    MalformedInput,
    candidates,
    ceil_relative,
    dicritical_jumping,
    growth_check,
    intersection_lemma,
    is_jumping_number,
    jumping_numbers,
    maximal_jumping_divisor,
    monomial_resolution,
    multiplicity,
    structure_check,
)
from multiplier_ideals.jumping import criterion_holds, multiplicity_by_closure

from corpus import corpus, monomial_multiplicity, example_3_10, singular_instances

F = Fraction


def test_h_three_halves_on_example_3_10():
    H = maximal_jumping_divisor(F(3, 2), example_3_10())
    assert H.support.support == frozenset({1, 3, 4, 5})
    assert H.components == (frozenset({1}), frozenset({3, 4, 5}))
    assert H.dicritical_sum == 1


def test_h_is_periodic():
    rd = example_3_10()
    for c in candidates(rd, 0, 1):
        assert maximal_jumping_divisor(c, rd).support == maximal_jumping_divisor(c + 1, rd).support


def test_ceil_relative_at_three_halves():
    assert ceil_relative(F(3, 2), example_3_10()) == Divisor.of([-3, -7, -10, -11, -22, -33])


def test_log_canonical_threshold_of_example_3_10():
    rd = example_3_10()
    jn = jumping_numbers(rd, 1)
    assert jn.entries[0] == (F(13, 30), 1)
    assert all(m == 1 for _, m in jn)


def test_candidates_match_brute_force():
    rd = example_3_10()
    brute = {
        F(k + m, e)
        for k, e in zip(rd.K, rd.F)
        for m in range(-200, 200)
        if 0 < F(k + m, e) <= 1
    }
    assert candidates(rd, 0, 1) == sorted(brute)
    assert len(brute) == 46


def test_candidates_reject_bad_interval():
    with pytest.raises(MalformedInput):
        candidates(example_3_10(), 1, 1)


@pytest.mark.parametrize("a,b", [(1, 1), (2, 3), (2, 4), (3, 10), (4, 6), (5, 7), (6, 9)])
def test_multiplicities_match_monomial_lattice_count(a, b):
    rd = monomial_resolution(a, b)
    for c in candidates(rd, 0, 3):
        assert multiplicity(c, rd).m == monomial_multiplicity(c, a, b), c


def test_maximal_ideal_multiplicities():
    rd = monomial_resolution(1, 1)
    assert [multiplicity(k, rd).m for k in range(1, 8)] == [0, 1, 2, 3, 4, 5, 6]


def test_minus_three_curve():
    rd = singular_instances()[4]
    assert multiplicity(F(2, 3), rd).m == 1
    assert multiplicity(F(5, 3), rd).m == 4
    assert multiplicity(1, rd).m == 0


def test_multiplicity_routes_agree_on_corpus():
    for rd in corpus()[:25]:
        for c in candidates(rd, 0, 2):
            rec = multiplicity(c, rd)
            assert rec.m == rec.m_by_intersection == rec.m_by_sum == rec.m_by_virtual
            assert multiplicity_by_closure(c, rd) == rec.m


def test_criterion_matches_positive_multiplicity():
    for rd in corpus()[:20]:
        for c in candidates(rd, 0, 2):
            assert criterion_holds(c, rd) == (multiplicity(c, rd).m > 0)
            assert is_jumping_number(c, rd) == (multiplicity(c, rd).m > 0)


def test_non_candidate_is_not_jumping():
    assert multiplicity(F(1, 7), example_3_10()).m == 0


def test_exponent_must_be_positive():
    with pytest.raises(MalformedInput):
        multiplicity(0, example_3_10())


def test_intersection_lemma_requires_support():
    with pytest.raises(MalformedInput):
        intersection_lemma(F(3, 2), 0, example_3_10())
    assert intersection_lemma(F(3, 2), 1, example_3_10()) == -1


def test_dicritical_jumping_on_example_3_10():
    rd = example_3_10()
    for k in range(31, 61):
        verdict = dicritical_jumping(5, k, rd)
        assert verdict.jumping and verdict.rule == "threshold"
    assert dicritical_jumping(5, 30, rd).rule == "boundary"
    assert dicritical_jumping(5, 30, rd).jumping == (multiplicity(1, rd).m > 0)
    with pytest.raises(MalformedInput):
        dicritical_jumping(0, 1, rd)


def test_dicritical_verdict_matches_multiplicity():
    for rd in corpus()[:25] + singular_instances():
        for i in rd.dicritical():
            for k in range(1, 2 * int(rd.F[i]) + 1):
                lam = F(k) / rd.F[i]
                assert dicritical_jumping(i, k, rd).jumping == (multiplicity(lam, rd).m > 0)


def test_growth_and_structure_on_corpus():
    for rd in corpus()[:25]:
        for c in candidates(rd, 0, 2):
            diff = growth_check(c, rd)
            assert 0 <= diff <= rd.rho_total
            structure_check(c, rd)


def test_structure_records_isolated_e2():
    report = structure_check(F(3, 2), example_3_10())
    assert any(clause == "isolated E_2: two neighbours with fractional sum 1" for clause in report.clauses)


def test_corrupted_data_trips_cross_check():
    rd = example_3_10()
    from multiplier_ideals import ResolutionData

    bad = ResolutionData(rd.graph, Divisor.of([1, 2, 3, 4, 8, 13]), rd.F, rd.rho, rd.rho_total)
    with pytest.raises(CrossCheckError):
        for c in candidates(bad, 0, 2):
            multiplicity(c, bad)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_periodicity_of_growth(data):
    rd = data.draw(st.sampled_from(corpus()))
    cs = candidates(rd, 0, 1)
    c = data.draw(st.sampled_from(cs))
    k = data.draw(st.integers(0, 3))
    H = maximal_jumping_divisor(c, rd)
    assert multiplicity(c + k, rd).m == multiplicity(c, rd).m + k * H.dicritical_sum


def test_dicritical_shortcut_skipped_for_fractional_canonical():
    # single (-3)-curve: k = -1/3, so 1 > 1/rho is not even a candidate
    rd = singular_instances()[4]
    verdict = dicritical_jumping(0, 1, rd)
    assert verdict == type(verdict)(False, "direct")


def test_one_to_two_classification_with_fractional_canonical():
    # centre (-3) with three (-2) leaves: 5/3 jumps although 2/3 does not,
    # and 5/3 is (k_i + m)/e_i on a dicritical leaf but not of the form k/e_i
    rd = singular_instances()[5]
    assert multiplicity(F(2, 3), rd).m == 0
    assert multiplicity(F(5, 3), rd).m > 0
    assert rd.K[1].denominator == 3 and rd.rho[1] == 1


def _floor_divisor(c, rd):
    import math

    return Divisor(tuple(F(math.floor(c * e - k)) for k, e in zip(rd.K, rd.F)))


def test_consecutive_jumps_measure_codimension():
    from multiplier_ideals import ideal_codim

    for rd in corpus()[:20]:
        jn = jumping_numbers(rd, 2).entries
        cs = candidates(rd, 0, 2)
        for (lo, _), (hi, m) in zip(jn, jn[1:]):
            gap = ideal_codim(_floor_divisor(hi, rd), rd) - ideal_codim(_floor_divisor(lo, rd), rd)
            assert gap == m
            assert all(multiplicity(g, rd).m == 0 for g in cs if lo < g < hi)


def test_periodicity_at_random_rationals():
    import random

    rng = random.Random(23)
    for rd in corpus():
        for _ in range(200):
            c = F(rng.randint(1, 400), rng.randint(1, 60))
            assert maximal_jumping_divisor(c, rd).support == maximal_jumping_divisor(c + 1, rd).support


def test_no_jumps_off_candidates():
    import random

    rng = random.Random(29)
    for rd in corpus()[:25]:
        cs = set(candidates(rd, 0, 3))
        for _ in range(40):
            c = F(rng.randint(1, 3 * 97), 97)
            if c not in cs:
                assert multiplicity(c, rd).m == 0
