from random import Random

import pytest

from core.exact_poly import PolyVec
from core.piecewise_map import (TRANSLATION_FAMILIES, added_term_map,
                                family_patterns, feasible_targets, mu_poly,
                                mutation_key, sample_transition_point,
                                verify_double_mutation_translation,
                                verify_involution_identity)
from core.quiver import (SignPattern, all_patterns, determinant_poly,
                         mutate, pfaffian_poly, quiver_from_letters,
                         random_inner_quiver, random_quiver,
                         sign_pattern)
from errors import (DimensionError, UnsupportedSizeError, VertexRangeError,
                    WrongCarriageError)


def cases(n):
    return [(s, k) for s in all_patterns(n) for k in range(1, n + 1)]


def test_mu_poly_agrees_with_mutation_on_its_carriage():
    rng = Random(4)
    for n in (3, 4, 5):
        for _ in range(40):
            Q = random_quiver(n, rng)
            s = sign_pattern(Q)
            k = rng.randint(1, n)
            assert mu_poly(k, s).evaluate(Q.upper) == mutate(Q, k).upper


def test_mu_poly_example_formula():
    Q = quiver_from_letters(1, 1, 2, 1, 3, -1)
    s = sign_pattern(Q)
    assert mu_poly(4, s).evaluate(Q.upper) == mutate(Q, 4).upper
    assert mutate(Q, 4) == quiver_from_letters(7, 3, -2, 1, -3, 1)


def test_mu_poly_depends_on_incident_signs_only():
    s = SignPattern.parse("++++++")
    t = s.flipped(3)  # x23 is not incident to vertex 4
    assert mutation_key(s, 4) == mutation_key(t, 4)
    assert mu_poly(4, s) is mu_poly(4, t)


def test_mu_poly_errors():
    s = SignPattern.parse("+++")
    with pytest.raises(VertexRangeError):
        mu_poly(4, s)
    with pytest.raises(DimensionError):
        mu_poly(1, s, n=4)


@pytest.mark.parametrize("n", [3, 4])
def test_involution_identity_everywhere(n):
    for s, k in cases(n):
        assert verify_involution_identity(s, k)


@pytest.mark.parametrize("n", [3, 4])
def test_feasible_targets_are_realized(n):
    rng = Random(n)
    for s, k in cases(n):
        targets = feasible_targets(s, k)
        assert list(targets) == sorted(targets)
        for t in targets:
            Q = sample_transition_point(s, k, t, rng)
            assert sign_pattern(Q) == s
            assert sign_pattern(mutate(Q, k)) == t


def test_random_points_land_in_feasible_targets():
    rng = Random(9)
    for _ in range(300):
        s = rng.choice(all_patterns(4))
        k = rng.randint(1, 4)
        Q = random_inner_quiver(s, rng)
        image = mutate(Q, k)
        if image.is_inner:
            assert sign_pattern(image) in feasible_targets(s, k)


def test_unreachable_target_is_rejected():
    s = SignPattern.parse("+++")
    with pytest.raises(WrongCarriageError):
        sample_transition_point(s, 1, s, Random(0))


def test_determinant_and_pfaffian_under_every_map():
    det, pf = determinant_poly(4), pfaffian_poly(4)
    for s, k in cases(4):
        mu = mu_poly(k, s)
        assert det.compose(mu) == det
        assert pf.compose(mu) == -pf


@pytest.mark.parametrize("n", [3, 4])
def test_double_mutation_adds_twice_the_added_terms(n):
    for s, k in cases(n):
        mu = mu_poly(k, s)
        added = added_term_map(k, s)
        assert mu.compose(mu) == PolyVec.identity(len(s.signs)) + added + added


@pytest.mark.parametrize("k", sorted(TRANSLATION_FAMILIES))
def test_translation_families(k):
    patterns = family_patterns(k)
    assert len(patterns) == 8
    for s in patterns:
        assert verify_double_mutation_translation(s, k)


def test_translation_family_errors():
    with pytest.raises(UnsupportedSizeError):
        verify_double_mutation_translation(SignPattern.parse("+++"))
    outside = next(s for s in all_patterns(4)
                   if not TRANSLATION_FAMILIES[4].admits(s))
    with pytest.raises(WrongCarriageError):
        verify_double_mutation_translation(outside, 4)
    with pytest.raises(WrongCarriageError):
        verify_double_mutation_translation(SignPattern.parse("++++++"), 2)
