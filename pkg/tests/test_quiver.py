from fractions import Fraction
from random import Random

import pytest
from sympy import Matrix, Rational

from core.exact_poly import Poly
from core.quiver import (Quiver, SignPattern, all_patterns,
                         compatible_patterns, determinant, determinant_poly,
                         entry, letter_form, letters_of, mutate,
                         mutate_sequence, pfaffian, pfaffian_poly,
                         quiver_from_letters, random_quiver, sign_pattern)
from errors import (DimensionError, FormatError, NotInnerError, ParityError,
                    UnsupportedSizeError, VertexRangeError)

EXAMPLE = Quiver(4, (1, 1, 2, 1, -3, -1))


def sympy_det(Q):
    value = Matrix([[Rational(v.numerator, v.denominator) for v in row]
                    for row in Q.matrix()]).det()
    return Fraction(int(value.p), int(value.q))


def test_skew_symmetric_entries():
    assert entry(EXAMPLE, 2, 4) == -3
    assert entry(EXAMPLE, 4, 2) == 3
    assert entry(EXAMPLE, 3, 3) == 0
    with pytest.raises(VertexRangeError):
        entry(EXAMPLE, 0, 1)


def test_quiver_validation():
    with pytest.raises(DimensionError):
        Quiver(3, (1, 2))
    with pytest.raises(DimensionError):
        Quiver(1, ())


def test_mutate_example_at_four():
    assert mutate(EXAMPLE, 4) == Quiver(4, (7, 3, -2, 1, 3, 1))


def test_mutate_leaves_input_unchanged():
    before = EXAMPLE.upper
    mutate(EXAMPLE, 1)
    assert EXAMPLE.upper == before


def test_mutate_rejects_bad_vertex():
    with pytest.raises(VertexRangeError):
        mutate(EXAMPLE, 5)
    with pytest.raises(VertexRangeError):
        mutate(EXAMPLE, 0)


def test_mutation_is_an_involution():
    rng = Random(1)
    for _ in range(200):
        n = rng.randint(2, 5)
        Q = random_quiver(n, rng)
        k = rng.randint(1, n)
        assert mutate(mutate(Q, k), k) == Q


def test_mutate_sequence():
    assert mutate_sequence(EXAMPLE, [2, 2]) == EXAMPLE
    assert mutate_sequence(EXAMPLE, []) == EXAMPLE
    assert mutate_sequence(EXAMPLE, [4]) == mutate(EXAMPLE, 4)


def test_zero_quiver_is_fixed():
    zero = Quiver.zero(3)
    assert all(mutate(zero, k) == zero for k in range(1, 4))


def test_pfaffian_and_determinant_of_example():
    assert pfaffian(EXAMPLE) == 4
    assert determinant(EXAMPLE) == 16
    assert pfaffian(mutate(EXAMPLE, 4)) == -4


def test_pfaffian_needs_even_size():
    with pytest.raises(ParityError):
        pfaffian(Quiver.zero(3))
    with pytest.raises(ParityError):
        pfaffian_poly(5)


def test_determinant_matches_sympy():
    rng = Random(5)
    for n in (2, 3, 4, 5):
        Q = random_quiver(n, rng)
        assert determinant(Q) == sympy_det(Q)
        if n % 2 == 0:
            assert pfaffian(Q) ** 2 == determinant(Q)
        else:
            assert determinant(Q) == 0


def test_determinant_poly_is_pfaffian_squared():
    assert determinant_poly(4) == pfaffian_poly(4) ** 2
    assert determinant_poly(3).is_zero
    rng = Random(2)
    Q = random_quiver(6, rng)
    assert pfaffian_poly(6).evaluate(Q.upper) == pfaffian(Q)


def test_sign_pattern():
    assert sign_pattern(EXAMPLE).text == "++++--"
    assert sign_pattern(EXAMPLE).sign(4, 2) == 1
    with pytest.raises(NotInnerError):
        sign_pattern(Quiver(3, (0, 1, -1)))


def test_compatible_patterns():
    patterns = compatible_patterns(Quiver(3, (0, 1, -1)))
    assert [s.text for s in patterns] == ["++-", "-+-"]
    assert len(compatible_patterns(Quiver.zero(3))) == 8
    assert compatible_patterns(EXAMPLE) == [sign_pattern(EXAMPLE)]


def test_sign_pattern_parse():
    s = SignPattern.parse("+-+")
    assert s.n == 3
    assert s.signs == (1, -1, 1)
    assert str(s.negated()) == "-+-"
    assert s.flipped(0).text == "--+"
    for text in ("+-", "+x+", ""):
        with pytest.raises(FormatError):
            SignPattern.parse(text)


def test_all_patterns_order():
    patterns = all_patterns(3)
    assert len(patterns) == 8
    assert patterns[0].text == "+++"
    assert patterns[-1].text == "---"
    assert list(patterns) == sorted(patterns)


def test_json_round_trip():
    Q = Quiver(3, (Fraction(1, 2), -3, Fraction(-7, 4)))
    assert Q.to_json() == {"n": 3, "upper": ["1/2", "-3", "-7/4"]}
    assert Quiver.loads(Q.dumps()) == Q
    assert Q.dumps() == Quiver.loads(Q.dumps()).dumps()


@pytest.mark.parametrize("text", [
    '{"n": 3, "upper": ["1"]}',
    '{"n": 3, "upper": ["1.5", "1", "1"]}',
    '{"upper": ["1"]}',
    '[1, 2, 3]',
    'not json',
])
def test_json_rejects(text):
    with pytest.raises(FormatError):
        Quiver.loads(text)


def test_letters():
    Q = quiver_from_letters(1, 2, 3, 4, 5, 6)
    assert Q.upper == (1, 2, 3, 4, -5, 6)
    letters = letters_of(Q)
    assert letters["v"] == 5
    assert pfaffian(Q) == 1 * 6 + 2 * 5 + 3 * 4
    with pytest.raises(UnsupportedSizeError):
        letters_of(Quiver.zero(3))


def test_letter_form_of_pfaffian():
    assert letter_form(pfaffian_poly(4)) == "x*w + y*v + z*u"
    assert letter_form(Poly.zero(6)) == "0"
