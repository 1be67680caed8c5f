import json
from fractions import Fraction

import pytest

import invariants.carriage_wise as carriage_wise
from core.exact_poly import Poly, format_poly
from core.piecewise_map import feasible_targets
from core.quiver import Quiver, SignPattern, all_patterns, entry_poly, mutate
from errors import (AmbiguousBoundaryError, DimensionError, FormatError,
                    UnsupportedSizeError)
from invariants.builtin import (det_invariant, markov_invariant,
                                markov_piece, markov_sign)
from invariants.carriage_wise import (CarriageWisePolynomial, Witness,
                                      check_invariant_symbolic, evaluate,
                                      invariance_defects)

EXAMPLE = Quiver(4, (1, 1, 2, 1, -3, -1))


def P(text):
    return SignPattern.parse(text)


def test_evaluate_builtins():
    assert evaluate(det_invariant(), EXAMPLE) == 16
    assert evaluate(det_invariant(), Quiver.zero(4)) == 0
    assert evaluate(markov_invariant(), Quiver(3, (2, -2, 2))) == 4
    assert evaluate(CarriageWisePolynomial.constant(3), Quiver.zero(3)) == 1


def test_evaluate_uses_the_piece_of_the_carriage():
    F = CarriageWisePolynomial(2, {P("+"): Poly.constant(1, 1),
                                   P("-"): Poly.constant(1, 2)})
    assert evaluate(F, Quiver(2, (Fraction(1, 3),))) == 1
    assert evaluate(F, Quiver(2, (-5,))) == 2


def test_evaluate_rejects_disagreeing_boundary():
    F = CarriageWisePolynomial(2, {P("+"): Poly.constant(1, 1),
                                   P("-"): Poly.constant(1, 2)})
    with pytest.raises(AmbiguousBoundaryError):
        evaluate(F, Quiver.zero(2))


def test_evaluate_size_mismatch():
    with pytest.raises(DimensionError):
        evaluate(det_invariant(), Quiver.zero(3))


def test_markov_signs():
    assert markov_sign(P("+++")) == 1
    assert markov_sign(P("+-+")) == 1
    assert markov_sign(P("-+-")) == -1
    assert markov_sign(P("++-")) == -1
    x12, x13, x23 = (entry_poly(3, 1, 2), entry_poly(3, 1, 3),
                     entry_poly(3, 2, 3))
    assert markov_piece(P("---")) == \
        x12 ** 2 + x13 ** 2 + x23 ** 2 - x12 * x13 * x23


def test_builtins_are_invariant():
    assert check_invariant_symbolic(det_invariant()) is True
    assert check_invariant_symbolic(markov_invariant()) is True
    assert check_invariant_symbolic(
        CarriageWisePolynomial.constant(4, 7)) is True


def test_verified_sweep_counts_every_identity(monkeypatch):
    messages = []
    monkeypatch.setattr(carriage_wise.logger, "info", messages.append)
    assert check_invariant_symbolic(markov_invariant()) is True
    expected = sum(len(feasible_targets(s, k))
                   for s in all_patterns(3) for k in (1, 2, 3))
    assert messages[-1] == f"n=3;identities={expected};verified=true;"


def test_builtin_sizes():
    with pytest.raises(UnsupportedSizeError):
        det_invariant(3)
    with pytest.raises(UnsupportedSizeError):
        markov_invariant(4)


def test_single_entry_is_not_invariant():
    F = CarriageWisePolynomial.uniform(4, entry_poly(4, 1, 2))
    result = check_invariant_symbolic(F, seed=3)
    assert isinstance(result, Witness)
    assert result.s.text == "++++++"
    assert result.k == 1
    assert result.diff == 2 * entry_poly(4, 1, 2)
    Q = result.point
    assert Q is not None
    assert evaluate(F, Q) != evaluate(F, mutate(Q, 1))
    data = result.to_json()
    assert data["diff"] == "2*x12"
    assert data["image"] == mutate(Q, 1).to_json()["upper"]


def test_perturbed_markov_is_rejected():
    pieces = dict(markov_invariant().pieces)
    pieces[P("+++")] = markov_piece(P("---"))
    result = check_invariant_symbolic(CarriageWisePolynomial(3, pieces))
    assert isinstance(result, Witness)
    assert not result.diff.is_zero
    assert P("+++") in (result.s, result.t)


def test_witness_is_reproducible():
    F = CarriageWisePolynomial.uniform(3, entry_poly(3, 1, 3) ** 2)
    first = check_invariant_symbolic(F, seed=5)
    second = check_invariant_symbolic(F, seed=5)
    assert first == second


def test_defects_of_an_invariant_are_empty():
    assert list(invariance_defects(markov_invariant())) == []


def test_pieces_must_cover_every_carriage():
    with pytest.raises(DimensionError):
        CarriageWisePolynomial(3, {P("+++"): Poly.one(3)})
    with pytest.raises(DimensionError):
        CarriageWisePolynomial(3, {s: Poly.one(6) for s in all_patterns(3)})


def test_arithmetic_and_uniformity():
    one = CarriageWisePolynomial.constant(3)
    markov = markov_invariant()
    assert one.is_uniform
    assert not markov.is_uniform
    assert (markov + one) - one == markov
    assert one.scaled(3) == CarriageWisePolynomial.constant(3, 3)
    assert markov.degree_bound == 3
    with pytest.raises(DimensionError):
        markov + CarriageWisePolynomial.constant(4)


def test_json_round_trip():
    markov = markov_invariant()
    data = markov.to_json()
    assert data["n"] == 3
    assert data["degree"] == 3
    assert [item["pattern"] for item in data["pieces"]] == \
        [s.text for s in all_patterns(3)]
    assert data["pieces"][0]["poly"] == format_poly(markov_piece(P("+++")))
    assert CarriageWisePolynomial.loads(markov.dumps()) == markov


def test_file_round_trip(tmp_path):
    path = str(tmp_path / "det.json")
    det_invariant().save_to_file(path)
    assert CarriageWisePolynomial.load_from_file(path) == det_invariant()


def _markov_data():
    return markov_invariant().to_json()


def test_json_rejects_low_degree():
    data = _markov_data()
    data["degree"] = 2
    with pytest.raises(FormatError):
        CarriageWisePolynomial.loads(json.dumps(data))


def test_json_rejects_missing_piece():
    data = _markov_data()
    data["pieces"] = data["pieces"][1:]
    with pytest.raises(FormatError):
        CarriageWisePolynomial.loads(json.dumps(data))


def test_json_rejects_duplicate_piece():
    data = _markov_data()
    data["pieces"][1] = dict(data["pieces"][0])
    with pytest.raises(FormatError):
        CarriageWisePolynomial.loads(json.dumps(data))


@pytest.mark.parametrize("change", [
    {"n": 1},
    {"n": "3"},
    {"pieces": {}},
    {"pieces": [{"pattern": "++"}]},
])
def test_json_rejects_malformed(change):
    data = _markov_data()
    data.update(change)
    with pytest.raises(FormatError):
        CarriageWisePolynomial.loads(json.dumps(data))


def test_missing_file():
    with pytest.raises(FormatError):
        CarriageWisePolynomial.load_from_file("/nonexistent/invariant.json")
