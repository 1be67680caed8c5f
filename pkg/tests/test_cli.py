import json
from io import StringIO

import pytest

from cli import build_parser, load_invariant, main
from core.quiver import Quiver, entry_poly
from errors import FormatError
from invariants.builtin import det_invariant
from invariants.carriage_wise import CarriageWisePolynomial
from invariants.search import InvariantBasis

EXAMPLE = Quiver(4, (1, 1, 2, 1, -3, -1))


def run(*argv):
    out = StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


@pytest.fixture
def example_file(tmp_path):
    path = str(tmp_path / "q.json")
    EXAMPLE.save_to_file(path)
    return path


@pytest.fixture
def markov_file(tmp_path):
    path = str(tmp_path / "markov.json")
    Quiver(3, (2, -2, 2)).save_to_file(path)
    return path


@pytest.fixture
def x12_file(tmp_path):
    path = str(tmp_path / "x12.json")
    CarriageWisePolynomial.uniform(4, entry_poly(4, 1, 2)).save_to_file(path)
    return path


def test_mutate_prints_trail_and_result(example_file):
    code, text = run("mutate", "--in", example_file, "--seq", "4")
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "step 1: mu_4 -> ++-+++  Pf=-4"
    result = Quiver.loads("\n".join(lines[1:]))
    assert result == Quiver(4, (7, 3, -2, 1, 3, 1))


def test_mutate_writes_output_file(example_file, tmp_path):
    target = str(tmp_path / "out.json")
    code, text = run("mutate", "--in", example_file, "--seq", "2,2",
                     "--out", target)
    assert code == 0
    assert len(text.splitlines()) == 2
    assert Quiver.load_from_file(target) == EXAMPLE


def test_mutate_json(example_file):
    code, text = run("mutate", "--in", example_file, "--seq", "4", "--json")
    data = json.loads(text)
    assert code == 0
    assert data["trail"][0]["pfaffian"] == "-4"
    assert data["result"]["upper"] == ["7", "3", "-2", "1", "3", "1"]


@pytest.mark.parametrize("seq", ["a,b", "5", "0"])
def test_mutate_bad_sequence(example_file, seq, capsys):
    code, _ = run("mutate", "--in", example_file, "--seq", seq)
    assert code == 2
    assert capsys.readouterr().err.startswith("error: ")


def test_mutate_missing_file(tmp_path):
    code, _ = run("mutate", "--in", str(tmp_path / "none.json"), "--seq", "1")
    assert code == 2


def test_carriage_graph():
    code, text = run("carriage-graph", "--n", "3", "--components")
    assert code == 0
    assert text.splitlines() == [
        "2 components: 4, 4",
        "component 1: 4 patterns, least +++",
        "component 2: 4 patterns, least ++-",
    ]
    code, text = run("carriage-graph", "--n", "4")
    assert text == "1 component: 64\n"


def test_carriage_graph_json():
    code, text = run("carriage-graph", "--n", "3", "--json")
    assert json.loads(text) == {
        "n": 3,
        "connected": False,
        "components": [{"size": 4, "least": "+++"},
                       {"size": 4, "least": "++-"}],
    }


def test_carriage_graph_over_cap():
    assert run("carriage-graph", "--n", "6")[0] == 2


def test_check_builtin():
    assert run("check", "--invariant", "det") == (0, "verified\n")
    code, text = run("check", "--invariant", "markov", "--json")
    assert json.loads(text) == {"verified": True}


def test_check_reports_witness(x12_file):
    code, text = run("check", "--invariant", x12_file)
    assert code == 1
    lines = text.splitlines()
    assert lines[0] == "not invariant"
    assert lines[1].startswith("  s=++++++ k=1 t=")
    assert lines[2] == "  diff: 2*x12"
    code, text = run("check", "--invariant", x12_file, "--json")
    data = json.loads(text)
    assert code == 1
    assert data["verified"] is False
    assert data["witness"]["k"] == 1


def test_check_unknown_source():
    assert run("check", "--invariant", "nosuchthing")[0] == 2


def test_search_two_vertices():
    code, text = run("search", "--n", "2", "--degree", "2")
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "dimension 3"
    assert "element 1:" in lines
    assert "  -: -x12" in lines


def test_search_four_vertices(tmp_path):
    target = str(tmp_path / "basis.json")
    code, text = run("search", "--n", "4", "--degree", "4", "--out", target)
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "dimension 2"
    assert lines[-1] == "spanned by {1, Det}"
    assert any(line.startswith("  letters: ") for line in lines)
    assert InvariantBasis.load_from_file(target).dimension == 2


def test_search_json():
    code, text = run("search", "--n", "3", "--degree", "3", "--mode", "full",
                     "--json", "--sample-prepass", "--seed", "3")
    data = json.loads(text)
    assert code == 0
    assert data["dimension"] == 2
    assert data["verified"] is True
    assert "det_span" not in data


def test_search_guard():
    assert run("search", "--n", "4", "--degree", "3", "--mode", "full")[0] \
        == 2


def test_orbit_constant_watch(markov_file):
    code, text = run("orbit", "--in", markov_file, "--steps", "10",
                     "--watch", "markov")
    assert code == 0
    data = json.loads(text)
    assert data["watch"] == ["markov"]
    assert all(row["values"] == ["4"] for row in data["rows"])


def test_orbit_long_det_walk_stays_constant(example_file):
    code, text = run("orbit", "--in", example_file, "--steps", "1000",
                     "--seed", "3", "--watch", "det")
    assert code == 0
    data = json.loads(text)
    assert len(data["rows"]) == 1001
    values = {row["values"][0] for row in data["rows"]
              if row["values"] is not None}
    assert values == {"16"}


def test_orbit_varying_watch(example_file, x12_file, tmp_path):
    target = str(tmp_path / "walk.json")
    code, _ = run("orbit", "--in", example_file, "--steps", "30",
                  "--watch", "det", "--watch", x12_file, "--out", target)
    assert code == 1
    with open(target) as f:
        assert json.load(f)["watch"] == ["det", x12_file]


def test_orbit_size_mismatch(markov_file):
    assert run("orbit", "--in", markov_file, "--watch", "det")[0] == 2


def test_integer_orbit(markov_file):
    code, text = run("integer-orbit", "--in", markov_file)
    assert code == 0
    assert json.loads(text)["visited"] == 2


def test_load_invariant_prefers_builtin_names():
    assert load_invariant("det") == det_invariant()
    with pytest.raises(FormatError):
        load_invariant("missing.json")


def test_parser_requires_a_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])
