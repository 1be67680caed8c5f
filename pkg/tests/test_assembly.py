from fractions import Fraction
from random import Random

import pytest

from core.exact_poly import to_rat
from core.piecewise_map import feasible_targets, mu_poly
from core.quiver import all_patterns
from errors import DomainError
from invariants.assembly import (CollapsedAssembler, FullAssembler,
                                 assemble_system, get_assembler,
                                 monomial_values)
from invariants.carriage_wise import check_invariant_symbolic
from invariants.linear_algebra import nullspace


def kernel(system):
    return nullspace([row for _, row in system.rows()], system.ncols)


def dot(row, vector):
    return sum(to_rat(v) * vector.get(c, 0) for c, v in row.items())


def test_column_order():
    system = assemble_system(3, 1, "full")
    patterns = all_patterns(3)
    assert system.num_pieces == 8
    assert system.ncols == 32
    assert system.columns[0] == (patterns[0], (0, 0, 0))
    assert system.columns[3] == (patterns[0], (1, 0, 0))
    assert system.columns[4] == (patterns[1], (0, 0, 0))
    assert system.column(2, 1) == 9


def test_blocks_cover_every_identity_once():
    system = assemble_system(4, 1, "full")
    seen = [identity for block in system.blocks
            for identity in block.identities]
    expected = [(s, k, t) for s in all_patterns(4) for k in range(1, 5)
                for t in feasible_targets(s, k)]
    assert sorted(seen, key=repr) == sorted(expected, key=repr)
    assert len(set(seen)) == len(seen)


def test_collapsed_groups_follow_components():
    system = assemble_system(3, 1)
    assert system.mode == "collapsed"
    assert [group[0].text for group in system.groups] == ["+++", "++-"]
    assert assemble_system(4, 4).ncols == 210


def test_rows_match_the_identity_coefficients():
    rng = Random(2)
    system = assemble_system(3, 2, "full")
    vector = {c: Fraction(rng.randint(-5, 5), rng.randint(1, 3))
              for c in range(system.ncols)}
    F = system.reconstitute(vector)
    for provenance, row in system.rows():
        s, k, t = provenance.s, provenance.k, provenance.t
        diff = F.piece(s) - F.piece(t).compose(mu_poly(k, s))
        assert dot(row, vector) == diff.coefficient(provenance.monomial)


def test_constants_are_the_only_degree_zero_invariants():
    for mode in ("full", "collapsed"):
        vectors = kernel(assemble_system(3, 0, mode))
        assert len(vectors) == 1


def test_kernel_vectors_are_invariants():
    system = assemble_system(3, 3, "full")
    for vector in kernel(system):
        assert check_invariant_symbolic(system.reconstitute(vector)) is True


def test_sample_rows_vanish_on_the_kernel():
    rng = Random(0)
    system = assemble_system(3, 2, "full")
    vectors = kernel(system)
    for block in system.blocks[:10]:
        rows = system.block_sample_rows(block, rng)
        width = len(system.monomials) * (
            1 if block.source == block.target else 2)
        assert len(rows) == width + 2
        for row in rows:
            assert all(dot(row, vector) == 0 for vector in vectors)


def test_reconstitute_constant():
    system = assemble_system(4, 2)
    F = system.reconstitute({0: Fraction(1)})
    assert F.is_uniform
    assert F.degree_bound == 0


def test_monomial_values():
    monomials = ((0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0))
    assert monomial_values([Fraction(2), Fraction(3)], monomials) == \
        [1, 3, 2, 9, 6, 4]


def test_assemblers():
    assert isinstance(get_assembler("full"), FullAssembler)
    assert isinstance(get_assembler("collapsed"), CollapsedAssembler)
    assert FullAssembler().piece_groups(2) == [[s] for s in all_patterns(2)]


@pytest.mark.parametrize("n, degree, mode", [
    (3, -1, "full"),
    (3, 2, "sideways"),
])
def test_assembly_errors(n, degree, mode):
    with pytest.raises(DomainError):
        assemble_system(n, degree, mode)
