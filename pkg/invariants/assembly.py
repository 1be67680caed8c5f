#!/usr/bin/env python3
"""
Assembly of the linear system whose solutions are invariants.

The unknowns are the coefficients of the pieces of a carriage-wise
polynomial of degree <= d. Every identity

    P_s - P_t o mu_poly(k, s) = 0

is linear in them: matching the coefficient of each monomial of degree
<= 2d gives one row. Identities that share the source piece, the target
piece and the mutation map give the same rows, so they are grouped into
one `ConstraintBlock` that remembers every (s, k, t) it stands for.

Two assemblers decide what a piece is:
    - FullAssembler: one piece per carriage (2^m pieces).
    - CollapsedAssembler: one piece per flip-graph component; carriages
      joined by an allowed flip must carry equal pieces anyway.

Columns are ordered by piece (pieces by their least pattern), then by
monomial in ascending graded lex order, constant first.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Dict, Iterator, List, Sequence, Tuple

from sympy.polys.domains import QQ

from core.carriage_graph import components
from core.exact_poly import (Monomial, Poly, SubstitutionCache, entry_count,
                            monomial_key, monomials_up_to, to_qq)
from core.piecewise_map import (MutationMapKey, feasible_targets,
                                mu_poly_for_key, mutation_key)
from core.quiver import SignPattern, all_patterns
from errors import DomainError
from invariants.carriage_wise import CarriageWisePolynomial
from invariants.linear_algebra import SparseRow, Vector
from logger import get_logger
from utils import override

logger = get_logger(__name__)

MODES = ("full", "collapsed")


@dataclass(frozen=True)
class RowProvenance:
    """Where a row comes from: the identity (s, k, t) and the monomial."""

    s: SignPattern
    k: int
    t: SignPattern
    monomial: Monomial


@dataclass(frozen=True)
class ConstraintBlock:
    """
    Rows shared by every identity with the same source piece, target
    piece and mutation map.

    Attributes:
        source (int): Piece index of s.
        target (int): Piece index of t.
        key (MutationMapKey): The map mu_poly(k, s).
        identities (Tuple[Tuple[SignPattern, int, SignPattern], ...]):
            Every (s, k, t) the block stands for, in sweep order.
    """

    source: int
    target: int
    key: MutationMapKey
    identities: Tuple[Tuple[SignPattern, int, SignPattern], ...]


class ConstraintSystem:
    """
    The coefficient-matching system for degree d.

    Rows are produced block by block on demand; `rows()` walks all of
    them with their provenance.
    """

    def __init__(self, n: int, degree: int, mode: str,
                 groups: Sequence[Sequence[SignPattern]],
                 blocks: Sequence[ConstraintBlock]):
        self.n = n
        self.degree = degree
        self.mode = mode
        self.groups = [list(group) for group in groups]
        self.blocks = list(blocks)
        self.piece_of: Dict[SignPattern, int] = {
            s: index for index, group in enumerate(self.groups)
            for s in group
        }
        self.monomials: Tuple[Monomial, ...] = monomials_up_to(
            entry_count(n), degree)
        self._substitutions: Dict[MutationMapKey, SubstitutionCache] = {}

    @property
    def num_pieces(self) -> int:
        return len(self.groups)

    @property
    def ncols(self) -> int:
        return self.num_pieces * len(self.monomials)

    @property
    def columns(self) -> List[Tuple[SignPattern, Monomial]]:
        """Column labels: (least pattern of the piece, monomial)."""
        return [(group[0], monomial)
                for group in self.groups for monomial in self.monomials]

    def column(self, piece: int, monomial_index: int) -> int:
        return piece * len(self.monomials) + monomial_index

    def substitution(self, key: MutationMapKey) -> SubstitutionCache:
        cache = self._substitutions.get(key)
        if cache is None:
            cache = SubstitutionCache(mu_poly_for_key(key))
            self._substitutions[key] = cache
        return cache

    def block_rows(self,
                   block: ConstraintBlock) -> List[Tuple[Monomial, SparseRow]]:
        """Coefficient rows of a block, by ascending matched monomial."""
        images = self.substitution(block.key)
        rows: Dict[Monomial, SparseRow] = {}
        for index, monomial in enumerate(self.monomials):
            source = self.column(block.source, index)
            row = rows.setdefault(monomial, {})
            row[source] = row.get(source, QQ.zero) + QQ.one
            target = self.column(block.target, index)
            for image_monomial, coeff in images.image(monomial).items():
                row = rows.setdefault(image_monomial, {})
                row[target] = row.get(target, QQ.zero) - coeff
        result = []
        for monomial in sorted(rows, key=monomial_key):
            row = {c: v for c, v in rows[monomial].items() if v}
            if row:
                result.append((monomial, row))
        return result

    def block_sample_rows(self, block: ConstraintBlock,
                          rng: Random) -> List[SparseRow]:
        """
        Evaluation rows of a block: the identity evaluated at random
        integer points, one row per point, as many points as the block
        has columns plus two.
        """
        poly_map = mu_poly_for_key(block.key)
        width = len(self.monomials) * (1 if block.source == block.target
                                       else 2)
        m = entry_count(self.n)
        rows = []
        for _ in range(width + 2):
            point = [Fraction(rng.randint(-9, 9)) for _ in range(m)]
            source_values = monomial_values(point, self.monomials)
            target_values = monomial_values(poly_map.evaluate(point),
                                            self.monomials)
            row: SparseRow = {}
            for index in range(len(self.monomials)):
                source = self.column(block.source, index)
                target = self.column(block.target, index)
                row[source] = row.get(source, QQ.zero) + \
                    to_qq(source_values[index])
                row[target] = row.get(target, QQ.zero) - \
                    to_qq(target_values[index])
            rows.append({c: v for c, v in row.items() if v})
        return rows

    def rows(self) -> Iterator[Tuple[RowProvenance, SparseRow]]:
        for block in self.blocks:
            s, k, t = block.identities[0]
            for monomial, row in self.block_rows(block):
                yield RowProvenance(s, k, t, monomial), row

    def reconstitute(self, vector: Vector) -> CarriageWisePolynomial:
        """The carriage-wise polynomial with coefficient vector `vector`."""
        m = entry_count(self.n)
        size = len(self.monomials)
        terms: List[Dict[Monomial, Fraction]] = [
            {} for _ in range(self.num_pieces)]
        for column, value in vector.items():
            piece, index = divmod(column, size)
            terms[piece][self.monomials[index]] = value
        polys = [Poly.from_terms(m, piece_terms) for piece_terms in terms]
        return CarriageWisePolynomial(
            self.n, {s: polys[self.piece_of[s]] for s in all_patterns(self.n)})


def monomial_values(point: Sequence[Fraction],
                    monomials: Sequence[Monomial]) -> List[Fraction]:
    """Values of `monomials` (closed under lowering) at `point`."""
    known: Dict[Monomial, Fraction] = {}
    values = []
    for monomial in monomials:
        if not any(monomial):
            value = Fraction(1)
        else:
            index = next(c for c, e in enumerate(monomial) if e)
            lower = list(monomial)
            lower[index] -= 1
            value = known[tuple(lower)] * point[index]
        known[monomial] = value
        values.append(value)
    return values


class AssemblerInterface(ABC):
    """Interface for turning (n, d) into a constraint system."""

    @abstractmethod
    def piece_groups(self, n: int) -> List[List[SignPattern]]:
        """
        Partition the carriages of size n into groups sharing a piece.

        Returns:
            List[List[SignPattern]]: Groups ordered by least member.
        """
        pass

    @abstractmethod
    def assemble(self, n: int, degree: int) -> ConstraintSystem:
        """Build the system for pieces of degree <= degree."""
        pass


class Assembler(AssemblerInterface):
    """Block assembly shared by both modes; subclasses choose groups."""

    mode = ""

    @override
    def piece_groups(self, n: int) -> List[List[SignPattern]]:
        pass

    def assemble(self, n: int, degree: int) -> ConstraintSystem:
        if not isinstance(degree, int) or degree < 0:
            raise DomainError(f"degree bound must be >= 0, got {degree}")
        groups = self.piece_groups(n)
        piece_of = {s: index for index, group in enumerate(groups)
                    for s in group}
        blocks: Dict[Tuple[int, int, MutationMapKey], list] = {}
        for s in all_patterns(n):
            for k in range(1, n + 1):
                key = mutation_key(s, k)
                for t in feasible_targets(s, k):
                    blocks.setdefault((piece_of[s], piece_of[t], key),
                                      []).append((s, k, t))
        system = ConstraintSystem(
            n, degree, self.mode, groups,
            [ConstraintBlock(source, target, key, tuple(identities))
             for (source, target, key), identities in blocks.items()])
        logger.info(f"mode={self.mode};n={n};d={degree};"
                    f"pieces={system.num_pieces};columns={system.ncols};"
                    f"blocks={len(system.blocks)};")
        return system


class FullAssembler(Assembler):
    """One unknown piece per carriage."""

    mode = "full"

    def piece_groups(self, n: int) -> List[List[SignPattern]]:
        return [[s] for s in all_patterns(n)]


class CollapsedAssembler(Assembler):
    """One unknown piece per flip-graph component."""

    mode = "collapsed"

    def piece_groups(self, n: int) -> List[List[SignPattern]]:
        return components(n)


ASSEMBLERS = {
    "full": FullAssembler,
    "collapsed": CollapsedAssembler,
}


def get_assembler(mode: str) -> Assembler:
    try:
        return ASSEMBLERS[mode]()
    except KeyError:
        raise DomainError(
            f"unknown mode {mode!r}; expected one of {', '.join(MODES)}"
        )


def assemble_system(n: int, degree: int,
                    mode: str = "collapsed") -> ConstraintSystem:
    """
    Build the invariance system of size n and degree bound d.

    Raises:
        DomainError: For a negative degree or an unknown mode.
        CapExceededError: In collapsed mode, if n is above the
            component cap.
    """
    return get_assembler(mode).assemble(n, degree)
