#!/usr/bin/env python3
"""
Exact sparse linear algebra over QQ.

Rows and vectors are dictionaries {column: value} without zero values.
Elimination is delegated to sympy's `DomainMatrix.rref` on the sparse
(SDM) representation. `EchelonAccumulator` keeps the reduced row
echelon form of a growing set of rows so that a constraint system can
be reduced one block at a time; its nullspace is returned in canonical
form: reduced echelon on the column order, leading entries 1.
"""
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from core.exact_poly import to_qq, to_rat
from logger import get_logger

logger = get_logger(__name__)

SparseRow = Dict[int, object]
Vector = Dict[int, Fraction]


def _matrix(rows: Sequence[SparseRow], ncols: int) -> DomainMatrix:
    data = {i: dict(row) for i, row in enumerate(rows) if row}
    return DomainMatrix(data, (max(len(rows), 1), ncols), QQ)


def rref(rows: Sequence[SparseRow],
         ncols: int) -> Tuple[List[SparseRow], Tuple[int, ...]]:
    """
    Reduced row echelon form of the given QQ rows.

    Returns:
        Tuple[List[SparseRow], Tuple[int, ...]]: The nonzero reduced
            rows in pivot order and their pivot columns.
    """
    if not any(rows):
        return [], ()
    reduced, pivots = _matrix(rows, ncols).rref(method="GJ")
    sdm = reduced.to_sparse().rep
    result = []
    for index in range(len(pivots)):
        row = dict(sdm.get(index, {}))
        lead = row[pivots[index]]
        if lead != QQ.one:
            row = {c: v / lead for c, v in row.items()}
        result.append(row)
    return result, tuple(pivots)


def rank(rows: Sequence[SparseRow], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace_from_rref(reduced: Sequence[SparseRow],
                        pivots: Sequence[int], ncols: int) -> List[Vector]:
    """
    Kernel basis read off a reduced echelon form: one vector per free
    column f, equal to 1 at f and to minus the column f entries at the
    pivots.
    """
    pivot_set = set(pivots)
    vectors: Dict[int, Vector] = {f: {f: Fraction(1)}
                                  for f in range(ncols)
                                  if f not in pivot_set}
    for row, pivot in zip(reduced, pivots):
        for column, value in row.items():
            if column != pivot:
                vectors[column][pivot] = -to_rat(value)
    return [vectors[f] for f in sorted(vectors)]


def canonical_basis(vectors: Sequence[Vector], ncols: int) -> List[Vector]:
    """Reduced echelon form of the span of `vectors`, as Fraction rows."""
    rows = [{c: to_qq(v) for c, v in vector.items() if v}
            for vector in vectors]
    reduced, _ = rref(rows, ncols)
    return [{c: to_rat(v) for c, v in row.items()} for row in reduced]


def nullspace(rows: Sequence[SparseRow], ncols: int) -> List[Vector]:
    """Canonical basis of {v : row . v = 0 for every row}."""
    reduced, pivots = rref(rows, ncols)
    return canonical_basis(nullspace_from_rref(reduced, pivots, ncols),
                           ncols)


def in_span(vectors: Sequence[Vector], target: Vector, ncols: int) -> bool:
    """Whether `target` is a linear combination of `vectors`."""
    if not any(target.values()):
        return True
    basis = [{c: to_qq(v) for c, v in vector.items() if v}
             for vector in vectors]
    goal = {c: to_qq(v) for c, v in target.items() if v}
    return rank(basis + [goal], ncols) == rank(basis, ncols)


def solve_combination(vectors: Sequence[Vector],
                      target: Vector) -> Optional[List[Fraction]]:
    """
    Coefficients c with sum c_j vectors[j] = target, or None when the
    target lies outside the span. `vectors` must be independent.
    """
    count = len(vectors)
    by_coordinate: Dict[int, SparseRow] = {}
    for j, vector in enumerate(vectors):
        for c, v in vector.items():
            if v:
                by_coordinate.setdefault(c, {})[j] = to_qq(v)
    for c, v in target.items():
        if v:
            by_coordinate.setdefault(c, {})[count] = to_qq(v)
    reduced, pivots = rref(list(by_coordinate.values()), count + 1)
    if count in pivots:
        return None
    solution = [Fraction(0)] * count
    for row, pivot in zip(reduced, pivots):
        solution[pivot] = to_rat(row.get(count, QQ.zero))
    return solution


class EchelonAccumulator:
    """
    Reduced echelon form of a stream of rows.

    Rows are buffered and folded into the echelon form whenever the
    buffer reaches `batch` rows (and on `reduce`). Duplicate rows up to
    scaling are dropped on arrival.

    Attributes:
        ncols (int): Number of unknowns.
        rows (List[SparseRow]): Current reduced rows.
        pivots (Tuple[int, ...]): Their pivot columns.
    """

    def __init__(self, ncols: int, batch: int = None):
        self.ncols = ncols
        self.batch = batch or max(64, 2 * ncols)
        self.rows: List[SparseRow] = []
        self.pivots: Tuple[int, ...] = ()
        self._pending: List[SparseRow] = []
        self._seen = set()
        self.received = 0

    def add(self, row: SparseRow) -> None:
        row = {c: v for c, v in row.items() if v}
        if not row:
            return
        self.received += 1
        lead = row[min(row)]
        signature = tuple(sorted((c, v / lead) for c, v in row.items()))
        if signature in self._seen:
            return
        self._seen.add(signature)
        self._pending.append(row)
        if len(self._pending) >= self.batch:
            self.reduce()

    def add_all(self, rows: Iterable[SparseRow]) -> None:
        for row in rows:
            self.add(row)

    def reduce(self) -> None:
        if not self._pending:
            return
        self.rows, self.pivots = rref(self.rows + self._pending, self.ncols)
        self._pending = []
        self._seen = set()
        logger.info(f"received={self.received};rank={len(self.pivots)};"
                    f"columns={self.ncols};")

    @property
    def rank(self) -> int:
        self.reduce()
        return len(self.pivots)

    @property
    def is_full_rank(self) -> bool:
        return self.rank == self.ncols

    def nullspace(self) -> List[Vector]:
        self.reduce()
        return canonical_basis(
            nullspace_from_rref(self.rows, self.pivots, self.ncols),
            self.ncols)
