#!/usr/bin/env python3
"""
Degree-bounded search for carriage-wise polynomial invariants.

`search_invariants(n, d, mode)` assembles the invariance system, reduces
it block by block, reads off the canonical nullspace and turns each
basis vector back into a carriage-wise polynomial. Every element must
then pass `check_invariant_symbolic`; an element that does not is an
internal inconsistency and raises `VerificationError` instead of being
returned.

The optional sampling pre-pass replaces coefficient matching with
evaluations at random integer points. Its nullspace contains the true
one, so when every candidate verifies the two coincide; otherwise the
search falls back to coefficient matching.

Resource guard (lifted by QUIVERLAB_UNGUARDED):

    n   full    collapsed
    2   d <= 8  d <= 8
    3   d <= 4  d <= 6
    4   d <= 2  d <= 8
    5   -       d <= 2
"""
from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.rings import ring

from config import config
from core.exact_poly import Monomial, Poly, format_poly, format_rat
from core.quiver import SignPattern, determinant_poly
from errors import (DomainError, FormatError, ResourceGuardError,
                    UnsupportedSizeError, VerificationError)
from invariants.assembly import MODES, ConstraintSystem, assemble_system
from invariants.carriage_wise import (CarriageWisePolynomial, Witness,
                                      check_invariant_symbolic)
from invariants.linear_algebra import (EchelonAccumulator, Vector, in_span,
                                       solve_combination)
from logger import get_logger
from models.base import JsonModel
from models.types import JsonDict

logger = get_logger(__name__)

DEGREE_GUARD: Dict[Tuple[int, str], int] = {
    (2, "full"): 8, (2, "collapsed"): 8,
    (3, "full"): 4, (3, "collapsed"): 6,
    (4, "full"): 2, (4, "collapsed"): 8,
    (5, "collapsed"): 2,
}


class InvariantBasis(JsonModel):
    """
    A verified basis of the invariants of degree <= d.

    Attributes:
        n (int): Quiver size.
        degree (int): The degree bound searched.
        mode (str): "full" or "collapsed".
        elements (List[CarriageWisePolynomial]): Canonical basis; the
            constant 1 comes first when present.
        verified (bool): Every element passed the symbolic check.
    """

    REQUIRED_KEYS = ("n", "degree", "mode", "dimension", "verified",
                     "elements")

    def __init__(self, n: int, degree: int, mode: str,
                 elements: Sequence[CarriageWisePolynomial],
                 verified: bool = True):
        self.n = n
        self.degree = degree
        self.mode = mode
        self.elements = list(elements)
        self.verified = verified

    @property
    def dimension(self) -> int:
        return len(self.elements)

    def _coordinates(
            self, polys: Sequence[CarriageWisePolynomial]
    ) -> List[Vector]:
        columns: Dict[Tuple[int, Monomial], int] = {}
        vectors = []
        for F in polys:
            vector = {}
            for index, piece in enumerate(F.pieces.values()):
                for monomial, coeff in piece.terms():
                    column = columns.setdefault((index, monomial),
                                                len(columns))
                    vector[column] = coeff
            vectors.append(vector)
        return vectors

    def contains(self, F: CarriageWisePolynomial) -> bool:
        """Whether F is a linear combination of the basis elements."""
        if F.n != self.n:
            return False
        *vectors, target = self._coordinates(self.elements + [F])
        ncols = max([max(v, default=-1) for v in vectors + [target]],
                    default=-1) + 1
        return in_span(vectors, target, ncols)

    def to_json(self) -> JsonDict:
        return {
            "n": self.n,
            "degree": self.degree,
            "mode": self.mode,
            "dimension": self.dimension,
            "verified": self.verified,
            "elements": [F.to_json() for F in self.elements],
        }

    @classmethod
    def from_json(cls, data: JsonDict) -> "InvariantBasis":
        data = cls.require_keys(data)
        if data["mode"] not in MODES:
            raise FormatError(f"unknown mode {data['mode']!r}")
        if not isinstance(data["elements"], list):
            raise FormatError("elements must be a list")
        elements = [CarriageWisePolynomial.from_json(item)
                    for item in data["elements"]]
        if data["dimension"] != len(elements):
            raise FormatError(
                f"dimension {data['dimension']!r} does not match "
                f"{len(elements)} elements"
            )
        if any(F.n != data["n"] for F in elements):
            raise FormatError("elements of different sizes")
        return cls(data["n"], data["degree"], data["mode"], elements,
                   bool(data["verified"]))


def check_guard(n: int, degree: int, mode: str) -> None:
    """
    Raises:
        DomainError: For an unknown mode or a negative degree.
        ResourceGuardError: If (n, d, mode) is outside the guard.
    """
    if mode not in MODES:
        raise DomainError(
            f"unknown mode {mode!r}; expected one of {', '.join(MODES)}"
        )
    if not isinstance(degree, int) or degree < 0:
        raise DomainError(f"degree bound must be >= 0, got {degree}")
    if config.UNGUARDED:
        return
    limit = DEGREE_GUARD.get((n, mode))
    if limit is None or degree > limit:
        allowed = "nothing" if limit is None else f"d <= {limit}"
        raise ResourceGuardError(
            f"{mode} search at n={n}, d={degree} exceeds the resource "
            f"guard ({allowed}); set QUIVERLAB_UNGUARDED=1 to force it"
        )


def solve_by_coefficients(system: ConstraintSystem) -> List[Vector]:
    accumulator = EchelonAccumulator(system.ncols)
    for block in system.blocks:
        accumulator.add_all(row for _, row in system.block_rows(block))
        if len(accumulator.pivots) == system.ncols:
            break
    return accumulator.nullspace()


def solve_by_sampling(system: ConstraintSystem, rng: Random) -> List[Vector]:
    accumulator = EchelonAccumulator(system.ncols)
    for block in system.blocks:
        accumulator.add_all(system.block_sample_rows(block, rng))
        if len(accumulator.pivots) == system.ncols:
            break
    return accumulator.nullspace()


def _first_failure(
        elements: Sequence[CarriageWisePolynomial]
) -> Optional[Tuple[int, Witness]]:
    for index, F in enumerate(elements):
        result = check_invariant_symbolic(F)
        if isinstance(result, Witness):
            return index, result
    return None


def search_invariants(n: int, degree: int, mode: str = "collapsed",
                      sample_prepass: bool = False,
                      seed: int = None) -> InvariantBasis:
    """
    Basis of all carriage-wise polynomial invariants of degree <= d.

    Args:
        n (int): Quiver size.
        degree (int): Bound on the total degree of every piece.
        mode (str): "full" or "collapsed".
        sample_prepass (bool): Try evaluation constraints first.
        seed (int): Seed of the pre-pass sampler; config.SEED if None.

    Returns:
        InvariantBasis: The canonical, symbolically verified basis.

    Raises:
        ResourceGuardError: Outside the resource guard.
        VerificationError: If a basis element is not an invariant.
    """
    check_guard(n, degree, mode)
    system = assemble_system(n, degree, mode)
    elements = None
    if sample_prepass:
        rng = Random(config.SEED if seed is None else seed)
        candidates = [system.reconstitute(v)
                      for v in solve_by_sampling(system, rng)]
        failure = _first_failure(candidates)
        if failure is None:
            elements = candidates
        else:
            logger.warning(f"sampled basis of dimension {len(candidates)} "
                           f"failed at element {failure[0]}; falling back "
                           f"to coefficient matching")
    if elements is None:
        elements = [system.reconstitute(v)
                    for v in solve_by_coefficients(system)]
        failure = _first_failure(elements)
        if failure is not None:
            index, witness = failure
            raise VerificationError(
                f"basis element {index} of the {mode} search at n={n}, "
                f"d={degree} is not invariant: s={witness.s} "
                f"k={witness.k} t={witness.t}"
            )
    logger.info(f"mode={mode};n={n};d={degree};dimension={len(elements)};")
    return InvariantBasis(n, degree, mode, elements)


@dataclass(frozen=True)
class DetSpan:
    """
    Outcome of writing basis elements as polynomials in Det.

    Attributes:
        coefficients (Tuple[Tuple[Fraction, ...], ...]): For each element
            the coefficients f_0, f_1, ... with element = sum f_j Det^j.
        failure (Optional[int]): Index of the first element outside the
            span of the powers of Det, None on success.
        residual (Optional[Poly]): Certificate of the failure, a non-zero
            polynomial r with piece - r in the span of the powers of
            Det; for a non-uniform element, the difference between the
            piece at `pattern` and the piece of the first carriage.
        pattern (Optional[SignPattern]): Carriage whose piece differs,
            set for non-uniform elements only.
    """

    coefficients: Tuple[Tuple[Fraction, ...], ...]
    failure: Optional[int] = None
    residual: Optional[Poly] = None
    pattern: Optional[SignPattern] = None

    @property
    def ok(self) -> bool:
        return self.failure is None

    def formulas(self) -> List[str]:
        return [format_univariate(f, "Det") for f in self.coefficients]

    def describe(self) -> str:
        if not self.ok:
            where = f" at {self.pattern}" if self.pattern else ""
            return (f"element {self.failure} is not a polynomial in Det"
                    f" (residual{where}: {format_poly(self.residual)})")
        return "spanned by {" + ", ".join(self.formulas()) + "}"

    def to_json(self) -> JsonDict:
        data = {
            "ok": self.ok,
            "failure": self.failure,
            "f": [[format_rat(c) for c in f] for f in self.coefficients],
        }
        if not self.ok:
            data["residual"] = format_poly(self.residual)
            data["pattern"] = str(self.pattern) if self.pattern else None
        return data


def format_univariate(coefficients: Sequence[Fraction], name: str) -> str:
    """sum c_j name^j in sympy's printing, e.g. "Det**2 - 3*Det"."""
    R, t = ring(name, QQ)
    total = R.zero
    for power, c in enumerate(coefficients):
        total += t ** power * QQ(c.numerator, c.denominator)
    return str(total)


def det_residual(piece: Poly, powers: Sequence[Poly]) -> Poly:
    """
    Part of `piece` outside the span of `powers`, where powers[j] is
    Det^j, homogeneous of degree 4j.

    Each homogeneous component of degree 4j loses the multiple of Det^j
    matching it at the leading monomial of Det^j; components of any
    other degree are kept whole. The result is zero exactly when the
    piece lies in the span.
    """
    parts: Dict[int, Dict[Monomial, Fraction]] = {}
    for monomial, coeff in piece.terms():
        parts.setdefault(sum(monomial), {})[monomial] = coeff
    residual = Poly.zero(piece.num_vars)
    for degree, terms in parts.items():
        part = Poly.from_terms(piece.num_vars, terms)
        j, rest = divmod(degree, 4)
        if not rest and j < len(powers):
            lead = powers[j].terms()[0][0]
            part = part - powers[j] * (part.coefficient(lead)
                                       / powers[j].coefficient(lead))
        residual = residual + part
    return residual


def verify_spanned_by_det(basis: InvariantBasis,
                          degree: int = None) -> DetSpan:
    """
    Express every element as f(Det) with deg f <= degree // 4.

    Raises:
        UnsupportedSizeError: If the basis is not for n=4.
    """
    if basis.n != 4:
        raise UnsupportedSizeError("Det spans are computed for n=4 only")
    degree = basis.degree if degree is None else degree
    powers = [determinant_poly(4) ** j for j in range(degree // 4 + 1)]
    columns: Dict[Monomial, int] = {}

    def coordinates(poly) -> Vector:
        return {columns.setdefault(monomial, len(columns)): coeff
                for monomial, coeff in poly.terms()}

    power_vectors = [coordinates(p) for p in powers]
    found = []
    for index, F in enumerate(basis.elements):
        first = next(iter(F.pieces.values()))
        if not F.is_uniform:
            s, piece = next((s, piece) for s, piece in F.pieces.items()
                            if piece != first)
            return DetSpan(tuple(found), index, piece - first, s)
        solution = solve_combination(power_vectors, coordinates(first))
        if solution is None:
            return DetSpan(tuple(found), index,
                           det_residual(first, powers))
        found.append(tuple(solution))
    return DetSpan(tuple(found))
