#!/usr/bin/env python3
"""
Carriage-wise polynomials and the symbolic invariance check.

A carriage-wise polynomial F assigns one polynomial P_s to every sign
pattern s of size n; at an inner quiver Q it evaluates the piece of Q's
own carriage. F is an invariant when F(Q) = F(mutate(Q, k)) for every
inner Q whose image is inner too, which holds exactly when

    P_s = P_t o mu_poly(k, s)

as polynomials for every pattern s, vertex k and feasible target t.
`check_invariant_symbolic` tests these identities and, on the first
failure, returns a `Witness` carrying the offending triple, the nonzero
difference and an exact rational point where F changes under mutation.

Files hold {"n", "degree", "pieces": [{"pattern", "poly"}, ...]} with
pieces in pattern text order.
"""
from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

from config import config
from core.exact_poly import Poly, Scalar, entry_count, format_poly, parse_poly
from core.piecewise_map import (MutationMapKey, feasible_targets,
                                mu_poly_for_key, mutation_key,
                                sample_transition_point)
from core.quiver import (Quiver, SignPattern, all_patterns,
                         compatible_patterns, mutate)
from errors import AmbiguousBoundaryError, DimensionError, FormatError
from logger import get_logger
from models.base import JsonModel
from models.types import JsonDict

logger = get_logger(__name__)


class CarriageWisePolynomial(JsonModel):
    """
    One polynomial piece per carriage of size n.

    Attributes:
        n (int): Quiver size.
        pieces (Dict[SignPattern, Poly]): A piece for each of the 2^m
            patterns, each in m = n(n-1)/2 variables.
    """

    REQUIRED_KEYS = ("n", "pieces")

    def __init__(self, n: int, pieces: Mapping[SignPattern, Poly]):
        m = entry_count(n)
        patterns = all_patterns(n)
        missing = [s for s in patterns if s not in pieces]
        if missing or len(pieces) != len(patterns):
            raise DimensionError(
                f"a carriage-wise polynomial of size {n} needs exactly "
                f"{len(patterns)} pieces, got {len(pieces)}"
            )
        for s, piece in pieces.items():
            if piece.num_vars != m:
                raise DimensionError(
                    f"piece at {s} has {piece.num_vars} variables, "
                    f"expected {m}"
                )
        self.n = n
        self.pieces: Dict[SignPattern, Poly] = {s: pieces[s]
                                                for s in patterns}

    @classmethod
    def uniform(cls, n: int, poly: Poly) -> "CarriageWisePolynomial":
        """The same piece on every carriage."""
        return cls(n, {s: poly for s in all_patterns(n)})

    @classmethod
    def constant(cls, n: int,
                 value: Scalar = 1) -> "CarriageWisePolynomial":
        return cls.uniform(n, Poly.constant(entry_count(n), value))

    def piece(self, s: SignPattern) -> Poly:
        return self.pieces[s]

    @property
    def degree_bound(self) -> int:
        return max(piece.degree() for piece in self.pieces.values())

    @property
    def is_uniform(self) -> bool:
        return len(set(self.pieces.values())) == 1

    def __add__(self, other: "CarriageWisePolynomial"):
        self._check(other)
        return CarriageWisePolynomial(
            self.n, {s: p + other.pieces[s] for s, p in self.pieces.items()})

    def __sub__(self, other: "CarriageWisePolynomial"):
        self._check(other)
        return CarriageWisePolynomial(
            self.n, {s: p - other.pieces[s] for s, p in self.pieces.items()})

    def scaled(self, factor: Scalar) -> "CarriageWisePolynomial":
        return CarriageWisePolynomial(
            self.n, {s: p * Fraction(factor) for s, p in self.pieces.items()})

    def _check(self, other: "CarriageWisePolynomial") -> None:
        if self.n != other.n:
            raise DimensionError(f"sizes {self.n} and {other.n} differ")

    def __eq__(self, other) -> bool:
        if not isinstance(other, CarriageWisePolynomial):
            return NotImplemented
        return self.n == other.n and self.pieces == other.pieces

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.pieces.values())))

    def to_json(self) -> JsonDict:
        return {
            "n": self.n,
            "degree": self.degree_bound,
            "pieces": [{"pattern": s.text, "poly": format_poly(p)}
                       for s, p in self.pieces.items()],
        }

    @classmethod
    def from_json(cls, data: JsonDict) -> "CarriageWisePolynomial":
        data = cls.require_keys(data)
        n, items = data["n"], data["pieces"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 2:
            raise FormatError(f"n must be an integer >= 2, got {n!r}")
        if not isinstance(items, list):
            raise FormatError("pieces must be a list")
        m = entry_count(n)
        pieces: Dict[SignPattern, Poly] = {}
        for item in items:
            if not isinstance(item, dict) or \
                    "pattern" not in item or "poly" not in item:
                raise FormatError(f"malformed piece: {item!r}")
            s = SignPattern.parse(item["pattern"], n)
            if s in pieces:
                raise FormatError(f"duplicate piece for {s}")
            pieces[s] = parse_poly(item["poly"], m)
        try:
            result = cls(n, pieces)
        except DimensionError as err:
            raise FormatError(str(err))
        degree = data.get("degree")
        if degree is not None and (not isinstance(degree, int)
                                   or degree < result.degree_bound):
            raise FormatError(
                f"declared degree {degree!r} is below the actual degree "
                f"{result.degree_bound}"
            )
        return result


def evaluate(F: CarriageWisePolynomial, Q: Quiver) -> Fraction:
    """
    Value of F at Q.

    Raises:
        DimensionError: If the sizes differ.
        AmbiguousBoundaryError: If Q has a zero entry and the pieces of
            the compatible carriages disagree at Q.
    """
    if Q.n != F.n:
        raise DimensionError(f"quiver of size {Q.n} for an F of size {F.n}")
    values = {F.pieces[s].evaluate(Q.upper) for s in compatible_patterns(Q)}
    if len(values) > 1:
        raise AmbiguousBoundaryError(
            f"pieces disagree at the boundary quiver "
            f"{Q.to_json()['upper']}: {sorted(values)}"
        )
    return values.pop()


@dataclass(frozen=True)
class Witness:
    """
    A failed identity P_s = P_t o mu_poly(k, s).

    Attributes:
        s (SignPattern): Source carriage.
        k (int): Mutation vertex.
        t (SignPattern): Target carriage.
        diff (Poly): P_s - P_t o mu_poly(k, s), nonzero.
        point (Quiver): Inner quiver of carriage s, mutating into t, at
            which diff does not vanish when one was found.
    """

    s: SignPattern
    k: int
    t: SignPattern
    diff: Poly
    point: Optional[Quiver]

    def to_json(self) -> JsonDict:
        data = {"s": self.s.text, "k": self.k, "t": self.t.text,
                "diff": format_poly(self.diff)}
        if self.point is not None:
            image = mutate(self.point, self.k)
            data["point"] = self.point.to_json()["upper"]
            data["image"] = image.to_json()["upper"]
        return data


class CompositionCache:
    """
    Memoized P o mu_poly(key); pieces shared between carriages and keys
    shared between patterns are composed once.
    """

    def __init__(self):
        self._cache: Dict[Tuple[Poly, MutationMapKey], Poly] = {}

    def compose(self, piece: Poly, key: MutationMapKey) -> Poly:
        cached = self._cache.get((piece, key))
        if cached is None:
            cached = piece.compose(mu_poly_for_key(key))
            self._cache[(piece, key)] = cached
        return cached


def invariance_defects(
        F: CarriageWisePolynomial,
        cache: CompositionCache = None
) -> Iterable[Tuple[SignPattern, int, SignPattern, Poly]]:
    """Yield (s, k, t, diff) for every failing identity, in sweep order."""
    cache = cache or CompositionCache()
    for s in all_patterns(F.n):
        for k in range(1, F.n + 1):
            key = mutation_key(s, k)
            for t in feasible_targets(s, k):
                diff = F.pieces[s] - cache.compose(F.pieces[t], key)
                if not diff.is_zero:
                    yield s, k, t, diff


def find_witness_point(s: SignPattern, k: int, t: SignPattern, diff: Poly,
                       rng: Random,
                       attempts: int = None) -> Optional[Quiver]:
    """A transition point of (s, k, t) where diff is nonzero."""
    attempts = config.WITNESS_ATTEMPTS if attempts is None else attempts
    for _ in range(attempts):
        Q = sample_transition_point(s, k, t, rng)
        if diff.evaluate(Q.upper):
            return Q
    return None


def check_invariant_symbolic(
        F: CarriageWisePolynomial, seed: int = None
) -> Union[bool, Witness]:
    """
    Sweep every (s, k, t) identity of F.

    Args:
        F (CarriageWisePolynomial): The candidate invariant.
        seed (int): Seed for the counterexample sampler; defaults to
            config.SEED.

    Returns:
        Union[bool, Witness]: True when every identity holds, otherwise
            the Witness of the first failure in sweep order.
    """
    for s, k, t, diff in invariance_defects(F):
        rng = Random(config.SEED if seed is None else seed)
        point = find_witness_point(s, k, t, diff, rng)
        logger.warning(f"s={s};k={k};t={t};diff={format_poly(diff)};")
        return Witness(s, k, t, diff, point)
    checked = 0
    for s in all_patterns(F.n):
        checked += sum(len(feasible_targets(s, k))
                       for k in range(1, F.n + 1))
    logger.info(f"n={F.n};identities={checked};verified=true;")
    return True
