#!/usr/bin/env python3
"""
Quivers, sign patterns and cluster mutation.

A quiver of size n is an n x n skew-symmetric matrix with rational
entries, stored as its upper triangle in row-major order. Skew-symmetry
is structural: entry(i, j) = -entry(j, i) and entry(i, i) = 0.

The mutation at vertex k negates every entry incident to k and, for
i, j != k, adds x_{i,k} x_{k,j} when both factors are positive and
subtracts it when both are negative; a mixed or zero pair leaves x_{i,j}
unchanged.

Vertices are 1-based everywhere.

For n = 4 entries are also addressed by letters:
    x = x12, y = x13, z = x14, u = x23, v = -x24, w = x34,
so that Pf = xw + yv + zu and Det = Pf^2. For n = 3 the letters are
x = x12, y = -x13, z = x23.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from random import Random
from typing import Callable, Dict, List, Sequence, Tuple, TypeVar

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import grlex
from sympy.polys.rings import ring

from core.exact_poly import (Poly, Scalar, entry_count, format_rat,
                             parse_rat, position_index, positions, to_qq,
                             to_rat, vertex_count)
from errors import (DimensionError, FormatError, NotInnerError, ParityError,
                    UnsupportedSizeError, VertexRangeError)
from models.base import JsonModel
from models.types import JsonDict

T = TypeVar("T")

LETTERS = ("x", "y", "z", "u", "v", "w")
# sign relating each letter to the raw entry at the same position
LETTER_SIGNS = (1, 1, 1, 1, -1, 1)
MARKOV_LETTER_SIGNS = (1, -1, 1)


def check_vertex(n: int, k: int) -> None:
    if not isinstance(k, int) or not 1 <= k <= n:
        raise VertexRangeError(f"vertex {k} outside 1..{n}")


@dataclass(frozen=True)
class SignPattern:
    """
    A strict sign vector indexing one carriage (an open orthant).

    Attributes:
        n (int): Quiver size.
        signs (Tuple[int, ...]): +1 or -1 per upper-triangle entry.
    """

    n: int
    signs: Tuple[int, ...]

    def __post_init__(self):
        signs = tuple(self.signs)
        if len(signs) != entry_count(self.n):
            raise DimensionError(
                f"pattern of length {len(signs)} for n={self.n}"
            )
        if any(s not in (1, -1) for s in signs):
            raise ValueError("sign patterns hold +1 and -1 only")
        object.__setattr__(self, "signs", signs)

    def sign(self, i: int, j: int) -> int:
        """Sign of x_{i,j} in this carriage, using skew-symmetry."""
        if i == j:
            raise VertexRangeError("diagonal entries carry no sign")
        if i < j:
            return self.signs[position_index(self.n, i, j)]
        return -self.signs[position_index(self.n, j, i)]

    def flipped(self, index: int) -> "SignPattern":
        """The pattern with the sign at entry position `index` changed."""
        signs = list(self.signs)
        signs[index] = -signs[index]
        return SignPattern(self.n, tuple(signs))

    def negated(self) -> "SignPattern":
        return SignPattern(self.n, tuple(-s for s in self.signs))

    @property
    def text(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)

    def __str__(self) -> str:
        return self.text

    def __lt__(self, other: "SignPattern") -> bool:
        return (self.n, self.text) < (other.n, other.text)

    @classmethod
    def parse(cls, text: str, n: int = None) -> "SignPattern":
        """
        Parse a string over {+, -}; n is inferred from the length.

        Raises:
            FormatError: On other characters or an impossible length.
        """
        if not isinstance(text, str) or not text or \
                set(text) - {"+", "-"}:
            raise FormatError(f"not a sign pattern: {text!r}")
        if n is None:
            try:
                n = vertex_count(len(text))
            except DimensionError as err:
                raise FormatError(str(err))
        if len(text) != entry_count(n):
            raise FormatError(f"pattern {text!r} does not fit n={n}")
        return cls(n, tuple(1 if c == "+" else -1 for c in text))


@lru_cache(maxsize=None)
def all_patterns(n: int) -> Tuple[SignPattern, ...]:
    """All 2^m patterns of size n, in lexicographic text order."""
    return tuple(SignPattern(n, signs)
                 for signs in product((1, -1), repeat=entry_count(n)))


@dataclass(frozen=True)
class Quiver(JsonModel):
    """
    An n-quiver stored by its upper triangle.

    Attributes:
        n (int): Vertex count, at least 2.
        upper (Tuple[Fraction, ...]): x_{1,2}, x_{1,3}, ..., x_{n-1,n}.
    """

    n: int
    upper: Tuple[Fraction, ...]

    REQUIRED_KEYS = ("n", "upper")

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise DimensionError(f"quiver size must be >= 2, got {self.n}")
        upper = tuple(Fraction(x) for x in self.upper)
        if len(upper) != entry_count(self.n):
            raise DimensionError(
                f"{len(upper)} entries given for n={self.n}, "
                f"expected {entry_count(self.n)}"
            )
        object.__setattr__(self, "upper", upper)

    @classmethod
    def zero(cls, n: int) -> "Quiver":
        return cls(n, (Fraction(0),) * entry_count(n))

    @property
    def is_inner(self) -> bool:
        return all(self.upper)

    def entry(self, i: int, j: int) -> Fraction:
        check_vertex(self.n, i)
        check_vertex(self.n, j)
        if i == j:
            return Fraction(0)
        if i < j:
            return self.upper[position_index(self.n, i, j)]
        return -self.upper[position_index(self.n, j, i)]

    def matrix(self) -> List[List[Fraction]]:
        size = range(1, self.n + 1)
        return [[self.entry(i, j) for j in size] for i in size]

    def to_json(self) -> JsonDict:
        return {"n": self.n, "upper": [format_rat(x) for x in self.upper]}

    @classmethod
    def from_json(cls, data: JsonDict) -> "Quiver":
        data = cls.require_keys(data)
        n, upper = data["n"], data["upper"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise FormatError(f"n must be an integer, got {n!r}")
        if not isinstance(upper, list):
            raise FormatError("upper must be a list")
        values = []
        for item in upper:
            if isinstance(item, int) and not isinstance(item, bool):
                values.append(Fraction(item))
            else:
                values.append(parse_rat(item))
        try:
            return cls(n, tuple(values))
        except DimensionError as err:
            raise FormatError(str(err))


def entry(Q: Quiver, i: int, j: int) -> Fraction:
    return Q.entry(i, j)


def mutate(Q: Quiver, k: int) -> Quiver:
    """Cluster mutation of Q at vertex k; Q itself is unchanged."""
    check_vertex(Q.n, k)
    result = []
    for (i, j), x in zip(positions(Q.n), Q.upper):
        if k in (i, j):
            result.append(-x)
            continue
        a, b = Q.entry(i, k), Q.entry(k, j)
        if a > 0 and b > 0:
            result.append(x + a * b)
        elif a < 0 and b < 0:
            result.append(x - a * b)
        else:
            result.append(x)
    return Quiver(Q.n, tuple(result))


def mutate_sequence(Q: Quiver, vertices: Sequence[int]) -> Quiver:
    for k in vertices:
        Q = mutate(Q, k)
    return Q


def sign_pattern(Q: Quiver) -> SignPattern:
    """
    Componentwise sign of an inner quiver.

    Raises:
        NotInnerError: If some entry is zero.
    """
    if not Q.is_inner:
        raise NotInnerError(
            f"quiver {[format_rat(x) for x in Q.upper]} has a zero entry; "
            f"use compatible_patterns"
        )
    return SignPattern(Q.n, tuple(1 if x > 0 else -1 for x in Q.upper))


def compatible_patterns(Q: Quiver) -> List[SignPattern]:
    """All strict patterns agreeing with Q on its nonzero entries, sorted."""
    options = [(1, -1) if x == 0 else ((1,) if x > 0 else (-1,))
               for x in Q.upper]
    return sorted(SignPattern(Q.n, signs) for signs in product(*options))


def pfaffian_expansion(entry_of: Callable[[int, int], T],
                       vertices: Sequence[int], zero: T, one: T) -> T:
    """
    Pfaffian of the principal submatrix on `vertices`, by expansion along
    the first row. Works for any ring whose elements support + and *.
    """
    if not vertices:
        return one
    first, rest = vertices[0], list(vertices[1:])
    total = zero
    for index, j in enumerate(rest):
        minor = rest[:index] + rest[index + 1:]
        term = entry_of(first, j) * pfaffian_expansion(
            entry_of, minor, zero, one)
        total = total + term if index % 2 == 0 else total - term
    return total


def pfaffian(Q: Quiver) -> Fraction:
    """
    Exact Pfaffian; for n = 4 it is x12*x34 - x13*x24 + x14*x23.

    Raises:
        ParityError: If n is odd.
    """
    if Q.n % 2:
        raise ParityError(f"no Pfaffian for odd n={Q.n}")
    return pfaffian_expansion(Q.entry, list(range(1, Q.n + 1)),
                              Fraction(0), Fraction(1))


def determinant(Q: Quiver) -> Fraction:
    """Exact determinant of the full skew-symmetric matrix."""
    rows = [[to_qq(x) for x in row] for row in Q.matrix()]
    return to_rat(DomainMatrix(rows, (Q.n, Q.n), QQ).det())


def entry_poly(n: int, i: int, j: int) -> Poly:
    """x_{i,j} as a polynomial in the upper-triangle variables."""
    m = entry_count(n)
    if i == j:
        return Poly.zero(m)
    if i < j:
        return Poly.variable(m, position_index(n, i, j))
    return -Poly.variable(m, position_index(n, j, i))


@lru_cache(maxsize=None)
def pfaffian_poly(n: int) -> Poly:
    if n % 2:
        raise ParityError(f"no Pfaffian for odd n={n}")
    m = entry_count(n)
    return pfaffian_expansion(lambda i, j: entry_poly(n, i, j),
                              list(range(1, n + 1)),
                              Poly.zero(m), Poly.one(m))


@lru_cache(maxsize=None)
def determinant_poly(n: int) -> Poly:
    """Det as a polynomial: Pf^2 for even n, 0 for odd n."""
    if n % 2:
        return Poly.zero(entry_count(n))
    return pfaffian_poly(n) ** 2


def quiver_from_letters(x: Scalar, y: Scalar, z: Scalar,
                        u: Scalar, v: Scalar, w: Scalar) -> Quiver:
    """The 4-quiver with the given letter values."""
    letters = (x, y, z, u, v, w)
    return Quiver(4, tuple(s * Fraction(value)
                           for s, value in zip(LETTER_SIGNS, letters)))


def letters_of(Q: Quiver) -> Dict[str, Fraction]:
    if Q.n != 4:
        raise UnsupportedSizeError("letters address 4-quivers only")
    return {name: s * value
            for name, s, value in zip(LETTERS, LETTER_SIGNS, Q.upper)}


def letter_polys() -> Dict[str, Poly]:
    """Each letter as a polynomial in the raw variables of a 4-quiver."""
    return {name: s * Poly.variable(6, index)
            for index, (name, s) in enumerate(zip(LETTERS, LETTER_SIGNS))}


@lru_cache(maxsize=None)
def _letter_ring():
    return ring(",".join(LETTERS), QQ, grlex)[0]


def letter_form(p: Poly) -> str:
    """A 4-quiver polynomial rewritten in the letters x, y, z, u, v, w."""
    if p.num_vars != 6:
        raise UnsupportedSizeError("letters address 4-quivers only")
    L = _letter_ring()
    data = {}
    for monomial, coeff in p.element.items():
        sign = -1 if monomial[4] % 2 else 1
        data[monomial] = coeff * sign
    return str(L.from_dict(data)) if data else "0"


def random_magnitude(rng: Random) -> Fraction:
    """A random rational in [1/8, 8] with denominator 8."""
    return Fraction(rng.randint(1, 64), 8)


def random_inner_quiver(pattern: SignPattern, rng: Random) -> Quiver:
    """A random inner quiver in the carriage of `pattern`."""
    return Quiver(pattern.n, tuple(s * random_magnitude(rng)
                                   for s in pattern.signs))


def random_quiver(n: int, rng: Random) -> Quiver:
    """A random inner quiver with entries drawn from +-[1/8, 8]."""
    signs = tuple(rng.choice((1, -1)) for _ in range(entry_count(n)))
    return random_inner_quiver(SignPattern(n, signs), rng)
