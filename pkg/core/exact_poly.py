#!/usr/bin/env python3
"""
Exact polynomial arithmetic over the entries of a skew-symmetric matrix.

An n-quiver has m = n(n-1)/2 free entries x_{i,j}, i < j, ordered
row-major: (1,2), (1,3), ..., (n-1,n). This module provides

    - Rat, the exact rational number type (`fractions.Fraction`);
    - Poly, an immutable sparse polynomial in the m entry variables with
      rational coefficients, backed by a sympy `PolyElement` over QQ in
      graded lexicographic order;
    - PolyVec, a polynomial map (one Poly per entry position);
    - SubstitutionCache, which memoizes the images of monomials under a
      fixed PolyVec, the workhorse of the linear-system assembly.

The canonical text form of a Poly lists terms in descending graded lex
order, coefficients as "p/q" (or "p"), variables named "x12", "x13", ...
for n <= 9 and "x{i}_{j}" beyond.
"""
import math
import re
import sys
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import (Dict, Iterable, Iterator, List, Mapping, Sequence,
                    Tuple, Union)

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, ring

from errors import DimensionError, FormatError

Rat = Fraction
Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction]

_RAT_RE = re.compile(r"-?\d+(/\d+)?")
_TERM_RE = re.compile(r"([+-]?)([^+-]+)")

# Entries along long mutation walks run past the default 4300 digits.
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)


def parse_rat(text: str) -> Fraction:
    """
    Parse "p/q" or "p" into a Fraction.

    Raises:
        FormatError: For anything else (decimals and exponents included).
    """
    if not isinstance(text, str) or not _RAT_RE.fullmatch(text.strip()):
        raise FormatError(f"not a rational: {text!r}")
    try:
        return Fraction(text.strip())
    except ZeroDivisionError:
        raise FormatError(f"zero denominator: {text!r}")


def format_rat(value: Fraction) -> str:
    """Text form "p/q", or "p" when the denominator is 1."""
    return str(Fraction(value))


def vertex_count(m: int) -> int:
    """
    Return n such that m = n(n-1)/2.

    Raises:
        DimensionError: If m is not such a triangular number with n >= 2.
    """
    n = (1 + math.isqrt(1 + 8 * m)) // 2
    if m < 1 or n * (n - 1) // 2 != m:
        raise DimensionError(f"{m} is not a number of quiver entries")
    return n


def entry_count(n: int) -> int:
    """Number of upper-triangle entries of an n-quiver."""
    return n * (n - 1) // 2


@lru_cache(maxsize=None)
def positions(n: int) -> Tuple[Tuple[int, int], ...]:
    """Entry positions (i, j), i < j, 1-based, row-major."""
    return tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))


@lru_cache(maxsize=None)
def _position_table(n: int) -> Dict[Tuple[int, int], int]:
    return {pos: index for index, pos in enumerate(positions(n))}


def position_index(n: int, i: int, j: int) -> int:
    """Index of entry (i, j), i < j, in the row-major upper triangle."""
    try:
        return _position_table(n)[(i, j)]
    except KeyError:
        raise DimensionError(f"({i},{j}) is not an entry position for n={n}")


def variable_name(n: int, i: int, j: int) -> str:
    """Printed name of the variable x_{i,j}."""
    if n <= 9:
        return f"x{i}{j}"
    return f"x{i}_{j}"


@lru_cache(maxsize=None)
def variable_names(m: int) -> Tuple[str, ...]:
    n = vertex_count(m)
    return tuple(variable_name(n, i, j) for i, j in positions(n))


@lru_cache(maxsize=None)
def poly_ring(m: int):
    """The sympy polynomial ring QQ[x12, ..., x(n-1)n] in grlex order."""
    return ring(",".join(variable_names(m)), QQ, grlex)[0]


def to_qq(value: Scalar):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def to_rat(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def monomial_key(monomial: Monomial) -> Tuple[int, Monomial]:
    """Graded lex sort key; larger keys are larger monomials."""
    return grlex(monomial)


@lru_cache(maxsize=None)
def monomials_up_to(m: int, degree: int) -> Tuple[Monomial, ...]:
    """All monomials in m variables of total degree <= degree, ascending."""
    result = []
    for total in range(degree + 1):
        for combo in combinations_with_replacement(range(m), total):
            exponents = [0] * m
            for index in combo:
                exponents[index] += 1
            result.append(tuple(exponents))
    result.sort(key=monomial_key)
    return tuple(result)


class Poly:
    """
    Immutable sparse polynomial in the entry variables of an n-quiver.

    Zero coefficients are never stored. Two polynomials compare equal
    exactly when their canonical term maps coincide.
    """

    __slots__ = ("element",)

    def __init__(self, element: PolyElement):
        self.element = element

    @classmethod
    def zero(cls, m: int) -> "Poly":
        return cls(poly_ring(m).zero)

    @classmethod
    def constant(cls, m: int, value: Scalar) -> "Poly":
        return cls(poly_ring(m).ground_new(to_qq(value)))

    @classmethod
    def one(cls, m: int) -> "Poly":
        return cls.constant(m, 1)

    @classmethod
    def variable(cls, m: int, index: int) -> "Poly":
        """The variable at entry position `index` (0-based)."""
        if not 0 <= index < m:
            raise DimensionError(f"variable {index} outside 0..{m - 1}")
        return cls(poly_ring(m).gens[index])

    @classmethod
    def from_terms(cls, m: int, terms: Mapping[Monomial, Scalar]) -> "Poly":
        """Build from a {monomial: coefficient} mapping."""
        R = poly_ring(m)
        data = {}
        for monomial, coeff in terms.items():
            if len(monomial) != m:
                raise DimensionError(
                    f"monomial {monomial} has {len(monomial)} exponents, "
                    f"expected {m}"
                )
            if coeff:
                data[tuple(monomial)] = to_qq(coeff)
        return cls(R.from_dict(data) if data else R.zero)

    @property
    def num_vars(self) -> int:
        return self.element.ring.ngens

    @property
    def is_zero(self) -> bool:
        return not self.element

    def degree(self) -> int:
        """Total degree; 0 for the zero polynomial."""
        return max((sum(mon) for mon in self.element.keys()), default=0)

    def terms(self) -> List[Tuple[Monomial, Fraction]]:
        """Terms in descending graded lex order."""
        return [(mon, to_rat(coeff)) for mon, coeff in
                sorted(self.element.items(),
                       key=lambda item: monomial_key(item[0]),
                       reverse=True)]

    def coefficient(self, monomial: Monomial) -> Fraction:
        coeff = self.element.get(tuple(monomial))
        return Fraction(0) if coeff is None else to_rat(coeff)

    def _check(self, other: "Poly") -> None:
        if self.num_vars != other.num_vars:
            raise DimensionError(
                f"polynomials in {self.num_vars} and {other.num_vars} "
                f"variables"
            )

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(self.num_vars, other)
        return NotImplemented

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly(self.element + other.element)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly(self.element - other.element)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __neg__(self) -> "Poly":
        return Poly(-self.element)

    def __mul__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly(self.element * other.element)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Poly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("only non-negative integer powers")
        return Poly(self.element ** exponent)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return (self.num_vars == other.num_vars
                and dict(self.element) == dict(other.element))

    def __hash__(self) -> int:
        return hash((self.num_vars, frozenset(self.element.items())))

    def compose(self, poly_map: "PolyVec") -> "Poly":
        """Substitute component c of `poly_map` for variable c."""
        if len(poly_map) != self.num_vars or \
                poly_map.num_vars != self.num_vars:
            raise DimensionError(
                f"cannot compose a polynomial in {self.num_vars} variables "
                f"with a map of length {len(poly_map)} in "
                f"{poly_map.num_vars} variables"
            )
        R = self.element.ring
        return Poly(self.element.compose(
            list(zip(R.gens, (c.element for c in poly_map)))
        ))

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        """Exact value at a point given in entry-position order."""
        if len(point) != self.num_vars:
            raise DimensionError(
                f"point of length {len(point)} for a polynomial in "
                f"{self.num_vars} variables"
            )
        values = [Fraction(v) for v in point]
        total = Fraction(0)
        for monomial, coeff in self.element.items():
            term = to_rat(coeff)
            for value, exponent in zip(values, monomial):
                if exponent:
                    term *= value ** exponent
            total += term
        return total

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r}, m={self.num_vars})"

    @classmethod
    def parse(cls, text: str, m: int) -> "Poly":
        return parse_poly(text, m)


class PolyVec:
    """
    A polynomial map: one Poly per entry position.

    `outer.compose(inner)` is the map x -> outer(inner(x)).
    """

    __slots__ = ("components",)

    def __init__(self, components: Iterable[Poly]):
        components = tuple(components)
        if not components:
            raise DimensionError("a polynomial map needs components")
        m = components[0].num_vars
        if any(c.num_vars != m for c in components):
            raise DimensionError("components live in different rings")
        self.components = components

    @classmethod
    def identity(cls, m: int) -> "PolyVec":
        return cls(Poly.variable(m, c) for c in range(m))

    @property
    def num_vars(self) -> int:
        return self.components[0].num_vars

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self) -> Iterator[Poly]:
        return iter(self.components)

    def __getitem__(self, index: int) -> Poly:
        return self.components[index]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyVec):
            return NotImplemented
        return self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __add__(self, other: "PolyVec") -> "PolyVec":
        if len(other) != len(self):
            raise DimensionError("maps of different lengths")
        return PolyVec(a + b for a, b in zip(self, other))

    def compose(self, inner: "PolyVec") -> "PolyVec":
        return PolyVec(c.compose(inner) for c in self)

    def evaluate(self, point: Sequence[Scalar]) -> Tuple[Fraction, ...]:
        return tuple(c.evaluate(point) for c in self)

    def __repr__(self) -> str:
        return "PolyVec(" + ", ".join(str(c) for c in self) + ")"


class SubstitutionCache:
    """
    Memoized images of monomials under a fixed polynomial map.

    image(a) is built from image(a - e_c) * map[c] for the first variable
    c with a nonzero exponent, so every image costs one multiplication.
    """

    def __init__(self, poly_map: PolyVec):
        self.poly_map = poly_map
        self.ring = poly_map[0].element.ring
        zero = (0,) * len(poly_map)
        self._images: Dict[Monomial, PolyElement] = {zero: self.ring.one}

    def image(self, monomial: Monomial) -> PolyElement:
        cached = self._images.get(monomial)
        if cached is not None:
            return cached
        index = next(c for c, e in enumerate(monomial) if e)
        lower = list(monomial)
        lower[index] -= 1
        result = self.image(tuple(lower)) * self.poly_map[index].element
        self._images[monomial] = result
        return result


def poly_add(a: Poly, b: Poly) -> Poly:
    return a + b


def poly_mul(a: Poly, b: Poly) -> Poly:
    return a * b


def poly_compose(p: Poly, poly_map: PolyVec) -> Poly:
    return p.compose(poly_map)


def poly_eval(p: Poly, point: Sequence[Scalar]) -> Fraction:
    return p.evaluate(point)


def poly_equal(a: Poly, b: Poly) -> bool:
    return a == b


def format_poly(p: Poly) -> str:
    """Canonical text form of a polynomial."""
    terms = p.terms()
    if not terms:
        return "0"
    names = variable_names(p.num_vars)
    pieces = []
    for index, (monomial, coeff) in enumerate(terms):
        factors = [name if e == 1 else f"{name}^{e}"
                   for name, e in zip(names, monomial) if e]
        magnitude = abs(coeff)
        if not factors:
            body = format_rat(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = format_rat(magnitude) + "*" + "*".join(factors)
        if index == 0:
            pieces.append(("-" if coeff < 0 else "") + body)
        else:
            pieces.append((" - " if coeff < 0 else " + ") + body)
    return "".join(pieces)


def parse_poly(text: str, m: int) -> Poly:
    """
    Parse the canonical text form (spacing is ignored).

    Raises:
        FormatError: On unknown variables or malformed terms.
    """
    if not isinstance(text, str):
        raise FormatError(f"polynomial text expected, got {text!r}")
    compact = "".join(text.split())
    if not compact:
        raise FormatError("empty polynomial text")
    if not re.fullmatch(r"(?:[+-]?[^+-]+)+", compact):
        raise FormatError(f"malformed polynomial: {text!r}")
    index_of = {name: c for c, name in enumerate(variable_names(m))}
    terms: Dict[Monomial, Fraction] = {}
    for sign, body in _TERM_RE.findall(compact):
        coeff = Fraction(-1 if sign == "-" else 1)
        exponents = [0] * m
        for factor in body.split("*"):
            if _RAT_RE.fullmatch(factor):
                coeff *= parse_rat(factor)
                continue
            name, caret, power = factor.partition("^")
            if name not in index_of:
                raise FormatError(f"unknown variable {name!r} for m={m}")
            if caret and not power.isdigit():
                raise FormatError(f"bad exponent in {factor!r}")
            exponents[index_of[name]] += int(power) if power else 1
        key = tuple(exponents)
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return Poly.from_terms(m, terms)
