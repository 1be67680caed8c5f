#!/usr/bin/env python3
"""
Polynomial extensions of the mutation, one per carriage.

On the carriage of a sign pattern s the mutation at k is the polynomial
map mu_poly(k, s): every entry incident to k is negated and an entry
x_{i,j} off k becomes x_{i,j} + x_{i,k} x_{k,j} (both factors positive
in s), x_{i,j} - x_{i,k} x_{k,j} (both negative), or stays put (mixed).
The map depends on s only through the signs of the entries incident to
k, which is what `MutationMapKey` records.

`feasible_targets` lists the carriages the inner points of s can land
in; `sample_transition_point` builds a witness for each of them. The
identities behind the involution argument and the doubled-mutation
translations are checked symbolically here.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from random import Random
from typing import Dict, List, Tuple

from core.exact_poly import Poly, PolyVec, entry_count, positions
from core.quiver import (LETTERS, LETTER_SIGNS, Quiver, SignPattern,
                         all_patterns, check_vertex, entry_poly, letter_polys,
                         random_magnitude)
from errors import DimensionError, UnsupportedSizeError, WrongCarriageError


@dataclass(frozen=True)
class MutationMapKey:
    """
    What mu_poly(k, s) depends on.

    Attributes:
        n (int): Quiver size.
        k (int): Mutation vertex.
        adjacent_signs (Tuple[int, ...]): sign of x_{i,k} for i = 1..n,
            i != k, in increasing i.
    """

    n: int
    k: int
    adjacent_signs: Tuple[int, ...]

    def sign_to(self, i: int) -> int:
        """Sign of x_{i,k}."""
        index = i - 1 if i < self.k else i - 2
        return self.adjacent_signs[index]


def mutation_key(s: SignPattern, k: int) -> MutationMapKey:
    check_vertex(s.n, k)
    return MutationMapKey(s.n, k, tuple(s.sign(i, k)
                                        for i in range(1, s.n + 1)
                                        if i != k))


def added_sign(key: MutationMapKey, i: int, j: int) -> int:
    """
    Sign of the term added to x_{i,j} (i, j != k) on the carriage:
    +1 or -1 when x_{i,k} and x_{k,j} share that sign, 0 when mixed.
    """
    a, b = key.sign_to(i), -key.sign_to(j)
    return a if a == b else 0


@lru_cache(maxsize=None)
def mu_poly_for_key(key: MutationMapKey) -> PolyVec:
    n, k = key.n, key.k
    components = []
    for i, j in positions(n):
        x = entry_poly(n, i, j)
        if k in (i, j):
            components.append(-x)
            continue
        sign = added_sign(key, i, j)
        if sign:
            product_term = entry_poly(n, i, k) * entry_poly(n, k, j)
            components.append(x + product_term if sign > 0
                              else x - product_term)
        else:
            components.append(x)
    return PolyVec(components)


def mu_poly(k: int, s: SignPattern, n: int = None) -> PolyVec:
    """The polynomial map agreeing with the mutation at k on carriage s."""
    if n is not None and n != s.n:
        raise DimensionError(f"pattern of size {s.n} given for n={n}")
    return mu_poly_for_key(mutation_key(s, k))


@lru_cache(maxsize=None)
def added_term_map(k: int, s: SignPattern) -> PolyVec:
    """mu_poly(k, s) minus the linear part: the added products, else 0."""
    key = mutation_key(s, k)
    m = entry_count(s.n)
    components = []
    for i, j in positions(s.n):
        sign = 0 if k in (i, j) else added_sign(key, i, j)
        if sign:
            components.append(sign * entry_poly(s.n, i, k)
                              * entry_poly(s.n, k, j))
        else:
            components.append(Poly.zero(m))
    return PolyVec(components)


def _target_options(s: SignPattern, k: int) -> List[Tuple[int, ...]]:
    key = mutation_key(s, k)
    options = []
    for (i, j), sign in zip(positions(s.n), s.signs):
        if k in (i, j):
            options.append((-sign,))
            continue
        added = added_sign(key, i, j)
        if added == 0 or added == sign:
            options.append((sign,))
        else:
            options.append((1, -1))
    return options


@lru_cache(maxsize=None)
def feasible_targets(s: SignPattern, k: int) -> Tuple[SignPattern, ...]:
    """
    Carriages t such that inner points of s mutated at k fill an open
    subset of t. Free positions are independent, so the result is a
    product of per-entry options; landings on a zero entry are ignored.
    """
    return tuple(sorted(SignPattern(s.n, signs)
                        for signs in product(*_target_options(s, k))))


def sample_transition_point(s: SignPattern, k: int, t: SignPattern,
                            rng: Random) -> Quiver:
    """
    A random inner quiver Q of carriage s with mutate(Q, k) inner and in
    carriage t.

    Raises:
        WrongCarriageError: If t is not a feasible target of (s, k).
    """
    if t not in feasible_targets(s, k):
        raise WrongCarriageError(f"{t} is not reachable from {s} at {k}")
    key = mutation_key(s, k)
    values: Dict[Tuple[int, int], Fraction] = {}
    for (i, j), sign in zip(positions(s.n), s.signs):
        if k in (i, j):
            values[(i, j)] = sign * random_magnitude(rng)

    def value(i: int, j: int) -> Fraction:
        return values[(i, j)] if i < j else -values[(j, i)]

    for (i, j), sign, target in zip(positions(s.n), s.signs, t.signs):
        if k in (i, j):
            continue
        added = added_sign(key, i, j)
        bound = abs(value(i, k) * value(k, j)) if added else Fraction(0)
        if target != sign:
            # strictly inside the added term, so the sign turns over
            magnitude = bound * Fraction(rng.randint(1, 7), 8)
        elif added and added != sign:
            magnitude = bound + random_magnitude(rng)
        else:
            magnitude = random_magnitude(rng)
        values[(i, j)] = sign * magnitude
    return Quiver(s.n, tuple(values[pos] for pos in positions(s.n)))


def verify_involution_identity(s: SignPattern, k: int) -> bool:
    """mu_poly(k, t) after mu_poly(k, s) is the identity for every target."""
    inner = mu_poly(k, s)
    identity = PolyVec.identity(entry_count(s.n))
    return all(mu_poly(k, t).compose(inner) == identity
               for t in feasible_targets(s, k))


@dataclass(frozen=True)
class TranslationFamily:
    """
    A carriage family of 4-quivers on which the doubled mutation at k is
    a translation, stated in letters.

    Attributes:
        k (int): Mutation vertex.
        side (str): "Y" when (x, y, z) moves, "V" when (u, v, w) moves.
        requires (Tuple[Tuple[str, int], ...]): prescribed letter signs.
        shift (Tuple[Tuple[str, int, str], ...]): (letter, coefficient,
            product of two letters) terms of the translation vector.
    """

    k: int
    side: str
    requires: Tuple[Tuple[str, int], ...]
    shift: Tuple[Tuple[str, int, str], ...]

    def admits(self, s: SignPattern) -> bool:
        raw = dict(zip(LETTERS, (sign * raw_sign for sign, raw_sign in
                                 zip(LETTER_SIGNS, s.signs))))
        return all(raw[letter] == sign for letter, sign in self.requires)

    def translation(self) -> PolyVec:
        """The translation vector in raw variables."""
        letters = letter_polys()
        deltas = {letter: coeff * letters[a] * letters[b]
                  for letter, coeff, (a, b) in self.shift}
        return PolyVec(sign * deltas.get(letter, Poly.zero(6))
                       for letter, sign in zip(LETTERS, LETTER_SIGNS))


TRANSLATION_FAMILIES: Dict[int, TranslationFamily] = {
    4: TranslationFamily(4, "Y", (("z", 1), ("v", 1), ("w", -1)),
                         (("x", 2, "zv"), ("y", -2, "zw"))),
    3: TranslationFamily(3, "Y", (("w", 1), ("y", 1), ("u", -1)),
                         (("x", -2, "yu"), ("z", 2, "yw"))),
    1: TranslationFamily(1, "V", (("x", -1), ("y", 1), ("z", 1)),
                         (("u", -2, "xy"), ("v", 2, "xz"))),
}


def family_patterns(k: int) -> List[SignPattern]:
    """The 8 carriages of the translation family at vertex k."""
    family = _family(k)
    return [s for s in all_patterns(4) if family.admits(s)]


def _family(k: int) -> TranslationFamily:
    try:
        return TRANSLATION_FAMILIES[k]
    except KeyError:
        raise WrongCarriageError(f"no translation family at vertex {k}")


def verify_double_mutation_translation(s: SignPattern, k: int = 4) -> bool:
    """
    Check (mu_poly(k, s))^2 = id + translation symbolically.

    Raises:
        UnsupportedSizeError: If s is not a 4-quiver pattern.
        WrongCarriageError: If s lies outside the family of vertex k.
    """
    if s.n != 4:
        raise UnsupportedSizeError("translation families live at n=4")
    family = _family(k)
    if not family.admits(s):
        raise WrongCarriageError(
            f"pattern {s} violates the carriage of the vertex {k} family"
        )
    mu = mu_poly(k, s)
    expected = PolyVec.identity(6) + family.translation()
    return mu.compose(mu) == expected
