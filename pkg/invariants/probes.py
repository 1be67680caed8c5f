#!/usr/bin/env python3
"""
Evaluation-level probes of 4-quiver invariants.

Split a 4-quiver into Y = (x, y, z) and V = (u, v, w). An invariant F
of a 4-quiver depends on Y and V only through the bilinear form
Y.V = xw + yv + zu (the Pfaffian):

    - dot_product_dependence_check compares F at random pairs of inner
      quivers with equal Y.V;
    - translation_line_check follows the lines along which a doubled
      mutation translates, on which Y.V is constant;
    - scalar_profile restricts F to x = t, w = 1, other letters 0, where
      Y.V = t, giving the one-variable g with F = g(Y.V).
"""
from fractions import Fraction
from random import Random
from typing import List, Optional, Tuple

from config import config
from core.exact_poly import Poly
from core.piecewise_map import TRANSLATION_FAMILIES, family_patterns
from core.quiver import (LETTER_SIGNS, Quiver, SignPattern,
                         quiver_from_letters, random_inner_quiver,
                         random_magnitude)
from errors import UnsupportedSizeError
from invariants.carriage_wise import CarriageWisePolynomial, evaluate
from logger import get_logger

logger = get_logger(__name__)

LINE_STEPS = (Fraction(-2), Fraction(-1), Fraction(-1, 2), Fraction(1, 2),
              Fraction(1), Fraction(2), Fraction(3))


def _require_four(F: CarriageWisePolynomial) -> None:
    if F.n != 4:
        raise UnsupportedSizeError(
            f"Y.V probes address 4-quivers, got n={F.n}"
        )


def _random_letter(rng: Random) -> Fraction:
    return rng.choice((1, -1)) * random_magnitude(rng)


def equal_dot_product_pair(rng: Random) -> Tuple[Quiver, Quiver]:
    """Two inner 4-quivers with the same Y.V, the second's w solved for."""
    while True:
        x, y, z, u, v, w = (_random_letter(rng) for _ in range(6))
        target = x * w + y * v + z * u
        x2, y2, z2, u2, v2 = (_random_letter(rng) for _ in range(5))
        w2 = (target - y2 * v2 - z2 * u2) / x2
        if w2:
            return (quiver_from_letters(x, y, z, u, v, w),
                    quiver_from_letters(x2, y2, z2, u2, v2, w2))


def find_dot_product_disagreement(
        F: CarriageWisePolynomial, trials: int = 1000, seed: int = None
) -> Optional[Tuple[Quiver, Quiver]]:
    """The first pair with equal Y.V where F differs, or None."""
    _require_four(F)
    rng = Random(config.SEED if seed is None else seed)
    for _ in range(trials):
        first, second = equal_dot_product_pair(rng)
        if evaluate(F, first) != evaluate(F, second):
            return first, second
    return None


def dot_product_dependence_check(F: CarriageWisePolynomial,
                                 trials: int = 1000,
                                 seed: int = None) -> bool:
    return find_dot_product_disagreement(F, trials, seed) is None


def translation_line_check(F: CarriageWisePolynomial, trials: int = 20,
                           seed: int = None) -> bool:
    """
    Whether F is constant along X + lambda * dir(X) for every translation
    family, at `trials` random inner X of the family's carriages.
    Points of the line with a zero entry are skipped.
    """
    _require_four(F)
    rng = Random(config.SEED if seed is None else seed)
    for k, family in sorted(TRANSLATION_FAMILIES.items()):
        patterns = family_patterns(k)
        direction = family.translation()
        for _ in range(trials):
            X = random_inner_quiver(rng.choice(patterns), rng)
            step = direction.evaluate(X.upper)
            base = evaluate(F, X)
            for scale in LINE_STEPS:
                Y = Quiver(4, tuple(a + scale * b
                                    for a, b in zip(X.upper, step)))
                if Y.is_inner and evaluate(F, Y) != base:
                    logger.warning(f"k={k};point={X.to_json()['upper']};"
                                   f"lambda={scale};")
                    return False
    return True


def scalar_profile(F: CarriageWisePolynomial,
                   s: SignPattern = None) -> List[Fraction]:
    """
    Coefficients g_0, g_1, ... of t -> F(x=t, w=1, y=z=u=v=0), read off
    the piece of carriage s (by default the carriage with every letter
    positive).
    """
    _require_four(F)
    if s is None:
        s = SignPattern(4, LETTER_SIGNS)
    piece: Poly = F.piece(s)
    coefficients: List[Fraction] = []
    for monomial, coeff in piece.terms():
        a, b, c, d, e, _ = monomial
        if b or c or d or e:
            continue
        while len(coefficients) <= a:
            coefficients.append(Fraction(0))
        coefficients[a] += coeff
    while len(coefficients) > 1 and not coefficients[-1]:
        coefficients.pop()
    return coefficients or [Fraction(0)]
