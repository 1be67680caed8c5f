#!/usr/bin/env python3
"""
The two invariants known in closed form.

    - det_invariant: Det = Pf^2 on every carriage of a 4-quiver.
    - markov_invariant: x^2 + y^2 + z^2 - xyz on carriages of a 3-quiver
      where at least two of the letters x = x12, y = -x13, z = x23 are
      positive, and x^2 + y^2 + z^2 + xyz on the others.
"""
from core.exact_poly import Poly
from core.quiver import (MARKOV_LETTER_SIGNS, SignPattern, all_patterns,
                         determinant_poly, entry_poly)
from errors import UnsupportedSizeError
from invariants.carriage_wise import CarriageWisePolynomial


def det_invariant(n: int = 4) -> CarriageWisePolynomial:
    if n != 4:
        raise UnsupportedSizeError(
            f"the determinant invariant is provided for n=4, not n={n}"
        )
    return CarriageWisePolynomial.uniform(4, determinant_poly(4))


def markov_sign(s: SignPattern) -> int:
    """+1 when at least two letters are positive on s, else -1."""
    positive = sum(1 for letter_sign, sign in zip(MARKOV_LETTER_SIGNS,
                                                  s.signs)
                   if letter_sign * sign > 0)
    return 1 if positive >= 2 else -1


def markov_piece(s: SignPattern) -> Poly:
    x12, x13, x23 = (entry_poly(3, 1, 2), entry_poly(3, 1, 3),
                     entry_poly(3, 2, 3))
    return x12 ** 2 + x13 ** 2 + x23 ** 2 + markov_sign(s) * x12 * x13 * x23


def markov_invariant(n: int = 3) -> CarriageWisePolynomial:
    if n != 3:
        raise UnsupportedSizeError(
            f"the Markov invariant is provided for n=3, not n={n}"
        )
    return CarriageWisePolynomial(3, {s: markov_piece(s)
                                      for s in all_patterns(3)})
