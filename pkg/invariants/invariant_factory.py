#!/usr/bin/env python3
"""
Invariant Factory Module

This module defines an abstract factory and its concrete implementations
for creating the built-in invariants by name. Each factory knows the
quiver size its invariant lives on.

Classes:
    - InvariantFactory: Abstract base class for creating invariants.
    - DetInvariantFactory: Factory for the determinant of a 4-quiver.
    - MarkovInvariantFactory: Factory for the Markov invariant of a
      3-quiver.
"""
from abc import ABC, abstractmethod

from invariants.builtin import det_invariant, markov_invariant
from invariants.carriage_wise import CarriageWisePolynomial


class InvariantFactory(ABC):
    """Abstract factory for creating invariants."""

    n: int = 0

    @abstractmethod
    def create_invariant(self) -> CarriageWisePolynomial:
        """Method to create and return the invariant."""
        pass


class DetInvariantFactory(InvariantFactory):
    """Factory for the determinant invariant."""

    n = 4

    def create_invariant(self) -> CarriageWisePolynomial:
        return det_invariant(self.n)


class MarkovInvariantFactory(InvariantFactory):
    """Factory for the Markov invariant."""

    n = 3

    def create_invariant(self) -> CarriageWisePolynomial:
        """
        Returns the piecewise x^2 + y^2 + z^2 -+ xyz invariant, the sign
        chosen per carriage.
        """
        return markov_invariant(self.n)
