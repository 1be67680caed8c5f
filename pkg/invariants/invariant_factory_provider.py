#!/usr/bin/env python3
"""
Module for managing invariant factories using the Abstract Factory
pattern. Provides a default implementation mapping the names accepted on
the command line ("det", "markov") to their factories. Supports
adding/removing custom invariant factories dynamically.
"""

from abc import ABC, abstractmethod
from typing import List, Type

from errors import UnknownInvariantError
from invariants.invariant_factory import (
    DetInvariantFactory,
    InvariantFactory,
    MarkovInvariantFactory
)


class InvariantFactoryProvider(ABC):
    """Abstract Factory Provider for creating invariant factories."""

    @abstractmethod
    def get_factory(self, name: str) -> InvariantFactory:
        """Return the corresponding InvariantFactory for the given name."""
        pass

    @abstractmethod
    def add_factory(self, name: str,
                    factory_class: Type[InvariantFactory]) -> None:
        """Dynamically add a new invariant factory to the provider."""
        pass

    @abstractmethod
    def remove_factory(self, name: str) -> None:
        """Dynamically remove an invariant factory from the provider."""
        pass


class DefaultInvariantFactoryProvider(InvariantFactoryProvider):
    """Default provider for the built-in invariants."""

    def __init__(self):
        self.FACTORY_MAP = {
            'det': DetInvariantFactory,
            'markov': MarkovInvariantFactory,
        }

    @property
    def names(self) -> List[str]:
        return sorted(self.FACTORY_MAP)

    def get_factory(self, name: str) -> InvariantFactory:
        """Return the corresponding InvariantFactory for the given name."""
        try:
            factory = self.FACTORY_MAP[name]
        except KeyError:
            raise UnknownInvariantError(
                f"Unsupported invariant: {name} "
                f"(known: {', '.join(self.names)})"
            )
        return factory()

    def add_factory(self, name: str,
                    factory_class: Type[InvariantFactory]) -> None:
        """Add a new invariant factory."""
        if name in self.FACTORY_MAP:
            raise ValueError(f"Invariant '{name}' already exists.")
        self.FACTORY_MAP[name] = factory_class

    def remove_factory(self, name: str) -> None:
        """Remove an invariant factory."""
        if name not in self.FACTORY_MAP:
            raise ValueError(f"Invariant '{name}' does not exist.")
        del self.FACTORY_MAP[name]
