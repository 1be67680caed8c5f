#!/usr/bin/env python3
"""
The flip relation on sign patterns.

Two carriages that differ in the sign of a single entry x_{i,j} are
joined when some third vertex k has x_{i,k} and x_{k,j} of the same
sign: the mutation at k then crosses the wall x_{i,j} = 0 and forces
the pieces of an invariant on both sides to coincide. The condition
never looks at x_{i,j} itself, so the relation is symmetric.

The graph is a `networkx.Graph` whose nodes are `SignPattern`s.
Components are listed by their least member in text order, members
sorted the same way.
"""
from functools import lru_cache
from typing import Dict, List, Tuple

import networkx as nx

from config import config
from core.exact_poly import position_index, positions
from core.quiver import SignPattern, all_patterns
from errors import CapExceededError, DimensionError
from logger import get_logger

logger = get_logger(__name__)


def flip_allowed(s: SignPattern, pos: Tuple[int, int], n: int) -> bool:
    """
    Whether the sign of entry `pos` may be flipped inside one component.

    Args:
        s (SignPattern): The carriage.
        pos (Tuple[int, int]): Entry position (i, j), i < j.
        n (int): Quiver size; must match s.

    Returns:
        bool: True iff some k outside {i, j} has sign(x_ik) = sign(x_kj).
    """
    if s.n != n:
        raise DimensionError(f"pattern of size {s.n} given for n={n}")
    i, j = pos
    position_index(n, i, j)
    return any(s.sign(i, k) == s.sign(k, j)
               for k in range(1, n + 1) if k not in (i, j))


class FlipGraph:
    """
    All 2^m carriages of size n with their allowed single-entry flips.

    Attributes:
        n (int): Quiver size.
        graph (nx.Graph): Nodes are SignPatterns; an edge carries the
            entry position it flips as its `position` attribute.
    """

    def __init__(self, n: int):
        if n < 2:
            raise DimensionError(f"quiver size must be >= 2, got {n}")
        self.n = n
        self.graph = nx.Graph()
        self.graph.add_nodes_from(all_patterns(n))
        for s in all_patterns(n):
            for index, pos in enumerate(positions(n)):
                if flip_allowed(s, pos, n):
                    self.graph.add_edge(s, s.flipped(index), position=pos)
        logger.info(f"n={n};nodes={self.graph.number_of_nodes()};"
                    f"edges={self.graph.number_of_edges()};")

    @property
    def nodes(self) -> List[SignPattern]:
        return sorted(self.graph.nodes)

    def edges(self) -> List[Tuple[SignPattern, SignPattern]]:
        """Edges as ordered pairs (smaller pattern first), sorted."""
        return sorted(tuple(sorted(edge)) for edge in self.graph.edges)

    def components(self) -> List[List[SignPattern]]:
        parts = [sorted(part)
                 for part in nx.connected_components(self.graph)]
        return sorted(parts, key=lambda part: part[0])


def _check_cap(n: int) -> None:
    if n > config.COMPONENT_CAP:
        raise CapExceededError(
            f"n={n} exceeds the component cap {config.COMPONENT_CAP} "
            f"(QUIVERLAB_COMPONENT_CAP)"
        )


@lru_cache(maxsize=None)
def flip_graph(n: int) -> FlipGraph:
    """
    The flip graph of size n.

    Raises:
        CapExceededError: If n is above config.COMPONENT_CAP.
    """
    _check_cap(n)
    return FlipGraph(n)


def components(n: int) -> List[List[SignPattern]]:
    """Connected components of the flip graph of size n."""
    return flip_graph(n).components()


def is_connected(n: int) -> bool:
    return len(components(n)) == 1


def component_index(n: int) -> Dict[SignPattern, int]:
    """Map each pattern to the position of its component."""
    return {s: index
            for index, part in enumerate(components(n))
            for s in part}


def component_report(n: int) -> str:
    """One line such as "1 component: 64" or "2 components: 4, 4"."""
    sizes = [len(part) for part in components(n)]
    noun = "component" if len(sizes) == 1 else "components"
    return f"{len(sizes)} {noun}: " + ", ".join(str(s) for s in sizes)


def regular_vertices(s: SignPattern) -> List[int]:
    """
    Vertices with both an incoming and an outgoing arrow, reading the
    pattern as a tournament with i -> j when x_{i,j} > 0.
    """
    result = []
    for v in range(1, s.n + 1):
        signs = [s.sign(v, j) for j in range(1, s.n + 1) if j != v]
        if 1 in signs and -1 in signs:
            result.append(v)
    return result


def component_lines(n: int) -> List[str]:
    """Size and least pattern of every component, one line each."""
    return [f"component {index}: {len(part)} patterns, least {part[0]}"
            for index, part in enumerate(components(n), start=1)]
