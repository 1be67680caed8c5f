#!/usr/bin/env python3
"""
Orbit exploration with exact arithmetic.

    - random_mutation_walk applies random vertices and records the values
      of watched carriage-wise polynomials at every inner step;
    - integer_orbit_bfs enumerates the mutation orbit of an integer
      quiver, up to a cap, keyed by the raw upper triangle;
    - boundary_continuity_check compares the pieces of adjacent
      carriages on their common wall.

Reports are `JsonModel`s, so equal runs give byte-identical files.
"""
from collections import deque
from fractions import Fraction
from random import Random
from typing import Dict, List, Optional, Sequence, Tuple

from config import config
from core.exact_poly import format_rat, parse_rat
from core.quiver import (Quiver, SignPattern, all_patterns,
                         compatible_patterns, mutate, random_inner_quiver)
from errors import DomainError, FormatError
from invariants.carriage_wise import CarriageWisePolynomial, evaluate
from logger import get_logger
from models.base import JsonModel
from models.types import JsonDict

logger = get_logger(__name__)

SEED_MASK = (1 << 64) - 1


class WalkReport(JsonModel):
    """
    A recorded mutation walk.

    Attributes:
        start (Quiver): Starting quiver.
        seed (int): Unsigned 64-bit seed of the vertex choice.
        vertices (List[int]): Vertices applied, in order.
        watch (List[str]): Names of the watched invariants.
        rows (List[dict]): One row per visited quiver (start included):
            "step", "quiver" (upper triangle), "inner" and "values",
            the latter None at steps with a zero entry.
    """

    REQUIRED_KEYS = ("start", "seed", "vertices", "watch", "rows")

    def __init__(self, start: Quiver, seed: int, vertices: Sequence[int],
                 watch: Sequence[str], rows: Sequence[dict]):
        self.start = start
        self.seed = seed
        self.vertices = list(vertices)
        self.watch = list(watch)
        self.rows = list(rows)

    def column(self, index: int) -> List[Fraction]:
        """Values of the watched invariant `index` at the inner steps."""
        return [parse_rat(row["values"][index]) for row in self.rows
                if row["values"] is not None]

    def varying(self) -> List[str]:
        """Names of watched invariants that are not constant."""
        return [name for index, name in enumerate(self.watch)
                if len(set(self.column(index))) > 1]

    @property
    def is_constant(self) -> bool:
        return not self.varying()

    def to_json(self) -> JsonDict:
        return {
            "start": self.start.to_json(),
            "seed": self.seed,
            "vertices": self.vertices,
            "watch": self.watch,
            "rows": self.rows,
        }

    @classmethod
    def from_json(cls, data: JsonDict) -> "WalkReport":
        data = cls.require_keys(data)
        if not isinstance(data["rows"], list):
            raise FormatError("rows must be a list")
        return cls(Quiver.from_json(data["start"]), data["seed"],
                   data["vertices"], data["watch"], data["rows"])


def _walk_row(step: int, Q: Quiver,
              watch: Sequence[CarriageWisePolynomial]) -> dict:
    values = None
    if Q.is_inner:
        values = [format_rat(evaluate(F, Q)) for F in watch]
    return {"step": step, "quiver": Q.to_json()["upper"],
            "inner": Q.is_inner, "values": values}


def random_mutation_walk(Q: Quiver, steps: int, seed: int,
                         watch: Sequence[CarriageWisePolynomial] = (),
                         names: Sequence[str] = None) -> WalkReport:
    """
    Mutate Q at `steps` uniformly random vertices.

    Args:
        Q (Quiver): Starting quiver.
        steps (int): Number of mutations, >= 0.
        seed (int): Seed of the vertex choice, reduced to 64 bits.
        watch (Sequence[CarriageWisePolynomial]): Invariants to record.
        names (Sequence[str]): Their names; "F0", "F1", ... by default.

    Raises:
        DomainError: For a negative step count or a size mismatch.
    """
    if steps < 0:
        raise DomainError(f"steps must be >= 0, got {steps}")
    if any(F.n != Q.n for F in watch):
        raise DomainError("watched invariants must match the quiver size")
    names = list(names) if names is not None else \
        [f"F{index}" for index in range(len(watch))]
    seed = seed & SEED_MASK
    rng = Random(seed)
    vertices = []
    rows = [_walk_row(0, Q, watch)]
    current = Q
    for step in range(1, steps + 1):
        k = rng.randint(1, Q.n)
        vertices.append(k)
        current = mutate(current, k)
        rows.append(_walk_row(step, current, watch))
    report = WalkReport(Q, seed, vertices, names, rows)
    logger.info(f"n={Q.n};steps={steps};seed={seed};"
                f"varying={','.join(report.varying()) or 'none'};")
    return report


class OrbitSummary(JsonModel):
    """
    Outcome of an orbit enumeration.

    Attributes:
        start (Quiver): Starting quiver.
        visited (int): Distinct quivers found, at most `cap`.
        exhausted (bool): True when the orbit closed before the cap.
        cap (int): Limit on `visited`.
        members (Tuple[Quiver, ...]): Visited quivers in BFS order; not
            serialized.
    """

    REQUIRED_KEYS = ("start", "visited", "exhausted", "cap")

    def __init__(self, start: Quiver, visited: int, exhausted: bool,
                 cap: int, members: Sequence[Quiver] = ()):
        self.start = start
        self.visited = visited
        self.exhausted = exhausted
        self.cap = cap
        self.members = tuple(members)

    def to_json(self) -> JsonDict:
        return {
            "start": self.start.to_json(),
            "visited": self.visited,
            "exhausted": self.exhausted,
            "cap": self.cap,
        }

    @classmethod
    def from_json(cls, data: JsonDict) -> "OrbitSummary":
        data = cls.require_keys(data)
        return cls(Quiver.from_json(data["start"]), data["visited"],
                   bool(data["exhausted"]), data["cap"])


def integer_orbit_bfs(Q: Quiver, cap: int = 10000) -> OrbitSummary:
    """
    Breadth-first closure of Q under all mutations.

    Raises:
        DomainError: If an entry of Q is not an integer or cap < 1.
    """
    if any(x.denominator != 1 for x in Q.upper):
        raise DomainError(
            f"integer orbit needs integer entries, got {Q.to_json()['upper']}"
        )
    if cap < 1:
        raise DomainError(f"cap must be >= 1, got {cap}")
    seen = {Q.upper}
    members = [Q]
    queue = deque([Q])
    capped = False
    while queue and not capped:
        current = queue.popleft()
        for k in range(1, Q.n + 1):
            image = mutate(current, k)
            if image.upper in seen:
                continue
            if len(seen) >= cap:
                capped = True
                break
            seen.add(image.upper)
            members.append(image)
            queue.append(image)
    logger.info(f"start={Q.to_json()['upper']};visited={len(seen)};"
                f"exhausted={not capped};")
    return OrbitSummary(Q, len(seen), not capped, cap, members)


def _boundary_point(s: SignPattern, index: int, rng: Random) -> Quiver:
    Q = random_inner_quiver(s, rng)
    upper = list(Q.upper)
    upper[index] = Fraction(0)
    return Quiver(s.n, tuple(upper))


def find_boundary_disagreement(
        F: CarriageWisePolynomial, trials: int = 3, seed: int = None
) -> Optional[Tuple[Quiver, Dict[str, Fraction]]]:
    """
    Sample `trials` points on every wall between two carriages (one
    entry zero, the others nonzero) and return the first point where
    the pieces of the carriages meeting there differ, with their values.
    """
    rng = Random(config.SEED if seed is None else seed)
    for s in all_patterns(F.n):
        for index, sign in enumerate(s.signs):
            if sign < 0:
                continue
            for _ in range(trials):
                Q = _boundary_point(s, index, rng)
                values = {t.text: F.piece(t).evaluate(Q.upper)
                          for t in compatible_patterns(Q)}
                if len(set(values.values())) > 1:
                    return Q, values
    return None


def boundary_continuity_check(F: CarriageWisePolynomial, trials: int = 3,
                              seed: int = None) -> bool:
    return find_boundary_disagreement(F, trials, seed) is None
