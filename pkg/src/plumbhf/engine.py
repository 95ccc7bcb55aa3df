"""Computation sequence and tau function of an almost-rational plumbing.

Starting from the zero cycle, ``x(i+1)`` is obtained from ``x(i)`` by adding
the distinguished vertex ``v0`` and then repeatedly adding any other basis
vertex that pairs positively with the running cycle. The tau function is

    tau(0) = 0,   tau(i+1) = tau(i) + 1 - (x(i), v0)

and is recorded up to the first index where it reaches 2.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import NonTerminationError, PlumbingError, checked
from .graph import Cycle, PlumbingGraph, distinguished_vertex, validate

DEFAULT_STEP_BUDGET = 10**7
TAIL_CHECK_STEPS = 50


@dataclass(frozen=True)
class ComputationState:
    graph: PlumbingGraph
    v0: int
    x: Cycle
    i: int = 0
    step_budget: int = DEFAULT_STEP_BUDGET

    def __post_init__(self):
        if len(self.x) != len(self.graph):
            raise PlumbingError("cycle length does not match the graph")
        if not 0 <= self.v0 < len(self.graph):
            raise PlumbingError(f"v0 = {self.v0} is not a vertex")
        if self.step_budget <= 0:
            raise PlumbingError("step budget must be positive")


class _Walker:
    """Mutable cycle together with its pairing against every basis vertex."""

    def __init__(self, graph: PlumbingGraph, v0: int, x: Sequence[int], budget: int,
                 rng: Optional[random.Random] = None):
        self.graph = graph
        self.v0 = v0
        self.x = list(x)
        self.budget = budget
        self.rng = rng
        self.steps = 0
        w = graph.weights
        self.pair = [w[v] * self.x[v] + sum(self.x[u] for u in graph.neighbors(v)) for v in range(len(graph))]
        self.positive = {v for v, p in enumerate(self.pair) if p > 0 and v != v0}

    def _add(self, j: int) -> None:
        self.steps += 1
        if self.steps > self.budget:
            raise NonTerminationError(
                f"step budget of {self.budget} inner steps exhausted "
                "(non-terminating input: graph likely not almost-rational or not negative definite)"
            )
        self.x[j] += 1
        self._bump(j, self.graph.weights[j])
        for u in self.graph.neighbors(j):
            self._bump(u, 1)

    def _bump(self, v: int, delta: int) -> None:
        p = self.pair[v] + delta
        self.pair[v] = p
        if v == self.v0:
            return
        if p > 0:
            self.positive.add(v)
        else:
            self.positive.discard(v)

    def advance(self) -> None:
        """Replace the cycle ``x(i)`` by ``x(i+1)``."""
        self._add(self.v0)
        while self.positive:
            if self.rng is None:
                j = min(self.positive)
            else:
                j = self.rng.choice(sorted(self.positive))
            self._add(j)
        checked(max(self.x))
        checked(min(self.pair))


def next_cycle(state: ComputationState, rng: Optional[random.Random] = None) -> Cycle:
    """Return ``x(i+1)`` for the state's ``x(i)``.

    Among several vertices pairing positively the lowest id is added first;
    pass ``rng`` to pick uniformly at random instead.
    """
    walker = _Walker(state.graph, state.v0, state.x, state.step_budget, rng)
    walker.advance()
    return tuple(walker.x)


def computation_sequence(graph: PlumbingGraph, v0: int, length: int,
                         rng: Optional[random.Random] = None,
                         step_budget: int = DEFAULT_STEP_BUDGET) -> list[Cycle]:
    """The cycles ``x(0), ..., x(length - 1)``."""
    walker = _Walker(graph, v0, [0] * len(graph), step_budget, rng)
    out = [tuple(walker.x)]
    for _ in range(length - 1):
        walker.advance()
        out.append(tuple(walker.x))
    return out


@dataclass(frozen=True)
class TauFunction:
    full: tuple[int, ...]
    reduced: tuple[int, ...]
    v0: int

    @property
    def i0(self) -> int:
        return len(self.full) - 1


def _resolve_v0(graph: PlumbingGraph, v0: Optional[int]) -> int:
    if v0 is not None:
        if not 0 <= v0 < len(graph):
            raise PlumbingError(f"v0 = {v0} is not a vertex of the graph")
        return v0
    found = distinguished_vertex(graph)
    if found is None:
        raise PlumbingError(
            "no distinguished vertex: need exactly one v with |m(v)| < deg(v); pass v0 explicitly"
        )
    return found


def tau_values(graph: PlumbingGraph, v0: int, extra: int = 0,
               step_budget: int = DEFAULT_STEP_BUDGET) -> tuple[list[int], int]:
    """Tau up to the first index ``i0`` with value 2, plus ``extra`` further values.

    Returns ``(values, i0)``. No validation is done here.
    """
    walker = _Walker(graph, v0, [0] * len(graph), step_budget)
    values = [0]
    i0 = None
    while i0 is None or len(values) - 1 < i0 + extra:
        values.append(checked(values[-1] + 1 - walker.pair[v0]))
        if i0 is None and values[-1] == 2:
            i0 = len(values) - 1
        if i0 is None or len(values) - 1 < i0 + extra:
            walker.advance()
    return values, i0


def compute_tau(graph: PlumbingGraph, v0: Optional[int] = None,
                step_budget: int = DEFAULT_STEP_BUDGET,
                tail_check: int = TAIL_CHECK_STEPS) -> TauFunction:
    """Tau function of a negative definite plumbing tree of a homology sphere.

    After reaching 2 the run continues for ``tail_check`` more steps and
    raises :class:`PlumbingError` if tau decreases there.
    """
    report = validate(graph)
    hard = [p for p in report.problems if not p.startswith("no distinguished")]
    if hard:
        raise PlumbingError("; ".join(hard))
    v0 = _resolve_v0(graph, v0)
    values, i0 = tau_values(graph, v0, extra=tail_check, step_budget=step_budget)
    tail = values[i0:]
    if any(b < a for a, b in zip(tail, tail[1:])):
        raise PlumbingError(
            f"tau decreases after first reaching 2 at i0 = {i0}; graph is likely not almost rational for v0 = {v0}"
        )
    full = tuple(values[: i0 + 1])
    return TauFunction(full=full, reduced=tuple(reduce_tau(full)), v0=v0)


def reduce_tau(full: Sequence[int]) -> list[int]:
    """Collapse repeats, keep the first entry and the interior strict extrema,
    then drop the increasing run after the last local minimum.

    The result alternates minimum, maximum, ..., minimum.

    >>> reduce_tau([0, 1, 0, 0, 1, 1, 2])
    [0, 1, 0]
    """
    if len(full) == 0:
        raise PlumbingError("cannot reduce an empty tau sequence")
    dedup = [full[0]]
    for value in full[1:]:
        if value != dedup[-1]:
            dedup.append(value)
    kept = [dedup[0]]
    for a, b, c in zip(dedup, dedup[1:], dedup[2:]):
        if (b > a and b > c) or (b < a and b < c):
            kept.append(b)
    if len(dedup) > 1:
        kept.append(dedup[-1])
    while len(kept) > 1 and kept[-1] > kept[-2]:
        kept.pop()
    if len(kept) > 1 and kept[0] > kept[1]:
        # a leading maximum bounds nothing on its left, so its ray is absorbed
        kept.pop(0)
    return kept
