"""Plumbing graphs, their intersection lattice, and input validation.

All arithmetic is exact integer arithmetic. Intermediate values are kept in
the signed 64-bit range and anything larger raises
:class:`~plumbhf.errors.ArithmeticOverflowError` instead of wrapping.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Literal, Optional, Sequence

from .errors import NonTerminationError, PlumbingError, checked

Cycle = tuple[int, ...]
Advisory = Literal["pass", "fail", "unknown"]


@dataclass(frozen=True)
class PlumbingGraph:
    """A weighted plumbing graph on dense vertex ids ``0..n-1``.

    ``labels`` keeps the ids the graph was read with, so output can refer
    back to them. Construction rejects self-loops, repeated edges and
    weights above -1; connectivity and acyclicity are reported by
    :func:`validate` rather than enforced here.
    """

    weights: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    labels: tuple[int, ...] = ()
    _adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.weights)
        if n == 0:
            raise PlumbingError("plumbing graph has no vertices")
        weights = tuple(int(w) for w in self.weights)
        for v, w in enumerate(weights):
            if w > -1:
                raise PlumbingError(f"vertex {v} has weight {w}; weights must be <= -1")
            checked(w)
        seen = set()
        for a, b in self.edges:
            if not (0 <= a < n and 0 <= b < n):
                raise PlumbingError(f"edge ({a}, {b}) refers to a missing vertex")
            if a == b:
                raise PlumbingError(f"self-loop at vertex {a}")
            key = (min(a, b), max(a, b))
            if key in seen:
                raise PlumbingError(f"repeated edge {key}")
            seen.add(key)
        labels = tuple(self.labels) if self.labels else tuple(range(n))
        if len(labels) != n or len(set(labels)) != n:
            raise PlumbingError("labels must be distinct, one per vertex")
        adj: list[list[int]] = [[] for _ in range(n)]
        for a, b in seen:
            adj[a].append(b)
            adj[b].append(a)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "edges", tuple(sorted(seen)))
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_adj", tuple(tuple(sorted(a)) for a in adj))

    @classmethod
    def from_lists(cls, weights: Sequence[int], edges: Iterable[tuple[int, int]]) -> "PlumbingGraph":
        return cls(tuple(weights), tuple(tuple(e) for e in edges))

    def __len__(self) -> int:
        return len(self.weights)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def is_connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            for w in self._adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self)

    def is_tree(self) -> bool:
        return len(self.edges) == len(self) - 1 and self.is_connected()

    def relabel(self, perm: Sequence[int]) -> "PlumbingGraph":
        """Return the graph with vertex ``v`` moved to position ``perm[v]``."""
        n = len(self)
        if sorted(perm) != list(range(n)):
            raise PlumbingError("relabelling must be a permutation of the vertex ids")
        weights = [0] * n
        labels = [0] * n
        for v in range(n):
            weights[perm[v]] = self.weights[v]
            labels[perm[v]] = self.labels[v]
        edges = tuple((perm[a], perm[b]) for a, b in self.edges)
        return PlumbingGraph(tuple(weights), edges, tuple(labels))

    def with_weight(self, v: int, weight: int) -> "PlumbingGraph":
        weights = list(self.weights)
        weights[v] = weight
        return PlumbingGraph(tuple(weights), self.edges, self.labels)


@dataclass(frozen=True)
class IntersectionForm:
    """Symmetric integer matrix of the intersection pairing."""

    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.matrix)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise PlumbingError("intersection form must be a square matrix")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise PlumbingError("intersection form must be symmetric")
        object.__setattr__(self, "matrix", rows)

    def __len__(self) -> int:
        return len(self.matrix)


def intersection_form(graph: PlumbingGraph) -> IntersectionForm:
    n = len(graph)
    rows = [[0] * n for _ in range(n)]
    for v, w in enumerate(graph.weights):
        rows[v][v] = w
    for a, b in graph.edges:
        rows[a][b] = rows[b][a] = 1
    return IntersectionForm(tuple(tuple(r) for r in rows))


def basis_cycle(n: int, v: int) -> Cycle:
    return tuple(1 if i == v else 0 for i in range(n))


def pairing(form: IntersectionForm, a: Sequence[int], b: Sequence[int]) -> int:
    """The bilinear pairing ``a^T M b``."""
    n = len(form)
    if len(a) != n or len(b) != n:
        raise PlumbingError(f"cycle length mismatch: form has {n} vertices, got {len(a)} and {len(b)}")
    total = 0
    for i, ai in enumerate(a):
        if ai:
            row = form.matrix[i]
            total = checked(total + checked(ai * sum(row[j] * bj for j, bj in enumerate(b) if bj)))
    return total


def _as_rows(form) -> list[list[int]]:
    if isinstance(form, IntersectionForm):
        return [list(r) for r in form.matrix]
    return [list(r) for r in IntersectionForm(tuple(tuple(r) for r in form)).matrix]


def _bareiss(rows: list[list[int]], pivoting: bool) -> tuple[int, list[int]]:
    # Fraction-free elimination in place. Returns (sign, pivots); without
    # pivoting, pivots[k] is the (k+1)-th leading principal minor.
    n = len(rows)
    sign = 1
    prev = 1
    pivots = []
    for k in range(n):
        if rows[k][k] == 0:
            if not pivoting:
                pivots.append(0)
                return sign, pivots
            swap = next((i for i in range(k + 1, n) if rows[i][k] != 0), None)
            if swap is None:
                pivots.append(0)
                return sign, pivots
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pivot = rows[k][k]
        pivots.append(pivot)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = checked((rows[i][j] * pivot - rows[i][k] * rows[k][j]) // prev)
            rows[i][k] = 0
        prev = pivot
    return sign, pivots


def determinant(form) -> int:
    """Exact determinant by Bareiss elimination. Accepts a form or nested rows."""
    rows = _as_rows(form)
    if not rows:
        return 1
    sign, pivots = _bareiss(rows, pivoting=True)
    if len(pivots) < len(rows):
        return 0
    return sign * pivots[-1]


def leading_minors(form) -> list[int]:
    """Leading principal minors, truncated after the first zero."""
    rows = _as_rows(form)
    _, pivots = _bareiss(rows, pivoting=False)
    return pivots


def is_negative_definite(form) -> bool:
    minors = leading_minors(form)
    if len(minors) < len(_as_rows(form)):
        return False
    return all((m < 0) if k % 2 == 0 else (m > 0) for k, m in enumerate(minors))


def distinguished_vertex(graph: PlumbingGraph) -> Optional[int]:
    """The unique vertex with ``|m(v)| < deg(v)``, or None if there is not exactly one."""
    found = [v for v, w in enumerate(graph.weights) if abs(w) < graph.degree(v)]
    return found[0] if len(found) == 1 else None


def _laufer(graph: PlumbingGraph, budget: int, watch: Optional[int] = None) -> tuple[bool, bool]:
    # Returns (rational, whether `watch` ever had positive pairing before the verdict).
    n = len(graph)
    pair = [graph.weights[v] + graph.degree(v) for v in range(n)]
    touched = False
    for _ in range(budget):
        if watch is not None and pair[watch] > 0:
            touched = True
        positive = next((v for v in range(n) if pair[v] > 0), None)
        if positive is None:
            return True, touched
        if pair[positive] >= 2:
            return False, touched
        pair[positive] += graph.weights[positive]
        for w in graph.neighbors(positive):
            pair[w] += 1
    raise NonTerminationError("Laufer sequence did not terminate; graph is likely not negative definite")


def laufer_is_rational(graph: PlumbingGraph, budget: int = 10**6) -> bool:
    """Laufer's rationality test for a negative definite tree of rational curves.

    Start from the sum of all vertices and add a vertex ``v`` whenever
    ``(z, v) > 0``. The graph is rational iff every such pairing equals 1.
    """
    return _laufer(graph, budget)[0]


def almost_rational_advisory(graph: PlumbingGraph, v0: int, budget: int = 10**6) -> Advisory:
    """Check rationality after lowering the weight of ``v0``.

    The first trial weight is ``min(m(v0) - 1, -deg(v0))`` (this turns the
    -1 of a degree three node into -3). Lowering further only helps, so the
    weight keeps dropping until the graph is rational or a failing Laufer run
    never saw ``v0`` with positive pairing, after which lowering it cannot
    change the outcome.
    """
    if not (graph.is_tree() and is_negative_definite(intersection_form(graph))):
        return "unknown"
    weight = min(graph.weights[v0] - 1, -graph.degree(v0))
    while True:
        rational, touched = _laufer(graph.with_weight(v0, weight), budget, watch=v0)
        if rational:
            return "pass"
        if not touched:
            return "fail"
        weight -= 1


@dataclass(frozen=True)
class ValidationReport:
    is_tree: bool
    is_negative_definite: bool
    determinant: int
    is_integral_homology_sphere: bool
    distinguished_vertex: Optional[int]
    ar_advisory: Advisory = "unknown"

    @property
    def problems(self) -> list[str]:
        """Names of failed preconditions of the tau computation."""
        out = []
        if not self.is_tree:
            out.append("graph is not a tree")
        if not self.is_negative_definite:
            out.append("intersection form is not negative definite")
        if not self.is_integral_homology_sphere:
            out.append(f"|det| = {abs(self.determinant)} != 1, not an integral homology sphere")
        if self.distinguished_vertex is None:
            out.append("no distinguished vertex (need exactly one v with |m(v)| < deg(v))")
        return out

    @property
    def ok(self) -> bool:
        return not self.problems

    def as_dict(self) -> dict:
        return {
            "is_tree": self.is_tree,
            "is_negative_definite": self.is_negative_definite,
            "determinant": self.determinant,
            "is_integral_homology_sphere": self.is_integral_homology_sphere,
            "distinguished_vertex": self.distinguished_vertex,
            "ar_advisory": self.ar_advisory,
        }


def validate(graph: PlumbingGraph, check_rationality: bool = False) -> ValidationReport:
    form = intersection_form(graph)
    det = determinant(form)
    v0 = distinguished_vertex(graph)
    advisory: Advisory = "unknown"
    if check_rationality and v0 is not None:
        advisory = almost_rational_advisory(graph, v0)
    return ValidationReport(
        is_tree=graph.is_tree(),
        is_negative_definite=is_negative_definite(form),
        determinant=det,
        is_integral_homology_sphere=abs(det) == 1,
        distinguished_vertex=v0,
        ar_advisory=advisory,
    )
