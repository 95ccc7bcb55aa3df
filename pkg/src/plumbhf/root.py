"""Graded roots and their Z[U]-modules.

A reduced tau sequence ``[t0, t1, ..., t2k]`` alternates minima (even
positions) and maxima (odd positions). Its graded root has one leaf per
minimum, and the branches at positions ``2i`` and ``2i + 2`` are glued from
level ``t(2i+1)`` upward. The associated module splits as a tower plus one
finite cyclic summand per merge, read off by merging branches in order of
increasing level and retiring the branch with the higher minimum.
"""

from __future__ import annotations

import random
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import PlumbingError


class UnionFind:
    """Disjoint sets over ``0..n-1`` that also track the minimum leaf value per set."""

    def __init__(self, values: Sequence[int]):
        self.parent = list(range(len(values)))
        self.minimum = list(values)

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if self.minimum[rb] < self.minimum[ra]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return ra


@dataclass(frozen=True)
class MergeEvent:
    """Branches ``left`` and ``right`` meet at ``value``.

    Node ids below ``len(leaves)`` are leaves; merge ``k`` (joining leaf
    positions ``k`` and ``k + 1``) creates node ``len(leaves) + k``.
    """

    value: int
    position: int
    left: int
    right: int


@dataclass(frozen=True)
class GradedRoot:
    leaves: tuple[int, ...]
    merges: tuple[MergeEvent, ...]
    sequence: tuple[int, ...] = field(repr=False)

    @property
    def minimum(self) -> int:
        return min(self.leaves)

    @property
    def maximum(self) -> int:
        return max(self.sequence)


def check_alternating(seq: Sequence[int]) -> None:
    if len(seq) == 0 or len(seq) % 2 == 0:
        raise PlumbingError(f"reduced tau must have odd length, got {len(seq)}")
    for k in range(1, len(seq), 2):
        if not (seq[k] > seq[k - 1] and seq[k] > seq[k + 1]):
            raise PlumbingError(
                f"reduced tau must alternate min/max: entry {k} = {seq[k]} is not above both neighbours"
            )


def _merge_order(root: GradedRoot, rng: Optional[random.Random] = None) -> list[int]:
    order = list(range(len(root.merges)))
    if rng is not None:
        rng.shuffle(order)
        # stable sort keeps the shuffled order inside ties
        order.sort(key=lambda k: root.merges[k].value)
    else:
        order.sort(key=lambda k: (root.merges[k].value, k))
    return order


def build_root(reduced: Sequence[int]) -> GradedRoot:
    seq = tuple(int(x) for x in reduced)
    check_alternating(seq)
    leaves = seq[0::2]
    values = seq[1::2]
    uf = UnionFind(leaves)
    top = list(range(len(leaves)))  # current tree node of each union-find root
    events: list[Optional[MergeEvent]] = [None] * len(values)
    for k in sorted(range(len(values)), key=lambda k: (values[k], k)):
        a, b = uf.find(k), uf.find(k + 1)
        events[k] = MergeEvent(values[k], k, top[a], top[b])
        top[uf.union(a, b)] = len(leaves) + k
    return GradedRoot(leaves, tuple(events), seq)


@dataclass(frozen=True)
class Grading:
    """How the module is placed in absolute degree.

    ``absolute-d0`` puts the tower bottom at 0, ``absolute-user`` at a
    supplied ``d``; ``relative`` also normalises the tower to 0 but marks
    the result as carrying no absolute meaning.
    """

    kind: str = "absolute-d0"
    d: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("absolute-d0", "absolute-user", "relative"):
            raise PlumbingError(f"unknown grading mode {self.kind!r}")
        if (self.kind == "absolute-user") != (self.d is not None):
            raise PlumbingError("a user degree is required exactly for the absolute-user mode")

    @classmethod
    def d0(cls) -> "Grading":
        return cls("absolute-d0")

    @classmethod
    def user(cls, d: int) -> "Grading":
        return cls("absolute-user", int(d))

    @classmethod
    def relative(cls) -> "Grading":
        return cls("relative")

    @property
    def is_absolute(self) -> bool:
        return self.kind != "relative"

    def shift(self, minimum: int) -> int:
        """The offset sigma in ``degree = 2*chi + sigma``."""
        return (self.d if self.kind == "absolute-user" else 0) - 2 * minimum

    def label(self) -> str:
        return f"absolute-user({self.d})" if self.kind == "absolute-user" else self.kind


@dataclass(frozen=True)
class HFModule:
    """``T+_(tower_bottom)`` plus cyclic summands ``Z[U]/U^rank`` with lowest degree ``bottom``."""

    tower_bottom: int
    summands: tuple[tuple[int, int], ...]
    grading: Grading = Grading()

    def __post_init__(self):
        if any(r < 1 for r, _ in self.summands):
            raise PlumbingError("summand ranks must be positive")
        object.__setattr__(self, "summands", tuple(sorted(self.summands, key=lambda s: (s[1], s[0]))))

    @property
    def rank_red(self) -> int:
        return rank_red(self)

    def multiplicities(self) -> Counter:
        return Counter(self.summands)

    def hilbert(self, degree: int) -> int:
        """Rank of the homogeneous piece in ``degree``."""
        if degree % 2:
            return 0
        count = 1 if degree >= self.tower_bottom and (degree - self.tower_bottom) % 2 == 0 else 0
        for rank, bottom in self.summands:
            if bottom <= degree <= bottom + 2 * (rank - 1) and (degree - bottom) % 2 == 0:
                count += 1
        return count

    def notation(self) -> str:
        parts = [f"T+_({self.tower_bottom})"]
        for (rank, bottom), mult in sorted(self.multiplicities().items(), key=lambda kv: (kv[0][1], kv[0][0])):
            term = f"Z_({bottom})" if rank == 1 else f"Z^{rank}_({bottom})"
            parts.append(term if mult == 1 else f"({term})^{mult}")
        text = " + ".join(parts)
        return text if self.grading.is_absolute else text + "  [relative grading]"

    def as_dict(self) -> dict:
        return {
            "tower_bottom": self.tower_bottom,
            "summands": [{"rank": r, "deg": d} for r, d in self.summands],
            "grading_mode": self.grading.label(),
        }


def hf_from_root(root: GradedRoot, grading: Grading = Grading(),
                 rng: Optional[random.Random] = None) -> HFModule:
    """Decompose the module of a graded root.

    Merges are processed by increasing level; ``rng`` shuffles the order
    among merges at the same level.
    """
    sigma = grading.shift(root.minimum)
    uf = UnionFind(root.leaves)
    summands = []
    for k in _merge_order(root, rng):
        event = root.merges[k]
        a, b = uf.find(event.position), uf.find(event.position + 1)
        higher = max(uf.minimum[a], uf.minimum[b])
        summands.append((event.value - higher, 2 * higher + sigma))
        uf.union(a, b)
    return HFModule(2 * root.minimum + sigma, tuple(summands), grading)


def rank_red(module: HFModule) -> int:
    return sum(r for r, _ in module.summands)


def graded_piece_ranks(root: GradedRoot, grading: Grading, degrees: Iterable[int]) -> dict[int, int]:
    """Rank of each even-degree piece, counted as components of the part of the root at or below that degree.

    Built straight from the lattice points of the rays and their
    identifications, with no reference to the merge decomposition.
    """
    sigma = grading.shift(root.minimum)
    seq = root.sequence
    out = {}
    for d in degrees:
        if d % 2:
            raise PlumbingError(f"degree {d} is odd; the module lives in even degrees")
        level = (d - sigma) // 2
        out[d] = _components_below(seq, level)
    return out


def _components_below(seq: Sequence[int], level: int) -> int:
    # Lattice points (j, t) with seq[j] <= t <= level. Ray edges join (j, t)
    # to (j, t + 1); points of an odd ray are identified with the points of
    # both neighbouring rays at the same level. Above max(seq) nothing new
    # happens, so the rays are cut there.
    top = min(level, max(seq))
    nodes = {(j, t) for j, start in enumerate(seq) for t in range(start, top + 1)}
    seen = set()
    components = 0
    for node in nodes:
        if node in seen:
            continue
        components += 1
        seen.add(node)
        queue = deque([node])
        while queue:
            j, t = queue.popleft()
            for nb in ((j, t - 1), (j, t + 1), (j - 1, t), (j + 1, t)):
                if nb in nodes and nb not in seen:
                    seen.add(nb)
                    queue.append(nb)
    return components


@dataclass(frozen=True)
class CassonReport:
    casson_lambda: int
    rank_red: int
    expected_lambda: Optional[int]
    matches: Optional[bool]
    even: bool
    advisory: str

    def as_dict(self) -> dict:
        return {
            "lambda": self.casson_lambda,
            "rank_red": self.rank_red,
            "expected_lambda": self.expected_lambda,
            "matches": self.matches,
            "even": self.even,
            "advisory": self.advisory,
        }


def casson_check(module: HFModule, expected_lambda: Optional[int] = None) -> CassonReport:
    """Casson invariant from ``rank HF_red(-Y) = -lambda(Y)``, valid when d = 0."""
    if not module.grading.is_absolute:
        raise PlumbingError("Casson check needs an absolute grading; module is graded relatively")
    if module.tower_bottom != 0:
        raise PlumbingError(f"Casson check needs correction term 0, module has d = {module.tower_bottom}")
    rank = rank_red(module)
    lam = -rank
    even = lam % 2 == 0
    if even:
        advisory = "lambda is even, consistent with bounding a contractible 4-manifold"
    else:
        advisory = "lambda is odd, so the manifold cannot bound a contractible 4-manifold"
    matches = None if expected_lambda is None else (lam == expected_lambda)
    return CassonReport(lam, rank, expected_lambda, matches, even, advisory)


def _level_classes(root: GradedRoot, level: int) -> list[tuple[int, int]]:
    """Vertices of the root at ``level`` as (first leaf, last leaf) spans."""
    spans = []
    start = None
    for k, leaf in enumerate(root.leaves):
        if leaf > level:
            if start is not None:
                spans.append((start, k - 1))
            start = None
            continue
        if start is None:
            start = k
        elif root.sequence[2 * k - 1] > level:
            spans.append((start, k - 1))
            start = k
    if start is not None:
        spans.append((start, len(root.leaves) - 1))
    return spans


def to_dot(root: GradedRoot, name: str = "graded_root") -> str:
    """DOT drawing with one node per lattice point, stem cut two levels above the top merge."""
    lines = [f"graph {name} {{", "  rankdir=BT;", "  node [shape=circle, fontsize=10];"]
    top = root.maximum + 2
    for level in range(root.minimum, top + 1):
        for a, b in _level_classes(root, level):
            lines.append(f'  "n{level}_{a}" [label="{level}"];')
            if level < top:
                for c, d in _level_classes(root, level + 1):
                    if c <= a and b <= d:
                        lines.append(f'  "n{level}_{a}" -- "n{level + 1}_{c}";')
                        break
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_text(root: GradedRoot) -> str:
    """Level-by-level listing, highest level first; each vertex shown by its leaf span."""
    rows = []
    width = max(len(str(root.minimum)), len(str(root.maximum + 1)))
    for level in range(root.maximum + 1, root.minimum - 1, -1):
        spans = _level_classes(root, level)
        cells = " ".join(f"[{a}]" if a == b else f"[{a}-{b}]" for a, b in spans)
        rows.append(f"{level:>{width}} | {cells}")
    rows.append(f"{'':>{width}}   (stem continues upward)")
    return "\n".join(rows) + "\n"
