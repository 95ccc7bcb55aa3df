"""Input families: the Mazur plumbings G_n and Brieskorn spheres.

Closed forms for the Casson-Harer families are evaluated in exact integer
and rational arithmetic.

The Seifert invariants of a Casson-Harer sphere are always obtained by
solving the defining congruences; closed forms for them are easy to get
wrong (for even p an expression like (ps - s - 2)/2 is not even an
integer). The odd-p tau sum uses ``ceil(j (p - 1) / 2p)`` as its first
term, matching p' = (p - 1)/2. The variant with ``(p - s)`` in that term is
kept behind ``s_variant=True``; it agrees with the plumbing computation
only when s = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Optional

from .errors import PlumbingError
from .graph import PlumbingGraph


def mazur_graph(n: int) -> PlumbingGraph:
    """The plumbing tree G_n bounded by the Mazur manifold boundary, 2n + 3 vertices.

    Vertex 0 carries weight -1 and has three neighbours: a -2 leaf, a
    -(2n + 3) leaf and a -4 vertex. The -4 vertex carries two chains of -2
    vertices, of lengths n - 1 and n.
    """
    if n < 1:
        raise PlumbingError(f"Mazur family index must be >= 1, got {n}")
    weights = [-1, -2, -(2 * n + 3), -4]
    edges = [(0, 1), (0, 2), (0, 3)]
    for length in (n - 1, n):
        prev = 3
        for _ in range(length):
            weights.append(-2)
            edges.append((prev, len(weights) - 1))
            prev = len(weights) - 1
    return PlumbingGraph.from_lists(weights, edges)


def mazur_rank(n: int) -> int:
    if n < 1:
        raise PlumbingError(f"Mazur family index must be >= 1, got {n}")
    return n * (n + 1) * (n + 2) // 3


@dataclass(frozen=True)
class BrieskornTriple:
    """Pairwise coprime exponents, stored sorted so that p < q < r."""

    p: int
    q: int
    r: int

    def __post_init__(self):
        p, q, r = sorted(int(x) for x in (self.p, self.q, self.r))
        if p < 2:
            raise PlumbingError(f"Brieskorn exponents must be >= 2, got {(self.p, self.q, self.r)}")
        if gcd(p, q) != 1 or gcd(p, r) != 1 or gcd(q, r) != 1:
            raise PlumbingError(f"Brieskorn exponents must be pairwise coprime, got {(p, q, r)}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "r", r)

    def __iter__(self):
        return iter((self.p, self.q, self.r))


@dataclass(frozen=True)
class SeifertInvariants:
    e0: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for a, b in self.pairs:
            if not 0 < b < a:
                raise PlumbingError(f"Seifert pair ({a}, {b}) needs 0 < a' < a")
        if diophantine_defect(self) != 0:
            raise PlumbingError(f"Seifert invariants {self} violate e0*pqr + sum a'*(pqr/a) = -1")


def diophantine_defect(inv: SeifertInvariants) -> int:
    """``e0*pqr + p'qr + pq'r + pqr' + 1``; zero for a homology sphere."""
    prod = 1
    for a, _ in inv.pairs:
        prod *= a
    return inv.e0 * prod + sum(b * (prod // a) for a, b in inv.pairs) + 1


def seifert_invariants(t: BrieskornTriple) -> SeifertInvariants:
    p, q, r = t
    pqr = p * q * r
    pairs = []
    for a in (p, q, r):
        rest = pqr // a
        pairs.append((a, -pow(rest, -1, a) % a))
    num = -1 - sum(b * (pqr // a) for a, b in pairs)
    if num % pqr:
        raise PlumbingError(f"no integral e0 for {tuple(t)}")  # unreachable for coprime input
    return SeifertInvariants(num // pqr, tuple(pairs))


def hirzebruch_jung(a: int, b: int) -> list[int]:
    """Terms ``[b1, b2, ...]`` (all >= 2) of a/b = b1 - 1/(b2 - 1/(...)), for 0 < b < a."""
    if not 0 < b < a:
        raise PlumbingError(f"continued fraction needs 0 < {b} < {a}")
    terms = []
    while b:
        c = -(-a // b)
        terms.append(c)
        a, b = b, c * b - a
    return terms


def seifert_graph(inv: SeifertInvariants) -> PlumbingGraph:
    """Star-shaped plumbing: centre e0, one leg per Seifert pair."""
    weights = [inv.e0]
    edges = []
    for a, b in inv.pairs:
        prev = 0
        for c in hirzebruch_jung(a, b):
            weights.append(-c)
            edges.append((prev, len(weights) - 1))
            prev = len(weights) - 1
    return PlumbingGraph.from_lists(weights, edges)


def brieskorn_graph(t: BrieskornTriple) -> PlumbingGraph:
    return seifert_graph(seifert_invariants(t))


class Family(Enum):
    FAMILY1 = 1
    FAMILY2 = 2


@dataclass(frozen=True)
class CassonHarerFamily:
    """Sigma(p, ps+1, ps+2) / Sigma(p, ps-1, ps-2) for odd p (``sign`` = +1 / -1),
    or Sigma(p, ps-1, ps+1) for even p and odd s."""

    family: Family
    p: int
    s: int
    sign: Optional[int] = None

    def __post_init__(self):
        family = Family(self.family)
        object.__setattr__(self, "family", family)
        if self.s < 1 or self.p < 2:
            raise PlumbingError(f"Casson-Harer parameters need p >= 2, s >= 1; got p={self.p}, s={self.s}")
        if family is Family.FAMILY1:
            if self.sign not in (1, -1):
                raise PlumbingError("family 1 needs sign +1 or -1")
            if self.p % 2 == 0:
                raise PlumbingError(f"family 1 needs odd p, got {self.p}")
        else:
            if self.sign is not None:
                raise PlumbingError("family 2 takes no sign")
            if self.p % 2 or self.s % 2 == 0:
                raise PlumbingError(f"family 2 needs p even and s odd, got p={self.p}, s={self.s}")
        self.triple()

    def exponents(self) -> tuple[int, int, int]:
        p, s = self.p, self.s
        if self.family is Family.FAMILY1:
            return (p, p * s + self.sign, p * s + 2 * self.sign)
        return (p, p * s - 1, p * s + 1)

    def triple(self) -> BrieskornTriple:
        return BrieskornTriple(*self.exponents())


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def casson_harer_tau_term(fam: CassonHarerFamily, j: int, s_variant: bool = False) -> int:
    """Increment tau(j + 1) - tau(j) of the closed form."""
    p, s = fam.p, fam.s
    if fam.family is Family.FAMILY1:
        e = fam.sign
        first = p - s if s_variant else p - 1
        return (1 + j - _ceil_div(j * first, 2 * p)
                - _ceil_div(j * s, p * s + e)
                - _ceil_div(j * (p * s - s + 2 * e), 2 * p * s + 4 * e))
    return (1 + j - _ceil_div(j, p)
            - _ceil_div(j * (p * s - s - 1), 2 * p * s - 2)
            - _ceil_div(j * (p * s - s + 1), 2 * p * s + 2))


def tau_casson_harer(fam: CassonHarerFamily, n: int, s_variant: bool = False) -> int:
    if n < 0:
        raise PlumbingError(f"tau is defined for n >= 0, got {n}")
    return sum(casson_harer_tau_term(fam, j, s_variant) for j in range(n))


def tau_casson_harer_sequence(fam: CassonHarerFamily, s_variant: bool = False,
                              limit: int = 10**7) -> list[int]:
    """Closed-form tau(0), tau(1), ... up to the first value 2."""
    values = [0]
    for j in range(limit):
        values.append(values[-1] + casson_harer_tau_term(fam, j, s_variant))
        if values[-1] == 2:
            return values
    raise PlumbingError(f"closed-form tau did not reach 2 within {limit} terms")


def rank_casson_harer(fam: CassonHarerFamily) -> int:
    p, s = fam.p, fam.s
    if fam.family is Family.FAMILY1:
        value = Fraction(s * (p * p - 1) * (p * s + 3 * fam.sign), 24)
    else:
        value = Fraction(p**3 * s * s, 24) - Fraction(p * s * s, 24) - Fraction(p, 8)
    if value.denominator != 1:
        raise ArithmeticError(f"closed-form rank {value} is not an integer for {fam}")
    return int(value)
