"""Admissible contact-type vectors and node-order determination on dual graphs.

A contact type m/b records how a marked point meets the band mu_r: the
fraction in lowest terms equals the age of the universal root line bundle
there.  An n-tuple is admissible for (r, k) when every b divides r and the
fractional parts sum to k/r mod 1.  On a dual graph, the orders of
separating nodes are forced by a fractional-part formula over either side
of the node, while non-separating node orders stay free.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .graphs import GerbyGraph, ModularGraph, classify_edges, split_at_edge


def divisors(n: int) -> tuple[int, ...]:
    """Positive divisors of n in increasing order."""
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return tuple(small + large[::-1])


@dataclass(frozen=True, order=False)
class ContactType:
    """A reduced fraction numerator/order with 0 <= numerator < order.

    order = 1 forces numerator = 0 (the untwisted sector); gcd(0, 1) = 1
    makes that the consistent degenerate case of the coprimality rule.
    """

    numerator: int
    order: int

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError(f"contact order must be positive, got {self.order}")
        if not 0 <= self.numerator < self.order:
            raise ValueError(f"numerator {self.numerator} out of range for order {self.order}")
        if math.gcd(self.numerator, self.order) != 1:
            raise ValueError(f"{self.numerator}/{self.order} is not in lowest terms")

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.numerator, self.order)

    @classmethod
    def from_fraction(cls, value: Fraction | int) -> "ContactType":
        """The contact type with age equal to the fractional part of value."""
        value = Fraction(value) % 1
        return cls(value.numerator, value.denominator)

    @classmethod
    def from_residue(cls, residue: int, r: int) -> "ContactType":
        """The element zeta_r^residue of mu_r written in lowest terms."""
        if r < 1:
            raise ValueError(f"ambient order must be positive, got {r}")
        return cls.from_fraction(Fraction(residue % r, r))

    def residue(self, r: int) -> int:
        """Exponent a with zeta_r^a = this element; requires order | r."""
        if r % self.order != 0:
            raise ValueError(f"order {self.order} does not divide {r}")
        return self.numerator * (r // self.order)

    def inverse(self) -> "ContactType":
        """The complementary type <-m/b>, the opposite branch of a balanced node."""
        return ContactType((-self.numerator) % self.order, self.order)

    def __lt__(self, other: "ContactType") -> bool:
        return self.fraction < other.fraction

    @classmethod
    def parse(cls, text: str) -> "ContactType":
        """Parse "m/b" or "m" (the latter meaning the untwisted type when m = 0)."""
        return cls.from_fraction(Fraction(text.strip()))

    def __str__(self) -> str:
        return f"{self.numerator}/{self.order}"


@dataclass(frozen=True)
class AdmissibleVector:
    """An n-tuple of contact types whose ages sum to k/r mod 1."""

    entries: tuple[ContactType, ...]
    ambient_order: int
    degree_residue: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))
        r = self.ambient_order
        if r < 1:
            raise ValueError(f"ambient order must be positive, got {r}")
        if not 0 <= self.degree_residue < r:
            raise ValueError(f"degree residue {self.degree_residue} out of range mod {r}")
        if not is_admissible(self.entries, r, self.degree_residue):
            raise ValueError(
                f"entries {[str(t) for t in self.entries]} are not admissible "
                f"for r={r}, k={self.degree_residue}"
            )

    def residues(self) -> tuple[int, ...]:
        return tuple(t.residue(self.ambient_order) for t in self.entries)


def is_admissible(entries: Sequence[ContactType], r: int, k: int) -> bool:
    """True iff every order divides r and the ages sum to k/r mod 1."""
    if r < 1:
        raise ValueError(f"ambient order must be positive, got {r}")
    if any(r % t.order != 0 for t in entries):
        return False
    total = sum((t.fraction for t in entries), Fraction(0))
    return (total - Fraction(k, r)) % 1 == 0


def enumerate_admissible(n: int, r: int, k: int) -> Iterator[AdmissibleVector]:
    """All admissible n-tuples for (r, k), in lexicographic residue order.

    The first n-1 residues range freely over Z/r and the last is determined,
    so there are exactly r^(n-1) vectors for n >= 1.  For n = 0 the empty
    vector appears exactly when k = 0 mod r.
    """
    if n < 0:
        raise ValueError(f"tuple length must be nonnegative, got {n}")
    if r < 1:
        raise ValueError(f"ambient order must be positive, got {r}")
    k = k % r
    if n == 0:
        if k == 0:
            yield AdmissibleVector((), r, k)
        return
    for prefix in itertools.product(range(r), repeat=n - 1):
        last = (k - sum(prefix)) % r
        entries = tuple(ContactType.from_residue(a, r) for a in prefix + (last,))
        yield AdmissibleVector(entries, r, k)


@dataclass(frozen=True)
class DegreeData:
    """Per-vertex degree residues and the contact types on the tails.

    vertex_residues is parallel to the graph's vertices, tail_types to
    graph.tails().  The global degree residue is the sum of the k_v mod r.
    """

    vertex_residues: tuple[int, ...]
    tail_types: tuple[ContactType, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertex_residues", tuple(self.vertex_residues))
        object.__setattr__(self, "tail_types", tuple(self.tail_types))

    def validated_for(self, graph: ModularGraph, r: int) -> "DegreeData":
        if r < 1:
            raise ValueError(f"ambient order must be positive, got {r}")
        if len(self.vertex_residues) != graph.num_vertices:
            raise ValueError(
                f"{len(self.vertex_residues)} vertex residues for "
                f"{graph.num_vertices} vertices"
            )
        if len(self.tail_types) != len(graph.tails()):
            raise ValueError(
                f"{len(self.tail_types)} tail types for {len(graph.tails())} tails"
            )
        for t in self.tail_types:
            if r % t.order != 0:
                raise ValueError(f"tail order {t.order} does not divide r={r}")
        reduced = tuple(x % r for x in self.vertex_residues)
        if reduced != self.vertex_residues:
            return DegreeData(reduced, self.tail_types)
        return self

    def total_residue(self, r: int) -> int:
        return sum(self.vertex_residues) % r

    def tail_types_at(self, graph: ModularGraph, vertex: int) -> tuple[ContactType, ...]:
        return tuple(
            t
            for f, t in zip(graph.tails(), self.tail_types)
            if graph.attachment[f] == vertex
        )


def separating_node_order(
    graph: ModularGraph,
    data: DegreeData,
    edge_index: int,
    r: int,
    side: frozenset | None = None,
) -> ContactType:
    """The contact type forced at a separating node, computed from one side.

    For the side P the type is the fractional part of
    (sum of k_v over P)/r minus the ages of the tails in P.  Computed from
    the complementary side the numerator is complementary mod the same
    order whenever the data is globally admissible.  By default the side
    containing the edge's lower flag is used.
    """
    data = data.validated_for(graph, r)
    side_a, side_b = split_at_edge(graph, edge_index)
    if side is None:
        side = side_a
    else:
        side = frozenset(side)
        if side not in (side_a, side_b):
            raise ValueError(f"side {set(side)} is not a side of edge {edge_index}")
    total = Fraction(sum(data.vertex_residues[v] for v in side), r)
    for f, t in zip(graph.tails(), data.tail_types):
        if graph.attachment[f] in side:
            total -= t.fraction
    return ContactType.from_fraction(total)


def enumerate_compatible_gerby(
    graph: ModularGraph, data: DegreeData, r: int
) -> Iterator[GerbyGraph]:
    """All gerby decorations of the graph compatible with the degree data.

    Tail orders are the contact-type orders, separating-edge orders are the
    ones forced by the cut formula, and every non-separating edge order
    ranges independently over the divisors of r, so the number of
    decorations is d(r)^(number of non-separating edges).  The tail data
    must be admissible for (r, sum of k_v).
    """
    data = data.validated_for(graph, r)
    if not is_admissible(data.tail_types, r, data.total_residue(r)):
        raise ValueError(
            "vertex residues are inconsistent with the tail types: "
            f"ages must sum to {data.total_residue(r)}/{r} mod 1"
        )
    tail_orders = tuple(t.order for t in data.tail_types)
    separating, nonseparating = classify_edges(graph)
    edge_orders = [0] * graph.num_edges
    for e in separating:
        edge_orders[e] = separating_node_order(graph, data, e, r).order
    for assignment in itertools.product(divisors(r), repeat=len(nonseparating)):
        for e, d in zip(nonseparating, assignment):
            edge_orders[e] = d
        yield GerbyGraph.from_orders(graph, tail_orders, tuple(edge_orders))
