"""Dual graphs of prestable curves and their gerby (twisted) decorations.

Flags are the primitive objects: a graph is a flag set with an involution,
an attachment map to vertices, and a genus per vertex.  Tails are the fixed
flags of the involution, edges are its 2-orbits.  Vertices and edges are
derived views, so there are no special cases for self-loops, parallel edges,
or marked points.

Graphs must be connected; disconnected input is a construction error.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping


@dataclass(frozen=True)
class ModularGraph:
    """Connected dual graph: involution and attachment per flag, genus per vertex."""

    involution: tuple[int, ...]
    attachment: tuple[int, ...]
    vertex_genus: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "involution", tuple(self.involution))
        object.__setattr__(self, "attachment", tuple(self.attachment))
        object.__setattr__(self, "vertex_genus", tuple(self.vertex_genus))
        flags = len(self.involution)
        if len(self.attachment) != flags:
            raise ValueError("involution and attachment must cover the same flags")
        if not self.vertex_genus:
            raise ValueError("a graph needs at least one vertex")
        if any(g < 0 for g in self.vertex_genus):
            raise ValueError(f"vertex genera must be nonnegative, got {self.vertex_genus}")
        n_vertices = len(self.vertex_genus)
        for f in range(flags):
            j = self.involution[f]
            if not 0 <= j < flags or self.involution[j] != f:
                raise ValueError(f"involution is not self-inverse at flag {f}")
            if not 0 <= self.attachment[f] < n_vertices:
                raise ValueError(f"flag {f} attached to missing vertex {self.attachment[f]}")
        if not _is_connected(n_vertices, self.edges(), self.attachment):
            raise ValueError("graph is not connected")

    @property
    def num_flags(self) -> int:
        return len(self.involution)

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_genus)

    def tails(self) -> tuple[int, ...]:
        """Flags fixed by the involution (marked points), in flag order."""
        return tuple(f for f, j in enumerate(self.involution) if j == f)

    def edges(self) -> tuple[tuple[int, int], ...]:
        """Flag pairs (f, j(f)) with f < j(f) (nodes), ordered by first flag."""
        return tuple(
            (f, j) for f, j in enumerate(self.involution) if j > f
        )

    @property
    def num_edges(self) -> int:
        return len(self.edges())

    def vertices_of_edge(self, edge_index: int) -> tuple[int, int]:
        f1, f2 = self.edges()[edge_index]
        return self.attachment[f1], self.attachment[f2]

    def tails_at(self, vertex: int) -> tuple[int, ...]:
        return tuple(f for f in self.tails() if self.attachment[f] == vertex)

    @classmethod
    def from_config(cls, config: Mapping) -> "ModularGraph":
        """Build from {"vertices": [{"genus": g}, ...], "edges": [[a, b], ...],
        "tails": [v, ...]}.

        Flag numbering: tail i is flag i; edge k occupies flags
        (T + 2k, T + 2k + 1) with T the number of tails, attached to the
        listed vertices in order.
        """
        vertices = _expect_list(config, "vertices")
        genera = []
        for i, entry in enumerate(vertices):
            if not isinstance(entry, Mapping) or "genus" not in entry:
                raise ValueError(f"graph config field 'vertices[{i}]' must be an object with 'genus'")
            g = entry["genus"]
            if not isinstance(g, int) or g < 0:
                raise ValueError(f"graph config field 'vertices[{i}].genus' must be a nonnegative integer")
            genera.append(g)
        edges = _expect_list(config, "edges")
        tails = _expect_list(config, "tails")
        n_tails = len(tails)
        involution = list(range(n_tails))
        attachment = []
        for i, v in enumerate(tails):
            if not isinstance(v, int) or not 0 <= v < len(genera):
                raise ValueError(f"graph config field 'tails[{i}]' must name a vertex")
            attachment.append(v)
        for k, pair in enumerate(edges):
            if (
                not isinstance(pair, (list, tuple))
                or len(pair) != 2
                or not all(isinstance(v, int) and 0 <= v < len(genera) for v in pair)
            ):
                raise ValueError(f"graph config field 'edges[{k}]' must be a pair of vertices")
            f = n_tails + 2 * k
            involution += [f + 1, f]
            attachment += [pair[0], pair[1]]
        return cls(tuple(involution), tuple(attachment), tuple(genera))

    def to_config(self) -> dict:
        return {
            "vertices": [{"genus": g} for g in self.vertex_genus],
            "edges": [[self.attachment[f1], self.attachment[f2]] for f1, f2 in self.edges()],
            "tails": [self.attachment[f] for f in self.tails()],
        }


def _expect_list(config: Mapping, key: str) -> list:
    value = config.get(key)
    if not isinstance(value, list):
        raise ValueError(f"graph config field '{key}' must be a list")
    return value


def _is_connected(
    n_vertices: int, edges: Iterable[tuple[int, int]], attachment: tuple[int, ...]
) -> bool:
    adjacency: list[list[int]] = [[] for _ in range(n_vertices)]
    for f1, f2 in edges:
        a, b = attachment[f1], attachment[f2]
        adjacency[a].append(b)
        adjacency[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adjacency[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n_vertices


def betti1(graph: ModularGraph) -> int:
    """First Betti number 1 - |V| + |E| of the (connected) graph."""
    return 1 - graph.num_vertices + graph.num_edges


def total_genus(graph: ModularGraph) -> int:
    """Arithmetic genus of a curve with this dual graph: sum of genera + betti1."""
    return sum(graph.vertex_genus) + betti1(graph)


@lru_cache(maxsize=None)
def classify_edges(graph: ModularGraph) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Edge indices split into (separating, non-separating).

    An edge is separating when deleting it disconnects the graph; the
    non-separating ("loop") edges are exactly the spanning-tree complements.
    """
    separating = []
    nonseparating = []
    edges = graph.edges()
    for e in range(len(edges)):
        a, b = graph.vertices_of_edge(e)
        if a == b:
            nonseparating.append(e)
        elif _connected_without(graph, e):
            nonseparating.append(e)
        else:
            separating.append(e)
    return tuple(separating), tuple(nonseparating)


def _connected_without(graph: ModularGraph, edge_index: int) -> bool:
    kept = [graph.vertices_of_edge(e) for e in range(graph.num_edges) if e != edge_index]
    adjacency: list[list[int]] = [[] for _ in range(graph.num_vertices)]
    for a, b in kept:
        adjacency[a].append(b)
        adjacency[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adjacency[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == graph.num_vertices


@lru_cache(maxsize=None)
def split_at_edge(graph: ModularGraph, edge_index: int) -> tuple[frozenset, frozenset]:
    """Vertex sets of the two components after deleting a separating edge.

    The first set contains the vertex carrying the edge's lower flag.
    """
    separating, _ = classify_edges(graph)
    if edge_index not in separating:
        raise ValueError(f"edge {edge_index} is not separating")
    f1, _f2 = graph.edges()[edge_index]
    root = graph.attachment[f1]
    kept = [graph.vertices_of_edge(e) for e in range(graph.num_edges) if e != edge_index]
    adjacency: list[list[int]] = [[] for _ in range(graph.num_vertices)]
    for a, b in kept:
        adjacency[a].append(b)
        adjacency[b].append(a)
    seen = {root}
    stack = [root]
    while stack:
        v = stack.pop()
        for w in adjacency[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    side = frozenset(seen)
    other = frozenset(range(graph.num_vertices)) - side
    return side, other


@dataclass(frozen=True)
class GerbyGraph:
    """A dual graph with an isotropy order per flag, constant across each edge."""

    base: ModularGraph
    flag_orders: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "flag_orders", tuple(self.flag_orders))
        if len(self.flag_orders) != self.base.num_flags:
            raise ValueError("need one isotropy order per flag")
        if any(gamma < 1 for gamma in self.flag_orders):
            raise ValueError(f"isotropy orders must be positive, got {self.flag_orders}")
        for f1, f2 in self.base.edges():
            if self.flag_orders[f1] != self.flag_orders[f2]:
                raise ValueError(
                    f"edge flags {f1},{f2} carry different orders "
                    f"{self.flag_orders[f1]} != {self.flag_orders[f2]}"
                )

    def tail_orders(self) -> tuple[int, ...]:
        return tuple(self.flag_orders[f] for f in self.base.tails())

    def edge_orders(self) -> tuple[int, ...]:
        return tuple(self.flag_orders[f1] for f1, _ in self.base.edges())

    @classmethod
    def from_orders(
        cls, base: ModularGraph, tail_orders, edge_orders
    ) -> "GerbyGraph":
        """Assemble from order lists parallel to base.tails() and base.edges()."""
        tail_orders = tuple(tail_orders)
        edge_orders = tuple(edge_orders)
        if len(tail_orders) != len(base.tails()):
            raise ValueError("need one order per tail")
        if len(edge_orders) != base.num_edges:
            raise ValueError("need one order per edge")
        orders = [0] * base.num_flags
        for f, gamma in zip(base.tails(), tail_orders):
            orders[f] = gamma
        for (f1, f2), gamma in zip(base.edges(), edge_orders):
            orders[f1] = gamma
            orders[f2] = gamma
        return cls(base, tuple(orders))

    def to_config(self) -> dict:
        return {
            "tail_orders": list(self.tail_orders()),
            "edge_orders": list(self.edge_orders()),
        }
