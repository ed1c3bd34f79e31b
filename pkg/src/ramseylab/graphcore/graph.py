"""Bit-packed simple graphs, trees and red/blue edge colorings.

Every graph uses vertices ``0 .. order-1``. Adjacency is a tuple of ints, one
per vertex, with bit ``u`` of ``rows[v]`` set when ``uv`` is an edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from ..errors import ParameterError

Edge = tuple[int, int]


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _rows_from_edges(order: int, edges: Iterable[Sequence[int]]) -> tuple[int, ...]:
    rows = [0] * order
    for e in edges:
        u, v = e
        if not (0 <= u < order and 0 <= v < order):
            raise ParameterError(f"edge {u}-{v} has an endpoint outside 0..{order - 1}")
        if u == v:
            raise ParameterError(f"loop at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return tuple(rows)


def _edges_of_rows(rows: Sequence[int]) -> list[Edge]:
    out = []
    for u, row in enumerate(rows):
        for v in iter_bits(row >> (u + 1)):
            out.append((u, u + 1 + v))
    return out


@dataclass(frozen=True)
class SimpleGraph:
    order: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.order < 0 or len(self.rows) != self.order:
            raise ParameterError("rows must have one entry per vertex")
        full = (1 << self.order) - 1
        for v, row in enumerate(self.rows):
            if row & ~full or row >> v & 1:
                raise ParameterError(f"invalid adjacency row for vertex {v}")
            for u in iter_bits(row):
                if not self.rows[u] >> v & 1:
                    raise ParameterError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[Sequence[int]]) -> SimpleGraph:
        return cls(order, _rows_from_edges(order, edges))

    @cached_property
    def edges(self) -> list[Edge]:
        """Edges as sorted ``(u, v)`` pairs with ``u < v``."""
        return _edges_of_rows(self.rows)

    @property
    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def adj(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.rows[v]))

    @property
    def max_degree(self) -> int:
        return max((r.bit_count() for r in self.rows), default=0)

    def is_connected(self) -> bool:
        if self.order == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= self.rows[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == (1 << self.order) - 1

    def components(self) -> list[list[int]]:
        """Connected components in order of their smallest vertex."""
        left = (1 << self.order) - 1
        comps = []
        while left:
            start = left & -left
            seen = frontier = start
            while frontier:
                nxt = 0
                for v in iter_bits(frontier):
                    nxt |= self.rows[v]
                frontier = nxt & ~seen
                seen |= frontier
            comps.append(list(iter_bits(seen)))
            left &= ~seen
        return comps

    def relabel(self, perm: Sequence[int]) -> SimpleGraph:
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        return SimpleGraph.from_edges(self.order, ((perm[u], perm[v]) for u, v in self.edges))

    def induced(self, vertices: Sequence[int]) -> SimpleGraph:
        """Subgraph induced on ``vertices``, relabelled ``0..len-1`` in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        return SimpleGraph.from_edges(
            len(vertices),
            ((index[u], index[v]) for u, v in self.edges if u in index and v in index),
        )


@dataclass(frozen=True)
class Tree:
    graph: SimpleGraph

    def __post_init__(self):
        g = self.graph
        if g.order < 1:
            raise ParameterError("a tree needs at least one vertex")
        if g.num_edges != g.order - 1 or not g.is_connected():
            raise ParameterError("graph is not a tree")

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[Sequence[int]]) -> Tree:
        return cls(SimpleGraph.from_edges(order, edges))

    @property
    def order(self) -> int:
        return self.graph.order

    @property
    def edges(self) -> list[Edge]:
        return self.graph.edges

    def degree(self, v: int) -> int:
        return self.graph.degree(v)


def path_tree(n: int) -> Tree:
    return Tree.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def star_tree(n: int) -> Tree:
    """The star K_{1,n-1} on ``n`` vertices, centred at 0."""
    return Tree.from_edges(n, ((0, i) for i in range(1, n)))


@dataclass(frozen=True)
class TwoColoring:
    """A host graph with a red subset of its edges; every other host edge is blue."""

    host: SimpleGraph
    red_rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.red_rows) != self.host.order:
            raise ParameterError("red adjacency must have one row per host vertex")
        for v, (h, r) in enumerate(zip(self.host.rows, self.red_rows)):
            if r & ~h:
                raise ParameterError(f"red edge at vertex {v} is not a host edge")
            for u in iter_bits(r):
                if not self.red_rows[u] >> v & 1:
                    raise ParameterError(f"asymmetric red adjacency between {u} and {v}")

    @classmethod
    def from_red_edges(cls, host: SimpleGraph, red: Iterable[Sequence[int]]) -> TwoColoring:
        red_rows = _rows_from_edges(host.order, red)
        return cls(host, red_rows)

    @property
    def order(self) -> int:
        return self.host.order

    @cached_property
    def blue_rows(self) -> tuple[int, ...]:
        return tuple(h & ~r for h, r in zip(self.host.rows, self.red_rows))

    @cached_property
    def red_edges(self) -> list[Edge]:
        return _edges_of_rows(self.red_rows)

    @cached_property
    def blue_edges(self) -> list[Edge]:
        return _edges_of_rows(self.blue_rows)

    def is_red(self, u: int, v: int) -> bool:
        return bool(self.red_rows[u] >> v & 1)

    def is_blue(self, u: int, v: int) -> bool:
        return bool(self.blue_rows[u] >> v & 1)

    def red_graph(self) -> SimpleGraph:
        return SimpleGraph(self.order, self.red_rows)

    def blue_graph(self) -> SimpleGraph:
        return SimpleGraph(self.order, self.blue_rows)

    def relabel(self, perm: Sequence[int]) -> TwoColoring:
        host = self.host.relabel(perm)
        return TwoColoring.from_red_edges(host, ((perm[u], perm[v]) for u, v in self.red_edges))


def complete_host(n: int) -> SimpleGraph:
    if n < 1:
        raise ParameterError("complete host needs N >= 1")
    full = (1 << n) - 1
    return SimpleGraph(n, tuple(full & ~(1 << v) for v in range(n)))


def star_deleted_host(n: int, k: int) -> SimpleGraph:
    """K_N with the last vertex keeping edges only to vertices ``0 .. k-1``."""
    if n < 1:
        raise ParameterError("star-deleted host needs N >= 1")
    if not 0 <= k <= n - 1:
        raise ParameterError(f"k must lie in [0, {n - 1}], got {k}")
    v = n - 1
    keep = (1 << k) - 1
    rows = list(complete_host(n).rows)
    rows[v] = keep
    for u in range(v):
        if u >= k:
            rows[u] &= ~(1 << v)
    return SimpleGraph(n, tuple(rows))


def all_red(host: SimpleGraph) -> TwoColoring:
    return TwoColoring(host, host.rows)


def all_blue(host: SimpleGraph) -> TwoColoring:
    return TwoColoring(host, (0,) * host.order)
