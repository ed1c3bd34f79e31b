"""Extremal colorings for trees versus tK_m and membership in the critical family.

The family for parameters (n, m, t) consists of colorings of the complete
graph on (n-1)(m-1)+t-1 vertices split into m-1 red cliques of order n-1 and
one free block of t-1 vertices, with every edge between blocks blue.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ParameterError
from .graphcore import (
    SimpleGraph,
    TwoColoring,
    complete_host,
    star_deleted_host,
)


@dataclass(frozen=True)
class FamilyParams:
    n: int
    m: int
    t: int

    def __post_init__(self):
        if self.n < 1 or self.m < 1 or self.t < 1:
            raise ParameterError(f"n, m, t must be positive, got {self}")

    @property
    def critical_order(self) -> int:
        """Vertex count of a family member, one less than the Ramsey number."""
        return (self.n - 1) * (self.m - 1) + self.t - 1


@dataclass(frozen=True)
class FamilyWitness:
    """Blocks H_1..H_m; the first m-1 are red cliques, the last holds t-1 vertices."""

    blocks: tuple[tuple[int, ...], ...]

    def is_valid(self, c: TwoColoring, p: FamilyParams) -> bool:
        if len(self.blocks) != p.m:
            return False
        sizes = [len(b) for b in self.blocks]
        if sizes != [p.n - 1] * (p.m - 1) + [p.t - 1]:
            return False
        owner: dict[int, int] = {}
        for i, block in enumerate(self.blocks):
            for v in block:
                if v in owner:
                    return False
                owner[v] = i
        if sorted(owner) != list(range(c.order)):
            return False
        for u in range(c.order):
            for v in range(u + 1, c.order):
                if not c.host.adj(u, v):
                    return False
                bu, bv = owner[u], owner[v]
                if bu != bv and c.is_red(u, v):
                    return False
                if bu == bv and bu < p.m - 1 and not c.is_red(u, v):
                    return False
        return True

    def to_json(self) -> dict:
        return {"blocks": [list(b) for b in self.blocks]}


def _layout(sizes: Sequence[int], start: int = 0) -> list[range]:
    out = []
    for s in sizes:
        out.append(range(start, start + s))
        start += s
    return out


def _color_blocks(
    host: SimpleGraph,
    red_blocks: Iterable[range],
    free_block: range,
    free_red: Iterable[Sequence[int]],
) -> TwoColoring:
    red = []
    for block in red_blocks:
        red.extend((u, v) for u in block for v in block if u < v)
    base = free_block.start
    for e in free_red:
        u, v = e
        if not (0 <= u < len(free_block) and 0 <= v < len(free_block)) or u == v:
            raise ParameterError(f"free-block edge {u}-{v} outside 0..{len(free_block) - 1}")
        red.append((base + u, base + v))
    return TwoColoring.from_red_edges(host, red)


def build_critical(p: FamilyParams, hm_red: Iterable[Sequence[int]] = ()) -> TwoColoring:
    """Member of the critical family on K_{(n-1)(m-1)+t-1}.

    Blocks are contiguous: H_1 = 0..n-2, H_2 = n-1..2n-3, ..., and the free
    block H_m comes last. ``hm_red`` lists red edges inside H_m using local
    indices 0..t-2.
    """
    order = p.critical_order
    blocks = _layout([p.n - 1] * (p.m - 1) + [p.t - 1])
    if order == 0:
        if list(hm_red):
            raise ParameterError("free block is empty")
        return TwoColoring(SimpleGraph(0, ()), ())
    return _color_blocks(complete_host(order), blocks[:-1], blocks[-1], hm_red)


def build_star_lower_bound(p: FamilyParams) -> TwoColoring:
    """Avoiding coloring of K_N minus a star, N = (n-1)(m-1)+t.

    The distinguished vertex is N-1 and keeps blue edges to every vertex of
    H_2..H_m, so its degree is (n-1)(m-2)+t-1. To keep the host identical to
    ``star_deleted_host(N, k)`` those blocks occupy the low indices: H_2..H_{m-1}
    first, then the free block, then H_1 just below the distinguished vertex.
    """
    if p.m < 2:
        raise ParameterError("the star lower bound construction needs m >= 2")
    big = p.critical_order + 1
    k = (p.n - 1) * (p.m - 2) + p.t - 1
    host = star_deleted_host(big, k)
    blocks = _layout([p.n - 1] * (p.m - 2) + [p.t - 1] + [p.n - 1])
    red_blocks = blocks[: p.m - 2] + [blocks[-1]]
    return _color_blocks(host, red_blocks, blocks[p.m - 2], ())


def family_membership(c: TwoColoring, p: FamilyParams) -> FamilyWitness | None:
    """Find blocks showing ``c`` is in the critical family, or None if it is not.

    Edges between blocks are blue, so each red component lies inside a single
    block. The search assigns whole red components either to one of the m-1
    clique blocks or to the free block.
    """
    order = p.critical_order
    if c.order != order:
        raise ParameterError(f"coloring has {c.order} vertices, family needs {order}")
    if c.host.num_edges != order * (order - 1) // 2:
        raise ParameterError("family membership is defined on complete hosts")

    comps = c.red_graph().components()
    clique_size = p.n - 1
    slots = p.m - 1

    def is_red_clique(vertices: Sequence[int]) -> bool:
        return all(c.is_red(u, v) for i, u in enumerate(vertices) for v in vertices[i + 1 :])

    # A clique block of order n-1 >= 2 is a single red component; order 1 blocks
    # are red-isolated vertices; order 0 blocks are empty.
    fits = [len(comp) == clique_size and is_red_clique(comp) for comp in comps]

    chosen: list[int] = []

    def rec(i: int, free_left: int) -> bool:
        if len(chosen) == slots and free_left == sum(len(x) for x in comps[i:]):
            return True
        if i == len(comps):
            return False
        size = len(comps[i])
        if clique_size > 0 and fits[i] and len(chosen) < slots:
            chosen.append(i)
            if rec(i + 1, free_left):
                return True
            chosen.pop()
        if size <= free_left and rec(i + 1, free_left - size):
            return True
        return False

    if clique_size == 0:
        ok = order == p.t - 1
        chosen = []
    else:
        ok = rec(0, p.t - 1)
    if not ok:
        return None
    clique_blocks = [tuple(comps[i]) for i in chosen]
    clique_blocks += [()] * (slots - len(clique_blocks))
    taken = {v for b in clique_blocks for v in b}
    free = tuple(v for v in range(order) if v not in taken)
    return FamilyWitness(tuple(clique_blocks) + (free,))
