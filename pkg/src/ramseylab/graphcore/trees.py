"""Unlabelled tree enumeration and tree canonical strings."""

from __future__ import annotations

from functools import lru_cache

from ..config import default_max_tree_order
from ..errors import ParameterError, ResourceLimitError
from .graph import Tree, iter_bits


def _rooted_code(rows: tuple[int, ...], root: int, parent: int = -1) -> str:
    kids = sorted(_rooted_code(rows, c, root) for c in iter_bits(rows[root]) if c != parent)
    return "(" + "".join(kids) + ")"


def centers(tree: Tree) -> list[int]:
    rows = list(tree.graph.rows)
    alive = (1 << tree.order) - 1
    left = tree.order
    while left > 2:
        leaves = [v for v in iter_bits(alive) if (rows[v] & alive).bit_count() <= 1]
        for v in leaves:
            alive &= ~(1 << v)
        left -= len(leaves)
    return list(iter_bits(alive))


def tree_code(tree: Tree) -> str:
    """Isomorphism-invariant string for a tree (rooted encoding at its centre)."""
    return min(_rooted_code(tree.graph.rows, c) for c in centers(tree))


def vertex_orbits(tree: Tree) -> list[int]:
    """``orbit[v]`` is the smallest vertex equivalent to ``v`` under tree automorphisms."""
    codes = [_rooted_code(tree.graph.rows, v) for v in range(tree.order)]
    first: dict[str, int] = {}
    return [first.setdefault(c, v) for v, c in enumerate(codes)]


def tree_from_code(code: str) -> Tree:
    """Build a tree from a rooted parenthesis code, numbering vertices in preorder."""
    edges = []
    stack: list[int] = []
    count = 0
    for ch in code:
        if ch == "(":
            if stack:
                edges.append((stack[-1], count))
            stack.append(count)
            count += 1
        elif ch == ")":
            stack.pop()
        else:
            raise ParameterError(f"bad tree code character {ch!r}")
    return Tree.from_edges(count, edges)


@lru_cache(maxsize=None)
def _tree_codes(n: int) -> tuple[str, ...]:
    if n == 1:
        return ("()",)
    found = set()
    for code in _tree_codes(n - 1):
        smaller = tree_from_code(code)
        orbits = vertex_orbits(smaller)
        for v in range(smaller.order):
            if orbits[v] != v:
                continue
            grown = Tree.from_edges(n, smaller.edges + [(v, n - 1)])
            found.add(tree_code(grown))
    return tuple(sorted(found))


def enumerate_trees(n: int, cap: int | None = None) -> list[Tree]:
    """One representative per isomorphism class of trees on ``n`` vertices.

    Representatives are rooted at a centre and numbered in preorder; the list
    is sorted by canonical string so repeated calls agree exactly.
    """
    if n < 1:
        raise ParameterError("tree order must be positive")
    limit = default_max_tree_order() if cap is None else cap
    if n > limit:
        raise ResourceLimitError(f"tree order {n} exceeds cap {limit}")
    return [tree_from_code(c) for c in _tree_codes(n)]
