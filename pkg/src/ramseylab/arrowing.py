"""Red tree / blue tK_m detection and exhaustive arrowing.

The exhaustive search colours the host one vertex at a time in index order.
When vertex ``k`` joins, every red/blue split of its edges back to
``0..k-1`` is tried; a branch dies as soon as a red copy of the tree or a
blue tK_m through ``k`` appears (anything not through ``k`` was already ruled
out one level up). Surviving partial colorings are deduplicated by canonical
code, with each coloured vertex labelled by its set of not-yet-coloured host
neighbours so that only genuinely interchangeable partial states merge.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .config import default_max_edges
from .errors import ParameterError, ResourceLimitError
from .graphcore import (
    SimpleGraph,
    Tree,
    TwoColoring,
    canonical_form,
    iter_bits,
    vertex_orbits,
)


@dataclass(frozen=True)
class RedTreeEmbedding:
    map: tuple[int, ...]

    def is_valid(self, c: TwoColoring, tree: Tree) -> bool:
        if len(self.map) != tree.order or len(set(self.map)) != tree.order:
            return False
        if any(not 0 <= v < c.order for v in self.map):
            return False
        return all(c.is_red(self.map[a], self.map[b]) for a, b in tree.edges)

    def to_json(self) -> dict:
        return {"red_embedding": list(self.map)}


@dataclass(frozen=True)
class BlueCliquePacking:
    cliques: tuple[tuple[int, ...], ...]

    def is_valid(self, c: TwoColoring, t: int, m: int) -> bool:
        if len(self.cliques) != t:
            return False
        seen: set[int] = set()
        for q in self.cliques:
            if len(q) != m or len(set(q)) != m or seen & set(q):
                return False
            if any(not 0 <= v < c.order for v in q):
                return False
            seen |= set(q)
            for i, u in enumerate(q):
                for v in q[i + 1 :]:
                    if not c.is_blue(u, v):
                        return False
        return True

    def to_json(self) -> dict:
        return {"blue_packing": [list(q) for q in self.cliques]}


@dataclass(frozen=True)
class AvoidReport:
    red_witness: RedTreeEmbedding | None = None
    blue_witness: BlueCliquePacking | None = None

    @property
    def avoids(self) -> bool:
        return self.red_witness is None and self.blue_witness is None

    def to_json(self) -> dict:
        return {
            "avoids": self.avoids,
            "red_embedding": list(self.red_witness.map) if self.red_witness else None,
            "blue_packing": (
                [list(q) for q in self.blue_witness.cliques] if self.blue_witness else None
            ),
        }


@dataclass(frozen=True)
class ArrowResult:
    arrows: bool
    avoider: TwoColoring | None = None

    def __bool__(self) -> bool:
        return self.arrows


# -- red tree embedding -------------------------------------------------------

Plan = tuple[tuple[int, int, int], ...]  # (tree vertex, parent position or -1, children count)


def _plan_from(tree: Tree, root: int) -> Plan:
    rows = tree.graph.rows
    size = [1] * tree.order

    def subtree(v: int, parent: int) -> int:
        size[v] = 1 + sum(subtree(c, v) for c in iter_bits(rows[v]) if c != parent)
        return size[v]

    subtree(root, -1)
    plan: list[tuple[int, int, int]] = []

    def visit(v: int, parent: int, parent_pos: int) -> None:
        kids = sorted((c for c in iter_bits(rows[v]) if c != parent), key=lambda c: (-size[c], c))
        pos = len(plan)
        plan.append((v, parent_pos, len(kids)))
        for c in kids:
            visit(c, v, pos)

    visit(root, -1, -1)
    return tuple(plan)


@lru_cache(maxsize=256)
def _default_plan(tree: Tree) -> Plan:
    root = max(range(tree.order), key=lambda v: (tree.degree(v), -v))
    return _plan_from(tree, root)


@lru_cache(maxsize=256)
def _anchored_plans(tree: Tree) -> tuple[Plan, ...]:
    orbits = vertex_orbits(tree)
    return tuple(_plan_from(tree, v) for v in range(tree.order) if orbits[v] == v)


def _component_mask(rows, start: int, within: int) -> int:
    seen = frontier = 1 << start
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= rows[v]
        frontier = nxt & within & ~seen
        seen |= frontier
    return seen


def _embed(red, plan: Plan, start_mask: int, usable: int) -> list[int] | None:
    """Map plan vertices injectively into ``usable`` along red edges, first vertex in ``start_mask``."""
    k = len(plan)
    img = [-1] * k

    def rec(i: int, used: int) -> bool:
        if i == k:
            return True
        _, parent_pos, kids = plan[i]
        cand = (start_mask if parent_pos < 0 else red[img[parent_pos]]) & usable & ~used
        while cand:
            low = cand & -cand
            cand ^= low
            v = low.bit_length() - 1
            now = used | low
            if (red[v] & usable & ~now).bit_count() < kids:
                continue
            img[i] = v
            if rec(i + 1, now):
                return True
        return False

    if not rec(0, 0):
        return None
    out = [0] * k
    for (tv, _, _), v in zip(plan, img):
        out[tv] = v
    return out


def _red_tree_through(red, tree: Tree, anchor: int, usable: int) -> list[int] | None:
    if _component_mask(red, anchor, usable).bit_count() < tree.order:
        return None
    for plan in _anchored_plans(tree):
        found = _embed(red, plan, 1 << anchor, usable)
        if found is not None:
            return found
    return None


def find_red_tree(c: TwoColoring, tree: Tree) -> RedTreeEmbedding | None:
    red = c.red_rows
    usable = 0
    for comp in c.red_graph().components():
        if len(comp) >= tree.order:
            for v in comp:
                usable |= 1 << v
    if not usable:
        return None
    found = _embed(red, _default_plan(tree), usable, usable)
    return RedTreeEmbedding(tuple(found)) if found is not None else None


# -- blue clique packing --------------------------------------------------------


def _cliques(blue, cand: int, m: int) -> list[int]:
    """All m-cliques inside ``cand`` as vertex masks, in lexicographic vertex order."""
    out: list[int] = []

    def rec(clique: int, need: int, cand: int) -> None:
        if need == 0:
            out.append(clique)
            return
        while cand and cand.bit_count() >= need:
            low = cand & -cand
            cand ^= low
            rec(clique | low, need - 1, cand & blue[low.bit_length() - 1])

    rec(0, m, cand)
    return out


def _pack(cliques: list[int], t: int, used: int = 0) -> list[int] | None:
    def rec(start: int, need: int, used: int) -> list[int] | None:
        if need == 0:
            return []
        for i in range(start, len(cliques) - need + 1):
            q = cliques[i]
            if q & used:
                continue
            rest = rec(i + 1, need - 1, used | q)
            if rest is not None:
                return [q] + rest
        return None

    return rec(0, t, used)


def _blue_packing_through(blue, t: int, m: int, anchor: int, usable: int) -> list[int] | None:
    bit = 1 << anchor
    others = usable & ~bit
    if (usable.bit_count()) < t * m:
        return None
    through = [q | bit for q in _cliques(blue, blue[anchor] & others, m - 1)]
    if not through:
        return None
    if t == 1:
        return [through[0]]
    rest = _cliques(blue, others, m)
    for q in through:
        more = _pack(rest, t - 1, q)
        if more is not None:
            return [q] + more
    return None


def _as_packing(masks: list[int]) -> BlueCliquePacking:
    cliques = sorted(tuple(iter_bits(q)) for q in masks)
    return BlueCliquePacking(tuple(cliques))


def find_blue_packing(c: TwoColoring, t: int, m: int) -> BlueCliquePacking | None:
    if t < 1 or m < 1:
        raise ParameterError("t and m must be positive")
    if c.order < t * m:
        return None
    blue = c.blue_rows
    found = _pack(_cliques(blue, (1 << c.order) - 1, m), t)
    return _as_packing(found) if found is not None else None


def avoid_check(c: TwoColoring, tree: Tree, t: int, m: int) -> AvoidReport:
    return AvoidReport(find_red_tree(c, tree), find_blue_packing(c, t, m))


# -- exhaustive search ------------------------------------------------------------


def _check_cap(host: SimpleGraph, max_edges: int | None) -> None:
    cap = default_max_edges() if max_edges is None else max_edges
    if host.num_edges > cap:
        raise ResourceLimitError(
            f"host has {host.num_edges} edges, exhaustive cap is {cap} "
            "(raise with --max-edges or RAMSEYLAB_MAX_EDGES)"
        )


State = tuple[tuple[int, ...], tuple[int, ...]]  # red rows, blue rows of the coloured prefix


def _children(host: SimpleGraph, tree: Tree, t: int, m: int, state: State) -> Iterator[State]:
    red, blue = state
    k = len(red)
    usable = (1 << (k + 1)) - 1
    back = host.rows[k] & ((1 << k) - 1)
    sub = back
    while True:
        red_k = sub
        blue_k = back & ~sub
        new_red = tuple(r | (1 << k) if red_k >> u & 1 else r for u, r in enumerate(red)) + (red_k,)
        new_blue = tuple(b | (1 << k) if blue_k >> u & 1 else b for u, b in enumerate(blue)) + (
            blue_k,
        )
        if (
            _red_tree_through(new_red, tree, k, usable) is None
            and _blue_packing_through(new_blue, t, m, k, usable) is None
        ):
            yield new_red, new_blue
        if sub == 0:
            break
        sub = (sub - 1) & back


def _state_code(host: SimpleGraph, state: State) -> bytes:
    red, blue = state
    k = len(red)
    if k == host.order:
        rows = tuple(r | b for r, b in zip(red, blue))
        return canonical_form(k, rows, red)[0]
    prefix = (1 << k) - 1
    rows = tuple(host.rows[v] & prefix for v in range(k))
    labels = [host.rows[v] >> k for v in range(k)]
    return canonical_form(k, rows, red, labels)[0]


def _to_coloring(host: SimpleGraph, state: State) -> TwoColoring:
    return TwoColoring(host, state[0])


def _validate(host: SimpleGraph, tree: Tree, t: int, m: int) -> None:
    if t < 1 or m < 1:
        raise ParameterError("t and m must be positive")
    if host.order < 1:
        raise ParameterError("host needs at least one vertex")


def arrows(
    host: SimpleGraph, tree: Tree, t: int, m: int, max_edges: int | None = None
) -> ArrowResult:
    """Decide whether every red/blue coloring of ``host`` has a red ``tree`` or a blue tK_m.

    When it does not, the result carries one avoiding coloring.
    """
    _validate(host, tree, t, m)
    _check_cap(host, max_edges)
    n = host.order
    seen: list[set[bytes]] = [set() for _ in range(n + 1)]

    def dfs(state: State) -> State | None:
        if len(state[0]) == n:
            return state
        for child in _children(host, tree, t, m, state):
            if len(child[0]) < n:
                code = _state_code(host, child)
                if code in seen[len(child[0])]:
                    continue
                seen[len(child[0])].add(code)
            found = dfs(child)
            if found is not None:
                return found
        return None

    found = dfs(((), ()))
    if found is None:
        return ArrowResult(True)
    return ArrowResult(False, _to_coloring(host, found))


def enumerate_avoiders(
    host: SimpleGraph, tree: Tree, t: int, m: int, max_edges: int | None = None
) -> list[TwoColoring]:
    """One coloring per isomorphism class of colorings of ``host`` avoiding both targets.

    Output is sorted by canonical code.
    """
    _validate(host, tree, t, m)
    _check_cap(host, max_edges)
    level: dict[bytes, State] = {b"": ((), ())}
    for _ in range(host.order):
        nxt: dict[bytes, State] = {}
        for state in level.values():
            for child in _children(host, tree, t, m, state):
                nxt.setdefault(_state_code(host, child), child)
        level = nxt
    return [_to_coloring(host, level[code]) for code in sorted(level)]
