"""Structural tools: equitable partitions, the Hall dichotomy, tree structure
and the red path lengthening check.

Every routine returns a witness object with an ``is_valid`` method that
re-checks the witness edge by edge against its input.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .errors import ParameterError
from .graphcore import SimpleGraph, Tree, TwoColoring, iter_bits, mask_of

# -- equitable partition -----------------------------------------------------------


@dataclass(frozen=True)
class PartitionWitness:
    blocks: tuple[tuple[int, ...], ...]

    def is_valid(self, g: SimpleGraph, ell: int) -> bool:
        if len(self.blocks) != ell:
            return False
        flat = sorted(v for b in self.blocks for v in b)
        if flat != list(range(g.order)):
            return False
        a, b = divmod(g.order, ell)
        if [len(x) for x in self.blocks] != [a + 1] * b + [a] * (ell - b):
            return False
        for block in self.blocks:
            m = mask_of(block)
            if any(g.rows[v] & m for v in block):
                return False
        return True


def _block_sizes(n: int, ell: int) -> list[int]:
    a, b = divmod(n, ell)
    return [a + 1] * b + [a] * (ell - b)


def _local_search(g: SimpleGraph, sizes: list[int], rng: random.Random, rounds: int) -> list[int] | None:
    """Swap-based conflict repair. Returns a block index per vertex, or None."""
    n, ell = g.order, len(sizes)
    where = [0] * n
    masks = [0] * ell
    room = list(sizes)
    for v in sorted(range(n), key=lambda v: (-g.degree(v), v)):
        open_blocks = [i for i in range(ell) if room[i]]
        i = min(open_blocks, key=lambda i: ((g.rows[v] & masks[i]).bit_count(), -room[i], i))
        where[v] = i
        masks[i] |= 1 << v
        room[i] -= 1

    def conflicts(v: int, i: int, without: int = 0) -> int:
        return (g.rows[v] & masks[i] & ~without).bit_count()

    for _ in range(rounds):
        bad = [v for v in range(n) if g.rows[v] & masks[where[v]]]
        if not bad:
            return where
        v = rng.choice(bad)
        i = where[v]
        best, best_gain = None, None
        for w in range(n):
            j = where[w]
            if j == i:
                continue
            before = conflicts(v, i) + conflicts(w, j)
            after = conflicts(v, j, 1 << w) + conflicts(w, i, 1 << v)
            gain = before - after
            if best_gain is None or gain > best_gain:
                best, best_gain = w, gain
        if best is None:
            return None
        if best_gain <= 0:
            # sideways or uphill move to escape plateaus
            best = rng.choice([w for w in range(n) if where[w] != i])
        w, j = best, where[best]
        masks[i] ^= (1 << v) | (1 << w)
        masks[j] ^= (1 << v) | (1 << w)
        where[v], where[w] = j, i
    return None


def _exhaustive(g: SimpleGraph, sizes: list[int]) -> list[int] | None:
    n, ell = g.order, len(sizes)
    order = sorted(range(n), key=lambda v: (-g.degree(v), v))
    where = [0] * n
    masks = [0] * ell
    room = list(sizes)

    def rec(k: int) -> bool:
        if k == n:
            return True
        v = order[k]
        empty_tried: set[int] = set()
        for i in range(ell):
            if not room[i] or g.rows[v] & masks[i]:
                continue
            if masks[i] == 0:
                # interchangeable empty blocks of equal capacity
                if room[i] in empty_tried:
                    continue
                empty_tried.add(room[i])
            masks[i] |= 1 << v
            room[i] -= 1
            where[v] = i
            if rec(k + 1):
                return True
            masks[i] &= ~(1 << v)
            room[i] += 1
        return False

    return where if rec(0) else None


def equitable_partition(
    g: SimpleGraph, ell: int, seed: int = 0, rounds: int | None = None
) -> PartitionWitness:
    """Split ``g`` into ``ell`` independent sets with sizes differing by at most one.

    Needs max degree < ell. Blocks of size a+1 come first. Local search runs
    first; an exact backtracking search takes over if it stalls.
    """
    if ell < 1:
        raise ParameterError("ell must be positive")
    if g.max_degree >= ell:
        raise ParameterError(f"max degree {g.max_degree} is not below ell={ell}")
    sizes = _block_sizes(g.order, ell)
    rng = random.Random(seed)
    where = _local_search(g, sizes, rng, rounds if rounds is not None else 50 * max(g.order, 1))
    if where is None:
        where = _exhaustive(g, sizes)
    if where is None:
        raise AssertionError("no equitable partition found although max degree < ell")
    blocks: list[list[int]] = [[] for _ in range(ell)]
    for v, i in enumerate(where):
        blocks[i].append(v)
    # local search keeps sizes per block index, so block i already has sizes[i] vertices
    return PartitionWitness(tuple(tuple(b) for b in blocks))


# -- Hall dichotomy -------------------------------------------------------------------


@dataclass(frozen=True)
class HallOutcome:
    red_matching: tuple[tuple[int, int], ...] | None = None
    blue_biclique: tuple[tuple[int, ...], tuple[int, ...]] | None = None

    @property
    def c(self) -> int | None:
        """Size of the X side minus one, for the biclique variant."""
        return None if self.blue_biclique is None else len(self.blue_biclique[0]) - 1

    def is_valid(self, col: TwoColoring, xs: Sequence[int], ys: Sequence[int]) -> bool:
        if (self.red_matching is None) == (self.blue_biclique is None):
            return False
        a, b = len(xs), len(ys)
        if self.red_matching is not None:
            pairs = self.red_matching
            if sorted(x for x, _ in pairs) != sorted(xs):
                return False
            ends = [y for _, y in pairs]
            if len(set(ends)) != len(ends) or not set(ends) <= set(ys):
                return False
            return all(col.is_red(x, y) for x, y in pairs)
        s, yy = self.blue_biclique
        c = len(s) - 1
        if not (0 <= c <= a - 1) or not set(s) <= set(xs) or not set(yy) <= set(ys):
            return False
        if len(set(s)) != len(s) or len(set(yy)) != len(yy) or len(yy) < b - c:
            return False
        return all(col.is_blue(x, y) for x in s for y in yy)

    def to_json(self) -> dict:
        if self.red_matching is not None:
            return {"kind": "red_matching", "witness": [list(p) for p in self.red_matching]}
        s, yy = self.blue_biclique
        return {"kind": "blue_biclique", "c": len(s) - 1, "witness": {"x": list(s), "y": list(yy)}}


def hall_dichotomy(col: TwoColoring, xs: Sequence[int], ys: Sequence[int]) -> HallOutcome:
    """Red matching saturating X, or a blue K_{c+1, b-c} with its c+1 side in X."""
    xs, ys = list(xs), list(ys)
    a, b = len(xs), len(ys)
    if a < 1 or a > b:
        raise ParameterError(f"need 1 <= |X| <= |Y|, got {a} and {b}")
    xm, ym = mask_of(xs), mask_of(ys)
    if len(set(xs)) != a or len(set(ys)) != b or xm & ym:
        raise ParameterError("X and Y must be disjoint sets")
    if xm | ym != (1 << col.order) - 1:
        raise ParameterError("X and Y must cover every host vertex")
    for x in xs:
        if col.host.rows[x] != ym:
            raise ParameterError("host is not complete bipartite between X and Y")
    for y in ys:
        if col.host.rows[y] != xm:
            raise ParameterError("host is not complete bipartite between X and Y")

    red = col.red_rows
    match_y: dict[int, int] = {}

    def augment(x: int, seen: set[int]) -> bool:
        for y in iter_bits(red[x] & ym):
            if y in seen:
                continue
            seen.add(y)
            if y not in match_y or augment(match_y[y], seen):
                match_y[y] = x
                return True
        return False

    for x in xs:
        augment(x, set())
    match_x = {x: y for y, x in match_y.items()}
    if len(match_x) == a:
        return HallOutcome(red_matching=tuple((x, match_x[x]) for x in xs))

    # alternating reachability from unmatched X vertices
    reach_x = {x for x in xs if x not in match_x}
    reach_y: set[int] = set()
    frontier = list(reach_x)
    while frontier:
        nxt = []
        for x in frontier:
            for y in iter_bits(red[x] & ym):
                if y not in reach_y:
                    reach_y.add(y)
                    partner = match_y[y]
                    if partner not in reach_x:
                        reach_x.add(partner)
                        nxt.append(partner)
        frontier = nxt
    s = tuple(x for x in xs if x in reach_x)
    rest = tuple(y for y in ys if y not in reach_y)
    return HallOutcome(blue_biclique=(s, rest))


# -- tree trichotomy ----------------------------------------------------------------------


@dataclass(frozen=True)
class TreeStructureReport:
    kind: str  # "suspended-path", "end-edges" or "talon"
    path: tuple[int, ...] = ()
    end_edges: tuple[tuple[int, int], ...] = ()
    talon_center: int | None = None
    talon_leaves: tuple[int, ...] = ()
    talon_bound: int = 0
    vacuous: bool = False

    def is_valid(self, tree: Tree, alpha: int, beta: int) -> bool:
        deg = tree.degree
        g = tree.graph
        if self.kind == "suspended-path":
            p = self.path
            if len(p) < alpha or len(set(p)) != len(p):
                return False
            if any(not g.adj(u, v) for u, v in zip(p, p[1:])):
                return False
            return all(deg(v) == 2 for v in p[1:-1])
        if self.kind == "end-edges":
            es = self.end_edges
            if len(es) < beta:
                return False
            used: set[int] = set()
            for u, v in es:
                if not g.adj(u, v) or (deg(u) != 1 and deg(v) != 1):
                    return False
                if u in used or v in used:
                    return False
                used |= {u, v}
            return True
        if self.kind == "talon":
            ctr = self.talon_center
            leaves = self.talon_leaves
            if ctr is None or len(set(leaves)) != len(leaves):
                return False
            if not all(g.adj(ctr, v) and deg(v) == 1 for v in leaves):
                return False
            return len(leaves) >= max(1, self.talon_bound)
        return False

    def to_json(self) -> dict:
        if self.kind == "suspended-path":
            witness = list(self.path)
        elif self.kind == "end-edges":
            witness = [list(e) for e in self.end_edges]
        else:
            witness = {"center": self.talon_center, "leaves": list(self.talon_leaves)}
        return {
            "kind": self.kind,
            "witness": witness,
            "talon_bound": self.talon_bound,
            "vacuous": self.vacuous,
        }


def suspended_paths(tree: Tree) -> list[tuple[int, ...]]:
    """All maximal suspended paths, each oriented from its smaller endpoint."""
    g = tree.graph
    found = set()
    for start in range(tree.order):
        if g.degree(start) == 2:
            continue
        for nb in iter_bits(g.rows[start]):
            path = [start, nb]
            while g.degree(path[-1]) == 2:
                nxt = next(iter_bits(g.rows[path[-1]] & ~(1 << path[-2])))
                path.append(nxt)
            if path[-1] < path[0]:
                path.reverse()
            found.add(tuple(path))
    return sorted(found)


def independent_end_edges(tree: Tree) -> list[tuple[int, int]]:
    """Greedy maximum set of pairwise disjoint end-edges, smallest indices first."""
    g = tree.graph
    if tree.order == 2:
        return [(0, 1)]
    out = []
    for s in range(tree.order):
        leaves = [v for v in iter_bits(g.rows[s]) if g.degree(v) == 1]
        if leaves and g.degree(s) > 1:
            out.append((min(leaves), s))
    return out


def tree_trichotomy(tree: Tree, alpha: int, beta: int) -> TreeStructureReport:
    """Find a suspended path on ``alpha`` vertices, ``beta`` independent end-edges
    or a talon with floor(n / (4 alpha beta)) edges, tried in that order."""
    if tree.order < 2:
        raise ParameterError("tree needs at least two vertices")
    if alpha < 3 or beta < 1:
        raise ParameterError("need alpha >= 3 and beta >= 1")
    bound = tree.order // (4 * alpha * beta)
    paths = suspended_paths(tree)
    if paths:
        longest = max(paths, key=lambda p: (len(p), [-v for v in p]))
        if len(longest) >= alpha:
            return TreeStructureReport("suspended-path", path=longest, talon_bound=bound)
    ends = independent_end_edges(tree)
    if len(ends) >= beta:
        return TreeStructureReport("end-edges", end_edges=tuple(ends), talon_bound=bound)
    g = tree.graph
    best_center, best_leaves = 0, ()
    for v in range(tree.order):
        leaves = tuple(u for u in iter_bits(g.rows[v]) if g.degree(u) == 1)
        if len(leaves) > len(best_leaves):
            best_center, best_leaves = v, leaves
    return TreeStructureReport(
        "talon",
        talon_center=best_center,
        talon_leaves=best_leaves,
        talon_bound=bound,
        vacuous=bound == 0,
    )


# -- red path lengthening --------------------------------------------------------------------

PATH_LENGTH_READING = "a path of length a has a edges and a+1 distinct vertices"


@dataclass(frozen=True)
class Lemma35Outcome:
    kind: str  # blue_clique, blue_dominating_xs, hypothesis_not_met or counterexample
    witness: tuple[int, ...] = ()
    reason: str = ""

    def is_valid(self, col: TwoColoring, xs: Sequence[int], ys: Sequence[int], cc: int, d: int) -> bool:
        w = self.witness
        if self.kind == "blue_clique":
            return len(set(w)) == cc == len(w) and all(
                col.is_blue(u, v) for i, u in enumerate(w) for v in w[i + 1 :]
            )
        if self.kind == "blue_dominating_xs":
            return (
                len(set(w)) == d == len(w)
                and set(w) <= set(xs)
                and all(col.is_blue(x, y) for x in w for y in ys)
            )
        if self.kind == "hypothesis_not_met":
            return bool(self.reason)
        return False

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "witness": list(self.witness),
            "reason": self.reason,
            "path_length_reading": PATH_LENGTH_READING,
        }


def red_path_with_edges(col: TwoColoring, start: int, end: int, edges: int) -> list[int] | None:
    """A red path from ``start`` to ``end`` with exactly ``edges`` edges, if one exists."""
    red = col.red_rows
    path = [start]

    def rec(v: int, used: int, left: int) -> bool:
        if left == 1:
            if red[v] >> end & 1:
                path.append(end)
                return True
            return False
        cand = red[v] & ~used & ~(1 << end)
        while cand:
            low = cand & -cand
            cand ^= low
            u = low.bit_length() - 1
            path.append(u)
            if rec(u, used | low, left - 1):
                return True
            path.pop()
        return False

    if edges < 1 or start == end:
        return None
    return path if rec(start, 1 << start, edges) else None


def _first_clique(rows: Sequence[int], cand: int, size: int) -> list[int] | None:
    if size == 0:
        return []
    while cand and cand.bit_count() >= size:
        low = cand & -cand
        cand ^= low
        v = low.bit_length() - 1
        rest = _first_clique(rows, cand & rows[v], size - 1)
        if rest is not None:
            return [v] + rest
    return None


def lemma35_check(
    col: TwoColoring, xs: Sequence[int], ys: Sequence[int], cc: int, d: int
) -> Lemma35Outcome:
    """Check the red path lengthening dichotomy on one coloring of K_{a+b}.

    ``xs`` lists the red path x_1..x_a in order and ``ys`` the other b vertices.
    A path of length a is read as a path with a edges.
    """
    xs, ys = list(xs), list(ys)
    a, b = len(xs), len(ys)
    if min(a, b, cc, d) < 1:
        raise ParameterError("a, b, c and d must be positive")
    if a < b * (cc - 1) + d:
        raise ParameterError(f"need a >= b(c-1)+d, got a={a} < {b * (cc - 1) + d}")
    if sorted(xs + ys) != list(range(col.order)):
        raise ParameterError("x and y vertices must partition the host vertices")
    if col.host.num_edges != col.order * (col.order - 1) // 2:
        raise ParameterError("host must be complete")

    for u, v in zip(xs, xs[1:]):
        if not col.is_red(u, v):
            return Lemma35Outcome("hypothesis_not_met", reason=f"x-path edge {u}-{v} is not red")
    if a >= 2:
        longer = red_path_with_edges(col, xs[0], xs[-1], a)
        if longer is not None:
            return Lemma35Outcome(
                "hypothesis_not_met",
                witness=tuple(longer),
                reason=f"red path with {a} edges joins x_1 and x_a",
            )
    clique = _first_clique(col.blue_rows, (1 << col.order) - 1, cc)
    if clique is not None:
        return Lemma35Outcome("blue_clique", witness=tuple(clique))
    ym = mask_of(ys)
    dominating = [x for x in xs if col.blue_rows[x] & ym == ym]
    if len(dominating) >= d:
        return Lemma35Outcome("blue_dominating_xs", witness=tuple(dominating[:d]))
    return Lemma35Outcome("counterexample", reason="neither a blue clique nor d blue-dominating x's")
