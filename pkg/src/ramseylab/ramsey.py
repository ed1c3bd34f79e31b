"""Ramsey and star-critical Ramsey numbers for a tree versus tK_m.

Closed forms sit next to brute-force searches so that each can be checked
against the other on small cases. The closed forms for t >= 2 are only
guaranteed for large trees; a mismatch at small n is a finding, not a bug.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import repeat

from .arrowing import arrows
from .config import MAX_CHROMATIC_ORDER, default_max_edges
from .constructions import FamilyParams
from .errors import ParameterError, ResourceLimitError
from .graphcore import (
    SimpleGraph,
    Tree,
    TwoColoring,
    complete_host,
    enumerate_trees,
    star_deleted_host,
    to_graph6,
)

SWEEP_COLUMNS = (
    "tree_g6",
    "n",
    "m",
    "t",
    "r_formula",
    "r_brute",
    "rstar_formula",
    "rstar_brute",
    "agree_r",
    "agree_rstar",
    "runtime_ms",
)


@dataclass(frozen=True)
class RamseyResult:
    value: int
    method: str  # "formula" or "brute-force"
    witness_lower: TwoColoring | None = None
    trees_checked: tuple[str, ...] = ()


@dataclass(frozen=True)
class ChromaticProfile:
    chi: int
    surplus: int


class BracketError(ResourceLimitError):
    """A brute-force search hit the edge cap; ``lower`` is the best bound proven so far."""

    def __init__(self, message: str, lower: int, upper: int | None = None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


def ramsey_formula(p: FamilyParams) -> int:
    """(n-1)(m-1)+t. Exact for t = 1; for t >= 2 only proven for large n."""
    return (p.n - 1) * (p.m - 1) + p.t


def formula_is_exact(p: FamilyParams) -> bool:
    return p.t == 1


def star_critical_formula(p: FamilyParams) -> int:
    if p.m >= 2:
        return (p.n - 1) * (p.m - 2) + p.t
    if p.n >= p.t:
        return 0
    raise ParameterError(f"star-critical value for m=1 needs n >= t, got n={p.n}, t={p.t}")


def disjoint_cliques(t: int, m: int) -> SimpleGraph:
    edges = []
    for c in range(t):
        base = c * m
        edges.extend((base + i, base + j) for i in range(m) for j in range(i + 1, m))
    return SimpleGraph.from_edges(t * m, edges)


def _colorings(g: SimpleGraph, k: int, on_leaf) -> bool:
    """Walk proper colorings with at most ``k`` colours, new colours introduced in order.

    ``on_leaf(classes)`` receives the colour-class masks; returning True stops the walk.
    """
    n = g.order
    order = sorted(range(n), key=lambda v: (-g.degree(v), v))
    classes = [0] * k

    def rec(i: int, used: int) -> bool:
        if i == n:
            return on_leaf(classes[:used])
        v = order[i]
        row = g.rows[v]
        for col in range(min(used + 1, k)):
            if classes[col] & row:
                continue
            classes[col] |= 1 << v
            stop = rec(i + 1, max(used, col + 1))
            classes[col] &= ~(1 << v)
            if stop:
                return True
        return False

    return rec(0, 0)


def chromatic_profile(g: SimpleGraph) -> ChromaticProfile:
    if g.order > MAX_CHROMATIC_ORDER:
        raise ResourceLimitError(f"chromatic profile is capped at {MAX_CHROMATIC_ORDER} vertices")
    if g.order == 0:
        raise ParameterError("chromatic profile of the empty graph is undefined")
    chi = 1
    while not _colorings(g, chi, lambda classes: True):
        chi += 1
    best = [g.order]

    def leaf(classes: list[int]) -> bool:
        if len(classes) == chi:
            best[0] = min(best[0], min(c.bit_count() for c in classes))
        return best[0] == 1

    _colorings(g, chi, leaf)
    return ChromaticProfile(chi, best[0])


def burr_lower_bound(g_order: int, h: SimpleGraph) -> int:
    """(v(G)-1)(chi(H)-1) + s(H) for a connected G on ``g_order`` vertices."""
    prof = chromatic_profile(h)
    if g_order < prof.surplus:
        raise ParameterError(
            f"bound needs v(G) >= s(H), got v(G)={g_order} < s(H)={prof.surplus}"
        )
    return (g_order - 1) * (prof.chi - 1) + prof.surplus


def _seed(tree: Tree, t: int, m: int) -> int:
    if t * m > MAX_CHROMATIC_ORDER:
        return 1
    try:
        return max(1, burr_lower_bound(tree.order, disjoint_cliques(t, m)))
    except ParameterError:
        return 1


def _cap(max_edges: int | None) -> int:
    return default_max_edges() if max_edges is None else max_edges


def ramsey_bruteforce(tree: Tree, t: int, m: int, max_edges: int | None = None) -> RamseyResult:
    """Smallest N with K_N arrowing (tree, tK_m), with an avoiding coloring of K_{N-1}."""
    cap = _cap(max_edges)
    g6 = to_graph6(tree)

    def check(n: int):
        if n * (n - 1) // 2 > cap:
            raise BracketError(
                f"r({g6}, {t}K{m}) >= {n}: testing K_{n} needs {n * (n - 1) // 2} edges, "
                f"cap is {cap}",
                lower=n,
            )
        return arrows(complete_host(n), tree, t, m, max_edges=cap)

    n = _seed(tree, t, m)
    res = check(n)
    if res.arrows:
        avoider = None
        while n > 1:
            below = check(n - 1)
            if below.arrows:
                n -= 1
                continue
            avoider = below.avoider
            break
        return RamseyResult(n, "brute-force", avoider, (g6,))
    while not res.arrows:
        avoider = res.avoider
        n += 1
        res = check(n)
    return RamseyResult(n, "brute-force", avoider, (g6,))


def star_critical_bruteforce(
    tree: Tree, t: int, m: int, ramsey_value: int | None = None, max_edges: int | None = None
) -> RamseyResult:
    """Smallest k such that K_N minus a star leaving the centre k edges still arrows."""
    cap = _cap(max_edges)
    n_big = ramsey_value if ramsey_value is not None else ramsey_bruteforce(tree, t, m, cap).value
    g6 = to_graph6(tree)

    def check(k: int):
        host = star_deleted_host(n_big, k)
        if host.num_edges > cap:
            raise BracketError(
                f"star-critical search on K_{n_big} needs {host.num_edges} edges at k={k}, "
                f"cap is {cap}",
                lower=0,
                upper=n_big - 1,
            )
        return arrows(host, tree, t, m, max_edges=cap)

    lo, hi = -1, n_big - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if check(mid).arrows:
            hi = mid
        else:
            lo = mid
    if not check(hi).arrows:
        raise AssertionError(f"arrowing fails at k={hi} on K_{n_big}")
    avoider = None
    if hi > 0:
        below = check(hi - 1)
        if below.arrows:
            raise AssertionError(f"arrowing is not monotone in k near {hi}")
        avoider = below.avoider
    return RamseyResult(hi, "brute-force", avoider, (g6,))


@dataclass
class SweepRow:
    tree_g6: str
    n: int
    m: int
    t: int
    r_formula: int
    r_brute: int
    rstar_formula: int | None
    rstar_brute: int
    agree_r: bool
    agree_rstar: bool
    runtime_ms: int
    r_avoider: TwoColoring | None = field(default=None, repr=False)
    rstar_avoider: TwoColoring | None = field(default=None, repr=False)

    def as_dict(self) -> dict:
        return {col: getattr(self, col) for col in SWEEP_COLUMNS}

    @property
    def agrees(self) -> bool:
        return self.agree_r and self.agree_rstar


def sweep_tree(tree: Tree, t: int, m: int, max_edges: int | None = None, timing: bool = True) -> SweepRow:
    start = time.perf_counter()
    p = FamilyParams(tree.order, m, t)
    r = ramsey_bruteforce(tree, t, m, max_edges)
    rs = star_critical_bruteforce(tree, t, m, r.value, max_edges)
    try:
        rs_formula: int | None = star_critical_formula(p)
    except ParameterError:
        rs_formula = None
    elapsed = round((time.perf_counter() - start) * 1000) if timing else 0
    r_formula = ramsey_formula(p)
    return SweepRow(
        tree_g6=to_graph6(tree),
        n=tree.order,
        m=m,
        t=t,
        r_formula=r_formula,
        r_brute=r.value,
        rstar_formula=rs_formula,
        rstar_brute=rs.value,
        agree_r=r.value == r_formula,
        agree_rstar=rs.value == rs_formula,
        runtime_ms=elapsed,
        r_avoider=r.witness_lower,
        rstar_avoider=rs.witness_lower,
    )


def sweep(
    n: int,
    t: int,
    m: int,
    max_edges: int | None = None,
    workers: int = 1,
    timing: bool = True,
) -> list[SweepRow]:
    """One row per tree on ``n`` vertices, in the order of ``enumerate_trees``."""
    trees = enumerate_trees(n)
    cap = _cap(max_edges)
    if workers <= 1 or len(trees) <= 1:
        return [sweep_tree(tr, t, m, cap, timing) for tr in trees]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(
            pool.map(sweep_tree, trees, repeat(t), repeat(m), repeat(cap), repeat(timing))
        )


__all__ = [
    "BracketError",
    "ChromaticProfile",
    "RamseyResult",
    "SWEEP_COLUMNS",
    "SweepRow",
    "burr_lower_bound",
    "chromatic_profile",
    "disjoint_cliques",
    "formula_is_exact",
    "ramsey_bruteforce",
    "ramsey_formula",
    "star_critical_bruteforce",
    "star_critical_formula",
    "sweep",
    "sweep_tree",
]
