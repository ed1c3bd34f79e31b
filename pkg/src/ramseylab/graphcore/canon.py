"""Canonical codes for two-colored graphs.

Vertices are split into cells by (vertex label, host degree, red degree) and
the partition is refined until every vertex in a cell sees the same number of
red and blue neighbours in every other cell. Remaining ties are broken by
individualising vertices one at a time; the lexicographically smallest
adjacency encoding over all leaves is the code. Automorphisms discovered at
equal leaves prune sibling branches in the same orbit.
"""

from __future__ import annotations

from typing import Sequence

from .graph import TwoColoring, mask_of

CanonicalCode = bytes

# edge states in the encoding
_NONE, _BLUE, _RED = 0, 1, 2


def _refine(cells: list[list[int]], blue: Sequence[int], red: Sequence[int]) -> list[list[int]]:
    while True:
        masks = [mask_of(c) for c in cells]
        out: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                b, r = blue[v], red[v]
                sig = tuple(((b & m).bit_count() << 6) | (r & m).bit_count() for m in masks)
                groups.setdefault(sig, []).append(v)
            if len(groups) == 1:
                out.append(cell)
                continue
            changed = True
            out.extend(groups[s] for s in sorted(groups))
        if not changed:
            return out
        cells = out


def _orbit_roots(order: int, gens: list[tuple[int, ...]]) -> list[int]:
    parent = list(range(order))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for v, w in enumerate(g):
            a, b = find(v), find(w)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(order)]


def canonical_form(
    order: int,
    host_rows: Sequence[int],
    red_rows: Sequence[int],
    labels: Sequence[int] | None = None,
) -> tuple[CanonicalCode, list[int]]:
    """Return ``(code, ordering)`` where ``ordering[i]`` is the vertex placed at position i.

    ``labels`` optionally attaches a non-negative integer to every vertex that
    any isomorphism must preserve (used for partially colored hosts).
    """
    blue = [h & ~r for h, r in zip(host_rows, red_rows)]
    red = list(red_rows)

    def key(v: int) -> tuple[int, int, int]:
        lab = labels[v] if labels is not None else 0
        return (lab, host_rows[v].bit_count(), red[v].bit_count())

    groups: dict[tuple[int, int, int], list[int]] = {}
    for v in range(order):
        groups.setdefault(key(v), []).append(v)
    cells = _refine([groups[k] for k in sorted(groups)], blue, red)

    header = bytearray(order.to_bytes(2, "big"))
    if labels is not None:
        for k in sorted(groups):
            header += k[0].to_bytes(8, "big") * len(groups[k])
    header = bytes(header)

    def leaf_code(perm: list[int]) -> bytes:
        body = bytearray()
        for i in range(order):
            u = perm[i]
            bu, ru = blue[u], red[u]
            for j in range(i + 1, order):
                bit = 1 << perm[j]
                body.append(_RED if ru & bit else _BLUE if bu & bit else _NONE)
        return header + bytes(body)

    best_code: bytes | None = None
    best_perm: list[int] = []
    first_code: bytes | None = None
    first_perm: list[int] = []
    autos: list[tuple[int, ...]] = []

    def record_auto(ref: list[int], perm: list[int]) -> None:
        g = [0] * order
        for a, b in zip(ref, perm):
            g[a] = b
        autos.append(tuple(g))

    def search(cells: list[list[int]], fixed: list[int]) -> None:
        nonlocal best_code, best_perm, first_code, first_perm
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            perm = [c[0] for c in cells]
            code = leaf_code(perm)
            if first_code is None:
                first_code, first_perm = code, perm
                best_code, best_perm = code, perm
            elif code == first_code:
                record_auto(first_perm, perm)
            elif code == best_code:
                record_auto(best_perm, perm)
            elif code < best_code:
                best_code, best_perm = code, perm
            return
        cell = cells[target]
        tried: list[int] = []
        seen_autos = 0
        roots: list[int] | None = None
        for v in cell:
            if tried and autos:
                if len(autos) != seen_autos:
                    seen_autos = len(autos)
                    gens = [g for g in autos if all(g[f] == f for f in fixed)]
                    roots = _orbit_roots(order, gens) if gens else None
                if roots is not None and roots[v] in {roots[u] for u in tried}:
                    continue
            tried.append(v)
            rest = [w for w in cell if w != v]
            split = cells[:target] + [[v], rest] + cells[target + 1 :]
            search(_refine(split, blue, red), fixed + [v])

    search(cells, [])
    assert best_code is not None
    return best_code, best_perm


def canonical_code(c: TwoColoring) -> CanonicalCode:
    """Relabelling-invariant code of a coloring (host edges and red edges)."""
    return canonical_form(c.order, c.host.rows, c.red_rows)[0]


def canonical_relabel(c: TwoColoring) -> TwoColoring:
    """The canonical representative of ``c``'s isomorphism class."""
    _, ordering = canonical_form(c.order, c.host.rows, c.red_rows)
    perm = [0] * c.order
    for pos, v in enumerate(ordering):
        perm[v] = pos
    return c.relabel(perm)
