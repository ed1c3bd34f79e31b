import json
import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from ramseylab.arrowing import (
    arrows,
    avoid_check,
    enumerate_avoiders,
    find_blue_packing,
    find_red_tree,
)
from ramseylab.constructions import FamilyParams, build_critical, family_membership
from ramseylab.errors import ResourceLimitError
from ramseylab.graphcore import (
    SimpleGraph,
    TwoColoring,
    all_blue,
    all_red,
    canonical_code,
    complete_host,
    enumerate_trees,
    path_tree,
    star_deleted_host,
    star_tree,
)

from oracles import (
    avoiding_masks,
    coloring_from_mask,
    has_blue_packing,
    has_red_tree,
    host_automorphisms,
    naive_arrows,
    orbit_size,
    random_instance,
)

P3, P4 = path_tree(3), path_tree(4)


def random_host(rng, n, max_edges):
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    return SimpleGraph.from_edges(n, pairs[: rng.randint(0, min(max_edges, len(pairs)))])


# -- single-coloring searches -----------------------------------------------------------------


def test_red_tree_examples():
    w = find_red_tree(all_red(complete_host(4)), P4)
    assert w is not None and w.is_valid(all_red(complete_host(4)), P4)
    for tree in enumerate_trees(3) + enumerate_trees(4):
        assert find_red_tree(all_blue(complete_host(5)), tree) is None
    crit = build_critical(FamilyParams(4, 2, 2))
    for tree in enumerate_trees(4):
        assert find_red_tree(crit, tree) is None


def test_red_tree_single_vertex():
    assert find_red_tree(all_blue(complete_host(1)), path_tree(1)).map == (0,)


def test_blue_packing_examples():
    w = find_blue_packing(all_blue(complete_host(6)), 2, 3)
    assert w.cliques == ((0, 1, 2), (3, 4, 5))
    pentagon = TwoColoring.from_red_edges(complete_host(5), [(i, (i + 1) % 5) for i in range(5)])
    assert find_blue_packing(pentagon, 1, 3) is None
    assert not any(all(pentagon.is_blue(u, v) for u, v in combinations(q, 2)) for q in combinations(range(5), 3))


def test_blue_packing_m1_counts_vertices():
    c = all_red(complete_host(3))
    assert find_blue_packing(c, 3, 1).cliques == ((0,), (1,), (2,))
    assert find_blue_packing(c, 4, 1) is None


@settings(max_examples=200, deadline=None)
@given(st.randoms(use_true_random=False))
def test_searches_match_naive_detection(rng):
    host = random_host(rng, rng.randint(1, 7), 21)
    c = TwoColoring.from_red_edges(host, [e for e in host.edges if rng.random() < 0.5])
    tree = rng.choice(enumerate_trees(rng.randint(1, 5)))
    t, m = rng.randint(1, 3), rng.randint(1, 3)
    red = find_red_tree(c, tree)
    blue = find_blue_packing(c, t, m)
    assert (red is not None) == has_red_tree(c, tree)
    assert (blue is not None) == has_blue_packing(c, t, m)
    if red:
        assert red.is_valid(c, tree)
    if blue:
        assert blue.is_valid(c, t, m)


def test_avoid_check_examples():
    for n in (3, 4, 5):
        for tree in enumerate_trees(n):
            rep = avoid_check(all_red(complete_host(5)), tree, 2, 2)
            assert rep.red_witness is not None and rep.blue_witness is None
    for tree in (P3, P4, star_tree(4)):
        rep = avoid_check(all_blue(complete_host(6)), tree, 2, 3)
        assert rep.red_witness is None and rep.blue_witness is not None
    for n, m, t in [(3, 2, 1), (4, 3, 2), (5, 2, 3)]:
        c = build_critical(FamilyParams(n, m, t))
        for tree in enumerate_trees(n):
            assert avoid_check(c, tree, t, m).avoids


def test_witness_json_shapes():
    rep = avoid_check(all_red(complete_host(3)), P3, 1, 1)
    assert rep.red_witness.to_json() == {"red_embedding": list(rep.red_witness.map)}
    assert rep.blue_witness.to_json() == {"blue_packing": [[0]]}
    assert json.loads(json.dumps(rep.to_json()))["avoids"] is False


# -- exhaustive arrowing --------------------------------------------------------------------------


def test_arrows_examples():
    assert arrows(complete_host(4), P3, 2, 2).arrows
    res = arrows(complete_host(3), P3, 2, 2)
    assert not res.arrows
    assert len(res.avoider.red_edges) == 1 and len(res.avoider.blue_edges) == 2
    assert avoid_check(res.avoider, P3, 2, 2).avoids
    assert arrows(complete_host(5), P3, 1, 3).arrows
    assert not arrows(complete_host(4), P3, 1, 3).arrows


def test_arrows_exhaustive_counts_from_oracle():
    # 2K_2 does not fit in K_3, so its avoiders are the red matchings: empty or one edge
    assert avoiding_masks(complete_host(4), P3, 2, 2).size == 0
    assert avoiding_masks(complete_host(3), P3, 2, 2).size == 4


def test_arrows_edge_cap():
    with pytest.raises(ResourceLimitError):
        arrows(complete_host(9), P3, 1, 3)
    with pytest.raises(ResourceLimitError):
        arrows(complete_host(5), P3, 1, 3, max_edges=9)
    assert arrows(complete_host(5), P3, 1, 3, max_edges=10).arrows


def test_arrows_cap_from_environment(monkeypatch):
    monkeypatch.setenv("RAMSEYLAB_MAX_EDGES", "5")
    with pytest.raises(ResourceLimitError):
        arrows(complete_host(4), P3, 2, 2)


def test_arrows_matches_naive_loop():
    rng = random.Random(2024)
    for _ in range(60):
        host, tree, t, m = random_instance(rng)
        res = arrows(host, tree, t, m)
        assert res.arrows == naive_arrows(host, tree, t, m)
        if not res.arrows:
            assert res.avoider.host == host
            assert avoid_check(res.avoider, tree, t, m).avoids


def test_arrows_monotone_under_edge_addition():
    rng = random.Random(99)
    checked = 0
    for _ in range(40):
        n = rng.randint(2, 6)
        big = random_host(rng, n, 15)
        small = SimpleGraph.from_edges(n, [e for e in big.edges if rng.random() < 0.7])
        tree = rng.choice(enumerate_trees(rng.randint(2, 4)))
        t, m = rng.randint(1, 2), rng.randint(2, 3)
        if arrows(small, tree, t, m).arrows:
            checked += 1
            assert arrows(big, tree, t, m).arrows
    assert checked > 0


def test_arrows_on_star_deleted_hosts():
    for k in range(4):
        host = star_deleted_host(4, k)
        assert arrows(host, P3, 2, 2).arrows == naive_arrows(host, P3, 2, 2)


# -- avoider enumeration ------------------------------------------------------------------------------


def test_enumerate_avoiders_examples():
    found = enumerate_avoiders(complete_host(2), P3, 1, 2)
    assert len(found) == 1 and found[0].red_edges == [(0, 1)]
    assert len(enumerate_avoiders(complete_host(3), P3, 2, 2)) == 2


def test_enumerate_avoiders_k6_p4_is_family():
    p = FamilyParams(4, 3, 1)
    found = enumerate_avoiders(complete_host(6), P4, 1, 3)
    assert found
    for c in found:
        assert family_membership(c, p) is not None
        assert sorted(len(comp) for comp in c.red_graph().components()) == [3, 3]


def _check_classes(host, tree, t, m):
    found = enumerate_avoiders(host, tree, t, m)
    codes = [canonical_code(c) for c in found]
    assert len(set(codes)) == len(codes)
    for c in found:
        assert avoid_check(c, tree, t, m).avoids
    masks = avoiding_masks(host, tree, t, m)
    naive_codes = {canonical_code(coloring_from_mask(host, int(x))) for x in masks}
    assert naive_codes == set(codes)
    autos = host_automorphisms(host)
    assert sum(orbit_size(c, autos) for c in found) == masks.size


@pytest.mark.parametrize(
    "n, tree, t, m",
    [(3, P3, 2, 2), (4, P3, 1, 3), (5, P4, 1, 2), (5, P3, 2, 2), (5, star_tree(4), 1, 3), (4, P4, 2, 2)],
)
def test_enumerate_avoiders_complete_hosts_vs_naive(n, tree, t, m):
    _check_classes(complete_host(n), tree, t, m)


def test_enumerate_avoiders_random_hosts_vs_naive():
    rng = random.Random(5)
    for _ in range(15):
        host, tree, t, m = random_instance(rng)
        if host.order > 6:
            continue
        _check_classes(host, tree, t, m)
