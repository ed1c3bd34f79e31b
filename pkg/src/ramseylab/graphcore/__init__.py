"""Graph and coloring data model shared by every other module."""

from .canon import CanonicalCode, canonical_code, canonical_form, canonical_relabel
from .formats import emit_coloring, from_graph6, parse_coloring, to_graph6
from .graph import (
    Edge,
    SimpleGraph,
    Tree,
    TwoColoring,
    all_blue,
    all_red,
    complete_host,
    iter_bits,
    mask_of,
    path_tree,
    star_deleted_host,
    star_tree,
)
from .trees import centers, enumerate_trees, tree_code, tree_from_code, vertex_orbits

__all__ = [
    "CanonicalCode",
    "Edge",
    "SimpleGraph",
    "Tree",
    "TwoColoring",
    "all_blue",
    "all_red",
    "canonical_code",
    "canonical_form",
    "canonical_relabel",
    "centers",
    "complete_host",
    "emit_coloring",
    "enumerate_trees",
    "from_graph6",
    "iter_bits",
    "mask_of",
    "parse_coloring",
    "path_tree",
    "star_deleted_host",
    "star_tree",
    "to_graph6",
    "tree_code",
    "tree_from_code",
    "vertex_orbits",
]
