"""Command-line entry point.

Exit codes: 0 success, 1 usage or parameter error, 2 resource cap hit,
3 finding (formula/brute-force disagreement or an avoider outside the family).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from pathlib import Path
from typing import Iterable, Sequence

from . import __version__
from .arrowing import arrows, avoid_check, enumerate_avoiders
from .config import default_max_edges
from .constructions import (
    FamilyParams,
    build_critical,
    build_star_lower_bound,
    family_membership,
)
from .errors import ParameterError, ParseError, RamseyLabError, ResourceLimitError
from .graphcore import (
    SimpleGraph,
    Tree,
    TwoColoring,
    complete_host,
    emit_coloring,
    enumerate_trees,
    from_graph6,
    parse_coloring,
    path_tree,
    star_deleted_host,
    star_tree,
    to_graph6,
)
from .lemmas import equitable_partition, hall_dichotomy, lemma35_check, tree_trichotomy
from .ramsey import (
    SWEEP_COLUMNS,
    SweepRow,
    ramsey_bruteforce,
    ramsey_formula,
    star_critical_bruteforce,
    star_critical_formula,
    sweep,
)

EXIT_OK, EXIT_USAGE, EXIT_CAP, EXIT_FINDING = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


# -- argument helpers -----------------------------------------------------------------


def parse_tree_arg(text: str) -> Tree:
    """``P<n>`` (path), ``S<n>`` (star on n vertices) or a graph6 string."""
    m = re.fullmatch(r"([PS])(\d+)", text)
    if m:
        n = int(m.group(2))
        if n < 1:
            raise ParameterError("tree order must be positive")
        return path_tree(n) if m.group(1) == "P" else star_tree(n)
    return Tree(from_graph6(text))


def parse_edge_list(text: str) -> list[tuple[int, int]]:
    """Edges as ``0-1,1-2`` (also accepts ``0 1;1 2``)."""
    edges = []
    for chunk in re.split(r"[,;]", text.strip()):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = re.split(r"[-\s]+", chunk)
        if len(parts) != 2:
            raise ParameterError(f"cannot read edge {chunk!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return edges


def parse_hm_red(text: str | None, size: int) -> list[tuple[int, int]]:
    if not text:
        return []
    if re.search(r"\d\s*[-\s]\s*\d", text):
        return parse_edge_list(text)
    g = from_graph6(text)
    if g.order != size:
        raise ParameterError(f"graph6 pattern has {g.order} vertices, free block has {size}")
    return g.edges


def parse_vertices(text: str) -> list[int]:
    return [int(x) for x in re.split(r"[,\s]+", text.strip()) if x]


def read_coloring(path: str) -> TwoColoring:
    return parse_coloring(Path(path).read_text())


def read_graph(text: str) -> SimpleGraph:
    p = Path(text)
    if p.exists():
        text = p.read_text().strip().splitlines()[0]
    return from_graph6(text)


def coloring_json(c: TwoColoring) -> dict:
    return {"order": c.order, "red_edges": [list(e) for e in c.red_edges], "two_col": emit_coloring(c)}


# -- output ---------------------------------------------------------------------------------


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def report(rows: Sequence[SweepRow | dict], fmt: str = "csv") -> str:
    """Render table rows with the fixed sweep column order."""
    dicts = [r.as_dict() if isinstance(r, SweepRow) else {c: r.get(c) for c in SWEEP_COLUMNS} for r in rows]
    if fmt == "json":
        return json.dumps(dicts, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(SWEEP_COLUMNS)
        for d in dicts:
            writer.writerow([_cell(d[c]) for c in SWEEP_COLUMNS])
        return buf.getvalue()
    table = [list(SWEEP_COLUMNS)] + [[_cell(d[c]) for c in SWEEP_COLUMNS] for d in dicts]
    widths = [max(len(row[i]) for row in table) for i in range(len(SWEEP_COLUMNS))]
    return "".join("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() + "\n" for row in table)


class Output:
    def __init__(self, fmt: str, path: str | None):
        self.fmt = fmt
        self.path = path
        self.parts: list[str] = []

    def write(self, text: str) -> None:
        self.parts.append(text if text.endswith("\n") else text + "\n")

    def json(self, obj) -> None:
        self.write(json.dumps(obj, indent=2, sort_keys=False))

    def flush(self) -> None:
        data = "".join(self.parts)
        if self.path:
            Path(self.path).write_text(data)
        else:
            sys.stdout.write(data)


def _finding(msg: str) -> None:
    sys.stderr.write(f"finding: {msg}\n")


# -- subcommands ------------------------------------------------------------------------------


def _params(args) -> FamilyParams:
    return FamilyParams(args.n, args.m, args.t)


def cmd_construct(args, out: Output) -> int:
    p = _params(args)
    c = build_critical(p, parse_hm_red(args.hm_red, p.t - 1))
    out.json(coloring_json(c)) if out.fmt == "json" else out.write(emit_coloring(c))
    return EXIT_OK


def cmd_star_lower_bound(args, out: Output) -> int:
    c = build_star_lower_bound(_params(args))
    out.json(coloring_json(c)) if out.fmt == "json" else out.write(emit_coloring(c))
    return EXIT_OK


def cmd_membership(args, out: Output) -> int:
    c = read_coloring(args.input)
    w = family_membership(c, _params(args))
    if out.fmt == "json":
        out.json({"member": w is not None, "witness": w.to_json() if w else None})
    else:
        out.write("member " + json.dumps(w.to_json()) if w else "not a member")
    return EXIT_OK


def cmd_avoid_check(args, out: Output) -> int:
    c = read_coloring(args.input)
    rep = avoid_check(c, parse_tree_arg(args.tree), args.t, args.m)
    if out.fmt == "json":
        out.json(rep.to_json())
    else:
        out.write("avoids" if rep.avoids else "does not avoid")
        if rep.red_witness:
            out.write(json.dumps(rep.red_witness.to_json()))
        if rep.blue_witness:
            out.write(json.dumps(rep.blue_witness.to_json()))
    return EXIT_OK


def _host_from_args(args) -> SimpleGraph:
    if args.complete is not None:
        return complete_host(args.complete)
    if args.star_deleted is not None:
        return star_deleted_host(*args.star_deleted)
    if args.host_g6 is not None:
        return from_graph6(args.host_g6)
    return read_coloring(args.host_file).host


def cmd_arrows(args, out: Output) -> int:
    host = _host_from_args(args)
    res = arrows(host, parse_tree_arg(args.tree), args.t, args.m, max_edges=args.max_edges)
    if out.fmt == "json":
        out.json({"arrows": res.arrows, "avoider": coloring_json(res.avoider) if res.avoider else None})
    else:
        out.write("true" if res.arrows else "false")
        if res.avoider:
            out.write(emit_coloring(res.avoider))
    return EXIT_OK


def _trees(args) -> list[Tree]:
    if getattr(args, "all_trees", None):
        return enumerate_trees(args.all_trees)
    if getattr(args, "tree", None):
        return [parse_tree_arg(args.tree)]
    raise UsageError("give --tree or --all-trees")


def cmd_enumerate_critical(args, out: Output) -> int:
    p = _params(args)
    trees = [parse_tree_arg(args.tree)] if args.tree else enumerate_trees(p.n)
    if any(t.order != p.n for t in trees):
        raise ParameterError("tree order must equal --n")
    order = args.order if args.order is not None else p.critical_order
    if order < 1:
        raise ParameterError("critical host is empty for these parameters")
    host = complete_host(order)
    results = []
    status = EXIT_OK
    for tree in trees:
        found = enumerate_avoiders(host, tree, p.t, p.m, max_edges=args.max_edges)
        for c in found:
            entry = {"tree_g6": to_graph6(tree), "coloring": coloring_json(c)}
            if args.check_family:
                w = family_membership(c, p) if order == p.critical_order else None
                entry["in_family"] = w is not None
                if w is None:
                    status = EXIT_FINDING
                    _finding(f"avoider outside the family for tree {to_graph6(tree)}:\n{emit_coloring(c)}")
            results.append(entry)
    if out.fmt == "json":
        out.json(results)
    else:
        for e in results:
            flag = "" if "in_family" not in e else (" in-family" if e["in_family"] else " NOT-IN-FAMILY")
            out.write(f"# tree {e['tree_g6']}{flag}")
            out.write(e["coloring"]["two_col"])
        out.write(f"# {len(results)} avoider class(es)")
    return status


def _value_command(args, out: Output, star: bool) -> int:
    status = EXIT_OK
    records = []
    for tree in _trees(args):
        p = FamilyParams(tree.order, args.m, args.t)
        try:
            formula = star_critical_formula(p) if star else ramsey_formula(p)
        except ParameterError:
            formula = None
        rec = {"tree_g6": to_graph6(tree), "n": tree.order, "m": args.m, "t": args.t, "formula": formula}
        if args.brute:
            if star:
                res = star_critical_bruteforce(tree, args.t, args.m, max_edges=args.max_edges)
            else:
                res = ramsey_bruteforce(tree, args.t, args.m, max_edges=args.max_edges)
            rec["brute"] = res.value
            rec["agree"] = res.value == formula
            rec["avoider"] = coloring_json(res.witness_lower) if res.witness_lower else None
            if not rec["agree"]:
                status = EXIT_FINDING
                what = "r*" if star else "r"
                _finding(
                    f"{what}({rec['tree_g6']}, {args.t}K{args.m}) = {res.value} by brute force, "
                    f"formula gives {formula}"
                )
        records.append(rec)
    if out.fmt == "json":
        out.json(records)
    else:
        for rec in records:
            out.write(str(rec.get("brute", rec["formula"])))
            if args.brute and not rec["agree"]:
                out.write(f"# finding: formula gives {rec['formula']}; avoider below")
                if rec["avoider"]:
                    out.write(rec["avoider"]["two_col"])
    return status


def cmd_ramsey(args, out: Output) -> int:
    return _value_command(args, out, star=False)


def cmd_star_critical(args, out: Output) -> int:
    return _value_command(args, out, star=True)


def cmd_sweep(args, out: Output) -> int:
    rows = sweep(args.n, args.t, args.m, max_edges=args.max_edges, workers=args.workers, timing=not args.no_timing)
    fmt = out.fmt if out.fmt in ("json", "csv") else "text"
    out.write(report(rows, fmt))
    status = EXIT_OK
    for r in rows:
        if not r.agrees:
            status = EXIT_FINDING
            _finding(f"tree {r.tree_g6}: r={r.r_brute} (formula {r.r_formula}), "
                     f"r*={r.rstar_brute} (formula {r.rstar_formula})")
            if not r.agree_r and r.r_avoider is not None:
                sys.stderr.write(f"# avoider on K_{r.r_brute - 1}\n" + emit_coloring(r.r_avoider))
            if not r.agree_rstar and r.rstar_avoider is not None:
                sys.stderr.write(f"# avoider with k={r.rstar_brute - 1}\n" + emit_coloring(r.rstar_avoider))
    return status


def cmd_equitable(args, out: Output) -> int:
    g = read_graph(args.graph)
    w = equitable_partition(g, args.ell, seed=args.seed)
    out.json({"witness": [list(b) for b in w.blocks], "valid": w.is_valid(g, args.ell)})
    return EXIT_OK


def cmd_hall(args, out: Output) -> int:
    c = read_coloring(args.input)
    xs, ys = parse_vertices(args.x), parse_vertices(args.y)
    res = hall_dichotomy(c, xs, ys)
    out.json({**res.to_json(), "valid": res.is_valid(c, xs, ys)})
    return EXIT_OK


def cmd_trichotomy(args, out: Output) -> int:
    tree = parse_tree_arg(args.tree)
    res = tree_trichotomy(tree, args.alpha, args.beta)
    out.json({**res.to_json(), "valid": res.is_valid(tree, args.alpha, args.beta)})
    return EXIT_OK


def cmd_lemma35(args, out: Output) -> int:
    c = read_coloring(args.input)
    xs, ys = parse_vertices(args.x), parse_vertices(args.y)
    res = lemma35_check(c, xs, ys, args.c, args.d)
    out.json(res.to_json())
    if res.kind == "counterexample":
        _finding("lemma check returned a counterexample:\n" + emit_coloring(c))
        return EXIT_FINDING
    return EXIT_OK


def cmd_trees(args, out: Output) -> int:
    codes = [to_graph6(t) for t in enumerate_trees(args.n, cap=args.max_tree_order)]
    if out.fmt == "json":
        out.json(codes)
    else:
        for c in codes:
            out.write(c)
    return EXIT_OK


# -- parser -------------------------------------------------------------------------------------


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--workers", type=_positive, default=1)
    common.add_argument("--max-edges", type=_positive, default=None,
                        help="exhaustive edge cap (default 28 or $RAMSEYLAB_MAX_EDGES)")
    common.add_argument("--max-tree-order", type=_positive, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", metavar="FILE", default=None)

    parser = _Parser(prog="ramseylab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, func, help_text: str):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    def nmt(p, need_n=True):
        if need_n:
            p.add_argument("--n", type=_positive, required=True)
        p.add_argument("--m", type=_positive, required=True)
        p.add_argument("--t", type=_positive, required=True)

    def tree_choice(p):
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--tree", help="P<n>, S<n> or a graph6 string")
        g.add_argument("--all-trees", type=_positive, metavar="N")

    p = add("construct", cmd_construct, "emit a critical family coloring")
    nmt(p)
    p.add_argument("--hm-red", default=None, help="red edges in the free block: graph6 or 0-1,1-2")

    p = add("star-lower-bound", cmd_star_lower_bound, "emit the star-critical lower-bound coloring")
    nmt(p)

    p = add("membership", cmd_membership, "test critical-family membership of a .2col coloring")
    nmt(p)
    p.add_argument("--input", required=True)

    p = add("avoid-check", cmd_avoid_check, "look for a red tree and a blue tK_m")
    p.add_argument("--input", required=True)
    p.add_argument("--tree", required=True)
    nmt(p, need_n=False)

    p = add("arrows", cmd_arrows, "decide arrowing of a host graph")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--complete", type=_positive, metavar="N")
    g.add_argument("--star-deleted", type=int, nargs=2, metavar=("N", "K"))
    g.add_argument("--host-g6")
    g.add_argument("--host-file", help=".2col file whose host graph is used")
    p.add_argument("--tree", required=True)
    nmt(p, need_n=False)

    p = add("enumerate-critical", cmd_enumerate_critical, "enumerate avoiding colorings up to isomorphism")
    nmt(p)
    p.add_argument("--tree", default=None, help="default: every tree on n vertices")
    p.add_argument("--order", type=_positive, default=None, help="host order (default (n-1)(m-1)+t-1)")
    p.add_argument("--check-family", action="store_true")

    for name, func in (("ramsey", cmd_ramsey), ("star-critical", cmd_star_critical)):
        p = add(name, func, f"{name} value by formula or brute force")
        tree_choice(p)
        nmt(p, need_n=False)
        p.add_argument("--brute", action="store_true")

    p = add("sweep", cmd_sweep, "brute-force r and r* for every tree of order n")
    nmt(p)
    p.add_argument("--no-timing", action="store_true", help="report runtime_ms as 0")

    p = add("equitable", cmd_equitable, "equitable partition into independent sets")
    p.add_argument("--graph", required=True, help="graph6 string or file")
    p.add_argument("--ell", type=_positive, required=True)

    p = add("hall", cmd_hall, "red matching or blue biclique in a coloured K_{a,b}")
    p.add_argument("--input", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)

    p = add("trichotomy", cmd_trichotomy, "suspended path, end-edges or talon in a tree")
    p.add_argument("--tree", required=True)
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--beta", type=_positive, required=True)

    p = add("lemma35", cmd_lemma35, "red path lengthening check")
    p.add_argument("--input", required=True)
    p.add_argument("--x", required=True, help="red path vertices in order")
    p.add_argument("--y", required=True)
    p.add_argument("--c", type=_positive, required=True)
    p.add_argument("--d", type=_positive, required=True)

    p = add("trees", cmd_trees, "list trees of order n in graph6")
    p.add_argument("--n", type=_positive, required=True)
    return parser


def main(argv: Iterable[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    if args.max_edges is None:
        try:
            args.max_edges = default_max_edges()
        except ValueError as exc:
            sys.stderr.write(f"error: {exc}\n")
            return EXIT_USAGE
    out = Output(args.format, args.out)
    try:
        status = args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except ResourceLimitError as exc:
        sys.stderr.write(f"resource cap: {exc}\n")
        return EXIT_CAP
    except (ParameterError, ParseError, RamseyLabError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    out.flush()
    return status


if __name__ == "__main__":
    sys.exit(main())
