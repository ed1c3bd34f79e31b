"""Text formats: the ``.2col`` coloring format and graph6.

A ``.2col`` file looks like::

    n=4
    host=star-deleted k=2
    red: 0 1
    red: 1 2

``host`` is ``complete``, ``star-deleted k=<k>`` or ``edges`` (followed by
``edge: u v`` lines). Host edges without a ``red:`` line are blue. ``#``
starts a comment.
"""

from __future__ import annotations

from ..errors import ParameterError, ParseError
from .graph import SimpleGraph, Tree, TwoColoring, complete_host, star_deleted_host

GRAPH6_HEADER = ">>graph6<<"


def _encode_order(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def to_graph6(g: SimpleGraph | Tree) -> str:
    if isinstance(g, Tree):
        g = g.graph
    n = g.order
    bits = []
    for j in range(1, n):
        row = g.rows[j]
        for i in range(j):
            bits.append(row >> i & 1)
    bits.extend([0] * (-len(bits) % 6))
    body = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = (val << 1) | b
        body.append(chr(val + 63))
    return _encode_order(n) + "".join(body)


def from_graph6(text: str) -> SimpleGraph:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER) :]
    if not s:
        raise ParseError("empty graph6 string")
    data = [ord(ch) - 63 for ch in s]
    if any(not 0 <= d <= 63 for d in data):
        raise ParseError("graph6 string contains characters outside '?'..'~'")
    if data[0] != 63:
        n, pos = data[0], 1
    elif len(data) >= 2 and data[1] == 63:
        if len(data) < 8:
            raise ParseError("truncated graph6 order field")
        n, pos = 0, 8
        for d in data[2:8]:
            n = (n << 6) | d
    else:
        if len(data) < 4:
            raise ParseError("truncated graph6 order field")
        n, pos = 0, 4
        for d in data[1:4]:
            n = (n << 6) | d
    need = (n * (n - 1) // 2 + 5) // 6
    if len(data) - pos != need:
        raise ParseError(f"graph6 body has {len(data) - pos} characters, expected {need}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            d = data[pos + k // 6]
            if d >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    return SimpleGraph.from_edges(n, edges)


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _pair(fields: list[str], lineno: int, n: int) -> tuple[int, int]:
    if len(fields) != 2:
        raise ParseError("expected two vertex indices", lineno)
    try:
        u, v = int(fields[0]), int(fields[1])
    except ValueError:
        raise ParseError("vertex indices must be integers", lineno) from None
    for x in (u, v):
        if not 0 <= x < n:
            raise ParseError(f"vertex {x} out of range 0..{n - 1}", lineno)
    if u == v:
        raise ParseError(f"loop at vertex {u}", lineno)
    return u, v


def parse_coloring(text: str) -> TwoColoring:
    lines = [(i, _strip(raw)) for i, raw in enumerate(text.splitlines(), start=1)]
    lines = [(i, s) for i, s in lines if s]
    if len(lines) < 2:
        raise ParseError("expected 'n=' and 'host=' header lines", lines[0][0] if lines else None)

    lineno, first = lines[0]
    key, _, val = first.partition("=")
    if key.strip() != "n" or not val.strip().isdigit():
        raise ParseError(f"malformed header {first!r}, expected n=<N>", lineno)
    n = int(val)
    if n < 1:
        raise ParseError("n must be at least 1", lineno)

    lineno, second = lines[1]
    fields = second.split()
    key, _, kind = fields[0].partition("=")
    if key != "host":
        raise ParseError(f"malformed header {second!r}, expected host=...", lineno)
    host_edges: list[tuple[int, int]] | None = None
    if kind == "complete" and len(fields) == 1:
        host = complete_host(n)
    elif kind == "star-deleted" and len(fields) == 2 and fields[1].startswith("k="):
        try:
            k = int(fields[1][2:])
            host = star_deleted_host(n, k)
        except (ValueError, ParameterError) as exc:
            raise ParseError(f"bad star-deleted parameter: {exc}", lineno) from None
    elif kind == "edges" and len(fields) == 1:
        host = None
        host_edges = []
    else:
        raise ParseError(f"unknown host specification {second!r}", lineno)

    red: list[tuple[int, int, int]] = []
    for lineno, s in lines[2:]:
        tag, _, rest = s.partition(":")
        tag = tag.strip()
        if tag == "red":
            red.append((lineno, *_pair(rest.split(), lineno, n)))
        elif tag == "edge":
            if host_edges is None:
                raise ParseError("'edge:' lines require host=edges", lineno)
            host_edges.append(_pair(rest.split(), lineno, n))
        else:
            raise ParseError(f"unrecognised line {s!r}", lineno)

    if host is None:
        host = SimpleGraph.from_edges(n, host_edges or [])
    for lineno, u, v in red:
        if not host.adj(u, v):
            raise ParseError(f"red edge {u} {v} is not a host edge", lineno)
    return TwoColoring.from_red_edges(host, [(u, v) for _, u, v in red])


def host_line(host: SimpleGraph) -> str | None:
    """The compact ``host=`` line for ``host``, or None when only an edge list describes it."""
    n = host.order
    if host == complete_host(n):
        return "host=complete"
    k = host.degree(n - 1)
    if host == star_deleted_host(n, k):
        return f"host=star-deleted k={k}"
    return None


def emit_coloring(c: TwoColoring) -> str:
    out = [f"n={c.order}"]
    line = host_line(c.host)
    if line is None:
        out.append("host=edges")
        out.extend(f"edge: {u} {v}" for u, v in c.host.edges)
    else:
        out.append(line)
    out.extend(f"red: {u} {v}" for u, v in c.red_edges)
    return "\n".join(out) + "\n"
