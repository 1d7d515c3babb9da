"""Reading and writing graphs: whitespace edge lists and graph6."""

from __future__ import annotations

import logging

from .graph import Graph, GraphError
from .incidence import Orientation, canonical_orientation

log = logging.getLogger(__name__)


class InputError(ValueError):
    """Malformed input text; the message carries the line number when known."""


def _is_int(tok: str) -> bool:
    return tok.lstrip("-").isdigit()


def parse_edgelist(text: str) -> tuple[Graph, Orientation]:
    """Parse ``u v`` lines into a graph plus the orientation ``u -> v``.

    ``#`` starts a comment line and ``vertices N`` (only before the first
    edge) fixes the vertex count.  With a header, tokens must be integers in
    ``0..N-1`` and are used as-is.  Without one, integer labels are compacted
    in numeric order (so 1-based files become 0-based) and any other names
    are numbered by first appearance; the original labels are kept in
    ``Graph.names``.
    """
    n_header = None
    pairs: list[tuple[str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        if toks[0].lower() == "vertices":
            if pairs or n_header is not None:
                raise InputError(f"line {lineno}: 'vertices' header must come first and only once")
            if len(toks) != 2 or not toks[1].isdigit():
                raise InputError(f"line {lineno}: expected 'vertices N', got {line!r}")
            n_header = int(toks[1])
            continue
        if len(toks) != 2:
            raise InputError(f"line {lineno}: expected two endpoints, got {line!r}")
        pairs.append((toks[0], toks[1], lineno))

    names = None
    if n_header is not None:
        for a, b, lineno in pairs:
            for tok in (a, b):
                if not _is_int(tok) or not 0 <= int(tok) < n_header:
                    raise InputError(f"line {lineno}: vertex {tok!r} is not an integer in 0..{n_header - 1}")
        n = n_header
        label = int
    else:
        toks = [t for a, b, _ in pairs for t in (a, b)]
        if toks and all(_is_int(t) for t in toks):
            ordered = sorted(set(toks), key=int)
        else:
            ordered = list(dict.fromkeys(toks))
        index = {t: i for i, t in enumerate(ordered)}
        n = len(ordered)
        label = index.__getitem__
        if ordered != [str(i) for i in range(n)]:
            names = tuple(ordered)

    arcs, seen = [], {}
    for a, b, lineno in pairs:
        u, v = label(a), label(b)
        if u == v:
            raise InputError(f"line {lineno}: self-loop at {a!r}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise InputError(f"line {lineno}: duplicate edge {a} {b} (first seen on line {seen[key]})")
        seen[key] = lineno
        arcs.append((u, v))
    try:
        g = Graph(n, tuple(arcs), names)
    except GraphError as exc:
        raise InputError(str(exc)) from exc
    return g, Orientation(tuple(arcs))


def emit_edgelist(g: Graph, o: Orientation | None = None) -> str:
    """Edge list with a ``vertices`` header; :func:`parse_edgelist` inverts it."""
    o = o or canonical_orientation(g)
    o.validate(g)
    lines = [f"vertices {g.n}"]
    lines.extend(f"{t} {h}" for t, h in o.arcs)
    return "\n".join(lines) + "\n"


def _decode_n(data: bytes) -> tuple[int, int]:
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise InputError("graph6 length prefix truncated")
        n = 0
        for c in data[2:8]:
            n = (n << 6) | (c - 63)
        return n, 8
    if len(data) < 4:
        raise InputError("graph6 length prefix truncated")
    n = 0
    for c in data[1:4]:
        n = (n << 6) | (c - 63)
    return n, 4


def parse_graph6_line(line: str) -> Graph:
    """Decode one graph6 string; edges come out in lexicographic order."""
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise InputError("empty graph6 string")
    data = s.encode("ascii", errors="replace")
    if any(c < 63 or c > 126 for c in data):
        raise InputError(f"graph6 character out of range in {s!r}")
    n, start = _decode_n(data)
    body = data[start:]
    nbits = n * (n - 1) // 2
    need = -(-nbits // 6)
    if len(body) != need:
        raise InputError(f"graph6 body has {len(body)} bytes, n={n} needs {need}")
    bits = []
    for c in body:
        v = c - 63
        bits.extend((v >> k) & 1 for k in range(5, -1, -1))
    # bits run over the upper triangle column by column: (0,1), (0,2), (1,2), (0,3), ...
    edges = []
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                edges.append((i, j))
            pos += 1
    return Graph(n, tuple(sorted(edges)))


def parse_graph6(text: str) -> list[Graph]:
    """All graphs in a graph6 file, one per line; blank lines are skipped with a warning."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            log.warning("graph6 line %d is empty; skipped", lineno)
            continue
        try:
            out.append(parse_graph6_line(raw))
        except InputError as exc:
            raise InputError(f"line {lineno}: {exc}") from exc
    return out


def emit_graph6(g: Graph) -> str:
    n = g.n
    if n < 63:
        head = bytes([n + 63])
    elif n < 258048:
        head = bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    else:
        head = bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = bytes(
        63 + sum(b << (5 - k) for k, b in enumerate(bits[p:p + 6])) for p in range(0, len(bits), 6)
    )
    return (head + body).decode("ascii")
