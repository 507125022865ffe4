"""Graph I/O: whitespace edge lists and the graph6 line format."""

from __future__ import annotations

from .graph import Graph


def parse_edge_list(text: str) -> tuple[Graph, list[int]]:
    """Parse the ``"n m"`` header plus ``m`` lines of ``"u v"``.

    Vertex labels need not be dense; they are normalized to 0..n-1 in
    sorted label order and the original labels are returned alongside.
    """
    tokens = text.split()
    if len(tokens) < 2:
        raise ValueError("edge list needs an 'n m' header")
    n, m = int(tokens[0]), int(tokens[1])
    body = tokens[2:]
    if len(body) != 2 * m:
        raise ValueError(f"expected {2 * m} endpoint tokens, got {len(body)}")
    raw = [(int(body[2 * i]), int(body[2 * i + 1])) for i in range(m)]
    seen = {x for e in raw for x in e}
    if seen <= set(range(n)):
        labels = list(range(n))
    else:
        # labels outside 0..n-1: renumber densely, unused ids pad the tail
        labels = sorted(seen)
        if len(labels) > n:
            raise ValueError("more labels than declared vertices")
        filler = (x for x in range(2 * n) if x not in seen)
        labels += [next(filler) for _ in range(n - len(labels))]
    remap = {lab: i for i, lab in enumerate(labels)}
    return Graph(n, [(remap[u], remap[v]) for u, v in raw]), labels


def write_edge_list(g: Graph) -> str:
    """Serialize with a header line and one ``u v`` line per edge, u < v."""
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def _g6_encode_n(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    raise ValueError("graph6 supports at most 258047 vertices here")


def _g6_decode_n(data: bytes) -> tuple[int, int]:
    """Return (n, header length in bytes)."""
    if not data:
        raise ValueError("empty graph6 line")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) < 4:
        raise ValueError("truncated graph6 size header")
    if data[1] == 126:
        raise ValueError("graph6 graphs beyond 258047 vertices unsupported")
    n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
    return n, 4


def to_graph6(g: Graph) -> str:
    """Encode as a single graph6 line (no trailing newline)."""
    bits: list[int] = []
    for v in range(g.n):
        adj = set(g.adjacency[v])
        for u in range(v):
            bits.append(1 if u in adj else 0)
    while len(bits) % 6:
        bits.append(0)
    out = bytearray(_g6_encode_n(g.n))
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i : i + 6]:
            val = (val << 1) | b
        out.append(val + 63)
    return out.decode("ascii")


def from_graph6(line: str) -> Graph:
    """Decode one graph6 line (optional ``>>graph6<<`` header allowed)."""
    line = line.strip()
    if line.startswith(">>graph6<<"):
        line = line[len(">>graph6<<") :]
    data = line.encode("ascii")
    n, off = _g6_decode_n(data)
    need = n * (n - 1) // 2
    bits: list[int] = []
    for byte in data[off:]:
        val = byte - 63
        if not 0 <= val < 64:
            raise ValueError("invalid graph6 byte")
        bits.extend((val >> s) & 1 for s in range(5, -1, -1))
    if len(bits) < need:
        raise ValueError("truncated graph6 adjacency data")
    edges = []
    idx = 0
    for v in range(n):
        for u in range(v):
            if bits[idx]:
                edges.append((u, v))
            idx += 1
    return Graph(n, edges)


def autodetect(text: str) -> Graph:
    """Parse edge-list or graph6 content, whichever fits."""
    stripped = text.strip()
    first = stripped.split("\n", 1)[0].strip()
    parts = first.split()
    if len(parts) == 2 and all(p.lstrip("-").isdigit() for p in parts):
        return parse_edge_list(stripped)[0]
    return from_graph6(first)
