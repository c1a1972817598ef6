"""graph6 and DOT encodings for undirected simple graphs."""

from __future__ import annotations

from .lattice import PolytopeGraph


def _encode_n(n: int) -> str:
    if n < 0:
        raise ValueError("negative vertex count")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError("graph too large for graph6")


def _decode_n(s: str) -> tuple[int, int]:
    """Return (n, number of header characters)."""
    if s[0] != "~":
        return ord(s[0]) - 63, 1
    if s[1] != "~":
        width, start = 3, 1
    else:
        width, start = 6, 2
    n = 0
    for ch in s[start:start + width]:
        n = (n << 6) | (ord(ch) - 63)
    return n, start + width


def encode(graph: PolytopeGraph) -> str:
    """graph6 string: upper triangle read column by column, 6 bits per char."""
    n = graph.vertex_count
    adj = [set(r) for r in graph.adjacency]
    bits = [1 if i in adj[j] else 0 for j in range(1, n) for i in range(j)]
    bits.extend([0] * (-len(bits) % 6))
    chars = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        chars.append(chr(val + 63))
    return _encode_n(n) + "".join(chars)


def decode(text: str) -> PolytopeGraph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise ValueError("empty graph6 string")
    for ch in s:
        if not 63 <= ord(ch) <= 126:
            raise ValueError(f"invalid graph6 character {ch!r}")
    n, offset = _decode_n(s)
    body = s[offset:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise ValueError(f"graph6 body has {len(body)} chars, expected {need} for n={n}")
    bits = []
    for ch in body:
        val = ord(ch) - 63
        bits.extend((val >> s) & 1 for s in range(5, -1, -1))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return PolytopeGraph.from_edges(n, edges)


def to_dot(graph: PolytopeGraph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(graph.vertex_count):
        lines.append(f'  {v} [label="{v}"];')
    for u, v in graph.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
