"""graph6 and edge-list JSON ingestion."""
from __future__ import annotations

import json
from pathlib import Path

from ..errors import FormatError
from ..graph import Graph

HEADER = ">>graph6<<"


def _size_prefix(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def encode_graph6(g: Graph) -> str:
    es = set(g.edges)
    bits = [1 if (i, j) in es else 0 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = bytes(63 + int("".join(map(str, bits[k:k + 6])), 2) for k in range(0, len(bits), 6))
    return (_size_prefix(g.n) + body).decode("ascii")


def parse_graph6(text, name: str | None = None) -> Graph:
    """Decode one graph6 string; FormatError carries the offending byte offset."""
    data = text.encode("ascii", errors="replace") if isinstance(text, str) else bytes(text)
    data = data.rstrip(b"\r\n")
    start = 0
    if data.startswith(HEADER.encode()):
        start = len(HEADER)
    for i in range(start, len(data)):
        if not 63 <= data[i] <= 126:
            raise FormatError(f"byte {data[i]!r} outside the printable graph6 range", i)
    if len(data) == start:
        raise FormatError("empty graph6 string", start)
    pos = start
    if data[pos] != 126:
        n, pos = data[pos] - 63, pos + 1
    elif pos + 1 < len(data) and data[pos + 1] == 126:
        if len(data) < pos + 8:
            raise FormatError("truncated 8-byte size field", len(data))
        n = 0
        for b in data[pos + 2:pos + 8]:
            n = (n << 6) | (b - 63)
        pos += 8
    else:
        if len(data) < pos + 4:
            raise FormatError("truncated 4-byte size field", len(data))
        n = 0
        for b in data[pos + 1:pos + 4]:
            n = (n << 6) | (b - 63)
        pos += 4
    if n < 1:
        raise FormatError("graphs need at least one vertex", start)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) < need:
        raise FormatError(f"truncated edge data: expected {need} bytes, found {len(body)}", len(data))
    if len(body) > need:
        raise FormatError("trailing bytes after edge data", pos + need)
    edges, k = [], 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if (byte >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, edges, name)


def parse_edge_json(data, name: str | None = None) -> Graph:
    """{"n": int, "edges": [[u, v], ...]} with 1-based vertex numbers."""
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc.msg}", exc.pos) from None
    if not isinstance(data, dict) or "n" not in data or "edges" not in data:
        raise FormatError("edge-list JSON needs keys 'n' and 'edges'", 0)
    n = data["n"]
    if not isinstance(n, int) or n < 1:
        raise FormatError("'n' must be a positive integer", 0)
    edges = []
    for idx, e in enumerate(data["edges"]):
        if len(e) != 2 or not all(isinstance(x, int) and 1 <= x <= n for x in e) or e[0] == e[1]:
            raise FormatError(f"bad edge {e!r} at index {idx}", idx)
        edges.append((e[0] - 1, e[1] - 1))
    return Graph(n, edges, name)


def read_graph_file(path) -> Graph:
    path = Path(path)
    if path.suffix == ".json":
        return parse_edge_json(path.read_text(), path.stem)
    lines = [ln for ln in path.read_bytes().splitlines() if ln.strip()]
    if not lines:
        raise FormatError("no graph in file", 0)
    return parse_graph6(lines[0].strip(), path.stem)


def write_graph_file(g: Graph, path) -> None:
    path = Path(path)
    if path.suffix == ".json":
        path.write_text(json.dumps(g.to_json()) + "\n")
    else:
        path.write_text(encode_graph6(g) + "\n")
