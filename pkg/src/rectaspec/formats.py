"""File formats: graph6 for unsigned graphs, the line-oriented "sg1" signed
interchange format, and re-exports of the weighing-matrix text format.

graph6 follows the published format definition bit-for-bit: a 6-bit size
field (with the 126-prefixed long forms), then the upper triangle packed
column-by-column into 6-bit groups, each offset by 63.  Parsers reject their
documented error classes and nothing else.
"""

from __future__ import annotations

import numpy as np

from .core import SignedGraph, UnderlyingGraph
from .weighing import (WeighingFormatError, parse_weighing_text,
                       write_weighing_text)

__all__ = [
    "Graph6Error", "Graph6LengthError", "Graph6PaddingError", "Graph6ByteError",
    "SignedFormatError", "parse_graph6", "write_graph6", "parse_signed",
    "write_signed", "parse_weighing_text", "write_weighing_text",
    "WeighingFormatError",
]


class Graph6Error(ValueError):
    pass


class Graph6LengthError(Graph6Error):
    """Size field malformed or byte count inconsistent with it."""


class Graph6PaddingError(Graph6Error):
    """Nonzero bits in the padding after the upper triangle."""


class Graph6ByteError(Graph6Error):
    """Byte outside the printable graph6 range 63..126."""


_HEADER = b">>graph6<<"


def parse_graph6(data: bytes | str) -> UnderlyingGraph:
    if isinstance(data, str):
        data = data.encode("ascii", errors="replace")
    data = data.strip()
    if data.startswith(_HEADER):
        data = data[len(_HEADER):]
    if not data:
        raise Graph6LengthError("empty graph6 input")
    for byte in data:
        if not 63 <= byte <= 126:
            raise Graph6ByteError(f"byte {byte} outside printable range 63..126")
    n, body = _read_size(data)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(body) != nbytes:
        raise Graph6LengthError(
            f"expected {nbytes} data bytes for n={n}, got {len(body)}")
    bits = []
    for byte in body:
        value = byte - 63
        bits.extend((value >> shift) & 1 for shift in range(5, -1, -1))
    if any(bits[nbits:]):
        raise Graph6PaddingError("padding bits after the triangle must be zero")
    adj = np.zeros((n, n), dtype=np.int8)
    k = 0
    for v in range(1, n):
        for u in range(v):
            if bits[k]:
                adj[u, v] = adj[v, u] = 1
            k += 1
    return UnderlyingGraph(adj)


def _read_size(data: bytes) -> tuple[int, bytes]:
    if data[0] != 126:
        return data[0] - 63, data[1:]
    if len(data) >= 2 and data[1] != 126:
        if len(data) < 4:
            raise Graph6LengthError("truncated 3-byte size field")
        n = _unpack_big(data[1:4])
        if n < 63:
            raise Graph6LengthError("long size field used for a small order")
        return n, data[4:]
    if len(data) < 8:
        raise Graph6LengthError("truncated 6-byte size field")
    n = _unpack_big(data[2:8])
    if n < 258048:
        raise Graph6LengthError("very long size field used for a small order")
    return n, data[8:]


def _unpack_big(chunk: bytes) -> int:
    value = 0
    for byte in chunk:
        value = (value << 6) | (byte - 63)
    return value


def write_graph6(g: UnderlyingGraph | SignedGraph) -> bytes:
    adj = np.abs(np.asarray(g.adj))
    n = adj.shape[0]
    if n <= 62:
        head = bytes([n + 63])
    elif n <= 258047:
        head = bytes([126, 63 + (n >> 12), 63 + ((n >> 6) & 63), 63 + (n & 63)])
    else:
        raise ValueError("orders above 258047 are not supported")
    bits = []
    for v in range(1, n):
        for u in range(v):
            bits.append(int(adj[u, v]))
    body = bytearray()
    for i in range(0, len(bits), 6):
        group = bits[i:i + 6]
        group += [0] * (6 - len(group))
        value = 0
        for b in group:
            value = (value << 1) | b
        body.append(value + 63)
    return head + bytes(body)


class SignedFormatError(ValueError):
    pass


def parse_signed(text: str) -> SignedGraph:
    """Parse the "sg1 n" header plus one "u v +|-" line per edge."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise SignedFormatError("empty input")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "sg1" or not head[1].isdigit():
        raise SignedFormatError(f"header must be 'sg1 n', got {lines[0]!r}")
    n = int(head[1])
    if n < 1:
        raise SignedFormatError("vertex count must be positive")
    adj = np.zeros((n, n), dtype=np.int8)
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3 or parts[2] not in ("+", "-"):
            raise SignedFormatError(f"edge line must be 'u v +|-', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise SignedFormatError(f"bad vertex index in {ln!r}")
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise SignedFormatError(f"vertex out of range in {ln!r}")
        if adj[u, v]:
            raise SignedFormatError(f"duplicate edge ({u}, {v})")
        sign = 1 if parts[2] == "+" else -1
        adj[u, v] = adj[v, u] = sign
    return SignedGraph(adj)


def write_signed(g: SignedGraph) -> str:
    lines = [f"sg1 {g.n}"]
    for u, v, sign in g.edges():
        lines.append(f"{u} {v} {'+' if sign > 0 else '-'}")
    return "\n".join(lines) + "\n"
