"""
graph6 reader/writer on top of networkx. The bit layout is networkx's; the
checks here only locate the first bad byte so GraphFormatError can report it.
"""

from typing import Tuple

import networkx as nx

from shannon.errors import GraphFormatError, ParameterError
from shannon.graphs.graph import Graph

_HEADER = b">>graph6<<"
_OFFSET = 63
_MAX_N = 68719476735  # 2**36 - 1


def _decode_n(data: bytes, start: int) -> Tuple[int, int]:
    """Returns (n, index of the first adjacency byte)."""
    if start >= len(data):
        raise GraphFormatError("Missing vertex-count header", start)
    if data[start] != 126:
        return data[start] - _OFFSET, start + 1
    if start + 1 < len(data) and data[start + 1] == 126:
        width, first = 6, start + 2
    else:
        width, first = 3, start + 1
    if first + width > len(data):
        raise GraphFormatError("Truncated vertex-count header", len(data))
    n = 0
    for byte in data[first:first + width]:
        n = (n << 6) | (byte - _OFFSET)
    return n, first + width


def _validate(data: bytes) -> int:
    """Checks header, character range, length and padding; returns the header length."""
    start = len(_HEADER) if data.startswith(_HEADER) else 0
    for offset in range(start, len(data)):
        if not _OFFSET <= data[offset] <= 126:
            raise GraphFormatError(f"Byte {data[offset]} outside the printable range 63..126", offset)

    n, body = _decode_n(data, start)
    nbits = n * (n - 1) // 2
    expected = body + (nbits + 5) // 6
    if len(data) != expected:
        raise GraphFormatError(
            f"Expected {expected - body} adjacency bytes for {n} vertices, got {len(data) - body}",
            min(len(data), expected),
        )
    padding = -nbits % 6
    if padding and (data[-1] - _OFFSET) & ((1 << padding) - 1):
        raise GraphFormatError("Nonzero padding bits", len(data) - 1)
    return start


def emit_graph6(graph: Graph) -> str:
    """Canonical graph6 text for `graph` (no header, no newline)."""
    if graph.n > _MAX_N:
        raise ParameterError(f"graph6 cannot encode {graph.n} vertices")
    return nx.to_graph6_bytes(graph.to_networkx(), header=False).decode("ascii").rstrip("\n")


def parse_graph6(text: str) -> Graph:
    """
    Parse one graph6 string. An optional ">>graph6<<" header and trailing
    newline are accepted; anything else malformed raises GraphFormatError
    with the offending byte offset.
    """
    raw = text.rstrip("\r\n")
    try:
        data = raw.encode("ascii")
    except UnicodeEncodeError as e:
        raise GraphFormatError("Non-ASCII character", e.start) from e
    if not data:
        raise GraphFormatError("Empty graph6 string", 0)

    start = _validate(data)
    try:
        decoded = nx.from_graph6_bytes(data[start:])
    except (nx.NetworkXError, ValueError) as e:
        raise GraphFormatError(str(e), start) from e
    return Graph.from_networkx(decoded)
