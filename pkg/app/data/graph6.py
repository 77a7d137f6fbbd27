"""
graph6 codec and newline-delimited graph6 file IO.
"""

import logging
from pathlib import Path
from typing import Iterable, Iterator, List, Union

from models.errors import Graph6FormatError
from models.graph import MAX_ORDER, Graph

logger = logging.getLogger(__name__)

GRAPH6_HEADER = ">>graph6<<"
_MIN_CHAR = 63
_MAX_CHAR = 126


def _encode_order(n: int) -> str:
    if n <= 62:
        return chr(n + _MIN_CHAR)
    # 18-bit form: '~' followed by three 6-bit groups
    return "~" + "".join(chr(((n >> shift) & 0x3F) + _MIN_CHAR) for shift in (12, 6, 0))


def to_graph6(g: Graph) -> str:
    """Encode a graph as standard graph6 (upper triangle, column-major)."""
    n = g.get_order()
    adj = g.get_adj()
    bits = []
    for j in range(1, n):
        row = adj[j]
        for i in range(j):
            bits.append((row >> i) & 1)
    bits.extend([0] * ((-len(bits)) % 6))
    chars = []
    for start in range(0, len(bits), 6):
        value = 0
        for b in bits[start:start + 6]:
            value = (value << 1) | b
        chars.append(chr(value + _MIN_CHAR))
    return _encode_order(n) + "".join(chars)


def from_graph6(text: str) -> Graph:
    """Decode one graph6 string.

    Args:
        text: graph6 text, optionally prefixed by ``>>graph6<<`` and with
            surrounding whitespace

    Returns:
        Graph: The decoded graph

    Raises:
        Graph6FormatError: On a malformed header, bad characters, a short or
            over-long body, non-zero padding or an order above 64
    """
    data = text.strip()
    base = 0
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER):]
        base = len(GRAPH6_HEADER)
    if not data:
        raise Graph6FormatError("empty graph6 string", base)

    for offset, ch in enumerate(data):
        if not _MIN_CHAR <= ord(ch) <= _MAX_CHAR:
            raise Graph6FormatError(f"character {ch!r} outside the graph6 range", base + offset)

    if ord(data[0]) == _MAX_CHAR:
        if len(data) >= 2 and ord(data[1]) == _MAX_CHAR:
            raise Graph6FormatError(f"order above {MAX_ORDER} is not supported", base + 1)
        if len(data) < 4:
            raise Graph6FormatError("truncated order header", base + len(data))
        n = 0
        for ch in data[1:4]:
            n = (n << 6) | (ord(ch) - _MIN_CHAR)
        body_start = 4
    else:
        n = ord(data[0]) - _MIN_CHAR
        body_start = 1
    if n > MAX_ORDER:
        raise Graph6FormatError(f"order {n} exceeds {MAX_ORDER}", base)
    if n == 0:
        raise Graph6FormatError("graph6 order 0 is not a graph here", base)

    nbits = n * (n - 1) // 2
    nchars = (nbits + 5) // 6
    body = data[body_start:]
    if len(body) < nchars:
        raise Graph6FormatError(f"expected {nchars} body bytes, got {len(body)}", base + len(data))
    if len(body) > nchars:
        raise Graph6FormatError("trailing bytes after graph body", base + body_start + nchars)

    value = 0
    for ch in body:
        value = (value << 6) | (ord(ch) - _MIN_CHAR)
    pad = nchars * 6 - nbits
    if value & ((1 << pad) - 1):
        raise Graph6FormatError("non-zero padding bits", base + len(data) - 1)
    value >>= pad

    rows = [0] * n
    pos = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if (value >> pos) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            pos -= 1
    return Graph(n, rows)


def iter_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    """Decode graph6 lines, skipping blank lines."""
    for line in lines:
        line = line.strip()
        if line:
            yield from_graph6(line)


def read_graph6_file(path: Union[str, Path]) -> List[Graph]:
    """Read a newline-delimited graph6 file."""
    with open(path, "r", encoding="ascii") as handle:
        graphs = list(iter_graph6_lines(handle))
    logger.info("read %d graphs from %s", len(graphs), path)
    return graphs


def write_graph6_file(path: Union[str, Path], graphs: Iterable[Union[Graph, str]]) -> int:
    """Write graphs (or already-encoded graph6 strings) one per line.

    Returns:
        int: Number of lines written
    """
    count = 0
    with open(path, "w", encoding="ascii") as handle:
        for g in graphs:
            handle.write((g if isinstance(g, str) else to_graph6(g)) + "\n")
            count += 1
    logger.info("wrote %d graphs to %s", count, path)
    return count
