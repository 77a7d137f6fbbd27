"""
EnumStream entity: one order's isomorphism classes, kept as canonical
graph6 lines sorted by canonical form.
"""

from typing import Iterator, List, Optional, Sequence, Tuple

import app.data.graph6 as graph6

from .graph import Graph

MODES = ("connected", "trees", "all")


class EnumStream:
    """A repeatable sequence of canonical graphs of one order and mode.

    Graphs are stored as graph6 text and decoded on iteration, which keeps
    an order-9 class list in tens of megabytes.

    Attributes:
        __order (int): Vertex count of every member
        __mode (str): connected, trees or all
        __lines (Tuple[str, ...]): Canonical graph6 encodings
        __diss (Optional[Tuple[int, ...]]): Dissociation numbers aligned with lines, if known
        __diss_filter (Optional[int]): k when the stream is a filter_by_diss result
    """

    def __init__(self, order: int, mode: str, lines: Sequence[str],
                 diss: Optional[Sequence[int]] = None, diss_filter: Optional[int] = None):
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
        self.__order = order
        self.__mode = mode
        self.__lines = tuple(lines)
        self.__diss = tuple(diss) if diss is not None else None
        if self.__diss is not None and len(self.__diss) != len(self.__lines):
            raise ValueError("diss values must align with the graph lines")
        self.__diss_filter = diss_filter

    def get_order(self) -> int:
        return self.__order

    def get_mode(self) -> str:
        return self.__mode

    def get_lines(self) -> Tuple[str, ...]:
        return self.__lines

    def get_diss(self) -> Optional[Tuple[int, ...]]:
        return self.__diss

    def get_diss_filter(self) -> Optional[int]:
        return self.__diss_filter

    def has_diss(self) -> bool:
        return self.__diss is not None

    def graphs(self) -> List[Graph]:
        return list(self)

    def with_diss(self, diss: Sequence[int]) -> "EnumStream":
        return EnumStream(self.__order, self.__mode, self.__lines, diss, self.__diss_filter)

    def __iter__(self) -> Iterator[Graph]:
        for line in self.__lines:
            yield graph6.from_graph6(line)

    def __len__(self) -> int:
        return len(self.__lines)

    def __str__(self) -> str:
        label = f", diss={self.__diss_filter}" if self.__diss_filter is not None else ""
        return f"EnumStream(n={self.__order}, mode={self.__mode}{label}, size={len(self.__lines)})"

    def __repr__(self) -> str:
        return self.__str__()
