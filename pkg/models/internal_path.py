"""
InternalPath entity: a path whose ends have degree at least 3 and whose
interior vertices have degree 2.
"""

from typing import Iterable, List, Tuple

from .graph import Graph


class InternalPath:
    """Represents an internal path v1..vk of a graph.

    Attributes:
        __vertices (Tuple[int, ...]): Vertices in path order; v1 == vk for a closed path
    """

    def __init__(self, vertices: Iterable[int]):
        self.__vertices = tuple(vertices)

    def get_vertices(self) -> Tuple[int, ...]:
        return self.__vertices

    def get_ends(self) -> Tuple[int, int]:
        return self.__vertices[0], self.__vertices[-1]

    def get_interior(self) -> Tuple[int, ...]:
        return self.__vertices[1:-1]

    def edges(self) -> List[Tuple[int, int]]:
        """Consecutive vertex pairs along the path."""
        return list(zip(self.__vertices, self.__vertices[1:]))

    def is_closed(self) -> bool:
        return self.__vertices[0] == self.__vertices[-1]

    def is_valid_for(self, g: Graph) -> bool:
        """Check the end-degree, interior-degree, adjacency and distinctness conditions."""
        vs = self.__vertices
        if len(vs) < 2:
            return False
        if g.degree(vs[0]) < 3 or g.degree(vs[-1]) < 3:
            return False
        if any(g.degree(v) != 2 for v in vs[1:-1]):
            return False
        if not all(g.has_edge(a, b) for a, b in self.edges()):
            return False
        core = vs[:-1] if self.is_closed() else vs
        return len(set(core)) == len(core)

    def __eq__(self, other) -> bool:
        if not isinstance(other, InternalPath):
            return NotImplemented
        return self.__vertices == other.__vertices

    def __hash__(self) -> int:
        return hash(self.__vertices)

    def __len__(self) -> int:
        return len(self.__vertices)

    def __str__(self) -> str:
        return "-".join(str(v) for v in self.__vertices)

    def __repr__(self) -> str:
        return f"InternalPath({list(self.__vertices)})"
