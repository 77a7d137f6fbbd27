"""
Graph value type for the dissociation / spectral toolkit.
A Graph is an immutable simple undirected graph stored as bitset adjacency
rows; every mutator returns a new Graph.
"""

from collections import deque
from typing import Iterable, Iterator, List, Sequence, Tuple

import networkx as nx
import numpy as np

from .errors import GraphError

MAX_ORDER = 64


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_to_mask(vertices: Iterable[int]) -> int:
    """Build a bitset from an iterable of vertex indices."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


class Graph:
    """Represents a simple undirected graph with at most 64 vertices.

    Row i of the adjacency holds the neighbor set of vertex i as a bitset.

    Attributes:
        __order (int): Number of vertices
        __adj (Tuple[int, ...]): Bitset adjacency rows
    """

    __slots__ = ("__order", "__adj", "__hash")

    def __init__(self, order: int, adj: Sequence[int]):
        """Initialize a Graph and check symmetry and loop freedom.

        Args:
            order: Number of vertices (1..64)
            adj: Sequence of ``order`` bitset rows

        Raises:
            GraphError: If the rows do not describe a simple undirected graph
        """
        if order < 1 or order > MAX_ORDER:
            raise GraphError(f"order must be in 1..{MAX_ORDER}, got {order}")
        rows = tuple(int(r) for r in adj)
        if len(rows) != order:
            raise GraphError(f"expected {order} adjacency rows, got {len(rows)}")
        full = (1 << order) - 1
        for i, row in enumerate(rows):
            if row < 0 or row & ~full:
                raise GraphError(f"row {i} references a vertex outside 0..{order - 1}")
            if (row >> i) & 1:
                raise GraphError(f"loop at vertex {i}")
            for j in iter_bits(row):
                if not (rows[j] >> i) & 1:
                    raise GraphError(f"asymmetric adjacency between {i} and {j}")
        self.__order = order
        self.__adj = rows
        self.__hash = hash((order, rows))

    # Constructors
    @classmethod
    def from_edges(cls, order: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        """Build a graph from an edge list.

        Args:
            order: Number of vertices
            edges: Pairs (u, v) with u != v

        Returns:
            Graph: The graph with exactly those edges
        """
        if order < 1 or order > MAX_ORDER:
            raise GraphError(f"order must be in 1..{MAX_ORDER}, got {order}")
        rows = [0] * order
        for u, v in edges:
            if not (0 <= u < order and 0 <= v < order):
                raise GraphError(f"edge ({u}, {v}) out of range for order {order}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(order, rows)

    @classmethod
    def empty(cls, order: int) -> "Graph":
        """Edgeless graph on ``order`` vertices."""
        return cls(order, [0] * order)

    @classmethod
    def complete(cls, order: int) -> "Graph":
        """Complete graph K_order."""
        if order < 1 or order > MAX_ORDER:
            raise GraphError(f"order must be in 1..{MAX_ORDER}, got {order}")
        full = (1 << order) - 1
        return cls(order, [full & ~(1 << i) for i in range(order)])

    # Getter methods
    def get_order(self) -> int:
        """Get the number of vertices."""
        return self.__order

    def get_adj(self) -> Tuple[int, ...]:
        """Get the bitset adjacency rows."""
        return self.__adj

    def get_row(self, v: int) -> int:
        """Get the neighbor bitset of vertex v."""
        self._check_vertex(v)
        return self.__adj[v]

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.__order:
            raise GraphError(f"vertex {v} out of range for order {self.__order}")

    # Local structure
    def degree(self, v: int) -> int:
        """Degree of vertex v."""
        self._check_vertex(v)
        return self.__adj[v].bit_count()

    def degree_sequence(self) -> Tuple[int, ...]:
        """Degrees indexed by vertex."""
        return tuple(row.bit_count() for row in self.__adj)

    def max_degree(self) -> int:
        return max(self.degree_sequence())

    def neighbors(self, v: int) -> List[int]:
        """Sorted neighbor list of vertex v."""
        self._check_vertex(v)
        return list(iter_bits(self.__adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool((self.__adj[u] >> v) & 1)

    def edges(self) -> List[Tuple[int, int]]:
        """All edges as (u, v) pairs with u < v, sorted."""
        result = []
        for u, row in enumerate(self.__adj):
            for v in iter_bits(row >> (u + 1)):
                result.append((u, u + 1 + v))
        return result

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.__adj) // 2

    def branch_vertices(self) -> frozenset:
        """Vertices of degree at least 3."""
        return frozenset(v for v, row in enumerate(self.__adj) if row.bit_count() >= 3)

    def leaves(self) -> List[int]:
        """Vertices of degree exactly 1."""
        return [v for v, row in enumerate(self.__adj) if row.bit_count() == 1]

    # Global structure
    def component_mask(self, start: int = 0, within: int = None) -> int:
        """Bitset of the vertices reachable from start inside ``within``."""
        if within is None:
            within = (1 << self.__order) - 1
        seen = 1 << start
        frontier = seen
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= self.__adj[v]
            nxt &= within & ~seen
            seen |= nxt
            frontier = nxt
        return seen

    def is_connected(self) -> bool:
        """Check connectivity by a full traversal from vertex 0."""
        return self.component_mask(0) == (1 << self.__order) - 1

    def is_tree(self) -> bool:
        return self.edge_count() == self.__order - 1 and self.is_connected()

    # Mutators (all return new graphs)
    def add_edge(self, u: int, v: int) -> "Graph":
        """Return a copy with edge uv added.

        Raises:
            GraphError: If u == v, an index is out of range or uv already exists
        """
        if u == v:
            raise GraphError(f"cannot add loop at {u}")
        if self.has_edge(u, v):
            raise GraphError(f"edge ({u}, {v}) already present")
        rows = list(self.__adj)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph(self.__order, rows)

    def delete_edge(self, u: int, v: int) -> "Graph":
        """Return a copy with edge uv removed.

        Raises:
            GraphError: If u == v, an index is out of range or uv is missing
        """
        if u == v:
            raise GraphError(f"no loop at {u} to delete")
        if not self.has_edge(u, v):
            raise GraphError(f"edge ({u}, {v}) not present")
        rows = list(self.__adj)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph(self.__order, rows)

    def add_vertex(self, neighbor_mask: int = 0) -> "Graph":
        """Return a copy with a new vertex (index = old order) joined to neighbor_mask."""
        n = self.__order
        if n + 1 > MAX_ORDER:
            raise GraphError(f"order would exceed {MAX_ORDER}")
        if neighbor_mask & ~((1 << n) - 1):
            raise GraphError("neighbor mask references a missing vertex")
        rows = [row | (((neighbor_mask >> i) & 1) << n) for i, row in enumerate(self.__adj)]
        rows.append(neighbor_mask)
        return Graph(n + 1, rows)

    def delete_vertex(self, v: int) -> "Graph":
        """Return a copy without vertex v; indices above v shift down by one."""
        self._check_vertex(v)
        if self.__order == 1:
            raise GraphError("cannot delete the only vertex")
        keep = [u for u in range(self.__order) if u != v]
        return self.induced_subgraph(keep)

    def induced_subgraph(self, vertices: Iterable[int]) -> "Graph":
        """Subgraph induced by ``vertices``, relabeled in increasing index order."""
        keep = sorted(set(vertices))
        if not keep:
            raise GraphError("induced subgraph needs at least one vertex")
        for v in keep:
            self._check_vertex(v)
        position = {v: i for i, v in enumerate(keep)}
        rows = []
        for v in keep:
            row = 0
            for u in iter_bits(self.__adj[v]):
                if u in position:
                    row |= 1 << position[u]
            rows.append(row)
        return Graph(len(keep), rows)

    def permute(self, perm: Sequence[int]) -> "Graph":
        """Relabel vertices: old vertex v becomes perm[v]."""
        n = self.__order
        if sorted(perm) != list(range(n)):
            raise GraphError(f"not a permutation of 0..{n - 1}")
        rows = [0] * n
        for v, row in enumerate(self.__adj):
            new_row = 0
            for u in iter_bits(row):
                new_row |= 1 << perm[u]
            rows[perm[v]] = new_row
        return Graph(n, rows)

    def complement(self) -> "Graph":
        full = (1 << self.__order) - 1
        return Graph(self.__order, [full & ~row & ~(1 << i) for i, row in enumerate(self.__adj)])

    # Conversions
    def adjacency_matrix(self) -> np.ndarray:
        """Dense float adjacency matrix A(G)."""
        n = self.__order
        matrix = np.zeros((n, n), dtype=float)
        for u, v in self.edges():
            matrix[u, v] = 1.0
            matrix[v, u] = 1.0
        return matrix

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.__order))
        g.add_edges_from(self.edges())
        return g

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        """Build a Graph from a networkx graph, labeling nodes in sorted order."""
        nodes = sorted(g.nodes())
        index = {node: i for i, node in enumerate(nodes)}
        return cls.from_edges(len(nodes), ((index[a], index[b]) for a, b in g.edges()))

    def __eq__(self, other) -> bool:
        """Identical adjacency rows (labeled equality, not isomorphism)."""
        if not isinstance(other, Graph):
            return NotImplemented
        return self.__order == other.__order and self.__adj == other.__adj

    def __hash__(self) -> int:
        return self.__hash

    def __str__(self) -> str:
        return f"Graph(n={self.__order}, m={self.edge_count()})"

    def __repr__(self) -> str:
        return f"Graph(order={self.__order}, edges={self.edges()})"


class CanonicalForm:
    """Isomorphism-invariant fingerprint of a graph.

    The bytes are the order followed by the upper triangle of the
    canonically relabeled adjacency matrix, packed row by row.

    Attributes:
        __data (bytes): Order-prefixed canonical upper-triangle bit string
    """

    __slots__ = ("__data",)

    def __init__(self, data: bytes):
        self.__data = bytes(data)

    @classmethod
    def from_canonical_rows(cls, rows: Sequence[int]) -> "CanonicalForm":
        """Pack canonically relabeled adjacency rows."""
        n = len(rows)
        bits = 0
        count = 0
        for i in range(n):
            upper = rows[i] >> (i + 1)
            for j in range(n - i - 1):
                bits = (bits << 1) | ((upper >> j) & 1)
                count += 1
        pad = (-count) % 8
        packed = (bits << pad).to_bytes((count + pad) // 8, "big") if count else b""
        return cls(bytes([n]) + packed)

    def get_bytes(self) -> bytes:
        return self.__data

    def get_order(self) -> int:
        return self.__data[0]

    def to_graph(self) -> Graph:
        """Rebuild the canonically labeled representative."""
        n = self.__data[0]
        bits = int.from_bytes(self.__data[1:], "big") if len(self.__data) > 1 else 0
        total = (len(self.__data) - 1) * 8
        pos = 0
        edges = []
        for i in range(n):
            for j in range(i + 1, n):
                if (bits >> (total - 1 - pos)) & 1:
                    edges.append((i, j))
                pos += 1
        return Graph.from_edges(n, edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CanonicalForm):
            return NotImplemented
        return self.__data == other.__data

    def __lt__(self, other: "CanonicalForm") -> bool:
        return self.__data < other.__data

    def __hash__(self) -> int:
        return hash(self.__data)

    def __str__(self) -> str:
        return self.__data.hex()

    def __repr__(self) -> str:
        return f"CanonicalForm({self.__data.hex()})"


# Graph combinations
def disjoint_union(a: Graph, b: Graph) -> Graph:
    """Vertices of b follow those of a."""
    n, m = a.get_order(), b.get_order()
    if n + m > MAX_ORDER:
        raise GraphError(f"combined order {n + m} exceeds {MAX_ORDER}")
    rows = list(a.get_adj()) + [row << n for row in b.get_adj()]
    return Graph(n + m, rows)


def disjoint_union_many(graphs: Iterable[Graph]) -> Graph:
    graphs = list(graphs)
    if not graphs:
        raise GraphError("disjoint union of no graphs")
    result = graphs[0]
    for g in graphs[1:]:
        result = disjoint_union(result, g)
    return result


def join(a: Graph, b: Graph) -> Graph:
    """Disjoint union plus every edge between the two parts."""
    n, m = a.get_order(), b.get_order()
    union = disjoint_union(a, b)
    left = (1 << n) - 1
    right = ((1 << m) - 1) << n
    rows = [row | right if i < n else row | left for i, row in enumerate(union.get_adj())]
    return Graph(n + m, rows)


def contract_edge(g: Graph, u: int, v: int) -> Graph:
    """Merge v into u along edge uv; v is deleted and indices above it shift down."""
    if not g.has_edge(u, v):
        raise GraphError(f"edge ({u}, {v}) not present")
    rows = list(g.get_adj())
    merged = (rows[u] | rows[v]) & ~(1 << u) & ~(1 << v)
    for w in iter_bits(rows[v]):
        rows[w] &= ~(1 << v)
    for w in iter_bits(merged):
        rows[w] |= 1 << u
    rows[u] = merged
    rows[v] = 0
    return Graph(g.get_order(), rows).delete_vertex(v)


def spanning_tree(g: Graph, root: int = 0) -> Graph:
    """Breadth-first spanning tree of a connected graph, same vertex labels."""
    if not g.is_connected():
        raise GraphError("spanning tree needs a connected graph")
    n = g.get_order()
    seen = 1 << root
    queue = deque([root])
    edges = []
    while queue:
        v = queue.popleft()
        for u in iter_bits(g.get_adj()[v] & ~seen):
            seen |= 1 << u
            edges.append((v, u))
            queue.append(u)
    return Graph.from_edges(n, edges)
