"""
CanonicalLabeler service: isomorphism-invariant relabeling of graphs.
Equitable partition refinement followed by individualization branching,
with the search pruned by automorphisms found at equal leaves.
"""

import logging
from typing import List, Optional, Sequence, Tuple

from models.graph import CanonicalForm, Graph, iter_bits

logger = logging.getLogger(__name__)

Cells = List[List[int]]


class Labeling:
    """Result of one canonical labeling run.

    Attributes:
        order (List[int]): order[i] is the vertex placed at canonical position i
        rows (Tuple[int, ...]): Adjacency rows of the canonically relabeled graph
        root_cells (List[List[int]]): Equitable partition before any branching
    """

    __slots__ = ("order", "rows", "root_cells")

    def __init__(self, order: List[int], rows: Tuple[int, ...], root_cells: Cells):
        self.order = order
        self.rows = rows
        self.root_cells = root_cells

    def position_of(self) -> List[int]:
        """Inverse of ``order``: position_of()[v] is the canonical position of v."""
        pos = [0] * len(self.order)
        for i, v in enumerate(self.order):
            pos[v] = i
        return pos

    def cell_index(self) -> List[int]:
        """Index of the root cell holding each vertex."""
        index = [0] * len(self.order)
        for c, cell in enumerate(self.root_cells):
            for v in cell:
                index[v] = c
        return index


def _refine(adj: Sequence[int], cells: Cells) -> Cells:
    """Split cells until every vertex in a cell sees each cell equally often."""
    while True:
        masks = []
        for cell in cells:
            mask = 0
            for v in cell:
                mask |= 1 << v
            masks.append(mask)
        refined: Cells = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                refined.append(cell)
                continue
            groups = {}
            for v in cell:
                row = adj[v]
                signature = tuple((row & m).bit_count() for m in masks)
                groups.setdefault(signature, []).append(v)
            if len(groups) == 1:
                refined.append(cell)
            else:
                split = True
                for signature in sorted(groups):
                    refined.append(groups[signature])
        cells = refined
        if not split:
            return cells


def _relabeled_rows(adj: Sequence[int], order: Sequence[int]) -> Tuple[int, ...]:
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    rows = []
    for v in order:
        row = 0
        for u in iter_bits(adj[v]):
            row |= 1 << pos[u]
        rows.append(row)
    return tuple(rows)


class _Search:
    """Branching state for one labeling run."""

    def __init__(self, adj: Sequence[int], n: int):
        self.adj = adj
        self.n = n
        self.first_order: Optional[List[int]] = None
        self.first_rows: Optional[Tuple[int, ...]] = None
        self.best_order: Optional[List[int]] = None
        self.best_rows: Optional[Tuple[int, ...]] = None
        self.automorphisms: List[List[int]] = []

    def _record_automorphism(self, source: Sequence[int], target: Sequence[int]) -> None:
        perm = [0] * self.n
        for a, b in zip(source, target):
            perm[a] = b
        if any(perm[v] != v for v in range(self.n)):
            self.automorphisms.append(perm)

    def _leaf(self, cells: Cells) -> None:
        order = [cell[0] for cell in cells]
        rows = _relabeled_rows(self.adj, order)
        if self.first_rows is None:
            self.first_order, self.first_rows = order, rows
            self.best_order, self.best_rows = order, rows
            return
        if rows == self.first_rows:
            self._record_automorphism(self.first_order, order)
        elif rows == self.best_rows:
            self._record_automorphism(self.best_order, order)
        elif rows > self.best_rows:
            self.best_order, self.best_rows = order, rows

    def _same_orbit_as_tried(self, v: int, tried: List[int], prefix: List[int]) -> bool:
        # orbits of the subgroup found so far that fixes the prefix pointwise
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for perm in self.automorphisms:
            if all(perm[p] == p for p in prefix):
                for a in range(self.n):
                    ra, rb = find(a), find(perm[a])
                    if ra != rb:
                        parent[ra] = rb
        root = find(v)
        return any(find(t) == root for t in tried)

    def visit(self, cells: Cells, prefix: List[int]) -> None:
        if len(cells) == self.n:
            self._leaf(cells)
            return
        # target cell: first smallest non-singleton cell
        target = min((i for i, c in enumerate(cells) if len(c) > 1), key=lambda i: (len(cells[i]), i))
        tried: List[int] = []
        for v in sorted(cells[target]):
            if tried and self.automorphisms and self._same_orbit_as_tried(v, tried, prefix):
                continue
            tried.append(v)
            rest = [u for u in cells[target] if u != v]
            child = cells[:target] + [[v], rest] + cells[target + 1:]
            self.visit(_refine(self.adj, child), prefix + [v])


class CanonicalLabeler:
    """Computes canonical forms and isomorphism tests for Graph objects."""

    def labeling(self, g: Graph, colors: Optional[Sequence[int]] = None) -> Labeling:
        """Compute a canonical labeling.

        Args:
            g: Graph to label
            colors: Optional vertex colors; an isomorphism must preserve them
                and cells are ordered by color value

        Returns:
            Labeling: Canonical vertex order, relabeled rows and root partition
        """
        n = g.get_order()
        adj = g.get_adj()
        if colors is None:
            cells: Cells = [list(range(n))]
        else:
            by_color = {}
            for v in range(n):
                by_color.setdefault(colors[v], []).append(v)
            cells = [by_color[c] for c in sorted(by_color)]
        root = _refine(adj, cells)
        search = _Search(adj, n)
        search.visit(root, [])
        return Labeling(search.best_order, search.best_rows, root)

    def canonical_form(self, g: Graph) -> CanonicalForm:
        """Isomorphism-invariant form of g."""
        return CanonicalForm.from_canonical_rows(self.labeling(g).rows)

    def canonical_graph(self, g: Graph) -> Graph:
        """The canonically relabeled copy of g."""
        return Graph(g.get_order(), self.labeling(g).rows)

    def is_isomorphic(self, a: Graph, b: Graph) -> bool:
        if a.get_order() != b.get_order() or a.edge_count() != b.edge_count():
            return False
        if sorted(a.degree_sequence()) != sorted(b.degree_sequence()):
            return False
        return self.labeling(a).rows == self.labeling(b).rows

    def marked_rows(self, g: Graph, v: int) -> Tuple[int, ...]:
        """Canonical rows of g with vertex v individualized first."""
        colors = [1] * g.get_order()
        colors[v] = 0
        return self.labeling(g, colors).rows

    def same_orbit(self, g: Graph, u: int, v: int) -> bool:
        """True if some automorphism of g maps u to v."""
        if u == v:
            return True
        if g.degree(u) != g.degree(v):
            return False
        return self.marked_rows(g, u) == self.marked_rows(g, v)


_default_labeler = CanonicalLabeler()


def canonical_form(g: Graph) -> CanonicalForm:
    return _default_labeler.canonical_form(g)


def is_isomorphic(a: Graph, b: Graph) -> bool:
    return _default_labeler.is_isomorphic(a, b)
