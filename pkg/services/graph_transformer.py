"""
GraphTransformer service: subdivision, grafting, Perron-guided rewiring,
internal-path detection, branch-path structure of trees and the B(n,s,t)
reduction steps.

Fresh vertices are always appended at the highest indices, in path order.
"""

import logging
from typing import Iterable, List, Optional, Tuple

from models.errors import NotATreeError, TransformError
from models.graph import MAX_ORDER, Graph, bits_to_mask, iter_bits
from models.internal_path import InternalPath

logger = logging.getLogger(__name__)

BstParams = Tuple[int, int, int]


def _check_room(g: Graph, extra: int) -> None:
    if g.get_order() + extra > MAX_ORDER:
        raise TransformError(f"result would have {g.get_order() + extra} vertices, cap is {MAX_ORDER}")


class GraphTransformer:
    """Graph surgeries used by the extremal arguments."""

    # Subdivision and grafting
    def subdivide(self, g: Graph, u: int, v: int, k: int = 1) -> Graph:
        """Replace edge uv by the path u, w1, ..., wk, v through k fresh vertices.

        Raises:
            TransformError: If uv is missing, k < 1 or the order would exceed 64
        """
        if k < 1:
            raise TransformError(f"subdivision needs k >= 1, got {k}")
        if not g.has_edge(u, v):
            raise TransformError(f"edge ({u}, {v}) not present")
        _check_room(g, k)
        n = g.get_order()
        edges = [e for e in g.edges() if set(e) != {u, v}]
        chain = [u] + list(range(n, n + k)) + [v]
        edges.extend(zip(chain, chain[1:]))
        return Graph.from_edges(n + k, edges)

    def graft_paths(self, g: Graph, v: int, k: int, m: int) -> Graph:
        """Attach pendant paths v-v1-...-vk and v-u1-...-um (k >= m >= 0)."""
        if not k >= m >= 0:
            raise TransformError(f"grafting needs k >= m >= 0, got k={k}, m={m}")
        g.get_row(v)
        _check_room(g, k + m)
        n = g.get_order()
        edges = g.edges()
        nxt = n
        for length in (k, m):
            prev = v
            for _ in range(length):
                edges.append((prev, nxt))
                prev = nxt
                nxt += 1
        return Graph.from_edges(n + k + m, edges)

    def attach_p3(self, g: Graph, v: int) -> Graph:
        """Join a fresh 2-path to v by one edge (v - a - b)."""
        return self.graft_paths(g, v, 2, 0)

    # Rewiring
    def rewire(self, g: Graph, u: int, v: int, moved: Iterable[int]) -> Graph:
        """Move the edges v-w (w in moved) to u-w.

        Raises:
            TransformError: If u == v, u is in moved, or some w is not a
                neighbor of v or already a neighbor of u
        """
        moved = sorted(set(moved))
        if u == v:
            raise TransformError("rewire needs two distinct vertices")
        g.get_row(u)
        g.get_row(v)
        if u in moved:
            raise TransformError(f"vertex {u} cannot be moved onto itself")
        for w in moved:
            if not g.has_edge(v, w):
                raise TransformError(f"{w} is not a neighbor of {v}")
            if g.has_edge(u, w):
                raise TransformError(f"{w} is already a neighbor of {u}")
        if not moved:
            return g
        rows = list(g.get_adj())
        mask = bits_to_mask(moved)
        rows[v] &= ~mask
        rows[u] |= mask
        for w in moved:
            rows[w] = (rows[w] & ~(1 << v)) | (1 << u)
        return Graph(g.get_order(), rows)

    # Internal paths
    def internal_paths(self, g: Graph) -> List[InternalPath]:
        """All maximal internal paths, each reported once.

        Open paths run from the smaller end index; closed paths start and
        end at their branch vertex and run towards the smaller neighbor.
        """
        adj = g.get_adj()
        deg = g.degree_sequence()
        seen = set()
        paths = []
        for a in range(g.get_order()):
            if deg[a] < 3:
                continue
            for b in iter_bits(adj[a]):
                walk = [a, b]
                prev, cur = a, b
                while deg[cur] == 2:
                    nxt = (adj[cur] & ~(1 << prev)).bit_length() - 1
                    walk.append(nxt)
                    prev, cur = cur, nxt
                if deg[cur] < 3:
                    continue
                back = walk[::-1]
                if walk[0] == walk[-1]:
                    key = tuple(walk) if walk[1] <= back[1] else tuple(back)
                else:
                    key = tuple(walk) if walk[0] < walk[-1] else tuple(back)
                if key not in seen:
                    seen.add(key)
                    paths.append(InternalPath(key))
        paths.sort(key=lambda p: (p.get_ends(), p.get_vertices()))
        return paths

    def is_internal_path_edge(self, g: Graph, u: int, v: int) -> bool:
        """True if edge uv lies on some internal path."""
        target = {u, v}
        return any(set(e) == target for p in self.internal_paths(g) for e in p.edges())

    # Tree structure
    @staticmethod
    def _require_tree(g: Graph) -> None:
        if not g.is_tree():
            raise NotATreeError(f"{g} is not a tree")

    def branch_paths(self, g: Graph, v: int) -> List[Tuple[int, ...]]:
        """Pendant paths hanging at v, vertices listed outward from v, longest first."""
        adj = g.get_adj()
        deg = g.degree_sequence()
        result = []
        for w in iter_bits(g.get_row(v)):
            path = [w]
            prev, cur = v, w
            while deg[cur] == 2:
                nxt = (adj[cur] & ~(1 << prev)).bit_length() - 1
                if nxt == v:
                    break
                path.append(nxt)
                prev, cur = cur, nxt
            if deg[cur] == 1:
                result.append(tuple(path))
        result.sort(key=lambda p: (-len(p), p))
        return result

    def end_branch_vertices(self, tree: Graph) -> List[int]:
        """Branch vertices whose removal leaves at most one component holding a branch vertex."""
        self._require_tree(tree)
        branch = tree.branch_vertices()
        branch_mask = bits_to_mask(branch)
        full = (1 << tree.get_order()) - 1
        ends = []
        for v in sorted(branch):
            within = full & ~(1 << v)
            holding = 0
            for w in iter_bits(tree.get_row(v)):
                if tree.component_mask(w, within) & branch_mask:
                    holding += 1
            if holding <= 1:
                ends.append(v)
        return ends

    def is_b_family(self, tree: Graph) -> Optional[BstParams]:
        """Return (n, s, t) if the tree is B(n, s, t) with exactly one branch vertex, else None."""
        self._require_tree(tree)
        branch = tree.branch_vertices()
        if len(branch) != 1:
            return None
        (center,) = branch
        paths = self.branch_paths(tree, center)
        rest = paths[1:]
        if any(len(p) > 2 for p in rest):
            return None
        s = sum(1 for p in rest if len(p) == 1)
        t = sum(1 for p in rest if len(p) == 2)
        return tree.get_order(), s, t

    def move_pendant_p3(self, tree: Graph, leaf: int, target: int) -> Graph:
        """Cut the pendant 2-path-plus-one ending at ``leaf`` and hang it from ``target``.

        With leaf z, its neighbor y and y's other neighbor x (both of degree
        2), the edge from x to its remaining neighbor is replaced by x-target.
        """
        self._require_tree(tree)
        if tree.degree(leaf) != 1:
            raise TransformError(f"vertex {leaf} is not a leaf")
        (y,) = tree.neighbors(leaf)
        if tree.degree(y) != 2:
            raise TransformError(f"vertex {y} next to the leaf has degree {tree.degree(y)}")
        (x,) = [w for w in tree.neighbors(y) if w != leaf]
        if tree.degree(x) != 2:
            raise TransformError(f"vertex {x} has degree {tree.degree(x)}, the P3 is not pendant")
        (w,) = [u for u in tree.neighbors(x) if u != y]
        if target in (x, y, leaf):
            raise TransformError("target lies on the moved P3")
        if target == w:
            return tree
        return tree.delete_edge(x, w).add_edge(x, target)

    def collapse_branch_paths(self, tree: Graph) -> Graph:
        """Move P3 pieces from the shorter branch paths onto the longest one until each short path has at most 2 vertices.

        Only trees with a single branch vertex are accepted.
        """
        self._require_tree(tree)
        if len(tree.branch_vertices()) != 1:
            raise TransformError("collapse needs exactly one branch vertex")
        current = tree
        while True:
            branch = current.branch_vertices()
            if len(branch) != 1:
                return current
            (center,) = branch
            paths = self.branch_paths(current, center)
            donors = [p for p in paths[1:] if len(p) >= 3]
            if not donors:
                return current
            current = self.move_pendant_p3(current, donors[0][-1], paths[0][-1])

    # B(n, s, t) reductions
    def bst_reduce(self, params: BstParams) -> BstParams:
        """One reduction step chosen by s.

        s = 0: (s+1, t-2); s = 1: (s-1, t-1); s >= 2: (s-2, t+1).

        Raises:
            TransformError: If no rule applies or the result is not a B(n,s,t)
        """
        n, s, t = params
        if s < 0 or t < 0 or s + 2 * t < 2 or n - s - 2 * t < 1:
            raise TransformError(f"no reduction applies to B{params}")
        if s == 0:
            if t < 2:
                raise TransformError(f"rule for s = 0 needs t >= 2, got t={t}")
            result = (n, 1, t - 2)
        elif s == 1:
            if t < 1:
                raise TransformError(f"rule for s = 1 needs t >= 1, got t={t}")
            result = (n, 0, t - 1)
        else:
            result = (n, s - 2, t + 1)
        if result[1] + result[2] < 1:
            raise TransformError(f"reduction of B{params} leaves no pendant piece")
        return result

    def bst_chain(self, params: BstParams) -> List[BstParams]:
        """Apply bst_reduce until s + 2t < 6; the start and every step are listed."""
        chain = [tuple(params)]
        while chain[-1][1] + 2 * chain[-1][2] >= 6:
            chain.append(self.bst_reduce(chain[-1]))
        logger.debug("bst chain from %s has %d steps", params, len(chain) - 1)
        return chain
