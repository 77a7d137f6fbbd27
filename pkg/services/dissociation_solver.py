"""
DissociationSolver service: exact dissociation numbers with three engines.

- bruteforce: subsets by descending size (order <= 24)
- exact: branch-and-bound on bitsets (any order up to 64)
- tree: rooted dynamic program, trees only

Every engine returns the lexicographically smallest maximum dissociation set
as its witness.
"""

import logging
from itertools import combinations
from typing import Iterable, Optional, Tuple

from models.diss_result import DissResult
from models.errors import NotATreeError, OrderCapError
from models.graph import Graph, bits_to_mask, iter_bits

logger = logging.getLogger(__name__)

BRUTEFORCE_MAX_ORDER = 24
_NEG = -(1 << 20)


def _is_dissociation_mask(adj, mask: int) -> bool:
    for v in iter_bits(mask):
        if (adj[v] & mask).bit_count() > 1:
            return False
    return True


def _degree_upper_bound(adj, undecided: int) -> int:
    """Largest d with m(H) <= floor(d/2) + (sum of the h-d largest degrees of H), H = G[undecided]."""
    degrees = sorted(((adj[v] & undecided).bit_count() for v in iter_bits(undecided)), reverse=True)
    h = len(degrees)
    edges = sum(degrees) // 2
    prefix = [0]
    for d in degrees:
        prefix.append(prefix[-1] + d)
    for d in range(h, -1, -1):
        if prefix[h - d] + d // 2 >= edges:
            return d
    return 0


class _BranchAndBound:
    """Search state for one branch-and-bound run."""

    def __init__(self, adj, n: int):
        self.adj = adj
        self.n = n
        self.best_size = -1
        self.best_mask = 0
        self.target: Optional[int] = None
        self.nodes = 0

    def _prune(self, included: int, undecided: int) -> int:
        """Drop undecided vertices that can no longer join the set."""
        adj = self.adj
        for v in iter_bits(undecided):
            inside = adj[v] & included
            count = inside.bit_count()
            if count >= 2:
                undecided &= ~(1 << v)
            elif count == 1:
                u = inside.bit_length() - 1
                if adj[u] & included:
                    undecided &= ~(1 << v)
        return undecided

    def _done(self) -> bool:
        return self.target is not None and self.best_size >= self.target

    def search(self, included: int, undecided: int) -> None:
        self.nodes += 1
        adj = self.adj
        undecided = self._prune(included, undecided)
        # vertices with no neighbor left in the set or the undecided pool join for free
        pool = included | undecided
        free = 0
        for v in iter_bits(undecided):
            if not adj[v] & pool:
                free |= 1 << v
        included |= free
        undecided &= ~free

        size = included.bit_count()
        if size > self.best_size:
            self.best_size = size
            self.best_mask = included
            if self._done():
                return
        if not undecided:
            return
        if size + _degree_upper_bound(adj, undecided) <= self.best_size:
            return

        branch = max(iter_bits(undecided), key=lambda v: ((adj[v] & undecided).bit_count(), -v))
        self.search(included, undecided & ~(1 << branch))
        if self._done():
            return
        self.search(included | (1 << branch), undecided & ~(1 << branch))


class DissociationSolver:
    """Computes dissociation numbers and maximum dissociation sets."""

    # Predicates
    @staticmethod
    def is_dissociation_set(g: Graph, vertices: Iterable[int]) -> bool:
        """True if the vertices induce a subgraph of maximum degree at most 1."""
        return _is_dissociation_mask(g.get_adj(), bits_to_mask(vertices))

    # Brute force
    def diss_bruteforce(self, g: Graph) -> DissResult:
        """Exhaustive search by descending subset size.

        Raises:
            OrderCapError: If the order exceeds 24
        """
        n = g.get_order()
        if n > BRUTEFORCE_MAX_ORDER:
            raise OrderCapError(f"brute force is capped at order {BRUTEFORCE_MAX_ORDER}, got {n}")
        adj = g.get_adj()
        for size in range(n, 0, -1):
            for subset in combinations(range(n), size):
                if _is_dissociation_mask(adj, bits_to_mask(subset)):
                    return DissResult(size, subset, "bruteforce")
        return DissResult(0, (), "bruteforce")

    # Branch and bound
    def _greedy(self, adj, n: int) -> int:
        chosen = 0
        for v in sorted(range(n), key=lambda x: (adj[x].bit_count(), x)):
            inside = adj[v] & chosen
            count = inside.bit_count()
            if count == 0 or (count == 1 and not adj[inside.bit_length() - 1] & chosen):
                chosen |= 1 << v
        return chosen

    def _best(self, g: Graph, included: int = 0, excluded: int = 0,
              target: Optional[int] = None) -> Tuple[int, int]:
        """Largest dissociation set containing ``included`` and avoiding ``excluded``.

        With a target the search stops as soon as a set of that size is found
        and only sets at least that large are reported.
        """
        adj = g.get_adj()
        n = g.get_order()
        if not _is_dissociation_mask(adj, included):
            return -1, 0
        search = _BranchAndBound(adj, n)
        if target is not None:
            search.target = target
            search.best_size = target - 1
        elif not included and not excluded:
            greedy = self._greedy(adj, n)
            search.best_size, search.best_mask = greedy.bit_count(), greedy
        full = (1 << n) - 1
        search.search(included, full & ~included & ~excluded)
        logger.debug("branch-and-bound on n=%d visited %d nodes", n, search.nodes)
        if target is not None and search.best_size < target:
            return -1, 0
        return search.best_size, search.best_mask

    def diss_value(self, g: Graph) -> int:
        """Dissociation number only, without the witness phase."""
        if g.is_tree():
            return self._tree_value(g.get_adj(), g.get_order())
        return self._best(g)[0]

    def diss_exact(self, g: Graph) -> DissResult:
        """Branch-and-bound value, then the lexicographically smallest witness."""
        value, _ = self._best(g)
        included = excluded = 0
        for v in range(g.get_order()):
            trial = included | (1 << v)
            if self._best(g, trial, excluded, target=value)[0] >= value:
                included = trial
            else:
                excluded |= 1 << v
        return DissResult(value, iter_bits(included), "exact")

    # Tree dynamic program
    def _tree_value(self, adj, n: int, forced_in: int = 0, forced_out: int = 0) -> int:
        parent = [-1] * n
        order = [0]
        seen = 1
        for v in order:
            for c in iter_bits(adj[v] & ~seen):
                seen |= 1 << c
                parent[c] = v
                order.append(c)
        f0 = [0] * n
        f1 = [0] * n
        f2 = [0] * n
        for v in reversed(order):
            children = [c for c in iter_bits(adj[v]) if c != parent[v]]
            out = sum(max(f0[c], f1[c], f2[c]) for c in children)
            alone = 1 + sum(f0[c] for c in children)
            # one child also in the set, that child having no other set neighbor
            matched = max((alone - f0[c] + f1[c] for c in children), default=_NEG)
            if (forced_in >> v) & 1:
                out = _NEG
            if (forced_out >> v) & 1:
                alone = matched = _NEG
            f0[v], f1[v], f2[v] = out, alone, matched
        return max(f0[0], f1[0], f2[0])

    def diss_tree(self, g: Graph) -> DissResult:
        """Linear-time dynamic program over a rooted tree.

        Raises:
            NotATreeError: If g is not a tree
        """
        if not g.is_tree():
            raise NotATreeError(f"{g} is not a tree")
        adj, n = g.get_adj(), g.get_order()
        value = self._tree_value(adj, n)
        forced_in = forced_out = 0
        for v in range(n):
            if self._tree_value(adj, n, forced_in | (1 << v), forced_out) >= value:
                forced_in |= 1 << v
            else:
                forced_out |= 1 << v
        return DissResult(value, iter_bits(forced_in), "tree")

    # Dispatch
    def diss(self, g: Graph, engine: str = "auto") -> DissResult:
        """Pick an engine: tree DP for trees, branch-and-bound otherwise.

        Args:
            g: Graph to solve
            engine: auto, bruteforce, exact or tree
        """
        if engine == "bruteforce":
            return self.diss_bruteforce(g)
        if engine == "tree" or (engine == "auto" and g.is_tree()):
            return self.diss_tree(g)
        return self.diss_exact(g)

    def min_3path_cover(self, g: Graph) -> Tuple[int, ...]:
        """Smallest vertex set meeting every path on three vertices (complement of a maximum dissociation set)."""
        witness = set(self.diss(g).get_witness())
        return tuple(v for v in range(g.get_order()) if v not in witness)
