"""
FamilyBuilder service: constructors for the named graph families and
recognition of a graph as a family member.

Vertex labelings are deterministic: centers and path spines come first,
pendant vertices last. For G1..G4 index 0 is v1, 1 is v2, 2 is v3 and 3 is
v4 (when present); then r leaves at v1, s pendant 2-paths at v1 (middle
vertex before end vertex), p leaves at v2 and q pendant 2-paths at v2.
"""

import logging
from typing import Dict, Iterator, List, Optional, Tuple

from models.errors import FamilyParameterError
from models.family_spec import FamilyKind, FamilySpec
from models.graph import MAX_ORDER, CanonicalForm, Graph, join
from services.canonical_labeler import CanonicalLabeler

logger = logging.getLogger(__name__)

_SMITH_KINDS = (
    FamilyKind.WN, FamilyKind.E6, FamilyKind.E7, FamilyKind.E8,
    FamilyKind.WTILDE, FamilyKind.E6T, FamilyKind.E7T, FamilyKind.E8T,
)

# match preference when several families describe the same graph
_MATCH_ORDER = (
    FamilyKind.PATH, FamilyKind.CYCLE, FamilyKind.STAR, FamilyKind.SRT, FamilyKind.HN,
    FamilyKind.WN, FamilyKind.E6, FamilyKind.E7, FamilyKind.E8,
    FamilyKind.WTILDE, FamilyKind.E6T, FamilyKind.E7T, FamilyKind.E8T,
    FamilyKind.BNST, FamilyKind.G1, FamilyKind.G2, FamilyKind.G3, FamilyKind.G4,
    FamilyKind.BALANCED_MULTIPARTITE, FamilyKind.JOIN_MAXIMIZER,
)


class _Builder:
    """Accumulates edges while vertices are appended in labeling order."""

    def __init__(self):
        self.order = 0
        self.edges: List[Tuple[int, int]] = []

    def vertex(self, attach_to: Optional[int] = None) -> int:
        v = self.order
        self.order += 1
        if attach_to is not None:
            self.edges.append((attach_to, v))
        return v

    def path(self, length: int) -> List[int]:
        vertices = []
        for _ in range(length):
            vertices.append(self.vertex(vertices[-1] if vertices else None))
        return vertices

    def leaves(self, at: int, count: int) -> None:
        for _ in range(count):
            self.vertex(at)

    def two_paths(self, at: int, count: int) -> None:
        for _ in range(count):
            middle = self.vertex(at)
            self.vertex(middle)

    def build(self) -> Graph:
        if self.order > MAX_ORDER:
            raise FamilyParameterError(f"family order {self.order} exceeds {MAX_ORDER}")
        return Graph.from_edges(self.order, self.edges)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise FamilyParameterError(message)


class FamilyBuilder:
    """Builds family members and matches graphs against the families."""

    def __init__(self, labeler: CanonicalLabeler = None):
        """Initialize with an optional shared labeler.

        Args:
            labeler: CanonicalLabeler used by matching (a new one if None)
        """
        self._labeler = labeler or CanonicalLabeler()
        self._match_cache: Dict[int, Dict[CanonicalForm, FamilySpec]] = {}

    # Basic graphs
    def path(self, n: int) -> Graph:
        """P_n on vertices 0..n-1 in path order."""
        _require(1 <= n <= MAX_ORDER, f"path needs 1 <= n <= {MAX_ORDER}, got {n}")
        b = _Builder()
        b.path(n)
        return b.build()

    def cycle(self, n: int) -> Graph:
        _require(3 <= n <= MAX_ORDER, f"cycle needs 3 <= n <= {MAX_ORDER}, got {n}")
        return self.path(n).add_edge(n - 1, 0)

    def star(self, n: int) -> Graph:
        """S_n: center 0 joined to leaves 1..n-1."""
        _require(1 <= n <= MAX_ORDER, f"star needs 1 <= n <= {MAX_ORDER}, got {n}")
        b = _Builder()
        center = b.vertex()
        b.leaves(center, n - 1)
        return b.build()

    def s_rt(self, r: int, t: int) -> Graph:
        """S(r,t): center 0, r leaves, then t pendant 2-paths."""
        _require(r >= 0 and t >= 0, f"S(r,t) needs r, t >= 0, got ({r}, {t})")
        _require(r + t >= 1, "S(r,t) needs r + t >= 1")
        b = _Builder()
        center = b.vertex()
        b.leaves(center, r)
        b.two_paths(center, t)
        return b.build()

    def h_n(self, n: int) -> Graph:
        """H(n) as a member of the G3 family.

        Even n: G3(0, ceil((n-4)/4), 0, floor((n-4)/4)).
        Odd n: G3(0, ceil((n-5)/4), 1, floor((n-5)/4)), the extra leaf on the
        branch vertex carrying fewer pendant 2-paths.
        """
        _require(8 <= n <= MAX_ORDER, f"H(n) needs n >= 8, got {n}")
        if n % 2 == 0:
            half = n - 4
            return self.g_family(3, 0, (half + 3) // 4, 0, half // 4)
        half = n - 5
        return self.g_family(3, 0, (half + 3) // 4, 1, half // 4)

    def b_nst(self, n: int, s: int, t: int) -> Graph:
        """B(n,s,t): spine 0..L-1 (L = n-s-2t), s leaves and t 2-paths at vertex L-1."""
        _require(s >= 0 and t >= 0, f"B(n,s,t) needs s, t >= 0, got ({s}, {t})")
        _require(s + t >= 1, "B(n,s,t) needs s + t >= 1")
        spine = n - s - 2 * t
        _require(spine >= 1, f"B({n},{s},{t}) leaves no spine vertex")
        b = _Builder()
        vertices = b.path(spine)
        b.leaves(vertices[-1], s)
        b.two_paths(vertices[-1], t)
        return b.build()

    def smith_graph(self, kind, n: Optional[int] = None) -> Graph:
        """One of W_n, E6, E7, E8, W~_n, E~6, E~7, E~8.

        Args:
            kind: FamilyKind or its name (e.g. "E8T", "W")
            n: Order for W_n (n >= 5) and W~_n (n >= 6); ignored otherwise
        """
        if isinstance(kind, str):
            kind = FamilyKind.from_name(kind)
        _require(kind in _SMITH_KINDS, f"{kind} is not a Smith-type family")
        b = _Builder()
        if kind is FamilyKind.WN:
            _require(n is not None and n >= 5, f"W_n needs n >= 5, got {n}")
            spine = b.path(n - 1)
            b.leaves(spine[1], 1)
        elif kind is FamilyKind.WTILDE:
            _require(n is not None and n >= 6, f"W~_n needs n >= 6, got {n}")
            spine = b.path(n - 2)
            b.leaves(spine[1], 1)
            b.leaves(spine[n - 4], 1)
        elif kind is FamilyKind.E6T:
            spine = b.path(5)
            b.two_paths(spine[2], 1)
        else:
            length, at = {
                FamilyKind.E6: (5, 2), FamilyKind.E7: (6, 2), FamilyKind.E8: (7, 2),
                FamilyKind.E7T: (7, 3), FamilyKind.E8T: (8, 2),
            }[kind]
            spine = b.path(length)
            b.leaves(spine[at], 1)
        return b.build()

    def g_family(self, i: int, r: int, s: int, p: int, q: int) -> Graph:
        """G_i(r,s,p,q) for i in 1..4."""
        _require(i in (1, 2, 3, 4), f"G_i needs i in 1..4, got {i}")
        _require(min(r, s, p, q) >= 0, f"G{i} parameters must be >= 0, got ({r},{s},{p},{q})")
        b = _Builder()
        v1 = b.vertex()
        v2 = b.vertex()
        if i == 1:
            b.edges.append((v1, v2))
        elif i == 2:
            b.vertex(v1)
            b.edges.append((2, v2))
        elif i == 3:
            v3 = b.vertex(v1)
            v4 = b.vertex(v3)
            b.edges.append((v4, v2))
        else:
            v3 = b.vertex(v1)
            b.edges.append((v3, v2))
            b.vertex(v3)
        b.leaves(v1, r)
        b.two_paths(v1, s)
        b.leaves(v2, p)
        b.two_paths(v2, q)
        return b.build()

    def balanced_multipartite(self, n: int) -> Graph:
        """Complete multipartite graph with parts {0,1}, {2,3}, ... (last part single if n odd)."""
        _require(2 <= n <= MAX_ORDER, f"balanced multipartite needs n >= 2, got {n}")
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if u // 2 != v // 2]
        return Graph.from_edges(n, edges)

    def join_maximizer(self, n: int, k: int) -> Graph:
        """K_{n-k} joined with (k/2)K2, plus K1 when k is odd; clique vertices first."""
        _require(2 <= n <= MAX_ORDER, f"join maximizer needs n >= 2, got {n}")
        _require(2 <= k <= n, f"join maximizer needs 2 <= k <= n, got k={k}")
        edges = [(2 * i, 2 * i + 1) for i in range(k // 2)]
        matching = Graph.from_edges(k, edges)
        if n == k:
            return matching
        return join(Graph.complete(n - k), matching)

    # Spec dispatch
    def build(self, spec: FamilySpec) -> Graph:
        """Construct the graph a FamilySpec describes."""
        kind, params = spec.get_kind(), spec.get_params()
        if kind is FamilyKind.PATH:
            return self.path(*params)
        if kind is FamilyKind.CYCLE:
            return self.cycle(*params)
        if kind is FamilyKind.STAR:
            return self.star(*params)
        if kind is FamilyKind.SRT:
            return self.s_rt(*params)
        if kind is FamilyKind.HN:
            return self.h_n(*params)
        if kind is FamilyKind.BNST:
            return self.b_nst(*params)
        if kind in _SMITH_KINDS:
            return self.smith_graph(kind, params[0] if params else None)
        if kind in (FamilyKind.G1, FamilyKind.G2, FamilyKind.G3, FamilyKind.G4):
            return self.g_family(int(kind.name[1]), *params)
        if kind is FamilyKind.BALANCED_MULTIPARTITE:
            return self.balanced_multipartite(*params)
        return self.join_maximizer(*params)

    def parse_and_build(self, text: str) -> Graph:
        return self.build(FamilySpec.parse(text))

    # Recognition
    def parameter_grid(self, n: int) -> Iterator[FamilySpec]:
        """Every FamilySpec whose graph has exactly n vertices, in match preference order."""
        for kind in _MATCH_ORDER:
            yield from self._grid_for(kind, n)

    def _grid_for(self, kind: FamilyKind, n: int) -> Iterator[FamilySpec]:
        if kind is FamilyKind.PATH:
            yield FamilySpec(kind, [n])
        elif kind is FamilyKind.CYCLE and n >= 3:
            yield FamilySpec(kind, [n])
        elif kind is FamilyKind.STAR:
            yield FamilySpec(kind, [n])
        elif kind is FamilyKind.SRT:
            for t in range((n - 1) // 2 + 1):
                r = n - 1 - 2 * t
                if r + t >= 1:
                    yield FamilySpec(kind, [r, t])
        elif kind is FamilyKind.HN and n >= 8:
            yield FamilySpec(kind, [n])
        elif kind is FamilyKind.WN and n >= 5:
            yield FamilySpec(kind, [n])
        elif kind is FamilyKind.WTILDE and n >= 6:
            yield FamilySpec(kind, [n])
        elif kind in (FamilyKind.E6, FamilyKind.E7, FamilyKind.E8):
            if n == {FamilyKind.E6: 6, FamilyKind.E7: 7, FamilyKind.E8: 8}[kind]:
                yield FamilySpec(kind)
        elif kind in (FamilyKind.E6T, FamilyKind.E7T, FamilyKind.E8T):
            if n == {FamilyKind.E6T: 7, FamilyKind.E7T: 8, FamilyKind.E8T: 9}[kind]:
                yield FamilySpec(kind)
        elif kind is FamilyKind.BNST:
            for t in range(n // 2 + 1):
                for s in range(n - 2 * t):
                    if s + t >= 1 and n - s - 2 * t >= 1:
                        yield FamilySpec(kind, [n, s, t])
        elif kind in (FamilyKind.G1, FamilyKind.G2, FamilyKind.G3, FamilyKind.G4):
            base = {FamilyKind.G1: 2, FamilyKind.G2: 3, FamilyKind.G3: 4, FamilyKind.G4: 4}[kind]
            budget = n - base
            for s in range(budget // 2 + 1):
                for q in range((budget - 2 * s) // 2 + 1):
                    leaves = budget - 2 * s - 2 * q
                    for r in range(leaves + 1):
                        yield FamilySpec(kind, [r, s, leaves - r, q])
        elif kind is FamilyKind.BALANCED_MULTIPARTITE and n >= 2:
            yield FamilySpec(kind, [n])
        elif kind is FamilyKind.JOIN_MAXIMIZER:
            for k in range(2, n + 1):
                yield FamilySpec(kind, [n, k])

    def _forms_for_order(self, n: int) -> Dict[CanonicalForm, FamilySpec]:
        if n not in self._match_cache:
            forms: Dict[CanonicalForm, FamilySpec] = {}
            for spec in self.parameter_grid(n):
                form = self._labeler.canonical_form(self.build(spec))
                forms.setdefault(form, spec)
            logger.debug("family grid at n=%d: %d distinct graphs", n, len(forms))
            self._match_cache[n] = forms
        return self._match_cache[n]

    def match(self, g: Graph) -> Optional[FamilySpec]:
        """First family (in preference order) whose member is isomorphic to g."""
        return self._forms_for_order(g.get_order()).get(self._labeler.canonical_form(g))

    def is_member(self, g: Graph, spec: FamilySpec) -> bool:
        """True if g is isomorphic to the graph spec describes."""
        member = self.build(spec)
        return self._labeler.is_isomorphic(g, member)
