"""
GraphEnumerator service: isomorphism-free generation of connected graphs,
free trees and all graphs of a given order, plus dissociation filtering.

Order n is built from the classes of order n - 1 by adding one vertex with
every admissible neighbor set. Two strategies remove isomorphic copies:

- canonical_deletion: a child is kept when the new vertex lies in the
  automorphism orbit of the removable vertex with the largest canonical
  position (removable: deletion keeps the mode, i.e. non-cut vertex for
  connected graphs, leaf for trees, any vertex otherwise); duplicates from
  one parent are dropped locally.
- hash_dedup: every child's canonical form goes into one global set.

Both emit the same classes sorted by canonical form.
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

from app.data.graph6 import from_graph6, to_graph6
from models.config import Config
from models.enum_stream import MODES, EnumStream
from models.errors import OrderCapError
from models.graph import CanonicalForm, Graph
from services.canonical_labeler import CanonicalLabeler, Labeling
from services.dissociation_solver import DissociationSolver
from services.graph_store import GraphStore
from services.worker_pool import chunked, parallel_map

logger = logging.getLogger(__name__)

ORDER_CAPS = {"connected": 9, "trees": 12, "all": 8}
STRATEGIES = ("canonical_deletion", "hash_dedup")
_PARENTS_PER_TASK = 64
_GRAPHS_PER_DISS_TASK = 512


def _child_masks(parent_order: int, mode: str):
    if mode == "trees":
        return [1 << i for i in range(parent_order)]
    start = 1 if mode == "connected" else 0
    return range(start, 1 << parent_order)


def _removable(child: Graph, mode: str) -> List[int]:
    """Vertices whose deletion leaves a graph of the same mode."""
    n = child.get_order()
    if mode == "trees":
        return child.leaves()
    if mode == "all":
        return list(range(n))
    full = (1 << n) - 1
    result = []
    for v in range(n):
        within = full & ~(1 << v)
        if child.component_mask(1 if v == 0 else 0, within) == within:
            result.append(v)
    return result


def _accept(child: Graph, labeling: Labeling, mode: str, labeler: CanonicalLabeler) -> bool:
    new = child.get_order() - 1
    position = labeling.position_of()
    last = max(_removable(child, mode), key=lambda v: position[v])
    if last == new:
        return True
    cells = labeling.cell_index()
    if cells[last] != cells[new]:
        return False
    return labeler.same_orbit(child, new, last)


def _extend_chunk(task: Tuple[Sequence[str], str, str]) -> List[Tuple[bytes, str]]:
    """Children of a chunk of parents as (canonical bytes, canonical graph6)."""
    lines, mode, strategy = task
    labeler = CanonicalLabeler()
    out: List[Tuple[bytes, str]] = []
    chunk_seen = set()
    for line in lines:
        parent = from_graph6(line)
        seen = chunk_seen if strategy == "hash_dedup" else set()
        for mask in _child_masks(parent.get_order(), mode):
            child = parent.add_vertex(mask)
            labeling = labeler.labeling(child)
            if labeling.rows in seen:
                continue
            if strategy == "canonical_deletion" and not _accept(child, labeling, mode, labeler):
                continue
            seen.add(labeling.rows)
            canonical = Graph(child.get_order(), labeling.rows)
            out.append((CanonicalForm.from_canonical_rows(labeling.rows).get_bytes(), to_graph6(canonical)))
    return out


def _diss_chunk(lines: Sequence[str]) -> List[int]:
    solver = DissociationSolver()
    return [solver.diss_value(from_graph6(line)) for line in lines]


class GraphEnumerator:
    """Generates class lists, caching them in memory and optionally in a GraphStore."""

    def __init__(self, config: Optional[Config] = None, store: Optional[GraphStore] = None):
        """Initialize the enumerator.

        Args:
            config: Runtime configuration (workers, progress bars)
            store: Optional on-disk class cache
        """
        self._config = config or Config()
        self._store = store
        self._cache: Dict[Tuple[str, int], EnumStream] = {}

    # Public generators
    def connected_graphs(self, n: int, strategy: str = "canonical_deletion") -> EnumStream:
        """Every connected graph of order n (n <= 9) up to isomorphism."""
        return self.stream("connected", n, strategy)

    def free_trees(self, n: int, strategy: str = "canonical_deletion") -> EnumStream:
        """Every free tree of order n (n <= 12) up to isomorphism."""
        return self.stream("trees", n, strategy)

    def all_graphs(self, n: int, strategy: str = "canonical_deletion") -> EnumStream:
        """Every graph of order n (n <= 8) up to isomorphism."""
        return self.stream("all", n, strategy)

    def stream(self, mode: str, n: int, strategy: str = "canonical_deletion") -> EnumStream:
        """Class list for (mode, n).

        Raises:
            OrderCapError: If n is outside 1..cap for the mode
        """
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
        if strategy not in STRATEGIES:
            raise ValueError(f"strategy must be one of {STRATEGIES}, got {strategy!r}")
        cap = ORDER_CAPS[mode]
        if not 1 <= n <= cap:
            raise OrderCapError(f"{mode} enumeration supports 1 <= n <= {cap}, got {n}")
        key = (mode, n)
        if key in self._cache and strategy == "canonical_deletion":
            return self._cache[key]
        stream = EnumStream(n, mode, self._generate(mode, n, strategy))
        if strategy == "canonical_deletion":
            # one order per mode stays in memory
            for other in [k for k in self._cache if k[0] == mode]:
                del self._cache[other]
            self._cache[key] = stream
        return stream

    def _generate(self, mode: str, n: int, strategy: str) -> List[str]:
        use_store = self._store is not None and strategy == "canonical_deletion"
        lines = [to_graph6(Graph.empty(1))]
        start = 2
        if use_store:
            for m in range(n, 1, -1):
                if self._store.has_classes(mode, m):
                    lines = list(self._store.load_stream(mode, m).get_lines())
                    start = m + 1
                    break
        for m in range(start, n + 1):
            lines = self._extend(lines, mode, m, strategy)
            if use_store:
                self._store.save_stream(EnumStream(m, mode, lines), strategy)
        return lines

    def _extend(self, parents: List[str], mode: str, n: int, strategy: str) -> List[str]:
        tasks = [(chunk, mode, strategy) for chunk in chunked(parents, _PARENTS_PER_TASK)]
        results = parallel_map(_extend_chunk, tasks, self._config.get_workers(),
                               desc=f"{mode} n={n}", show_progress=self._config.is_progress_shown())
        merged: Dict[bytes, str] = {}
        produced = 0
        for part in results:
            for form, line in part:
                produced += 1
                merged.setdefault(form, line)
        if strategy == "canonical_deletion" and produced != len(merged):
            logger.warning("canonical deletion produced %d duplicates at %s n=%d",
                           produced - len(merged), mode, n)
        lines = [merged[form] for form in sorted(merged)]
        logger.info("%s n=%d: %d classes (%s)", mode, n, len(lines), strategy)
        return lines

    # Dissociation filtering
    def with_diss(self, stream: EnumStream) -> EnumStream:
        """Attach dissociation numbers to every member (computed once, then cached)."""
        if stream.has_diss():
            return stream
        mode, n = stream.get_mode(), stream.get_order()
        if self._store is not None and self._store.has_diss(mode, n):
            stored = self._store.load_stream(mode, n)
            if stored.get_lines() == stream.get_lines():
                return self._remember(stored)
        tasks = chunked(list(stream.get_lines()), _GRAPHS_PER_DISS_TASK)
        parts = parallel_map(_diss_chunk, tasks, self._config.get_workers(),
                             desc=f"diss {mode} n={n}", show_progress=self._config.is_progress_shown())
        values = [v for part in parts for v in part]
        result = stream.with_diss(values)
        if self._store is not None and stream.get_diss_filter() is None and self._store.has_classes(mode, n):
            self._store.save_diss(mode, n, values)
        return self._remember(result)

    def _remember(self, stream: EnumStream) -> EnumStream:
        key = (stream.get_mode(), stream.get_order())
        cached = self._cache.get(key)
        if stream.get_diss_filter() is None and cached is not None and cached.get_lines() == stream.get_lines():
            self._cache[key] = stream
        return stream

    def filter_by_diss(self, stream: EnumStream, k: int) -> EnumStream:
        """Members of the stream with dissociation number exactly k."""
        full = self.with_diss(stream)
        lines = []
        values = []
        for line, value in zip(full.get_lines(), full.get_diss()):
            if value == k:
                lines.append(line)
                values.append(value)
        logger.info("%s n=%d: %d classes with diss=%d", stream.get_mode(), stream.get_order(), len(lines), k)
        return EnumStream(stream.get_order(), stream.get_mode(), lines, values, diss_filter=k)
