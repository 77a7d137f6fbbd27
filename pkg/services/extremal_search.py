"""
ExtremalSearch service: exhaustive search for the graphs of minimum (or
maximum) spectral radius among the connected graphs, or trees, of order n
with dissociation number k.

Every class member is screened with the dense eigensolver; members within
the tie gap of the extreme value are recomputed by power iteration at the
configured tolerance. Numeric ties are kept as co-extremizers and checked
against exact characteristic polynomials.
"""

import logging
import math
import time
from typing import List, Optional

import pandas as pd

from app.data.graph6 import from_graph6
from models.config import Config
from models.enum_stream import EnumStream
from models.extremal_report import ExtremalReport, Minimizer
from models.verification_result import VerificationResult
from services.canonical_labeler import CanonicalLabeler
from services.family_builder import FamilyBuilder
from services.graph_enumerator import GraphEnumerator
from services.spectral_analyzer import SpectralAnalyzer, dense_spectral_radius

logger = logging.getLogger(__name__)

SEARCH_MODES = ("connected", "trees")
# accuracy margin of the dense eigensolver during screening
_SCREEN_SLACK = 1e-9


def tree_restriction_holds(n: int, k: int) -> bool:
    """True when every minimizer of the class is known to be a tree (k > ceil(2n/3))."""
    return k > math.ceil(2 * n / 3)


class ExtremalSearch:
    """Runs spectral extremal searches over enumerated classes."""

    def __init__(self, config: Optional[Config] = None, enumerator: Optional[GraphEnumerator] = None,
                 analyzer: Optional[SpectralAnalyzer] = None, families: Optional[FamilyBuilder] = None,
                 labeler: Optional[CanonicalLabeler] = None):
        """Initialize the search with shared services.

        Args:
            config: Runtime configuration
            enumerator: Class generator (a fresh one if None)
            analyzer: Spectral engine (a fresh one if None)
            families: Family matcher (a fresh one if None)
            labeler: Canonical labeler shared with the family matcher
        """
        self._config = config or Config()
        self._enumerator = enumerator or GraphEnumerator(self._config)
        self._analyzer = analyzer or SpectralAnalyzer(self._config)
        self._labeler = labeler or CanonicalLabeler()
        self._families = families or FamilyBuilder(self._labeler)

    def get_enumerator(self) -> GraphEnumerator:
        return self._enumerator

    def get_families(self) -> FamilyBuilder:
        return self._families

    def class_members(self, n: int, k: int, mode: str = "connected") -> EnumStream:
        """The enumerated class of order n and dissociation number k."""
        if mode not in SEARCH_MODES:
            raise ValueError(f"mode must be one of {SEARCH_MODES}, got {mode!r}")
        stream = self._enumerator.stream(mode, n)
        return self._enumerator.filter_by_diss(stream, k)

    def min_rho_search(self, n: int, k: int, mode: str = "connected") -> ExtremalReport:
        """Graphs of minimum spectral radius in the class.

        Raises:
            OrderCapError: If n exceeds the enumeration cap of the mode
        """
        return self._search(n, k, mode, "min")

    def max_rho_search(self, n: int, k: int, mode: str = "connected") -> ExtremalReport:
        """Graphs of maximum spectral radius in the class."""
        return self._search(n, k, mode, "max")

    def _notes(self, n: int, k: int, mode: str) -> List[str]:
        notes = []
        if k == n:
            notes.append("diss = n forces maximum degree <= 1; only K1 and K2 are connected")
        if mode == "trees":
            if tree_restriction_holds(n, k):
                notes.append(f"tree restriction justified: k={k} > ceil(2n/3)={math.ceil(2 * n / 3)}")
            else:
                notes.append(f"tree restriction exploratory: k={k} <= ceil(2n/3)={math.ceil(2 * n / 3)}")
        return notes

    def _search(self, n: int, k: int, mode: str, objective: str) -> ExtremalReport:
        started = time.perf_counter()
        tol = self._config.get_tol()
        if mode not in SEARCH_MODES:
            raise ValueError(f"mode must be one of {SEARCH_MODES}, got {mode!r}")
        notes = self._notes(n, k, mode)
        if not 1 <= k <= n:
            notes.append(f"k={k} is outside 1..n")
            return ExtremalReport(n, k, mode, objective, None, [], 0, tol,
                                  (time.perf_counter() - started) * 1000, notes=notes)
        members = self.class_members(n, k, mode)
        graphs = list(members)
        lines = members.get_lines()
        if not graphs:
            logger.info("class n=%d k=%d (%s) is empty", n, k, mode)
            return ExtremalReport(n, k, mode, objective, None, [], 0, tol,
                                  (time.perf_counter() - started) * 1000, notes=notes)

        sign = 1.0 if objective == "min" else -1.0
        screened = [sign * dense_spectral_radius(g) for g in graphs]
        best_screen = min(screened)
        gap = self._config.get_tie_gap()
        candidates = [i for i, value in enumerate(screened) if value <= best_screen + gap + _SCREEN_SLACK]
        refined = {i: self._analyzer.rho(graphs[i], tol) for i in candidates}
        extreme = min(sign * rho for rho in refined.values())
        winners = [i for i in candidates if abs(sign * refined[i] - extreme) <= gap]
        logger.info("n=%d k=%d (%s, %s): %d classes, %d screened candidates, %d extremizers",
                    n, k, mode, objective, len(graphs), len(candidates), len(winners))

        near_tie = len(winners) > 1
        tie_confirmed = None
        if near_tie:
            first = graphs[winners[0]]
            tie_confirmed = all(self._analyzer.confirm_tie(first, graphs[i]) for i in winners[1:])
            notes.append(f"{len(winners)} graphs within tie gap {gap}; "
                         f"characteristic polynomials {'agree' if tie_confirmed else 'differ'}")

        minimizers = [
            Minimizer(lines[i], refined[i], self._families.match(graphs[i]), graphs[i].is_tree())
            for i in winners
        ]
        runtime_ms = (time.perf_counter() - started) * 1000
        return ExtremalReport(n, k, mode, objective, sign * extreme, minimizers, len(graphs), tol,
                              runtime_ms, near_tie, tie_confirmed, notes)

    def max_rho_check(self, n: int, k: int) -> VerificationResult:
        """Confirm that the maximizer over the connected class is K_{n-k} joined with a matching.

        Raises:
            OrderCapError: If n exceeds the connected enumeration cap
        """
        report = self.max_rho_search(n, k, "connected")
        expected_spec = f"J({n},{k})"
        if k == n:
            passed = None
            message = "degenerate class diss = n, not judged"
        elif report.is_empty():
            passed = False
            message = "class is empty"
        else:
            expected = self._families.join_maximizer(n, k)
            found = from_graph6(report.get_minimizers()[0].get_graph6())
            passed = report.is_unique() and self._labeler.is_isomorphic(found, expected)
            message = "" if passed else "maximizer differs from the join form"
        rows = [{
            "n": n, "k": k, "class_size": report.get_class_size(), "rho": report.get_min_rho(),
            "found": ";".join(m.get_graph6() for m in report.get_minimizers()),
            "expected": expected_spec, "passed": passed,
        }]
        counterexample = None
        if passed is False and report.get_minimizers():
            counterexample = report.get_minimizers()[0].get_graph6()
        return VerificationResult("max_join", passed is not False, pd.DataFrame(rows),
                                  counterexample, message, report.get_notes())

