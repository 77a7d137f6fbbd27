"""
TheoremVerifier service: sweeps that check the extremal characterizations
and the spectral comparison chains for the G3 family numerically.

Each sweep returns a VerificationResult holding one table row per checked
instance; rows with passed = None are exploratory and never fail a run.
"""

import logging
import math
from typing import Dict, Iterable, List, Optional

import pandas as pd

from app.data.graph6 import from_graph6
from models.config import Config
from models.errors import OrderCapError
from models.extremal_report import ExtremalReport
from models.family_spec import FamilySpec
from models.graph import Graph
from models.verification_result import VerificationResult
from services.dissociation_solver import DissociationSolver
from services.extremal_search import ExtremalSearch, tree_restriction_holds
from services.graph_transformer import GraphTransformer
from services.spectral_analyzer import (
    SpectralAnalyzer,
    charpoly_rho1,
    charpoly_rho2,
    pendant_swap_margin,
    perron_difference_margin,
    rho_gap_cubic,
    solve_charpoly,
)

logger = logging.getLogger(__name__)

THEOREM_CASES = (
    "tree_claim", "k_n1", "k_n2", "k_n2_small", "k_ceil23", "k_floor23",
    "k_2", "max_join", "corollary1",
)

_SMALL_N2 = {5: "C(5)", 6: "P(6)", 7: "P(7)", 8: "P(8)", 9: "E8T"}
_EQUALITY_TOL = 1e-10
_CLAIM1_TOL = 1e-9
_CLOSED_FORM_TOL = 1e-8


def _summarize(case: str, rows: List[Dict], notes: Optional[List[str]] = None) -> VerificationResult:
    failed = [r for r in rows if r.get("passed") is False]
    counterexample = failed[0].get("counterexample") if failed else None
    message = f"{len(failed)} of {len(rows)} rows failed" if failed else f"{len(rows)} rows"
    return VerificationResult(case, not failed, pd.DataFrame(rows), counterexample, message, notes)


class TheoremVerifier:
    """Runs theorem and claim sweeps on top of ExtremalSearch."""

    def __init__(self, search: Optional[ExtremalSearch] = None, config: Optional[Config] = None,
                 solver: Optional[DissociationSolver] = None,
                 transformer: Optional[GraphTransformer] = None):
        """Initialize with shared services.

        Args:
            search: Extremal search engine (a fresh one if None)
            config: Runtime configuration
            solver: Dissociation engine used by the reduction-chain sweep
            transformer: Graph surgeries used by the shape checks
        """
        self._config = config or Config()
        self._search = search or ExtremalSearch(self._config)
        self._families = self._search.get_families()
        self._analyzer = SpectralAnalyzer(self._config)
        self._solver = solver or DissociationSolver()
        self._transformer = transformer or GraphTransformer()

    # Theorem sweeps
    def verify_theorem(self, case: str, n_values: Iterable[int], trees: bool = False) -> VerificationResult:
        """Check one characterization over a range of orders.

        Args:
            case: One of THEOREM_CASES
            n_values: Orders to check
            trees: Search trees instead of all connected graphs

        Returns:
            VerificationResult: Pass/fail with the first counterexample graph6

        Raises:
            OrderCapError: If an order is outside the enumeration cap or the case's range
            ValueError: If the case is unknown
        """
        if case not in THEOREM_CASES:
            raise ValueError(f"unknown case {case!r}; expected one of {', '.join(THEOREM_CASES)}")
        mode = "trees" if trees or case == "corollary1" else "connected"
        rows: List[Dict] = []
        notes: List[str] = []
        for n in n_values:
            if case == "max_join":
                for k in range(2, n):
                    check = self._search.max_rho_check(n, k)
                    row = check.get_table().to_dict(orient="records")[0]
                    row["counterexample"] = check.get_counterexample()
                    rows.append(row)
                continue
            for k in self._ks_for(case, n):
                report = self._search.min_rho_search(n, k, mode)
                rows.append(self._judge(case, report))
                notes.extend(f"n={n} k={k}: {note}" for note in report.get_notes())
        result = _summarize(case, rows, notes)
        logger.info("%s (%s): %s", case, mode, result.get_message())
        return result

    def _ks_for(self, case: str, n: int) -> List[int]:
        ceil23 = math.ceil(2 * n / 3)
        if case in ("tree_claim", "corollary1"):
            return list(range(ceil23 + 1, n))
        if case == "k_n1":
            if n < 3:
                raise OrderCapError(f"k_n1 needs n >= 3, got {n}")
            return [n - 1]
        if case == "k_n2":
            if n < 5:
                raise OrderCapError(f"k_n2 needs n >= 5, got {n}")
            return [n - 2]
        if case == "k_n2_small":
            if n not in _SMALL_N2:
                raise OrderCapError(f"k_n2_small covers n = 5..9, got {n}")
            return [n - 2]
        if case == "k_ceil23":
            return [ceil23]
        if case == "k_floor23":
            return [(2 * n) // 3]
        if n < 2:
            raise OrderCapError(f"k_2 needs n >= 2, got {n}")
        return [2]

    @staticmethod
    def expected_family(case: str, n: int) -> Optional[str]:
        """Family text the characterization predicts, None where it makes no claim."""
        if case == "k_n1":
            return f"S(0,{(n - 1) // 2})" if n % 2 == 1 else f"S(1,{(n - 2) // 2})"
        if case in ("k_n2", "k_n2_small"):
            return _SMALL_N2.get(n, f"H({n})")
        if case == "k_ceil23":
            return f"P({n})"
        if case == "k_floor23":
            return None if n % 3 == 0 else f"C({n})"
        if case == "k_2":
            return f"BM({n})"
        return None

    def _judge(self, case: str, report: ExtremalReport) -> Dict:
        n, k = report.get_n(), report.get_k()
        minimizers = report.get_minimizers()
        row = {
            "n": n, "k": k, "mode": report.get_mode(), "class_size": report.get_class_size(),
            "min_rho": report.get_min_rho(),
            "found": ";".join(m.get_graph6() for m in minimizers),
            "family": ";".join(str(m.get_family()) if m.get_family() else "-" for m in minimizers),
            "expected": "", "passed": None, "counterexample": None,
        }
        if report.is_empty():
            row["passed"] = None if case in ("tree_claim", "corollary1") else False
            return row

        if case in ("tree_claim", "corollary1"):
            if case == "tree_claim":
                row["expected"] = "tree"
                bad = [m for m in minimizers if not m.is_tree()]
            else:
                row["expected"] = "short branch paths or B(n,s,t)"
                bad = [m for m in minimizers if not self.corollary_shape_holds(from_graph6(m.get_graph6()))]
            row["passed"] = not bad
            row["counterexample"] = bad[0].get_graph6() if bad else None
            return row

        expected = self.expected_family(case, n)
        if expected is None:
            row["expected"] = "exploratory"
            return row
        row["expected"] = expected
        found = from_graph6(minimizers[0].get_graph6())
        passed = report.is_unique() and self._families.is_member(found, FamilySpec.parse(expected))
        row["passed"] = passed
        if not passed:
            row["counterexample"] = minimizers[0].get_graph6()
        if report.get_mode() == "trees":
            row["tree_mode_justified"] = tree_restriction_holds(n, k)
        return row

    def corollary_shape_holds(self, tree: Graph) -> bool:
        """Every branch path has at most 2 vertices, or the tree is some B(n,s,t).

        B(n,s,t) is accepted with s = 0 too: H(10) is B(10,0,2).
        """
        if not tree.is_tree():
            return False
        short = all(len(path) <= 2 for v in tree.branch_vertices()
                    for path in self._transformer.branch_paths(tree, v))
        if short:
            return True
        return self._transformer.is_b_family(tree) is not None

    # Claim sweeps
    def _rho(self, g: Graph) -> float:
        return self._analyzer.rho(g, self._config.get_smith_tol())

    def _g3(self, r: int, s: int, p: int, q: int) -> Graph:
        return self._families.g_family(3, r, s, p, q)

    def verify_claims(self, total_max: int = 8, star_max: int = 50,
                      closed_form_r_max: int = 6) -> VerificationResult:
        """Tabulate the star identity, the G3 comparison chains and the closed-form equations.

        Args:
            total_max: Largest s + q checked in the G3 chains
            star_max: Largest k for rho(S(0,k)) = sqrt(k+1)
            closed_form_r_max: Largest r for the closed-form equations
        """
        rows: List[Dict] = []

        def add(claim: str, params: str, lhs: float, rhs: float, relation: str, passed: bool) -> None:
            rows.append({"claim": claim, "params": params, "lhs": lhs, "rhs": rhs,
                         "relation": relation, "passed": bool(passed)})

        for k in range(1, star_max + 1):
            rho = self._rho(self._families.s_rt(0, k))
            add("star", f"k={k}", rho, math.sqrt(k + 1), "=", abs(rho - math.sqrt(k + 1)) <= _CLAIM1_TOL)

        for s in range(1, total_max + 1):
            for q in range(2, min(s + 1, total_max - s) + 1):
                params = f"s={s},q={q}"
                left = self._rho(self._families.h_n(2 * s + 2 * q + 4))
                middle_graph = self._g3(0, s, 0, q)
                middle = self._analyzer.spectral_radius(middle_graph, self._config.get_smith_tol())
                right = self._rho(self._g3(1, s, 1, q - 1))
                balanced = {s, q} == {(s + q + 1) // 2, (s + q) // 2}
                if balanced:
                    add("balanced-g3", params, left, middle.get_rho(), "=",
                        abs(left - middle.get_rho()) <= _EQUALITY_TOL)
                else:
                    add("balanced-g3", params, left, middle.get_rho(), "<", left < middle.get_rho())
                add("pendant-to-v1", params, middle.get_rho(), right, "<", middle.get_rho() < right)
                if s >= q:
                    x = middle.get_perron()
                    far = 4 + 2 * s
                    add("perron-order", params, float(x[0]), float(x[1]), ">=",
                        x[0] >= x[1] - _EQUALITY_TOL and x[1] > x[far])

        for s in range(1, total_max + 1):
            for q in range(1, min(s, total_max - s + 1)):
                params = f"s={s},q={q}"
                base = self._rho(self._g3(0, s, 1, q))
                add("leaf-to-v1", params, base, self._rho(self._g3(1, s, 0, q)), "<",
                    base < self._rho(self._g3(1, s, 0, q)))
                shifted = self._rho(self._g3(0, s + 1, 1, q - 1))
                add("p3-to-v1", params, base, shifted, "<", base < shifted)
        for s in range(1, total_max // 2 + 1):
            params = f"s={s},q={s}"
            a = self._rho(self._g3(1, s, 0, s))
            b = self._rho(self._g3(0, s, 1, s))
            add("symmetric-leaf", params, a, b, "=", abs(a - b) <= _EQUALITY_TOL)
            shifted = self._rho(self._g3(1, s - 1, 0, s + 1))
            add("symmetric-shift", params, b, shifted, "<", b < shifted)

        for m in range(0, total_max + 1):
            x = math.sqrt(m + 2)
            add("margin-difference", f"m={m}", perron_difference_margin(x, m), 0.0, ">",
                perron_difference_margin(x, m) > 0)
            add("margin-swap", f"m={m}", pendant_swap_margin(x, m), 0.0, ">",
                pendant_swap_margin(x, m) > 0)

        for r in range(0, closed_form_r_max + 1):
            params = f"r={r}"
            rho1 = self._rho(self._g3(0, r + 1, 0, r + 2))
            rho2 = self._rho(self._g3(1, r + 1, 1, r + 1))
            add("equation-rho1", params, charpoly_rho1(rho1, r), 0.0, "=",
                abs(charpoly_rho1(rho1, r)) <= _CLOSED_FORM_TOL)
            add("equation-rho2", params, charpoly_rho2(rho2, r), 0.0, "=",
                abs(charpoly_rho2(rho2, r)) <= _CLOSED_FORM_TOL)
            root = solve_charpoly("rho2", r)
            add("root-rho2", params, root, math.sqrt(r + 4), ">", root > math.sqrt(r + 4))
            add("root-matches", params, root, rho2, "=", abs(root - rho2) <= _CLAIM1_TOL)
            add("gap-cubic", params, rho_gap_cubic(rho2, r), 0.0, ">", rho_gap_cubic(rho2, r) > 0)

        result = _summarize("claims", rows)
        logger.info("claims up to s+q=%d: %s", total_max, result.get_message())
        return result

    def verify_bst_chain(self, n: int, s: int, t: int) -> VerificationResult:
        """Follow the B(n,s,t) reductions, checking that diss drops by at most one and rho strictly drops."""
        rows: List[Dict] = []
        previous = None
        for step, (_, s_i, t_i) in enumerate(self._transformer.bst_chain((n, s, t))):
            tree = self._families.b_nst(n, s_i, t_i)
            diss = self._solver.diss_tree(tree).get_value()
            rho = self._rho(tree)
            passed = True
            if previous is not None:
                passed = diss in (previous[0], previous[0] - 1) and rho < previous[1]
            rows.append({"step": step, "n": n, "s": s_i, "t": t_i, "diss": diss, "rho": rho,
                         "passed": passed})
            previous = (diss, rho)
        return _summarize("bst_chain", rows)
