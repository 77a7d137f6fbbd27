"""
ExtremalReport entity: the spectral extremizers of one class of graphs
with given order and dissociation number.
"""

from typing import List, Optional, Sequence

from .family_spec import FamilySpec


class Minimizer:
    """One extremal graph in a report.

    Attributes:
        __graph6 (str): Canonical graph6 certificate
        __rho (float): Spectral radius at the report tolerance
        __family (Optional[FamilySpec]): Matching named family, if any
        __is_tree (bool): Whether the graph is a tree
    """

    def __init__(self, graph6: str, rho: float, family: Optional[FamilySpec], is_tree: bool):
        self.__graph6 = graph6
        self.__rho = float(rho)
        self.__family = family
        self.__is_tree = is_tree

    def get_graph6(self) -> str:
        return self.__graph6

    def get_rho(self) -> float:
        return self.__rho

    def get_family(self) -> Optional[FamilySpec]:
        return self.__family

    def is_tree(self) -> bool:
        return self.__is_tree

    def to_dict(self) -> dict:
        return {
            "graph6": self.__graph6,
            "rho": self.__rho,
            "family": str(self.__family) if self.__family is not None else None,
            "is_tree": self.__is_tree,
        }

    def __str__(self) -> str:
        family = str(self.__family) if self.__family is not None else "-"
        return f"{self.__graph6} rho={self.__rho:.12f} family={family}"

    def __repr__(self) -> str:
        return f"Minimizer({self.__graph6!r}, rho={self.__rho!r}, family={self.__family!r})"


class ExtremalReport:
    """Represents the result of a minimum (or maximum) spectral radius search.

    Attributes:
        __n (int): Order
        __k (int): Dissociation number
        __mode (str): connected or trees
        __objective (str): min or max
        __extreme_rho (Optional[float]): Extremal spectral radius, None for an empty class
        __minimizers (List[Minimizer]): Extremal graphs, pairwise non-isomorphic
        __class_size (int): Number of classes searched
        __tolerance (float): Power-iteration tolerance used
        __runtime_ms (float): Wall time of the search
        __near_tie (bool): More than one graph within the tie gap
        __tie_confirmed (Optional[bool]): Characteristic polynomials of tied graphs all equal
        __notes (List[str]): Free-form remarks (degenerate classes, mode justification)
    """

    def __init__(self, n: int, k: int, mode: str, objective: str, extreme_rho: Optional[float],
                 minimizers: Sequence[Minimizer], class_size: int, tolerance: float,
                 runtime_ms: float, near_tie: bool = False, tie_confirmed: Optional[bool] = None,
                 notes: Sequence[str] = ()):
        self.__n = n
        self.__k = k
        self.__mode = mode
        self.__objective = objective
        self.__extreme_rho = extreme_rho
        self.__minimizers = list(minimizers)
        self.__class_size = class_size
        self.__tolerance = tolerance
        self.__runtime_ms = runtime_ms
        self.__near_tie = near_tie
        self.__tie_confirmed = tie_confirmed
        self.__notes = list(notes)

    # Getter methods
    def get_n(self) -> int:
        return self.__n

    def get_k(self) -> int:
        return self.__k

    def get_mode(self) -> str:
        return self.__mode

    def get_objective(self) -> str:
        return self.__objective

    def get_min_rho(self) -> Optional[float]:
        """Extremal spectral radius (the maximum for max searches)."""
        return self.__extreme_rho

    def get_minimizers(self) -> List[Minimizer]:
        return list(self.__minimizers)

    def get_class_size(self) -> int:
        return self.__class_size

    def get_tolerance(self) -> float:
        return self.__tolerance

    def get_runtime_ms(self) -> float:
        return self.__runtime_ms

    def get_notes(self) -> List[str]:
        return list(self.__notes)

    def is_empty(self) -> bool:
        return self.__class_size == 0

    def is_unique(self) -> bool:
        return len(self.__minimizers) == 1

    def is_near_tie(self) -> bool:
        return self.__near_tie

    def get_tie_confirmed(self) -> Optional[bool]:
        return self.__tie_confirmed

    def families(self) -> List[Optional[FamilySpec]]:
        return [m.get_family() for m in self.__minimizers]

    def to_dict(self, include_runtime: bool = True) -> dict:
        """Fixed top-level schema {n, k, min_rho, minimizers, class_size, runtime_ms} plus extras."""
        return {
            "n": self.__n,
            "k": self.__k,
            "min_rho": self.__extreme_rho,
            "minimizers": [m.to_dict() for m in self.__minimizers],
            "class_size": self.__class_size,
            "runtime_ms": round(self.__runtime_ms, 3) if include_runtime else 0,
            "mode": self.__mode,
            "objective": self.__objective,
            "tolerance": self.__tolerance,
            "near_tie": self.__near_tie,
            "tie_confirmed": self.__tie_confirmed,
            "notes": list(self.__notes),
        }

    def __str__(self) -> str:
        rho = "none" if self.__extreme_rho is None else f"{self.__extreme_rho:.12f}"
        return (f"ExtremalReport(n={self.__n}, k={self.__k}, mode={self.__mode}, "
                f"{self.__objective}_rho={rho}, extremizers={len(self.__minimizers)}, "
                f"class_size={self.__class_size})")

    def __repr__(self) -> str:
        return self.__str__()
