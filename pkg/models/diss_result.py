"""
DissResult entity: a dissociation number with one witnessing maximum set.
"""

from typing import Iterable, Tuple

from .graph import Graph, bits_to_mask


class DissResult:
    """Represents the outcome of a dissociation computation.

    Attributes:
        __value (int): Dissociation number
        __witness (Tuple[int, ...]): Sorted vertices of a maximum dissociation set
        __engine (str): Engine that produced the result (bruteforce, exact, tree)
    """

    def __init__(self, value: int, witness: Iterable[int], engine: str):
        self.__value = value
        self.__witness = tuple(sorted(witness))
        self.__engine = engine

    def get_value(self) -> int:
        return self.__value

    def get_witness(self) -> Tuple[int, ...]:
        return self.__witness

    def get_engine(self) -> str:
        return self.__engine

    def is_valid_for(self, g: Graph) -> bool:
        """Check that the witness has the stated size and induces max degree <= 1."""
        if len(self.__witness) != self.__value:
            return False
        mask = bits_to_mask(self.__witness)
        adj = g.get_adj()
        return all((adj[v] & mask).bit_count() <= 1 for v in self.__witness)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DissResult):
            return NotImplemented
        return self.__value == other.__value and self.__witness == other.__witness

    def __str__(self) -> str:
        return f"diss={self.__value} witness={' '.join(str(v) for v in self.__witness)}"

    def __repr__(self) -> str:
        return f"DissResult(value={self.__value}, witness={self.__witness}, engine='{self.__engine}')"
