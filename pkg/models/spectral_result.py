"""
SpectralResult entity: spectral radius, Perron vector and convergence data.
"""

import numpy as np

from .errors import GraphError


class SpectralResult:
    """Represents a converged Perron pair.

    Attributes:
        __rho (float): Spectral radius
        __perron (np.ndarray): Positive unit Perron vector
        __iterations (int): Power-iteration steps taken
        __residual (float): Max-norm of A x - rho x
    """

    def __init__(self, rho: float, perron: np.ndarray, iterations: int, residual: float):
        self.__rho = float(rho)
        self.__perron = np.asarray(perron, dtype=float)
        self.__perron.setflags(write=False)
        self.__iterations = int(iterations)
        self.__residual = float(residual)

    def get_rho(self) -> float:
        return self.__rho

    def get_perron(self) -> np.ndarray:
        """Get the read-only Perron vector."""
        return self.__perron

    def get_iterations(self) -> int:
        return self.__iterations

    def get_residual(self) -> float:
        return self.__residual

    def perron_component(self, v: int) -> float:
        """Perron entry at vertex v.

        Raises:
            GraphError: If v is not a vertex index
        """
        if not 0 <= v < len(self.__perron):
            raise GraphError(f"vertex {v} out of range for order {len(self.__perron)}")
        return float(self.__perron[v])

    def __str__(self) -> str:
        return f"rho={self.__rho:.12f} residual={self.__residual:.3e}"

    def __repr__(self) -> str:
        return (f"SpectralResult(rho={self.__rho!r}, iterations={self.__iterations}, "
                f"residual={self.__residual!r})")
