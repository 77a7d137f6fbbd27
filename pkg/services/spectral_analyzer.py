"""
SpectralAnalyzer service: spectral radius and Perron vector of connected
graphs, exact characteristic polynomials for tie confirmation, and the
closed-form equations used when comparing the G3 family members.
"""

import logging
import math
import warnings
from typing import Callable, Optional, Tuple

import numpy as np
from scipy import linalg

from models.config import Config
from models.errors import ConfigError, ConvergenceError, DisconnectedGraphError
from models.graph import Graph
from models.spectral_result import SpectralResult

logger = logging.getLogger(__name__)

_RAYLEIGH_STEPS = 3


# Closed forms
def charpoly_rho1(rho: float, r: int) -> float:
    """Equation satisfied by the spectral radius of G3(0, r+1, 0, r+2).

    u^3 - (2r+7)u^2 + (r+3)(r+4)u - 1 with u = rho^2.
    """
    u = rho * rho
    return u ** 3 - (2 * r + 7) * u ** 2 + (r + 3) * (r + 4) * u - 1


def charpoly_rho2(rho: float, r: int) -> float:
    """Equation satisfied by the spectral radius of G3(1, r+1, 1, r+1)."""
    return rho ** 4 - (r + 4) * rho ** 2 - rho + 1


def rho_gap_cubic(rho2: float, r: int) -> float:
    """charpoly_rho1 at rho2 once charpoly_rho2 vanishes there; positive means rho1 < rho2."""
    return rho2 ** 3 - rho2 ** 2 - (r + 3) * rho2 + r + 2


def perron_difference_margin(x: float, m: int) -> float:
    """x - m x / (x^2 - 1) - 1 / (x + 1); positive for x > sqrt(m + 2)."""
    return x - m * x / (x * x - 1) - 1 / (x + 1)


def pendant_swap_margin(x: float, m: int) -> float:
    """x^2 - (m + 1) - 1 / (x (x + 1) - 1); positive for x > sqrt(m + 2)."""
    return x * x - (m + 1) - 1 / (x * (x + 1) - 1)


def solve_charpoly(which: str, r: int, precision: float = 1e-12) -> float:
    """Root of charpoly_rho1 or charpoly_rho2 above sqrt(r + 4), by bisection.

    Args:
        which: "rho1" or "rho2"
        r: Non-negative family parameter
        precision: Width of the final bracket
    """
    funcs = {"rho1": charpoly_rho1, "rho2": charpoly_rho2}
    if which not in funcs:
        raise ConfigError(f"unknown equation {which!r}, expected rho1 or rho2")
    f: Callable[[float, int], float] = funcs[which]
    lo = math.sqrt(r + 4)
    hi = lo + 1.0
    while f(hi, r) <= 0:
        hi = lo + 2 * (hi - lo)
    while hi - lo > precision:
        mid = (lo + hi) / 2
        if f(mid, r) > 0:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2


def characteristic_polynomial(g: Graph) -> Tuple[int, ...]:
    """Exact integer coefficients of det(xI - A), highest degree first.

    Faddeev-LeVerrier on Python integers; every division is exact.
    """
    n = g.get_order()
    a = np.array(g.adjacency_matrix().astype(int), dtype=object)
    identity = np.array(np.eye(n, dtype=int), dtype=object)
    coeffs = [1]
    m = np.zeros((n, n), dtype=object)
    for k in range(1, n + 1):
        m = a.dot(m) + coeffs[-1] * identity
        trace = int(np.trace(a.dot(m)))
        coeffs.append(-trace // k)
    return tuple(coeffs)


def dense_spectral_radius(g: Graph) -> float:
    """Largest adjacency eigenvalue from the dense symmetric eigensolver."""
    if g.get_order() == 1:
        return 0.0
    return float(linalg.eigvalsh(g.adjacency_matrix())[-1])


class SpectralAnalyzer:
    """Power-iteration Perron solver configured by a Config."""

    def __init__(self, config: Optional[Config] = None):
        self._config = config or Config()

    def _rayleigh_step(self, a: np.ndarray, x: np.ndarray, rho: float) -> Optional[np.ndarray]:
        """A few Rayleigh-quotient iterations; kept only while the vector stays positive."""
        n = len(x)
        current, current_rho = x, rho
        improved = None
        for _ in range(_RAYLEIGH_STEPS):
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", linalg.LinAlgWarning)
                try:
                    z = linalg.solve(a - current_rho * np.eye(n), current, assume_a="sym")
                except (linalg.LinAlgError, ValueError):
                    break
            if not np.all(np.isfinite(z)):
                break
            if z.sum() < 0:
                z = -z
            norm = np.linalg.norm(z)
            if norm == 0 or z.min() <= 0:
                break
            z = z / norm
            z_rho = float(z @ (a @ z))
            if z_rho < current_rho:
                break
            current, current_rho = z, z_rho
            improved = z
        return improved

    def spectral_radius(self, g: Graph, tol: Optional[float] = None) -> SpectralResult:
        """Spectral radius and Perron vector by shifted power iteration.

        Iterates on A + I from the all-ones vector so bipartite graphs
        converge too; every accel_period steps a Rayleigh-quotient step is
        tried.

        Args:
            g: Connected graph
            tol: Max-norm residual target (config tol when None)

        Returns:
            SpectralResult: rho, unit positive Perron vector, iterations, residual

        Raises:
            DisconnectedGraphError: If g is not connected
            ConvergenceError: If the iteration cap is reached first
        """
        tol = self._config.get_tol() if tol is None else tol
        if not tol > 0:
            raise ConfigError(f"tol must be positive, got {tol}")
        if not g.is_connected():
            raise DisconnectedGraphError(f"{g} is not connected")
        n = g.get_order()
        if n == 1:
            return SpectralResult(0.0, np.ones(1), 0, 0.0)

        a = g.adjacency_matrix()
        x = np.full(n, 1.0 / math.sqrt(n))
        period = self._config.get_accel_period()
        cap = self._config.get_max_iterations()
        for iteration in range(1, cap + 1):
            y = a @ x + x
            x = y / np.linalg.norm(y)
            ax = a @ x
            rho = float(x @ ax)
            if iteration % period == 0:
                accelerated = self._rayleigh_step(a, x, rho)
                if accelerated is not None:
                    x = accelerated
                    ax = a @ x
                    rho = float(x @ ax)
            residual = float(np.max(np.abs(ax - rho * x)))
            if residual <= tol:
                logger.debug("rho=%.12f for n=%d after %d iterations", rho, n, iteration)
                return SpectralResult(rho, x, iteration, residual)
        raise ConvergenceError(f"power iteration did not reach tol={tol} in {cap} iterations")

    def perron_component(self, result: SpectralResult, v: int) -> float:
        return result.perron_component(v)

    def rho(self, g: Graph, tol: Optional[float] = None) -> float:
        """Shorthand for spectral_radius(g, tol).get_rho()."""
        return self.spectral_radius(g, tol).get_rho()

    def rho_equal(self, a: float, b: float) -> bool:
        """Two spectral radii count as tied when closer than the configured tie gap."""
        return abs(a - b) <= self._config.get_tie_gap()

    @staticmethod
    def confirm_tie(g: Graph, h: Graph) -> bool:
        """Exact confirmation of a numeric tie: identical characteristic polynomials."""
        return characteristic_polynomial(g) == characteristic_polynomial(h)
