import math
import random

import networkx as nx
import numpy as np
import pytest
from scipy import linalg

from models.config import Config
from models.errors import ConfigError, ConvergenceError, DisconnectedGraphError, GraphError
from models.graph import Graph
from services.family_builder import FamilyBuilder
from services.graph_enumerator import GraphEnumerator
from services.spectral_analyzer import (
    SpectralAnalyzer,
    characteristic_polynomial,
    charpoly_rho1,
    charpoly_rho2,
    dense_spectral_radius,
    pendant_swap_margin,
    perron_difference_margin,
    rho_gap_cubic,
    solve_charpoly,
)

analyzer = SpectralAnalyzer(Config())
families = FamilyBuilder()
SMITH_TOL = 1e-12


def rho(g, tol=SMITH_TOL):
    return analyzer.rho(g, tol)


# Closed forms
def test_path_spectral_radius():
    for n in range(2, 31):
        assert abs(rho(families.path(n)) - 2 * math.cos(math.pi / (n + 1))) <= 1e-9


def test_star_of_two_paths():
    for k in range(1, 51):
        assert abs(rho(families.s_rt(0, k)) - math.sqrt(k + 1)) <= 1e-9
    assert abs(rho(families.s_rt(0, 3)) - 2.0) <= 1e-9


def test_smith_graph_dichotomy():
    for n in range(6, 21):
        assert abs(rho(families.cycle(n)) - 2.0) <= 1e-9
        assert abs(rho(families.smith_graph("WT", n)) - 2.0) <= 1e-9
        assert rho(families.path(n)) < 2 - 1e-9
        assert rho(families.smith_graph("W", n)) < 2 - 1e-9
    for name in ("E6", "E7", "E8"):
        assert rho(families.smith_graph(name)) < 2 - 1e-9
    for name in ("E6T", "E7T", "E8T"):
        assert abs(rho(families.smith_graph(name)) - 2.0) <= 1e-9


def test_power_iteration_agrees_with_eigvalsh():
    enumerator = GraphEnumerator(Config(workers=1))
    for n in range(2, 8):
        for g in enumerator.connected_graphs(n):
            expected = float(linalg.eigvalsh(g.adjacency_matrix())[-1])
            assert abs(rho(g, 1e-10) - expected) <= 1e-8
            assert abs(dense_spectral_radius(g) - expected) <= 1e-12


def random_connected(rng, n, p=0.3):
    edges = {(rng.randrange(v), v) for v in range(1, n)}
    edges.update((u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p)
    return Graph.from_edges(n, sorted(edges))


def rho_of_any(g):
    """Largest spectral radius over the components of g."""
    if g.is_connected():
        return rho(g)
    first = g.component_mask(0)
    inside = [v for v in range(g.get_order()) if first >> v & 1]
    outside = [v for v in range(g.get_order()) if not first >> v & 1]
    return max(rho_of_any(g.induced_subgraph(inside)), rho_of_any(g.induced_subgraph(outside)))


def test_edge_deletion_strictly_lowers_rho():
    rng = random.Random(41)
    for _ in range(500):
        g = random_connected(rng, rng.randint(2, 12))
        u, v = rng.choice(g.edges())
        assert rho_of_any(g.delete_edge(u, v)) < rho(g) - 1e-10


# Perron vector
def test_perron_vector_is_positive_unit_eigenvector():
    g = families.g_family(3, 1, 2, 0, 3)
    result = analyzer.spectral_radius(g)
    x = result.get_perron()
    assert np.all(x > 0)
    assert abs(np.linalg.norm(x) - 1.0) <= 1e-12
    residual = np.max(np.abs(g.adjacency_matrix() @ x - result.get_rho() * x))
    assert residual <= Config().get_tol() * 10
    assert result.get_residual() <= Config().get_tol()
    assert result.get_iterations() >= 1


def test_perron_vector_is_read_only():
    result = analyzer.spectral_radius(families.cycle(5))
    with pytest.raises(ValueError):
        result.get_perron()[0] = 2.0


def test_star_center_dominates_leaves():
    star = families.star(4)
    result = analyzer.spectral_radius(star)
    for leaf in (1, 2, 3):
        assert result.perron_component(0) > result.perron_component(leaf)
    with pytest.raises(GraphError):
        result.perron_component(9)


def test_perron_order_in_g3():
    # s = 3 pendant 2-paths at v1 against q = 2 at v2
    result = analyzer.spectral_radius(families.g_family(3, 0, 3, 0, 2), SMITH_TOL)
    assert analyzer.perron_component(result, 0) >= analyzer.perron_component(result, 1)


def test_single_vertex_and_errors():
    result = analyzer.spectral_radius(Graph.empty(1))
    assert result.get_rho() == 0.0
    assert list(result.get_perron()) == [1.0]
    assert dense_spectral_radius(Graph.empty(1)) == 0.0
    with pytest.raises(DisconnectedGraphError):
        analyzer.spectral_radius(Graph.empty(3))
    with pytest.raises(ConfigError):
        analyzer.spectral_radius(families.path(3), tol=0.0)


def test_iteration_cap_raises():
    capped = SpectralAnalyzer(Config(max_iterations=2, accel_period=1000))
    with pytest.raises(ConvergenceError):
        capped.spectral_radius(families.path(20), tol=1e-14)


def test_tie_handling():
    assert analyzer.rho_equal(2.0, 2.0 + 1e-9)
    assert not analyzer.rho_equal(2.0, 2.0 + 1e-6)
    # K_{1,4} and C4 plus an isolated vertex are cospectral
    a = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    b = Graph.from_edges(5, [(1, 2), (2, 3), (3, 4), (4, 1)])
    assert SpectralAnalyzer.confirm_tie(a, b)
    assert not SpectralAnalyzer.confirm_tie(a, families.path(5))


# Characteristic polynomial
def test_characteristic_polynomial_small_cases():
    assert characteristic_polynomial(Graph.empty(1)) == (1, 0)
    assert characteristic_polynomial(Graph.complete(2)) == (1, 0, -1)
    assert characteristic_polynomial(Graph.complete(3)) == (1, 0, -3, -2)
    assert characteristic_polynomial(families.path(4)) == (1, 0, -3, 0, 1)


def test_characteristic_polynomial_matches_numpy():
    rng = random.Random(8)
    for _ in range(20):
        n = rng.randint(2, 9)
        g = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5])
        ours = np.array(characteristic_polynomial(g), dtype=float)
        assert np.allclose(ours, np.poly(g.adjacency_matrix()), atol=1e-6)


def test_characteristic_polynomial_is_isomorphism_invariant():
    g = nx.petersen_graph()
    a = Graph.from_networkx(g)
    b = a.permute([9, 3, 1, 7, 5, 0, 2, 8, 4, 6])
    assert characteristic_polynomial(a) == characteristic_polynomial(b)


# Equations for the G3 comparisons
@pytest.mark.parametrize("r", range(0, 7))
def test_charpoly_equations_vanish_at_spectral_radii(r):
    rho1 = rho(families.g_family(3, 0, r + 1, 0, r + 2))
    rho2 = rho(families.g_family(3, 1, r + 1, 1, r + 1))
    assert abs(charpoly_rho1(rho1, r)) <= 1e-8
    assert abs(charpoly_rho2(rho2, r)) <= 1e-8
    assert abs(solve_charpoly("rho2", r) - rho2) <= 1e-9
    assert abs(solve_charpoly("rho1", r) - rho1) <= 1e-9
    assert rho_gap_cubic(rho2, r) > 0
    assert rho1 < rho2


@pytest.mark.parametrize("r", range(0, 11))
def test_solve_charpoly_root_exceeds_bound(r):
    assert solve_charpoly("rho2", r) > math.sqrt(r + 4)
    assert solve_charpoly("rho1", r) > math.sqrt(r + 4)


def test_solve_charpoly_rejects_unknown_equation():
    with pytest.raises(ConfigError):
        solve_charpoly("rho3", 0)


@pytest.mark.parametrize("m", range(0, 12))
def test_margins_positive_above_threshold(m):
    for x in (math.sqrt(m + 2), math.sqrt(m + 2) + 0.5, math.sqrt(m + 2) * 2):
        assert perron_difference_margin(x, m) > 0
        assert pendant_swap_margin(x, m) > 0
