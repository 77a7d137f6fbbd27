import random

import networkx as nx
import pytest

from models.config import Config
from models.errors import NotATreeError, OrderCapError
from models.graph import Graph
from services.dissociation_solver import DissociationSolver
from services.family_builder import FamilyBuilder
from services.graph_enumerator import GraphEnumerator

solver = DissociationSolver()
families = FamilyBuilder()
enumerator = GraphEnumerator(Config(workers=1))


def ceil_two_thirds(n):
    return -(-2 * n // 3)


def random_graph(rng, n, p):
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def test_is_dissociation_set():
    p4 = families.path(4)
    assert solver.is_dissociation_set(p4, [0, 1, 3])
    assert not solver.is_dissociation_set(p4, [0, 1, 2])
    assert solver.is_dissociation_set(p4, [])


@pytest.mark.parametrize("n", [2, 3, 5, 8])
def test_complete_graph_has_diss_two(n):
    for engine in ("bruteforce", "exact"):
        assert solver.diss(Graph.complete(n), engine).get_value() == 2


def test_known_values():
    assert solver.diss(families.path(7)).get_value() == 5
    assert solver.diss(families.cycle(7)).get_value() == 4
    assert solver.diss(families.smith_graph("WT", 12)).get_value() == 8
    assert solver.diss(families.s_rt(1, 4)).get_value() == 9
    assert solver.diss(families.h_n(12)).get_value() == 10
    assert solver.diss(families.b_nst(11, 1, 2)).get_value() == 9


def test_path_cycle_and_smith_formulas():
    for n in range(3, 25):
        assert solver.diss(families.path(n)).get_value() == ceil_two_thirds(n)
        assert solver.diss(families.cycle(n)).get_value() == 2 * n // 3
        if n >= 5:
            assert solver.diss(families.smith_graph("W", n)).get_value() == ceil_two_thirds(n)
        if n >= 6:
            assert solver.diss(families.smith_graph("WT", n)).get_value() == ceil_two_thirds(n)


def test_engines_agree_on_random_graphs():
    rng = random.Random(31)
    for _ in range(150):
        n = rng.randint(1, 11)
        g = random_graph(rng, n, rng.choice([0.2, 0.4, 0.7]))
        brute = solver.diss_bruteforce(g)
        exact = solver.diss_exact(g)
        assert brute.get_value() == exact.get_value()
        # both report the lexicographically smallest maximum set
        assert brute.get_witness() == exact.get_witness()
        assert exact.is_valid_for(g)


@pytest.mark.parametrize("n", range(1, 8))
def test_engines_agree_on_every_connected_graph(n):
    for g in enumerator.connected_graphs(n):
        brute = solver.diss_bruteforce(g)
        exact = solver.diss_exact(g)
        assert exact.get_value() == brute.get_value()
        assert exact.get_witness() == brute.get_witness()


@pytest.mark.parametrize("n", range(2, 8))
def test_vertex_deletion_drops_diss_by_at_most_one(n):
    for g in enumerator.connected_graphs(n):
        d = solver.diss_value(g)
        for v in range(n):
            assert solver.diss_value(g.delete_vertex(v)) in (d - 1, d)


@pytest.mark.parametrize("n", range(2, 8))
def test_edge_deletion_never_lowers_diss(n):
    for g in enumerator.connected_graphs(n):
        d = solver.diss_value(g)
        for u, v in g.edges():
            assert solver.diss_value(g.delete_edge(u, v)) >= d


def test_tree_engine_matches_bruteforce_on_all_small_trees():
    for n in range(2, 12):
        for tree in nx.nonisomorphic_trees(n):
            g = Graph.from_networkx(tree)
            dp = solver.diss_tree(g)
            brute = solver.diss_bruteforce(g)
            assert dp.get_value() == brute.get_value()
            assert dp.get_witness() == brute.get_witness()


def test_witness_is_a_dissociation_set_of_the_reported_size():
    g = families.g_family(3, 1, 2, 1, 2)
    result = solver.diss(g)
    assert result.get_engine() == "tree"
    assert len(result.get_witness()) == result.get_value()
    assert solver.is_dissociation_set(g, result.get_witness())


def test_exact_engine_handles_larger_orders():
    rng = random.Random(3)
    g = random_graph(rng, 30, 0.15)
    result = solver.diss_exact(g)
    assert result.is_valid_for(g)
    assert solver.diss_value(g) == result.get_value()


def test_diss_value_skips_witness():
    assert solver.diss_value(families.cycle(9)) == 6
    assert solver.diss_value(families.path(9)) == 6


def test_engine_errors():
    with pytest.raises(NotATreeError):
        solver.diss_tree(families.cycle(5))
    with pytest.raises(OrderCapError):
        solver.diss_bruteforce(families.path(25))


def test_single_vertex():
    result = solver.diss(Graph.empty(1))
    assert result.get_value() == 1
    assert result.get_witness() == (0,)


def test_min_3path_cover_is_the_complement():
    g = families.cycle(6)
    cover = solver.min_3path_cover(g)
    assert len(cover) == 6 - 4
    remaining = [v for v in range(6) if v not in cover]
    assert solver.is_dissociation_set(g, remaining)
