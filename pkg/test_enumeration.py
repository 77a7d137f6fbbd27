import networkx as nx
import pytest

from app.data.graph6 import from_graph6, to_graph6
from models.config import Config
from models.enum_stream import EnumStream
from models.errors import OrderCapError
from models.graph import Graph
from services.canonical_labeler import CanonicalLabeler, canonical_form
from services.family_builder import FamilyBuilder
from services.graph_enumerator import GraphEnumerator
from services.graph_store import GraphStore

CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117, 9: 261080}
TREE_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 3, 6: 6, 7: 11, 8: 23, 9: 47, 10: 106, 11: 235, 12: 551}
ALL_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346}


@pytest.fixture
def enumerator():
    return GraphEnumerator(Config(workers=1))


# Class counts
@pytest.mark.parametrize("n", range(1, 8))
def test_connected_counts(enumerator, n):
    assert len(enumerator.connected_graphs(n)) == CONNECTED_COUNTS[n]


@pytest.mark.parametrize("n", range(1, 13))
def test_tree_counts(enumerator, n):
    assert len(enumerator.free_trees(n)) == TREE_COUNTS[n]


@pytest.mark.parametrize("n", range(1, 8))
def test_all_graph_counts(enumerator, n):
    assert len(enumerator.all_graphs(n)) == ALL_COUNTS[n]


@pytest.mark.slow
@pytest.mark.parametrize("mode, n", [("connected", 8), ("all", 8), ("connected", 9)])
def test_large_counts(mode, n):
    counts = CONNECTED_COUNTS if mode == "connected" else ALL_COUNTS
    assert len(GraphEnumerator(Config()).stream(mode, n)) == counts[n]


@pytest.mark.slow
def test_strategies_agree_on_order_eight():
    enumerator = GraphEnumerator(Config())
    first = enumerator.connected_graphs(8, "canonical_deletion")
    second = enumerator.connected_graphs(8, "hash_dedup")
    assert first.get_lines() == second.get_lines()


# Agreement with networkx
def test_connected_classes_match_atlas(enumerator):
    for n in range(1, 8):
        atlas = {canonical_form(Graph.from_networkx(g)) for g in nx.graph_atlas_g()[1:]
                 if g.number_of_nodes() == n and nx.is_connected(g)}
        ours = {canonical_form(g) for g in enumerator.connected_graphs(n)}
        assert ours == atlas


def test_all_graph_classes_match_atlas(enumerator):
    for n in range(1, 8):
        atlas = {canonical_form(Graph.from_networkx(g)) for g in nx.graph_atlas_g()[1:] if g.number_of_nodes() == n}
        assert {canonical_form(g) for g in enumerator.all_graphs(n)} == atlas


def test_trees_match_networkx(enumerator):
    for n in range(2, 11):
        expected = {canonical_form(Graph.from_networkx(t)) for t in nx.nonisomorphic_trees(n)}
        ours = {canonical_form(g) for g in enumerator.free_trees(n)}
        assert ours == expected


def test_members_are_canonical_and_of_the_right_mode(enumerator):
    labeler = CanonicalLabeler()
    for line in enumerator.connected_graphs(6).get_lines():
        g = from_graph6(line)
        assert g.is_connected()
        assert to_graph6(labeler.canonical_graph(g)) == line
    assert all(g.is_tree() for g in enumerator.free_trees(9))


@pytest.mark.parametrize("mode, n", [("connected", 6), ("trees", 10), ("all", 5)])
def test_strategies_agree(enumerator, mode, n):
    first = enumerator.stream(mode, n, "canonical_deletion")
    second = enumerator.stream(mode, n, "hash_dedup")
    assert first.get_lines() == second.get_lines()


def test_parallel_run_matches_serial():
    serial = GraphEnumerator(Config(workers=1)).connected_graphs(6)
    parallel = GraphEnumerator(Config(workers=2)).connected_graphs(6)
    assert serial.get_lines() == parallel.get_lines()


# Errors
@pytest.mark.parametrize("mode, n", [("connected", 10), ("trees", 13), ("all", 9), ("connected", 0)])
def test_order_caps(enumerator, mode, n):
    with pytest.raises(OrderCapError):
        enumerator.stream(mode, n)


def test_unknown_mode_and_strategy(enumerator):
    with pytest.raises(ValueError):
        enumerator.stream("forests", 4)
    with pytest.raises(ValueError):
        enumerator.stream("trees", 4, "random")


# Dissociation filtering
def test_filter_by_diss_order_four(enumerator):
    stream = enumerator.connected_graphs(4)
    # P4, the star and the paw have diss 3; C4, the diamond and K4 have diss 2
    assert len(enumerator.filter_by_diss(stream, 3)) == 3
    assert len(enumerator.filter_by_diss(stream, 2)) == 3


def test_filter_by_diss_contains_cycle(enumerator):
    members = enumerator.filter_by_diss(enumerator.connected_graphs(5), 3)
    assert canonical_form(FamilyBuilder().cycle(5)) in {canonical_form(g) for g in members}
    assert members.get_diss_filter() == 3
    assert set(members.get_diss()) == {3}


def test_filter_out_of_range_is_empty(enumerator):
    stream = enumerator.connected_graphs(5)
    assert len(enumerator.filter_by_diss(stream, 0)) == 0
    assert len(enumerator.filter_by_diss(stream, 6)) == 0


def test_diss_partition_covers_class(enumerator):
    stream = enumerator.free_trees(9)
    sizes = [len(enumerator.filter_by_diss(stream, k)) for k in range(1, 10)]
    assert sum(sizes) == TREE_COUNTS[9]
    # trees of order 9 have diss between ceil(2n/3) = 6 and n - 1 = 8
    assert sizes[:5] == [0] * 5
    assert sizes[8] == 0


def test_with_diss_is_cached(enumerator):
    stream = enumerator.free_trees(7)
    first = enumerator.with_diss(stream)
    assert first.has_diss()
    assert enumerator.with_diss(first) is first
    assert enumerator.free_trees(7).has_diss()


# EnumStream
def test_enum_stream_behaviour():
    lines = [to_graph6(Graph.complete(2))]
    stream = EnumStream(2, "connected", lines)
    assert len(stream) == 1
    assert stream.graphs() == [Graph.complete(2)]
    assert not stream.has_diss()
    assert stream.with_diss([2]).get_diss() == (2,)
    assert "size=1" in str(stream)
    with pytest.raises(ValueError):
        EnumStream(2, "connected", lines, [1, 2])
    with pytest.raises(ValueError):
        EnumStream(2, "forests", lines)


# On-disk class store
def test_store_round_trip(tmp_path):
    with GraphStore(str(tmp_path / "classes.db")) as store:
        enumerator = GraphEnumerator(Config(workers=1), store)
        stream = enumerator.free_trees(7)
        assert store.has_classes("trees", 7)
        assert store.has_classes("trees", 5)
        assert store.load_stream("trees", 7).get_lines() == stream.get_lines()
        assert store.load_stream("trees", 8) is None

        enumerator.filter_by_diss(stream, 5)
        assert store.has_diss("trees", 7)
        distribution = store.diss_distribution("trees", 7)
        assert int(distribution["class_count"].sum()) == TREE_COUNTS[7]

        # a fresh enumerator resumes from the stored order
        resumed = GraphEnumerator(Config(workers=1), store).free_trees(8)
        assert len(resumed) == TREE_COUNTS[8]
        runs = store.list_runs()
        assert set(runs["n"]) >= {7, 8}
