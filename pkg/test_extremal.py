import json

import pytest

from app.data.graph6 import from_graph6
from models.config import Config
from models.errors import ConfigError, OrderCapError
from models.family_spec import FamilySpec
from services.canonical_labeler import is_isomorphic
from services.extremal_search import ExtremalSearch, tree_restriction_holds
from services.family_builder import FamilyBuilder
from services.report_formatter import ReportFormatter
from services.theorem_verifier import TheoremVerifier

families = FamilyBuilder()


@pytest.fixture(scope="module")
def search():
    return ExtremalSearch(Config(workers=1))


@pytest.fixture(scope="module")
def verifier(search):
    return TheoremVerifier(search, Config(workers=1))


def only_minimizer(report):
    assert report.is_unique()
    return from_graph6(report.get_minimizers()[0].get_graph6())


# Minimum spectral radius
def test_path_minimizes_among_trees(search):
    report = search.min_rho_search(8, 6, "trees")
    assert is_isomorphic(only_minimizer(report), families.path(8))
    assert report.get_mode() == "trees"


def test_smith_tree_for_nine_vertices(search):
    report = search.min_rho_search(9, 7, "trees")
    assert is_isomorphic(only_minimizer(report), families.smith_graph("E8T"))
    assert abs(report.get_min_rho() - 2.0) <= 1e-9


def test_h_n_for_twelve_vertices(search):
    report = search.min_rho_search(12, 10, "trees")
    found = only_minimizer(report)
    assert families.is_member(found, FamilySpec.parse("H(12)"))
    assert report.get_minimizers()[0].get_family() == FamilySpec.parse("H(12)")


def test_balanced_multipartite_for_diss_two(search):
    report = search.min_rho_search(7, 2)
    assert is_isomorphic(only_minimizer(report), families.balanced_multipartite(7))


@pytest.mark.slow
def test_path_minimizes_among_connected_graphs():
    report = ExtremalSearch(Config()).min_rho_search(8, 6)
    assert is_isomorphic(only_minimizer(report), families.path(8))


# Maximum spectral radius
@pytest.mark.parametrize("n, k", [(6, 4), (7, 3), (6, 2)])
def test_join_maximizes(search, n, k):
    report = search.max_rho_search(n, k)
    assert report.get_objective() == "max"
    assert is_isomorphic(only_minimizer(report), families.join_maximizer(n, k))


def test_max_rho_check(search):
    result = search.max_rho_check(6, 3)
    assert result.is_passed()
    assert result.get_table()["expected"].tolist() == ["J(6,3)"]
    degenerate = search.max_rho_check(2, 2)
    assert degenerate.is_passed()
    assert degenerate.get_table()["passed"].tolist() == [None]


# Degenerate classes
def test_empty_class(search):
    report = search.min_rho_search(6, 2, "trees")
    assert report.is_empty()
    assert report.get_min_rho() is None
    assert report.get_minimizers() == []


def test_k_outside_range(search):
    for k in (0, 7):
        report = search.min_rho_search(6, k)
        assert report.is_empty()
        assert any("outside" in note for note in report.get_notes())


def test_diss_equal_to_order(search):
    report = search.min_rho_search(2, 2)
    assert abs(report.get_min_rho() - 1.0) <= 1e-9
    assert any("diss = n" in note for note in report.get_notes())


def test_tree_mode_notes(search):
    assert tree_restriction_holds(9, 7)
    assert not tree_restriction_holds(9, 6)
    justified = search.min_rho_search(9, 7, "trees").get_notes()
    assert any("justified" in note for note in justified)
    exploratory = search.min_rho_search(9, 6, "trees").get_notes()
    assert any("exploratory" in note for note in exploratory)


def test_search_errors(search):
    with pytest.raises(OrderCapError):
        search.min_rho_search(10, 8)
    with pytest.raises(ValueError):
        search.min_rho_search(5, 3, "all")


def test_report_schema(search):
    data = search.min_rho_search(6, 4).to_dict()
    assert {"n", "k", "min_rho", "minimizers", "class_size", "runtime_ms"} <= set(data)
    assert set(data["minimizers"][0]) == {"graph6", "rho", "family", "is_tree"}
    assert search.min_rho_search(6, 4).to_dict(include_runtime=False)["runtime_ms"] == 0


# Theorem sweeps
def test_verify_h_n_on_trees(verifier):
    result = verifier.verify_theorem("k_n2", range(10, 13), trees=True)
    assert result.is_passed(), result.failed_rows()
    assert result.get_table()["expected"].tolist() == ["H(10)", "H(11)", "H(12)"]


def test_verify_small_orders(verifier):
    assert verifier.verify_theorem("k_n2_small", range(5, 8)).is_passed()
    assert verifier.verify_theorem("k_n2_small", [9], trees=True).is_passed()
    with pytest.raises(OrderCapError):
        verifier.verify_theorem("k_n2_small", [10])


def test_verify_stars(verifier):
    result = verifier.verify_theorem("k_n1", range(4, 11), trees=True)
    assert result.is_passed(), result.failed_rows()


@pytest.mark.parametrize("case", ["tree_claim", "k_ceil23", "k_2", "max_join"])
def test_verify_connected_sweeps(verifier, case):
    result = verifier.verify_theorem(case, range(4, 7))
    assert result.is_passed(), result.failed_rows()


def test_exploratory_rows_do_not_fail(verifier):
    result = verifier.verify_theorem("k_floor23", [6])
    assert result.is_passed()
    assert result.get_table()["expected"].tolist() == ["exploratory"]


def test_corollary_shape(verifier):
    result = verifier.verify_theorem("corollary1", range(7, 11))
    assert result.is_passed(), result.failed_rows()
    assert set(result.get_table()["mode"]) == {"trees"}
    assert verifier.corollary_shape_holds(families.b_nst(10, 1, 2))
    assert verifier.corollary_shape_holds(families.h_n(12))
    assert verifier.corollary_shape_holds(families.h_n(10))
    assert not verifier.corollary_shape_holds(families.smith_graph("E7T"))
    assert not verifier.corollary_shape_holds(families.cycle(6))


def test_expected_family():
    assert TheoremVerifier.expected_family("k_n1", 9) == "S(0,4)"
    assert TheoremVerifier.expected_family("k_n1", 10) == "S(1,4)"
    assert TheoremVerifier.expected_family("k_n2", 9) == "E8T"
    assert TheoremVerifier.expected_family("k_n2", 14) == "H(14)"
    assert TheoremVerifier.expected_family("k_floor23", 9) is None
    assert TheoremVerifier.expected_family("k_floor23", 8) == "C(8)"


def test_unknown_case(verifier):
    with pytest.raises(ValueError):
        verifier.verify_theorem("k_n3", [6])


def test_cycle_minimizes_at_floor_two_thirds(verifier):
    result = verifier.verify_theorem("k_floor23", [5, 7])
    assert result.is_passed(), result.failed_rows()
    assert result.get_table()["expected"].tolist() == ["C(5)", "C(7)"]


def test_stars_among_connected_graphs(verifier):
    result = verifier.verify_theorem("k_n1", range(5, 8))
    assert result.is_passed(), result.failed_rows()
    assert set(result.get_table()["mode"]) == {"connected"}


def test_balanced_multipartite_up_to_seven(verifier):
    result = verifier.verify_theorem("k_2", range(4, 8))
    assert result.is_passed(), result.failed_rows()


@pytest.mark.slow
@pytest.mark.parametrize("case", ["k_n1", "k_ceil23", "k_floor23", "k_2", "k_n2_small", "tree_claim", "max_join"])
def test_full_connected_sweep(case):
    verifier = TheoremVerifier(config=Config())
    result = verifier.verify_theorem(case, range(5, 10))
    assert result.is_passed(), result.failed_rows()


# Claim tables
def test_claims_pass(verifier):
    result = verifier.verify_claims(total_max=6, star_max=20, closed_form_r_max=3)
    assert result.is_passed(), result.failed_rows()
    claims = set(result.get_table()["claim"])
    assert {"star", "balanced-g3", "pendant-to-v1", "perron-order", "leaf-to-v1",
            "equation-rho1", "root-rho2", "margin-swap"} <= claims


def test_bst_chain_sweep(verifier):
    result = verifier.verify_bst_chain(20, 4, 4)
    assert result.is_passed(), result.failed_rows()
    table = result.get_table()
    assert table["step"].tolist() == list(range(len(table)))
    assert table["rho"].is_monotonic_decreasing


# Formatting
def test_formatter_outputs(search):
    report = search.min_rho_search(6, 4)
    data = json.loads(ReportFormatter("json").format_report(report))
    assert data["n"] == 6 and data["k"] == 4
    csv_text = ReportFormatter("csv").format_report(report)
    assert csv_text.splitlines()[0].startswith("n,k,mode,objective,min_rho")
    text = ReportFormatter("text", include_runtime=False).format_report(report)
    assert "min_rho:" in text
    assert text.endswith("runtime_ms: 0")
    with pytest.raises(ConfigError):
        ReportFormatter("xml")


def test_formatter_verification(verifier):
    result = verifier.verify_bst_chain(12, 2, 2)
    data = json.loads(ReportFormatter("json").format_verification(result))
    assert data["passed"] is True
    assert len(data["rows"]) == len(result.get_table())
    assert ReportFormatter("csv").format_verification(result).startswith("step,n,s,t,diss,rho,passed")
