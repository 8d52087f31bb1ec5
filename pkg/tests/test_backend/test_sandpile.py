import pytest

from backend.core import chartables as ct
from backend.core import sandpile as sp
from backend.core.exact_linalg import IntMatrix
from backend.services import datasets
from backend.services.exceptions import InputError, NotFaithfulError


def test_five_cycle_group_and_spanning_trees():
    cycle = sp.cycle_graph(5)
    assert sp.graph_critical_group(cycle).invariant_factors == (5,)
    assert sp.spanning_tree_count(cycle) == 5


def test_five_cycle_laplacian_is_circulant():
    L = sp.laplacian(sp.cycle_graph(5))
    for i in range(5):
        assert L[i, i] == 2
        assert L[i, (i + 1) % 5] == -1
        assert L[i, (i - 1) % 5] == -1
    assert sum(L.row(0)) == 0


def test_directed_cycle_has_trivial_group():
    cycle = sp.cycle_graph(4, directed=True)
    assert sp.graph_critical_group(cycle).invariant_factors == ()
    assert sp.spanning_tree_count(cycle) == 1
    assert cycle.is_eulerian()


def test_loop_contributes_nothing_to_laplacian():
    g = sp.Digraph.from_edges(["v"], [("v", "v")])
    assert sp.laplacian(g) == IntMatrix.zeros(1, 1)


def test_sink_is_moved_first():
    g = sp.Digraph.from_edges(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")], sink="b")
    assert g.vertex_order() == ["b", "a", "c"]
    assert sp.reduced_laplacian(g).shape == (2, 2)


def test_unreachable_sink_is_rejected():
    g = sp.Digraph.from_edges(["a", "b"], [("a", "b")], sink="a")
    with pytest.raises(InputError):
        sp.graph_critical_group(g)


def test_unknown_sink_is_rejected():
    with pytest.raises(InputError):
        sp.Digraph.from_edges(["a"], [], sink="z")


def test_bundled_complete_graph():
    k4 = datasets.load_graph("k4")
    assert sp.graph_critical_group(k4).invariant_factors == (4, 4)
    assert sp.spanning_tree_count(k4) == 16


def test_cayley_graph_of_z6_matches_representation():
    z6 = ct.build_abelian_table((6,))
    V = ct.RepVector.from_named(z6, {"chi1": 1, "chi3": 1})
    graph = sp.cayley_graph(z6, V)

    L = sp.laplacian(graph)
    assert [L[i, i] for i in range(6)] == [2] * 6
    assert graph.sink == "chi0"
    assert sp.graph_critical_group(graph) == ct.critical_group(z6, V)
    assert sp.spanning_tree_count(graph) == sp.graph_critical_group(graph).order


def test_cayley_graph_needs_faithful_representation():
    z6 = ct.build_abelian_table((6,))
    with pytest.raises(NotFaithfulError):
        sp.cayley_graph(z6, ct.RepVector.from_named(z6, {"chi2": 1}))


def test_cayley_graph_needs_abelian_table():
    s3 = ct.build_symmetric_table(3)
    with pytest.raises(InputError):
        sp.cayley_graph(s3, ct.RepVector.regular(s3))


def test_z6_covers_z2_with_surjective_group_map():
    z6, z2 = ct.build_abelian_table((6,)), ct.build_abelian_table((2,))
    V = ct.RepVector.from_named(z6, {"chi1": 1, "chi3": 1})
    fusion = ct.abelian_fusion((6,), (2,), [[3]])

    covering, induced = sp.cayley_covering(z6, z2, fusion, V)

    assert covering.verified
    assert sorted(covering.fiber_sizes().values()) == [3, 3]
    assert induced.surjective
    assert sp.covering_matches_restriction(z6, z2, fusion, V)


def test_klein_group_covering():
    klein, z2 = ct.build_abelian_table((2, 2)), ct.build_abelian_table((2,))
    V = ct.RepVector.from_named(klein, {"chi0,1": 1, "chi1,0": 1, "chi1,1": 1})
    fusion = ct.abelian_fusion((2, 2), (2,), [[1, 0]])

    covering, induced = sp.cayley_covering(klein, z2, fusion, V)

    assert covering.verified
    assert induced.surjective
    assert sp.covering_matches_restriction(klein, z2, fusion, V)


def test_covering_check_fails_on_wrong_vertex_map():
    source = sp.cycle_graph(4, directed=True)
    target = sp.cycle_graph(2, directed=True)
    bad = {"v0": "v0", "v1": "v0", "v2": "v1", "v3": "v1"}
    assert not sp.covering_map(source, target, bad).verified

    good = {"v0": "v0", "v1": "v1", "v2": "v0", "v3": "v1"}
    assert sp.covering_map(source, target, good).verified


def test_networkx_view_keeps_multiplicity_as_weight():
    graph = sp.Digraph.from_edges(["a", "b", "c"], [["a", "b", 2], ["b", "c"], ["a", "b"]], sink="c")
    view = graph.to_networkx()

    assert view.number_of_edges() == 2
    assert view["a"]["b"]["multiplicity"] == 3
    assert view["b"]["c"]["multiplicity"] == 1
    assert graph.reaches_sink("c")
    assert not graph.reaches_sink("a")
