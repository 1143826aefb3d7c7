import networkx as nx
import pytest
from hypothesis import given, settings

import config
from tests.conftest import graphs, naive_distinguishing_index, naive_distinguishing_number
from utils.automorphism import automorphisms
from utils.distinguishing import (
    EdgeLabeling,
    Labeling,
    _index,
    distinguishing_index,
    distinguishing_number,
    find_edge_labeling,
    find_labeling,
    is_distinguishing,
    is_distinguishing_edges,
)
from utils.errors import GraphInputError, TimeBudgetExceeded, UnsupportedSizeError
from utils.graph import (
    Graph,
    complete,
    complete_bipartite,
    cycle,
    empty,
    friendship,
    hypercube,
    path,
    star,
)

PETERSEN = Graph.from_networkx(nx.petersen_graph(), name="Petersen")

CATALOG = (
    [(path(n), 2) for n in range(2, 9)]
    + [(cycle(n), 3) for n in (3, 4, 5)]
    + [(cycle(n), 2) for n in range(6, 10)]
    + [(complete(n), n) for n in range(1, 7)]
    + [(complete_bipartite(2, 3), 3), (complete_bipartite(3, 3), 4)]
)


class TestNumber:
    @pytest.mark.parametrize("g, expected", CATALOG, ids=lambda v: v.name if isinstance(v, Graph) else str(v))
    def test_catalog(self, g, expected):
        result = distinguishing_number(g)
        assert result.value == expected
        assert is_distinguishing(g, result.witness)

    @pytest.mark.parametrize("g, expected", [
        (path(1), 1),
        (path(2), 2),
        (path(3), 2),
        (path(6), 2),
        (cycle(3), 3),
        (cycle(4), 3),
        (cycle(5), 3),
        (cycle(6), 2),
        (complete(4), 4),
        (complete(7), 7),
        (star(3), 3),
        (complete_bipartite(2, 2), 3),
        (complete_bipartite(3, 3), 4),
        (friendship(2), 3),
        (hypercube(3), 3),
        (PETERSEN, 3),
    ])
    def test_known_values(self, g, expected):
        result = distinguishing_number(g)
        assert result.value == expected
        assert is_distinguishing(g, result.witness)
        assert result.witness.label_count == expected

    def test_witness_is_smallest(self):
        assert distinguishing_number(path(3)).witness.labels == (1, 1, 2)

    @settings(max_examples=60, deadline=None)
    @given(graphs(max_n=5))
    def test_matches_brute_force(self, g):
        assert distinguishing_number(g).value == naive_distinguishing_number(g)

    @settings(max_examples=60, deadline=None)
    @given(graphs(max_n=7))
    def test_one_iff_asymmetric(self, g):
        assert (distinguishing_number(g).value == 1) == automorphisms(g).is_trivial()

    @settings(max_examples=60, deadline=None)
    @given(graphs(max_n=7, connected=True))
    def test_order_iff_complete(self, g):
        assert (distinguishing_number(g).value == g.n) == (g.size == g.n * (g.n - 1) // 2)

    def test_decision_version(self):
        assert find_labeling(cycle(5), 2) is None
        found = find_labeling(cycle(5), 3)
        assert found is not None and is_distinguishing(cycle(5), found)
        with pytest.raises(GraphInputError):
            find_labeling(cycle(5), 0)

    def test_verifier_rejects(self):
        assert not is_distinguishing(path(3), Labeling.of(path(3), [1, 2, 1]))
        assert is_distinguishing(path(3), Labeling.of(path(3), [1, 1, 2]))

    def test_point_cap(self):
        config.LABEL_POINT_CAP = 4
        with pytest.raises(UnsupportedSizeError):
            find_labeling(path(5), 2)

    def test_time_budget(self, monkeypatch):
        monkeypatch.setattr(config, "BUDGET_CHECK_EVERY", 1)
        with pytest.raises(TimeBudgetExceeded):
            find_labeling(complete(6), 5, time_budget=1e-9)


class TestIndex:
    @pytest.mark.parametrize("g, expected", [
        (path(1), 1),
        (path(3), 2),
        (path(5), 2),
        (cycle(3), 3),
        (cycle(4), 3),
        (cycle(5), 3),
        (cycle(6), 2),
        (complete(3), 3),
        (complete(4), 3),
        (complete(5), 3),
        (complete(6), 2),
        (star(3), 3),
        (complete_bipartite(2, 3), 2),
        (complete_bipartite(2, 4), 3),
        (friendship(2), 2),
        (friendship(3), 3),
        (PETERSEN, 3),
    ])
    def test_known_values(self, g, expected):
        result = distinguishing_index(g)
        assert result.defined
        assert result.value == expected
        assert is_distinguishing_edges(g, result.witness)

    @pytest.mark.parametrize("g", [complete(2), empty(2), empty(3)])
    def test_not_defined(self, g):
        result = distinguishing_index(g)
        assert not result.defined
        assert result.value is None and result.witness is None
        assert find_edge_labeling(g, 5) is None

    @settings(max_examples=50, deadline=None)
    @given(graphs(max_n=5))
    def test_matches_brute_force(self, g):
        assert distinguishing_index(g).value == naive_distinguishing_index(g)

    @settings(max_examples=40, deadline=None)
    @given(graphs(min_n=3, max_n=7, connected=True))
    def test_connected_is_defined(self, g):
        assert distinguishing_index(g).defined

    @pytest.fixture
    def sampled(self, monkeypatch):
        monkeypatch.setattr(config, "SAMPLED_WITNESS_MIN_ORDER", 1)
        _index.cache_clear()
        yield
        _index.cache_clear()

    def test_sampled_witness_is_exact(self, sampled):
        g = complete(7)
        result = distinguishing_index(g)
        assert result.value == 2 and result.nodes == 0
        assert is_distinguishing_edges(g, result.witness)
        assert result.witness.labels[0] == 1

    def test_sampled_witness_falls_back_to_search(self, sampled):
        result = distinguishing_index(complete(4))
        assert result.value == 3
        assert result.nodes > 0

    def test_edge_verifier(self):
        g = path(3)
        assert not is_distinguishing_edges(g, EdgeLabeling.of(g, [1, 1]))
        assert is_distinguishing_edges(g, EdgeLabeling.of(g, [1, 2]))
        with pytest.raises(GraphInputError):
            is_distinguishing_edges(empty(3), EdgeLabeling.of(empty(3), []))

    def test_mapping_and_dict(self):
        g = cycle(4)
        lab = EdgeLabeling.from_mapping(g, {(1, 0): 1, (2, 1): 2, (3, 2): 1, (0, 3): 3})
        assert lab.label_of(0, 1) == 1 and lab.label_of(3, 0) == 3
        assert EdgeLabeling.from_dict(g, lab.to_dict()) == lab
        with pytest.raises(GraphInputError):
            EdgeLabeling.from_mapping(g, {(0, 1): 1})
