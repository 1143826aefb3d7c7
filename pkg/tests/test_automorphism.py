from math import factorial

import numpy as np
import pytest
from hypothesis import given, settings

import config
from tests.conftest import graphs, naive_automorphisms
from utils.automorphism import (
    Permutation,
    automorphisms,
    count_preserving,
    edge_action,
    equitable_partition,
    is_automorphism,
    orbits,
    preserves_edge_labeling,
    preserves_vertex_labeling,
)
from utils.distinguishing import EdgeLabeling, Labeling
from utils.errors import GraphInputError, UnsupportedSizeError
from utils.graph import (
    cartesian_product,
    complete,
    complete_bipartite,
    cycle,
    friendship,
    join,
    non_neighborhood,
    path,
    star,
)


class TestPermutation:
    def test_compose_and_inverse(self):
        p = Permutation((1, 2, 0))
        assert p.compose(p.inverse()).is_identity()
        assert p.compose(p).image == (2, 0, 1)
        assert p.moved() == frozenset({0, 1, 2})

    def test_rejects_non_bijection(self):
        with pytest.raises(GraphInputError):
            Permutation((0, 0, 1))


class TestGroupOrders:
    @pytest.mark.parametrize("g, order", [
        (path(1), 1),
        (path(3), 2),
        (path(6), 2),
        (cycle(4), 8),
        (cycle(7), 14),
        (complete(5), 120),
        (star(4), 24),
        (complete_bipartite(2, 3), 12),
        (complete_bipartite(3, 3), 72),
        (friendship(3), 48),
    ])
    def test_known(self, g, order):
        assert automorphisms(g).order == order

    def test_identity_is_first(self):
        group = automorphisms(cycle(5))
        assert group.elements[0].is_identity()

    @settings(max_examples=60, deadline=None)
    @given(graphs(max_n=6))
    def test_matches_brute_force(self, g):
        group = automorphisms(g)
        assert sorted(p.image for p in group) == sorted(naive_automorphisms(g))

    @settings(max_examples=40, deadline=None)
    @given(graphs(max_n=6))
    def test_group_axioms(self, g):
        group = automorphisms(g)
        assert len({p.image for p in group}) == group.order
        for p in group.elements[:6]:
            assert is_automorphism(g, p)
            assert p.inverse() in group
            for r in group.elements[:6]:
                assert p.compose(r) in group

    @pytest.mark.parametrize("k, n", [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)])
    def test_bipartite_edge_group_matches_rook_graph(self, k, n):
        # Aut(K_{k,n}) acting on edges is Aut(K_k [] K_n) for k != n
        expected = factorial(k) * factorial(n)
        assert automorphisms(complete_bipartite(k, n)).order == expected
        assert automorphisms(cartesian_product(complete(k), complete(n))).order == expected

    def test_cap(self):
        with pytest.raises(UnsupportedSizeError):
            automorphisms(path(5), cap=4)


class TestActions:
    def test_orbits(self):
        assert orbits(path(4)) == [(0, 3), (1, 2)]
        assert orbits(star(3)) == [(0,), (1, 2, 3)]

    def test_edge_action(self):
        g = path(3)
        flip = Permutation((2, 1, 0))
        assert edge_action(g, flip, (0, 1)) == (1, 2)

    def test_preserves(self):
        g = path(3)
        flip = Permutation((2, 1, 0))
        assert preserves_vertex_labeling(flip, Labeling.of(g, [1, 2, 1]))
        assert not preserves_vertex_labeling(flip, Labeling.of(g, [1, 1, 2]))
        assert preserves_edge_labeling(flip, EdgeLabeling.of(g, [1, 1]))
        assert not preserves_edge_labeling(flip, EdgeLabeling.of(g, [1, 2]))

    def test_edge_perms_shape(self):
        group = automorphisms(cycle(4))
        assert group.edge_perms.shape == (8, 4)
        assert np.array_equal(group.edge_perms[0], np.arange(4))
        assert group.edge_perms.dtype == np.int8

    def test_edge_table_byte_cap(self, monkeypatch):
        monkeypatch.setattr(config, "EDGE_ACTION_MAX_BYTES", 100)
        group = automorphisms(complete(5), time_budget=60.0)
        with pytest.raises(UnsupportedSizeError, match="edge action table bytes"):
            group.edge_perms

    @pytest.mark.parametrize("g", [cycle(6), complete(5), friendship(3), complete_bipartite(2, 3)])
    def test_inverse_rows(self, g):
        group = automorphisms(g)
        inverses = group.perms[group.inverse_rows]
        composed = np.take_along_axis(inverses, group.perms.astype(np.intp), axis=1)
        assert np.all(composed == np.arange(g.n))
        assert group.inverse_rows[0] == 0

    def test_count_preserving(self):
        group = automorphisms(path(4))
        assert count_preserving(group.perms, np.array([1, 2, 2, 1])) == 2
        assert count_preserving(group.perms, np.array([1, 1, 2, 2])) == 1
        assert count_preserving(automorphisms(complete(4)).perms, np.ones(4), limit=1) > 1

    def test_equitable_partition_is_invariant(self):
        colors = equitable_partition(path(5))
        assert colors[0] == colors[4] and colors[1] == colors[3]
        assert len(set(colors)) == 3

    @settings(max_examples=30, deadline=None)
    @given(graphs(max_n=4), graphs(max_n=4))
    def test_automorphisms_permute_non_neighborhoods(self, g, h):
        jg = join(g, h).graph
        for p in automorphisms(jg).elements:
            for u in jg.vertices():
                image = frozenset(p(w) for w in non_neighborhood(jg, u))
                assert image == non_neighborhood(jg, p(u))
