import pytest
from hypothesis import given, settings

from tests.conftest import graphs
from utils.errors import GraphInputError
from utils.graph import complete, cycle, path
from utils.graph_io import (
    looks_like_edge_list,
    parse_edge_list,
    parse_graph6,
    parse_graph6_lines,
    write_edge_list,
    write_graph6,
)


class TestGraph6:
    def test_known_strings(self):
        assert write_graph6(complete(1)) == "@"
        assert write_graph6(complete(2)) == "A_"
        assert write_graph6(path(1)) == "@"

    def test_parse_known(self):
        assert parse_graph6("A_") == complete(2)
        assert parse_graph6(">>graph6<<A_\n") == complete(2)

    @settings(max_examples=200, deadline=None)
    @given(graphs(max_n=12))
    def test_write_then_parse(self, g):
        assert parse_graph6(write_graph6(g)) == g

    @pytest.mark.parametrize("text", ["", "   ", "A\x01", "A é"])
    def test_rejects_malformed(self, text):
        with pytest.raises(GraphInputError):
            parse_graph6(text)

    def test_lines(self):
        text = write_graph6(cycle(5)) + "\n\n" + write_graph6(path(4)) + "\n"
        assert parse_graph6_lines(text) == [cycle(5), path(4)]


class TestEdgeList:
    def test_parse(self):
        g = parse_edge_list("# a triangle\n3 3\n0 1\n1 2\n2 0\n")
        assert g == complete(3)

    def test_write_then_parse(self):
        assert parse_edge_list(write_edge_list(cycle(6))) == cycle(6)

    @pytest.mark.parametrize("text", [
        "",
        "3\n0 1\n",
        "3 2\n0 1\n",
        "2 1\n1 1\n",
        "2 1\n0 2\n",
        "2 1\n0 x\n",
        "-1 0\n",
    ])
    def test_rejects_malformed(self, text):
        with pytest.raises(GraphInputError):
            parse_edge_list(text)

    def test_sniffing(self):
        assert looks_like_edge_list("3 1\n0 1\n")
        assert not looks_like_edge_list("Bw\n")
        assert not looks_like_edge_list("")
