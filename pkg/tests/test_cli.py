import json

import pytest

import config
from cli import main
from utils.graph import join, path, star
from utils.graph_io import write_graph6


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestGen:
    def test_unary(self, capsys):
        code, out = _run(capsys, "gen", "path", "5")
        assert code == 0
        assert out.strip() == write_graph6(path(5))

    def test_comma_params(self, capsys):
        _, a = _run(capsys, "gen", "complete_bipartite", "3,2")
        _, b = _run(capsys, "gen", "complete_bipartite", "3", "2")
        assert a == b

    def test_join(self, capsys):
        _, out = _run(capsys, "gen", "join", "star:3", "star:3")
        assert out.strip() == write_graph6(join(star(3), star(3)).graph)

    def test_unknown_family(self, capsys):
        assert main(["gen", "nosuch", "3"]) == 2


class TestCompute:
    def test_number(self, capsys):
        code, out = _run(capsys, "compute", "--what", "number", "cycle:5")
        data = json.loads(out)
        assert code == 0
        assert data["value"] == 3 and data["verified"] is True
        assert len(data["witness"]["labels"]) == 5

    def test_index(self, capsys):
        _, out = _run(capsys, "compute", "--what", "index", "complete:4")
        data = json.loads(out)
        assert data["value"] == 3 and data["defined"] and data["verified"]
        assert len(data["witness"]["edge_labels"]) == 6

    def test_index_not_defined(self, capsys):
        code, out = _run(capsys, "compute", "--what", "index", "complete:2")
        data = json.loads(out)
        assert code == 0
        assert data["value"] is None and data["defined"] is False

    def test_aut(self, capsys):
        _, out = _run(capsys, "compute", "--what", "aut", "path:3")
        data = json.loads(out)
        assert data["value"] == 2 and data["orbits"] == [[0, 2], [1]]
        assert data["runtime_s"] is None

    def test_timings(self, capsys):
        _, out = _run(capsys, "--timings", "compute", "--what", "aut", "path:3")
        assert json.loads(out)["runtime_s"] is not None

    def test_graph6_argument(self, capsys):
        _, out = _run(capsys, "compute", "--what", "number", write_graph6(path(4)))
        assert json.loads(out)["value"] == 2

    def test_single_vertex_from_gen(self, capsys):
        _, g6 = _run(capsys, "gen", "complete", "1")
        code, out = _run(capsys, "compute", "--what", "number", g6.strip())
        assert code == 0
        assert json.loads(out)["value"] == 1

    def test_bad_input_exit_code(self, capsys):
        assert main(["compute", "--what", "number", "cycle:2"]) == 2
        assert "Error:" in capsys.readouterr().err

    def test_cap_exit_code(self, capsys):
        assert main(["--aut-cap", "3", "compute", "--what", "aut", "complete:5"]) == 3
        assert config.AUT_VERTEX_CAP == 3


class TestPartition:
    def test_friendship_pair(self, capsys):
        code, out = _run(capsys, "partition", "friendship:2", "friendship:3")
        data = json.loads(out)
        assert code == 0
        assert data["A"] == [[0], [1, 2, 3, 4]]
        assert data["q"] == 1 and data["z"] == 1
        assert data["lambda1"] is None and data["lambda2"] == 3
        assert data["witness"]["pairs"] == [[0, 1], [1, 2]]


class TestBounds:
    def test_bipartite_pair(self, capsys):
        code, out = _run(capsys, "bounds", "complete_bipartite:3,2", "complete_bipartite:3,1", "--exact")
        data = json.loads(out)
        assert code == 0
        assert data["violations"] == []
        djoin = next(e for e in data["entries"] if e["theorem"] == "djoin")
        assert djoin["bound"] == 4 and djoin["exact"] == 4

    def test_without_exact(self, capsys):
        code, out = _run(capsys, "bounds", "path:4", "path:5")
        assert code == 0
        assert json.loads(out)["descriptors"]["lambda1"] == 2


class TestVerify:
    def test_iterated(self, capsys):
        code, out = _run(capsys, "verify", "--theorem", "iterated", "--range", "n=2..3,k=2")
        data = json.loads(out)
        assert code == 0 and data["passed"]
        assert data["tool_version"] == config.TOOL_VERSION

    def test_repeatable(self, capsys):
        _, first = _run(capsys, "--threads", "1", "verify", "--theorem", "rem", "--range", "corpus<=3")
        _, second = _run(capsys, "--threads", "3", "verify", "--theorem", "rem", "--range", "corpus<=3")
        assert first == second

    def test_bad_range(self, capsys):
        assert main(["verify", "--theorem", "thh5", "--range", "n=5..2"]) == 2

    def test_unknown_theorem_rejected_by_parser(self):
        with pytest.raises(SystemExit):
            main(["verify", "--theorem", "nosuch"])


class TestCorpus:
    def test_rows(self, capsys):
        code, out = _run(capsys, "corpus", "--max-order", "2")
        lines = out.splitlines()
        assert code == 0
        assert lines[0].startswith("left,right,n,m,D1,D2")
        assert len(lines) == 1 + 3

    def test_no_exact(self, capsys):
        _, out = _run(capsys, "corpus", "--max-order", "2", "--no-exact")
        for line in out.splitlines()[1:]:
            assert line.split(",")[6] == ""

    def test_beyond_atlas(self, capsys):
        assert main(["corpus", "--max-order", "9"]) == 2
