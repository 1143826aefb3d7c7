import io
import json

import numpy as np
import pytest

from services import runner
from services.serializer import (
    CORPUS_HEADER,
    corpus_row,
    digest,
    dumps,
    read_witness,
    reverify,
    sanitize,
    write_csv,
)
from utils.bounds import full_report
from utils.distinguishing import EdgeLabeling, Labeling, distinguishing_index, distinguishing_number
from utils.errors import GraphInputError, InvariantViolation, UnsupportedSizeError
from utils.graph import complete, complete_bipartite, cycle, path


class TestParseRange:
    def test_keys(self):
        assert runner.parse_range("n=2..5,k=2") == {"n": range(2, 6), "k": range(2, 3)}

    def test_corpus(self):
        assert runner.parse_range("corpus<=6") == {"corpus": 6}
        assert runner.parse_range("corpus≤4") == {"corpus": 4}

    def test_empty(self):
        assert runner.parse_range(None) == {}

    def test_sample_order(self):
        pairs = runner._pairs(runner.parse_range("corpus<=1,sample=100,sample_order=6"))
        assert len(pairs) == 101
        assert all(g1.n == 6 and g2.n == 6 for g1, g2 in pairs[1:])

    def test_sample_defaults_to_next_order(self):
        pairs = runner._pairs(runner.parse_range("corpus<=3,sample=5"))
        assert all(g1.n == 4 and g2.n == 4 for g1, g2 in pairs[-5:])

    @pytest.mark.parametrize("text", ["n=5..2", "n", "corpus<6", "n=2..x"])
    def test_rejects(self, text):
        with pytest.raises(GraphInputError):
            runner.parse_range(text)


class TestRunInstance:
    def _run(self, check):
        return runner.run_instance(runner.Instance("demo", "case", check))

    def test_passed(self):
        outcome = self._run(lambda: (True, False, {"x": 1}))
        assert outcome.passed and not outcome.skipped and outcome.detail == {"x": 1}
        assert outcome.elapsed_s is None

    def test_cap_is_skipped(self):
        def check():
            raise UnsupportedSizeError("order", 20, 16)

        outcome = self._run(check)
        assert outcome.passed and outcome.skipped

    def test_violation_fails_with_certificate(self):
        def check():
            raise InvariantViolation("bad", {"labels": [1, 1]})

        outcome = self._run(check)
        assert not outcome.passed
        assert outcome.detail["certificate"] == {"labels": [1, 1]}

    def test_unexpected_error_fails(self):
        def check():
            raise RuntimeError("boom")

        outcome = self._run(check)
        assert not outcome.passed
        assert "RuntimeError" in outcome.detail["error"]


class TestVerify:
    def test_iterated(self):
        manifest = runner.verify("iterated", "n=2..3,k=2")
        assert manifest.passed
        assert [e.instance for e in manifest.entries] == ["G3x2", "G6x2", "G7x2"]
        assert len(manifest.input_digests) == 3
        assert manifest.command == "verify --theorem iterated --range n=2..3,k=2"

    def test_imrich_default_range(self):
        manifest = runner.verify("imrich")
        assert manifest.passed
        assert len(manifest.entries) == 7
        skipped = [e.instance for e in manifest.entries if e.skipped]
        assert skipped == ["k=2,n=2", "k=3,n=3"]

    def test_friendship(self):
        assert runner.verify("friendship").passed

    @pytest.mark.parametrize("theorem", ["thh5", "djoin", "selfjoin", "spanning", "thmd1", "thmd2", "lemma22", "cor23", "rem"])
    def test_small_corpus(self, theorem):
        manifest = runner.verify(theorem, "corpus<=3")
        assert manifest.passed, manifest.failure
        assert manifest.entries

    def test_deterministic_across_thread_counts(self):
        one = runner.verify("lemma22", "corpus<=3", threads=1)
        four = runner.verify("lemma22", "corpus<=3", threads=4)
        assert one.model_dump() == four.model_dump()

    def test_unknown_theorem(self):
        with pytest.raises(GraphInputError):
            runner.verify("nosuch")

    def test_caps_recorded(self):
        manifest = runner.verify("friendship", "n=2")
        assert manifest.caps["aut_vertex_cap"] == 16


class TestCorpusRows:
    def test_rows(self):
        rows = list(runner.corpus_rows(3, threads=2))
        assert len(rows) == 10
        assert all(len(r) == len(CORPUS_HEADER) for r in rows)
        first = dict(zip(CORPUS_HEADER, rows[0]))
        assert (first["n"], first["m"], first["D1"], first["D2"], first["D_join"]) == ("1", "1", "1", "1", "2")
        assert first["Dprime_join"] == ""
        assert first["violations"] == ""

    def test_csv(self):
        stream = io.StringIO()
        write_csv([corpus_row(full_report(path(3), cycle(4)))], stream)
        lines = stream.getvalue().splitlines()
        assert lines[0] == ",".join(CORPUS_HEADER)
        assert len(lines) == 2


class TestSerializer:
    def test_sanitize(self):
        data = {"a": np.int64(3), "b": np.array([1, 2]), "c": frozenset({2, 1}), 4: np.bool_(True)}
        assert sanitize(data) == {"a": 3, "b": [1, 2], "c": [1, 2], "4": True}
        assert json.loads(dumps(data))["a"] == 3

    def test_digest_is_stable(self):
        assert digest(cycle(5)) == digest(cycle(5).renamed("ring"))
        assert len(digest(cycle(5))) == 16

    def test_witnesses_reverify(self):
        g = complete_bipartite(2, 3)
        vertex = distinguishing_number(g).witness
        edge = distinguishing_index(g).witness
        assert reverify(g, json.dumps(vertex.to_dict()))
        assert reverify(g, edge.to_dict())
        assert isinstance(read_witness(g, vertex.to_dict()), Labeling)
        assert isinstance(read_witness(g, edge.to_dict()), EdgeLabeling)

    def test_bad_witness(self):
        g = complete(3)
        assert not reverify(g, {"labels": [1, 1, 2]})
        with pytest.raises(GraphInputError):
            read_witness(g, "{not json")
        with pytest.raises(GraphInputError):
            read_witness(g, {})
        with pytest.raises(GraphInputError):
            read_witness(g, {"labels": [1, 2]})
