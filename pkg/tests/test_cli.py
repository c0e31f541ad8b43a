import json

import pytest

from winoscore import cli
from winoscore.dataset import export_jsonl, import_xml
from winoscore.stubserver import make_server, running_server
from winoscore.synthetic import build_suite, write_files

TROPHY_XML = """<collection>
<schema>
  <text>
    <txt1>the ball does not fit because</txt1>
    <pron>it</pron>
    <txt2>is big .</txt2>
  </text>
  <answers><answer>ball</answer><answer>cup</answer></answers>
  <correctAnswer>A</correctAnswer>
</schema>
</collection>"""


@pytest.fixture(scope="module")
def workdir(tmp_path_factory):
    d = tmp_path_factory.mktemp("cliwork")
    suite = build_suite()
    write_files(suite, d)
    rc = cli.main(
        [
            "train",
            "--corpus", str(d / "corpus.txt"),
            "--order", "3",
            "--smoothing", "jm:0.1,0.3,0.6",
            "--out", str(d / "fwd.json"),
        ]
    )
    assert rc == 0
    rc = cli.main(
        [
            "train",
            "--corpus", str(d / "corpus.txt"),
            "--order", "3",
            "--smoothing", "jm:0.1,0.3,0.6",
            "--direction", "backward",
            "--out", str(d / "bwd.json"),
        ]
    )
    assert rc == 0
    return d


class TestTrainResolvePipeline:
    def test_trophy_format_end_to_end(self, tmp_path, capsys):
        corpus = tmp_path / "c.txt"
        corpus.write_text("the ball is big .\nthe cup is small .\n")
        xml = tmp_path / "q.xml"
        xml.write_text(TROPHY_XML)
        model = tmp_path / "m.json"
        assert cli.main(["train", "--corpus", str(corpus), "--order", "3",
                         "--smoothing", "laplace:0.1", "--out", str(model)]) == 0
        assert cli.main(["resolve", "--questions", str(xml),
                         "--scorers", f"ngram:{model}", "--mode", "partial"]) == 0
        out = capsys.readouterr().out
        assert "accuracy: 1.0000 (1/1)" in out

    def test_char_model_train_and_eval(self, workdir, capsys):
        model = workdir / "char.json"
        assert cli.main(["train", "--corpus", str(workdir / "corpus.txt"),
                         "--order", "4", "--level", "char",
                         "--smoothing", "laplace:0.1", "--out", str(model)]) == 0
        assert cli.main(["eval", "--questions", str(workdir / "questions.jsonl"),
                         "--scorers", f"ngram:{model}", "--modes", "partial"]) == 0
        assert "partial" in capsys.readouterr().out


class TestEval:
    def test_partial_twelve_of_twelve(self, workdir, capsys):
        rc = cli.main(["eval", "--questions", str(workdir / "questions.jsonl"),
                       "--scorers", f"ngram:{workdir / 'fwd.json'}",
                       "--modes", "partial"])
        assert rc == 0
        assert "1.0000  12/12" in capsys.readouterr().out

    def test_trap_correction_table(self, workdir, capsys):
        rc = cli.main(["eval", "--questions", str(workdir / "questions.jsonl"),
                       "--scorers", f"ngram:{workdir / 'fwd.json'}",
                       "--modes", "all"])
        assert rc == 0
        out = capsys.readouterr().out
        assert "wrong under full scoring: 3" in out
        assert "corrected by partial: 3 (100.0000%)" in out
        assert "corrected by full_normalized: 3 (100.0000%)" in out

    def test_machine_tsv_and_json(self, workdir, capsys):
        tsv = workdir / "r.tsv"
        js = workdir / "r.json"
        for out in (tsv, js):
            rc = cli.main(["eval", "--questions", str(workdir / "questions.jsonl"),
                           "--scorers", f"ngram:{workdir / 'fwd.json'}",
                           "--modes", "all", "--out", str(out)])
            assert rc == 0
        capsys.readouterr()
        lines = tsv.read_text().splitlines()
        assert len(lines) == 13  # header + 12 questions
        assert lines[0].startswith("id\tgold")
        report = json.loads(js.read_text())
        assert report["accuracy"]["partial"] == 1.0
        assert report["corrections"]["wrong_full"] == 3

    def test_no_gold_reports_decisions_only(self, workdir, tmp_path, capsys):
        import dataclasses

        suite = build_suite()
        stripped = [dataclasses.replace(q, gold_index=None) for q in suite.questions]
        from winoscore.dataset import QuestionSet

        path = tmp_path / "nogold.jsonl"
        export_jsonl(QuestionSet("nogold", tuple(stripped)), path)
        rc = cli.main(["eval", "--questions", str(path),
                       "--scorers", f"ngram:{workdir / 'fwd.json'}",
                       "--modes", "partial"])
        assert rc == 0
        assert "(no gold labels)" in capsys.readouterr().out

    def test_determinism_byte_identical(self, workdir, capsys):
        outs = []
        for i in range(2):
            out = workdir / f"det{i}.tsv"
            rc = cli.main(["eval", "--questions", str(workdir / "questions.jsonl"),
                           "--scorers", f"ngram:{workdir / 'fwd.json'}",
                           "--modes", "all", "--out", str(out)])
            assert rc == 0
            outs.append(out.read_bytes())
        capsys.readouterr()
        assert outs[0] == outs[1]

    def test_remote_scorer_through_eval(self, workdir, capsys):
        from winoscore import ngram

        model = ngram.load(workdir / "fwd.json")
        with running_server(make_server(scorer=model)) as url:
            rc = cli.main(["eval", "--questions", str(workdir / "questions.jsonl"),
                           "--scorers", f"remote:{url}", "--modes", "partial"])
        assert rc == 0
        assert "1.0000  12/12" in capsys.readouterr().out

    def test_unreachable_remote_fails_cleanly(self, workdir, capsys):
        rc = cli.main(["eval", "--questions", str(workdir / "questions.jsonl"),
                       "--scorers", "remote:http://127.0.0.1:9", "--modes", "partial"])
        assert rc == 1
        err = capsys.readouterr().err
        assert err.startswith("error\tUnavailable\t")
        assert "127.0.0.1:9" in err


class TestAnalyze:
    def test_forward_tally_and_heatmaps(self, workdir, capsys):
        heat = workdir / "heat"
        tally = workdir / "tally.tsv"
        rc = cli.main(["analyze", "--questions", str(workdir / "questions.jsonl"),
                       "--scorer", f"ngram:{workdir / 'fwd.json'}",
                       "--mode", "partial", "--quiet",
                       "--out-dir", str(heat), "--tally", str(tally)])
        assert rc == 0
        assert "12/12" in capsys.readouterr().out
        assert len(list(heat.glob("*.html"))) == 12
        body = tally.read_text().splitlines()
        assert body[0].startswith("direction\tmode")
        assert body[1].split("\t")[3:5] == ["12", "12"]

    def test_backward_analysis(self, workdir, capsys):
        rc = cli.main(["analyze", "--questions", str(workdir / "backward_questions.jsonl"),
                       "--scorer", f"ngram:{workdir / 'bwd.json'}",
                       "--backward", "--mode", "partial", "--quiet"])
        assert rc == 0
        assert "4/4" in capsys.readouterr().out

    def test_direction_mismatch_rejected(self, workdir, capsys):
        rc = cli.main(["analyze", "--questions", str(workdir / "questions.jsonl"),
                       "--scorer", f"ngram:{workdir / 'fwd.json'}",
                       "--backward", "--quiet"])
        assert rc == 1
        assert "ConfigError" in capsys.readouterr().err

    def test_unlabeled_questions_still_get_heatmaps(self, workdir, tmp_path, capsys):
        import dataclasses

        from winoscore.dataset import QuestionSet

        suite = build_suite()
        stripped = tuple(
            dataclasses.replace(q, gold_index=None) for q in suite.questions
        )
        path = tmp_path / "nogold.jsonl"
        export_jsonl(QuestionSet("nogold", stripped), path)
        heat = tmp_path / "heat"
        rc = cli.main(["analyze", "--questions", str(path),
                       "--scorer", f"ngram:{workdir / 'fwd.json'}",
                       "--mode", "partial", "--quiet", "--out-dir", str(heat)])
        assert rc == 0
        assert "0/0" in capsys.readouterr().out  # empty tally
        assert len(list(heat.glob("*.html"))) == 12


class TestImport:
    def test_xml_jsonl_eval_equivalence(self, workdir, tmp_path, capsys):
        xml = tmp_path / "q.xml"
        xml.write_text(TROPHY_XML)
        jsonl = tmp_path / "q.jsonl"
        assert cli.main(["import", "--in", str(xml), "--out", str(jsonl)]) == 0

        corpus = tmp_path / "c.txt"
        corpus.write_text("the ball is big .\nthe cup is small .\n")
        model = tmp_path / "m.json"
        assert cli.main(["train", "--corpus", str(corpus), "--order", "3",
                         "--out", str(model)]) == 0

        reports = []
        for src in (xml, jsonl):
            out = tmp_path / f"{src.suffix[1:]}.tsv"
            assert cli.main(["eval", "--questions", str(src), "--name", "same",
                             "--scorers", f"ngram:{model}", "--modes", "partial",
                             "--out", str(out)]) == 0
            reports.append(out.read_bytes())
        capsys.readouterr()
        assert reports[0] == reports[1]

    def test_import_jsonl_roundtrip_equals_library(self, tmp_path):
        xml_qs = import_xml(TROPHY_XML, name="q")
        direct = tmp_path / "direct.jsonl"
        export_jsonl(xml_qs, direct)
        via_cli = tmp_path / "cli.jsonl"
        xml = tmp_path / "q.xml"
        xml.write_text(TROPHY_XML)
        assert cli.main(["import", "--in", str(xml), "--out", str(via_cli)]) == 0
        assert direct.read_text() == via_cli.read_text()


class TestRankCommand:
    def test_ten_thousand_docs_fraction(self, tmp_path, capsys):
        import random

        rng = random.Random(0)
        docs = tmp_path / "docs.txt"
        vocab = ["a", "b", "c", "d", "x", "y", "z"]
        with open(docs, "w") as fh:
            for _ in range(10_000):
                fh.write(" ".join(rng.choices(vocab, k=8)) + "\n")
        questions = tmp_path / "q.jsonl"
        questions.write_text(json.dumps({
            "id": "q0", "text": "a b c d", "pronoun": [2, 3],
            "candidates": ["a", "b"], "gold": 0, "special_word": None,
        }) + "\n")
        out = tmp_path / "rank.tsv"
        hist = tmp_path / "hist.csv"
        rc = cli.main(["rank-corpus", "--questions", str(questions),
                       "--docs", str(docs), "--fraction", "0.001",
                       "--out", str(out), "--histogram", str(hist)])
        assert rc == 0
        capsys.readouterr()
        lines = out.read_text().splitlines()
        assert len(lines) == 11  # header + 10 kept documents
        assert sum(int(r.split("\t")[2]) for r in hist.read_text().splitlines()[1:]) == 10

    def test_contamination_and_extract(self, tmp_path, capsys):
        docs = tmp_path / "docs.txt"
        docs.write_text("a b c d\nzz ww qq\n")
        questions = tmp_path / "q.jsonl"
        questions.write_text(json.dumps({
            "id": "q0", "text": "a b c d", "pronoun": [2, 3],
            "candidates": ["a", "b"], "gold": 0, "special_word": None,
        }) + "\n")
        kept = tmp_path / "kept.txt"
        rc = cli.main(["rank-corpus", "--questions", str(questions),
                       "--docs", str(docs), "--fraction", "0.5",
                       "--out", str(tmp_path / "r.tsv"),
                       "--extract", str(kept),
                       "--contamination-threshold", "0.5"])
        assert rc == 0
        out = capsys.readouterr().out
        assert "doc 1 ~ question q0 score 1.0000" in out
        assert kept.read_text() == "a b c d\n"


class TestConfigFile:
    def test_config_presets_and_flag_override(self, workdir, capsys):
        cfg = workdir / "run.ini"
        cfg.write_text(
            "[eval]\n"
            f"questions = {workdir / 'questions.jsonl'}\n"
            f"scorers = ngram:{workdir / 'fwd.json'}\n"
            "modes = full\n"
        )
        rc = cli.main(["--config", str(cfg), "eval"])
        assert rc == 0
        out = capsys.readouterr().out
        assert "0.7500  9/12" in out

        rc = cli.main(["--config", str(cfg), "eval", "--modes", "partial"])
        assert rc == 0
        assert "1.0000  12/12" in capsys.readouterr().out


class TestServeStub:
    def test_process_serves_protocol(self, workdir):
        import socket
        import subprocess
        import sys
        import time

        import requests

        with socket.socket() as s:
            s.bind(("127.0.0.1", 0))
            port = s.getsockname()[1]
        proc = subprocess.Popen(
            [sys.executable, "-m", "winoscore.cli", "serve-stub",
             "--port", str(port), "--vocab-size", "77",
             "--model", str(workdir / "fwd.json")],
            stdout=subprocess.PIPE, stderr=subprocess.STDOUT,
        )
        try:
            deadline = time.time() + 10
            info = None
            while time.time() < deadline:
                try:
                    info = requests.get(f"http://127.0.0.1:{port}/health", timeout=1).json()
                    break
                except requests.ConnectionError:
                    time.sleep(0.1)
            assert info is not None, "server never came up"
            assert info["direction"] == "forward"
            resp = requests.post(
                f"http://127.0.0.1:{port}/score",
                json={"id": "s", "sequences": [["<s>", "the", "ball", "</s>"]]},
                timeout=5,
            ).json()
            assert len(resp["logprobs"][0]) == 3
        finally:
            proc.terminate()
            proc.wait(timeout=10)


class TestErrors:
    def test_missing_question_file(self, capsys):
        rc = cli.main(["eval", "--questions", "/nope/missing.jsonl", "--scorers", "ngram:x"])
        assert rc == 1
        assert capsys.readouterr().err.startswith("error\t")

    def test_bad_scorer_spec(self, workdir, capsys):
        rc = cli.main(["eval", "--questions", str(workdir / "questions.jsonl"),
                       "--scorers", "nonsense"])
        assert rc == 1
        assert "ConfigError" in capsys.readouterr().err
