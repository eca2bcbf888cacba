"""Command-line interface tests (in-process, via main(argv))."""

import json

import pytest

from webbitext.cli import main

from conftest import text_with_length


@pytest.fixture
def worked_files(tmp_path):
    en = tmp_path / "en.html"
    fr = tmp_path / "fr.html"
    en.write_text("<HTML><TITLE>Emergency Exit</TITLE><BODY>"
                  "<H1>Emergency Exit</H1>"
                  + text_with_length("If seated at an exit and", 112),
                  encoding="utf-8")
    fr.write_text("<HTML><TITLE>Sortie de Secours</TITLE><BODY>"
                  + text_with_length("Si vous êtes assis", 122),
                  encoding="utf-8")
    return str(en), str(fr)


def test_query_prints_exact_string(capsys):
    assert main(["query", "--lang1", "english", "--lang2", "french"]) == 0
    assert capsys.readouterr().out == 'anchor:"english" AND anchor:"french"\n'


def test_linearize_golden_output(capsys, worked_files):
    en, _ = worked_files
    assert main(["linearize", en]) == 0
    out = capsys.readouterr().out
    assert out == ("[START:HTML]\n[START:TITLE]\n[Chunk:13]\n[END:TITLE]\n"
                   "[START:BODY]\n[START:H1]\n[Chunk:13]\n[END:H1]\n"
                   "[Chunk:112]\n")


def test_align_renders_two_columns_with_sdiff_marks(capsys, worked_files):
    en, fr = worked_files
    assert main(["align", en, fr]) == 0
    out = capsys.readouterr().out
    lines = out.splitlines()
    assert lines[0] == "[START:HTML]    [START:HTML]"
    assert lines[2] == "[Chunk:13]    | [Chunk:15]"
    assert lines[5] == "[START:H1]    <"
    assert lines[8] == "[Chunk:112]   | [Chunk:122]"
    assert "mismatched tokens: 3 of 15 (ratio 0.2000)" in out


def test_evaluate_exit_codes(capsys, tmp_path, worked_files):
    en, fr = worked_files
    # the bare fragment has too few unequal chunk pairs: reject, exit 1
    assert main(["evaluate", en, fr]) == 1
    report = json.loads(capsys.readouterr().out)
    assert report["verdict"] == "reject"
    assert report["reject_reason"] == "insufficient_pairs"

    # a ten-section parallel pair: accept, exit 0
    left = tmp_path / "l.html"
    right = tmp_path / "r.html"
    lx = [30 + 13 * i for i in range(10)]
    left.write_text("<HTML>" + "".join(
        "<P>%s</P>" % text_with_length("", v) for v in lx), encoding="utf-8")
    right.write_text("<HTML>" + "".join(
        "<P>%s</P>" % text_with_length("", round(1.1 * v) + 1) for v in lx),
        encoding="utf-8")
    assert main(["evaluate", str(left), str(right)]) == 0
    assert json.loads(capsys.readouterr().out)["verdict"] == "accept"

    # config errors exit 2
    assert main(["evaluate", str(left), str(right), "--k", "7"]) == 2
    assert main(["evaluate", str(left), "/nonexistent/file.html"]) == 2


def test_generate_writes_candidates_tsv(capsys, tmp_path):
    hub = tmp_path / "hub.html"
    hub.write_text('<A HREF="en.html">English</A>\n'
                   '<A HREF="es.html">Spanish</A>\n', encoding="utf-8")
    hubs = tmp_path / "hubs.txt"
    hubs.write_text(str(hub) + "\n", encoding="utf-8")
    assert main(["generate", "--lang1", "english",
                 "--lang2", "spanish,español", "--hubs", str(hubs)]) == 0
    out = capsys.readouterr().out.strip().split("\t")
    assert out[0] == str(tmp_path / "en.html")
    assert out[1] == str(tmp_path / "es.html")
    assert out[3] == "1"


def test_langid_train_and_classify(capsys, tmp_path):
    from webbitext.democorpus import sample_text

    en_txt = tmp_path / "en.txt"
    en_txt.write_text(sample_text("en"), encoding="utf-8")
    es_txt = tmp_path / "es.txt"
    es_txt.write_text(sample_text("es"), encoding="utf-8")
    en_model = tmp_path / "en.model"
    es_model = tmp_path / "es.model"
    assert main(["langid", "train", "--lang", "en", "--in", str(en_txt),
                 "--out", str(en_model)]) == 0
    assert main(["langid", "train", "--lang", "es", "--in", str(es_txt),
                 "--out", str(es_model)]) == 0
    capsys.readouterr()
    assert main(["langid", "classify",
                 "--models", "%s,%s" % (en_model, es_model),
                 "--text", "the children walked to the village school"]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["language"] == "en"
    assert result["scores"]["en"] > result["scores"]["es"]


def test_run_and_score_roundtrip(capsys, tmp_path, demo_corpus, lang_models):
    out_dir = tmp_path / "out"
    code = main(["run", "--lang1", "english", "--lang2", "spanish,español",
                 "--hubs", demo_corpus["hubs_file"], "--out", str(out_dir),
                 "--jobs", "2"])
    assert code == 0
    run_out = capsys.readouterr().out
    assert "accepted: 13" in run_out
    assert main(["score", "--reports", str(out_dir / "reports.jsonl"),
                 "--gold", demo_corpus["gold_file"]]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["accepted_count"] == 13
    assert summary["true_positives"] == 12
    assert summary["precision_pct"] == 92.3

    filtered_dir = tmp_path / "out_filtered"
    code = main(["run", "--lang1", "english", "--lang2", "spanish,español",
                 "--hubs", demo_corpus["hubs_file"], "--out", str(filtered_dir),
                 "--langid-filter",
                 "--langid-models", ",".join(lang_models),
                 "--expected-langs", "en,es"])
    assert code == 0
    assert "accepted: 12" in capsys.readouterr().out


def test_fetch_command_reports_statuses(capsys, tmp_path):
    page = tmp_path / "a.html"
    page.write_text("<HTML><BODY>x</BODY></HTML>", encoding="utf-8")
    cands = tmp_path / "c.tsv"
    cands.write_text("%s\t%s\t\t\n" % (page, tmp_path / "missing.html"),
                     encoding="utf-8")
    assert main(["fetch", "--pairs", str(cands),
                 "--cache", str(tmp_path / "cache")]) == 0
    lines = [json.loads(l) for l in capsys.readouterr().out.splitlines()]
    by_url = {rec["url"]: rec["status"] for rec in lines}
    assert by_url[str(page)] == "ok"
    assert by_url[str(tmp_path / "missing.html")] == "not_found"


def test_run_with_empty_hub_list_exits_zero(capsys, tmp_path):
    hubs = tmp_path / "hubs.txt"
    hubs.write_text("", encoding="utf-8")
    assert main(["run", "--lang1", "english", "--lang2", "spanish",
                 "--hubs", str(hubs), "--out", str(tmp_path / "out")]) == 0
    assert "generated: 0" in capsys.readouterr().out


def test_missing_subcommand_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
