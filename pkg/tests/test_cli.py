import json
import sys

import pytest

from lemcoref.cli import main
from lemcoref.corpus import write_corpus
from lemcoref.synth import synthetic_corpus

from conftest import MINI_CORPUS, MINI_DOCUMENTS

ECHO = f"{sys.executable} -m lemcoref.echo_scorer"


def run_cli(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_stats(capsys):
    code, out, _ = run_cli(capsys, "stats", "--corpus", MINI_CORPUS)
    assert code == 0
    table = json.loads(out)
    assert table["test"]["mentions"] == 28


@pytest.mark.parametrize("argv", [["stats"], ["nonsense-command"]])
def test_usage_error_exits_1(capsys, argv):
    with pytest.raises(SystemExit) as err:
        main(argv)
    assert err.value.code == 1
    capsys.readouterr()


def test_missing_corpus_is_data_error(capsys):
    code, _, err = run_cli(capsys, "stats", "--corpus", "/nonexistent.jsonl")
    assert code == 2
    assert "lemcoref" in err


def test_syn_pairs_and_filter_and_cluster_and_evaluate(tmp_path, capsys):
    syn_path = tmp_path / "syn.tsv"
    code, out, _ = run_cli(capsys, "syn-pairs", "--corpus", MINI_CORPUS,
                           "--splits", "train", "--out", syn_path)
    assert code == 0 and syn_path.exists()

    verdicts_path = tmp_path / "verdicts.jsonl"
    code, _, _ = run_cli(capsys, "filter", "--corpus", MINI_CORPUS,
                         "--splits", "test", "--syn", syn_path,
                         "--threshold", "0.05", "--out", verdicts_path)
    assert code == 0

    clusters_path = tmp_path / "clusters.jsonl"
    code, _, _ = run_cli(capsys, "cluster", "--corpus", MINI_CORPUS,
                         "--splits", "test", "--verdicts", verdicts_path,
                         "--out", clusters_path)
    assert code == 0

    code, out, _ = run_cli(capsys, "evaluate", "--corpus", MINI_CORPUS,
                           "--splits", "test", "--clusters", clusters_path)
    assert code == 0
    report = json.loads(out)
    assert 0.0 <= report["conll_f1"] <= 1.0


def test_tune_prints_threshold(capsys):
    code, out, _ = run_cli(capsys, "tune", "--corpus", MINI_CORPUS,
                           "--grid", "0.0,0.1,0.2")
    assert code == 0
    assert json.loads(out)["threshold"] in (0.0, 0.1, 0.2)


def test_tune_without_dev_split_fails(tmp_path, capsys):
    corpus = synthetic_corpus(seed=3, topics_per_split={"train": 1, "test": 1})
    path = tmp_path / "c.jsonl"
    write_corpus(corpus, path)
    code, _, err = run_cli(capsys, "tune", "--corpus", path)
    assert code == 2
    assert "dev" in err


def test_export_train(tmp_path, capsys):
    out_path = tmp_path / "train.jsonl"
    code, out, _ = run_cli(capsys, "export-train", "--corpus", MINI_CORPUS,
                           "--threshold", "0.05", "--out", out_path)
    assert code == 0
    counts = json.loads(out)
    lines = [json.loads(l) for l in out_path.read_text(encoding="utf-8").splitlines()]
    assert counts["positive"] + counts["negative"] == len(lines)
    assert {l["label"] for l in lines} <= {0, 1}
    assert all("context_ab" in l and "context_ba" in l for l in lines)


def test_run_without_scorer_stops_at_heuristic(tmp_path, capsys):
    out_dir = tmp_path / "run"
    code, out, _ = run_cli(capsys, "run", "--corpus", MINI_CORPUS,
                           "--documents", MINI_DOCUMENTS, "--splits", "test",
                           "--threshold", "0.05", "--out", out_dir)
    assert code == 0
    assert "discriminator_conll_f1" not in json.loads(out)
    assert (out_dir / "metrics_heuristic.json").exists()
    assert (out_dir / "requests.jsonl").exists()
    assert not (out_dir / "metrics_discriminator.json").exists()


def test_run_with_failing_scorer_exits_3(tmp_path, capsys):
    code, _, err = run_cli(
        capsys, "run", "--corpus", MINI_CORPUS, "--splits", "test",
        "--threshold", "0.05", "--out", tmp_path / "run",
        "--scorer", f"{sys.executable} -c 'import sys; sys.exit(9)'")
    assert code == 3
    assert "scorer" in err


def test_analyze_outputs(tmp_path, capsys):
    out_dir = tmp_path / "run"
    run_cli(capsys, "run", "--corpus", MINI_CORPUS, "--splits", "test",
            "--threshold", "0.05", "--out", out_dir)
    analysis_dir = tmp_path / "analysis"
    code, _, _ = run_cli(capsys, "analyze", "--corpus", MINI_CORPUS,
                         "--splits", "test", "--threshold", "0.05",
                         "--clusters", out_dir / "clusters_heuristic.jsonl",
                         "--edges", out_dir / "candidates.jsonl",
                         "--out", analysis_dir)
    assert code == 0
    for name in ("distributions.csv", "purity.csv", "errors.jsonl"):
        assert (analysis_dir / name).exists()


def test_version_reports_backend(capsys):
    with pytest.raises(SystemExit) as err:
        main(["--version"])
    assert err.value.code == 0
    out = capsys.readouterr().out
    assert "kernel backend" in out
