"""Command line behaviour: artifact round trips, determinism, diagnostics."""
import json
import re
import subprocess
import sys

import pytest

from multisense.cli import main
from multisense.corpus import Vocabulary
from multisense.evaluation import EvalReport


def run(*argv):
    return main([str(a) for a in argv])


# -- artifact producing commands --------------------------------------------------


def test_build_vocab_writes_vocab(tmp_path, capsys):
    assert run("build-vocab", "--out-dir", tmp_path) == 0
    vocab = Vocabulary.load(tmp_path / "vocab.json")
    out = capsys.readouterr().out
    assert f"{vocab.n_words} words" in out
    assert f"{vocab.n_senses} senses" in out
    assert (tmp_path / "run-config.json").exists()


def test_build_graph_writes_graph(tmp_path, capsys):
    assert run("build-graph", "--out-dir", tmp_path) == 0
    payload = json.loads((tmp_path / "graph.json").read_text())
    assert payload["format"] == "multisense-graph"
    assert "nodes" in capsys.readouterr().out


def test_gold_mfs_round_trip(tmp_path, capsys):
    assert run("train", "--variant", "mfs", "--lm", "gold", "--out-dir", tmp_path) == 0
    assert run("evaluate", "--variant", "mfs", "--lm", "gold", "--out-dir", tmp_path) == 0
    report = EvalReport.load(tmp_path / "report.json")
    assert report.globals_acc == 1.0
    assert report.word_ppl == pytest.approx(1.0, abs=1e-9)
    assert report.sense_ppl_flag == "non-significant"
    table = capsys.readouterr().out
    assert "mfs" in table and "gold" in table
    assert "(non-significant)" in table


def test_evaluate_twice_identical_reports(tmp_path):
    run("train", "--variant", "mfs", "--lm", "gold", "--out-dir", tmp_path)
    run("evaluate", "--variant", "mfs", "--lm", "gold", "--out-dir", tmp_path)
    first = (tmp_path / "report.json").read_bytes()
    run("evaluate", "--variant", "mfs", "--lm", "gold", "--out-dir", tmp_path)
    assert (tmp_path / "report.json").read_bytes() == first


def test_train_twice_same_seed_identical_checkpoints(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert run("train", "--variant", "dense-gru", "--epochs", 1,
                   "--seed", 5, "--out-dir", out) == 0
    assert (a / "sense-lm.json").read_bytes() == (b / "sense-lm.json").read_bytes()


def test_pretrain_twice_same_seed_identical_checkpoints(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert run("pretrain", "--lm", "gru", "--epochs", 1,
                   "--seed", 5, "--out-dir", out) == 0
    assert (a / "word-lm.json").read_bytes() == (b / "word-lm.json").read_bytes()


def test_trained_gru_evaluate_round_trip(tmp_path):
    assert run("pretrain", "--lm", "gru", "--epochs", 1, "--out-dir", tmp_path) == 0
    assert run("train", "--variant", "selectk", "--epochs", 1, "--out-dir", tmp_path) == 0
    assert run("evaluate", "--variant", "selectk", "--lm", "gru", "--k", 5,
               "--out-dir", tmp_path) == 0
    report = EvalReport.load(tmp_path / "report.json")
    assert report.config["k"] == 5
    assert report.word_ppl > 1.0


def test_graph_checkpoint_demands_matching_flag(tmp_path, capsys):
    assert run("pretrain", "--lm", "gru", "--epochs", 1, "--use-graph",
               "--out-dir", tmp_path) == 0
    run("train", "--variant", "mfs", "--out-dir", tmp_path)
    capsys.readouterr()
    assert run("evaluate", "--variant", "mfs", "--lm", "gru", "--out-dir", tmp_path) == 2
    assert "use_graph" in capsys.readouterr().err
    assert run("evaluate", "--variant", "mfs", "--lm", "gru", "--use-graph",
               "--out-dir", tmp_path) == 0


# -- predict ----------------------------------------------------------------------


def test_predict_lists_words_with_their_senses(tmp_path, capsys):
    run("pretrain", "--lm", "gru", "--epochs", 1, "--out-dir", tmp_path)
    run("train", "--variant", "mfs", "--out-dir", tmp_path)
    capsys.readouterr()
    assert run("predict", "--lm", "gru", "--variant", "mfs", "--k", 3,
               "--out-dir", tmp_path) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("prompt: John sat on the bank")
    word_lines = [l for l in lines[1:] if re.search(r"p=0\.\d{4}$", l)]
    sense_lines = [l for l in lines[1:] if l not in word_lines]
    assert len(word_lines) == 3
    assert sense_lines  # every word carries at least one scored sense below it
    for line in sense_lines:
        key, score = line.split()
        assert "." in key  # sense keys look like lemma.senseNN
        float(score)


def test_predict_scores_senses_for_each_listed_word(tmp_path, capsys):
    run("pretrain", "--lm", "gru", "--epochs", 1, "--out-dir", tmp_path)
    run("train", "--variant", "mfs", "--out-dir", tmp_path)
    capsys.readouterr()
    run("predict", "--lm", "gru", "--variant", "mfs", "--k", 2, "--out-dir", tmp_path)
    lines = capsys.readouterr().out.splitlines()[1:]
    current = None
    for line in lines:
        if re.search(r"p=0\.\d{4}$", line):
            current = line.split()[0]
        else:
            # indented sense rows belong to the word announced above them
            assert current is not None
            assert line.split()[0].startswith(current.rstrip("."))


def test_predict_rejects_gold_model(tmp_path, capsys):
    assert run("predict", "--lm", "gold", "--out-dir", tmp_path) == 2
    assert "gold" in capsys.readouterr().err


def test_pretrain_rejects_gold_model(tmp_path, capsys):
    assert run("pretrain", "--lm", "gold", "--out-dir", tmp_path) == 2
    assert "gold" in capsys.readouterr().err


# -- configuration plumbing -------------------------------------------------------


def test_toml_config_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "run.toml"
    cfg.write_text(f'variant = "mfs"\nlm = "gold"\nout_dir = "{tmp_path}"\nseed = 7\n')
    assert run("train", "--config", cfg, "--variant", "sensecontext") == 0
    echo = json.loads((tmp_path / "run-config.json").read_text())
    assert echo["variant"] == "sensecontext"  # flag wins over file
    assert echo["seed"] == 7
    assert echo["format"] == "multisense-run-config"


def test_json_config_loads(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"variant": "mfs", "lm": "gold", "out_dir": str(tmp_path)}))
    assert run("train", "--config", cfg) == 0
    assert (tmp_path / "sense-stats.json").exists()


def test_invalid_config_value_single_line_diagnostic(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"variant": "bogus"}))
    assert run("train", "--config", cfg, "--out-dir", tmp_path) == 2
    err = capsys.readouterr().err
    assert err.startswith("error:")
    assert err.strip().count("\n") == 0
    assert "bogus" in err


def test_unknown_config_key_named(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"wheels": 4}))
    assert run("train", "--config", cfg) == 2
    assert "wheels" in capsys.readouterr().err


def test_bad_k_for_localized_variant(tmp_path, capsys):
    assert run("evaluate", "--variant", "selectk", "--k", 0, "--lm", "gold",
               "--out-dir", tmp_path) == 2
    assert "k >= 1" in capsys.readouterr().err


def test_missing_data_file_names_path(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"labelled": "/nonexistent/labels.jsonl"}))
    assert run("build-vocab", "--config", cfg, "--out-dir", tmp_path) == 2
    assert "/nonexistent/labels.jsonl" in capsys.readouterr().err


def test_missing_checkpoint_names_path(tmp_path, capsys):
    assert run("evaluate", "--variant", "selectk", "--lm", "gold",
               "--out-dir", tmp_path) == 2
    err = capsys.readouterr().err
    assert str(tmp_path / "sense-lm.json") in err


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "multisense", "--help"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    for command in ("build-vocab", "build-graph", "pretrain", "train", "evaluate", "predict"):
        assert command in proc.stdout
