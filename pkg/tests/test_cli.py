import io
import json

import pytest

from reaccent.cli import main


@pytest.fixture(scope="module")
def workdir(tmp_path_factory):
    """Corpus + trained model shared by the CLI tests."""
    d = tmp_path_factory.mktemp("cli")
    corpus = d / "corpus.txt"
    model = d / "model.tsv"
    assert main(["synth", "--keys", "4", "--occurrences", "60",
                 "-o", str(corpus)]) == 0
    assert main(["train", str(corpus), "-o", str(model)]) == 0
    return d


def corpus_of(workdir):
    return workdir / "corpus.txt"


def model_of(workdir):
    return workdir / "model.tsv"


class TestHappyPath:
    def test_train_reports_what_it_wrote(self, workdir, capsys):
        assert main(["train", str(corpus_of(workdir)),
                     "-o", str(workdir / "again.tsv")]) == 0
        out = capsys.readouterr().out
        assert "word lists" in out

    def test_restore_file_to_file(self, workdir, capsys):
        src = workdir / "in.txt"
        src.write_text("canto mate\n", encoding="utf-8")
        dst = workdir / "out.txt"
        assert main(["restore", str(src), "--model", str(model_of(workdir)),
                     "-o", str(dst)]) == 0
        assert dst.read_text(encoding="utf-8").endswith("\n")

    def test_restore_stdin_stdout(self, workdir, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO("canto\n"))
        assert main(["restore", "-", "--model", str(model_of(workdir))]) == 0
        out = capsys.readouterr().out
        assert out.strip() in ("canto", "cantó")

    def test_restore_round_trips_the_corpus(self, workdir, capsys):
        assert main(["restore", str(corpus_of(workdir)),
                     "--model", str(model_of(workdir))]) == 0
        restored = capsys.readouterr().out
        original = corpus_of(workdir).read_text(encoding="utf-8")
        assert restored == original  # noise-free corpus: exact reconstruction

    def test_restore_empty_input(self, workdir, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO(""))
        assert main(["restore", "-", "--model", str(model_of(workdir))]) == 0
        assert capsys.readouterr().out == ""

    def test_trace_lines_on_stderr(self, workdir, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO("canto\n"))
        assert main(["restore", "-", "--model", str(model_of(workdir)),
                     "--trace"]) == 0
        err = capsys.readouterr().err
        assert "key=canto" in err

    def test_eval_against_model(self, workdir, capsys):
        assert main(["eval", str(corpus_of(workdir)),
                     "--model", str(model_of(workdir))]) == 0
        out = capsys.readouterr().out
        assert "agreement" in out and "prior baseline" in out

    def test_eval_kfold_with_per_key_table(self, workdir, capsys):
        per_key = workdir / "per_key.tsv"
        assert main(["eval", str(corpus_of(workdir)), "--folds", "3",
                     "--per-key", str(per_key)]) == 0
        lines = per_key.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "key\tn\tagreement\tprior"
        assert len(lines) > 3

    def test_eval_ambiguous_only(self, workdir, capsys):
        assert main(["eval", str(corpus_of(workdir)), "--folds", "3",
                     "--ambiguous-only"]) == 0
        assert "agreement" in capsys.readouterr().out

    def test_eval_compare(self, workdir, capsys):
        assert main(["eval", str(corpus_of(workdir)),
                     "--model", str(model_of(workdir)), "--compare"]) == 0
        assert "sign test p" in capsys.readouterr().out

    def test_inspect_summary(self, workdir, capsys):
        assert main(["inspect", "--model", str(model_of(workdir))]) == 0
        out = capsys.readouterr().out
        assert "keys:" in out and "word lists:" in out

    def test_inspect_word_renders_columns(self, workdir, capsys):
        assert main(["inspect", "--model", str(model_of(workdir)), "canto"]) == 0
        out = capsys.readouterr().out
        assert "LL" in out and "evidence" in out and "choice" in out
        assert "default:" in out

    def test_synth_is_seed_deterministic(self, tmp_path):
        a, b = tmp_path / "a.txt", tmp_path / "b.txt"
        for path in (a, b):
            assert main(["synth", "--seed", "7", "--keys", "3",
                         "--occurrences", "30", "-o", str(path)]) == 0
        assert a.read_text(encoding="utf-8") == b.read_text(encoding="utf-8")


class TestExitCodes:
    def test_usage_error_is_2(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2

    def test_alpha_zero_rejected_at_parse_time(self, workdir):
        with pytest.raises(SystemExit) as exc:
            main(["train", str(corpus_of(workdir)), "-o", "x.tsv", "--alpha", "0"])
        assert exc.value.code == 2

    def test_single_fold_rejected_at_parse_time(self, workdir):
        with pytest.raises(SystemExit) as exc:
            main(["eval", str(corpus_of(workdir)), "--folds", "1"])
        assert exc.value.code == 2

    def test_missing_input_is_3(self, workdir, capsys):
        code = main(["restore", str(workdir / "nope.txt"),
                     "--model", str(model_of(workdir))])
        assert code == 3
        assert capsys.readouterr().err

    def test_empty_corpus_is_4(self, tmp_path, capsys):
        empty = tmp_path / "empty.txt"
        empty.write_text("", encoding="utf-8")
        assert main(["train", str(empty), "-o", str(tmp_path / "m.tsv")]) == 4
        assert "not enough data" in capsys.readouterr().err

    def test_bad_model_is_5(self, workdir, tmp_path, capsys):
        bad = tmp_path / "bad.tsv"
        bad.write_text("not a model\n", encoding="utf-8")
        src = tmp_path / "in.txt"
        src.write_text("hola\n", encoding="utf-8")
        assert main(["restore", str(src), "--model", str(bad)]) == 5
        assert "bad model file" in capsys.readouterr().err

    def test_unknown_inspect_word_is_1(self, workdir, capsys):
        assert main(["inspect", "--model", str(model_of(workdir)), "cantoz"]) == 1
        err = capsys.readouterr().err
        assert "unknown word" in err and "canto" in err


class TestTrainWarnings:
    def test_no_ambiguous_keys_warn(self, tmp_path, capsys):
        corpus = tmp_path / "plain.txt"
        corpus.write_text("uno dos tres\n\nuno dos tres\n", encoding="utf-8")
        assert main(["train", str(corpus), "-o", str(tmp_path / "m.tsv")]) == 0
        assert "no ambiguous keys" in capsys.readouterr().err


class TestConfigFile:
    def test_defaults_from_config(self, workdir, tmp_path, capsys, monkeypatch):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"window": 2, "folds": 3}), encoding="utf-8")
        monkeypatch.setenv("REACCENT_CONFIG", str(cfg))
        model = tmp_path / "m.tsv"
        assert main(["train", str(corpus_of(workdir)), "-o", str(model)]) == 0
        assert "\tk=2\t" in model.read_text(encoding="utf-8").splitlines()[1] + "\t"

    def test_flags_still_override_config(self, workdir, tmp_path, monkeypatch, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"window": 2}), encoding="utf-8")
        monkeypatch.setenv("REACCENT_CONFIG", str(cfg))
        model = tmp_path / "m.tsv"
        assert main(["train", str(corpus_of(workdir)), "-o", str(model),
                     "--window", "3"]) == 0
        assert "k=3" in model.read_text(encoding="utf-8").splitlines()[1]

    def test_unreadable_config_is_3(self, workdir, monkeypatch, capsys):
        monkeypatch.setenv("REACCENT_CONFIG", "/definitely/not/here.json")
        assert main(["inspect", "--model", str(model_of(workdir))]) == 3

    def test_non_object_config_is_3(self, workdir, tmp_path, monkeypatch, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text("[1, 2]", encoding="utf-8")
        monkeypatch.setenv("REACCENT_CONFIG", str(cfg))
        assert main(["inspect", "--model", str(model_of(workdir))]) == 3
