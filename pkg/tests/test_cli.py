from pathlib import Path

import pytest

from orgboot.cli import main
from orgboot.corpus import parse_corpus
from orgboot.matcher import Extraction, format_extractions
from orgboot.metrics import MetricsReport
from orgboot.splitter import SplitSpec

FIXTURE = Path(__file__).parent / "data" / "three_docs.tsv"


def run(*argv):
    return main([str(a) for a in argv])


@pytest.fixture(scope="module")
def pipeline(tmp_path_factory):
    """The full pipeline on the bundled synthetic corpus with default thresholds."""
    d = tmp_path_factory.mktemp("pipeline")
    assert run("synthetic", "-o", d / "corpus.tsv") == 0
    assert run("split", "--corpus", d / "corpus.tsv", "--sizes", "4,8,8", "--seed", "1", "-o", d / "split.txt") == 0
    common = ("--corpus", d / "corpus.tsv", "--split", d / "split.txt")
    assert run("seed-lexicon", *common, "--subset", "L", "-o", d / "seed.txt") == 0
    assert run("generate", *common, "--subset", "L+A", "--lexicon", d / "seed.txt", "-o", d / "candidates.txt") == 0
    assert run("learn", *common, "--lexicon", d / "seed.txt", "--patterns", d / "candidates.txt",
               "-o", d / "selected.txt", "--out-lexicon", d / "lexicon.txt", "--out-trace", d / "trace.txt") == 0
    assert run("extract", *common, "--subset", "B", "--patterns", d / "selected.txt",
               "--lexicon", d / "lexicon.txt", "-o", d / "found.txt") == 0
    assert run("eval", *common, "--subset", "B", "--extractions", d / "found.txt", "-o", d / "report.txt") == 0
    return d


def test_pipeline_outputs(pipeline):
    d = pipeline
    split = SplitSpec.from_text((d / "split.txt").read_text())
    assert (len(split.L), len(split.A), len(split.B)) == (4, 8, 8)
    selected = (d / "selected.txt").read_text().splitlines()
    assert selected and all("score=" in line for line in selected)
    trace = [line.split("\t") for line in (d / "trace.txt").read_text().splitlines()]
    assert trace[0][:2] == ["0", "-"] and len(trace) == len(selected) + 1
    assert all(len(row) == 5 for row in trace)
    seed = set((d / "seed.txt").read_text().splitlines())
    assert seed < set((d / "lexicon.txt").read_text().splitlines())
    report = MetricsReport.from_text((d / "report.txt").read_text())
    assert report.gold_occurrences > 0 and 0 < report.MR <= 1
    b_ids = set(split.B)
    assert {line.split("\t")[0] for line in (d / "found.txt").read_text().splitlines()} <= b_ids


def test_pipeline_is_byte_identical_on_rerun(pipeline, tmp_path):
    d = pipeline
    common = ("--corpus", d / "corpus.tsv", "--split", d / "split.txt")
    run("synthetic", "-o", tmp_path / "corpus.tsv")
    run("split", "--corpus", tmp_path / "corpus.tsv", "--sizes", "4,8,8", "--seed", "1", "-o", tmp_path / "split.txt")
    run("generate", *common, "--subset", "L+A", "--lexicon", d / "seed.txt", "-o", tmp_path / "candidates.txt")
    run("learn", *common, "--lexicon", d / "seed.txt", "--patterns", d / "candidates.txt",
        "-o", tmp_path / "selected.txt", "--out-lexicon", tmp_path / "lexicon.txt", "--out-trace", tmp_path / "trace.txt")
    for name in ("corpus.tsv", "split.txt", "candidates.txt", "selected.txt", "lexicon.txt", "trace.txt"):
        assert (tmp_path / name).read_bytes() == (d / name).read_bytes(), name


def test_eval_of_gold_is_perfect(tmp_path):
    docs = parse_corpus(FIXTURE.read_text())
    gold = [Extraction(d.id, s.start, s.end, d.surface(s.start, s.end), "gold") for d in docs for s in d.gold_spans]
    (tmp_path / "gold.txt").write_text(format_extractions(gold))
    assert run("eval", "--corpus", FIXTURE, "--extractions", tmp_path / "gold.txt", "-o", tmp_path / "r.txt") == 0
    head = (tmp_path / "r.txt").read_text().splitlines()[0]
    assert head == "R=1.0000 P=1.0000 MR=1.0000 MP=1.0000"


def test_sweep_rows(pipeline, tmp_path):
    d = pipeline
    out = tmp_path / "sweep.tsv"
    assert run("sweep", "--corpus", d / "corpus.tsv", "--split", d / "split.txt",
               "--thresholds", "0.7:0.4,0.6:0.6,0.4:0.7", "-o", out) == 0
    header, *rows = out.read_text().splitlines()
    assert header.split("\t") == ["stop_recall", "stop_precision", "MR", "MP", "R", "P", "patterns"]
    assert [r.split("\t")[:2] for r in rows] == [["0.70", "0.40"], ["0.60", "0.60"], ["0.40", "0.70"]]
    counts = [int(r.split("\t")[-1]) for r in rows]
    assert counts == sorted(counts, reverse=True) and counts[1] > 0


def test_usage_errors_exit_1(tmp_path, capsys):
    with pytest.raises(SystemExit) as info:
        main(["learn"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(["sweep", "--corpus", str(FIXTURE), "--split", "x", "--thresholds", "0.6:1.5"])
    assert info.value.code == 1
    assert run("split", "--corpus", FIXTURE, "--sizes", "1,1,5") == 1
    assert run("seed-lexicon", "--corpus", FIXTURE, "--subset", "L") == 1
    capsys.readouterr()


def test_data_errors_exit_2(tmp_path, capsys):
    assert run("seed-lexicon", "--corpus", tmp_path / "missing.tsv") == 2
    bad = tmp_path / "bad.tsv"
    bad.write_text("#doc x\nby\tIN\n")
    assert run("seed-lexicon", "--corpus", bad) == 2
    err = capsys.readouterr().err.strip().splitlines()
    assert len(err) == 2 and "line 2" in err[1]
    (tmp_path / "p.txt").write_text("IN ~ NNPS* ~ IN\nnot a pattern\n")
    (tmp_path / "lex.txt").write_text("EDF\n")
    assert run("extract", "--corpus", FIXTURE, "--patterns", tmp_path / "p.txt", "--lexicon", tmp_path / "lex.txt") == 2


def test_split_stdout_is_deterministic(capsys):
    assert run("split", "--corpus", FIXTURE, "--sizes", "1,1,1", "--seed", "4") == 0
    first = capsys.readouterr().out
    assert run("split", "--corpus", FIXTURE, "--sizes", "1,1,1", "--seed", "4") == 0
    assert capsys.readouterr().out == first
