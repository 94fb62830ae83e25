from importlib import resources

from orgboot.corpus import gold_surfaces
from orgboot.splitter import make_split
from orgboot.synthetic import build_corpus, bundled_corpus, bundled_split, corpus_text


def test_committed_corpus_matches_generator():
    committed = resources.files("orgboot").joinpath("data", "synthetic_corpus.tsv").read_text(encoding="utf-8")
    assert committed == corpus_text(7)


def test_committed_split_matches_generator():
    ids = [d.id for d in bundled_corpus()]
    assert bundled_split() == make_split(ids, (4, 8, 8), 1)


def test_corpus_shape():
    docs = bundled_corpus()
    assert len(docs) == 20
    assert all(d.gold_spans for d in docs)


def test_generator_is_seeded():
    assert build_corpus(3, n_docs=2) == build_corpus(3, n_docs=2)
    assert build_corpus(3, n_docs=2) != build_corpus(4, n_docs=2)


def test_partner_names_are_not_nested():
    # no organisation name is a proper contiguous part of another
    names = set(gold_surfaces(bundled_corpus()))
    for a in names:
        for b in names:
            if len(a) < len(b):
                assert not any(b[i:i + len(a)] == a for i in range(len(b) - len(a) + 1)), (a, b)
