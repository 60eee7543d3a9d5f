import math

import pytest
from hypothesis import given, settings, strategies as st

from kexkit.baselines import (
    EmptyCorpusError, IdfTable, compute_idf, idf_from_texts, idf_value, tfidf_extract,
)
from kexkit.dataset import Dataset
from kexkit.synthetic import fixture_abstracts
from kexkit.textproc import ADJ, NOUN, analyze, tag, tokenize

from conftest import make_record
from oracles import idf

ABSTRACTS = fixture_abstracts(30)


def test_idf_every_doc():
    assert idf_value(10, 10) == pytest.approx(0.9047, abs=1e-4)
    assert idf_value(10, 10) == pytest.approx(math.log(10 / 11) + 1, abs=1e-15)


def test_idf_single_doc():
    assert idf_value(1, 1) == pytest.approx(0.3069, abs=1e-4)


def test_unseen_stem_uses_df_zero():
    table = idf_from_texts(["alpha beta", "alpha gamma"])
    assert table["zzz"] == pytest.approx(math.log(2) + 1)
    assert table["alpha"] == pytest.approx(idf(2, 2))
    assert table["beta"] == pytest.approx(idf(2, 1))


def test_empty_corpus():
    with pytest.raises(EmptyCorpusError, match="empty_corpus"):
        compute_idf(Dataset())


def test_compute_idf_over_abstracts():
    ds = Dataset((make_record("a", abstract="Graphs rank."), make_record("b", abstract="graph")))
    t = compute_idf(ds)
    assert t.doc_count == 2 and t["graph"] == pytest.approx(idf(2, 2))


def _two_word(text, tags):
    return tag(tokenize(text), lambda s: [list(tags)])


def test_hand_corpus():
    table = idf_from_texts(["graph model.", "graph theory.", "neural model."])
    # df: graph 2, model 2, theori 1, neural 1; N = 3
    assert table["graph"] == pytest.approx(1.0)
    assert table["theori"] == pytest.approx(math.log(1.5) + 1)

    ranked = tfidf_extract(_two_word("graph model", [NOUN, NOUN]), table)
    assert [(p, round(s, 12)) for p, s in ranked] == [("graph model", 2.0), ("graph", 1.0), ("model", 1.0)]

    ranked = tfidf_extract(_two_word("neural model", [ADJ, NOUN]), table)
    w = math.log(1.5) + 1
    assert [p for p, _ in ranked] == ["neural model", "neural", "model"]
    assert [s for _, s in ranked] == pytest.approx([w + 1, w, 1.0])


def test_term_frequency_counts():
    table = IdfTable({"graph": 2.0}, 5)
    ranked = dict(tfidf_extract(_two_word("graph graph", [NOUN, NOUN]), table))
    # tf = 2, distinct stems counted once in the phrase
    assert ranked["graph"] == pytest.approx(4.0)
    assert ranked["graph graph"] == pytest.approx(4.0)


def test_higher_idf_ranks_first():
    table = IdfTable({"a": 1.0, "b": 3.0}, 4)
    ranked = tfidf_extract(_two_word("a b", [NOUN, ADJ]), table)
    assert [p for p, _ in ranked] == ["b", "a"]


def test_empty_doc():
    assert tfidf_extract(tokenize(""), IdfTable({}, 1)) == []


@settings(max_examples=30)
@given(st.sampled_from(ABSTRACTS), st.floats(0.1, 50))
def test_nonnegative_and_scale_invariant(text, c):
    table = idf_from_texts(ABSTRACTS)
    doc = analyze(text)
    ranked = tfidf_extract(doc, table)
    assert all(s >= 0 for _, s in ranked)
    scaled = IdfTable({k: v * c for k, v in table.idf.items()}, table.doc_count)
    # every stem of these documents is in the table, so all scores scale by c
    assert [p for p, _ in tfidf_extract(doc, scaled)] == [p for p, _ in ranked]


@given(st.randoms(use_true_random=False))
def test_permutation_invariant(r):
    docs = list(ABSTRACTS)
    r.shuffle(docs)
    assert idf_from_texts(docs) == idf_from_texts(ABSTRACTS)
