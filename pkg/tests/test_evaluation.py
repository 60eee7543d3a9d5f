import json
import random

import pytest
from hypothesis import given, strategies as st

from kexkit.bibrank import BibWeightCounter, ContextSpec
from kexkit.dataset import Dataset
from kexkit.evaluation import (
    EmptyTestSetError, evaluate_run, macro_average, match, normalize_phrase, prf, render_report,
    score_document,
)
from kexkit.extractors import REGISTRY, Extractor, get_extractor
from kexkit.graphrank import Ranking
from kexkit.synthetic import improvement_corpus

from conftest import make_record
from oracles import brute_prf


class GoldOracle(Extractor):
    """Returns each record's gold keyphrases verbatim."""

    name = "_gold_oracle"

    def fit(self, dataset=None, context=()):
        self.gold = {r.id: r.keyphrases for r in dataset.records}
        return self

    def extract(self, doc, exclude=None):
        return Ranking((kp, 1.0) for kp in self.gold[exclude])


@pytest.fixture(scope="module")
def corpus():
    return improvement_corpus(n_test=8)


def test_counting_example():
    hits = match(["a", "b", "c", "d"], ["a", "b", "e"])
    p, r, f = prf(hits, 4, 3)
    assert hits == 2 and p == 0.5 and r == pytest.approx(2 / 3)
    assert f == pytest.approx(0.5714, abs=1e-4)


def test_no_predictions():
    s = score_document("x", [], ["a"])
    assert (s.hits, s.p, s.r, s.f1) == (0, 0.0, 0.0, 0.0)


def test_stemmed_match():
    assert match(["Neural Networks"], ["neural network"]) == 1
    assert match(["neural networking"], ["neural network"]) == 1
    assert match(["network neural"], ["neural network"]) == 0


def test_duplicates_count_once():
    s = score_document("x", ["Graphs", "graph", "tree"], ["graph"])
    assert (s.predicted, s.gold, s.hits) == (2, 1, 1)


def test_normalization_not_always_idempotent():
    # Porter can strip twice, so a second normalization pass may differ
    once = normalize_phrase("agreed")
    assert once == "agre" and normalize_phrase(once) == "agr"
    assert normalize_phrase(normalize_phrase("Neural Networks")) == normalize_phrase("Neural Networks")


words = st.sampled_from(["graph", "graphs", "tree", "model", "models", "svm", "net", "nets"])
phrase_sets = st.lists(words, max_size=8)


@given(phrase_sets, phrase_sets)
def test_metric_bounds(pred, gold):
    s = score_document("d", pred, gold)
    assert 0 <= s.p <= 1 and 0 <= s.r <= 1 and 0 <= s.f1 <= 1
    assert s.f1 <= max(s.p, s.r) + 1e-15
    assert (s.f1 == 0) == (s.hits == 0)


@given(phrase_sets, phrase_sets)
def test_against_brute_force(pred, gold):
    s = score_document("d", pred, gold)
    ref = brute_prf({normalize_phrase(x) for x in pred}, {normalize_phrase(x) for x in gold})
    assert (s.p, s.r, s.f1) == pytest.approx(ref, abs=1e-12)


def test_macro_is_mean():
    rng = random.Random(5)
    vocab = [f"w{i}" for i in range(12)]
    docs = [score_document(str(i), rng.sample(vocab, rng.randint(0, 6)), rng.sample(vocab, rng.randint(1, 6)))
            for i in range(40)]
    agg = macro_average(docs)
    for key in ("p", "r", "f1"):
        assert agg[key] == pytest.approx(sum(getattr(d, key) for d in docs) / len(docs), abs=1e-12)
    assert macro_average([]) == {"p": 0.0, "r": 0.0, "f1": 0.0}


def test_oracle_extractor_is_perfect(corpus):
    assert get_extractor("_gold_oracle") is GoldOracle
    report = evaluate_run(corpus.dataset, ContextSpec.parse(corpus.test_filter), ContextSpec(),
                          "_gold_oracle")
    assert all(d.p == d.r == d.f1 == 1.0 for d in report.per_doc)
    assert report.aggregate == {"p": 1.0, "r": 1.0, "f1": 1.0}


def test_registry_names():
    assert {"textrank", "positionrank", "bibrank", "tfidf"} <= set(REGISTRY)
    with pytest.raises(KeyError, match="available"):
        get_extractor("nosuch")


def test_empty_test_set(corpus):
    with pytest.raises(EmptyTestSetError, match="empty_test_set"):
        evaluate_run(corpus.dataset, ContextSpec.parse("year=1700"), ContextSpec(), "textrank")


def test_report_is_byte_deterministic(corpus):
    args = (corpus.dataset, ContextSpec.parse(corpus.test_filter), ContextSpec.parse(corpus.contexts[0]),
            "bibrank")
    a, b = evaluate_run(*args), evaluate_run(*args)
    assert render_report(a, "json") == render_report(b, "json")
    assert render_report(a, "text") == render_report(b, "text")


def test_parallel_matches_serial(corpus):
    args = (corpus.dataset, ContextSpec.parse(corpus.test_filter), ContextSpec.parse(corpus.contexts[1]),
            "bibrank")
    assert render_report(evaluate_run(*args, jobs=3)) == render_report(evaluate_run(*args, jobs=1))


def test_report_schema(corpus):
    report = evaluate_run(corpus.dataset, ContextSpec.parse(corpus.test_filter), ContextSpec(), "textrank")
    obj = json.loads(render_report(report, "json"))
    assert set(obj) == {"algo", "params", "context", "filter", "k", "tagger", "per_doc", "aggregate"}
    assert set(obj["aggregate"]) == {"p", "r", "f1"}
    assert obj["k"] == 10 and obj["params"]["damping"] == 0.85
    ids = [d["id"] for d in obj["per_doc"]]
    assert ids == sorted(ids)
    text = render_report(report, "text").decode()
    assert text.splitlines()[-1].startswith("macro P=")


def test_no_leak_of_own_gold():
    # the test document's gold phrase appears in no other record
    doc = make_record("t1", ["quantum annealing"], year=1988,
                      abstract="Quantum annealing helps. Graph methods help too.")
    others = [make_record(f"c{i}", ["graph methods"], year=1985) for i in range(3)]
    ds = Dataset(tuple([doc] + others))
    context = list(ds.records)   # overlaps the test set on purpose
    assert BibWeightCounter(context).table("t1").lookup("quantum annealing") == 0.0

    leaky = evaluate_run(ds, ContextSpec.parse("year=1988"), ContextSpec(), "bibrank")
    plain = evaluate_run(ds, ContextSpec.parse("year=1988"), ContextSpec.parse("year=1985"), "bibrank")
    # including the test record in the context changes nothing
    assert leaky.per_doc[0].keyphrases == plain.per_doc[0].keyphrases


def test_tfidf_runs(corpus):
    report = evaluate_run(corpus.dataset, ContextSpec.parse(corpus.test_filter), ContextSpec(), "tfidf")
    assert len(report.per_doc) == 8
