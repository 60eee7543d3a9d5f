"""TF-IDF keyphrase extraction over a dataset's abstracts."""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass, field

from .dataset import Dataset
from .graphrank import RankParams, Ranking, rank_candidates
from .textproc import TaggedDocument, select_candidates, tokenize


class EmptyCorpusError(ValueError):
    def __init__(self):
        super().__init__("empty_corpus")


@dataclass(frozen=True)
class IdfTable:
    idf: dict[str, float] = field(default_factory=dict)
    doc_count: int = 0

    def __getitem__(self, stem: str) -> float:
        # unseen stems take the df = 0 value
        return self.idf.get(stem, idf_value(self.doc_count, 0))


def idf_value(n_docs: int, df: int) -> float:
    return math.log(n_docs / (1 + df)) + 1.0


def idf_from_texts(texts: Iterable[str]) -> IdfTable:
    df: Counter[str] = Counter()
    n = 0
    for text in texts:
        n += 1
        df.update({t.stem for t in tokenize(text).words})
    if n == 0:
        raise EmptyCorpusError()
    return IdfTable({s: idf_value(n, c) for s, c in sorted(df.items())}, n)


def compute_idf(ds: Dataset) -> IdfTable:
    return idf_from_texts(r.abstract for r in ds.records)


def tfidf_extract(doc: TaggedDocument, idf: IdfTable, params: RankParams = RankParams()) -> Ranking:
    """Score each candidate by the sum of ``tf * idf`` over its distinct stems."""
    cands = select_candidates(doc, params.max_phrase_len)
    if not cands:
        return Ranking()
    tf = Counter(t.stem for t in doc.words)
    scores = {c.stems: sum(tf[s] * idf[s] for s in dict.fromkeys(c.stems)) for c in cands}
    return rank_candidates(cands, scores, params.top_n)
