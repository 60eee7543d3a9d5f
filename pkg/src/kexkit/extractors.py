"""Extractor registry.

Subclass :class:`Extractor`, set the ``name`` class attribute and implement
:meth:`Extractor.extract`; the class is registered on definition.
"""

from __future__ import annotations

from collections.abc import Sequence
from typing import ClassVar

from .baselines import IdfTable, compute_idf, idf_from_texts, tfidf_extract
from .bibrank import BibWeightCounter, bibrank_extract
from .dataset import BibRecord, Dataset
from .graphrank import RankParams, Ranking, positionrank_extract, textrank_extract
from .textproc import TaggedDocument

REGISTRY: dict[str, type[Extractor]] = {}


class Extractor:
    name: ClassVar[str]

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        if "name" in cls.__dict__:
            REGISTRY[cls.name] = cls

    def __init__(self, params: RankParams = RankParams()):
        self.params = params

    def fit(self, dataset: Dataset | None = None, context: Sequence[BibRecord] = ()) -> Extractor:
        """Prepare corpus-level state; the default does nothing."""
        return self

    def extract(self, doc: TaggedDocument, exclude: str | None = None) -> Ranking:
        """Rank candidate phrases of ``doc``.

        ``exclude`` names a record whose metadata must not inform the
        ranking (the document under evaluation).
        """
        raise NotImplementedError


class TextRank(Extractor):
    name = "textrank"

    def extract(self, doc, exclude=None):
        return textrank_extract(doc, self.params)


class PositionRank(Extractor):
    name = "positionrank"

    def extract(self, doc, exclude=None):
        return positionrank_extract(doc, self.params)


class BibRank(Extractor):
    name = "bibrank"

    def __init__(self, params: RankParams = RankParams()):
        super().__init__(params)
        self.counter = BibWeightCounter(())

    def fit(self, dataset=None, context=()):
        self.counter = BibWeightCounter(list(context))
        return self

    def extract(self, doc, exclude=None):
        return bibrank_extract(doc, self.counter.table(exclude), self.params)


class TfIdf(Extractor):
    name = "tfidf"

    def __init__(self, params: RankParams = RankParams()):
        super().__init__(params)
        self.idf: IdfTable | None = None

    def fit(self, dataset=None, context=()):
        if dataset is not None and len(dataset):
            self.idf = compute_idf(dataset)
        else:
            self.idf = idf_from_texts(r.abstract for r in context)
        return self

    def extract(self, doc, exclude=None):
        if self.idf is None:
            raise RuntimeError("tfidf needs a corpus; call fit() with a dataset first")
        return tfidf_extract(doc, self.idf, self.params)


def get_extractor(name: str) -> type[Extractor]:
    try:
        return REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown algorithm {name!r}; available: {', '.join(sorted(REGISTRY))}") from None
