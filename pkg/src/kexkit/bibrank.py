"""BibRank: position-biased PageRank plus context-derived bib weights.

A *context* is a set of bibliographic records chosen by attribute
predicates. Each gold keyphrase in the context contributes one count per
record to its stem-normalized key; dividing by the largest count gives the
bib weight ``lambda_p`` in ``(0, 1]``. A candidate phrase's final score is
the sum of its words' PageRank scores plus its bib weight.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

from .dataset import BibRecord, Dataset
from .graphrank import RankParams, Ranking, graph_extract
from .textproc import TaggedDocument, phrase_key

CONTEXT_ATTRIBUTES = ("year", "topic", "journal", "source_file")


class ContextSpecError(ValueError):
    pass


@dataclass(frozen=True)
class Clause:
    attribute: str
    kind: str  # "equals" | "in_set" | "range"
    values: tuple = ()

    def matches(self, value) -> bool:
        if value is None:
            return False
        if self.kind == "range":
            lo, hi = self.values
            return lo <= value <= hi
        return value in self.values

    def __str__(self) -> str:
        if self.kind == "range":
            return f"{self.attribute}={self.values[0]}..{self.values[1]}"
        return f"{self.attribute}={'|'.join(str(v) for v in self.values)}"


@dataclass(frozen=True)
class ContextSpec:
    """Conjunction of attribute clauses; no clauses selects everything."""

    clauses: tuple[Clause, ...] = ()

    @classmethod
    def parse(cls, text: str | None) -> ContextSpec:
        """Parse ``attr=value``, ``attr=v1|v2`` and ``year=lo..hi`` clauses
        separated by commas."""
        if text is None or not text.strip():
            return cls()
        clauses = []
        for raw in text.split(","):
            raw = raw.strip()
            if not raw:
                continue
            attr, sep, rhs = raw.partition("=")
            attr, rhs = attr.strip(), rhs.strip()
            if not sep or not attr or not rhs:
                raise ContextSpecError(f"bad clause {raw!r}; expected attr=value")
            clauses.append(cls._clause(attr, rhs))
        return cls(tuple(clauses))

    @staticmethod
    def _clause(attr: str, rhs: str) -> Clause:
        if attr not in CONTEXT_ATTRIBUTES:
            raise ContextSpecError(
                f"unknown attribute {attr!r}; expected one of {', '.join(CONTEXT_ATTRIBUTES)}")
        if ".." in rhs:
            if attr != "year":
                raise ContextSpecError(f"ranges are only supported for year, not {attr!r}")
            lo, _, hi = rhs.partition("..")
            try:
                return Clause(attr, "range", (int(lo), int(hi)))
            except ValueError:
                raise ContextSpecError(f"bad year range {rhs!r}") from None
        values = [v.strip() for v in rhs.split("|")]
        if any(not v for v in values):
            raise ContextSpecError(f"empty value in {attr}={rhs}")
        if attr == "year":
            try:
                values = [int(v) for v in values]
            except ValueError:
                raise ContextSpecError(f"year values must be integers: {rhs!r}") from None
        kind = "equals" if len(values) == 1 else "in_set"
        return Clause(attr, kind, tuple(values))

    def matches(self, rec: BibRecord) -> bool:
        return all(c.matches(getattr(rec, c.attribute)) for c in self.clauses)

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.clauses)


def select_context(ds: Dataset, spec: ContextSpec) -> list[BibRecord]:
    """Records satisfying every clause, ordered by id."""
    ids: set[str] | None = None
    for c in spec.clauses:
        index = ds.indexes[c.attribute]
        hit: set[str] = set()
        for value, members in index.items():
            if c.matches(value):
                hit |= members
        ids = hit if ids is None else ids & hit
    if ids is None:
        ids = set(ds.by_id)
    return [ds.by_id[i] for i in sorted(ids)]


@dataclass(frozen=True)
class BibWeightTable:
    weights: dict[str, float] = field(default_factory=dict)
    bib_norm: float = 0.0
    context_size: int = 0

    def __getitem__(self, key: str) -> float:
        return self.weights.get(key, 0.0)

    def lookup(self, phrase: str) -> float:
        return self.weights.get(phrase_key(phrase), 0.0)

    def __len__(self) -> int:
        return len(self.weights)


def record_keys(rec: BibRecord) -> set[str]:
    """Distinct normalized keys of a record's gold keyphrases."""
    return {k for k in (phrase_key(kp) for kp in rec.keyphrases) if k}


def _table(counts: Mapping[str, int], size: int) -> BibWeightTable:
    positive = {k: c for k, c in counts.items() if c > 0}
    if not positive:
        return BibWeightTable({}, 0.0, size)
    alpha = max(positive.values())
    return BibWeightTable({k: c / alpha for k, c in positive.items()}, float(alpha), size)


def compute_bib_weights(context: Iterable[BibRecord]) -> BibWeightTable:
    counts: Counter[str] = Counter()
    n = 0
    for rec in context:
        n += 1
        counts.update(record_keys(rec))
    return _table(counts, n)


class BibWeightCounter:
    """Raw per-context counts that can drop one record on demand.

    Lets an evaluation harness compute each test document's bib weights
    without that document's own gold keyphrases.
    """

    def __init__(self, context: Sequence[BibRecord]):
        self.keys = {rec.id: record_keys(rec) for rec in context}
        self.counts: Counter[str] = Counter()
        for keys in self.keys.values():
            self.counts.update(keys)
        self._full = _table(self.counts, len(self.keys))

    def table(self, exclude: str | None = None) -> BibWeightTable:
        if exclude is None or exclude not in self.keys:
            return self._full
        counts = Counter(self.counts)
        counts.subtract(self.keys[exclude])
        return _table(counts, len(self.keys) - 1)


def bibrank_extract(doc: TaggedDocument, weights: BibWeightTable | None = None,
                    params: RankParams = RankParams()) -> Ranking:
    bonus = weights.weights if weights is not None else None
    return graph_extract(doc, params, biased=True, bonus=bonus)
