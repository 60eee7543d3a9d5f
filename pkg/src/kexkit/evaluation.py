"""Exact-match precision/recall/F1 evaluation of registered extractors."""

from __future__ import annotations

import json
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .bibrank import ContextSpec, select_context
from .dataset import Dataset
from .extractors import Extractor, get_extractor
from .graphrank import RankParams, Ranking
from .textproc import analyze, make_tagger, phrase_key


class EmptyTestSetError(ValueError):
    def __init__(self):
        super().__init__("empty_test_set")


def normalize_phrase(phrase: str) -> str:
    return phrase_key(phrase)


def normalized_set(phrases: Iterable[str]) -> set[str]:
    return {k for k in map(normalize_phrase, phrases) if k}


def match(predicted: Iterable[str], gold: Iterable[str]) -> int:
    """Number of distinct normalized predictions found in the normalized gold set."""
    return len(normalized_set(predicted) & normalized_set(gold))


def prf(hits: int, n_predicted: int, n_gold: int) -> tuple[float, float, float]:
    p = hits / n_predicted if n_predicted else 0.0
    r = hits / n_gold if n_gold else 0.0
    f1 = 2 * p * r / (p + r) if p + r else 0.0
    return p, r, f1


@dataclass(frozen=True)
class DocScore:
    id: str
    predicted: int
    gold: int
    hits: int
    p: float
    r: float
    f1: float
    keyphrases: tuple[str, ...] = ()


def score_document(doc_id: str, predicted: Sequence[str], gold: Sequence[str]) -> DocScore:
    pred, gold_set = normalized_set(predicted), normalized_set(gold)
    hits = len(pred & gold_set)
    return DocScore(doc_id, len(pred), len(gold_set), hits, *prf(hits, len(pred), len(gold_set)),
                    keyphrases=tuple(predicted))


def macro_average(scores: Sequence[DocScore]) -> dict[str, float]:
    n = len(scores)
    if n == 0:
        return {"p": 0.0, "r": 0.0, "f1": 0.0}
    return {
        "p": sum(s.p for s in scores) / n,
        "r": sum(s.r for s in scores) / n,
        "f1": sum(s.f1 for s in scores) / n,
    }


@dataclass
class EvalReport:
    algo: str
    params: dict
    context: str
    filter: str
    k: int
    per_doc: list[DocScore] = field(default_factory=list)
    aggregate: dict[str, float] = field(default_factory=dict)
    tagger: str = "lexicon"

    def to_dict(self) -> dict:
        return {
            "algo": self.algo,
            "params": dict(self.params),
            "context": self.context,
            "filter": self.filter,
            "k": self.k,
            "tagger": self.tagger,
            "per_doc": [
                {"id": s.id, "predicted": s.predicted, "gold": s.gold, "hits": s.hits,
                 "p": s.p, "r": s.r, "f1": s.f1, "keyphrases": list(s.keyphrases)}
                for s in self.per_doc
            ],
            "aggregate": dict(self.aggregate),
        }


def render_report(report: EvalReport, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(report.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode()
    if fmt == "text":
        return render_table(report).encode()
    raise ValueError(f"unknown format {fmt!r}")


def render_table(report: EvalReport) -> str:
    rows = [("id", "pred", "gold", "hits", "P", "R", "F1")]
    for s in report.per_doc:
        rows.append((s.id, str(s.predicted), str(s.gold), str(s.hits),
                     f"{s.p:.4f}", f"{s.r:.4f}", f"{s.f1:.4f}"))
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = [
        f"algo={report.algo} k={report.k} filter={report.filter or '*'} "
        f"context={report.context or '*'} tagger={report.tagger}",
    ]
    for i, row in enumerate(rows):
        lines.append("  ".join(c.ljust(w) if j == 0 else c.rjust(w)
                               for j, (c, w) in enumerate(zip(row, widths))))
        if i == 0:
            lines.append("  ".join("-" * w for w in widths))
    a = report.aggregate
    lines.append(f"macro P={a['p']:.4f} R={a['r']:.4f} F1={a['f1']:.4f} over {len(report.per_doc)} documents")
    return "\n".join(lines) + "\n"


# Worker state for process pools; set once per worker by _init_worker.
_STATE: dict = {}


def _init_worker(extractor: Extractor, tagger_spec: str | None) -> None:
    _STATE["extractor"] = extractor
    _STATE["tagger"] = tagger_spec


def _run_one(task: tuple[str, str, tuple[str, ...]]) -> DocScore:
    doc_id, text, gold = task
    tagger = make_tagger(_STATE["tagger"], doc_id)
    doc = analyze(text, tagger, source_id=doc_id)
    ranking = _STATE["extractor"].extract(doc, exclude=doc_id)
    return score_document(doc_id, [phrase for phrase, _ in ranking], gold)


def _extract_one(task: tuple[str, str, str, str | None]) -> Ranking:
    doc_id, tagger_id, text, exclude = task
    doc = analyze(text, make_tagger(_STATE["tagger"], tagger_id), source_id=doc_id)
    return _STATE["extractor"].extract(doc, exclude=exclude)


def _pool_map(fn, tasks: list, extractor: Extractor, tagger: str | None, jobs: int) -> list:
    if jobs <= 1 or len(tasks) < 2:
        _init_worker(extractor, tagger)
        return [fn(t) for t in tasks]
    chunk = max(1, len(tasks) // (jobs * 4))
    with ProcessPoolExecutor(jobs, initializer=_init_worker, initargs=(extractor, tagger)) as pool:
        return list(pool.map(fn, tasks, chunksize=chunk))


def extract_many(extractor: Extractor, tasks: Sequence[tuple[str, str, str, str | None]],
                 tagger: str | None = None, jobs: int = 1) -> list[Ranking]:
    """Run a fitted extractor over ``(doc_id, tagger_id, text, exclude)``
    tasks; results keep the task order whatever ``jobs`` is."""
    return _pool_map(_extract_one, list(tasks), extractor, tagger, jobs)


def evaluate_run(ds: Dataset, test_filter: ContextSpec, context_spec: ContextSpec,
                 algo: str, params: RankParams = RankParams(), *, jobs: int = 1,
                 tagger: str | None = None) -> EvalReport:
    """Evaluate ``algo`` on the records selected by ``test_filter``.

    Bib weights come from the ``context_spec`` records minus the document
    being scored. Documents are the record abstracts; predictions are cut
    at ``params.top_n``. Results are ordered by record id regardless of
    ``jobs``.
    """
    extractor_cls = get_extractor(algo)
    test_set = select_context(ds, test_filter)
    if not test_set:
        raise EmptyTestSetError()
    extractor = extractor_cls(params).fit(ds, select_context(ds, context_spec))
    tasks = [(r.id, r.abstract, r.keyphrases) for r in test_set]

    scores = _pool_map(_run_one, tasks, extractor, tagger, jobs)

    return EvalReport(
        algo=algo,
        params=params.to_dict(),
        context=str(context_spec),
        filter=str(test_filter),
        k=params.top_n,
        per_doc=scores,
        aggregate=macro_average(scores),
        tagger=tagger or "lexicon",
    )
