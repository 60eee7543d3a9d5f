"""Word co-occurrence graphs and position-biased PageRank."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import asdict, dataclass, field

import numpy as np
import scipy.sparse as sp

from .textproc import CONTENT_TAGS, CandidatePhrase, TaggedDocument, select_candidates


@dataclass(frozen=True)
class RankParams:
    damping: float = 0.85
    window: int = 2
    tol: float = 1e-6
    max_iter: int = 100
    top_n: int = 10
    max_phrase_len: int = 3

    def __post_init__(self):
        if not 0.0 < self.damping < 1.0:
            raise ValueError(f"damping must be in (0, 1), got {self.damping}")
        if self.window < 1:
            raise ValueError(f"window must be >= 1, got {self.window}")
        if self.tol <= 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")
        if self.top_n < 1:
            raise ValueError(f"top_n must be >= 1, got {self.top_n}")
        if self.max_phrase_len < 1:
            raise ValueError(f"max_phrase_len must be >= 1, got {self.max_phrase_len}")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class WordGraph:
    """Undirected weighted graph over word stems.

    ``edges`` holds each unordered pair once, keyed ``(a, b)`` with ``a < b``.
    """

    nodes: list[str] = field(default_factory=list)
    edges: dict[tuple[str, str], int] = field(default_factory=dict)

    def weight(self, a: str, b: str) -> int:
        return self.edges.get((a, b) if a < b else (b, a), 0)

    def neighbors(self, node: str) -> dict[str, int]:
        out = {}
        for (a, b), w in self.edges.items():
            if a == node:
                out[b] = w
            elif b == node:
                out[a] = w
        return out

    def add(self, a: str, b: str, w: int = 1) -> None:
        key = (a, b) if a < b else (b, a)
        self.edges[key] = self.edges.get(key, 0) + w


@dataclass
class PageRankResult:
    scores: dict[str, float]
    iterations: int
    converged: bool


class Ranking(list):
    """Ranked ``(phrase, score)`` pairs; diagnostics live in ``meta``."""

    def __init__(self, items: Iterable[tuple[str, float]] = (), meta: dict | None = None):
        super().__init__(items)
        self.meta = meta or {}


def build_graph(doc: TaggedDocument, window: int = 2) -> WordGraph:
    words = doc.words
    g = WordGraph()
    seen = set()
    for tok in words:
        if tok.pos in CONTENT_TAGS and tok.stem not in seen:
            seen.add(tok.stem)
            g.nodes.append(tok.stem)
    # Word tokens are numbered 1..n contiguously, so index i holds position i+1.
    for i, tok in enumerate(words):
        if tok.pos not in CONTENT_TAGS:
            continue
        for other in words[i + 1:i + 1 + window]:
            if other.pos in CONTENT_TAGS and other.stem != tok.stem:
                g.add(tok.stem, other.stem)
    return g


def raw_position_weights(doc: TaggedDocument) -> dict[str, float]:
    """Sum of reciprocal 1-based positions per content-word stem."""
    raw: dict[str, float] = {}
    for tok in doc.words:
        if tok.pos in CONTENT_TAGS:
            raw[tok.stem] = raw.get(tok.stem, 0.0) + 1.0 / tok.doc_position
    return raw


def normalize(weights: Mapping[str, float]) -> dict[str, float]:
    total = sum(weights.values())
    if total <= 0:
        return {k: 0.0 for k in weights}
    return {k: v / total for k, v in weights.items()}


def position_bias(doc: TaggedDocument) -> dict[str, float]:
    return normalize(raw_position_weights(doc))


def uniform_bias(g: WordGraph) -> dict[str, float]:
    n = len(g.nodes)
    return {v: 1.0 / n for v in g.nodes}


def pagerank(g: WordGraph, bias: Mapping[str, float], params: RankParams = RankParams()
             ) -> PageRankResult:
    """Iterate ``S <- (1-d) p + d M S`` from ``S = p``.

    Column ``j`` of ``M`` spreads ``S_j`` over neighbours in proportion to
    edge weight. Nodes without edges hand their mass back through ``p``.
    """
    n = len(g.nodes)
    if n == 0:
        return PageRankResult({}, 0, True)
    if set(bias) != set(g.nodes):
        raise ValueError("bias must be defined on exactly the graph's nodes")
    index = {v: i for i, v in enumerate(g.nodes)}
    p = np.array([bias[v] for v in g.nodes], dtype=float)

    rows, cols, vals = [], [], []
    for (a, b), w in g.edges.items():
        i, j = index[a], index[b]
        rows += [i, j]
        cols += [j, i]
        vals += [float(w), float(w)]
    W = sp.csr_matrix((vals, (rows, cols)), shape=(n, n))
    out_weight = np.asarray(W.sum(axis=0)).ravel()
    dangling = out_weight == 0
    inv_out = np.divide(1.0, out_weight, out=np.zeros(n), where=~dangling)
    M = W @ sp.diags(inv_out)

    d = params.damping
    s = p.copy()
    converged = False
    it = 0
    while it < params.max_iter:
        it += 1
        new = (1.0 - d) * p + d * (M @ s + s[dangling].sum() * p)
        delta = np.abs(new - s).sum()
        s = new
        if delta < params.tol:
            converged = True
            break
    return PageRankResult({v: float(s[index[v]]) for v in g.nodes}, it, converged)


def score_phrases(cands: Iterable[CandidatePhrase], scores: Mapping[str, float]
                  ) -> tuple[dict[tuple[str, ...], float], int]:
    """Sum word scores over each phrase's distinct stems.

    Returns the score map keyed by stem tuple and the number of stems that
    had no score (counted as 0).
    """
    out = {}
    missing = 0
    for c in cands:
        total = 0.0
        for s in dict.fromkeys(c.stems):
            if s in scores:
                total += scores[s]
            else:
                missing += 1
        out[c.stems] = total
    return out, missing


def rank_candidates(cands: list[CandidatePhrase], scores: Mapping[tuple[str, ...], float],
                    top_n: int, meta: dict | None = None) -> Ranking:
    order = sorted(cands, key=lambda c: (-scores[c.stems], c.stems))
    return Ranking(((c.text, scores[c.stems]) for c in order[:top_n]), meta)


def graph_extract(doc: TaggedDocument, params: RankParams, biased: bool,
                  bonus: Mapping[str, float] | None = None) -> Ranking:
    cands = select_candidates(doc, params.max_phrase_len)
    if not cands:
        return Ranking(meta={"iterations": 0, "converged": True, "missing_stems": 0})
    g = build_graph(doc, params.window)
    bias = position_bias(doc) if biased else uniform_bias(g)
    pr = pagerank(g, bias, params)
    scores, missing = score_phrases(cands, pr.scores)
    if bonus:
        scores = {k: v + bonus.get(" ".join(k), 0.0) for k, v in scores.items()}
    meta = {"iterations": pr.iterations, "converged": pr.converged, "missing_stems": missing}
    return rank_candidates(cands, scores, params.top_n, meta)


def positionrank_extract(doc: TaggedDocument, params: RankParams = RankParams()) -> Ranking:
    return graph_extract(doc, params, biased=True)


def textrank_extract(doc: TaggedDocument, params: RankParams = RankParams()) -> Ranking:
    return graph_extract(doc, params, biased=False)
