"""Noun-chunk candidate selection."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .tokens import ADJ, CONTENT_TAGS, NOUN, PROPN, TaggedDocument, Token

DEFAULT_MAX_PHRASE_LEN = 3

_CHUNK_RE = re.compile(r"A*N+")
_CODE = {ADJ: "A", NOUN: "N", PROPN: "N"}


@dataclass
class CandidatePhrase:
    stems: tuple[str, ...]
    surfaces: tuple[str, ...]
    occurrences: list[tuple[int, ...]]

    @property
    def key(self) -> str:
        return " ".join(self.stems)

    @property
    def text(self) -> str:
        return " ".join(self.surfaces)

    def __len__(self) -> int:
        return len(self.stems)


def _content_runs(doc: TaggedDocument) -> list[list[Token]]:
    """Maximal runs of ADJ/NOUN/PROPN tokens inside one sentence with no
    intervening punctuation."""
    runs: list[list[Token]] = []
    current: list[Token] = []
    for tok in doc.tokens:
        if tok.pos in CONTENT_TAGS and (not current or current[-1].sent_index == tok.sent_index):
            current.append(tok)
            continue
        if current:
            runs.append(current)
        current = [tok] if tok.pos in CONTENT_TAGS else []
    if current:
        runs.append(current)
    return runs


def select_candidates(doc: TaggedDocument,
                      max_phrase_len: int = DEFAULT_MAX_PHRASE_LEN) -> list[CandidatePhrase]:
    """Return merged candidates ordered by first occurrence, then length.

    Multi-word candidates are maximal ``ADJ* (NOUN|PROPN)+`` runs clipped to
    their trailing ``max_phrase_len`` words; every content word is also a
    one-word candidate.
    """
    if max_phrase_len < 1:
        raise ValueError("max_phrase_len must be >= 1")
    spans: list[list[Token]] = []
    for run in _content_runs(doc):
        codes = "".join(_CODE[t.pos] for t in run)
        for m in _CHUNK_RE.finditer(codes):
            chunk = run[m.start():m.end()]
            if len(chunk) > 1:
                spans.append(chunk[-max_phrase_len:])
        spans.extend([t] for t in run)

    merged: dict[tuple[str, ...], CandidatePhrase] = {}
    for span in spans:
        stems = tuple(t.stem for t in span)
        positions = tuple(t.doc_position for t in span)
        cand = merged.get(stems)
        if cand is None:
            merged[stems] = CandidatePhrase(stems, tuple(t.surface for t in span), [positions])
        elif positions not in cand.occurrences:
            cand.occurrences.append(positions)
    for cand in merged.values():
        cand.occurrences.sort()
    return sorted(merged.values(), key=lambda c: (c.occurrences[0][0], len(c), c.stems))
