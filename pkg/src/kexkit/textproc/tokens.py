"""Sentence splitting, tokenization and the coarse tagset."""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace

from .porter import stem

NOUN, PROPN, ADJ, VERB, ADV = "NOUN", "PROPN", "ADJ", "VERB", "ADV"
DET, ADP, NUM, PUNCT, OTHER = "DET", "ADP", "NUM", "PUNCT", "OTHER"
TAGSET = frozenset({NOUN, PROPN, ADJ, VERB, ADV, DET, ADP, NUM, PUNCT, OTHER})
CONTENT_TAGS = frozenset({NOUN, PROPN, ADJ})

# Letters/digits, optionally joined by internal hyphens or apostrophes.
WORD_RE = re.compile(r"[^\W_]+(?:['’-]+[^\W_]+)*")
_TOKEN_RE = re.compile(r"[^\W_]+(?:['’-]+[^\W_]+)*|[^\w\s]|_")
_SENT_END_RE = re.compile(r"[.?!]")


@dataclass(frozen=True)
class Token:
    surface: str
    stem: str
    pos: str
    sent_index: int
    # 1-based among word tokens; punctuation repeats the preceding word's
    # position (0 before the first word).
    doc_position: int

    @property
    def is_word(self) -> bool:
        return self.pos != PUNCT


@dataclass(frozen=True)
class TaggedDocument:
    tokens: tuple[Token, ...] = ()
    source_id: str = ""

    @property
    def words(self) -> list[Token]:
        return [t for t in self.tokens if t.is_word]

    def sentences(self) -> list[list[Token]]:
        out: list[list[Token]] = []
        for tok in self.tokens:
            while len(out) <= tok.sent_index:
                out.append([])
            out[tok.sent_index].append(tok)
        return out

    def with_tags(self, tags: list[str]) -> TaggedDocument:
        toks = tuple(replace(t, pos=p) for t, p in zip(self.tokens, tags, strict=True))
        return TaggedDocument(toks, self.source_id)


def split_sentences(text: str) -> list[str]:
    """Split after ``.``, ``?`` or ``!`` when followed by whitespace and an
    uppercase letter, or by the end of the text."""
    out = []
    start = 0
    for m in _SENT_END_RE.finditer(text):
        rest = text[m.end():]
        stripped = rest.lstrip()
        if not stripped:
            ok = True
        else:
            ok = len(stripped) < len(rest) and stripped[0].isupper()
        if ok:
            out.append(text[start:m.end()])
            start = m.end()
    if text[start:].strip():
        out.append(text[start:])
    return [s.strip() for s in out if s.strip()]


def tokenize(text: str, source_id: str = "") -> TaggedDocument:
    """Tokenize ``text`` into an untagged document.

    Word tokens get pos ``OTHER``; punctuation tokens get ``PUNCT`` and do
    not advance the position counter.
    """
    tokens = []
    position = 0
    for si, sentence in enumerate(split_sentences(text)):
        for m in _TOKEN_RE.finditer(sentence):
            surface = m.group()
            if WORD_RE.fullmatch(surface):
                position += 1
                tokens.append(Token(surface, stem(surface), OTHER, si, position))
            else:
                tokens.append(Token(surface, surface, PUNCT, si, position))
    return TaggedDocument(tuple(tokens), source_id)


def phrase_key(phrase: str) -> str:
    """Lowercase, Porter-stem every word and join with single spaces."""
    return " ".join(stem(w) for w in WORD_RE.findall(phrase))
