"""Pluggable part-of-speech taggers.

A tagger is any callable taking the token surfaces of a document, one list
per sentence, and returning one coarse tag per token.
"""

from __future__ import annotations

import os
from collections.abc import Callable
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .tokens import (
    ADJ, ADP, ADV, DET, NOUN, NUM, OTHER, PROPN, PUNCT, TAGSET, VERB, WORD_RE,
    TaggedDocument, tokenize,
)

Tagger = Callable[[list[list[str]]], list[list[str]]]

_NOUN_SUFFIXES = ("tion", "ment", "ness", "ity", "ism", "ance", "ence", "ship")
_ADJ_SUFFIXES = ("ous", "ful", "ive", "al", "ic", "able", "ible", "less")
_VERB_SUFFIXES = ("ize", "ise", "ate", "ed")

# Penn Treebank and Universal Dependencies tags accepted in CoNLL side files.
_EXTERNAL_TAGS = {
    "NN": NOUN, "NNS": NOUN, "NNP": PROPN, "NNPS": PROPN,
    "JJ": ADJ, "JJR": ADJ, "JJS": ADJ,
    "VB": VERB, "VBD": VERB, "VBG": VERB, "VBN": VERB, "VBP": VERB, "VBZ": VERB, "MD": VERB,
    "RB": ADV, "RBR": ADV, "RBS": ADV, "WRB": ADV,
    "DT": DET, "PDT": DET, "WDT": DET,
    "IN": ADP, "TO": ADP, "CD": NUM,
    "AUX": VERB, "PRON": OTHER, "CCONJ": OTHER, "SCONJ": OTHER, "PART": OTHER,
    "INTJ": OTHER, "SYM": PUNCT, "X": OTHER,
}


class TaggingError(ValueError):
    pass


def _read_lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]


@lru_cache(maxsize=1)
def default_lexicon() -> dict[str, str]:
    text = resources.files(__package__).joinpath("data/lexicon.tsv").read_text("utf-8")
    return dict(ln.split("\t") for ln in _read_lines(text))


def load_stopwords(path: str | os.PathLike | None = None) -> frozenset[str]:
    """Read a stopword list, one word per line.

    Without ``path`` the ``KEXKIT_STOPWORDS`` environment variable is
    consulted, then the embedded default list.
    """
    path = path or os.environ.get("KEXKIT_STOPWORDS")
    if path:
        text = Path(path).read_text("utf-8")
    else:
        text = resources.files(__package__).joinpath("data/stopwords.txt").read_text("utf-8")
    return frozenset(w.lower() for w in _read_lines(text))


class LexiconTagger:
    """Lexicon lookup with suffix heuristics; unknown words default to NOUN."""

    def __init__(self, lexicon: dict[str, str] | None = None,
                 stopwords: frozenset[str] | None = None):
        self.lexicon = default_lexicon() if lexicon is None else lexicon
        self.stopwords = load_stopwords() if stopwords is None else stopwords

    def tag_word(self, surface: str, sentence_initial: bool) -> str:
        if not WORD_RE.fullmatch(surface):
            return PUNCT
        lower = surface.lower()
        if lower.replace(".", "").replace(",", "").isdigit():
            return NUM
        if lower in self.lexicon:
            return self.lexicon[lower]
        if lower in self.stopwords:
            return OTHER
        if surface[0].isupper() and not sentence_initial:
            return PROPN
        if lower.endswith("s") and len(lower) > 3:
            # inflected verbs: "describes", "uses"
            for base in (lower[:-1], lower[:-2]):
                if self.lexicon.get(base) == VERB:
                    return VERB
        if len(lower) > 4:
            if lower.endswith("ly"):
                return ADV
            if lower.endswith(_NOUN_SUFFIXES) or lower.endswith(("tions", "ments", "ities")):
                return NOUN
            if lower.endswith(_ADJ_SUFFIXES):
                return ADJ
            if lower.endswith(_VERB_SUFFIXES):
                return VERB
        return NOUN

    def __call__(self, sentences: list[list[str]]) -> list[list[str]]:
        out = []
        for sent in sentences:
            tags = []
            first = True
            for surface in sent:
                tag = self.tag_word(surface, first)
                if tag != PUNCT:
                    first = False
                tags.append(tag)
            out.append(tags)
        return out


@lru_cache(maxsize=4)
def _default_tagger(stopwords_path: str | None) -> LexiconTagger:
    return LexiconTagger(stopwords=load_stopwords(stopwords_path))


def read_conll(path: str | os.PathLike) -> list[list[tuple[str, str]]]:
    """Read ``surface<TAB>tag`` lines; blank lines separate sentences."""
    sentences: list[list[tuple[str, str]]] = []
    current: list[tuple[str, str]] = []
    for lineno, line in enumerate(Path(path).read_text("utf-8").splitlines(), 1):
        if not line.strip():
            if current:
                sentences.append(current)
                current = []
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) < 2:
            raise TaggingError(f"{path}:{lineno}: expected 'surface<TAB>tag'")
        current.append((parts[0], parts[1].strip()))
    if current:
        sentences.append(current)
    return sentences


def coarse_tag(tag: str) -> str:
    if tag in TAGSET:
        return tag
    return _EXTERNAL_TAGS.get(tag.upper(), OTHER)


class ConllTagger:
    """Replays tags from a pre-tagged side file produced by any external tool."""

    def __init__(self, path: str | os.PathLike):
        self.path = Path(path)
        self.sentences = read_conll(self.path)

    def __call__(self, sentences: list[list[str]]) -> list[list[str]]:
        if len(sentences) != len(self.sentences):
            raise TaggingError(
                f"{self.path}: {len(self.sentences)} sentences in side file, "
                f"document has {len(sentences)}"
            )
        out = []
        for i, (sent, tagged) in enumerate(zip(sentences, self.sentences)):
            if len(sent) != len(tagged):
                raise TaggingError(
                    f"{self.path}: token count mismatch in sentence {i} "
                    f"({len(tagged)} tagged, {len(sent)} in document)"
                )
            out.append([coarse_tag(t) for _, t in tagged])
        return out


def tag(doc: TaggedDocument, tagger: Tagger | None = None) -> TaggedDocument:
    """Apply ``tagger`` (lexicon tagger by default) to a tokenized document.

    Punctuation tokens stay PUNCT whatever the tagger says, and a word token
    tagged PUNCT is demoted to OTHER, so word positions remain consistent.
    """
    if not doc.tokens:
        return doc
    tagger = tagger or _default_tagger(os.environ.get("KEXKIT_STOPWORDS"))
    sentences = doc.sentences()
    tags = tagger([[t.surface for t in s] for s in sentences])
    flat = []
    for sent, sent_tags in zip(sentences, tags, strict=True):
        for tok, t in zip(sent, sent_tags, strict=True):
            if not tok.is_word:
                t = PUNCT
            elif t == PUNCT or t not in TAGSET:
                t = OTHER
            flat.append(t)
    return doc.with_tags(flat)


def make_tagger(spec: str | None, doc_id: str | None = None) -> Tagger:
    """Build a tagger from a CLI spec: ``lexicon`` or ``conll:<path>``.

    When the conll path is a directory the side file ``<doc_id>.conll``
    inside it is used.
    """
    if not spec or spec == "lexicon":
        return _default_tagger(os.environ.get("KEXKIT_STOPWORDS"))
    if spec.startswith("conll:"):
        path = Path(spec[len("conll:"):])
        if path.is_dir():
            if doc_id is None:
                raise TaggingError(f"{path} is a directory; a document id is required")
            path = path / f"{doc_id}.conll"
        return ConllTagger(path)
    raise TaggingError(f"unknown tagger {spec!r} (expected 'lexicon' or 'conll:<path>')")


def analyze(text: str, tagger: Tagger | None = None, source_id: str = "") -> TaggedDocument:
    return tag(tokenize(text, source_id), tagger)


__all__ = [
    "ConllTagger", "LexiconTagger", "Tagger", "TaggingError", "analyze",
    "coarse_tag", "default_lexicon", "load_stopwords", "make_tagger", "read_conll", "tag",
]
