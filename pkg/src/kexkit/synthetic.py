"""Seeded synthetic corpora for experiments and tests.

Documents are built from pseudo-words whose suffixes the lexicon tagger
recognises (``-tion``/``-ment`` nouns, ``-ive``/``-ous`` adjectives), joined
by common function words. Gold phrases are placed after the distractor
phrases, so position bias alone tends to miss them; their presence in
context keyword lists is what lets bib weights recover them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .dataset import BibRecord, Dataset
from .textproc import stem

_ONSETS = ["b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "z"]
_VOWELS = ["a", "e", "i", "o", "u"]
_NOUN_SUFFIXES = ["tion", "ment"]
_ADJ_SUFFIXES = ["ive", "ous"]

_TEMPLATES_EARLY = [
    "The {0} and the {1} improve every {2}.",
    "We study the {0} of each {1} with a {2}.",
    "A {0} requires the {1} in the {2}.",
]
_TEMPLATES_LATE = [
    "Then the {0} uses a {1}, and the {2} improves.",
    "However, each {0} is given to the {1} by the {2}.",
    "Finally, the {0} and a {1} require the {2}.",
]


class WordFactory:
    """Draws unused pseudo-words whose Porter stems are pairwise distinct."""

    def __init__(self, rng: random.Random):
        self.rng = rng
        self.used_stems: set[str] = set()

    def _make(self, suffixes) -> str:
        while True:
            root = "".join(self.rng.choice(_ONSETS) + self.rng.choice(_VOWELS) for _ in range(2))
            word = root + self.rng.choice(suffixes)
            s = stem(word)
            if s not in self.used_stems and len(s) >= 3:
                self.used_stems.add(s)
                return word

    def noun(self) -> str:
        return self._make(_NOUN_SUFFIXES)

    def adj(self) -> str:
        return self._make(_ADJ_SUFFIXES)

    def phrase(self) -> str:
        return f"{self.adj()} {self.noun()}"


def random_abstract(rng: random.Random, words: WordFactory, n_sentences: int = 6) -> str:
    """A grammatical-looking abstract mixing pseudo-words and function words."""
    templates = _TEMPLATES_EARLY + _TEMPLATES_LATE
    pool = [words.phrase() for _ in range(4)] + [words.noun() for _ in range(4)]
    sentences = []
    for _ in range(n_sentences):
        t = rng.choice(templates)
        sentences.append(t.format(*(rng.choice(pool) for _ in range(3))))
    return " ".join(sentences)


@dataclass
class ImprovementCorpus:
    dataset: Dataset
    test_filter: str
    contexts: list[str]  # nested, smallest first


def improvement_corpus(n_test: int = 20, gold_per_doc: int = 3, seed: int = 0,
                       topic: str = "synthetic", n_distractors: int = 12,
                       mentions: tuple[int, int, int] = (3, 1, 1)) -> ImprovementCorpus:
    """Test documents (year 1988) plus three nested context slices.

    Context ``year=1985..1987`` lists every gold phrase in ``mentions[0]``
    records, each of which also carries a hub phrase; widening to
    ``1983..1987`` and ``1980..1987`` adds ``mentions[1]`` and then
    ``mentions[2]`` records per gold phrase. The hub phrase stays the most
    frequent key, so every gold phrase's bib weight grows with the context.
    """
    rng = random.Random(seed)
    words = WordFactory(rng)
    hub = words.phrase()
    records: list[BibRecord] = []
    golds: list[str] = []

    for i in range(n_test):
        distract = [words.phrase() for _ in range(n_distractors)]
        gold = [words.phrase() for _ in range(gold_per_doc)]
        golds.extend(gold)
        early = []
        for j in range(0, len(distract), 3):
            chunk = (distract[j:j + 3] + distract)[:3]
            early.append(rng.choice(_TEMPLATES_EARLY).format(*chunk))
        late = []
        for j in range(0, len(gold), 3):
            chunk = gold[j:j + 3]
            chunk += rng.sample(distract, 3 - len(chunk))
            late.append(rng.choice(_TEMPLATES_LATE).format(*chunk))
        abstract = " ".join(early + late)
        records.append(BibRecord(
            id=f"test-{i:03d}", title=f"Synthetic test document {i}", abstract=abstract,
            authors=(f"Author {i}",), year=1988, journal="Synthetic Letters",
            keyphrases=tuple(gold), topic=topic, source_file="synthetic.bib",
        ))

    def context_block(years: list[int], n: int, with_hub: bool, tag: str) -> None:
        # each gold phrase appears in n records of this block, 3 golds per record
        order = golds * n
        rng.shuffle(order)
        per = 3
        chunks = []
        for k in range(0, len(order), per):
            chunk = list(dict.fromkeys(order[k:k + per]))
            chunks.append(chunk)
        # repair duplicates dropped by dict.fromkeys so each gold keeps 3 mentions
        counts = {g: 0 for g in golds}
        for c in chunks:
            for g in c:
                counts[g] += 1
        for g, c in counts.items():
            for _ in range(n - c):
                chunks.append([g])
        for k, chunk in enumerate(chunks):
            kws = list(chunk)
            if with_hub:
                kws.append(hub)
            records.append(BibRecord(
                id=f"ctx-{tag}-{k:04d}", title=f"Context record {tag} {k}",
                abstract=random_abstract(rng, words, 2), authors=(f"Writer {k}",),
                year=years[k % len(years)], journal="Synthetic Letters",
                keyphrases=tuple(kws), topic=topic, source_file="synthetic.bib",
            ))

    context_block([1985, 1986, 1987], mentions[0], True, "a")
    context_block([1983, 1984], mentions[1], False, "b")
    context_block([1980, 1981, 1982], mentions[2], False, "c")
    return ImprovementCorpus(
        Dataset(tuple(records)),
        test_filter=f"topic={topic},year=1988",
        contexts=[f"topic={topic},year=1985..1987", f"topic={topic},year=1983..1987",
                  f"topic={topic},year=1980..1987"],
    )


def fixture_abstracts(n: int = 50, seed: int = 0) -> list[str]:
    rng = random.Random(seed)
    words = WordFactory(rng)
    return [random_abstract(rng, words, rng.randint(1, 8)) for _ in range(n)]
