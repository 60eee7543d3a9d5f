from .candidates import DEFAULT_MAX_PHRASE_LEN, CandidatePhrase, select_candidates
from .porter import stem
from .tagging import (
    ConllTagger, LexiconTagger, Tagger, TaggingError, analyze, load_stopwords, make_tagger, tag,
)
from .tokens import (
    ADJ, ADP, ADV, CONTENT_TAGS, DET, NOUN, NUM, OTHER, PROPN, PUNCT, TAGSET, VERB,
    TaggedDocument, Token, phrase_key, split_sentences, tokenize,
)

__all__ = [
    "ADJ", "ADP", "ADV", "CONTENT_TAGS", "DET", "NOUN", "NUM", "OTHER", "PROPN", "PUNCT",
    "TAGSET", "VERB", "DEFAULT_MAX_PHRASE_LEN", "CandidatePhrase", "ConllTagger",
    "LexiconTagger", "TaggedDocument", "Tagger", "TaggingError", "Token", "analyze",
    "load_stopwords", "make_tagger", "phrase_key", "select_candidates", "split_sentences",
    "stem", "tag", "tokenize",
]
