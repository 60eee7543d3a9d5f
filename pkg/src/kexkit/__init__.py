"""Keyphrase datasets from BibTeX archives, and graph-based keyphrase
extraction (TextRank, PositionRank, BibRank) with exact-match evaluation."""

from .bibrank import (
    BibWeightTable, ContextSpec, bibrank_extract, compute_bib_weights, select_context,
)
from .bibtex import parse_bibtex, split_keywords
from .dataset import (
    BibRecord, Dataset, build_dataset, dataset_stats, load_dataset, normalize_record,
    save_dataset,
)
from .evaluation import evaluate_run, match, render_report
from .extractors import REGISTRY, Extractor, get_extractor
from .graphrank import (
    RankParams, build_graph, pagerank, position_bias, positionrank_extract, textrank_extract,
)
from .textproc import analyze, select_candidates, stem, tag, tokenize

__version__ = "0.1.0"
