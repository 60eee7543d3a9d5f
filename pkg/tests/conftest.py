import random
from pathlib import Path

import pytest
from hypothesis import settings

from kexkit.dataset import BibRecord, Dataset

DATA = Path(__file__).parent / "data"

settings.register_profile("repro", derandomize=True, deadline=None)
settings.load_profile("repro")

KEYWORD_SENTENCE = (
    "Keyword extraction is tasked with the automatic identification of terms "
    "that best describe the subject of a document."
)


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.fixture
def sample_bib() -> str:
    return (DATA / "sample_record.bib").read_text("utf-8")


def make_record(id, keyphrases=("alpha",), abstract="Some abstract text.", year=2000,
                topic="t", journal="J", title=None, source_file="f.bib", authors=("A",)):
    return BibRecord(id=id, title=title or f"Title {id}", abstract=abstract, authors=tuple(authors),
                     year=year, journal=journal, keyphrases=tuple(keyphrases), topic=topic,
                     source_file=source_file)


@pytest.fixture
def small_dataset() -> Dataset:
    recs = [
        make_record("r1", ["clustering", "neural networks"], year=1980),
        make_record("r2", ["clustering"], year=1981, topic="u"),
        make_record("r3", ["clustering", "svm"], year=1988, journal="K"),
    ]
    return Dataset(tuple(recs))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(1234)


# One PASS/FAIL line per acceptance criterion, printed after the run.

_CRITERIA: dict[str, tuple[int, str]] = {}
_OUTCOMES: dict[int, list[str]] = {}


def pytest_collection_modifyitems(session, config, items):
    for item in items:
        m = item.get_closest_marker("acceptance")
        if m is not None:
            _CRITERIA[item.nodeid] = (m.args[0], m.args[1])


def pytest_runtest_logreport(report):
    if report.nodeid not in _CRITERIA:
        return
    n = _CRITERIA[report.nodeid][0]
    if report.when == "call" or (report.when == "setup" and not report.passed):
        outcome = "skipped" if report.skipped else ("passed" if report.passed else "failed")
        _OUTCOMES.setdefault(n, []).append(outcome)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    titles = {}
    for n, title in _CRITERIA.values():
        titles.setdefault(n, title)
    terminalreporter.section("acceptance criteria")
    for n in sorted(titles):
        outcomes = _OUTCOMES.get(n, [])
        if not outcomes:
            status = "NOT RUN"
        elif "failed" in outcomes:
            status = "FAIL"
        elif all(o == "skipped" for o in outcomes):
            status = "SKIP"
        else:
            status = "PASS"
        terminalreporter.write_line(f"AC{n} {status:7s} {titles[n]}")
