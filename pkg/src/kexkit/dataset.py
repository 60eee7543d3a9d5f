"""Normalized bibliographic records and keyphrase datasets."""

from __future__ import annotations

import hashlib
import json
import os
import re
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

from .bibtex import ParseWarning, RawEntry, parse_bibtex, split_keywords
from .textproc import phrase_key

INDEXED_ATTRIBUTES = ("year", "topic", "journal", "source_file")
RECORD_FIELDS = ("id", "title", "abstract", "authors", "year", "journal",
                 "keyphrases", "topic", "source_file", "extra")
_PROMOTED = {"title", "abstract", "author", "year", "journal", "keywords"}

_AUTHOR_SPLIT = re.compile(r"\s+and\s+", re.IGNORECASE)
_YEAR = re.compile(r"(?<!\d)\d{4}(?!\d)")


class RecordRejected(ValueError):
    """Raised by :func:`normalize_record` with ``reason`` set to
    ``"no_abstract"`` or ``"no_keywords"``."""

    def __init__(self, reason: str, key: str = ""):
        super().__init__(f"{key}: {reason}" if key else reason)
        self.reason = reason


class DatasetFormatError(ValueError):
    pass


@dataclass(frozen=True)
class BibRecord:
    id: str
    title: str
    abstract: str
    authors: tuple[str, ...] = ()
    year: int | None = None
    journal: str | None = None
    keyphrases: tuple[str, ...] = ()
    topic: str | None = None
    source_file: str = ""
    extra: dict[str, str] = field(default_factory=dict)

    def get(self, attribute: str):
        if attribute in RECORD_FIELDS:
            return getattr(self, attribute)
        return self.extra.get(attribute)

    def to_json(self) -> str:
        obj = {name: getattr(self, name) for name in RECORD_FIELDS}
        obj["authors"] = list(self.authors)
        obj["keyphrases"] = list(self.keyphrases)
        obj["extra"] = dict(sorted(self.extra.items()))
        return json.dumps(obj, ensure_ascii=False)


def clean_tex(value: str) -> str:
    """Drop TeX grouping braces and collapse whitespace."""
    return " ".join(value.replace("{", "").replace("}", "").split())


def normalize_record(entry: RawEntry, source_file: str, topic: str | None = None) -> BibRecord:
    f = entry.fields
    abstract = clean_tex(f.get("abstract", ""))
    if not abstract:
        raise RecordRejected("no_abstract", entry.citation_key)
    keyphrases, seen = [], set()
    for kp in split_keywords(clean_tex(f.get("keywords", f.get("keyword", "")))):
        # "Neural networks" and "neural network" count as one keyphrase
        key = phrase_key(kp) or kp
        if key not in seen:
            seen.add(key)
            keyphrases.append(kp)
    if not keyphrases:
        raise RecordRejected("no_keywords", entry.citation_key)
    authors = tuple(a for a in (clean_tex(x) for x in _AUTHOR_SPLIT.split(f.get("author", "").strip())) if a)
    m = _YEAR.search(f.get("year", ""))
    journal = clean_tex(f["journal"]) if f.get("journal", "").strip() else None
    extra = {k: v for k, v in f.items() if k not in _PROMOTED and k != "keyword"}
    extra["entry_type"] = entry.entry_type
    return BibRecord(
        id=entry.citation_key,
        title=clean_tex(f.get("title", "")),
        abstract=abstract,
        authors=authors,
        year=int(m.group()) if m else None,
        journal=journal,
        keyphrases=tuple(keyphrases),
        topic=topic,
        source_file=source_file,
        extra=extra,
    )


@dataclass(frozen=True, eq=False)
class Dataset:
    records: tuple[BibRecord, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))
        by_id = {}
        indexes: dict[str, dict] = {a: {} for a in INDEXED_ATTRIBUTES}
        for rec in self.records:
            if rec.id in by_id:
                raise ValueError(f"duplicate record id {rec.id!r}")
            by_id[rec.id] = rec
            for attr in INDEXED_ATTRIBUTES:
                value = getattr(rec, attr)
                if value is not None:
                    indexes[attr].setdefault(value, set()).add(rec.id)
        object.__setattr__(self, "by_id", by_id)
        object.__setattr__(self, "indexes",
                           {a: {v: frozenset(ids) for v, ids in idx.items()} for a, idx in indexes.items()})

    def __eq__(self, other):
        return isinstance(other, Dataset) and self.records == other.records

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)


def dedup_key(rec: BibRecord) -> tuple[str, int | None]:
    return (" ".join(rec.title.lower().split()), rec.year)


@dataclass
class FileReport:
    path: str
    topic: str | None
    entries: int = 0
    accepted: int = 0
    deduped: int = 0
    rejected: dict[str, int] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    error: str | None = None


@dataclass
class BuildReport:
    files: list[FileReport] = field(default_factory=list)

    @property
    def accepted(self) -> int:
        return sum(f.accepted for f in self.files)

    @property
    def deduped(self) -> int:
        return sum(f.deduped for f in self.files)

    @property
    def rejected(self) -> int:
        return sum(sum(f.rejected.values()) for f in self.files)

    def to_dict(self) -> dict:
        return {
            "accepted": self.accepted,
            "rejected": self.rejected,
            "deduped": self.deduped,
            "files": [asdict(f) for f in self.files],
        }


def _unique_id(key: str, source_file: str, taken: set[str]) -> str:
    if key not in taken:
        return key
    base = f"{key}@{hashlib.sha1(source_file.encode('utf-8')).hexdigest()[:8]}"
    candidate, n = base, 1
    while candidate in taken:
        n += 1
        candidate = f"{base}-{n}"
    return candidate


def read_bib_file(path: str | os.PathLike) -> str:
    return Path(path).read_bytes().decode("utf-8", errors="replace")


def build_dataset(bib_files, existing: Dataset | None = None) -> tuple[Dataset, BuildReport]:
    """Parse, normalize and deduplicate ``(path, topic)`` pairs.

    Records already in ``existing`` come first and win dedup ties; later
    files lose to earlier ones.
    """
    records = list(existing.records) if existing else []
    seen = {dedup_key(r) for r in records}
    taken = {r.id for r in records}
    report = BuildReport()
    for path, topic in bib_files:
        fr = FileReport(str(path), topic)
        report.files.append(fr)
        try:
            text = read_bib_file(path)
        except OSError as exc:
            fr.error = f"{type(exc).__name__}: {exc}"
            continue
        entries, warnings = parse_bibtex(text, {})
        fr.entries = len(entries)
        fr.warnings = [str(w) for w in warnings]
        source = Path(path).name
        for entry in entries:
            try:
                rec = normalize_record(entry, source, topic)
            except RecordRejected as rej:
                fr.rejected[rej.reason] = fr.rejected.get(rej.reason, 0) + 1
                continue
            key = dedup_key(rec)
            if key in seen:
                fr.deduped += 1
                continue
            seen.add(key)
            new_id = _unique_id(rec.id, source, taken)
            taken.add(new_id)
            if new_id != rec.id:
                rec = replace(rec, id=new_id)
            records.append(rec)
            fr.accepted += 1
    return Dataset(tuple(records)), report


@dataclass(frozen=True)
class DatasetStats:
    record_count: int = 0
    author_count: int = 0
    journal_count: int = 0
    source_file_count: int = 0
    topic_count: int = 0
    avg_abstract_words: float = 0.0
    avg_keyphrases: float = 0.0


def dataset_stats(ds: Dataset) -> DatasetStats:
    n = len(ds.records)
    if n == 0:
        return DatasetStats()
    authors = {a for r in ds.records for a in r.authors}
    return DatasetStats(
        record_count=n,
        author_count=len(authors),
        journal_count=len({r.journal for r in ds.records if r.journal is not None}),
        source_file_count=len({r.source_file for r in ds.records}),
        topic_count=len({r.topic for r in ds.records if r.topic is not None}),
        avg_abstract_words=sum(len(r.abstract.split()) for r in ds.records) / n,
        avg_keyphrases=sum(len(r.keyphrases) for r in ds.records) / n,
    )


def save_dataset(ds: Dataset, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for rec in ds.records:
            fh.write(rec.to_json())
            fh.write("\n")


_TYPES = {
    "id": (str,), "title": (str,), "abstract": (str,), "authors": (list,),
    "year": (int, type(None)), "journal": (str, type(None)), "keyphrases": (list,),
    "topic": (str, type(None)), "source_file": (str,), "extra": (dict,),
}


def record_from_dict(obj: dict, lineno: int = 0) -> BibRecord:
    where = f"line {lineno}: " if lineno else ""
    if not isinstance(obj, dict):
        raise DatasetFormatError(f"{where}expected a JSON object")
    for name, types in _TYPES.items():
        if name not in obj:
            raise DatasetFormatError(f"{where}missing {name!r}")
        if not isinstance(obj[name], types) or isinstance(obj[name], bool):
            raise DatasetFormatError(f"{where}bad type for {name!r}")
    return BibRecord(
        id=obj["id"], title=obj["title"], abstract=obj["abstract"],
        authors=tuple(obj["authors"]), year=obj["year"], journal=obj["journal"],
        keyphrases=tuple(obj["keyphrases"]), topic=obj["topic"],
        source_file=obj["source_file"], extra=dict(obj["extra"]),
    )


def load_dataset(path: str | os.PathLike) -> Dataset:
    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DatasetFormatError(f"line {lineno}: invalid JSON ({exc.msg})") from exc
            records.append(record_from_dict(obj, lineno))
    try:
        return Dataset(tuple(records))
    except ValueError as exc:
        raise DatasetFormatError(str(exc)) from exc


__all__ = [
    "BibRecord", "BuildReport", "Dataset", "DatasetFormatError", "DatasetStats", "FileReport",
    "ParseWarning", "RecordRejected", "build_dataset", "dataset_stats", "dedup_key",
    "load_dataset", "normalize_record", "record_from_dict", "save_dataset",
]
