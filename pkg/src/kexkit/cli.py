"""Build keyphrase datasets from BibTeX files, extract and evaluate keyphrases.

Subcommands: ``dataset build``, ``dataset stats``, ``extract``, ``evaluate``.

Exit codes: 0 success, 1 runtime error, 2 usage error. Option values are
resolved as command-line flag, then ``--config`` JSON file, then default.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict
from pathlib import Path

from .bibrank import ContextSpec, ContextSpecError, select_context
from .dataset import (
    DatasetFormatError, build_dataset, dataset_stats, load_dataset, save_dataset,
)
from .evaluation import EmptyTestSetError, evaluate_run, extract_many, render_report
from .extractors import REGISTRY, get_extractor
from .graphrank import RankParams
from .textproc import TaggingError

DEFAULTS = {
    "top": 10, "damping": 0.85, "window": 2, "tol": 1e-6, "max_iter": 100, "max_phrase_len": 3,
    "tagger": "lexicon", "format": "text", "filter": "", "context": "",
    "jobs": os.cpu_count() or 1,
}
_RANK = ["top", "damping", "window", "tol", "max_iter", "max_phrase_len"]


class UsageError(Exception):
    pass


def _add_rank_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("ranking parameters")
    g.add_argument("--top", type=int, help="number of keyphrases to return (default 10)")
    g.add_argument("--damping", type=float, help="PageRank damping factor (default 0.85)")
    g.add_argument("--window", type=int, help="co-occurrence window in words (default 2)")
    g.add_argument("--tol", type=float, help="L1 convergence tolerance (default 1e-6)")
    g.add_argument("--max-iter", type=int, help="PageRank iteration cap (default 100)")
    g.add_argument("--max-phrase-len", type=int, help="longest candidate phrase (default 3)")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="JSON file with default option values")
    p.add_argument("--tagger", help="'lexicon' (default) or 'conll:<file-or-directory>'")
    p.add_argument("--format", choices=["json", "text"], help="output format (default text)")
    p.add_argument("--jobs", type=int, help="worker processes (default: number of cores)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kexkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    ds = sub.add_parser("dataset", help="build or inspect keyphrase datasets")
    ds_sub = ds.add_subparsers(dest="dataset_command", required=True)

    b = ds_sub.add_parser("build", help="build a JSONL dataset from .bib files")
    b.add_argument("inputs", nargs="*", metavar="BIB[=TOPIC]",
                   help="BibTeX file, optionally with the topic assigned to its records")
    b.add_argument("--topic", help="topic for inputs that do not name one")
    b.add_argument("--existing", type=Path, help="dataset to extend")
    b.add_argument("--out", type=Path, required=True, help="output JSONL dataset")
    b.add_argument("--report", type=Path, help="write the JSON build report here (default stdout)")

    s = ds_sub.add_parser("stats", help="print dataset statistics")
    s.add_argument("dataset", type=Path)
    s.add_argument("--format", choices=["json", "text"], default="text")

    e = sub.add_parser("extract", help="extract keyphrases from a text file or dataset records")
    src = e.add_mutually_exclusive_group(required=True)
    src.add_argument("--text", type=Path, help="plain-text document")
    src.add_argument("--dataset", type=Path, help="JSONL dataset; extracts from record abstracts")
    e.add_argument("--id", action="append", dest="ids", help="record id to extract (repeatable; default all)")
    e.add_argument("--algo", help=f"one of: {', '.join(sorted(REGISTRY))}")
    e.add_argument("--context", help="context spec for bib weights, e.g. topic=compsci,year=1980..1987")
    e.add_argument("--context-file", type=Path, help="dataset the context is drawn from (with --text)")
    _add_rank_flags(e)
    _add_common(e)

    v = sub.add_parser("evaluate", help="score an extractor against gold keyphrases")
    v.add_argument("--dataset", type=Path, required=True)
    v.add_argument("--algo", help=f"one of: {', '.join(sorted(REGISTRY))}")
    v.add_argument("--filter", help="test-set spec, e.g. topic=compsci,year=1988")
    v.add_argument("--context", help="context spec for bib weights")
    v.add_argument("--out", type=Path, help="write the report here (default stdout)")
    _add_rank_flags(v)
    _add_common(v)
    return parser


def _resolve(args: argparse.Namespace, names: list[str]) -> dict:
    config = {}
    if getattr(args, "config", None):
        try:
            config = json.loads(args.config.read_text("utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(config, dict):
            raise UsageError("config file must hold a JSON object")
        config = {k.replace("-", "_"): v for k, v in config.items()}
    out = {}
    for name in names:
        value = getattr(args, name, None)
        if value is None:
            value = config.get(name, DEFAULTS.get(name))
        out[name] = value
    return out


def _params(opts: dict) -> RankParams:
    try:
        return RankParams(damping=float(opts["damping"]), window=int(opts["window"]),
                          tol=float(opts["tol"]), max_iter=int(opts["max_iter"]),
                          top_n=int(opts["top"]), max_phrase_len=int(opts["max_phrase_len"]))
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _algo(name) -> str:
    if not name:
        raise UsageError(f"--algo is required (one of: {', '.join(sorted(REGISTRY))})")
    try:
        get_extractor(name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    return name


def _spec(text) -> ContextSpec:
    try:
        return ContextSpec.parse(text)
    except ContextSpecError as exc:
        raise UsageError(str(exc)) from None


def _write(data: bytes, path: Path | None) -> None:
    if path is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        path.write_bytes(data)


def cmd_dataset_build(args) -> int:
    pairs = []
    for item in args.inputs:
        path, sep, topic = item.rpartition("=") if "=" in item else (item, "", "")
        pairs.append((Path(path), topic if sep else args.topic))
    existing = load_dataset(args.existing) if args.existing else None
    ds, report = build_dataset(pairs, existing)
    save_dataset(ds, args.out)
    data = json.dumps(report.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    _write(data.encode(), args.report)
    return 0 if report.accepted >= 1 else 1


def cmd_dataset_stats(args) -> int:
    stats = asdict(dataset_stats(load_dataset(args.dataset)))
    if args.format == "json":
        out = json.dumps(stats, indent=2) + "\n"
    else:
        width = max(map(len, stats))
        out = "".join(
            f"{k.ljust(width)}  {v:.2f}\n" if isinstance(v, float) else f"{k.ljust(width)}  {v}\n"
            for k, v in stats.items())
    _write(out.encode(), None)
    return 0


def _jobs(opts: dict) -> int:
    try:
        jobs = int(opts["jobs"])
    except (TypeError, ValueError):
        raise UsageError(f"bad --jobs value {opts['jobs']!r}") from None
    if jobs < 1:
        raise UsageError("--jobs must be >= 1")
    return jobs


def cmd_extract(args) -> int:
    opts = _resolve(args, ["algo", "context", "tagger", "format", "jobs", *_RANK])
    algo = _algo(opts["algo"])
    params = _params(opts)
    spec = _spec(opts["context"])
    jobs = _jobs(opts)
    extractor = get_extractor(algo)(params)

    # (doc_id, tagger_id, text, exclude)
    tasks = []
    if args.text is not None:
        corpus = load_dataset(args.context_file) if args.context_file else None
        extractor.fit(corpus, select_context(corpus, spec) if corpus else ())
        text = args.text.read_bytes().decode("utf-8", errors="replace")
        tasks.append((args.text.name, args.text.stem, text, None))
    else:
        ds = load_dataset(args.dataset)
        extractor.fit(ds, select_context(ds, spec))
        for i in args.ids or [r.id for r in ds.records]:
            if i not in ds.by_id:
                raise LookupError(f"no record with id {i!r}")
            tasks.append((i, i, ds.by_id[i].abstract, i))

    rankings = extract_many(extractor, tasks, opts["tagger"], jobs)
    results = [(t[0], r) for t, r in zip(tasks, rankings)]

    if opts["format"] == "json":
        obj = [{"id": doc_id, "meta": r.meta,
                "keyphrases": [{"phrase": p, "score": s} for p, s in r]} for doc_id, r in results]
        out = json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    else:
        lines = []
        for doc_id, r in results:
            if len(results) > 1:
                lines.append(f"# {doc_id}")
            lines.extend(f"{i}\t{s:.6f}\t{p}" for i, (p, s) in enumerate(r, 1))
        out = "".join(ln + "\n" for ln in lines)
    _write(out.encode(), None)
    return 0


def cmd_evaluate(args) -> int:
    opts = _resolve(args, ["algo", "filter", "context", "tagger", "format", "jobs", *_RANK])
    algo = _algo(opts["algo"])
    params = _params(opts)
    test_filter, context = _spec(opts["filter"]), _spec(opts["context"])
    jobs = _jobs(opts)
    ds = load_dataset(args.dataset)
    report = evaluate_run(ds, test_filter, context, algo, params, jobs=jobs, tagger=opts["tagger"])
    _write(render_report(report, opts["format"]), args.out)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "dataset":
        handler = cmd_dataset_build if args.dataset_command == "build" else cmd_dataset_stats
    else:
        handler = {"extract": cmd_extract, "evaluate": cmd_evaluate}[args.command]
    try:
        return handler(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"kexkit: error: {exc}", file=sys.stderr)
        return 2
    except (OSError, LookupError, ValueError, RuntimeError, TaggingError,
            DatasetFormatError, EmptyTestSetError) as exc:
        print(f"kexkit: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
