"""Evaluate every extractor on one test/context split of a JSONL dataset.

By default the test set is the 1988 compsci records, bib weights from
1980..1987. Growing contexts can be compared with repeated ``--context``.

    python3 scripts/run_split_experiment.py data/bibrank.jsonl \\
        --context topic=compsci,year=1987 --context topic=compsci,year=1980..1987
"""

import argparse
import json
import os
import sys
import time

from kexkit.bibrank import ContextSpec, select_context
from kexkit.dataset import load_dataset
from kexkit.evaluation import evaluate_run
from kexkit.extractors import REGISTRY
from kexkit.graphrank import RankParams


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("dataset")
    ap.add_argument("--filter", default="topic=compsci,year=1988")
    ap.add_argument("--context", action="append", help="repeatable; default topic=compsci,year=1980..1987")
    ap.add_argument("--algos", nargs="+", default=["textrank", "positionrank", "tfidf", "bibrank"],
                    choices=sorted(REGISTRY))
    ap.add_argument("--tagger", default="lexicon")
    ap.add_argument("--top", type=int, default=10)
    ap.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--json", help="also write all aggregates to this file")
    args = ap.parse_args()

    ds = load_dataset(args.dataset)
    test_filter = ContextSpec.parse(args.filter)
    contexts = [ContextSpec.parse(c) for c in (args.context or ["topic=compsci,year=1980..1987"])]
    params = RankParams(top_n=args.top)
    n_test = len(select_context(ds, test_filter))
    print(f"{len(ds)} records, {n_test} test documents ({args.filter})", file=sys.stderr)

    results = []
    for algo in args.algos:
        for ctx in (contexts if algo == "bibrank" else [ContextSpec()]):
            t0 = time.perf_counter()
            report = evaluate_run(ds, test_filter, ctx, algo, params, jobs=args.jobs, tagger=args.tagger)
            results.append({"algo": algo, "context": str(ctx),
                            "context_size": len(select_context(ds, ctx)) if algo == "bibrank" else 0,
                            **report.aggregate, "seconds": round(time.perf_counter() - t0, 2)})

    print(f"{'algorithm':<14}{'records':>9}{'P':>9}{'R':>9}{'F1':>9}")
    for r in results:
        print(f"{r['algo']:<14}{r['context_size']:>9}{r['p']:>9.4f}{r['r']:>9.4f}{r['f1']:>9.4f}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(results, fh, indent=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
