"""Compare all extractors on the seeded synthetic corpus.

BibRank is run once per nested context so the effect of a larger context
on F1 is visible; the other extractors ignore the context.

    python3 scripts/synthetic_improvement.py --seeds 0 1 2
"""

import argparse
import statistics

from kexkit.bibrank import ContextSpec, select_context
from kexkit.evaluation import evaluate_run
from kexkit.graphrank import RankParams
from kexkit.synthetic import improvement_corpus


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, nargs="+", default=[0])
    ap.add_argument("--n-test", type=int, default=20)
    ap.add_argument("--top", type=int, default=10)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    params = RankParams(top_n=args.top)
    # (algo, context label) -> per-seed (context size, P, R, F1)
    rows: dict[tuple[str, str], list[tuple[int, float, float, float]]] = {}
    for seed in args.seeds:
        corpus = improvement_corpus(n_test=args.n_test, seed=seed)
        test_filter = ContextSpec.parse(corpus.test_filter)
        runs = [(algo, "-", ContextSpec()) for algo in ("textrank", "positionrank", "tfidf")]
        runs += [("bibrank", f"C{i}", ContextSpec.parse(c)) for i, c in enumerate(corpus.contexts, 1)]
        for algo, label, ctx in runs:
            size = len(select_context(corpus.dataset, ctx)) if algo == "bibrank" else 0
            agg = evaluate_run(corpus.dataset, test_filter, ctx, algo, params, jobs=args.jobs).aggregate
            rows.setdefault((algo, label), []).append((size, agg["p"], agg["r"], agg["f1"]))

    print(f"{'algorithm':<14}{'context':>8}{'records':>9}{'P':>9}{'R':>9}{'F1':>9}   seeds={len(args.seeds)}")
    for (algo, label), vals in rows.items():
        size, p, r, f = (statistics.mean(v[i] for v in vals) for i in range(4))
        print(f"{algo:<14}{label:>8}{size:>9.1f}{p:>9.4f}{r:>9.4f}{f:>9.4f}")


if __name__ == "__main__":
    main()
