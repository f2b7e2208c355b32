"""Random run/qrels pairs scored with pytrec_eval, and paired t-tests from scipy."""
import json
import random
import sys

import pytrec_eval
from scipy import stats

MEASURES = {"map", "P_5", "P_10", "P_30", "recip_rank"}


def metric_cases(rng, n_cases=200):
    cases = []
    for _ in range(n_cases):
        n_queries = rng.randint(1, 20)
        run, qrels = {}, {}
        for q in range(n_queries):
            qid = f"q{q}"
            pool = rng.randint(1, 100)
            depth = rng.randint(0, pool)
            docs = [f"d{i}" for i in rng.sample(range(1000), pool)]
            retrieved = docs[:depth]
            scores = rng.sample(range(1, 100000), depth)
            run[qid] = {d: s / 1000.0 for d, s in zip(retrieved, scores)}
            p_rel = rng.choice([0.05, 0.2, 0.5, 0.9])
            judged = {d: (1 if rng.random() < p_rel else 0) for d in docs if rng.random() < 0.8}
            if not any(judged.values()):
                judged[rng.choice(docs)] = 1
            qrels[qid] = judged
        ev = pytrec_eval.RelevanceEvaluator(qrels, MEASURES)
        res = ev.evaluate(run)
        expected = {}
        for qid in qrels:
            m = res.get(qid)
            if m is None:
                m = {k: 0.0 for k in MEASURES}
            expected[qid] = {
                "map": m["map"],
                "p5": m["P_5"],
                "p10": m["P_10"],
                "p30": m["P_30"],
                "mrr": m["recip_rank"],
            }
        cases.append({
            "run": {q: [[d, s] for d, s in docs.items()] for q, docs in run.items()},
            "qrels": {q: [[d, r] for d, r in j.items()] for q, j in qrels.items()},
            "expected": expected,
        })
    return cases


def ttest_cases(rng, n=20):
    out = []
    grids = [None, 0.2, 0.1, 1 / 30]
    for i in range(n):
        size = rng.randint(2, 40)
        step = grids[i % len(grids)]
        def draw():
            x = rng.random()
            return round(round(x / step) * step, 12) if step else round(x, 6)
        a = [draw() for _ in range(size)]
        b = [min(1.0, max(0.0, round(x + rng.gauss(0.05, 0.15), 6))) if step is None else draw() for x in a]
        if a == b:
            b[0] = round(1.0 - b[0], 6)
        r = stats.ttest_rel(a, b)
        out.append({"a": a, "b": b, "t": float(r.statistic), "p": float(r.pvalue)})
    a = [0.2, 0.4, 0.6, 0.8]
    b = [0.1, 0.3, 0.5, 0.9]
    r = stats.ttest_rel(a, b)
    out[0] = {"a": a, "b": b, "t": float(r.statistic), "p": float(r.pvalue)}
    return out


def main(out_dir):
    rng = random.Random(4242)
    with open(f"{out_dir}/metric_cases.json", "w") as f:
        json.dump(metric_cases(rng), f, separators=(",", ":"))
    with open(f"{out_dir}/ttest_cases.json", "w") as f:
        json.dump(ttest_cases(rng), f, indent=1)


if __name__ == "__main__":
    main(sys.argv[1])
