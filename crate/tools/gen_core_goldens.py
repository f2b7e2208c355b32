"""Independent evaluations of the BM25 closed form and of the toy expansion
examples, printed as Rust literals."""
import math

import numpy as np

K1, B, K3 = 1.2, 0.75, 8.0

# (N, df, tf, doclen, other_len, qweight): the scored document holds `tf`
# copies of the term and doclen - tf filler tokens; df - 1 other documents
# hold the term once and every other document has other_len tokens.
BM25_TUPLES = [
    (3, 1, 2, 3, 3, 1.0),
    (10, 1, 1, 5, 5, 1.0),
    (10, 2, 3, 12, 6, 1.0),
    (50, 5, 1, 4, 9, 1.0),
    (50, 24, 7, 20, 10, 1.0),
    (7, 3, 2, 2, 8, 1.3),
    (20, 1, 10, 10, 3, 0.3),
    (4, 1, 1, 1, 1, 2.0),
    (30, 12, 4, 40, 15, 0.6),
    (2, 1, 5, 5, 5, 1.0),
]


def bm25(n, df, tf, dl, other, w):
    avgdl = (dl + (n - 1) * other) / n
    idf = max(0.0, math.log((n - df + 0.5) / (df + 0.5)))
    sat = tf * (K1 + 1) / (tf + K1 * (1 - B + B * dl / avgdl))
    qf = (K3 + 1) * w / (K3 + w)
    return idf * sat * qf


def cos(u, v):
    """u is a stored (f32) vector, v an f64 anchor."""
    u = np.asarray(u, dtype=np.float32).astype(np.float64)
    v = np.asarray(v, dtype=np.float64)
    return float(u @ v / (np.linalg.norm(u) * np.linalg.norm(v)))


def knn(space, anchor, k, exclude):
    cands = [(cos(vec, anchor), t) for t, vec in space.items() if t not in exclude]
    cands.sort(key=lambda x: (-x[0], x[1]))
    return cands[:k]


def main():
    print("// BM25")
    for t in BM25_TUPLES:
        print(f"    ({t[0]}, {t[1]}, {t[2]}, {t[3]}, {t[4]}, {t[5]!r}, {bm25(*t)!r}),")

    print("// knn example")
    s = {"a": [1, 0], "b": [0, 1], "c": [0.9, 0.1]}
    print(knn(s, [1, 0], 1, {"a"}))

    print("// local expansion, 4-term space, Q={a,d}, k=2, alpha=0.3")
    space = {"a": [1, 0, 0], "b": [0.8, 0.6, 0], "c": [0.6, 0, 0.8], "d": [0.1, 0.9, 0.3]}
    q = {"a": 1.0, "d": 1.0}
    fused = dict(q)
    order = list(q)
    for anchor in q:
        vec = np.asarray(space[anchor], dtype=np.float32).astype(np.float64)
        for sim, t in knn(space, vec, 2, {anchor}):
            if sim > 0:
                if t not in fused:
                    order.append(t)
                fused[t] = fused.get(t, 0.0) + 0.3 * sim
    for t in order:
        print(f"    (\"{t}\", {fused[t]!r}),")

    print("// global expansion of the same query, k=2, alpha=0.3")
    c = np.asarray(space["a"], dtype=np.float32).astype(np.float64) + np.asarray(space["d"], dtype=np.float32).astype(np.float64)
    for sim, t in knn(space, c, 2, set(q)):
        print(f"    (\"{t}\", {0.3 * sim!r}),")


if __name__ == "__main__":
    main()
