#!/usr/bin/env python3
"""Reference feature values for the mini corpus, written from the definitions
without reusing any of the C++ code paths.

GED goes through scipy's linear_sum_assignment, sub-graph paths through
networkx shortest paths. Output matches `atrig featurize` column layout for
data/mini/mini.ini.
"""

import argparse
import math
import os
import string
from collections import Counter

import networkx as nx
import numpy as np
from scipy.optimize import linear_sum_assignment

ALPHA = (0.0, 0.0, 0.0)
M = 3
K1, B = 1.5, 0.75
N_MAX = 3
EDGE_WEIGHT, DELETION = 0.5, 1.0

CLASSES = [{"NOUN", "PROPN", "PRON"}, {"VERB", "AUX"}, {"ADJ", "ADV"}]

COLUMNS = ["ged", "sim_word", "sim_pair", "sim_triplet", "rel_cov", "graph_cov_ans",
           "graph_cov_ques", "vocab_cov", "bm25", "ngram", "semvec"]


def pos_cost(a, b):
    if a == b:
        return 0.3
    if any(a in c and b in c for c in CLASSES):
        return 0.5
    return 1.0


def read_corpus(path):
    groups = {}
    order = []
    with open(path) as f:
        next(f)
        for line in f:
            qid, q, _, _, sid, s, label = line.rstrip("\n").split("\t")
            if qid not in groups:
                groups[qid] = {"question": q, "cands": []}
                order.append(qid)
            groups[qid]["cands"].append((sid, s, int(label)))
    return [(qid, groups[qid]) for qid in order]


def read_conllu(path):
    blocks, cur, sid = [], [], None
    with open(path) as f:
        for line in f:
            line = line.rstrip("\n")
            if line.startswith("# sent_id = "):
                sid = line[len("# sent_id = "):]
            elif line.startswith("#"):
                continue
            elif not line:
                if cur:
                    blocks.append((sid, cur))
                cur, sid = [], None
            else:
                c = line.split("\t")
                cur.append({"lemma": c[2].lower(), "upos": c[3], "head": int(c[6]), "rel": c[7]})
    if cur:
        blocks.append((sid, cur))
    return blocks


def attach(corpus, blocks, index_path):
    if index_path and os.path.exists(index_path):
        by_sid = dict(blocks)
        mapping = {}
        with open(index_path) as f:
            for line in f:
                s, w = line.rstrip("\n").split("\t")
                mapping[w] = by_sid[s]
        get = mapping.__getitem__
        return {qid: get(qid) for qid, _ in corpus}, {
            sid: get(sid) for _, g in corpus for sid, _, _ in g["cands"]}
    it = iter(b for _, b in blocks)
    qs = {qid: next(it) for qid, _ in corpus}
    cs = {sid: next(it) for _, g in corpus for sid, _, _ in g["cands"]}
    return qs, cs


def edges(toks):
    """(head_index, dep_index, rel), 0-based."""
    return [(t["head"] - 1, i, t["rel"]) for i, t in enumerate(toks) if t["head"] != 0]


def ged(q, a):
    n, m = len(q), len(a)
    qe, ae = edges(q), edges(a)

    def rels(toks_edges, i):
        return Counter(r for h, d, r in toks_edges if i in (h, d))

    big = 1e12
    c = np.full((n + m, n + m), big)
    for i in range(n):
        for j in range(m):
            node = 0.0 if q[i]["lemma"] == a[j]["lemma"] else pos_cost(q[i]["upos"], a[j]["upos"])
            ri, rj = rels(qe, i), rels(ae, j)
            diff = sum(((ri - rj) + (rj - ri)).values())
            c[i, j] = node + EDGE_WEIGHT * diff / 2
    denom = 0.0
    for i in range(n):
        c[i, m + i] = DELETION + EDGE_WEIGHT * sum(rels(qe, i).values())
        denom += c[i, m + i]
    for j in range(m):
        c[n + j, j] = DELETION + EDGE_WEIGHT * sum(rels(ae, j).values())
        denom += c[n + j, j]
    c[n:, m:] = 0.0
    r, k = linear_sum_assignment(c)
    return min(1.0, c[r, k].sum() / denom)


def keys(toks, level):
    if level == 0:
        return Counter(t["lemma"] for t in toks)
    out = Counter()
    for h, d, r in edges(toks):
        k = toks[h]["lemma"] + "|" + toks[d]["lemma"]
        out[k + "|" + r if level == 2 else k] += 1
    return out


def build_df(docs):
    tables = []
    for level in range(3):
        df = Counter()
        for toks in docs:
            df.update(set(keys(toks, level)))
        tables.append((len(docs), df))
    return tables


def tfidf(toks, level, table, alpha):
    n, df = table
    v = {}
    for k, tf in keys(toks, level).items():
        w = tf * (math.log((n + 1) / (df.get(k, 0) + 1)) + 1)
        if w > alpha:
            v[k] = w
    return v


def cos(u, v):
    if not u or not v:
        return 0.0
    dot = sum(w * v[k] for k, w in u.items() if k in v)
    nu = math.sqrt(sum(w * w for w in u.values()))
    nv = math.sqrt(sum(w * w for w in v.values()))
    return dot / (nu * nv)


def signature_counts(toks):
    return Counter((toks[h]["lemma"], toks[d]["lemma"], r) for h, d, r in edges(toks))


def rel_cov(q, a):
    qs = signature_counts(q)
    if not qs:
        return 0.0
    return sum((qs & signature_counts(a)).values()) / len(edges(q))


def vocab_cov(q, a):
    ql = Counter(t["lemma"] for t in q)
    return sum((ql & Counter(t["lemma"] for t in a)).values()) / len(q)


def subgraph_edges(q, a, m):
    qlem = {t["lemma"] for t in q}
    g = nx.Graph()
    g.add_nodes_from(range(len(a)))
    g.add_edges_from((h, d) for h, d, _ in edges(a))
    shared = [i for i, t in enumerate(a) if t["lemma"] in qlem]
    out = set()
    for x in range(len(shared)):
        for y in range(x + 1, len(shared)):
            try:
                p = nx.shortest_path(g, shared[x], shared[y])
            except nx.NetworkXNoPath:
                continue
            if len(p) - 1 <= m:
                out.update(frozenset(e) for e in zip(p, p[1:]))
    return len(out) if m > 0 else 0


def tokens(text):
    out = []
    for raw in text.split():
        t = raw.strip(string.punctuation)
        if t:
            out.append(t.lower())
    return out


def bm25(qt, at, pool):
    n = len(pool)
    avgdl = sum(len(d) for d in pool) / n
    tf = Counter(at)
    s = 0.0
    for w in qt:
        if w not in tf:
            continue
        contain = sum(1 for d in pool if w in d)
        idf = math.log((n - contain + 0.5) / (contain + 0.5))
        s += idf * tf[w] * (K1 + 1) / (tf[w] + K1 * (1 - B + B * len(at) / avgdl))
    return s


def ngram(qt, at):
    total = 0.0
    for n in range(1, N_MAX + 1):
        if len(qt) < n:
            continue
        qg = Counter(tuple(qt[i:i + n]) for i in range(len(qt) - n + 1))
        ag = Counter(tuple(at[i:i + n]) for i in range(len(at) - n + 1))
        total += sum((qg & ag).values()) / (len(qt) - n + 1)
    return total / (N_MAX * (N_MAX + 1) / 2)


def read_embeddings(path):
    emb = {}
    with open(path) as f:
        first = True
        for line in f:
            parts = line.split()
            if first and len(parts) == 2 and parts[0].isdigit():
                first = False
                continue
            first = False
            emb[parts[0]] = np.array([float(x) for x in parts[1:]])
    return emb


def semvec(qt, at, emb):
    qv = [emb[w] for w in qt if w in emb]
    av = [emb[w] for w in at if w in emb]
    if not qv or not av:
        return 0.0
    q, a = np.mean(qv, axis=0), np.mean(av, axis=0)
    return float(q @ a / (np.linalg.norm(q) * np.linalg.norm(a)))


def load_split(data, name):
    corpus = read_corpus(os.path.join(data, f"{name}.tsv"))
    blocks = read_conllu(os.path.join(data, f"{name}.conllu"))
    index = os.path.join(data, f"{name}.index.tsv") if name != "train" else None
    qs, cs = attach(corpus, blocks, index)
    return corpus, qs, cs


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--data", required=True)
    ap.add_argument("--split", default="train")
    ap.add_argument("--out", required=True)
    args = ap.parse_args()

    tcorpus, tq, tc = load_split(args.data, "train")
    docs = [tq[qid] for qid, _ in tcorpus] + [tc[sid] for _, g in tcorpus for sid, _, _ in g["cands"]]
    df = build_df(docs)
    emb = read_embeddings(os.path.join(args.data, "embeddings.txt"))

    corpus, qs, cs = load_split(args.data, args.split)
    lines = ["\t".join(["question_id", "candidate_id", "label"] + COLUMNS)]
    for qid, g in corpus:
        q = qs[qid]
        qt = tokens(g["question"])
        pool = [tokens(s) for _, s, _ in g["cands"]]
        for sid, s, label in g["cands"]:
            a = cs[sid]
            at = tokens(s)
            sub = subgraph_edges(q, a, M)
            vals = [
                ged(q, a),
                *(cos(tfidf(q, lv, df[lv], ALPHA[lv]), tfidf(a, lv, df[lv], ALPHA[lv]))
                  for lv in range(3)),
                rel_cov(q, a),
                sub / len(edges(a)) if edges(a) else 0.0,
                min(1.0, sub / len(edges(q))) if edges(q) else 0.0,
                vocab_cov(q, a),
                bm25(qt, at, pool),
                ngram(qt, at),
                semvec(qt, at, emb),
            ]
            lines.append("\t".join([qid, sid, str(label)] + [repr(float(v)) for v in vals]))
    with open(args.out, "w") as f:
        f.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
