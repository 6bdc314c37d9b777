#!/usr/bin/env python3
"""Writes the synthetic mini corpus under data/mini/.

Every answer sentence is `the S V the O` (optionally with an adjective on the
subject). Answerable questions put an argument-swapped copy of the correct
sentence first: both have the same bag of words, so BM25 ties and picks the
swapped one, while dependency relations tell them apart.
"""

import argparse
import os
import random

SUBJECTS = ["cat", "dog", "fox", "owl", "bear", "horse", "farmer", "child",
            "teacher", "pilot", "sailor", "baker"]
OBJECTS = ["mouse", "rabbit", "ball", "apple", "letter", "boat", "kite",
           "cake", "map", "drum", "lamp", "key"]
VERBS = [("chased", "chase"), ("found", "find"), ("painted", "paint"),
         ("carried", "carry"), ("watched", "watch"), ("pushed", "push"),
         ("dropped", "drop"), ("cleaned", "clean")]
ADJECTIVES = ["old", "young", "small", "brave"]

SPLITS = {"train": (12, 101), "dev": (8, 202), "test": (8, 303)}


def tok(form, lemma, upos, head, rel):
    return (form, lemma, upos, head, rel)


def statement(subj, verb, obj, adj=None):
    """the [adj] S V the O"""
    form, lemma = verb
    if adj:
        toks = [tok("the", "the", "DET", 3, "det"),
                tok(adj, adj, "ADJ", 3, "amod"),
                tok(subj, subj, "NOUN", 4, "nsubj"),
                tok(form, lemma, "VERB", 0, "root"),
                tok("the", "the", "DET", 6, "det"),
                tok(obj, obj, "NOUN", 4, "obj")]
    else:
        toks = [tok("the", "the", "DET", 2, "det"),
                tok(subj, subj, "NOUN", 3, "nsubj"),
                tok(form, lemma, "VERB", 0, "root"),
                tok("the", "the", "DET", 5, "det"),
                tok(obj, obj, "NOUN", 3, "obj")]
    return toks


def who_question(verb, obj):
    form, lemma = verb
    return [tok("who", "who", "PRON", 2, "nsubj"),
            tok(form, lemma, "VERB", 0, "root"),
            tok("the", "the", "DET", 4, "det"),
            tok(obj, obj, "NOUN", 2, "obj")]


def what_question(subj, verb):
    _, lemma = verb
    return [tok("what", "what", "PRON", 5, "obj"),
            tok("did", "do", "AUX", 5, "aux"),
            tok("the", "the", "DET", 4, "det"),
            tok(subj, subj, "NOUN", 5, "nsubj"),
            tok(lemma, lemma, "VERB", 0, "root")]


def text(toks):
    return " ".join(t[0] for t in toks)


def make_split(name, count, seed):
    rng = random.Random(seed)
    groups = []
    for q in range(count):
        qid = f"{name[0].upper()}Q{q + 1}"
        subj = rng.choice(SUBJECTS)
        obj = rng.choice(OBJECTS)
        verb = rng.choice(VERBS)
        adj = rng.choice(ADJECTIVES) if rng.random() < 0.4 else None
        question = who_question(verb, obj) if q % 2 == 0 else what_question(subj, verb)
        answerable = q % 3 != 2

        other_verb = rng.choice([v for v in VERBS if v != verb])
        unrelated = statement(rng.choice([s for s in SUBJECTS if s != subj]), other_verb,
                              rng.choice([o for o in OBJECTS if o != obj]))
        # The swapped sentence keeps the answer's words, so object nouns become
        # subjects here; tagging stays NOUN either way.
        swapped = statement(obj, verb, subj, adj)
        candidates = [(swapped, 0), (unrelated, 0)]
        if answerable:
            candidates.append((statement(subj, verb, obj, adj), 1))
        else:
            other_subj = rng.choice([s for s in SUBJECTS if s != subj])
            candidates.append((statement(other_subj, other_verb, obj), 0))
        groups.append((qid, question, candidates))
    return groups


def write_split(out_dir, name, groups, rng):
    doc = 0
    rows = ["QuestionID\tQuestion\tDocumentID\tDocumentTitle\tSentenceID\tSentence\tLabel"]
    for qid, question, candidates in groups:
        doc += 1
        for k, (toks, label) in enumerate(candidates):
            rows.append(f"{qid}\t{text(question)}\t{name[0].upper()}D{doc}\tDoc {doc}\t"
                        f"{name[0].upper()}D{doc}-{k}\t{text(toks)}\t{label}")
    with open(os.path.join(out_dir, f"{name}.tsv"), "w") as f:
        f.write("\n".join(rows) + "\n")

    # Positional order: all questions, then all candidates. Blocks carry ids
    # anyway so the index file can name them.
    blocks = []
    index = []
    for qid, question, _ in groups:
        blocks.append((f"{name}-{len(blocks) + 1}", question))
        index.append((blocks[-1][0], qid))
    doc = 0
    for qid, _, candidates in groups:
        doc += 1
        for k, (toks, _) in enumerate(candidates):
            blocks.append((f"{name}-{len(blocks) + 1}", toks))
            index.append((blocks[-1][0], f"{name[0].upper()}D{doc}-{k}"))
    with open(os.path.join(out_dir, f"{name}.conllu"), "w") as f:
        for sent_id, toks in blocks:
            f.write(f"# sent_id = {sent_id}\n# text = {text(toks)}\n")
            for i, (form, lemma, upos, head, rel) in enumerate(toks, 1):
                f.write(f"{i}\t{form}\t{lemma}\t{upos}\t_\t_\t{head}\t{rel}\t_\t_\n")
            f.write("\n")
    with open(os.path.join(out_dir, f"{name}.index.tsv"), "w") as f:
        for sent_id, wid in index:
            f.write(f"{sent_id}\t{wid}\n")

    # External scores: noisy but label-informed, standing in for a neural model.
    with open(os.path.join(out_dir, f"{name}.scores.tsv"), "w") as f:
        doc = 0
        for qid, _, candidates in groups:
            doc += 1
            for k, (_, label) in enumerate(candidates):
                s = 0.35 * label + rng.uniform(0.0, 0.6)
                f.write(f"{qid}\t{name[0].upper()}D{doc}-{k}\t{s:.6f}\n")


def write_embeddings(out_dir, rng, dim=8):
    words = sorted(set(SUBJECTS + OBJECTS + ADJECTIVES + [v[0] for v in VERBS] +
                       [v[1] for v in VERBS] + ["the", "who", "what", "did"]))
    with open(os.path.join(out_dir, "embeddings.txt"), "w") as f:
        f.write(f"{len(words)} {dim}\n")
        for w in words:
            f.write(w + " " + " ".join(f"{rng.uniform(-1, 1):.6f}" for _ in range(dim)) + "\n")


CONFIG = """\
# Mini corpus: synthetic template parses, see tools/make_mini_corpus.py.
[train]
corpus = train.tsv
conllu = train.conllu
scores = train.scores.tsv

[dev]
corpus = dev.tsv
conllu = dev.conllu
index = dev.index.tsv
scores = dev.scores.tsv

[test]
corpus = test.tsv
conllu = test.conllu
index = test.index.tsv
scores = test.scores.tsv

[resources]
embeddings = embeddings.txt
df_word = df/df_word.tsv
df_pair = df/df_pair.tsv
df_triplet = df/df_triplet.tsv

[features]
manifest = ged,sim_word,sim_pair,sim_triplet,rel_cov,graph_cov_ans,graph_cov_ques,vocab_cov
extra = bm25,ngram,semvec

# A DF table over a few dozen sentences gives idf values near 1-3, so the
# full-scale cut-offs would drop every key.
[graphsim]
alpha_word = 0
alpha_pair = 0
alpha_triplet = 0

[combiner]
lr = 0.1
epochs = 200
l2 = 0.0001
"""


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "data", "mini"))
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    for name, (count, seed) in SPLITS.items():
        write_split(args.out, name, make_split(name, count, seed), random.Random(seed + 7))
    write_embeddings(args.out, random.Random(404))
    with open(os.path.join(args.out, "mini.ini"), "w") as f:
        f.write(CONFIG)


if __name__ == "__main__":
    main()
