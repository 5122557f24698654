#!/usr/bin/env python3
"""Generate the bundled demo fixture: a 10-document synthetic corpus with
planted gold key-phrases, a matching toy embedding table, and a small
domain glossary.

The corpus is built from pronounceable pseudo-words so that nothing in it
can be mistaken for scraped data.  The construction is adversarial on
purpose: per document, the five gold phrases (bi/tri-grams) carry slightly
*lower* document-vector cosine than the planted distractor unigrams and
5-gram runs, but they are well-formed (high left/right entropy, PMI far
above threshold, no length penalty) and sit close to the glossary axis.
A pure document-relevance ranking therefore prefers the distractors, while
the combined score pulls the gold phrases back up — which is exactly the
behaviour the acceptance suite checks.

Embedding geometry (24 dims):
  dims 0-9   one axis per document
  dim  10    shared "domain" axis used by glossary terms and gold words
  dims 11-23 per-word noise

Run from the repository root:  python3 scripts/make_demo.py
"""

import json
import math
import os
import random

DIM = 24
N_DOCS = 10
DOMAIN_AXIS = 10
NOISE_LO = 11

GOLD_DOMAIN = 0.50   # domain-axis weight on gold words
GOLD_NOISE = 0.60    # noise magnitude on gold words (lowers doc cosine)
DISTR_NOISE = 0.10
FIVE_NOISE = 0.06
GLOSS_NOISE = 0.15

# pseudo-word endings are chosen to avoid the tagger's -al/-ic/-ed/-ly/
# -ous/-able/-ive adjective suffixes and trailing -s
SYL_A = ["vor", "ten", "mak", "lin", "dro", "qua", "fel", "nim", "zar",
         "bex", "cul", "rop", "san", "tir", "wug", "hem", "pol", "gri",
         "nav", "kel"]
SYL_B = ["dun", "mox", "raf", "sib", "tol", "vun", "yer", "zim", "lat",
         "cor", "pid", "gam", "hur", "jen", "kom", "lun", "mer", "nok",
         "pir", "rud"]
BAD_END = ("al", "ic", "ed", "ly", "ous", "able", "ive", "s")

STOPS = ["the", "a", "this", "each", "some", "any", "that", "both", "few",
         "most", "such", "their", "our", "its", "more", "other", "same",
         "all", "which", "very", "these", "those", "his", "her", "my"]


def make_words(rng, n, used):
    out = []
    while len(out) < n:
        w = rng.choice(SYL_A) + rng.choice(SYL_B)
        if rng.random() < 0.4:
            w += rng.choice(SYL_A)
        if w in used or w.endswith(BAD_END):
            continue
        used.add(w)
        out.append(w)
    return out


def unit_noise(rng):
    v = [rng.gauss(0.0, 1.0) for _ in range(DIM - NOISE_LO)]
    n = math.sqrt(sum(x * x for x in v))
    return [x / n for x in v]


def word_vector(rng, doc_axis, domain, noise_mag):
    v = [0.0] * DIM
    if doc_axis is not None:
        v[doc_axis] = 1.0
    v[DOMAIN_AXIS] = domain
    for i, x in enumerate(unit_noise(rng)):
        v[NOISE_LO + i] = noise_mag * x
    return v


def main():
    rng = random.Random(20260824)
    used = set(STOPS)
    out_dir = os.path.join(os.path.dirname(__file__), "..", "data", "demo")
    os.makedirs(out_dir, exist_ok=True)

    vectors = {}   # word -> vector
    docs = []

    for d in range(N_DOCS):
        gold_words = make_words(rng, 12, used)
        gold = [
            gold_words[0:2], gold_words[2:4], gold_words[4:6],
            gold_words[6:9], gold_words[9:12],
        ]
        distr = make_words(rng, 8, used)
        five = [make_words(rng, 5, used), make_words(rng, 5, used)]

        for w in gold_words:
            vectors[w] = word_vector(rng, d, GOLD_DOMAIN, GOLD_NOISE)
        for w in distr:
            vectors[w] = word_vector(rng, d, 0.0, DISTR_NOISE)
        for run in five:
            for w in run:
                vectors[w] = word_vector(rng, d, 0.0, FIVE_NOISE)

        # title: first gold phrase plus two boosted distractors
        g0 = " ".join(gold[0])
        title = f"{g0.capitalize()} with the {distr[0]} and the {distr[1]}"

        # abstract: each unit occurs with distinct left/right stopword
        # neighbours so left-right entropy is positive for repeated units
        units = []
        units += [(g, 2 if i == 0 else 3) for i, g in enumerate(gold)]
        units += [([w], 2) for w in distr]
        units += [(run, 1) for run in five]

        occurrences = []
        for ui, (toks, reps) in enumerate(units):
            for j in range(reps):
                left = STOPS[(3 * ui + j) % len(STOPS)]
                right = STOPS[(3 * ui + j + 7) % len(STOPS)]
                occurrences.append(f"{left} {' '.join(toks)} {right}")
        rng.shuffle(occurrences)

        sentences = []
        for i in range(0, len(occurrences), 3):
            sentences.append(" ".join(occurrences[i:i + 3]) + ".")
        abstract = " ".join(sentences)

        if d == 0:
            abstract += (" We use Explainable Artificial Intelligence (XAI)"
                         " for the " + distr[2] + ". The XAI of the " +
                         distr[3] + " and the Explainable Artificial"
                         " Intelligence of the " + distr[4] + ".")

        docs.append({
            "id": f"demo{d:02d}",
            "title": title,
            "abstract": abstract,
            "keywords": [" ".join(g) for g in gold],
        })

    gloss_terms = make_words(rng, 10, used)
    for w in gloss_terms:
        vectors[w] = word_vector(rng, None, 1.0, GLOSS_NOISE)

    with open(os.path.join(out_dir, "corpus.jsonl"), "w") as f:
        for doc in docs:
            f.write(json.dumps(doc) + "\n")

    with open(os.path.join(out_dir, "embeddings.txt"), "w") as f:
        f.write(f"{len(vectors)} {DIM}\n")
        for w in sorted(vectors):
            f.write(w + " " + " ".join(f"{x:.6f}" for x in vectors[w]) + "\n")

    with open(os.path.join(out_dir, "glossary.txt"), "w") as f:
        f.write("# demo domain glossary\n")
        for w in gloss_terms:
            f.write(w + "\n")

    print(f"wrote {len(docs)} documents, {len(vectors)} vectors, "
          f"{len(gloss_terms)} glossary terms -> {out_dir}")


if __name__ == "__main__":
    main()
