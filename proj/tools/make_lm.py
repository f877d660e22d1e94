#!/usr/bin/env python3
# Copyright 2026 The biasdec Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ==============================================================================
"""Trains a small backoff n-gram model and writes it as ARPA.

Absolute discounting with Katz-style backoff weights, so every context's
distribution sums to one. Input is one sentence per line; a corpus file in
"reference<TAB>bias,words" form is accepted too (the bias column is ignored).

  biasdec gen --count 20000 --seed 1000 | tools/make_lm.py \
      --exclude frisbee,ottoman,spatula,thermos > data/instructions-3gram.arpa
"""

import argparse
import collections
import math
import sys

BOS, EOS, UNK = "<s>", "</s>", "<unk>"

# General sentences so that common look-alikes of scene words are known.
EXTRA = [
    "read the book", "i read the note", "read me the list",
    "the tower is tall", "wear a cap", "put the cap on the bottle",
    "the wind blew", "a row of chairs", "the lion will roar",
    "a mag on the table", "the bole of the tree",
]


def sentences(lines, exclude):
  for line in lines:
    text = line.split("\t", 1)[0].strip().lower()
    words = text.split()
    if not words or any(w in exclude for w in words):
      continue
    yield words


def train(corpus, order, discount, unk_mass):
  counts = [collections.Counter() for _ in range(order)]
  for words in corpus:
    padded = [BOS] + words + [EOS]
    for n in range(1, order + 1):
      for i in range(len(padded) - n + 1):
        gram = tuple(padded[i:i + n])
        if gram == (BOS,):
          continue
        if n > 1 and gram[-1] == BOS:
          continue
        counts[n - 1][gram] += 1

  total = sum(counts[0].values())
  probs = [dict() for _ in range(order)]
  for (w,), c in counts[0].items():
    probs[0][(w,)] = (1.0 - unk_mass) * c / total
  probs[0][(UNK,)] = unk_mass

  def lower(gram):
    """Full backoff probability of gram[-1] given gram[:-1], lower orders."""
    n = len(gram)
    if n == 1:
      return probs[0].get(gram, probs[0][(UNK,)])
    if gram in probs[n - 1]:
      return probs[n - 1][gram]
    return backoff.get(gram[:-1], 1.0) * lower(gram[1:])

  backoff = {}
  for n in range(2, order + 1):
    by_context = collections.defaultdict(list)
    for gram, c in counts[n - 1].items():
      by_context[gram[:-1]].append((gram, c))
    for ctx, grams in by_context.items():
      ctx_total = sum(c for _, c in grams)
      seen = 0.0
      seen_lower = 0.0
      for gram, c in grams:
        p = (c - discount) / ctx_total
        probs[n - 1][gram] = p
        seen += p
        seen_lower += lower(gram[1:])
      left = 1.0 - seen
      backoff[ctx] = left / (1.0 - seen_lower) if seen_lower < 1.0 else 1.0
  return probs, backoff


def log10(p):
  return math.log10(p) if p > 0 else -99.0


def write_arpa(out, probs, backoff):
  order = len(probs)
  entries = [dict(p) for p in probs]
  entries[0][(BOS,)] = 0.0
  out.write("\\data\\\n")
  for n in range(order):
    out.write("ngram %d=%d\n" % (n + 1, len(entries[n])))
  for n in range(order):
    out.write("\n\\%d-grams:\n" % (n + 1))
    for gram in sorted(entries[n]):
      p = entries[n][gram]
      line = "%.6f\t%s" % (log10(p), " ".join(gram))
      if n + 1 < order and gram in backoff:
        line += "\t%.6f" % math.log10(backoff[gram])
      out.write(line + "\n")
  out.write("\n\\end\\\n")


def main():
  parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
  parser.add_argument("input", nargs="?", default="-")
  parser.add_argument("--order", type=int, default=3)
  parser.add_argument("--discount", type=float, default=0.5)
  parser.add_argument("--unk-mass", type=float, default=0.01)
  parser.add_argument("--exclude", default="",
                      help="comma-separated words kept out of the vocabulary")
  args = parser.parse_args()

  exclude = {w for w in args.exclude.split(",") if w}
  stream = sys.stdin if args.input == "-" else open(args.input)
  corpus = list(sentences(stream, exclude))
  corpus += [s.split() for s in EXTRA]
  probs, backoff = train(corpus, args.order, args.discount, args.unk_mass)
  write_arpa(sys.stdout, probs, backoff)


if __name__ == "__main__":
  main()
