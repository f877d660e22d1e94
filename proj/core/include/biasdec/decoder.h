/* Copyright 2026 The biasdec Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef BIASDEC_DECODER_H_
#define BIASDEC_DECODER_H_

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "biasdec/alphabet.h"
#include "biasdec/bias_trie.h"
#include "biasdec/decode_config.h"
#include "biasdec/logit_matrix.h"
#include "biasdec/ngram_lm.h"

namespace biasdec {

inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

// ln(exp(a) + exp(b)) without overflow; either side may be kLogZero.
double LogAddExp(double a, double b);

// One prefix in the beam. Everything except the two CTC masses is a function
// of `prefix` alone, so merging two paths that reach the same prefix only
// ever combines masses.
struct Hypothesis {
  std::string prefix;          // emitted text, delimiter rendered as ' '
  int last_label = -1;         // last non-blank label, -1 while empty
  double log_p_blank = 0.0;    // ln mass of paths ending in blank
  double log_p_nonblank = kLogZero;
  double adjust = 0.0;         // sum of word-boundary rescoring deltas
  double lm_logprob = 0.0;     // sum of ln P_lm over completed words
  LmState lm_state;
  TrieCursor cursor;           // match state of partial_word
  int words_done = 0;
  std::string partial_word;    // characters since the last delimiter
  std::string last_word;       // most recently completed word

  double CtcLogProb() const { return LogAddExp(log_p_blank, log_p_nonblank); }
};

// CTC mass + alpha * LM + beta * ln(words + 1) + boundary adjustments.
double Score(const Hypothesis& h, double alpha, double beta);

// Indices of the most probable symbols, most probable first, stopping as soon
// as their mass reaches `threshold`. threshold == 1 keeps every symbol with
// nonzero probability. Zero-probability symbols are never returned.
std::vector<int> SampleVocab(std::span<const float> dist, double threshold);

// Closes h.partial_word as a completed word: folds its LM probability into
// the hypothesis, applies the mode's boundary adjustment and resets the trie
// cursor. Requires a nonempty partial word. `lm` may be null (no LM term;
// every word counts as out of vocabulary).
//
// Adjustment per mode for word w:
//   full, wb_ctx   w in LM and trie:   adjust -= lambda * ln P_uni(w)
//                  w in neither:       adjust -= delta (0 for wb_ctx)
//                  w in trie only:     adjust += gamma
//                  w in LM only:       unchanged
//   wb             w in trie:          adjust += gamma
//   base, base_lm  unchanged
Hypothesis RescoreBoundary(Hypothesis h, const DecodeConfig& cfg,
                           const NGramModel* lm, const BiasTrie& trie);

// Ranking score used to pick beam-overflow candidates worth keeping:
// score + sigma * ln(tn / (1 + nl)). -inf when nothing has matched yet
// (tn == 0) or the cursor is dead.
double RescoringLikelihood(double score, int traversed, int to_leaf,
                           double sigma);
inline double RescoringLikelihood(double score, const TrieStats& stats,
                                  double sigma) {
  return RescoringLikelihood(score, stats.traversed, stats.to_leaf, sigma);
}

// round(K * N / 100).
int SwapCount(int beam_width, double swap_percent);

struct PruneCandidate {
  double score = 0.0;
  TrieStats stats;
};

// `ranked` is sorted best-first by score. Returns the positions of the
// survivors: the top N - k by score in order, followed by up to k overflow
// candidates (rank > N) chosen by descending RescoringLikelihood. Only
// candidates with a finite likelihood are swapped in; unused swap slots stay
// with the forward set. Scores are never modified.
std::vector<std::size_t> BiasAwarePrune(std::span<const PruneCandidate> ranked,
                                        int beam_width, double swap_percent,
                                        double sigma);

struct DecodeStats {
  std::uint64_t candidates = 0;        // (hypothesis, symbol) extensions
  std::uint64_t boundary_rescores = 0;
  int frames = 0;
  double wall_ms = 0.0;
};

struct DecodeResult {
  std::vector<std::string> transcripts;  // best first, whitespace-normalized
  std::vector<double> scores;            // non-increasing
  std::vector<Hypothesis> hypotheses;    // parallel to transcripts
  DecodeStats stats;
};

// Per-frame argmax, collapse repeats, drop blanks.
std::string DecodeGreedy(const LogitMatrix& logits, const Alphabet& alphabet);

// CTC prefix beam search with LM fusion, word-boundary biasing and
// bias-aware pruning as selected by cfg.mode. The config is resolved for its
// mode first. Throws Error(kDimensionMismatch) when the matrix width differs
// from the alphabet, Error(kInvalidConfig) when an LM-dependent mode gets no
// LM. Pure: safe to call concurrently with shared inputs.
DecodeResult Decode(const LogitMatrix& logits, const Alphabet& alphabet,
                    const NGramModel* lm, const BiasTrie& trie,
                    const DecodeConfig& cfg);

}  // namespace biasdec

#endif  // BIASDEC_DECODER_H_
