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

#include "biasdec/decoder.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "biasdec/error.h"
#include "biasdec/text.h"

namespace biasdec {

double LogAddExp(double a, double b) {
  if (a == kLogZero) return b;
  if (b == kLogZero) return a;
  return a > b ? a + std::log1p(std::exp(b - a))
               : b + std::log1p(std::exp(a - b));
}

double Score(const Hypothesis& h, double alpha, double beta) {
  return h.CtcLogProb() + alpha * h.lm_logprob +
         beta * std::log(static_cast<double>(h.words_done) + 1.0) + h.adjust;
}

std::vector<int> SampleVocab(std::span<const float> dist, double threshold) {
  std::vector<int> order;
  order.reserve(dist.size());
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] > 0.0f) order.push_back(static_cast<int>(i));
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return dist[a] > dist[b]; });
  if (threshold >= 1.0) return order;
  double mass = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    mass += dist[order[i]];
    if (mass >= threshold) {
      order.resize(i + 1);
      break;
    }
  }
  return order;
}

Hypothesis RescoreBoundary(Hypothesis h, const DecodeConfig& config,
                           const NGramModel* lm, const BiasTrie& trie) {
  const DecodeConfig cfg = config.Resolved();
  std::string word = std::move(h.partial_word);
  h.partial_word.clear();

  bool in_vocab = false;
  if (lm != nullptr) {
    WordId id = lm->Index(word);
    h.lm_logprob += lm->CondLogProb(id, h.lm_state);
    h.lm_state = lm->Extend(h.lm_state, id);
    in_vocab = id != lm->unk_id();
  }
  const bool in_trie = trie.Contains(word);

  switch (cfg.mode) {
    case DecodeMode::kWb:
      if (in_trie) h.adjust += cfg.bias_boost;
      break;
    case DecodeMode::kWbCtx:
    case DecodeMode::kFull:
      if (in_vocab && in_trie) {
        h.adjust -= cfg.unigram_scale * lm->UnigramLogProb(word);
      } else if (!in_vocab && !in_trie) {
        h.adjust -= cfg.oov_penalty;
      } else if (!in_vocab && in_trie) {
        h.adjust += cfg.bias_boost;
      }
      break;
    default:
      break;
  }

  h.last_word = std::move(word);
  ++h.words_done;
  h.cursor = trie.Root();
  return h;
}

double RescoringLikelihood(double score, int traversed, int to_leaf,
                           double sigma) {
  if (traversed <= 0 || to_leaf == TrieStats::kUnreachable) return kLogZero;
  return score + sigma * std::log(static_cast<double>(traversed) /
                                  (1.0 + static_cast<double>(to_leaf)));
}

int SwapCount(int beam_width, double swap_percent) {
  return static_cast<int>(std::lround(swap_percent * beam_width / 100.0));
}

std::vector<std::size_t> BiasAwarePrune(std::span<const PruneCandidate> ranked,
                                        int beam_width, double swap_percent,
                                        double sigma) {
  const std::size_t n = ranked.size();
  const std::size_t width = static_cast<std::size_t>(std::max(beam_width, 0));
  const std::size_t forward = std::min(width, n);
  const std::size_t k =
      std::min(forward, static_cast<std::size_t>(
                            std::max(SwapCount(beam_width, swap_percent), 0)));

  std::vector<std::size_t> swapped;
  if (k > 0 && n > width) {
    std::vector<std::pair<double, std::size_t>> psi;
    for (std::size_t i = width; i < n; ++i) {
      double v = RescoringLikelihood(ranked[i].score, ranked[i].stats, sigma);
      if (v != kLogZero) psi.emplace_back(v, i);
    }
    const std::size_t take = std::min(k, psi.size());
    std::partial_sort(psi.begin(), psi.begin() + static_cast<std::ptrdiff_t>(take),
                      psi.end(), [](const auto& a, const auto& b) {
                        if (a.first != b.first) return a.first > b.first;
                        return a.second < b.second;
                      });
    for (std::size_t i = 0; i < take; ++i) swapped.push_back(psi[i].second);
  }

  std::vector<std::size_t> keep(forward - swapped.size());
  std::iota(keep.begin(), keep.end(), std::size_t{0});
  keep.insert(keep.end(), swapped.begin(), swapped.end());
  return keep;
}

std::string DecodeGreedy(const LogitMatrix& logits, const Alphabet& alphabet) {
  if (logits.symbols() != alphabet.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "matrix has " + std::to_string(logits.symbols()) +
                    " columns, alphabet has " +
                    std::to_string(alphabet.size()));
  }
  std::string out;
  int prev = -1;
  for (int t = 0; t < logits.frames(); ++t) {
    auto row = logits.row(t);
    int best = static_cast<int>(std::max_element(row.begin(), row.end()) -
                                row.begin());
    if (best != prev && best != alphabet.blank_index()) {
      out += alphabet.symbol(best);
    }
    prev = best;
  }
  return Join(SplitWords(out), " ");
}

namespace {

bool NeedsLm(DecodeMode mode) {
  return mode != DecodeMode::kGreedy && mode != DecodeMode::kBase;
}

DecodeResult GreedyResult(const LogitMatrix& logits, const Alphabet& alphabet) {
  DecodeResult r;
  double score = 0.0;
  for (int t = 0; t < logits.frames(); ++t) {
    auto row = logits.row(t);
    score += std::log(static_cast<double>(*std::max_element(row.begin(), row.end())));
  }
  r.transcripts.push_back(DecodeGreedy(logits, alphabet));
  r.scores.push_back(score);
  Hypothesis h;
  h.prefix = r.transcripts.back();
  r.hypotheses.push_back(std::move(h));
  r.stats.frames = logits.frames();
  return r;
}

// Score descending, then prefix ascending.
struct RankOrder {
  const std::vector<Hypothesis>* hyps;
  const std::vector<double>* scores;
  bool operator()(std::size_t a, std::size_t b) const {
    double sa = (*scores)[a], sb = (*scores)[b];
    if (sa != sb) return sa > sb;
    return (*hyps)[a].prefix < (*hyps)[b].prefix;
  }
};

}  // namespace

DecodeResult Decode(const LogitMatrix& logits, const Alphabet& alphabet,
                    const NGramModel* lm, const BiasTrie& trie,
                    const DecodeConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  config.Validate();
  const DecodeConfig cfg = config.Resolved();
  if (logits.symbols() != alphabet.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "matrix has " + std::to_string(logits.symbols()) +
                    " columns, alphabet has " +
                    std::to_string(alphabet.size()));
  }
  if (cfg.mode == DecodeMode::kGreedy) {
    DecodeResult r = GreedyResult(logits, alphabet);
    r.stats.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - started)
                          .count();
    return r;
  }
  if (lm == nullptr && NeedsLm(cfg.mode)) {
    throw Error(ErrorCode::kInvalidConfig,
                "mode " + std::string(ModeName(cfg.mode)) +
                    " requires a language model");
  }
  const NGramModel* active_lm = cfg.mode == DecodeMode::kBase ? nullptr : lm;

  DecodeResult result;
  DecodeStats& stats = result.stats;
  const int blank = alphabet.blank_index();
  const int delimiter = alphabet.delimiter_index();

  std::vector<Hypothesis> beam(1);
  if (active_lm != nullptr && cfg.sentence_markers) {
    beam[0].lm_state = active_lm->BeginSentenceState();
  }
  beam[0].cursor = trie.Root();

  std::vector<Hypothesis> next;
  std::unordered_map<std::string, std::size_t> slot;
  std::vector<double> scores;
  std::vector<std::size_t> order;
  std::vector<PruneCandidate> ranked;

  for (int t = 0; t < logits.frames(); ++t) {
    const auto row = logits.row(t);
    const std::vector<int> labels = SampleVocab(row, cfg.cumulative_mass);
    next.clear();
    slot.clear();

    // Same prefix as `h`, masses to be accumulated.
    auto same = [&](const Hypothesis& h) -> Hypothesis& {
      auto [it, fresh] = slot.try_emplace(h.prefix, next.size());
      if (fresh) {
        Hypothesis& c = next.emplace_back(h);
        c.log_p_blank = c.log_p_nonblank = kLogZero;
      }
      return next[it->second];
    };
    // `h` extended by a non-blank label.
    auto extend = [&](const Hypothesis& h, int label) -> Hypothesis& {
      const std::string& sym = alphabet.symbol(label);
      std::string key = h.prefix + sym;
      auto [it, fresh] = slot.try_emplace(key, next.size());
      if (!fresh) return next[it->second];
      Hypothesis c = h;
      c.prefix = std::move(key);
      c.last_label = label;
      c.log_p_blank = c.log_p_nonblank = kLogZero;
      if (label == delimiter) {
        if (!c.partial_word.empty()) {
          c = RescoreBoundary(std::move(c), cfg, active_lm, trie);
          ++stats.boundary_rescores;
        }
      } else {
        c.partial_word += sym;
        c.cursor = trie.Advance(c.cursor, alphabet.codepoint(label));
      }
      next.push_back(std::move(c));
      return next.back();
    };

    for (const Hypothesis& h : beam) {
      const double total = h.CtcLogProb();
      for (int label : labels) {
        ++stats.candidates;
        const double lp = std::log(static_cast<double>(row[label]));
        if (label == blank) {
          Hypothesis& c = same(h);
          c.log_p_blank = LogAddExp(c.log_p_blank, total + lp);
        } else if (label == h.last_label) {
          if (h.log_p_nonblank != kLogZero) {
            Hypothesis& c = same(h);
            c.log_p_nonblank =
                LogAddExp(c.log_p_nonblank, h.log_p_nonblank + lp);
          }
          if (h.log_p_blank != kLogZero) {
            Hypothesis& e = extend(h, label);
            e.log_p_nonblank = LogAddExp(e.log_p_nonblank, h.log_p_blank + lp);
          }
        } else {
          Hypothesis& e = extend(h, label);
          e.log_p_nonblank = LogAddExp(e.log_p_nonblank, total + lp);
        }
      }
    }
    if (next.empty()) {
      throw Error(ErrorCode::kEmptyBeam,
                  "no candidates at frame " + std::to_string(t));
    }

    scores.resize(next.size());
    for (std::size_t i = 0; i < next.size(); ++i) {
      scores[i] = Score(next[i], cfg.lm_weight, cfg.word_bonus);
    }
    order.resize(next.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), RankOrder{&next, &scores});

    ranked.resize(order.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
      ranked[r] = {scores[order[r]], trie.Stats(next[order[r]].cursor)};
    }
    std::vector<std::size_t> keep = BiasAwarePrune(
        ranked, cfg.beam_width, cfg.swap_percent, cfg.lookahead_scale);

    beam.clear();
    for (std::size_t r : keep) beam.push_back(std::move(next[order[r]]));
    ++stats.frames;
  }

  // Close the trailing word of every survivor before the final ranking.
  for (Hypothesis& h : beam) {
    if (!h.partial_word.empty()) {
      h = RescoreBoundary(std::move(h), cfg, active_lm, trie);
      ++stats.boundary_rescores;
    }
    if (active_lm != nullptr && cfg.sentence_markers) {
      h.lm_logprob += active_lm->EndSentenceLogProb(h.lm_state);
    }
  }
  scores.resize(beam.size());
  for (std::size_t i = 0; i < beam.size(); ++i) {
    scores[i] = Score(beam[i], cfg.lm_weight, cfg.word_bonus);
  }
  order.resize(beam.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), RankOrder{&beam, &scores});

  const std::size_t top =
      std::min(order.size(), static_cast<std::size_t>(cfg.beam_width));
  for (std::size_t r = 0; r < top; ++r) {
    Hypothesis& h = beam[order[r]];
    result.transcripts.push_back(Join(SplitWords(h.prefix), " "));
    result.scores.push_back(scores[order[r]]);
    result.hypotheses.push_back(std::move(h));
  }
  stats.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - started)
                      .count();
  return result;
}

}  // namespace biasdec
