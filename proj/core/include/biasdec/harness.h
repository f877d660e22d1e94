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

#ifndef BIASDEC_HARNESS_H_
#define BIASDEC_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "biasdec/alphabet.h"
#include "biasdec/decode_config.h"
#include "biasdec/logit_matrix.h"
#include "biasdec/metrics.h"
#include "biasdec/ngram_lm.h"

namespace biasdec {

std::string_view LibraryVersion();

// A word and the misspelling the channel pushes it towards.
struct ConfusionPair {
  std::string target;
  std::string confusion;
};

struct Utterance {
  std::string reference;
  std::vector<std::string> bias_words;
};

struct CorpusSpec {
  std::vector<Utterance> utterances;
  // Probability that a word is corrupted, and for unpaired words the
  // per-character corruption probability.
  double noise = 0.0;
  std::vector<ConfusionPair> confusion_pairs;
  std::uint64_t seed = 0;
  int frames_per_char = 2;
  // A corrupted frame gives 0.5 + margin to the wrong symbol and
  // 0.5 - margin to the right one.
  double margin = 0.2;
  // Probability mass spread evenly over every symbol of every frame.
  double floor = 0.002;
};

std::vector<ConfusionPair> DefaultConfusionPairs();
std::vector<ConfusionPair> LoadConfusionPairs(const std::filesystem::path& path);

// Corpus file: "reference<TAB>word,word,..." per line.
std::vector<Utterance> LoadCorpus(const std::filesystem::path& path);
void WriteCorpus(std::ostream& out, std::span<const Utterance> utterances);

// Robot-instruction corpus: each reference comes with a scene word list
// holding most of its content words plus unrelated scene objects.
std::vector<Utterance> GenerateInstructionCorpus(std::size_t count,
                                                 std::uint64_t seed);

// Independent per-utterance stream derived from the corpus seed, so serial
// and parallel runs see the same noise.
std::uint64_t UtteranceSeed(std::uint64_t corpus_seed, std::size_t index);

// Renders `reference` as a posterior matrix: per character frames_per_char-1
// symbol frames then one blank frame, with corrupted positions split between
// the true and the confusable symbol. Deterministic in `seed`. Throws
// Error(kSymbolOutOfAlphabet) for characters the alphabet lacks.
LogitMatrix SynthesizeLogits(std::string_view reference, const CorpusSpec& spec,
                             const Alphabet& alphabet, std::uint64_t seed);

// A labelled decoder configuration taking part in an experiment.
struct ModeRun {
  std::string label;
  DecodeConfig config;
};

// Labels: greedy, base, base_lm, wb, wb_ctx, full (tuned presets) and the
// ablations full_c1 (C = 1) and full_sigma0 (sigma = 0).
std::optional<ModeRun> StandardRun(std::string_view label);

struct ModeOutcome {
  std::string label;
  DecodeConfig config;
  EvalReport report;
  std::vector<std::string> hypotheses;
  std::vector<std::uint64_t> candidates;
  std::vector<double> wall_ms;

  double MeanWallMs() const;
};

struct ExperimentResult {
  bool anti = false;
  std::vector<ModeOutcome> modes;
  std::vector<std::size_t> bias_sizes;

  const ModeOutcome* Find(std::string_view label) const;
  double MeanBiasSize() const;
};

// Decodes every utterance with every run. With `anti`, words spoken in the
// reference are removed from its bias list first. WERR is reported against
// the run labelled "base" when present. `jobs` > 1 decodes utterances on
// worker threads; results do not depend on it.
ExperimentResult RunExperiment(const CorpusSpec& spec, const Alphabet& alphabet,
                               const NGramModel& lm,
                               std::span<const ModeRun> runs, bool anti,
                               int jobs = 1);

struct ParamRange {
  double lo = 0.0;
  double hi = 0.0;
};

struct SearchBounds {
  ParamRange cumulative_mass{0.96, 0.9999};
  ParamRange unigram_scale{0.005, 2.9};
  ParamRange oov_penalty{0.1, 14.0};
  ParamRange bias_boost{0.1, 14.0};
  ParamRange lm_weight{0.005, 2.9};
  ParamRange word_bonus{0.005, 3.9};
  ParamRange lookahead_scale{0.001, 14.0};
  ParamRange swap_percent{1, 35};  // sampled as an integer
};

struct SearchResult {
  DecodeConfig best;
  double best_wer = 0.0;
  std::vector<std::pair<DecodeConfig, double>> trials;
};

// Uniform random search over `bounds` minimising corpus WER of `base`
// (whose mode and N are kept). Deterministic in `seed`.
SearchResult RandomSearch(const CorpusSpec& spec, const Alphabet& alphabet,
                          const NGramModel& lm, const SearchBounds& bounds,
                          int trials, std::uint64_t seed,
                          const DecodeConfig& base = {}, int jobs = 1);

// Config, seed, corpus parameters and library version of a run.
void WriteRunManifest(std::ostream& out, const CorpusSpec& spec,
                      std::span<const ModeRun> runs, bool anti);

}  // namespace biasdec

#endif  // BIASDEC_HARNESS_H_
