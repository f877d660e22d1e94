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

#ifndef BIASDEC_METRICS_H_
#define BIASDEC_METRICS_H_

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace biasdec {

struct EditCounts {
  long substitutions = 0;
  long insertions = 0;
  long deletions = 0;
  long reference_words = 0;

  long errors() const { return substitutions + insertions + deletions; }
  EditCounts& operator+=(const EditCounts& o) {
    substitutions += o.substitutions;
    insertions += o.insertions;
    deletions += o.deletions;
    reference_words += o.reference_words;
    return *this;
  }
  friend bool operator==(const EditCounts&, const EditCounts&) = default;
};

// errors / reference words; with an empty reference the insertion count.
double ErrorRate(const EditCounts& counts);

// Word-level Levenshtein alignment with unit costs.
EditCounts AlignWords(std::span<const std::string> reference,
                      std::span<const std::string> hypothesis);

struct WerResult {
  double wer = 0.0;
  EditCounts counts;
};

// Both sides are case-folded and whitespace-normalized before alignment.
WerResult WordErrorRate(std::string_view reference, std::string_view hypothesis);

// 100 * (base - model) / base. Throws Error(kBaseZero) when base <= 0.
double WerReduction(double base_wer, double model_wer);

// Percentage of exact (normalized) matches. Throws Error(kEmptyCorpus).
double TranscriptionAccuracy(
    std::span<const std::pair<std::string, std::string>> pairs);

struct EvalReport {
  double wer = 0.0;             // ratio
  std::optional<double> werr;   // percent, relative to a base system
  double ta = 0.0;              // percent
  EditCounts counts;
  std::size_t utterances = 0;
};

// Corpus-level WER (pooled counts) and TA over (reference, hypothesis) pairs.
EvalReport Evaluate(std::span<const std::pair<std::string, std::string>> pairs,
                    std::optional<double> base_wer = std::nullopt);

// "model.key=value" lines. WER, WERR and TA are printed as percentages.
void WriteReportText(std::ostream& out, std::string_view model,
                     const EvalReport& report);

// Header "model,wer,werr,ta", one row per model, percentages with two
// decimals; an undefined WERR is left empty.
void WriteReportCsv(
    std::ostream& out,
    std::span<const std::pair<std::string, EvalReport>> rows);

}  // namespace biasdec

#endif  // BIASDEC_METRICS_H_
