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

#include "biasdec/metrics.h"

#include <algorithm>
#include <cstdio>

#include "biasdec/error.h"
#include "biasdec/text.h"

namespace biasdec {

double ErrorRate(const EditCounts& c) {
  if (c.reference_words == 0) return static_cast<double>(c.insertions);
  return static_cast<double>(c.errors()) / static_cast<double>(c.reference_words);
}

EditCounts AlignWords(std::span<const std::string> ref,
                      std::span<const std::string> hyp) {
  const std::size_t n = ref.size(), m = hyp.size();
  // cost[i][j]: distance between ref[0..i) and hyp[0..j).
  std::vector<std::vector<long>> cost(n + 1, std::vector<long>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) cost[i][0] = static_cast<long>(i);
  for (std::size_t j = 0; j <= m; ++j) cost[0][j] = static_cast<long>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      long diag = cost[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      cost[i][j] = std::min({diag, cost[i - 1][j] + 1, cost[i][j - 1] + 1});
    }
  }
  EditCounts counts;
  counts.reference_words = static_cast<long>(n);
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 &&
        cost[i][j] == cost[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1)) {
      if (ref[i - 1] != hyp[j - 1]) ++counts.substitutions;
      --i;
      --j;
    } else if (i > 0 && cost[i][j] == cost[i - 1][j] + 1) {
      ++counts.deletions;
      --i;
    } else {
      ++counts.insertions;
      --j;
    }
  }
  return counts;
}

WerResult WordErrorRate(std::string_view reference, std::string_view hypothesis) {
  auto ref = SplitWords(ToLower(reference));
  auto hyp = SplitWords(ToLower(hypothesis));
  WerResult r;
  r.counts = AlignWords(ref, hyp);
  r.wer = ErrorRate(r.counts);
  return r;
}

double WerReduction(double base_wer, double model_wer) {
  if (!(base_wer > 0.0)) {
    throw Error(ErrorCode::kBaseZero, "base WER must be positive");
  }
  return 100.0 * (base_wer - model_wer) / base_wer;
}

double TranscriptionAccuracy(
    std::span<const std::pair<std::string, std::string>> pairs) {
  if (pairs.empty()) throw Error(ErrorCode::kEmptyCorpus, "no utterances");
  std::size_t exact = 0;
  for (const auto& [ref, hyp] : pairs) {
    if (NormalizeTranscript(ref) == NormalizeTranscript(hyp)) ++exact;
  }
  return 100.0 * static_cast<double>(exact) / static_cast<double>(pairs.size());
}

EvalReport Evaluate(std::span<const std::pair<std::string, std::string>> pairs,
                    std::optional<double> base_wer) {
  EvalReport report;
  for (const auto& [ref, hyp] : pairs) {
    report.counts += WordErrorRate(ref, hyp).counts;
  }
  report.wer = ErrorRate(report.counts);
  report.ta = TranscriptionAccuracy(pairs);
  report.utterances = pairs.size();
  if (base_wer && *base_wer > 0.0) report.werr = WerReduction(*base_wer, report.wer);
  return report;
}

namespace {
std::string Fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}
}  // namespace

void WriteReportText(std::ostream& out, std::string_view model,
                     const EvalReport& r) {
  out << model << ".wer=" << Fixed2(100.0 * r.wer) << '\n'
      << model << ".werr=" << (r.werr ? Fixed2(*r.werr) : std::string("n/a")) << '\n'
      << model << ".ta=" << Fixed2(r.ta) << '\n'
      << model << ".substitutions=" << r.counts.substitutions << '\n'
      << model << ".insertions=" << r.counts.insertions << '\n'
      << model << ".deletions=" << r.counts.deletions << '\n'
      << model << ".reference_words=" << r.counts.reference_words << '\n'
      << model << ".utterances=" << r.utterances << '\n';
}

void WriteReportCsv(std::ostream& out,
                    std::span<const std::pair<std::string, EvalReport>> rows) {
  out << "model,wer,werr,ta\n";
  for (const auto& [model, r] : rows) {
    out << model << ',' << Fixed2(100.0 * r.wer) << ','
        << (r.werr ? Fixed2(*r.werr) : std::string()) << ',' << Fixed2(r.ta)
        << '\n';
  }
}

}  // namespace biasdec
