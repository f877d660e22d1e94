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

#ifndef BIASDEC_CONTEXT_H_
#define BIASDEC_CONTEXT_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace biasdec {

// Scene descriptions, one word sequence per caption: lowercased, punctuation
// replaced by spaces, empty captions dropped.
struct CaptionSet {
  std::vector<std::vector<std::string>> captions;

  static CaptionSet FromLines(std::span<const std::string> lines);
};

CaptionSet LoadCaptions(const std::filesystem::path& path);

struct BiasVocabulary {
  std::vector<std::string> words;        // distinct, lowercase, nonempty
  std::vector<std::size_t> provenance;   // caption index of each word

  friend bool operator==(const BiasVocabulary&, const BiasVocabulary&) = default;
};

using StopwordSet = std::unordered_set<std::string>;

// The 50-word list shipped as data/stopwords.txt.
const StopwordSet& DefaultStopwords();
StopwordSet LoadStopwords(const std::filesystem::path& path);

// Keeps caption tokens that are not stopwords and have at least two
// characters, first occurrence wins.
BiasVocabulary ExtractBiasWords(const CaptionSet& captions,
                                const StopwordSet& stopwords);

// Drops every word that occurs (case-folded, exact token) in `reference`.
BiasVocabulary AntiContext(const BiasVocabulary& vocab,
                           std::string_view reference);

// Words-only vocabulary with no provenance, e.g. from a --bias list.
BiasVocabulary VocabularyFromWords(std::span<const std::string> words);

}  // namespace biasdec

#endif  // BIASDEC_CONTEXT_H_
