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

#ifndef BIASDEC_NGRAM_LM_H_
#define BIASDEC_NGRAM_LM_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace biasdec {

using WordId = std::uint32_t;

// Word history of a hypothesis, oldest first, at most order - 1 ids.
struct LmState {
  std::vector<WordId> history;
  friend bool operator==(const LmState&, const LmState&) = default;
};

// Backoff n-gram model read from ARPA text. Probabilities and backoff weights
// are stored as in the file (log10) and served in natural log. Words are
// case-folded to lowercase on load and on every query.
class NGramModel {
 public:
  static constexpr std::string_view kUnk = "<unk>";
  static constexpr std::string_view kBos = "<s>";
  static constexpr std::string_view kEos = "</s>";
  // log10 probability given to <unk> when the file does not list it.
  static constexpr double kMissingUnkLog10 = -100.0;

  // `source` only labels diagnostics.
  static NGramModel FromArpaText(std::string_view text,
                                 std::string_view source = "<memory>");

  int order() const { return order_; }
  std::size_t ngram_count(int n) const { return tables_.at(n - 1).size(); }

  // Id of the case-folded word, or unk_id() when it has no unigram entry.
  WordId Index(std::string_view word) const;
  WordId unk_id() const { return unk_id_; }
  const std::string& word(WordId id) const { return words_.at(id); }
  std::size_t vocab_size() const { return words_.size(); }

  // ln P(word | state) with Katz backoff.
  double CondLogProb(WordId word, const LmState& state) const;
  double CondLogProb(std::string_view word, const LmState& state) const {
    return CondLogProb(Index(word), state);
  }
  // ln P(word), the <unk> entry for unknown words.
  double UnigramLogProb(std::string_view word) const;
  // True iff the word has its own unigram entry; <unk> itself is excluded.
  bool InVocab(std::string_view word) const;

  LmState NullState() const { return {}; }
  LmState BeginSentenceState() const;
  LmState Extend(const LmState& state, WordId word) const;
  // ln P(</s> | state); 0 if the model has no </s> entry.
  double EndSentenceLogProb(const LmState& state) const;

  // Re-serializes to ARPA. Parsing the output reproduces every score exactly.
  void WriteArpa(std::ostream& out) const;

 private:
  struct Entry {
    double log10_prob = 0.0;
    double log10_backoff = 0.0;
    double prob = 0.0;     // ln
    double backoff = 0.0;  // ln
  };
  struct KeyHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  using Table =
      std::unordered_map<std::string, Entry, KeyHash, std::equal_to<>>;

  NGramModel() = default;
  static std::string PackKey(const WordId* ids, std::size_t n);
  const Entry* Find(const WordId* ids, std::size_t n) const;

  int order_ = 0;
  std::vector<std::string> words_;
  std::unordered_map<std::string, WordId, KeyHash, std::equal_to<>> ids_;
  WordId unk_id_ = 0;
  std::vector<Table> tables_;
  // Keys per order in file order, for WriteArpa.
  std::vector<std::vector<std::string>> key_order_;
};

// Reads plain or gzip-compressed ARPA.
NGramModel LoadArpa(const std::filesystem::path& path);

}  // namespace biasdec

#endif  // BIASDEC_NGRAM_LM_H_
