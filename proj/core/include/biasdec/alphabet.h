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

#ifndef BIASDEC_ALPHABET_H_
#define BIASDEC_ALPHABET_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace biasdec {

// Indexed character inventory of the acoustic model. Index i is column i of
// every LogitMatrix row. Exactly one entry is the CTC blank and exactly one is
// the word delimiter (a single space).
class Alphabet {
 public:
  static constexpr std::string_view kBlankToken = "<blank>";
  static constexpr std::string_view kSpaceToken = "<space>";

  // `tokens` use the vocabulary-file spelling: "<blank>" and "<space>" are the
  // reserved entries, everything else must be one printable character.
  static Alphabet FromTokens(const std::vector<std::string>& tokens);

  // "<blank>", "<space>", a..z. Convenience for synthetic experiments; real
  // models supply their own vocabulary file.
  static Alphabet EnglishGraphemes();

  int size() const { return static_cast<int>(symbols_.size()); }
  int blank_index() const { return blank_index_; }
  int delimiter_index() const { return delimiter_index_; }

  // Text form of a symbol. The delimiter maps to " "; the blank maps to
  // "<blank>" (it never appears in a transcript).
  const std::string& symbol(int index) const { return symbols_.at(index); }
  char32_t codepoint(int index) const { return codepoints_.at(index); }

  std::optional<int> IndexOf(std::string_view symbol) const;
  std::optional<int> IndexOf(char32_t cp) const;

  // Vocabulary-file spelling of each index, in order.
  std::vector<std::string> Tokens() const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.symbols_ == b.symbols_ && a.blank_index_ == b.blank_index_ &&
           a.delimiter_index_ == b.delimiter_index_;
  }

 private:
  Alphabet() = default;

  std::vector<std::string> symbols_;
  std::vector<char32_t> codepoints_;
  std::unordered_map<std::string, int> index_;
  std::unordered_map<char32_t, int> cp_index_;
  int blank_index_ = -1;
  int delimiter_index_ = -1;
};

Alphabet LoadAlphabet(const std::filesystem::path& path);
void SaveAlphabet(const Alphabet& alphabet, const std::filesystem::path& path);

}  // namespace biasdec

#endif  // BIASDEC_ALPHABET_H_
