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

#include "biasdec/alphabet.h"

#include <fstream>

#include "biasdec/error.h"
#include "biasdec/text.h"

namespace biasdec {

namespace {
constexpr char32_t kBlankCodepoint = 0;
}  // namespace

Alphabet Alphabet::FromTokens(const std::vector<std::string>& tokens) {
  Alphabet a;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    const int index = static_cast<int>(i);
    std::string symbol;
    char32_t cp = 0;
    if (tok == kBlankToken) {
      if (a.blank_index_ >= 0) {
        throw Error(ErrorCode::kDuplicateSymbol,
                    "\"<blank>\" listed twice (index " + std::to_string(i) +
                        ")");
      }
      a.blank_index_ = index;
      symbol = std::string(kBlankToken);
      cp = kBlankCodepoint;
    } else if (tok == kSpaceToken || tok == " ") {
      if (a.delimiter_index_ >= 0) {
        throw Error(ErrorCode::kDuplicateSymbol,
                    "word delimiter listed twice (index " +
                        std::to_string(i) + ")");
      }
      a.delimiter_index_ = index;
      symbol = " ";
      cp = U' ';
    } else {
      std::u32string cps = DecodeUtf8(tok);
      if (cps.size() != 1 || cps[0] < 0x21 || cps[0] == 0x7F ||
          cps[0] == U'\uFFFD') {
        throw Error(ErrorCode::kBadSymbol,
                    "token \"" + tok + "\" at index " + std::to_string(i) +
                        " is not a single printable character");
      }
      symbol = tok;
      cp = cps[0];
    }
    if (a.index_.count(symbol)) {
      throw Error(ErrorCode::kDuplicateSymbol,
                  "symbol \"" + tok + "\" listed twice (index " +
                      std::to_string(i) + ")");
    }
    a.index_.emplace(symbol, index);
    a.cp_index_.emplace(cp, index);
    a.symbols_.push_back(std::move(symbol));
    a.codepoints_.push_back(cp);
  }
  if (a.blank_index_ < 0) {
    throw Error(ErrorCode::kMissingReserved, "no \"<blank>\" entry");
  }
  if (a.delimiter_index_ < 0) {
    throw Error(ErrorCode::kMissingReserved, "no \"<space>\" entry");
  }
  return a;
}

Alphabet Alphabet::EnglishGraphemes() {
  std::vector<std::string> tokens = {std::string(kBlankToken),
                                     std::string(kSpaceToken)};
  for (char c = 'a'; c <= 'z'; ++c) tokens.emplace_back(1, c);
  return FromTokens(tokens);
}

std::optional<int> Alphabet::IndexOf(std::string_view symbol) const {
  auto it = index_.find(std::string(symbol));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Alphabet::IndexOf(char32_t cp) const {
  if (cp == kBlankCodepoint) return std::nullopt;
  auto it = cp_index_.find(cp);
  if (it == cp_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> Alphabet::Tokens() const {
  std::vector<std::string> tokens = symbols_;
  tokens[delimiter_index_] = std::string(kSpaceToken);
  return tokens;
}

Alphabet LoadAlphabet(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIoFailure,
                "cannot open vocabulary file " + path.string());
  }
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    tokens.push_back(line);
  }
  // A trailing empty line is an artifact of the final newline, not a token.
  while (!tokens.empty() && tokens.back().empty()) tokens.pop_back();
  return Alphabet::FromTokens(tokens);
}

void SaveAlphabet(const Alphabet& alphabet, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
  }
  for (const std::string& tok : alphabet.Tokens()) out << tok << '\n';
  if (!out) throw Error(ErrorCode::kIoFailure, "write failed: " + path.string());
}

}  // namespace biasdec
