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

#include "biasdec/context.h"

#include <fstream>

#include "biasdec/error.h"
#include "biasdec/text.h"

namespace biasdec {

namespace {

bool IsWordByte(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '\'' ||
         static_cast<unsigned char>(c) >= 0x80;
}

std::vector<std::string> ReadLines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace

CaptionSet CaptionSet::FromLines(std::span<const std::string> lines) {
  CaptionSet set;
  for (const std::string& line : lines) {
    std::string cleaned = ToLower(line);
    for (char& c : cleaned) {
      if (!IsWordByte(c)) c = ' ';
    }
    auto words = SplitWords(cleaned);
    if (!words.empty()) set.captions.push_back(std::move(words));
  }
  return set;
}

CaptionSet LoadCaptions(const std::filesystem::path& path) {
  auto lines = ReadLines(path);
  return CaptionSet::FromLines(lines);
}

const StopwordSet& DefaultStopwords() {
  static const StopwordSet kWords = {
      "a",     "an",    "the",   "on",    "in",    "of",    "to",
      "at",    "by",    "for",   "with",  "from",  "and",   "or",
      "is",    "are",   "was",   "be",    "it",    "its",   "this",
      "that",  "there", "these", "those", "has",   "have",  "near",
      "next",  "behind", "front", "top",  "under", "over",  "inside",
      "side",  "up",    "down",  "me",    "my",    "you",   "your",
      "i",     "we",    "he",    "she",   "they",  "some",  "into",
      "onto"};
  return kWords;
}

StopwordSet LoadStopwords(const std::filesystem::path& path) {
  StopwordSet set;
  for (const std::string& line : ReadLines(path)) {
    std::string w = ToLower(Trim(line));
    if (!w.empty() && w.front() != '#') set.insert(std::move(w));
  }
  return set;
}

BiasVocabulary ExtractBiasWords(const CaptionSet& captions,
                                const StopwordSet& stopwords) {
  BiasVocabulary vocab;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < captions.captions.size(); ++i) {
    for (const std::string& raw : captions.captions[i]) {
      std::string w = ToLower(raw);
      if (w.size() < 2 || stopwords.count(w) || !seen.insert(w).second) continue;
      vocab.words.push_back(std::move(w));
      vocab.provenance.push_back(i);
    }
  }
  return vocab;
}

BiasVocabulary AntiContext(const BiasVocabulary& vocab,
                           std::string_view reference) {
  std::unordered_set<std::string> spoken;
  for (std::string& w : SplitWords(ToLower(reference))) spoken.insert(std::move(w));
  BiasVocabulary out;
  for (std::size_t i = 0; i < vocab.words.size(); ++i) {
    if (spoken.count(ToLower(vocab.words[i]))) continue;
    out.words.push_back(vocab.words[i]);
    if (i < vocab.provenance.size()) out.provenance.push_back(vocab.provenance[i]);
  }
  return out;
}

BiasVocabulary VocabularyFromWords(std::span<const std::string> words) {
  BiasVocabulary vocab;
  std::unordered_set<std::string> seen;
  for (const std::string& raw : words) {
    std::string w = ToLower(Trim(raw));
    if (w.empty() || !seen.insert(w).second) continue;
    vocab.words.push_back(std::move(w));
  }
  return vocab;
}

}  // namespace biasdec
