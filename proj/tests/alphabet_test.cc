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

#include <gtest/gtest.h>

#include "biasdec/error.h"
#include "oracles.h"

namespace biasdec {
namespace {

using testing::ProjectData;
using testing::ScratchDir;
using testing::ThrownCode;

void WriteLines(const std::filesystem::path& path,
                const std::vector<std::string>& lines) {
  std::ofstream out(path);
  for (const auto& l : lines) out << l << '\n';
}

TEST(AlphabetTest, ShippedGraphemeFile) {
  Alphabet a = LoadAlphabet(ProjectData("chars.txt"));
  EXPECT_EQ(a.size(), 28);
  EXPECT_EQ(a.blank_index(), 0);
  EXPECT_EQ(a.delimiter_index(), 1);
  EXPECT_EQ(a.symbol(1), " ");
  EXPECT_EQ(a.symbol(2), "a");
  EXPECT_EQ(a.symbol(27), "z");
  EXPECT_EQ(a, Alphabet::EnglishGraphemes());
}

TEST(AlphabetTest, RawSpaceLineIsTheDelimiter) {
  auto dir = ScratchDir("alphabet");
  WriteLines(dir / "v.txt", {"<blank>", " ", "a", "b"});
  Alphabet a = LoadAlphabet(dir / "v.txt");
  EXPECT_EQ(a.delimiter_index(), 1);
  EXPECT_EQ(a.size(), 4);
}

TEST(AlphabetTest, CrLfLinesAccepted) {
  auto dir = ScratchDir("alphabet");
  {
    std::ofstream out(dir / "v.txt", std::ios::binary);
    out << "<blank>\r\n<space>\r\na\r\n";
  }
  EXPECT_EQ(LoadAlphabet(dir / "v.txt").size(), 3);
}

TEST(AlphabetTest, MissingBlank) {
  EXPECT_EQ(ThrownCode([] { Alphabet::FromTokens({"<space>", "a"}); }),
            ErrorCode::kMissingReserved);
}

TEST(AlphabetTest, MissingSpace) {
  EXPECT_EQ(ThrownCode([] { Alphabet::FromTokens({"<blank>", "a"}); }),
            ErrorCode::kMissingReserved);
}

TEST(AlphabetTest, DuplicateSymbol) {
  EXPECT_EQ(ThrownCode([] { Alphabet::FromTokens({"<blank>", "<space>", "a", "a"}); }),
            ErrorCode::kDuplicateSymbol);
  EXPECT_EQ(ThrownCode([] { Alphabet::FromTokens({"<blank>", "<space>", " "}); }),
            ErrorCode::kDuplicateSymbol);
}

TEST(AlphabetTest, MultiCharacterSymbolRejected) {
  EXPECT_EQ(ThrownCode([] { Alphabet::FromTokens({"<blank>", "<space>", "ab"}); }),
            ErrorCode::kBadSymbol);
  EXPECT_EQ(ThrownCode([] { Alphabet::FromTokens({"<blank>", "<space>", ""}); }),
            ErrorCode::kBadSymbol);
}

TEST(AlphabetTest, UnicodeSymbol) {
  Alphabet a = Alphabet::FromTokens({"<blank>", "<space>", "\xc3\xa9"});
  EXPECT_EQ(a.codepoint(2), U'é');
  EXPECT_EQ(a.IndexOf(U'é'), 2);
}

TEST(AlphabetTest, IndexLookupsComposeToIdentity) {
  Alphabet a = Alphabet::EnglishGraphemes();
  for (int i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.IndexOf(a.symbol(i)), i);
    if (i != a.blank_index()) {
      EXPECT_EQ(a.IndexOf(a.codepoint(i)), i);
    }
  }
  EXPECT_FALSE(a.IndexOf("A").has_value());
}

TEST(AlphabetTest, SaveLoadRoundTrip) {
  auto dir = ScratchDir("alphabet");
  Alphabet a = Alphabet::FromTokens({"<space>", "x", "<blank>", "y"});
  SaveAlphabet(a, dir / "v.txt");
  EXPECT_EQ(LoadAlphabet(dir / "v.txt"), a);
}

TEST(AlphabetTest, MissingFile) {
  EXPECT_EQ(ThrownCode([] { LoadAlphabet("/nonexistent/chars.txt"); }),
            ErrorCode::kIoFailure);
}

}  // namespace
}  // namespace biasdec
