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

#include "biasdec/bias_trie.h"

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "biasdec/error.h"
#include "oracles.h"

namespace biasdec {
namespace {

using testing::ThrownCode;
using Words = std::vector<std::string>;

TrieCursor Walk(const BiasTrie& t, std::string_view s) {
  return t.Advance(t.Root(), s);
}

TEST(BiasTrieTest, BookRed) {
  BiasTrie t = BiasTrie::Build(Words{"book", "red"});
  EXPECT_EQ(t.node_count(), 7u);
  EXPECT_EQ(t.word_count(), 2u);
  EXPECT_EQ(t.Words(), (Words{"book", "red"}));
}

TEST(BiasTrieTest, EmptyTrieHasOnlyDeadCursors) {
  BiasTrie t = BiasTrie::Build(Words{});
  EXPECT_FALSE(t.Root().alive());
  EXPECT_EQ(t.word_count(), 0u);
  EXPECT_EQ(t.node_count(), 0u);
  EXPECT_EQ(BiasTrie(), t);
  EXPECT_EQ(t.Stats(t.Root()), TrieStats{});
}

TEST(BiasTrieTest, PrefixWordIsTerminal) {
  BiasTrie a = BiasTrie::Build(Words{"book", "books"});
  BiasTrie b = BiasTrie::Build(Words{"books", "book"});
  EXPECT_EQ(a, b);
  TrieStats s = a.Stats(Walk(a, "book"));
  EXPECT_TRUE(s.complete);
  EXPECT_EQ(s.to_leaf, 0);
  EXPECT_EQ(s.traversed, 4);
}

TEST(BiasTrieTest, Advance) {
  BiasTrie t = BiasTrie::Build(Words{"book"});
  TrieCursor b = t.Advance(t.Root(), U'b');
  EXPECT_TRUE(b.alive());
  EXPECT_EQ(b.depth(), 1);
  TrieCursor z = t.Advance(t.Root(), U'z');
  EXPECT_FALSE(z.alive());
  EXPECT_EQ(z.depth(), 0);
  EXPECT_FALSE(t.Advance(z, U'b').alive());
  EXPECT_FALSE(t.Advance(z, U'o').alive());
}

TEST(BiasTrieTest, Stats) {
  BiasTrie t = BiasTrie::Build(Words{"book", "red"});
  EXPECT_EQ(t.Stats(Walk(t, "bo")), (TrieStats{2, 2, false}));
  EXPECT_EQ(t.Stats(Walk(t, "red")), (TrieStats{3, 0, true}));
  EXPECT_EQ(t.Stats(TrieCursor()),
            (TrieStats{0, TrieStats::kUnreachable, false}));
  EXPECT_EQ(t.Stats(t.Root()).traversed, 0);
  EXPECT_EQ(t.Stats(t.Root()).to_leaf, 3);
}

TEST(BiasTrieTest, Contains) {
  BiasTrie t = BiasTrie::Build(Words{"book", "red"});
  EXPECT_TRUE(t.Contains("book"));
  EXPECT_TRUE(t.Contains("BOOK"));
  EXPECT_FALSE(t.Contains("boo"));
  EXPECT_FALSE(t.Contains(""));
  EXPECT_FALSE(t.Contains("books"));
}

TEST(BiasTrieTest, CaseInsensitive) {
  BiasTrie t = BiasTrie::Build(Words{"Frisbee"});
  EXPECT_TRUE(t.Contains("frisbee"));
  EXPECT_TRUE(t.Stats(Walk(t, "FRIS")).traversed == 4);
}

TEST(BiasTrieTest, BuildErrors) {
  EXPECT_EQ(ThrownCode([] { BiasTrie::Build(Words{"ok", ""}); }),
            ErrorCode::kEmptyWord);
  EXPECT_EQ(ThrownCode([] { BiasTrie::Build(Words{"two words"}); }),
            ErrorCode::kBadSymbol);
}

TEST(BiasTrieTest, DuplicatesCollapse) {
  BiasTrie t = BiasTrie::Build(Words{"red", "RED", "red"});
  EXPECT_EQ(t.word_count(), 1u);
  EXPECT_EQ(t.node_count(), 3u);
}

TEST(BiasTrieTest, SplitBiasPhrases) {
  EXPECT_EQ(SplitBiasPhrases(Words{"Red Book", "book", " coffee  table "}),
            (Words{"red", "book", "coffee", "table"}));
}

Words RandomWords(std::mt19937_64& rng, int count) {
  Words out;
  for (int i = 0; i < count; ++i) {
    std::string w(1 + rng() % 7, 'a');
    for (char& c : w) c = static_cast<char>('a' + rng() % 4);
    out.push_back(w);
  }
  return out;
}

TEST(BiasTrieProperty, PrefixStatsMatchShortestExtension) {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 50; ++round) {
    Words words = RandomWords(rng, 1 + static_cast<int>(rng() % 12));
    BiasTrie t = BiasTrie::Build(words);
    for (const std::string& w : words) {
      for (std::size_t len = 1; len <= w.size(); ++len) {
        const std::string p = w.substr(0, len);
        std::size_t shortest = std::string::npos;
        for (const std::string& v : words) {
          if (v.compare(0, p.size(), p) == 0) shortest = std::min(shortest, v.size());
        }
        TrieStats s = t.Stats(Walk(t, p));
        ASSERT_EQ(s.traversed, static_cast<int>(len));
        ASSERT_EQ(static_cast<std::size_t>(s.traversed + s.to_leaf), shortest) << p;
      }
      ASSERT_TRUE(t.Stats(Walk(t, w)).complete);
    }
  }
}

TEST(BiasTrieProperty, MinToLeafIsConsistentAlongEdges) {
  std::mt19937_64 rng(22);
  for (int round = 0; round < 50; ++round) {
    Words words = RandomWords(rng, 1 + static_cast<int>(rng() % 12));
    BiasTrie t = BiasTrie::Build(words);
    for (const std::string& w : words) {
      TrieCursor c = t.Root();
      for (char ch : w) {
        TrieCursor child = t.Advance(c, static_cast<char32_t>(ch));
        ASSERT_LE(t.Stats(c).to_leaf, t.Stats(child).to_leaf + 1);
        ASSERT_EQ(t.Stats(child).to_leaf == 0, t.Stats(child).complete);
        c = child;
      }
    }
  }
}

TEST(BiasTrieProperty, InsertionOrderInvariant) {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 50; ++round) {
    Words words = RandomWords(rng, 2 + static_cast<int>(rng() % 10));
    BiasTrie a = BiasTrie::Build(words);
    std::shuffle(words.begin(), words.end(), rng);
    BiasTrie b = BiasTrie::Build(words);
    ASSERT_EQ(a, b);
    ASSERT_EQ(a.Words(), b.Words());
  }
}

}  // namespace
}  // namespace biasdec
