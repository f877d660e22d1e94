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

#ifndef BIASDEC_BIAS_TRIE_H_
#define BIASDEC_BIAS_TRIE_H_

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace biasdec {

// Lookahead statistics for a partially matched word.
struct TrieStats {
  static constexpr int kUnreachable = std::numeric_limits<int>::max();

  int traversed = 0;            // characters matched so far (tn)
  int to_leaf = kUnreachable;   // fewest further characters to a word end (nl)
  bool complete = false;        // the matched prefix is itself a word

  friend bool operator==(const TrieStats&, const TrieStats&) = default;
};

// Position of a hypothesis' in-progress word inside the trie. A dead cursor
// absorbs every further character.
class TrieCursor {
 public:
  TrieCursor() = default;  // dead

  bool alive() const { return node_ >= 0; }
  int depth() const { return alive() ? depth_ : 0; }

  friend bool operator==(const TrieCursor&, const TrieCursor&) = default;

 private:
  friend class BiasTrie;
  TrieCursor(std::int32_t node, std::int32_t depth) : node_(node), depth_(depth) {}

  std::int32_t node_ = -1;
  std::int32_t depth_ = 0;
};

// Character-level prefix tree over the biasing words. Immutable once built;
// a changed vocabulary means building a new trie.
class BiasTrie {
 public:
  // Empty trie: every cursor is dead.
  BiasTrie() : nodes_(1) {}

  // Words are lowercased; duplicates collapse. Throws Error(kEmptyWord) for
  // an empty word and Error(kBadSymbol) for one containing whitespace.
  static BiasTrie Build(std::span<const std::string> words);

  // Start-of-word cursor; dead when the trie holds no words.
  TrieCursor Root() const;
  TrieCursor Advance(TrieCursor cursor, char32_t ch) const;
  TrieCursor Advance(TrieCursor cursor, std::string_view utf8) const;
  TrieStats Stats(TrieCursor cursor) const;

  bool Contains(std::string_view word) const;

  std::size_t word_count() const { return word_count_; }
  // Nodes below the root.
  std::size_t node_count() const { return nodes_.size() - 1; }
  // Inserted words in lexicographic order.
  std::vector<std::string> Words() const;

  // Structural equality: same labelled tree, same terminal marks.
  friend bool operator==(const BiasTrie& a, const BiasTrie& b);

 private:
  struct Node {
    std::vector<std::pair<char32_t, std::uint32_t>> children;  // sorted
    bool terminal = false;
    int min_to_leaf = TrieStats::kUnreachable;
  };

  std::int32_t Child(std::uint32_t node, char32_t ch) const;

  std::vector<Node> nodes_;
  std::size_t word_count_ = 0;
};

// Lowercases each phrase, splits it on whitespace and keeps the first
// occurrence of every word.
std::vector<std::string> SplitBiasPhrases(std::span<const std::string> phrases);

}  // namespace biasdec

#endif  // BIASDEC_BIAS_TRIE_H_
