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
#include <functional>
#include <set>
#include <unordered_set>

#include "biasdec/error.h"
#include "biasdec/text.h"

namespace biasdec {

namespace {

char32_t Fold(char32_t ch) {
  return (ch >= U'A' && ch <= U'Z') ? ch - U'A' + U'a' : ch;
}

bool IsWhitespace(char32_t ch) {
  return ch == U' ' || ch == U'\t' || ch == U'\n' || ch == U'\r' ||
         ch == U'\f' || ch == U'\v';
}

}  // namespace

BiasTrie BiasTrie::Build(std::span<const std::string> words) {
  // Sorted insertion makes node numbering independent of input order.
  std::set<std::u32string> unique;
  for (const std::string& w : words) {
    if (w.empty()) throw Error(ErrorCode::kEmptyWord, "empty biasing word");
    std::u32string cps = DecodeUtf8(ToLower(w));
    if (std::any_of(cps.begin(), cps.end(), IsWhitespace)) {
      throw Error(ErrorCode::kBadSymbol,
                  "biasing word \"" + w + "\" contains whitespace");
    }
    unique.insert(std::move(cps));
  }

  BiasTrie trie;
  for (const std::u32string& w : unique) {
    std::uint32_t node = 0;
    for (char32_t ch : w) {
      std::int32_t next = trie.Child(node, ch);
      if (next < 0) {
        next = static_cast<std::int32_t>(trie.nodes_.size());
        auto& kids = trie.nodes_[node].children;
        auto pos = std::lower_bound(
            kids.begin(), kids.end(), ch,
            [](const auto& kid, char32_t c) { return kid.first < c; });
        kids.insert(pos, {ch, static_cast<std::uint32_t>(next)});
        trie.nodes_.emplace_back();
      }
      node = static_cast<std::uint32_t>(next);
    }
    trie.nodes_[node].terminal = true;
  }
  trie.word_count_ = unique.size();

  // Children always have larger indices than their parent.
  for (std::size_t i = trie.nodes_.size(); i-- > 0;) {
    Node& n = trie.nodes_[i];
    if (n.terminal) {
      n.min_to_leaf = 0;
      continue;
    }
    for (const auto& [ch, kid] : n.children) {
      int d = trie.nodes_[kid].min_to_leaf;
      if (d != TrieStats::kUnreachable) n.min_to_leaf = std::min(n.min_to_leaf, d + 1);
    }
  }
  return trie;
}

std::int32_t BiasTrie::Child(std::uint32_t node, char32_t ch) const {
  const auto& kids = nodes_[node].children;
  auto pos = std::lower_bound(
      kids.begin(), kids.end(), ch,
      [](const auto& kid, char32_t c) { return kid.first < c; });
  if (pos == kids.end() || pos->first != ch) return -1;
  return static_cast<std::int32_t>(pos->second);
}

TrieCursor BiasTrie::Root() const {
  if (word_count_ == 0) return {};
  return TrieCursor(0, 0);
}

TrieCursor BiasTrie::Advance(TrieCursor cursor, char32_t ch) const {
  if (!cursor.alive()) return cursor;
  std::int32_t next = Child(static_cast<std::uint32_t>(cursor.node_), Fold(ch));
  if (next < 0) return {};
  return TrieCursor(next, cursor.depth_ + 1);
}

TrieCursor BiasTrie::Advance(TrieCursor cursor, std::string_view utf8) const {
  for (char32_t ch : DecodeUtf8(utf8)) cursor = Advance(cursor, ch);
  return cursor;
}

TrieStats BiasTrie::Stats(TrieCursor cursor) const {
  if (!cursor.alive()) return {};
  const Node& n = nodes_[static_cast<std::size_t>(cursor.node_)];
  return {cursor.depth_, n.min_to_leaf, n.terminal};
}

bool BiasTrie::Contains(std::string_view word) const {
  if (word.empty()) return false;
  TrieCursor c = Advance(Root(), word);
  return c.alive() && nodes_[static_cast<std::size_t>(c.node_)].terminal;
}

std::vector<std::string> BiasTrie::Words() const {
  std::vector<std::string> out;
  std::u32string path;
  std::function<void(std::uint32_t)> walk = [&](std::uint32_t node) {
    if (nodes_[node].terminal) {
      std::string w;
      for (char32_t ch : path) w += EncodeUtf8(ch);
      out.push_back(std::move(w));
    }
    for (const auto& [ch, kid] : nodes_[node].children) {
      path.push_back(ch);
      walk(kid);
      path.pop_back();
    }
  };
  if (!nodes_.empty()) walk(0);
  return out;
}

bool operator==(const BiasTrie& a, const BiasTrie& b) {
  if (a.nodes_.size() != b.nodes_.size() || a.word_count_ != b.word_count_) {
    return false;
  }
  std::function<bool(std::uint32_t, std::uint32_t)> same =
      [&](std::uint32_t x, std::uint32_t y) {
        const auto& nx = a.nodes_[x];
        const auto& ny = b.nodes_[y];
        if (nx.terminal != ny.terminal || nx.min_to_leaf != ny.min_to_leaf ||
            nx.children.size() != ny.children.size()) {
          return false;
        }
        for (std::size_t i = 0; i < nx.children.size(); ++i) {
          if (nx.children[i].first != ny.children[i].first ||
              !same(nx.children[i].second, ny.children[i].second)) {
            return false;
          }
        }
        return true;
      };
  return same(0, 0);
}

std::vector<std::string> SplitBiasPhrases(std::span<const std::string> phrases) {
  std::vector<std::string> words;
  std::unordered_set<std::string> seen;
  for (const std::string& p : phrases) {
    for (std::string& w : SplitWords(ToLower(p))) {
      if (seen.insert(w).second) words.push_back(std::move(w));
    }
  }
  return words;
}

}  // namespace biasdec
