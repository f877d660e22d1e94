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

#include "biasdec/ngram_lm.h"

#include <zlib.h>

#include <charconv>
#include <cmath>
#include <cstring>
#include <numbers>

#include "biasdec/error.h"
#include "biasdec/text.h"

namespace biasdec {

namespace {

constexpr double kLn10 = std::numbers::ln10;

// Line cursor over the whole file, tracking 1-based line numbers.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool Next(std::string_view& line) {
    if (pos_ >= text_.size()) return false;
    std::size_t end = text_.find('\n', pos_);
    if (end == std::string_view::npos) end = text_.size();
    line = text_.substr(pos_, end - pos_);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos_ = end + 1;
    ++line_no_;
    return true;
  }
  // Pushes the last line back so the next call returns it again.
  void Unread(std::string_view line) {
    pos_ = static_cast<std::size_t>(line.data() - text_.data());
    --line_no_;
  }
  int line_no() const { return line_no_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_no_ = 0;
};

bool ParseNumber(std::string_view s, double& v) {
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

// Fields separated by spaces or tabs.
std::vector<std::string_view> Fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::string FormatLog10(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string NGramModel::PackKey(const WordId* ids, std::size_t n) {
  std::string key(n * sizeof(WordId), '\0');
  std::memcpy(key.data(), ids, key.size());
  return key;
}

const NGramModel::Entry* NGramModel::Find(const WordId* ids,
                                          std::size_t n) const {
  if (n == 0 || n > tables_.size()) return nullptr;
  std::string_view key(reinterpret_cast<const char*>(ids), n * sizeof(WordId));
  const Table& table = tables_[n - 1];
  auto it = table.find(key);
  return it == table.end() ? nullptr : &it->second;
}

NGramModel NGramModel::FromArpaText(std::string_view text,
                                    std::string_view source) {
  const std::string src(source);
  auto fail = [&](ErrorCode code, int line, const std::string& what) -> Error {
    std::string where = src;
    if (line > 0) where += ":" + std::to_string(line);
    return Error(code, where + ": " + what);
  };

  NGramModel m;
  LineReader reader(text);
  std::string_view line;

  bool found_data = false;
  while (reader.Next(line)) {
    if (Trim(line) == "\\data\\") {
      found_data = true;
      break;
    }
  }
  if (!found_data) throw fail(ErrorCode::kSectionMissing, 0, "no \\data\\ section");

  std::vector<std::size_t> declared;
  while (reader.Next(line)) {
    std::string_view t = Trim(line);
    if (t.empty()) {
      if (declared.empty()) continue;
      break;
    }
    if (t.front() == '\\') {
      reader.Unread(line);
      break;
    }
    if (t.substr(0, 6) != "ngram ") {
      throw fail(ErrorCode::kBadRecord, reader.line_no(),
                 "expected \"ngram N=count\"");
    }
    t.remove_prefix(6);
    auto eq = t.find('=');
    double n = 0, count = 0;
    if (eq == std::string_view::npos || !ParseNumber(Trim(t.substr(0, eq)), n) ||
        !ParseNumber(Trim(t.substr(eq + 1)), count) || n < 1 || count < 0 ||
        n != std::floor(n) || count != std::floor(count)) {
      throw fail(ErrorCode::kBadRecord, reader.line_no(),
                 "malformed ngram count line");
    }
    if (static_cast<std::size_t>(n) != declared.size() + 1) {
      throw fail(ErrorCode::kBadRecord, reader.line_no(),
                 "ngram orders must be listed 1, 2, ... in sequence");
    }
    declared.push_back(static_cast<std::size_t>(count));
  }
  if (declared.empty()) {
    throw fail(ErrorCode::kSectionMissing, reader.line_no(),
               "\\data\\ declares no n-gram counts");
  }

  m.order_ = static_cast<int>(declared.size());
  m.tables_.resize(declared.size());
  m.key_order_.resize(declared.size());

  std::vector<WordId> ids;
  for (std::size_t n = 1; n <= declared.size(); ++n) {
    const std::string header = "\\" + std::to_string(n) + "-grams:";
    bool found = false;
    while (reader.Next(line)) {
      std::string_view t = Trim(line);
      if (t.empty()) continue;
      if (t == header) {
        found = true;
        break;
      }
      throw fail(ErrorCode::kSectionMissing, reader.line_no(),
                 "expected " + header + ", found \"" + std::string(t) + "\"");
    }
    if (!found) throw fail(ErrorCode::kSectionMissing, 0, "missing " + header);

    std::size_t parsed = 0;
    Table& table = m.tables_[n - 1];
    while (reader.Next(line)) {
      std::string_view t = Trim(line);
      if (t.empty()) break;
      if (t.front() == '\\') {
        reader.Unread(line);
        break;
      }
      auto f = Fields(t);
      if (f.size() != n + 1 && f.size() != n + 2) {
        throw fail(ErrorCode::kBadRecord, reader.line_no(),
                   "expected " + std::to_string(n + 1) + " or " +
                       std::to_string(n + 2) + " fields, found " +
                       std::to_string(f.size()));
      }
      Entry e;
      if (!ParseNumber(f[0], e.log10_prob)) {
        throw fail(ErrorCode::kBadRecord, reader.line_no(),
                   "bad probability \"" + std::string(f[0]) + "\"");
      }
      if (f.size() == n + 2 && !ParseNumber(f[n + 1], e.log10_backoff)) {
        throw fail(ErrorCode::kBadRecord, reader.line_no(),
                   "bad backoff \"" + std::string(f[n + 1]) + "\"");
      }
      e.prob = e.log10_prob * kLn10;
      e.backoff = e.log10_backoff * kLn10;

      ids.clear();
      for (std::size_t k = 1; k <= n; ++k) {
        std::string w = ToLower(f[k]);
        auto it = m.ids_.find(w);
        if (it != m.ids_.end()) {
          ids.push_back(it->second);
        } else if (n == 1) {
          auto id = static_cast<WordId>(m.words_.size());
          m.words_.push_back(w);
          m.ids_.emplace(std::move(w), id);
          ids.push_back(id);
        } else {
          throw fail(ErrorCode::kBadRecord, reader.line_no(),
                     "word \"" + std::string(f[k]) + "\" has no unigram entry");
        }
      }
      ++parsed;
      std::string key = PackKey(ids.data(), ids.size());
      if (table.emplace(key, e).second) m.key_order_[n - 1].push_back(key);
    }
    if (parsed != declared[n - 1]) {
      throw fail(ErrorCode::kCountMismatch, reader.line_no(),
                 "header declares " + std::to_string(declared[n - 1]) + " " +
                     std::to_string(n) + "-grams, found " +
                     std::to_string(parsed));
    }
  }

  bool found_end = false;
  while (reader.Next(line)) {
    std::string_view t = Trim(line);
    if (t.empty()) continue;
    if (t == "\\end\\") found_end = true;
    break;
  }
  if (!found_end) throw fail(ErrorCode::kSectionMissing, 0, "no \\end\\ marker");

  auto unk = m.ids_.find(kUnk);
  if (unk != m.ids_.end()) {
    m.unk_id_ = unk->second;
  } else {
    m.unk_id_ = static_cast<WordId>(m.words_.size());
    m.words_.emplace_back(kUnk);
    m.ids_.emplace(std::string(kUnk), m.unk_id_);
    Entry e;
    e.log10_prob = kMissingUnkLog10;
    e.prob = kMissingUnkLog10 * kLn10;
    m.tables_[0].emplace(PackKey(&m.unk_id_, 1), e);
  }
  return m;
}

WordId NGramModel::Index(std::string_view word) const {
  auto it = ids_.find(ToLower(word));
  return it == ids_.end() ? unk_id_ : it->second;
}

double NGramModel::CondLogProb(WordId word, const LmState& state) const {
  const std::size_t max_ctx = static_cast<std::size_t>(order_ - 1);
  const std::size_t h = std::min(state.history.size(), max_ctx);
  // ids = [h_oldest .. h_newest, word]; suffixes of it are the n-grams.
  WordId buf[16];
  std::vector<WordId> heap;
  WordId* ids = buf;
  if (h + 1 > std::size(buf)) {
    heap.resize(h + 1);
    ids = heap.data();
  }
  std::copy(state.history.end() - static_cast<std::ptrdiff_t>(h),
            state.history.end(), ids);
  ids[h] = word;

  double acc = 0.0;
  for (std::size_t ctx = h;; --ctx) {
    const WordId* start = ids + (h - ctx);
    if (const Entry* e = Find(start, ctx + 1)) return acc + e->prob;
    if (ctx == 0) break;
    if (const Entry* b = Find(start, ctx)) acc += b->backoff;
  }
  // Unreachable for ids from Index(); unknown raw ids score as <unk>.
  return acc + Find(&unk_id_, 1)->prob;
}

double NGramModel::UnigramLogProb(std::string_view word) const {
  WordId id = Index(word);
  return Find(&id, 1)->prob;
}

bool NGramModel::InVocab(std::string_view word) const {
  auto it = ids_.find(ToLower(word));
  return it != ids_.end() && it->second != unk_id_;
}

LmState NGramModel::BeginSentenceState() const {
  LmState s;
  auto it = ids_.find(kBos);
  if (it != ids_.end() && order_ > 1) s.history.push_back(it->second);
  return s;
}

LmState NGramModel::Extend(const LmState& state, WordId word) const {
  LmState next;
  const std::size_t keep = static_cast<std::size_t>(std::max(order_ - 1, 0));
  if (keep == 0) return next;
  const auto& h = state.history;
  std::size_t from = h.size() + 1 > keep ? h.size() + 1 - keep : 0;
  next.history.reserve(keep);
  next.history.insert(next.history.end(),
                      h.begin() + static_cast<std::ptrdiff_t>(std::min(from, h.size())),
                      h.end());
  next.history.push_back(word);
  return next;
}

double NGramModel::EndSentenceLogProb(const LmState& state) const {
  auto it = ids_.find(kEos);
  if (it == ids_.end()) return 0.0;
  return CondLogProb(it->second, state);
}

void NGramModel::WriteArpa(std::ostream& out) const {
  out << "\\data\\\n";
  for (std::size_t n = 0; n < tables_.size(); ++n) {
    out << "ngram " << n + 1 << "=" << key_order_[n].size() << "\n";
  }
  for (std::size_t n = 0; n < tables_.size(); ++n) {
    out << "\n\\" << n + 1 << "-grams:\n";
    for (const std::string& key : key_order_[n]) {
      const Entry& e = tables_[n].at(key);
      out << FormatLog10(e.log10_prob);
      std::vector<WordId> ids(n + 1);
      std::memcpy(ids.data(), key.data(), key.size());
      for (std::size_t k = 0; k <= n; ++k) out << (k ? " " : "\t") << words_[ids[k]];
      if (n + 1 < tables_.size() && e.log10_backoff != 0.0) {
        out << "\t" << FormatLog10(e.log10_backoff);
      }
      out << "\n";
    }
  }
  out << "\n\\end\\\n";
}

NGramModel LoadArpa(const std::filesystem::path& path) {
  gzFile f = gzopen(path.string().c_str(), "rb");
  if (!f) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  std::string text;
  char buf[1 << 16];
  for (;;) {
    int n = gzread(f, buf, sizeof buf);
    if (n < 0) {
      gzclose(f);
      throw Error(ErrorCode::kIoFailure, "read failed: " + path.string());
    }
    if (n == 0) break;
    text.append(buf, static_cast<std::size_t>(n));
  }
  gzclose(f);
  return NGramModel::FromArpaText(text, path.string());
}

}  // namespace biasdec
