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

#include "biasdec/harness.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>
#include <unordered_set>

#include "biasdec/bias_trie.h"
#include "biasdec/context.h"
#include "biasdec/decoder.h"
#include "biasdec/error.h"
#include "biasdec/text.h"

#ifndef BIASDEC_VERSION
#define BIASDEC_VERSION "0.0.0"
#endif

namespace biasdec {

std::string_view LibraryVersion() { return BIASDEC_VERSION; }

namespace {

// Portable draws on top of mt19937_64, whose output sequence is fixed by the
// standard (the <random> distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Integer in [0, n).
  std::size_t Below(std::size_t n) {
    return static_cast<std::size_t>(Uniform() * static_cast<double>(n));
  }
  bool Bernoulli(double p) { return Uniform() < p; }
  template <typename T>
  const T& Pick(const std::vector<T>& v) {
    return v[Below(v.size())];
  }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
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

std::uint64_t UtteranceSeed(std::uint64_t corpus_seed, std::size_t index) {
  return SplitMix64(corpus_seed ^ SplitMix64(static_cast<std::uint64_t>(index) + 1));
}

std::vector<ConfusionPair> DefaultConfusionPairs() {
  return {
      {"red", "read"},       {"frisbee", "friezbee"},
      {"stack", "steck"},    {"row", "roar"},
      {"refrigerator", "refrijoritor"},
      {"cup", "cap"},        {"mug", "mag"},
      {"towel", "tower"},    {"bowl", "bole"},
      {"pillow", "pilo"},    {"sofa", "soffa"},
      {"remote", "rimote"},  {"shelf", "shelv"},
      {"laptop", "lapdop"},  {"blue", "blew"},
      {"push", "pull"},      {"pull", "push"},
      {"hold", "fold"},      {"fold", "hold"},
      {"wipe", "wine"},      {"wash", "wish"},
      {"the", "a"},          {"a", "the"},
      {"on", "in"},          {"in", "on"},
  };
}

std::vector<ConfusionPair> LoadConfusionPairs(const std::filesystem::path& path) {
  std::vector<ConfusionPair> pairs;
  int line_no = 0;
  for (const std::string& line : ReadLines(path)) {
    ++line_no;
    auto t = Trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto fields = SplitWords(t);
    if (fields.size() != 2) {
      throw Error(ErrorCode::kBadRecord,
                  path.string() + ":" + std::to_string(line_no) +
                      ": expected \"target confusion\"");
    }
    pairs.push_back({ToLower(fields[0]), ToLower(fields[1])});
  }
  return pairs;
}

std::vector<Utterance> LoadCorpus(const std::filesystem::path& path) {
  std::vector<Utterance> corpus;
  int line_no = 0;
  for (const std::string& line : ReadLines(path)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    auto tab = line.find('\t');
    Utterance u;
    u.reference = NormalizeTranscript(line.substr(0, tab));
    if (u.reference.empty()) {
      throw Error(ErrorCode::kBadRecord,
                  path.string() + ":" + std::to_string(line_no) +
                      ": empty reference");
    }
    if (tab != std::string::npos) {
      for (const std::string& w : SplitOn(line.substr(tab + 1), ',')) {
        auto t = Trim(w);
        if (!t.empty()) u.bias_words.push_back(ToLower(t));
      }
    }
    corpus.push_back(std::move(u));
  }
  return corpus;
}

void WriteCorpus(std::ostream& out, std::span<const Utterance> utterances) {
  for (const Utterance& u : utterances) {
    out << u.reference << '\t' << Join(u.bias_words, ",") << '\n';
  }
}

namespace {

struct InstructionGrammar {
  std::vector<std::string> verbs = {
      "bring me", "take",  "pick up", "grab", "fetch", "find",
      "get me",   "look at", "push",  "pull", "carry", "clean",
      "open",     "hold",  "fold",    "lift", "wipe",  "wash"};
  std::vector<std::string> objects = {
      "book",   "books",    "cup",      "mug",     "bottle",  "laptop",
      "pillow", "chair",    "remote",   "plant",   "towel",   "bowl",
      "apple",  "banana",   "keyboard", "backpack", "umbrella", "frisbee",
      "ottoman", "spatula", "thermos",  "vase",    "lamp",    "clock",
      "phone",  "box",      "basket",   "blanket", "stack",   "row"};
  std::vector<std::string> places = {
      "table", "floor",  "shelf",   "sofa",         "bed",    "counter",
      "desk",  "cabinet", "sink",   "refrigerator", "window", "drawer",
      "couch", "stool"};
  std::vector<std::string> attributes = {"red",   "blue",   "green", "white",
                                         "black", "yellow", "pink",  "small",
                                         "large", "wooden"};
};

}  // namespace

std::vector<Utterance> GenerateInstructionCorpus(std::size_t count,
                                                 std::uint64_t seed) {
  const InstructionGrammar g;
  Rng rng(seed);
  std::vector<Utterance> corpus;
  corpus.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<std::string> content;
    std::string ref;
    const std::string& obj = rng.Pick(g.objects);
    const std::string& place = rng.Pick(g.places);
    const std::string& attr = rng.Pick(g.attributes);
    const std::string& verb = rng.Pick(g.verbs);
    // Articles and the locative preposition vary, as in spoken requests.
    std::string art = rng.Below(3) == 0 ? "a" : "the";
    if (art == "a" && std::string_view("aeiou").find(obj[0]) != std::string_view::npos) {
      art = "an";
    }
    const std::string prep = rng.Bernoulli(0.5) ? "on" : "in";
    switch (rng.Below(8)) {
      case 0:
        ref = verb + " " + art + " " + obj;
        content = {obj};
        break;
      case 1:
        ref = verb + " " + art + " " + attr + " " + obj;
        content = {attr, obj};
        break;
      case 2:
        ref = verb + " " + art + " " + obj + " " + prep + " the " + place;
        content = {obj, place};
        break;
      case 3:
        ref = verb + " " + art + " " + attr + " " + obj + " " + prep + " the " +
              place;
        content = {attr, obj, place};
        break;
      case 4:
        ref = "put " + art + " " + obj + " " + prep + " the " + place;
        content = {obj, place};
        break;
      case 5:
        ref = "place " + art + " " + attr + " " + obj + " " + prep + " the " +
              place;
        content = {attr, obj, place};
        break;
      case 6:
        ref = "go to the " + place;
        content = {place};
        break;
      default:
        ref = "move to " + art + " " + obj + " near the " + place;
        content = {obj, place};
        break;
    }

    // Scene words: most spoken content words (at least one) plus unrelated
    // things the camera also sees.
    std::vector<std::string> bias;
    std::unordered_set<std::string> used;
    for (const std::string& w : content) {
      if (rng.Bernoulli(0.9) && used.insert(w).second) bias.push_back(w);
    }
    if (bias.empty()) {
      bias.push_back(content[rng.Below(content.size())]);
      used.insert(bias.back());
    }
    std::unordered_set<std::string> spoken(content.begin(), content.end());
    const std::size_t distractors = 5 + rng.Below(5);
    while (bias.size() < content.size() + distractors) {
      const auto& pool = rng.Bernoulli(0.6)   ? g.objects
                         : rng.Bernoulli(0.5) ? g.places
                                              : g.attributes;
      const std::string& w = rng.Pick(pool);
      if (spoken.count(w) || !used.insert(w).second) continue;
      bias.push_back(w);
    }
    for (std::size_t k = bias.size(); k > 1; --k) {
      std::swap(bias[k - 1], bias[rng.Below(k)]);
    }
    corpus.push_back({std::move(ref), std::move(bias)});
  }
  return corpus;
}

namespace {

// One aligned position of a word: the true label and the label the channel
// leans towards. -1 on either side means "blank" (an insertion or deletion
// relative to the truth).
struct Column {
  int truth = -1;
  int wrong = -1;
  bool corrupted = false;
};

std::vector<int> Labels(std::string_view word, const Alphabet& alphabet) {
  std::vector<int> labels;
  for (char32_t cp : DecodeUtf8(word)) {
    auto idx = alphabet.IndexOf(cp);
    if (!idx || *idx == alphabet.delimiter_index()) {
      throw Error(ErrorCode::kSymbolOutOfAlphabet,
                  "character \"" + EncodeUtf8(cp) + "\" in \"" +
                      std::string(word) + "\" is not in the alphabet");
    }
    labels.push_back(*idx);
  }
  return labels;
}

// Levenshtein alignment of truth against confusion.
std::vector<Column> AlignLabels(const std::vector<int>& a,
                                const std::vector<int>& b) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::vector<int>> d(n + 1, std::vector<int>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = static_cast<int>(i);
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      d[i][j] = std::min({d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1),
                          d[i - 1][j] + 1, d[i][j - 1] + 1});
    }
  }
  std::vector<Column> cols;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 &&
        d[i][j] == d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)) {
      bool same = a[i - 1] == b[j - 1];
      cols.push_back({a[i - 1], same ? -1 : b[j - 1], !same});
      --i;
      --j;
    } else if (i > 0 && d[i][j] == d[i - 1][j] + 1) {
      cols.push_back({a[i - 1], -1, true});
      --i;
    } else {
      cols.push_back({-1, b[j - 1], true});
      --j;
    }
  }
  std::reverse(cols.begin(), cols.end());
  return cols;
}

}  // namespace

LogitMatrix SynthesizeLogits(std::string_view reference, const CorpusSpec& spec,
                             const Alphabet& alphabet, std::uint64_t seed) {
  if (spec.frames_per_char < 2) {
    throw Error(ErrorCode::kInvalidConfig, "frames_per_char must be >= 2");
  }
  if (!(spec.margin > 0.0 && spec.margin < 0.5)) {
    throw Error(ErrorCode::kInvalidConfig, "margin must lie in (0, 0.5)");
  }
  if (!(spec.floor >= 0.0 && spec.floor < 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "floor must lie in [0, 1)");
  }
  Rng rng(seed);
  const int blank = alphabet.blank_index();
  const int delim = alphabet.delimiter_index();
  std::vector<int> letters;
  for (int i = 0; i < alphabet.size(); ++i) {
    if (i != blank && i != delim) letters.push_back(i);
  }

  std::vector<Column> columns;
  const auto words = SplitWords(reference);
  for (std::size_t wi = 0; wi < words.size(); ++wi) {
    if (wi > 0) columns.push_back({delim, -1, false});
    const std::vector<int> truth = Labels(words[wi], alphabet);
    if (!rng.Bernoulli(spec.noise)) {
      for (int l : truth) columns.push_back({l, -1, false});
      continue;
    }
    std::vector<const ConfusionPair*> pairs;
    for (const ConfusionPair& p : spec.confusion_pairs) {
      if (p.target == words[wi]) pairs.push_back(&p);
    }
    if (!pairs.empty()) {
      const ConfusionPair* p = pairs[rng.Below(pairs.size())];
      auto cols = AlignLabels(truth, Labels(p->confusion, alphabet));
      columns.insert(columns.end(), cols.begin(), cols.end());
      continue;
    }
    std::vector<bool> hit(truth.size());
    bool any = false;
    for (std::size_t k = 0; k < truth.size(); ++k) {
      hit[k] = rng.Bernoulli(spec.noise);
      any = any || hit[k];
    }
    if (!any) hit[rng.Below(truth.size())] = true;
    for (std::size_t k = 0; k < truth.size(); ++k) {
      if (!hit[k] || letters.size() < 2) {
        columns.push_back({truth[k], -1, false});
        continue;
      }
      int wrong;
      do {
        wrong = rng.Pick(letters);
      } while (wrong == truth[k]);
      columns.push_back({truth[k], wrong, true});
    }
  }

  const int A = alphabet.size();
  const int symbol_frames = spec.frames_per_char - 1;
  const std::size_t frames = columns.size() * static_cast<std::size_t>(spec.frames_per_char);
  std::vector<float> values;
  values.reserve(frames * static_cast<std::size_t>(A));
  std::vector<double> row(static_cast<std::size_t>(A));
  const double hi = 0.5 + spec.margin, lo = 0.5 - spec.margin;

  auto emit = [&]() {
    double sum = 0.0;
    for (double& v : row) {
      v = (1.0 - spec.floor) * v + spec.floor / A;
      sum += v;
    }
    for (double v : row) values.push_back(static_cast<float>(v / sum));
  };

  for (const Column& c : columns) {
    for (int f = 0; f < symbol_frames; ++f) {
      std::fill(row.begin(), row.end(), 0.0);
      const int truth = c.truth < 0 ? blank : c.truth;
      if (!c.corrupted) {
        row[static_cast<std::size_t>(truth)] = 1.0;
      } else {
        const int wrong = c.wrong < 0 ? blank : c.wrong;
        row[static_cast<std::size_t>(wrong)] = hi;
        row[static_cast<std::size_t>(truth)] = lo;
      }
      emit();
    }
    std::fill(row.begin(), row.end(), 0.0);
    row[static_cast<std::size_t>(blank)] = 1.0;
    emit();
  }
  return LogitMatrix(static_cast<int>(frames), A, std::move(values));
}

std::optional<ModeRun> StandardRun(std::string_view label) {
  if (label == "full_c1") {
    DecodeConfig cfg = PresetFor(DecodeMode::kFull);
    cfg.cumulative_mass = 1.0;
    return ModeRun{std::string(label), cfg};
  }
  if (label == "full_sigma0") {
    DecodeConfig cfg = PresetFor(DecodeMode::kFull);
    cfg.lookahead_scale = 0.0;
    return ModeRun{std::string(label), cfg};
  }
  auto mode = ParseMode(label);
  if (!mode) return std::nullopt;
  return ModeRun{std::string(label), PresetFor(*mode)};
}

double ModeOutcome::MeanWallMs() const {
  if (wall_ms.empty()) return 0.0;
  return std::accumulate(wall_ms.begin(), wall_ms.end(), 0.0) /
         static_cast<double>(wall_ms.size());
}

const ModeOutcome* ExperimentResult::Find(std::string_view label) const {
  for (const ModeOutcome& m : modes) {
    if (m.label == label) return &m;
  }
  return nullptr;
}

double ExperimentResult::MeanBiasSize() const {
  if (bias_sizes.empty()) return 0.0;
  return static_cast<double>(
             std::accumulate(bias_sizes.begin(), bias_sizes.end(), std::size_t{0})) /
         static_cast<double>(bias_sizes.size());
}

namespace {

// Runs fn(i) for i in [0, n) on up to `jobs` threads; rethrows the first
// failure after all workers stop.
template <typename Fn>
void ParallelFor(std::size_t n, int jobs, Fn fn) {
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
          next = n;
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

ExperimentResult RunExperiment(const CorpusSpec& spec, const Alphabet& alphabet,
                               const NGramModel& lm,
                               std::span<const ModeRun> runs, bool anti,
                               int jobs) {
  if (spec.utterances.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "corpus has no utterances");
  }
  for (const ModeRun& run : runs) run.config.Validate();

  const std::size_t n = spec.utterances.size();
  ExperimentResult result;
  result.anti = anti;
  result.bias_sizes.resize(n);
  result.modes.resize(runs.size());
  for (std::size_t r = 0; r < runs.size(); ++r) {
    ModeOutcome& m = result.modes[r];
    m.label = runs[r].label;
    m.config = runs[r].config;
    m.hypotheses.resize(n);
    m.candidates.resize(n);
    m.wall_ms.resize(n);
  }

  ParallelFor(n, jobs, [&](std::size_t i) {
    const Utterance& u = spec.utterances[i];
    LogitMatrix logits =
        SynthesizeLogits(u.reference, spec, alphabet, UtteranceSeed(spec.seed, i));
    BiasVocabulary vocab = VocabularyFromWords(u.bias_words);
    if (anti) vocab = AntiContext(vocab, u.reference);
    BiasTrie trie = BiasTrie::Build(SplitBiasPhrases(vocab.words));
    result.bias_sizes[i] = trie.word_count();
    for (std::size_t r = 0; r < runs.size(); ++r) {
      DecodeResult d = Decode(logits, alphabet, &lm, trie, runs[r].config);
      ModeOutcome& m = result.modes[r];
      m.hypotheses[i] = d.transcripts.empty() ? std::string() : d.transcripts[0];
      m.candidates[i] = d.stats.candidates;
      m.wall_ms[i] = d.stats.wall_ms;
    }
  });

  auto pairs_for = [&](const ModeOutcome& m) {
    std::vector<std::pair<std::string, std::string>> pairs;
    pairs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      pairs.emplace_back(spec.utterances[i].reference, m.hypotheses[i]);
    }
    return pairs;
  };
  std::optional<double> base_wer;
  for (ModeOutcome& m : result.modes) {
    if (m.label == "base") base_wer = Evaluate(pairs_for(m)).wer;
  }
  for (ModeOutcome& m : result.modes) m.report = Evaluate(pairs_for(m), base_wer);
  return result;
}

SearchResult RandomSearch(const CorpusSpec& spec, const Alphabet& alphabet,
                          const NGramModel& lm, const SearchBounds& bounds,
                          int trials, std::uint64_t seed,
                          const DecodeConfig& base, int jobs) {
  if (trials < 1) throw Error(ErrorCode::kInvalidConfig, "trials must be >= 1");
  Rng rng(seed);
  SearchResult out;
  for (int t = 0; t < trials; ++t) {
    DecodeConfig cfg = base;
    cfg.cumulative_mass = rng.Uniform(bounds.cumulative_mass.lo, bounds.cumulative_mass.hi);
    cfg.unigram_scale = rng.Uniform(bounds.unigram_scale.lo, bounds.unigram_scale.hi);
    cfg.oov_penalty = rng.Uniform(bounds.oov_penalty.lo, bounds.oov_penalty.hi);
    cfg.bias_boost = rng.Uniform(bounds.bias_boost.lo, bounds.bias_boost.hi);
    cfg.lm_weight = rng.Uniform(bounds.lm_weight.lo, bounds.lm_weight.hi);
    cfg.word_bonus = rng.Uniform(bounds.word_bonus.lo, bounds.word_bonus.hi);
    cfg.lookahead_scale = rng.Uniform(bounds.lookahead_scale.lo, bounds.lookahead_scale.hi);
    const auto k_lo = static_cast<long>(std::ceil(bounds.swap_percent.lo));
    const auto k_hi = static_cast<long>(std::floor(bounds.swap_percent.hi));
    cfg.swap_percent = static_cast<double>(
        k_lo + static_cast<long>(rng.Below(static_cast<std::size_t>(
                   std::max(k_hi - k_lo + 1, 1L)))));
    cfg.Validate();

    const ModeRun run{"trial", cfg};
    ExperimentResult r = RunExperiment(spec, alphabet, lm, {&run, 1}, false, jobs);
    const double wer = r.modes[0].report.wer;
    out.trials.emplace_back(cfg, wer);
    if (t == 0 || wer < out.best_wer) {
      out.best = cfg;
      out.best_wer = wer;
    }
  }
  return out;
}

void WriteRunManifest(std::ostream& out, const CorpusSpec& spec,
                      std::span<const ModeRun> runs, bool anti) {
  out << "version=" << LibraryVersion() << '\n'
      << "seed=" << spec.seed << '\n'
      << "utterances=" << spec.utterances.size() << '\n'
      << "noise=" << spec.noise << '\n'
      << "frames_per_char=" << spec.frames_per_char << '\n'
      << "margin=" << spec.margin << '\n'
      << "floor=" << spec.floor << '\n'
      << "confusion_pairs=" << spec.confusion_pairs.size() << '\n'
      << "anti=" << (anti ? "true" : "false") << '\n';
  for (const ModeRun& run : runs) {
    for (const std::string& line : SplitOn(FormatConfig(run.config), '\n')) {
      if (!line.empty()) out << "run." << run.label << '.' << line << '\n';
    }
  }
}

}  // namespace biasdec
