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

#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "biasdec/decoder.h"
#include "biasdec/error.h"
#include "oracles.h"

namespace biasdec {
namespace {

using testing::ProjectData;
using testing::ThrownCode;

const Alphabet& English() {
  static const Alphabet a = Alphabet::EnglishGraphemes();
  return a;
}

const NGramModel& InstructionLm() {
  static const NGramModel lm = LoadArpa(ProjectData("instructions-3gram.arpa"));
  return lm;
}

CorpusSpec SmallSpec(std::size_t n, double noise) {
  CorpusSpec s;
  s.utterances = GenerateInstructionCorpus(n, 5);
  s.noise = noise;
  s.confusion_pairs = DefaultConfusionPairs();
  s.seed = 9;
  return s;
}

TEST(UtteranceSeedTest, DistinctPerIndexAndCorpus) {
  std::set<std::uint64_t> seen;
  for (std::size_t i = 0; i < 1000; ++i) seen.insert(UtteranceSeed(1, i));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_NE(UtteranceSeed(1, 0), UtteranceSeed(2, 0));
  EXPECT_EQ(UtteranceSeed(3, 7), UtteranceSeed(3, 7));
}

TEST(SynthesizeLogitsTest, CleanShapeAndRows) {
  CorpusSpec spec;
  const std::string ref = "red book";
  LogitMatrix m = SynthesizeLogits(ref, spec, English(), 1);
  EXPECT_EQ(m.frames(), static_cast<int>(ref.size()) * 2);
  EXPECT_EQ(m.symbols(), English().size());
  for (int t = 0; t < m.frames(); ++t) {
    auto row = m.row(t);
    EXPECT_NEAR(std::accumulate(row.begin(), row.end(), 0.0), 1.0, 1e-5);
  }
  EXPECT_EQ(DecodeGreedy(m, English()), ref);
}

TEST(SynthesizeLogitsTest, FramesPerChar) {
  CorpusSpec spec;
  spec.frames_per_char = 4;
  EXPECT_EQ(SynthesizeLogits("cup", spec, English(), 1).frames(), 12);
}

TEST(SynthesizeLogitsTest, Deterministic) {
  CorpusSpec spec = SmallSpec(1, 1.0);
  const std::string& ref = spec.utterances[0].reference;
  LogitMatrix a = SynthesizeLogits(ref, spec, English(), 42);
  LogitMatrix b = SynthesizeLogits(ref, spec, English(), 42);
  EXPECT_EQ(a, b);
}

TEST(SynthesizeLogitsTest, NoiseCorruptsGreedy) {
  CorpusSpec spec = SmallSpec(20, 1.0);
  int changed = 0;
  for (std::size_t i = 0; i < spec.utterances.size(); ++i) {
    const std::string& ref = spec.utterances[i].reference;
    LogitMatrix m = SynthesizeLogits(ref, spec, English(), UtteranceSeed(1, i));
    changed += DecodeGreedy(m, English()) != ref;
  }
  EXPECT_EQ(changed, 20);
}

TEST(SynthesizeLogitsTest, ConfusionPairSteersGreedy) {
  CorpusSpec spec;
  spec.noise = 1.0;
  spec.confusion_pairs = {{"red", "read"}};
  LogitMatrix m = SynthesizeLogits("red", spec, English(), 3);
  EXPECT_EQ(DecodeGreedy(m, English()), "read");
}

TEST(SynthesizeLogitsTest, Errors) {
  CorpusSpec spec;
  EXPECT_EQ(ThrownCode([&] { SynthesizeLogits("r3d", spec, English(), 1); }),
            ErrorCode::kSymbolOutOfAlphabet);
  spec.frames_per_char = 1;
  EXPECT_EQ(ThrownCode([&] { SynthesizeLogits("red", spec, English(), 1); }),
            ErrorCode::kInvalidConfig);
  spec.frames_per_char = 2;
  spec.margin = 0.7;
  EXPECT_EQ(ThrownCode([&] { SynthesizeLogits("red", spec, English(), 1); }),
            ErrorCode::kInvalidConfig);
}

TEST(CorpusTest, GeneratorIsDeterministicAndBiased) {
  auto a = GenerateInstructionCorpus(50, 11);
  auto b = GenerateInstructionCorpus(50, 11);
  ASSERT_EQ(a.size(), 50u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].reference, b[i].reference);
    EXPECT_EQ(a[i].bias_words, b[i].bias_words);
    EXPECT_FALSE(a[i].bias_words.empty());
    bool overlap = false;
    for (const auto& w : a[i].bias_words) {
      overlap |= (" " + a[i].reference + " ").find(" " + w + " ") != std::string::npos;
    }
    EXPECT_TRUE(overlap) << a[i].reference;
  }
}

TEST(CorpusTest, RoundTrip) {
  auto corpus = GenerateInstructionCorpus(10, 2);
  std::ostringstream out;
  WriteCorpus(out, corpus);
  auto path = testing::ScratchDir("harness") / "corpus.tsv";
  std::ofstream(path) << out.str();
  auto back = LoadCorpus(path);
  ASSERT_EQ(back.size(), corpus.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].reference, corpus[i].reference);
    EXPECT_EQ(back[i].bias_words, corpus[i].bias_words);
  }
}

TEST(CorpusTest, ShippedSampleLoads) {
  auto corpus = LoadCorpus(ProjectData("sample/corpus.tsv"));
  EXPECT_EQ(corpus.size(), 20u);
}

TEST(ConfusionPairsTest, ShippedFileMatchesDefaults) {
  auto loaded = LoadConfusionPairs(ProjectData("confusions.tsv"));
  auto defaults = DefaultConfusionPairs();
  ASSERT_EQ(loaded.size(), defaults.size());
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    EXPECT_EQ(loaded[i].target, defaults[i].target);
    EXPECT_EQ(loaded[i].confusion, defaults[i].confusion);
  }
}

TEST(StandardRunTest, Labels) {
  for (const char* l : {"greedy", "base", "base_lm", "wb", "wb_ctx", "full",
                        "full_c1", "full_sigma0"}) {
    EXPECT_TRUE(StandardRun(l).has_value()) << l;
  }
  EXPECT_FALSE(StandardRun("nope").has_value());
  EXPECT_EQ(StandardRun("full_c1")->config.cumulative_mass, 1.0);
  EXPECT_EQ(StandardRun("full_sigma0")->config.lookahead_scale, 0.0);
  EXPECT_EQ(StandardRun("full_c1")->config.mode, DecodeMode::kFull);
}

std::vector<ModeRun> Runs(std::initializer_list<const char*> labels) {
  std::vector<ModeRun> out;
  for (const char* l : labels) out.push_back(*StandardRun(l));
  return out;
}

TEST(RunExperimentTest, ParallelMatchesSerial) {
  CorpusSpec spec = SmallSpec(12, 0.5);
  auto runs = Runs({"base", "full"});
  auto a = RunExperiment(spec, English(), InstructionLm(), runs, false, 1);
  auto b = RunExperiment(spec, English(), InstructionLm(), runs, false, 3);
  ASSERT_EQ(a.modes.size(), 2u);
  for (std::size_t i = 0; i < a.modes.size(); ++i) {
    EXPECT_EQ(a.modes[i].hypotheses, b.modes[i].hypotheses);
    EXPECT_EQ(a.modes[i].candidates, b.modes[i].candidates);
    EXPECT_EQ(a.modes[i].report.wer, b.modes[i].report.wer);
  }
  EXPECT_EQ(a.bias_sizes, b.bias_sizes);
}

TEST(RunExperimentTest, WerrRelativeToBase) {
  CorpusSpec spec = SmallSpec(10, 0.5);
  auto r = RunExperiment(spec, English(), InstructionLm(), Runs({"base", "full"}),
                         false);
  const ModeOutcome* base = r.Find("base");
  const ModeOutcome* full = r.Find("full");
  ASSERT_NE(base, nullptr);
  ASSERT_NE(full, nullptr);
  ASSERT_TRUE(full->report.werr.has_value());
  EXPECT_NEAR(*full->report.werr,
              WerReduction(base->report.wer, full->report.wer), 1e-12);
  EXPECT_EQ(r.Find("wb"), nullptr);
  EXPECT_EQ(full->hypotheses.size(), 10u);
  EXPECT_EQ(full->wall_ms.size(), 10u);
}

TEST(RunExperimentTest, AntiRemovesSpokenWords) {
  CorpusSpec spec = SmallSpec(10, 0.5);
  auto valid = RunExperiment(spec, English(), InstructionLm(), Runs({"full"}), false);
  auto anti = RunExperiment(spec, English(), InstructionLm(), Runs({"full"}), true);
  EXPECT_TRUE(anti.anti);
  EXPECT_LT(anti.MeanBiasSize(), valid.MeanBiasSize());
}

TEST(RandomSearchTest, DeterministicAndTracksBest) {
  CorpusSpec spec = SmallSpec(4, 0.5);
  DecodeConfig base;
  base.beam_width = 8;
  auto a = RandomSearch(spec, English(), InstructionLm(), SearchBounds{}, 3, 7, base);
  auto b = RandomSearch(spec, English(), InstructionLm(), SearchBounds{}, 3, 7, base);
  ASSERT_EQ(a.trials.size(), 3u);
  EXPECT_EQ(a.best_wer, b.best_wer);
  double best = a.trials[0].second;
  for (const auto& [cfg, wer] : a.trials) {
    best = std::min(best, wer);
    EXPECT_EQ(cfg.beam_width, 8);
    EXPECT_EQ(cfg.swap_percent, std::round(cfg.swap_percent));
    EXPECT_GE(cfg.cumulative_mass, 0.96);
    EXPECT_LE(cfg.cumulative_mass, 0.9999);
  }
  EXPECT_EQ(a.best_wer, best);
}

TEST(ManifestTest, MentionsSeedAndRuns) {
  CorpusSpec spec = SmallSpec(2, 0.5);
  std::ostringstream out;
  WriteRunManifest(out, spec, Runs({"base", "full"}), true);
  const std::string s = out.str();
  EXPECT_NE(s.find("seed"), std::string::npos);
  EXPECT_NE(s.find("full"), std::string::npos);
  EXPECT_NE(s.find(std::string(LibraryVersion())), std::string::npos);
}

}  // namespace
}  // namespace biasdec
