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

#include "biasdec/decode_config.h"

#include <gtest/gtest.h>

#include "biasdec/error.h"
#include "oracles.h"

namespace biasdec {
namespace {

using testing::ThrownCode;

TEST(DecodeConfigTest, DefaultsAreTheTunedValues) {
  DecodeConfig c;
  EXPECT_EQ(c.beam_width, 100);
  EXPECT_EQ(c.cumulative_mass, 0.991);
  EXPECT_EQ(c.unigram_scale, 1.424);
  EXPECT_EQ(c.oov_penalty, 10.33);
  EXPECT_EQ(c.bias_boost, 13.31);
  EXPECT_EQ(c.lm_weight, 0.788);
  EXPECT_EQ(c.word_bonus, 0.119);
  EXPECT_EQ(c.lookahead_scale, 10.91);
  EXPECT_EQ(c.swap_percent, 24.0);
  EXPECT_EQ(c.mode, DecodeMode::kFull);
  EXPECT_FALSE(c.sentence_markers);
}

TEST(DecodeConfigTest, BaselinePresets) {
  DecodeConfig wb = PresetFor(DecodeMode::kWb);
  EXPECT_EQ(wb.bias_boost, 7.09);
  EXPECT_EQ(wb.lm_weight, 0.29);
  EXPECT_EQ(wb.word_bonus, 0.695);
  DecodeConfig ctx = PresetFor(DecodeMode::kWbCtx);
  EXPECT_EQ(ctx.bias_boost, 2.697);
  EXPECT_EQ(ctx.lm_weight, 0.3521);
  EXPECT_EQ(ctx.word_bonus, 0.789);
  EXPECT_EQ(ctx.unigram_scale, 1.24);
  EXPECT_EQ(PresetFor(DecodeMode::kFull), DecodeConfig{});
}

TEST(DecodeConfigTest, ValidateRejectsOutOfRange) {
  auto bad = [](auto mutate) {
    DecodeConfig c;
    mutate(c);
    return ThrownCode([&] { c.Validate(); });
  };
  EXPECT_EQ(bad([](DecodeConfig& c) { c.beam_width = 0; }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(bad([](DecodeConfig& c) { c.cumulative_mass = 0; }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(bad([](DecodeConfig& c) { c.cumulative_mass = 1.01; }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(bad([](DecodeConfig& c) { c.unigram_scale = -1; }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(bad([](DecodeConfig& c) { c.oov_penalty = -1; }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(bad([](DecodeConfig& c) { c.bias_boost = -1; }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(bad([](DecodeConfig& c) { c.lookahead_scale = -1; }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(bad([](DecodeConfig& c) { c.swap_percent = 101; }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(bad([](DecodeConfig& c) { c.swap_percent = -1; }), ErrorCode::kInvalidConfig);
}

TEST(DecodeConfigTest, IgnoredFieldsAreStillValidated) {
  DecodeConfig c;
  c.mode = DecodeMode::kBase;
  c.oov_penalty = -3;
  EXPECT_EQ(ThrownCode([&] { c.Validate(); }), ErrorCode::kInvalidConfig);
}

TEST(DecodeConfigTest, ResolvedNeutralizesUnusedParameters) {
  DecodeConfig c;
  c.mode = DecodeMode::kBase;
  DecodeConfig r = c.Resolved();
  EXPECT_EQ(r.lm_weight, 0);
  EXPECT_EQ(r.word_bonus, 0);
  EXPECT_EQ(r.unigram_scale, 0);
  EXPECT_EQ(r.bias_boost, 0);
  EXPECT_EQ(r.oov_penalty, 0);
  EXPECT_EQ(r.lookahead_scale, 0);
  EXPECT_EQ(r.swap_percent, 0);
  EXPECT_EQ(r.cumulative_mass, 1.0);

  c.mode = DecodeMode::kBaseLm;
  r = c.Resolved();
  EXPECT_EQ(r.lm_weight, 0.788);
  EXPECT_EQ(r.bias_boost, 0);
  EXPECT_EQ(r.swap_percent, 0);
  EXPECT_EQ(r.cumulative_mass, 0.991);

  c.mode = DecodeMode::kWb;
  r = c.Resolved();
  EXPECT_EQ(r.bias_boost, 13.31);
  EXPECT_EQ(r.unigram_scale, 0);
  EXPECT_EQ(r.oov_penalty, 0);
  EXPECT_EQ(r.swap_percent, 0);

  c.mode = DecodeMode::kWbCtx;
  r = c.Resolved();
  EXPECT_EQ(r.unigram_scale, 1.424);
  EXPECT_EQ(r.oov_penalty, 0);
  EXPECT_EQ(r.lookahead_scale, 0);

  c.mode = DecodeMode::kFull;
  EXPECT_EQ(c.Resolved(), c);
}

TEST(DecodeConfigTest, ModeNamesRoundTrip) {
  for (DecodeMode m : {DecodeMode::kGreedy, DecodeMode::kBase, DecodeMode::kBaseLm,
                       DecodeMode::kWb, DecodeMode::kWbCtx, DecodeMode::kFull}) {
    EXPECT_EQ(ParseMode(ModeName(m)), m);
  }
  EXPECT_FALSE(ParseMode("fast").has_value());
}

TEST(DecodeConfigTest, ParseConfigText) {
  DecodeConfig c = ParseConfig(
      "# tuned\n"
      "mode = wb_ctx\n"
      "N=8\n"
      "gamma=2.5  # boost\n"
      "\n"
      "sentence_markers=true\n");
  EXPECT_EQ(c.mode, DecodeMode::kWbCtx);
  EXPECT_EQ(c.beam_width, 8);
  EXPECT_EQ(c.bias_boost, 2.5);
  EXPECT_TRUE(c.sentence_markers);
  EXPECT_EQ(c.lm_weight, 0.788);
}

TEST(DecodeConfigTest, ParseConfigErrors) {
  EXPECT_EQ(ThrownCode([] { ParseConfig("bogus=1\n"); }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(ThrownCode([] { ParseConfig("N=abc\n"); }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(ThrownCode([] { ParseConfig("N\n"); }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(ThrownCode([] { ParseConfig("C=2\n"); }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(ThrownCode([] { ParseConfig("mode=turbo\n"); }), ErrorCode::kInvalidConfig);
}

TEST(DecodeConfigTest, FormatParseRoundTrip) {
  DecodeConfig c;
  c.mode = DecodeMode::kWb;
  c.cumulative_mass = 0.1 + 0.2;  // not exactly representable in short form
  c.lookahead_scale = 1.0 / 3.0;
  c.swap_percent = 17;
  c.sentence_markers = true;
  EXPECT_EQ(ParseConfig(FormatConfig(c)), c);
  EXPECT_EQ(ParseConfig(FormatConfig(DecodeConfig{})), DecodeConfig{});
}

TEST(DecodeConfigTest, FormatIsStable) {
  EXPECT_EQ(FormatConfig(DecodeConfig{}),
            "mode=full\nN=100\nC=0.991\nlambda=1.424\ndelta=10.33\n"
            "gamma=13.31\nalpha=0.788\nbeta=0.119\nsigma=10.91\nK=24\n"
            "sentence_markers=false\n");
}

}  // namespace
}  // namespace biasdec
