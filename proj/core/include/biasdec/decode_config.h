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

#ifndef BIASDEC_DECODE_CONFIG_H_
#define BIASDEC_DECODE_CONFIG_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace biasdec {

enum class DecodeMode {
  kGreedy,   // per-frame argmax with CTC collapse
  kBase,     // plain CTC prefix beam search
  kBaseLm,   // + n-gram shallow fusion
  kWb,       // + fixed boost for completed bias words
  kWbCtx,    // + unigram-scaled boost, no OOV penalty
  kFull,     // + OOV penalty, sampling, bias-aware pruning
};

std::string_view ModeName(DecodeMode mode);
std::optional<DecodeMode> ParseMode(std::string_view name);

// Search hyper-parameters. Defaults are the tuned values for the full model.
// Scores are natural-log throughout.
struct DecodeConfig {
  int beam_width = 100;              // N
  double cumulative_mass = 0.991;    // C, sampling threshold
  double unigram_scale = 1.424;      // lambda
  double oov_penalty = 10.33;        // delta
  double bias_boost = 13.31;         // gamma
  double lm_weight = 0.788;          // alpha
  double word_bonus = 0.119;         // beta
  double lookahead_scale = 10.91;    // sigma
  double swap_percent = 24.0;        // K, share of the beam open to swaps
  DecodeMode mode = DecodeMode::kFull;
  // Score utterances with <s> ... </s> around them.
  bool sentence_markers = false;

  // Throws Error(kInvalidConfig). Fields a mode ignores are checked anyway.
  void Validate() const;

  // Copy with the parameters the mode does not use forced to their neutral
  // values (zero weights, no swaps, C = 1 for kBase).
  DecodeConfig Resolved() const;

  friend bool operator==(const DecodeConfig&, const DecodeConfig&) = default;
};

// Defaults plus the separately tuned baseline values for `mode`.
DecodeConfig PresetFor(DecodeMode mode);

// key=value lines, '#' starts a comment. Keys: N C lambda delta gamma alpha
// beta sigma K mode sentence_markers. Unknown keys are an error.
DecodeConfig ParseConfig(std::string_view text, DecodeConfig base = {});
DecodeConfig LoadConfig(const std::filesystem::path& path,
                        DecodeConfig base = {});

// Applies one key=value assignment; throws on unknown key or bad value.
void SetConfigValue(DecodeConfig& cfg, std::string_view key,
                    std::string_view value);

// Round-trips through ParseConfig exactly (shortest decimal form).
std::string FormatConfig(const DecodeConfig& cfg);

}  // namespace biasdec

#endif  // BIASDEC_DECODE_CONFIG_H_
