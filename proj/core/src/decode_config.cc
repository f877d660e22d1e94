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

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "biasdec/error.h"
#include "biasdec/text.h"

namespace biasdec {

std::string_view ModeName(DecodeMode mode) {
  switch (mode) {
    case DecodeMode::kGreedy: return "greedy";
    case DecodeMode::kBase: return "base";
    case DecodeMode::kBaseLm: return "base_lm";
    case DecodeMode::kWb: return "wb";
    case DecodeMode::kWbCtx: return "wb_ctx";
    case DecodeMode::kFull: return "full";
  }
  return "unknown";
}

std::optional<DecodeMode> ParseMode(std::string_view name) {
  for (DecodeMode m : {DecodeMode::kGreedy, DecodeMode::kBase,
                       DecodeMode::kBaseLm, DecodeMode::kWb,
                       DecodeMode::kWbCtx, DecodeMode::kFull}) {
    if (ModeName(m) == name) return m;
  }
  return std::nullopt;
}

namespace {

void Require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidConfig, what);
}

bool Finite(double v) { return std::isfinite(v); }

std::string FormatDouble(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double ParseDouble(std::string_view key, std::string_view text) {
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw Error(ErrorCode::kInvalidConfig,
                "bad number for " + std::string(key) + ": \"" +
                    std::string(text) + "\"");
  }
  return v;
}

}  // namespace

void DecodeConfig::Validate() const {
  Require(beam_width >= 1, "N must be >= 1");
  Require(Finite(cumulative_mass) && cumulative_mass > 0.0 &&
              cumulative_mass <= 1.0,
          "C must lie in (0, 1]");
  Require(Finite(unigram_scale) && unigram_scale >= 0.0, "lambda must be >= 0");
  Require(Finite(oov_penalty) && oov_penalty >= 0.0, "delta must be >= 0");
  Require(Finite(bias_boost) && bias_boost >= 0.0, "gamma must be >= 0");
  Require(Finite(lookahead_scale) && lookahead_scale >= 0.0,
          "sigma must be >= 0");
  Require(Finite(lm_weight), "alpha must be finite");
  Require(Finite(word_bonus), "beta must be finite");
  Require(Finite(swap_percent) && swap_percent >= 0.0 && swap_percent <= 100.0,
          "K must lie in [0, 100]");
}

DecodeConfig DecodeConfig::Resolved() const {
  DecodeConfig r = *this;
  switch (mode) {
    case DecodeMode::kGreedy:
    case DecodeMode::kBase:
      r.lm_weight = r.word_bonus = 0.0;
      r.cumulative_mass = 1.0;
      [[fallthrough]];
    case DecodeMode::kBaseLm:
      r.unigram_scale = r.bias_boost = 0.0;
      [[fallthrough]];
    case DecodeMode::kWb:
      r.unigram_scale = 0.0;
      r.oov_penalty = 0.0;
      r.lookahead_scale = 0.0;
      r.swap_percent = 0.0;
      break;
    case DecodeMode::kWbCtx:
      r.oov_penalty = 0.0;
      r.lookahead_scale = 0.0;
      r.swap_percent = 0.0;
      break;
    case DecodeMode::kFull:
      break;
  }
  return r;
}

DecodeConfig PresetFor(DecodeMode mode) {
  DecodeConfig cfg;
  cfg.mode = mode;
  switch (mode) {
    case DecodeMode::kBaseLm:
      cfg.lm_weight = 0.105;
      cfg.word_bonus = 0.497;
      break;
    case DecodeMode::kWb:
      cfg.bias_boost = 7.09;
      cfg.lm_weight = 0.29;
      cfg.word_bonus = 0.695;
      break;
    case DecodeMode::kWbCtx:
      cfg.bias_boost = 2.697;
      cfg.lm_weight = 0.3521;
      cfg.word_bonus = 0.789;
      cfg.unigram_scale = 1.24;
      break;
    default:
      break;
  }
  return cfg;
}

void SetConfigValue(DecodeConfig& cfg, std::string_view key,
                    std::string_view value) {
  value = Trim(value);
  if (key == "N") {
    double v = ParseDouble(key, value);
    Require(v == std::floor(v) && v >= 1 && v <= 1e7, "N must be a positive integer");
    cfg.beam_width = static_cast<int>(v);
  } else if (key == "C") {
    cfg.cumulative_mass = ParseDouble(key, value);
  } else if (key == "lambda") {
    cfg.unigram_scale = ParseDouble(key, value);
  } else if (key == "delta") {
    cfg.oov_penalty = ParseDouble(key, value);
  } else if (key == "gamma") {
    cfg.bias_boost = ParseDouble(key, value);
  } else if (key == "alpha") {
    cfg.lm_weight = ParseDouble(key, value);
  } else if (key == "beta") {
    cfg.word_bonus = ParseDouble(key, value);
  } else if (key == "sigma") {
    cfg.lookahead_scale = ParseDouble(key, value);
  } else if (key == "K") {
    cfg.swap_percent = ParseDouble(key, value);
  } else if (key == "mode") {
    auto m = ParseMode(value);
    Require(m.has_value(), "unknown mode \"" + std::string(value) + "\"");
    cfg.mode = *m;
  } else if (key == "sentence_markers") {
    if (value == "true" || value == "1") {
      cfg.sentence_markers = true;
    } else if (value == "false" || value == "0") {
      cfg.sentence_markers = false;
    } else {
      throw Error(ErrorCode::kInvalidConfig,
                  "sentence_markers must be true or false");
    }
  } else {
    throw Error(ErrorCode::kInvalidConfig,
                "unknown config key \"" + std::string(key) + "\"");
  }
}

DecodeConfig ParseConfig(std::string_view text, DecodeConfig base) {
  int line_no = 0;
  for (const std::string& raw : SplitOn(text, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kInvalidConfig,
                  "line " + std::to_string(line_no) + ": expected key=value");
    }
    SetConfigValue(base, Trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  base.Validate();
  return base;
}

DecodeConfig LoadConfig(const std::filesystem::path& path, DecodeConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseConfig(ss.str(), base);
}

std::string FormatConfig(const DecodeConfig& cfg) {
  std::ostringstream out;
  out << "mode=" << ModeName(cfg.mode) << '\n'
      << "N=" << cfg.beam_width << '\n'
      << "C=" << FormatDouble(cfg.cumulative_mass) << '\n'
      << "lambda=" << FormatDouble(cfg.unigram_scale) << '\n'
      << "delta=" << FormatDouble(cfg.oov_penalty) << '\n'
      << "gamma=" << FormatDouble(cfg.bias_boost) << '\n'
      << "alpha=" << FormatDouble(cfg.lm_weight) << '\n'
      << "beta=" << FormatDouble(cfg.word_bonus) << '\n'
      << "sigma=" << FormatDouble(cfg.lookahead_scale) << '\n'
      << "K=" << FormatDouble(cfg.swap_percent) << '\n'
      << "sentence_markers=" << (cfg.sentence_markers ? "true" : "false")
      << '\n';
  return out.str();
}

}  // namespace biasdec
