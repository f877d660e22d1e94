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

#ifndef BIASDEC_LOGIT_MATRIX_H_
#define BIASDEC_LOGIT_MATRIX_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace biasdec {

// T x A matrix of per-frame posteriors (softmax already applied), row major.
// Construction validates that every entry lies in [0, 1] and every row sums
// to one within kRowTolerance.
class LogitMatrix {
 public:
  static constexpr double kRowTolerance = 1e-4;

  LogitMatrix(int frames, int symbols, std::vector<float> values);

  int frames() const { return frames_; }
  int symbols() const { return symbols_; }

  std::span<const float> row(int t) const {
    return {values_.data() + static_cast<std::size_t>(t) * symbols_,
            static_cast<std::size_t>(symbols_)};
  }
  float at(int t, int a) const {
    return values_[static_cast<std::size_t>(t) * symbols_ + a];
  }
  const std::vector<float>& values() const { return values_; }

  // Largest |row sum - 1| over all rows.
  double MaxRowDeviation() const;

  friend bool operator==(const LogitMatrix&, const LogitMatrix&) = default;

 private:
  int frames_;
  int symbols_;
  std::vector<float> values_;
};

// Posterior file: "CTCP", u32 version (1), u32 T, u32 A, then T*A
// little-endian f32 values, row major.
inline constexpr char kLogitMagic[4] = {'C', 'T', 'C', 'P'};
inline constexpr std::uint32_t kLogitVersion = 1;

LogitMatrix LoadLogits(const std::filesystem::path& path);
void SaveLogits(const LogitMatrix& m, const std::filesystem::path& path);

std::vector<char> EncodeLogits(const LogitMatrix& m);
LogitMatrix DecodeLogits(std::span<const char> bytes);

}  // namespace biasdec

#endif  // BIASDEC_LOGIT_MATRIX_H_
