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

#include "biasdec/logit_matrix.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include "biasdec/error.h"

namespace biasdec {

LogitMatrix::LogitMatrix(int frames, int symbols, std::vector<float> values)
    : frames_(frames), symbols_(symbols), values_(std::move(values)) {
  if (frames < 0 || symbols <= 0) {
    throw Error(ErrorCode::kDimensionMismatch,
                "invalid shape " + std::to_string(frames) + "x" +
                    std::to_string(symbols));
  }
  if (values_.size() != static_cast<std::size_t>(frames) * symbols) {
    throw Error(ErrorCode::kDimensionMismatch,
                "expected " + std::to_string(frames) + "x" +
                    std::to_string(symbols) + " values, got " +
                    std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    float v = values_[i];
    if (!(v >= 0.0f && v <= 1.0f)) {
      std::ostringstream msg;
      msg << "entry (" << i / symbols << ", " << i % symbols << ") = " << v
          << " outside [0, 1]";
      throw Error(ErrorCode::kValueOutOfRange, msg.str());
    }
  }
  int worst_row = -1;
  double worst = 0.0;
  for (int t = 0; t < frames_; ++t) {
    double sum = 0.0;
    for (float v : row(t)) sum += v;
    double dev = std::abs(sum - 1.0);
    if (dev > worst) {
      worst = dev;
      worst_row = t;
    }
  }
  if (worst > kRowTolerance) {
    std::ostringstream msg;
    msg << "row " << worst_row << " deviates from 1 by " << worst;
    throw Error(ErrorCode::kRowNotNormalized, msg.str());
  }
}

double LogitMatrix::MaxRowDeviation() const {
  double worst = 0.0;
  for (int t = 0; t < frames_; ++t) {
    double sum = 0.0;
    for (float v : row(t)) sum += v;
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

namespace {

static_assert(sizeof(float) == 4 && std::numeric_limits<float>::is_iec559);

void PutU32(std::vector<char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint32_t GetU32(std::span<const char> bytes, std::size_t offset) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[offset + i]))
         << (8 * i);
  }
  return v;
}

constexpr std::size_t kHeaderBytes = 16;

}  // namespace

std::vector<char> EncodeLogits(const LogitMatrix& m) {
  std::vector<char> out;
  out.reserve(kHeaderBytes + m.values().size() * 4);
  out.insert(out.end(), std::begin(kLogitMagic), std::end(kLogitMagic));
  PutU32(out, kLogitVersion);
  PutU32(out, static_cast<std::uint32_t>(m.frames()));
  PutU32(out, static_cast<std::uint32_t>(m.symbols()));
  for (float v : m.values()) PutU32(out, std::bit_cast<std::uint32_t>(v));
  return out;
}

LogitMatrix DecodeLogits(std::span<const char> bytes) {
  if (bytes.size() < kHeaderBytes ||
      std::memcmp(bytes.data(), kLogitMagic, 4) != 0) {
    throw Error(ErrorCode::kMalformedHeader, "missing CTCP magic");
  }
  std::uint32_t version = GetU32(bytes, 4);
  if (version != kLogitVersion) {
    throw Error(ErrorCode::kMalformedHeader,
                "unsupported version " + std::to_string(version));
  }
  std::uint64_t frames = GetU32(bytes, 8);
  std::uint64_t symbols = GetU32(bytes, 12);
  if (symbols == 0 || frames > 0x7FFFFFFF || symbols > 0x7FFFFFFF) {
    throw Error(ErrorCode::kMalformedHeader,
                "bad shape " + std::to_string(frames) + "x" +
                    std::to_string(symbols));
  }
  std::uint64_t payload = bytes.size() - kHeaderBytes;
  if (payload != frames * symbols * 4) {
    throw Error(ErrorCode::kDimensionMismatch,
                "header declares " + std::to_string(frames) + "x" +
                    std::to_string(symbols) + " but payload holds " +
                    std::to_string(payload) + " bytes");
  }
  std::vector<float> values(frames * symbols);
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = std::bit_cast<float>(GetU32(bytes, kHeaderBytes + 4 * i));
  }
  return LogitMatrix(static_cast<int>(frames), static_cast<int>(symbols),
                     std::move(values));
}

LogitMatrix LoadLogits(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  }
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  return DecodeLogits(bytes);
}

void SaveLogits(const LogitMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
  }
  std::vector<char> bytes = EncodeLogits(m);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw Error(ErrorCode::kIoFailure, "write failed: " + path.string());
}

}  // namespace biasdec
