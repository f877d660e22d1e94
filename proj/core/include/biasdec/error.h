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

#ifndef BIASDEC_ERROR_H_
#define BIASDEC_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace biasdec {

enum class ErrorCode {
  kIoFailure,
  kMalformedHeader,
  kDimensionMismatch,
  kRowNotNormalized,
  kValueOutOfRange,
  kDuplicateSymbol,
  kMissingReserved,
  kBadSymbol,
  kSectionMissing,
  kCountMismatch,
  kBadRecord,
  kEmptyWord,
  kInvalidConfig,
  kEmptyBeam,
  kBaseZero,
  kEmptyCorpus,
  kSymbolOutOfAlphabet,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception. The code lets
// callers (and the CLI's exit-code mapping) dispatch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace biasdec

#endif  // BIASDEC_ERROR_H_
