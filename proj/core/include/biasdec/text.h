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

#ifndef BIASDEC_TEXT_H_
#define BIASDEC_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace biasdec {

// Lowercases ASCII letters; other bytes pass through untouched.
std::string ToLower(std::string_view s);

// Splits on runs of ASCII whitespace, dropping empty tokens.
std::vector<std::string> SplitWords(std::string_view s);

// Splits on a single character, keeping empty fields.
std::vector<std::string> SplitOn(std::string_view s, char sep);

std::string_view Trim(std::string_view s);

// Lowercase, single-space separated, no leading or trailing whitespace.
std::string NormalizeTranscript(std::string_view s);

std::string Join(const std::vector<std::string>& words, std::string_view sep);

// Decodes UTF-8 into code points. Invalid bytes decode as U+FFFD.
std::u32string DecodeUtf8(std::string_view s);
std::string EncodeUtf8(char32_t cp);

}  // namespace biasdec

#endif  // BIASDEC_TEXT_H_
