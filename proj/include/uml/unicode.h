// Copyright 2026 The UML Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace uml {

/// Word-boundary marker prefixed to word-initial pieces (U+2581).
inline constexpr std::string_view kWordMarker = "\xE2\x96\x81";

/// Rendering of <unk> in decoded text (U+2047). One per unencodable character.
inline constexpr std::string_view kUnkGlyph = "\xE2\x81\x87";

/// True iff `text` is well-formed UTF-8 (no overlongs, surrogates or
/// code points above U+10FFFF).
bool is_valid_utf8(std::string_view text);

/// Splits UTF-8 text into one string per code point. Throws kInvalidUtf8.
std::vector<std::string> split_code_points(std::string_view text);

std::string encode_code_point(char32_t cp);

/// NFC, Unicode whitespace runs collapsed to one ASCII space, trimmed.
/// Optional full lowercasing. Throws kInvalidUtf8 on malformed input.
std::string normalize_text(std::string_view text, bool lowercase = false);

/// Splits on ASCII spaces, dropping empty fields.
std::vector<std::string_view> split_words(std::string_view text);

}  // namespace uml
