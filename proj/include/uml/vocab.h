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

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace uml {

// Canonical special tokens. They occupy nodes [0, kSpecialCount) in every
// group so that blank emission means the same thing regardless of language.
inline constexpr int kBlankNode = 0;
inline constexpr int kUnkNode = 1;
inline constexpr int kPadNode = 2;
inline constexpr int kSpecialCount = 3;
inline constexpr std::array<std::string_view, kSpecialCount> kSpecialTokens = {
    "<blank>", "<unk>", "<pad>"};

enum class UnitType { kWpm, kByte };

std::string_view unit_type_name(UnitType type);
UnitType parse_unit_type(std::string_view name);

struct MergeRule {
  std::string left;
  std::string right;
  int rank = 0;

  friend bool operator==(const MergeRule&, const MergeRule&) = default;
};

/// An ordered subword vocabulary for one group. Index in `tokens` is the
/// output node the token occupies.
struct Vocab {
  std::string group_name;
  UnitType unit_type = UnitType::kWpm;
  int special_count = kSpecialCount;
  std::vector<std::string> tokens;
  std::vector<MergeRule> merges;  // empty for byte vocabs

  int size() const { return static_cast<int>(tokens.size()); }

  friend bool operator==(const Vocab&, const Vocab&) = default;
};

/// Specials followed by one "<0xHH>" token per byte value.
Vocab make_byte_vocab(std::string group_name);

/// "<0xHH>" for byte b.
std::string byte_token(int byte);

/// Canonical JSON (stable field order). See docs in README for the schema.
std::string vocab_to_json(const Vocab& vocab);
/// Throws kSchema / kVersionMismatch.
Vocab vocab_from_json(std::string_view json);

/// Hex SHA-256 of the canonical JSON, used to reference vocab files.
std::string vocab_hash(const Vocab& vocab);

std::string sha256_hex(std::string_view data);

}  // namespace uml
