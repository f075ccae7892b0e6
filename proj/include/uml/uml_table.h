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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "uml/corpus.h"
#include "uml/vocab.h"

namespace uml {

struct SchemeGroup {
  std::string name;
  UnitType unit_type = UnitType::kWpm;
  std::vector<std::string> languages;

  friend bool operator==(const SchemeGroup&, const SchemeGroup&) = default;
};

/// Partition of languages into vocabulary groups. Group order is the
/// declaration order; groups are identified by name in all files.
struct GroupingScheme {
  std::string name;
  std::vector<SchemeGroup> groups;

  /// Throws kSchema unless every language sits in exactly one group and
  /// group names are unique and non-empty.
  void validate() const;

  int group_index(std::string_view group_name) const;   // -1 if absent
  int group_of_language(std::string_view code) const;   // -1 if absent
  /// All languages in group declaration order.
  std::vector<std::string> languages() const;

  friend bool operator==(const GroupingScheme&, const GroupingScheme&) = default;
};

std::string scheme_to_json(const GroupingScheme& scheme);
GroupingScheme scheme_from_json(std::string_view json);

/// The eleven language codes of the reference multilingual setup.
const std::vector<std::string>& reference_languages();

/// Named reference groupings over reference_languages(): "G1" (all pooled),
/// "G11" (one group per language), "G7" (Germanic and Romance grouped),
/// "G5" (Latin-script and CJK grouped), "G6" (G5 with zh/ja split) and
/// "G5Mix" (G5 with byte units for the CJK group).
GroupingScheme reference_scheme(std::string_view name);

/// Output-layer size comparison for H-dim inputs and per-group sizes.
struct ParamComparison {
  std::int64_t uml_params = 0;       // H * max(V_l)
  std::int64_t pooled_params = 0;    // H * sum(V_l)
  std::int64_t separate_params = 0;  // H * sum(V_l)
};

/// Folded output layer: node indices [0, vocab_size) shared by all groups,
/// each group interpreting them through its own vocabulary. Nodes at or
/// above a group's valid size are masked for that group.
class UmlTable {
 public:
  /// Throws kSchema if a group lacks a vocab, unit types disagree, special
  /// regions differ, or a group has duplicate tokens.
  static UmlTable build(const GroupingScheme& scheme,
                        const std::map<std::string, Vocab>& vocabs);

  const GroupingScheme& scheme() const { return scheme_; }
  int num_groups() const { return static_cast<int>(vocabs_.size()); }
  const Vocab& vocab(int group) const { return vocabs_.at(group); }
  const std::string& group_name(int group) const { return vocabs_.at(group).group_name; }

  /// Throws kSchema for an unknown group.
  int group_index(std::string_view group_name) const;
  /// Throws kUnknownLanguage.
  int group_of_language(std::string_view code) const;

  int vocab_size() const { return vocab_size_; }  // V_out
  int special_count() const { return special_count_; }
  int valid_size(int group) const { return vocabs_.at(group).size(); }
  UnitType unit_type(int group) const { return vocabs_.at(group).unit_type; }

  /// Token at `node` for `group`. Throws kOutOfGroupRange past valid_size.
  const std::string& lookup(int group, int node) const;
  const std::string& lookup(std::string_view group_name, int node) const {
    return lookup(group_index(group_name), node);
  }
  std::optional<int> node_of(int group, std::string_view token) const;

  /// mask[i] is true iff i < valid_size(group).
  std::vector<bool> valid_mask(int group) const;
  std::vector<bool> valid_mask(std::string_view group_name) const {
    return valid_mask(group_index(group_name));
  }

  /// Longest token length in code points per group (for segmentation).
  int max_token_chars(int group) const { return max_token_chars_.at(group); }

  ParamComparison param_comparison(std::int64_t hidden) const;

  friend bool operator==(const UmlTable& a, const UmlTable& b) {
    return a.scheme_ == b.scheme_ && a.vocabs_ == b.vocabs_;
  }

 private:
  GroupingScheme scheme_;
  std::vector<Vocab> vocabs_;  // scheme group order
  std::vector<std::unordered_map<std::string, int>> index_;
  std::vector<int> max_token_chars_;
  int vocab_size_ = 0;
  int special_count_ = kSpecialCount;
};

/// Versioned JSON; each vocab is embedded with its content hash and the
/// whole body carries a checksum. Stable field order.
std::string serialize_table(const UmlTable& table);
/// Throws kSchema (malformed or truncated), kVersionMismatch or
/// kChecksumMismatch. Never returns a partial table.
UmlTable deserialize_table(std::string_view data);

}  // namespace uml
