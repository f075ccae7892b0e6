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

#include "uml/uml_table.h"

#include <algorithm>
#include <set>

#include "json.hpp"

#include "uml/error.h"
#include "uml/unicode.h"

namespace uml {

namespace {
constexpr int kTableVersion = 1;
}

// ---------------------------------------------------------------------------
// GroupingScheme

void GroupingScheme::validate() const {
  if (groups.empty()) throw Error(ErrorCode::kSchema, "scheme " + name + ": no groups");
  std::set<std::string> group_names, langs;
  for (const auto& g : groups) {
    if (g.name.empty()) throw Error(ErrorCode::kSchema, "scheme: empty group name");
    if (!group_names.insert(g.name).second) {
      throw Error(ErrorCode::kSchema, "scheme: duplicate group " + g.name);
    }
    for (const auto& l : g.languages) {
      if (!langs.insert(l).second) {
        throw Error(ErrorCode::kSchema,
                    "scheme: language " + l + " assigned to more than one group");
      }
    }
  }
}

int GroupingScheme::group_index(std::string_view group_name) const {
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i].name == group_name) return static_cast<int>(i);
  }
  return -1;
}

int GroupingScheme::group_of_language(std::string_view code) const {
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const auto& langs = groups[i].languages;
    if (std::find(langs.begin(), langs.end(), code) != langs.end()) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

std::vector<std::string> GroupingScheme::languages() const {
  std::vector<std::string> out;
  for (const auto& g : groups) out.insert(out.end(), g.languages.begin(), g.languages.end());
  return out;
}

namespace {

nlohmann::ordered_json scheme_json(const GroupingScheme& scheme) {
  nlohmann::ordered_json j;
  j["name"] = scheme.name;
  auto groups = nlohmann::ordered_json::array();
  for (const auto& g : scheme.groups) {
    nlohmann::ordered_json jg;
    jg["name"] = g.name;
    jg["unit_type"] = unit_type_name(g.unit_type);
    jg["languages"] = g.languages;
    groups.push_back(std::move(jg));
  }
  j["groups"] = std::move(groups);
  return j;
}

GroupingScheme scheme_from(const nlohmann::json& j) {
  GroupingScheme s;
  try {
    s.name = j.at("name").get<std::string>();
    for (const auto& jg : j.at("groups")) {
      SchemeGroup g;
      g.name = jg.at("name").get<std::string>();
      g.unit_type = parse_unit_type(jg.value("unit_type", std::string("wpm")));
      g.languages = jg.at("languages").get<std::vector<std::string>>();
      s.groups.push_back(std::move(g));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("scheme: ") + e.what());
  }
  s.validate();
  return s;
}

}  // namespace

std::string scheme_to_json(const GroupingScheme& scheme) { return scheme_json(scheme).dump(2); }

GroupingScheme scheme_from_json(std::string_view json) {
  nlohmann::json j = nlohmann::json::parse(json, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(ErrorCode::kSchema, "scheme: not a JSON object");
  }
  return scheme_from(j);
}

const std::vector<std::string>& reference_languages() {
  static const std::vector<std::string> kLangs = {"ar", "de", "en", "es", "fr", "hi",
                                                  "it", "ja", "pt", "ru", "zh"};
  return kLangs;
}

GroupingScheme reference_scheme(std::string_view name) {
  using G = SchemeGroup;
  const auto wpm = UnitType::kWpm;
  const std::vector<std::string> latin = {"de", "en", "es", "fr", "it", "pt"};
  GroupingScheme s;
  s.name = std::string(name);
  if (name == "G1") {
    s.groups = {G{"all", wpm, reference_languages()}};
  } else if (name == "G11") {
    for (const auto& l : reference_languages()) s.groups.push_back(G{l, wpm, {l}});
  } else if (name == "G7") {
    s.groups = {G{"ar", wpm, {"ar"}},
                G{"germanic", wpm, {"de", "en"}},
                G{"romance", wpm, {"es", "fr", "it", "pt"}},
                G{"hi", wpm, {"hi"}},
                G{"ja", wpm, {"ja"}},
                G{"ru", wpm, {"ru"}},
                G{"zh", wpm, {"zh"}}};
  } else if (name == "G5" || name == "G5Mix") {
    const auto cjk_units = name == "G5Mix" ? UnitType::kByte : wpm;
    s.groups = {G{"ar", wpm, {"ar"}}, G{"latin", wpm, latin}, G{"hi", wpm, {"hi"}},
                G{"cjk", cjk_units, {"ja", "zh"}}, G{"ru", wpm, {"ru"}}};
  } else if (name == "G6") {
    s.groups = {G{"ar", wpm, {"ar"}}, G{"latin", wpm, latin}, G{"hi", wpm, {"hi"}},
                G{"ja", wpm, {"ja"}},   G{"ru", wpm, {"ru"}},    G{"zh", wpm, {"zh"}}};
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown reference scheme: " + std::string(name));
  }
  return s;
}

// ---------------------------------------------------------------------------
// UmlTable

UmlTable UmlTable::build(const GroupingScheme& scheme,
                         const std::map<std::string, Vocab>& vocabs) {
  scheme.validate();
  UmlTable t;
  t.scheme_ = scheme;
  for (const auto& g : scheme.groups) {
    auto it = vocabs.find(g.name);
    if (it == vocabs.end()) {
      throw Error(ErrorCode::kSchema, "build_table: no vocab for group " + g.name);
    }
    Vocab v = it->second;
    v.group_name = g.name;
    if (v.unit_type != g.unit_type) {
      throw Error(ErrorCode::kSchema, "build_table: group " + g.name + " expects " +
                                          std::string(unit_type_name(g.unit_type)) +
                                          " units");
    }
    if (v.special_count != kSpecialCount || v.size() < kSpecialCount) {
      throw Error(ErrorCode::kSchema,
                  "build_table: group " + g.name + " has a different special region");
    }
    for (int i = 0; i < kSpecialCount; ++i) {
      if (v.tokens[i] != kSpecialTokens[i]) {
        throw Error(ErrorCode::kSchema, "build_table: group " + g.name +
                                            " disagrees on special token " +
                                            std::to_string(i));
      }
    }
    std::unordered_map<std::string, int> index;
    int max_chars = 1;
    for (int i = 0; i < v.size(); ++i) {
      if (!index.emplace(v.tokens[i], i).second) {
        throw Error(ErrorCode::kSchema, "build_table: duplicate token '" + v.tokens[i] +
                                            "' in group " + g.name);
      }
      if (i >= kSpecialCount && v.unit_type == UnitType::kWpm) {
        max_chars = std::max(max_chars,
                             static_cast<int>(split_code_points(v.tokens[i]).size()));
      }
    }
    t.vocab_size_ = std::max(t.vocab_size_, v.size());
    t.index_.push_back(std::move(index));
    t.max_token_chars_.push_back(max_chars);
    t.vocabs_.push_back(std::move(v));
  }
  return t;
}

int UmlTable::group_index(std::string_view group_name) const {
  const int g = scheme_.group_index(group_name);
  if (g < 0) throw Error(ErrorCode::kSchema, "unknown group: " + std::string(group_name));
  return g;
}

int UmlTable::group_of_language(std::string_view code) const {
  const int g = scheme_.group_of_language(code);
  if (g < 0) {
    throw Error(ErrorCode::kUnknownLanguage,
                "language " + std::string(code) + " is not in scheme " + scheme_.name);
  }
  return g;
}

const std::string& UmlTable::lookup(int group, int node) const {
  const Vocab& v = vocabs_.at(group);
  if (node < 0 || node >= v.size()) {
    throw Error(ErrorCode::kOutOfGroupRange,
                "node " + std::to_string(node) + " is outside group " + v.group_name +
                    " (valid size " + std::to_string(v.size()) + ")");
  }
  return v.tokens[node];
}

std::optional<int> UmlTable::node_of(int group, std::string_view token) const {
  const auto& index = index_.at(group);
  auto it = index.find(std::string(token));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::vector<bool> UmlTable::valid_mask(int group) const {
  std::vector<bool> mask(vocab_size_, false);
  const int n = valid_size(group);
  for (int i = 0; i < n; ++i) mask[i] = true;
  return mask;
}

ParamComparison UmlTable::param_comparison(std::int64_t hidden) const {
  ParamComparison c;
  std::int64_t total = 0, largest = 0;
  for (const auto& v : vocabs_) {
    total += v.size();
    largest = std::max<std::int64_t>(largest, v.size());
  }
  c.uml_params = hidden * largest;
  c.pooled_params = hidden * total;
  c.separate_params = hidden * total;
  return c;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

nlohmann::ordered_json table_body(const UmlTable& table) {
  nlohmann::ordered_json body;
  body["version"] = kTableVersion;
  body["scheme"] = scheme_json(table.scheme());
  body["vocab_size"] = table.vocab_size();
  body["special_count"] = table.special_count();
  auto groups = nlohmann::ordered_json::array();
  for (int g = 0; g < table.num_groups(); ++g) {
    nlohmann::ordered_json jg;
    jg["name"] = table.group_name(g);
    jg["valid_size"] = table.valid_size(g);
    jg["vocab_hash"] = vocab_hash(table.vocab(g));
    jg["vocab"] = nlohmann::ordered_json::parse(vocab_to_json(table.vocab(g)));
    groups.push_back(std::move(jg));
  }
  body["groups"] = std::move(groups);
  return body;
}

}  // namespace

std::string serialize_table(const UmlTable& table) {
  nlohmann::ordered_json body = table_body(table);
  const std::string checksum = sha256_hex(body.dump());
  body["checksum"] = checksum;
  return body.dump() + "\n";
}

UmlTable deserialize_table(std::string_view data) {
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(data, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(ErrorCode::kSchema, "table: malformed or truncated JSON");
  }
  try {
    if (j.at("version").get<int>() != kTableVersion) {
      throw Error(ErrorCode::kVersionMismatch,
                  "table: unsupported version " + j.at("version").dump());
    }
    const std::string checksum = j.at("checksum").get<std::string>();
    nlohmann::ordered_json body = j;
    body.erase("checksum");
    if (sha256_hex(body.dump()) != checksum) {
      throw Error(ErrorCode::kChecksumMismatch, "table: checksum mismatch");
    }
    const GroupingScheme scheme = scheme_from(nlohmann::json::parse(j.at("scheme").dump()));
    std::map<std::string, Vocab> vocabs;
    for (const auto& jg : j.at("groups")) {
      Vocab v = vocab_from_json(jg.at("vocab").dump());
      if (vocab_hash(v) != jg.at("vocab_hash").get<std::string>()) {
        throw Error(ErrorCode::kChecksumMismatch,
                    "table: vocab hash mismatch for group " + v.group_name);
      }
      vocabs.emplace(jg.at("name").get<std::string>(), std::move(v));
    }
    UmlTable table = UmlTable::build(scheme, vocabs);
    if (table.vocab_size() != j.at("vocab_size").get<int>()) {
      throw Error(ErrorCode::kSchema, "table: vocab_size disagrees with vocabs");
    }
    return table;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("table: ") + e.what());
  }
}

}  // namespace uml
