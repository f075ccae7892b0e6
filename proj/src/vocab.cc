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

#include "uml/vocab.h"

#include <openssl/sha.h>

#include <cstdio>

#include "json.hpp"

#include "uml/error.h"

namespace uml {

namespace {
constexpr int kVocabVersion = 1;
}

std::string_view unit_type_name(UnitType type) {
  return type == UnitType::kByte ? "byte" : "wpm";
}

UnitType parse_unit_type(std::string_view name) {
  if (name == "wpm") return UnitType::kWpm;
  if (name == "byte") return UnitType::kByte;
  throw Error(ErrorCode::kSchema, "unknown unit_type: " + std::string(name));
}

std::string byte_token(int byte) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "<0x%02X>", byte & 0xFF);
  return buf;
}

Vocab make_byte_vocab(std::string group_name) {
  Vocab v;
  v.group_name = std::move(group_name);
  v.unit_type = UnitType::kByte;
  for (auto s : kSpecialTokens) v.tokens.emplace_back(s);
  for (int b = 0; b < 256; ++b) v.tokens.push_back(byte_token(b));
  return v;
}

std::string vocab_to_json(const Vocab& vocab) {
  nlohmann::ordered_json j;
  j["version"] = kVocabVersion;
  j["group_name"] = vocab.group_name;
  j["unit_type"] = unit_type_name(vocab.unit_type);
  j["special_count"] = vocab.special_count;
  j["tokens"] = vocab.tokens;
  auto merges = nlohmann::ordered_json::array();
  for (const auto& m : vocab.merges) merges.push_back({m.left, m.right});
  j["merges"] = std::move(merges);
  return j.dump();
}

Vocab vocab_from_json(std::string_view json) {
  nlohmann::json j = nlohmann::json::parse(json, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(ErrorCode::kSchema, "vocab: not a JSON object");
  }
  try {
    if (j.at("version").get<int>() != kVocabVersion) {
      throw Error(ErrorCode::kVersionMismatch,
                  "vocab: unsupported version " + j.at("version").dump());
    }
    Vocab v;
    v.group_name = j.at("group_name").get<std::string>();
    v.unit_type = parse_unit_type(j.at("unit_type").get<std::string>());
    v.special_count = j.at("special_count").get<int>();
    v.tokens = j.at("tokens").get<std::vector<std::string>>();
    int rank = 0;
    for (const auto& m : j.at("merges")) {
      if (!m.is_array() || m.size() != 2) {
        throw Error(ErrorCode::kSchema, "vocab: merge entries are [left, right]");
      }
      v.merges.push_back({m[0].get<std::string>(), m[1].get<std::string>(), rank++});
    }
    if (v.special_count < 0 || v.special_count > v.size()) {
      throw Error(ErrorCode::kSchema, "vocab: special_count out of range");
    }
    return v;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("vocab: ") + e.what());
  }
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), digest);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * SHA256_DIGEST_LENGTH);
  for (unsigned char c : digest) {
    out.push_back(kHex[c >> 4]);
    out.push_back(kHex[c & 15]);
  }
  return out;
}

std::string vocab_hash(const Vocab& vocab) { return sha256_hex(vocab_to_json(vocab)); }

}  // namespace uml
