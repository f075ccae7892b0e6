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

#include "uml/uml_tokenizer.h"

#include <algorithm>
#include <sstream>

#include "uml/byte_codec.h"
#include "uml/error.h"
#include "uml/unicode.h"

namespace uml {

namespace {

std::string join(const std::vector<std::string>& chars, std::size_t from, std::size_t len) {
  std::string out;
  for (std::size_t i = from; i < from + len; ++i) out += chars[i];
  return out;
}

// Greedy longest match over one word. `find` returns the node of a token
// string or -1.
template <typename Find>
void segment_word(std::string_view word, int max_chars, const Find& find,
                  std::vector<Piece>& out) {
  const std::vector<std::string> chars = split_code_points(word);
  std::size_t pos = 0;
  while (pos < chars.size()) {
    const std::size_t longest =
        std::min(chars.size() - pos, static_cast<std::size_t>(max_chars));
    bool matched = false;
    for (std::size_t len = longest; len >= 1; --len) {
      std::string piece = join(chars, pos, len);
      if (pos == 0) piece.insert(0, kWordMarker);
      const int node = find(piece);
      if (node >= 0) {
        out.push_back({node, std::move(piece)});
        pos += len;
        matched = true;
        break;
      }
    }
    if (!matched) {
      out.push_back({kUnkNode, chars[pos]});
      ++pos;
    }
  }
}

std::string join_wordpieces(const std::vector<std::string_view>& tokens) {
  std::string joined;
  for (auto t : tokens) joined += t;
  std::string out;
  std::size_t pos = 0;
  while (pos < joined.size()) {
    if (joined.compare(pos, kWordMarker.size(), kWordMarker) == 0) {
      out += ' ';
      pos += kWordMarker.size();
    } else {
      out += joined[pos++];
    }
  }
  const auto first = out.find_first_not_of(' ');
  if (first == std::string::npos) return {};
  const auto last = out.find_last_not_of(' ');
  return out.substr(first, last - first + 1);
}

void reject_special(int node, std::size_t position) {
  if (node == kBlankNode || node == kPadNode) {
    throw Error(ErrorCode::kInvalidArgument,
                "decode: special node " + std::to_string(node) + " at position " +
                    std::to_string(position));
  }
}

}  // namespace

std::vector<Piece> encode_pieces(std::string_view text, std::string_view lid,
                                 const UmlTable& table) {
  const int group = table.group_of_language(lid);
  if (table.unit_type(group) == UnitType::kByte) {
    std::vector<Piece> out;
    for (int node : encode_bytes(text, table.special_count())) {
      out.push_back({node, table.lookup(group, node)});
    }
    return out;
  }
  std::vector<Piece> out;
  const auto find = [&](const std::string& piece) {
    auto node = table.node_of(group, piece);
    return node ? *node : -1;
  };
  for (auto word : split_words(text)) {
    segment_word(word, table.max_token_chars(group), find, out);
  }
  return out;
}

std::vector<int> encode_group(std::string_view text, int group, const UmlTable& table) {
  if (table.unit_type(group) == UnitType::kByte) {
    return encode_bytes(text, table.special_count());
  }
  std::vector<Piece> pieces;
  const auto find = [&](const std::string& piece) {
    auto node = table.node_of(group, piece);
    return node ? *node : -1;
  };
  for (auto word : split_words(text)) {
    segment_word(word, table.max_token_chars(group), find, pieces);
  }
  std::vector<int> nodes;
  nodes.reserve(pieces.size());
  for (const auto& p : pieces) nodes.push_back(p.node);
  return nodes;
}

std::vector<int> encode(std::string_view text, std::string_view lid, const UmlTable& table) {
  return encode_group(text, table.group_of_language(lid), table);
}

std::string decode_group(std::span<const int> nodes, int group, const UmlTable& table) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] < 0 || nodes[i] >= table.valid_size(group)) {
      throw Error(ErrorCode::kOutOfGroupRange,
                  "decode: node " + std::to_string(nodes[i]) + " is invalid for group " +
                      table.group_name(group));
    }
    reject_special(nodes[i], i);
  }
  if (table.unit_type(group) == UnitType::kByte) {
    for (int node : nodes) {
      if (node == kUnkNode) {
        throw Error(ErrorCode::kInvalidArgument, "decode: <unk> in a byte group");
      }
    }
    return decode_bytes(nodes, table.special_count());
  }
  std::vector<std::string_view> tokens;
  tokens.reserve(nodes.size());
  for (int node : nodes) {
    tokens.push_back(node == kUnkNode ? kUnkGlyph
                                      : std::string_view(table.lookup(group, node)));
  }
  return join_wordpieces(tokens);
}

std::string decode(std::span<const int> nodes, std::string_view lid, const UmlTable& table) {
  return decode_group(nodes, table.group_of_language(lid), table);
}

// ---------------------------------------------------------------------------

MonolingualTokenizer::MonolingualTokenizer(Vocab vocab) : vocab_(std::move(vocab)) {
  for (int i = 0; i < vocab_.size(); ++i) {
    ids_.emplace(vocab_.tokens[i], i);
    if (i >= vocab_.special_count && vocab_.unit_type == UnitType::kWpm) {
      max_piece_chars_ = std::max(
          max_piece_chars_, static_cast<int>(split_code_points(vocab_.tokens[i]).size()));
    }
  }
}

std::vector<int> MonolingualTokenizer::encode(std::string_view text) const {
  if (vocab_.unit_type == UnitType::kByte) return encode_bytes(text, vocab_.special_count);
  std::vector<Piece> pieces;
  const auto find = [&](const std::string& piece) {
    auto it = ids_.find(piece);
    return it == ids_.end() ? -1 : it->second;
  };
  for (auto word : split_words(text)) segment_word(word, max_piece_chars_, find, pieces);
  std::vector<int> nodes;
  for (const auto& p : pieces) nodes.push_back(p.node);
  return nodes;
}

std::string MonolingualTokenizer::decode(std::span<const int> nodes) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] < 0 || nodes[i] >= vocab_.size()) {
      throw Error(ErrorCode::kOutOfGroupRange,
                  "decode: node " + std::to_string(nodes[i]) + " out of range");
    }
    reject_special(nodes[i], i);
  }
  if (vocab_.unit_type == UnitType::kByte) return decode_bytes(nodes, vocab_.special_count);
  std::vector<std::string_view> tokens;
  for (int node : nodes) {
    tokens.push_back(node == kUnkNode ? kUnkGlyph : std::string_view(vocab_.tokens[node]));
  }
  return join_wordpieces(tokens);
}

// ---------------------------------------------------------------------------

EquivalenceReport equivalence_check(const UmlTable& table,
                                    const std::map<std::string, Vocab>& monolingual_vocabs,
                                    const std::vector<Utterance>& utterances) {
  std::map<std::string, MonolingualTokenizer> standalone;
  for (const auto& [code, vocab] : monolingual_vocabs) standalone.emplace(code, vocab);

  EquivalenceReport report;
  auto mismatch = [&](std::size_t i, const std::string& what) {
    report.equal = false;
    report.diffs.push_back("utterance " + std::to_string(i) + " (" +
                           utterances[i].lid.code + "): " + what);
  };
  auto show = [](const std::vector<int>& nodes) {
    std::ostringstream os;
    for (std::size_t i = 0; i < nodes.size(); ++i) os << (i ? " " : "") << nodes[i];
    return os.str();
  };
  for (std::size_t i = 0; i < utterances.size(); ++i) {
    const auto& u = utterances[i];
    auto it = standalone.find(u.lid.code);
    if (it == standalone.end()) {
      mismatch(i, "no standalone vocabulary");
      continue;
    }
    const std::vector<int> uml_nodes = encode(u.text, u.lid.code, table);
    const std::vector<int> mono_nodes = it->second.encode(u.text);
    if (uml_nodes != mono_nodes) {
      mismatch(i, "encode [" + show(uml_nodes) + "] vs [" + show(mono_nodes) + "]");
      continue;
    }
    const std::string uml_text = decode(uml_nodes, u.lid.code, table);
    const std::string mono_text = it->second.decode(mono_nodes);
    if (uml_text != mono_text) {
      mismatch(i, "decode '" + uml_text + "' vs '" + mono_text + "'");
    }
  }
  return report;
}

}  // namespace uml
