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

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "uml/corpus.h"
#include "uml/uml_table.h"
#include "uml/vocab.h"

namespace uml {

/// One emitted unit and the text it stands for. For <unk> the surface is
/// the single character it replaced.
struct Piece {
  int node = 0;
  std::string surface;

  friend bool operator==(const Piece&, const Piece&) = default;
};

// LID-switched tokenization over a UmlTable. The language selects a group;
// the group's vocabulary alone decides segmentation and interpretation.
//
// WPM groups segment each space-delimited word by greedy longest match
// (word-initial piece first). A character with no matching piece becomes
// <unk> and consumes exactly one character. Byte groups emit UTF-8 bytes.

std::vector<Piece> encode_pieces(std::string_view text, std::string_view lid,
                                 const UmlTable& table);
std::vector<int> encode(std::string_view text, std::string_view lid,
                        const UmlTable& table);
std::vector<int> encode_group(std::string_view text, int group, const UmlTable& table);

/// Inverse of encode. <unk> renders as U+2047. Throws kOutOfGroupRange for
/// nodes past the group's valid size, kInvalidArgument for <blank>/<pad>, and
/// kInvalidUtf8 for malformed byte streams.
std::string decode(std::span<const int> nodes, std::string_view lid,
                   const UmlTable& table);
std::string decode_group(std::span<const int> nodes, int group, const UmlTable& table);

/// Standalone tokenizer over a single vocabulary, independent of any table.
class MonolingualTokenizer {
 public:
  explicit MonolingualTokenizer(Vocab vocab);

  std::vector<int> encode(std::string_view text) const;
  std::string decode(std::span<const int> nodes) const;
  const Vocab& vocab() const { return vocab_; }

 private:
  Vocab vocab_;
  std::unordered_map<std::string, int> ids_;
  int max_piece_chars_ = 1;
};

struct EquivalenceReport {
  bool equal = true;
  std::vector<std::string> diffs;  // one line per mismatching utterance
};

/// Compares UML encode/decode against standalone tokenizers built from
/// `monolingual_vocabs` (keyed by language code) on every utterance.
EquivalenceReport equivalence_check(const UmlTable& table,
                                    const std::map<std::string, Vocab>& monolingual_vocabs,
                                    const std::vector<Utterance>& utterances);

}  // namespace uml
