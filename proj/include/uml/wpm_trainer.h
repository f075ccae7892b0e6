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

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "uml/corpus.h"
#include "uml/vocab.h"

namespace uml {

struct WpmTrainResult {
  Vocab vocab;  // vocab.merges mirrors `merges`
  std::vector<MergeRule> merges;
};

/// Induces a wordpiece vocabulary of at most `target_size` tokens
/// (specials included) with greedy highest-count pair merges.
///
/// The base alphabet holds every character variant (word-initial "▁c" and
/// word-internal "c" are distinct) seen at least `min_char_count` times.
/// Characters below the threshold are left out and block merges across them.
/// Merging stops once the vocabulary is full or no pair occurs twice. Ties
/// go to the lexicographically smallest (left, right).
///
/// Throws kVocabTruncation when specials plus the base alphabet exceed
/// `target_size`; the message carries the minimum size that would fit.
WpmTrainResult train_wpm(const std::vector<Utterance>& corpus, int target_size,
                         int min_char_count, std::string group_name = "default");

/// Character variants with their counts, sorted by token string.
std::vector<std::pair<std::string, std::size_t>> character_variants(
    const std::vector<Utterance>& corpus);

/// Smallest min_char_count for which specials plus the base alphabet fit in
/// `target_size`. Used to emulate vocabularies that drop rare characters.
int min_char_count_for_budget(const std::vector<Utterance>& corpus, int target_size);

struct OovStats {
  std::size_t total_chars = 0;
  std::size_t unencodable_chars = 0;
  double coverage = 1.0;
};

/// A character is unencodable iff its required variant is missing from the
/// vocabulary. Whitespace is not counted. Byte vocabularies cover everything.
OovStats coverage_report(const Vocab& vocab, const std::vector<Utterance>& corpus);

}  // namespace uml
