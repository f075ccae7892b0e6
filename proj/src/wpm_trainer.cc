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

#include "uml/wpm_trainer.h"

#include <algorithm>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "uml/error.h"
#include "uml/unicode.h"

namespace uml {

namespace {

constexpr int kBlocked = -1;

struct WordType {
  std::vector<std::string> chars;  // variants, word-initial first
  std::size_t count = 0;
};

std::vector<WordType> word_types(const std::vector<Utterance>& corpus) {
  std::map<std::string, std::size_t, std::less<>> counts;
  for (const auto& u : corpus) {
    for (auto w : split_words(u.text)) ++counts[std::string(w)];
  }
  std::vector<WordType> types;
  types.reserve(counts.size());
  for (const auto& [word, count] : counts) {
    WordType t;
    t.chars = split_code_points(word);
    t.chars.front().insert(0, kWordMarker);
    t.count = count;
    types.push_back(std::move(t));
  }
  return types;
}

std::uint64_t pair_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

}  // namespace

std::vector<std::pair<std::string, std::size_t>> character_variants(
    const std::vector<Utterance>& corpus) {
  std::map<std::string, std::size_t> counts;
  for (const auto& t : word_types(corpus)) {
    for (const auto& c : t.chars) counts[c] += t.count;
  }
  return {counts.begin(), counts.end()};
}

int min_char_count_for_budget(const std::vector<Utterance>& corpus, int target_size) {
  const auto variants = character_variants(corpus);
  std::vector<std::size_t> counts;
  for (const auto& [_, c] : variants) counts.push_back(c);
  std::sort(counts.begin(), counts.end());
  const long budget = static_cast<long>(target_size) - kSpecialCount;
  if (budget < 1) {
    throw Error(ErrorCode::kVocabTruncation,
                "target size " + std::to_string(target_size) +
                    " leaves no room after the special tokens");
  }
  std::size_t threshold = 1;
  // Raise the threshold past the smallest counts until the alphabet fits.
  std::size_t i = 0;
  while (static_cast<long>(counts.size() - i) > budget) {
    threshold = counts[i] + 1;
    while (i < counts.size() && counts[i] < threshold) ++i;
  }
  return static_cast<int>(threshold);
}

WpmTrainResult train_wpm(const std::vector<Utterance>& corpus, int target_size,
                         int min_char_count, std::string group_name) {
  if (corpus.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "train_wpm: empty corpus");
  }
  if (target_size < kSpecialCount + 1) {
    throw Error(ErrorCode::kVocabTruncation,
                "train_wpm: target size must be at least " +
                    std::to_string(kSpecialCount + 1));
  }

  std::vector<WordType> types = word_types(corpus);

  std::map<std::string, std::size_t> variant_counts;
  for (const auto& t : types) {
    for (const auto& c : t.chars) variant_counts[c] += t.count;
  }

  Vocab vocab;
  vocab.group_name = std::move(group_name);
  vocab.unit_type = UnitType::kWpm;
  for (auto s : kSpecialTokens) vocab.tokens.emplace_back(s);

  std::unordered_map<std::string, int> token_ids;
  for (const auto& [variant, count] : variant_counts) {
    if (count >= static_cast<std::size_t>(std::max(min_char_count, 1))) {
      token_ids.emplace(variant, vocab.size());
      vocab.tokens.push_back(variant);
    }
  }
  if (vocab.size() > target_size) {
    throw Error(ErrorCode::kVocabTruncation,
                "train_wpm: base alphabet needs " + std::to_string(vocab.size()) +
                    " tokens with specials; target size " +
                    std::to_string(target_size) + " is too small (minimum V = " +
                    std::to_string(vocab.size()) + ")");
  }

  // Words as symbol-id sequences; characters outside the alphabet block pairs.
  std::vector<std::vector<int>> words;
  words.reserve(types.size());
  for (const auto& t : types) {
    std::vector<int> syms;
    for (const auto& c : t.chars) {
      auto it = token_ids.find(c);
      syms.push_back(it == token_ids.end() ? kBlocked : it->second);
    }
    words.push_back(std::move(syms));
  }

  std::vector<MergeRule> merges;
  std::unordered_map<std::uint64_t, std::size_t> pair_counts;
  while (vocab.size() < target_size) {
    pair_counts.clear();
    for (std::size_t w = 0; w < words.size(); ++w) {
      const auto& syms = words[w];
      for (std::size_t i = 0; i + 1 < syms.size(); ++i) {
        if (syms[i] == kBlocked || syms[i + 1] == kBlocked) continue;
        pair_counts[pair_key(syms[i], syms[i + 1])] += types[w].count;
      }
    }

    std::uint64_t best_key = 0;
    std::size_t best_count = 0;
    for (const auto& [key, count] : pair_counts) {
      if (count < best_count) continue;
      if (count == best_count) {
        const int a = static_cast<int>(key >> 32), b = static_cast<int>(key & 0xFFFFFFFF);
        const int ba = static_cast<int>(best_key >> 32),
                  bb = static_cast<int>(best_key & 0xFFFFFFFF);
        const auto& ta = vocab.tokens[a];
        const auto& tb = vocab.tokens[b];
        const auto& tba = vocab.tokens[ba];
        const auto& tbb = vocab.tokens[bb];
        if (std::tie(ta, tb) >= std::tie(tba, tbb)) continue;
      }
      best_key = key;
      best_count = count;
    }
    if (best_count < 2) break;

    const int left = static_cast<int>(best_key >> 32);
    const int right = static_cast<int>(best_key & 0xFFFFFFFF);
    const std::string merged = vocab.tokens[left] + vocab.tokens[right];
    int merged_id;
    auto existing = token_ids.find(merged);
    if (existing != token_ids.end()) {
      // Same string reachable through another split; reuse the token so each
      // token keeps exactly one producing rule.
      merged_id = existing->second;
    } else {
      merged_id = vocab.size();
      token_ids.emplace(merged, merged_id);
      merges.push_back({vocab.tokens[left], vocab.tokens[right],
                        static_cast<int>(merges.size())});
      vocab.tokens.push_back(merged);
    }

    for (auto& syms : words) {
      std::size_t out = 0;
      for (std::size_t i = 0; i < syms.size(); ++i) {
        if (i + 1 < syms.size() && syms[i] == left && syms[i + 1] == right) {
          syms[out++] = merged_id;
          ++i;
        } else {
          syms[out++] = syms[i];
        }
      }
      syms.resize(out);
    }
  }

  vocab.merges = merges;
  return {std::move(vocab), std::move(merges)};
}

OovStats coverage_report(const Vocab& vocab, const std::vector<Utterance>& corpus) {
  std::unordered_set<std::string> tokens(vocab.tokens.begin(), vocab.tokens.end());
  OovStats stats;
  const bool bytes = vocab.unit_type == UnitType::kByte;
  for (const auto& u : corpus) {
    for (auto w : split_words(u.text)) {
      auto chars = split_code_points(w);
      for (std::size_t i = 0; i < chars.size(); ++i) {
        if (i == 0) chars[i].insert(0, kWordMarker);
        ++stats.total_chars;
        if (!bytes && !tokens.count(chars[i])) ++stats.unencodable_chars;
      }
    }
  }
  stats.coverage =
      stats.total_chars == 0
          ? 1.0
          : 1.0 - static_cast<double>(stats.unencodable_chars) /
                      static_cast<double>(stats.total_chars);
  return stats;
}

}  // namespace uml
