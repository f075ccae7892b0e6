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
#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace uml {

struct LanguageId {
  std::string code;
  int index = 0;

  friend bool operator==(const LanguageId&, const LanguageId&) = default;
};

/// Ordered set of language codes; indices are contiguous from 0.
class LanguageRegistry {
 public:
  LanguageRegistry() = default;
  /// Throws kInvalidArgument for an empty list, empty or duplicate codes.
  explicit LanguageRegistry(const std::vector<std::string>& codes);

  /// Throws kUnknownLanguage.
  LanguageId at(std::string_view code) const;
  const LanguageId& at(int index) const { return languages_.at(index); }
  bool contains(std::string_view code) const;
  int size() const { return static_cast<int>(languages_.size()); }
  const std::vector<LanguageId>& languages() const { return languages_; }
  std::vector<std::string> codes() const;

 private:
  std::vector<LanguageId> languages_;
};

struct Utterance {
  std::string text;  // NFC, single-spaced, trimmed, non-empty
  LanguageId lid;

  friend bool operator==(const Utterance&, const Utterance&) = default;
};

enum class CorpusFormat { kJsonl, kTsv };

CorpusFormat parse_corpus_format(std::string_view name);

struct NormalizeOptions {
  bool lowercase = false;
};

/// Reads a corpus. Errors name the 0-based record index.
std::vector<Utterance> load_corpus(const std::filesystem::path& path,
                                   CorpusFormat format,
                                   const LanguageRegistry& registry,
                                   NormalizeOptions options = {});

/// Same as load_corpus but over an in-memory buffer.
std::vector<Utterance> parse_corpus(std::string_view content,
                                    CorpusFormat format,
                                    const LanguageRegistry& registry,
                                    NormalizeOptions options = {});

/// Canonical JSONL serialization, one record per line.
std::string to_jsonl(const std::vector<Utterance>& corpus);

// ---------------------------------------------------------------------------
// Synthetic corpora

enum class Script { kLatin, kCyrillic, kGreek, kArabic, kDevanagari, kCjk };

std::string_view script_name(Script script);
Script parse_script(std::string_view name);

/// Code points a script draws from, in block order.
std::vector<char32_t> script_inventory(Script script, int cjk_inventory);

struct SynthLanguage {
  LanguageId id;
  Script script = Script::kLatin;
  int lexicon_size = 400;
  double word_zipf = 1.0;
  /// Only used for kCjk: number of ideographs available from U+4E00.
  int cjk_inventory = 3500;
  /// Zipf exponent over the character inventory when building words.
  double char_zipf = 0.6;
  int min_words = 2;
  int max_words = 5;
  int min_word_chars = 2;  // CJK defaults to 1..3
  int max_word_chars = 7;
};

/// Script and lexicon defaults for a language code (e.g. "ru" -> Cyrillic,
/// "zh"/"ja" -> CJK). Unknown codes get Latin.
SynthLanguage default_synth_language(const LanguageId& id);

/// Deterministic synthetic corpus. Languages are emitted in the given order.
/// Each language draws words from a fixed lexicon over its script block.
std::vector<Utterance> synth_corpus(std::uint64_t seed,
                                    const std::vector<SynthLanguage>& langs,
                                    const std::vector<int>& sizes);

// ---------------------------------------------------------------------------

struct CorpusStats {
  std::map<std::string, std::size_t> utterances;             // by code
  std::map<std::string, std::set<std::string>> inventory;    // by code
  std::size_t total_chars = 0;  // whitespace excluded

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

CorpusStats compute_stats(const std::vector<Utterance>& corpus);

/// Utterances whose language is in `codes`, in corpus order.
std::vector<Utterance> filter_languages(const std::vector<Utterance>& corpus,
                                        const std::vector<std::string>& codes);

}  // namespace uml
