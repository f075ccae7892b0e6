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

#include "uml/corpus.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

#include "uml/error.h"
#include "uml/rng.h"
#include "uml/unicode.h"

namespace uml {

LanguageRegistry::LanguageRegistry(const std::vector<std::string>& codes) {
  if (codes.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "language registry needs at least one code");
  }
  for (const auto& code : codes) {
    if (code.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "empty language code");
    }
    if (contains(code)) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate language code: " + code);
    }
    languages_.push_back({code, static_cast<int>(languages_.size())});
  }
}

LanguageId LanguageRegistry::at(std::string_view code) const {
  for (const auto& lid : languages_) {
    if (lid.code == code) return lid;
  }
  throw Error(ErrorCode::kUnknownLanguage,
              "unknown language code: " + std::string(code));
}

bool LanguageRegistry::contains(std::string_view code) const {
  return std::any_of(languages_.begin(), languages_.end(),
                     [&](const LanguageId& l) { return l.code == code; });
}

std::vector<std::string> LanguageRegistry::codes() const {
  std::vector<std::string> out;
  for (const auto& l : languages_) out.push_back(l.code);
  return out;
}

CorpusFormat parse_corpus_format(std::string_view name) {
  if (name == "jsonl") return CorpusFormat::kJsonl;
  if (name == "tsv") return CorpusFormat::kTsv;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown corpus format: " + std::string(name));
}

namespace {

[[noreturn]] void reject(std::size_t record, const std::string& why,
                         ErrorCode code = ErrorCode::kMalformedRecord) {
  throw Error(code, "record " + std::to_string(record) + ": " + why);
}

Utterance make_utterance(std::size_t record, std::string_view raw_text,
                         std::string_view code, const LanguageRegistry& registry,
                         const NormalizeOptions& options) {
  if (!registry.contains(code)) {
    reject(record, "unknown LID code '" + std::string(code) + "'",
           ErrorCode::kUnknownLanguage);
  }
  std::string text;
  try {
    text = normalize_text(raw_text, options.lowercase);
  } catch (const Error& e) {
    reject(record, e.what());
  }
  if (text.empty()) reject(record, "text is empty after normalization");
  return {std::move(text), registry.at(code)};
}

}  // namespace

std::vector<Utterance> parse_corpus(std::string_view content,
                                    CorpusFormat format,
                                    const LanguageRegistry& registry,
                                    NormalizeOptions options) {
  std::vector<Utterance> out;
  std::size_t record = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;

    if (format == CorpusFormat::kJsonl) {
      nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object()) reject(record, "not a JSON object");
      auto text = j.find("text");
      auto lid = j.find("lid");
      if (text == j.end() || !text->is_string()) {
        reject(record, "missing string field 'text'");
      }
      if (lid == j.end() || !lid->is_string()) {
        reject(record, "missing string field 'lid'");
      }
      out.push_back(make_utterance(record, text->get_ref<const std::string&>(),
                                   lid->get_ref<const std::string&>(), registry,
                                   options));
    } else {
      if (!line.empty() && line.back() == '\r') {
        reject(record, "CR line ending (LF required)");
      }
      const std::size_t tab = line.find('\t');
      if (tab == std::string_view::npos ||
          line.find('\t', tab + 1) != std::string_view::npos) {
        reject(record, "expected exactly one tab");
      }
      out.push_back(make_utterance(record, line.substr(0, tab),
                                   line.substr(tab + 1), registry, options));
    }
    ++record;
  }
  return out;
}

std::vector<Utterance> load_corpus(const std::filesystem::path& path,
                                   CorpusFormat format,
                                   const LanguageRegistry& registry,
                                   NormalizeOptions options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_corpus(buffer.str(), format, registry, options);
}

std::string to_jsonl(const std::vector<Utterance>& corpus) {
  std::string out;
  for (const auto& u : corpus) {
    nlohmann::ordered_json j;
    j["text"] = u.text;
    j["lid"] = u.lid.code;
    out += j.dump();
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string_view script_name(Script script) {
  switch (script) {
    case Script::kLatin: return "latin";
    case Script::kCyrillic: return "cyrillic";
    case Script::kGreek: return "greek";
    case Script::kArabic: return "arabic";
    case Script::kDevanagari: return "devanagari";
    case Script::kCjk: return "cjk";
  }
  return "latin";
}

Script parse_script(std::string_view name) {
  for (Script s : {Script::kLatin, Script::kCyrillic, Script::kGreek,
                   Script::kArabic, Script::kDevanagari, Script::kCjk}) {
    if (script_name(s) == name) return s;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown script: " + std::string(name));
}

std::vector<char32_t> script_inventory(Script script, int cjk_inventory) {
  std::vector<char32_t> cps;
  auto add = [&](char32_t lo, char32_t hi) {
    for (char32_t c = lo; c <= hi; ++c) cps.push_back(c);
  };
  switch (script) {
    case Script::kLatin: add(U'a', U'z'); break;
    case Script::kCyrillic: add(0x0430, 0x044F); break;
    case Script::kGreek: add(0x03B1, 0x03C9); break;
    case Script::kArabic:
      add(0x0628, 0x063A);
      add(0x0641, 0x064A);
      break;
    case Script::kDevanagari:
      // Consonants that are NFC-stable (0929, 0931, 0934 have decompositions).
      for (char32_t c = 0x0915; c <= 0x0939; ++c) {
        if (c != 0x0929 && c != 0x0931 && c != 0x0934) cps.push_back(c);
      }
      break;
    case Script::kCjk:
      add(0x4E00, 0x4E00 + static_cast<char32_t>(cjk_inventory) - 1);
      break;
  }
  return cps;
}

SynthLanguage default_synth_language(const LanguageId& id) {
  SynthLanguage lang;
  lang.id = id;
  const std::string& c = id.code;
  if (c == "ru" || c == "uk" || c == "bg" || c == "cyrl") {
    lang.script = Script::kCyrillic;
  } else if (c == "el" || c == "grek") {
    lang.script = Script::kGreek;
  } else if (c == "ar" || c == "fa" || c == "arab") {
    lang.script = Script::kArabic;
  } else if (c == "hi" || c == "mr" || c == "deva") {
    lang.script = Script::kDevanagari;
  } else if (c == "zh" || c == "ja" || c == "cjk") {
    lang.script = Script::kCjk;
    lang.lexicon_size = 6000;
    lang.min_word_chars = 1;
    lang.max_word_chars = 3;
  }
  return lang;
}

namespace {

std::vector<std::string> build_lexicon(std::uint64_t seed, const SynthLanguage& lang) {
  const std::vector<char32_t> inventory =
      script_inventory(lang.script, lang.cjk_inventory);
  const ZipfSampler chars(inventory.size(), lang.char_zipf);
  // Ranks are assigned to characters in a seeded shuffled order so that
  // frequent characters are not always the lowest code points.
  std::vector<std::size_t> order(inventory.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(mix_seed(seed, "lexicon:" + lang.id.code));
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng.index(i)]);
  }

  std::vector<std::string> lexicon;
  std::unordered_set<std::string> seen;
  int attempts = 0;
  while (static_cast<int>(lexicon.size()) < lang.lexicon_size) {
    if (++attempts > lang.lexicon_size * 50) {
      throw Error(ErrorCode::kInvalidArgument,
                  "cannot build a lexicon of " + std::to_string(lang.lexicon_size) +
                      " distinct words for " + lang.id.code);
    }
    const int length = rng.range(lang.min_word_chars, lang.max_word_chars);
    std::string word;
    for (int i = 0; i < length; ++i) {
      word += encode_code_point(inventory[order[chars.sample(rng)]]);
    }
    if (seen.insert(word).second) lexicon.push_back(std::move(word));
  }
  return lexicon;
}

}  // namespace

std::vector<Utterance> synth_corpus(std::uint64_t seed,
                                    const std::vector<SynthLanguage>& langs,
                                    const std::vector<int>& sizes) {
  if (langs.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "synth_corpus: empty language list");
  }
  if (sizes.size() != langs.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "synth_corpus: need one size per language");
  }
  std::vector<Utterance> corpus;
  for (std::size_t l = 0; l < langs.size(); ++l) {
    const SynthLanguage& lang = langs[l];
    if (sizes[l] < 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "synth_corpus: size must be >= 1 for " + lang.id.code);
    }
    if (lang.min_words < 1 || lang.max_words < lang.min_words || lang.min_word_chars < 1 ||
        lang.max_word_chars < lang.min_word_chars) {
      throw Error(ErrorCode::kInvalidArgument, "synth_corpus: bad word or length range");
    }
    if (lang.lexicon_size < 1) {
      throw Error(ErrorCode::kInvalidArgument, "synth_corpus: empty lexicon");
    }
    const std::vector<std::string> lexicon = build_lexicon(seed, lang);
    const ZipfSampler words(lexicon.size(), lang.word_zipf);
    Rng rng(mix_seed(seed, "utterances:" + lang.id.code));
    for (int i = 0; i < sizes[l]; ++i) {
      const int n = rng.range(lang.min_words, lang.max_words);
      std::string text;
      for (int w = 0; w < n; ++w) {
        if (w > 0) text += ' ';
        text += lexicon[words.sample(rng)];
      }
      corpus.push_back({normalize_text(text), lang.id});
    }
  }
  return corpus;
}

// ---------------------------------------------------------------------------

CorpusStats compute_stats(const std::vector<Utterance>& corpus) {
  CorpusStats stats;
  for (const auto& u : corpus) {
    ++stats.utterances[u.lid.code];
    auto& inv = stats.inventory[u.lid.code];
    for (auto& cp : split_code_points(u.text)) {
      if (cp == " ") continue;
      ++stats.total_chars;
      inv.insert(std::move(cp));
    }
  }
  return stats;
}

std::vector<Utterance> filter_languages(const std::vector<Utterance>& corpus,
                                        const std::vector<std::string>& codes) {
  std::vector<Utterance> out;
  for (const auto& u : corpus) {
    if (std::find(codes.begin(), codes.end(), u.lid.code) != codes.end()) {
      out.push_back(u);
    }
  }
  return out;
}

}  // namespace uml
