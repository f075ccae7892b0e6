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


#include <gtest/gtest.h>

#include <map>
#include <string>
#include <vector>

#include "test_support.h"
#include "uml/byte_codec.h"
#include "uml/error.h"
#include "uml/uml_table.h"
#include "uml/uml_tokenizer.h"
#include "uml/unicode.h"
#include "uml/wpm_trainer.h"

namespace uml {
namespace {

const std::string kMark(kWordMarker);

// Longest match written over code-point vectors with a plain linear scan of
// the vocabulary, so it shares nothing with the library's hashed lookup.
std::vector<int> oracle_encode(const std::string& text, const Vocab& v) {
  std::vector<int> out;
  for (auto word : split_words(text)) {
    const auto chars = split_code_points(word);
    std::size_t pos = 0;
    while (pos < chars.size()) {
      int best = -1;
      std::size_t best_len = 0;
      for (int id = kSpecialCount; id < v.size(); ++id) {
        const auto tok = split_code_points(v.tokens[id]);
        std::vector<std::string> want;
        if (pos == 0) {
          if (tok.empty() || tok[0] != kMark) continue;
          want.assign(tok.begin() + 1, tok.end());
        } else {
          if (!tok.empty() && tok[0] == kMark) continue;
          want = tok;
        }
        if (want.empty() || want.size() <= best_len || pos + want.size() > chars.size()) continue;
        if (std::equal(want.begin(), want.end(), chars.begin() + static_cast<long>(pos))) {
          best = id;
          best_len = want.size();
        }
      }
      if (best < 0) {
        out.push_back(kUnkNode);
        ++pos;
      } else {
        out.push_back(best);
        pos += best_len;
      }
    }
  }
  return out;
}

class ThreeLanguageTest : public ::testing::Test {
 protected:
  void SetUp() override {
    LanguageRegistry r({"en", "ru", "zh"});
    std::vector<SynthLanguage> langs;
    for (const auto& id : r.languages()) langs.push_back(default_synth_language(id));
    langs[2].cjk_inventory = 200;
    langs[2].lexicon_size = 300;
    corpus_ = synth_corpus(8, langs, {300, 300, 300});
    for (const auto& code : r.codes()) {
      auto v = train_wpm(filter_languages(corpus_, {code}), 220, 2, code).vocab;
      vocabs_[code] = v;
    }
    table_ = testing::single_language_table(vocabs_);
  }

  // Synthetic utterances with foreign and rare characters spliced in.
  std::vector<Utterance> fuzzed(int n, std::uint64_t seed) const {
    Rng rng(seed);
    const std::vector<std::string> extras = {"q", "\xD1\x89", "\xE4\xB8\xAD", "\xE2\x82\xAC",
                                             "\xF0\x9F\x98\x80", "\xC3\xA9"};
    std::vector<Utterance> out;
    for (int i = 0; i < n; ++i) {
      Utterance u = corpus_[rng.index(corpus_.size())];
      auto chars = split_code_points(u.text);
      const int edits = static_cast<int>(rng.index(3));
      for (int k = 0; k < edits; ++k) {
        const auto at = static_cast<long>(rng.index(chars.size() + 1));
        chars.insert(chars.begin() + at, rng.index(5) == 0 ? " " : extras[rng.index(extras.size())]);
      }
      std::string t;
      for (const auto& c : chars) t += c;
      u.text = normalize_text(t);
      if (!u.text.empty()) out.push_back(u);
    }
    return out;
  }

  std::vector<Utterance> corpus_;
  std::map<std::string, Vocab> vocabs_;
  UmlTable table_;
};

TEST_F(ThreeLanguageTest, UmlMatchesStandaloneTokenizers) {
  const auto utts = fuzzed(1000, 1);
  const auto report = equivalence_check(table_, vocabs_, utts);
  EXPECT_TRUE(report.equal);
  for (const auto& d : report.diffs) ADD_FAILURE() << d;
}

TEST_F(ThreeLanguageTest, EncodeMatchesLongestMatchOracle) {
  for (const auto& u : fuzzed(300, 2)) {
    ASSERT_EQ(encode(u.text, u.lid.code, table_), oracle_encode(u.text, vocabs_.at(u.lid.code)))
        << u.text;
  }
}

TEST_F(ThreeLanguageTest, CorruptedEntryIsReported) {
  auto other = vocabs_;
  auto& ru = other.at("ru");
  // Swap two non-special entries so nodes point at different strings.
  std::swap(ru.tokens[kSpecialCount + 5], ru.tokens[kSpecialCount + 40]);
  const auto report = equivalence_check(table_, other, filter_languages(corpus_, {"ru"}));
  EXPECT_FALSE(report.equal);
  ASSERT_FALSE(report.diffs.empty());
  EXPECT_NE(report.diffs[0].find("(ru)"), std::string::npos) << report.diffs[0];
}

TEST_F(ThreeLanguageTest, RoundTripAndNodeRange) {
  for (const auto& u : fuzzed(500, 3)) {
    const int g = table_.group_of_language(u.lid.code);
    const auto nodes = encode(u.text, u.lid.code, table_);
    bool has_unk = false;
    for (int n : nodes) {
      ASSERT_GE(n, kUnkNode);
      ASSERT_NE(n, kPadNode);
      ASSERT_LT(n, table_.valid_size(g));
      has_unk |= n == kUnkNode;
    }
    if (!has_unk) EXPECT_EQ(decode(nodes, u.lid.code, table_), u.text);
  }
}

TEST_F(ThreeLanguageTest, EncodingIgnoresOtherGroups) {
  auto changed = vocabs_;
  changed.at("ru") = testing::make_vocab("ru", {kMark + "a", "b"});
  const auto other = testing::single_language_table(changed);
  for (const auto& u : fuzzed(300, 4)) {
    if (u.lid.code == "ru") continue;
    EXPECT_EQ(encode(u.text, u.lid.code, table_), encode(u.text, u.lid.code, other));
  }
}

TEST(Tokenizer, LongestMatchExamples) {
  const auto v = testing::make_vocab("en", {kMark + "aa", kMark + "a", "a"});
  const auto t = testing::single_language_table({{"en", v}});
  const int aa = *t.node_of(0, kMark + "aa");
  EXPECT_EQ(encode("aa", "en", t), std::vector<int>{aa});
  EXPECT_EQ(decode(std::vector<int>{aa}, "en", t), "aa");
  EXPECT_EQ(encode("aaa", "en", t), (std::vector<int>{aa, *t.node_of(0, "a")}));
  EXPECT_EQ(encode("\xD1\x89", "en", t), std::vector<int>{kUnkNode});
  EXPECT_EQ(encode("a\xD1\x89" "a", "en", t),
            (std::vector<int>{*t.node_of(0, kMark + "a"), kUnkNode, *t.node_of(0, "a")}));
  EXPECT_EQ(decode(encode("a\xD1\x89", "en", t), "en", t), "a" + std::string(kUnkGlyph));
  EXPECT_TRUE(encode("", "en", t).empty());
  EXPECT_EQ(decode(std::vector<int>{}, "en", t), "");
}

TEST(Tokenizer, DecodeErrors) {
  const auto t = testing::single_language_table({{"en", testing::make_vocab("en", {kMark + "a"})}});
  for (int bad : {kBlankNode, kPadNode}) {
    try {
      decode(std::vector<int>{bad}, "en", t);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
    }
  }
  try {
    decode(std::vector<int>{kSpecialCount + 1}, "en", t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfGroupRange);
  }
  try {
    encode("a", "xx", t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownLanguage);
  }
}

TEST(Tokenizer, SameNodesTwoInterpretations) {
  const auto t = testing::single_language_table(
      {{"en", testing::make_vocab("en", {kMark + "cat", "s"})},
       {"ru", testing::make_vocab("ru", {kMark + "\xD0\xBA\xD0\xBE\xD1\x82", "\xD1\x8B"})}});
  const std::vector<int> nodes = {kSpecialCount, kSpecialCount + 1};
  EXPECT_EQ(decode(nodes, "en", t), "cats");
  EXPECT_EQ(decode(nodes, "ru", t), "\xD0\xBA\xD0\xBE\xD1\x82\xD1\x8B");
}

TEST(Tokenizer, MixedTableUsesBytesForCjk) {
  const auto scheme = reference_scheme("G5Mix");
  std::map<std::string, Vocab> vocabs;
  for (const auto& g : scheme.groups) {
    vocabs[g.name] = g.unit_type == UnitType::kByte
                         ? make_byte_vocab(g.name)
                         : testing::make_vocab(g.name, {kMark + "x", "y"});
  }
  const auto t = UmlTable::build(scheme, vocabs);
  const auto nodes = encode("\xE4\xB8\xAD", "zh", t);
  EXPECT_EQ(nodes, encode_bytes("\xE4\xB8\xAD"));
  EXPECT_EQ(nodes.size(), 3u);
  EXPECT_EQ(decode(nodes, "zh", t), "\xE4\xB8\xAD");
  const auto pieces = encode_pieces("\xE4\xB8\xAD", "ja", t);
  ASSERT_EQ(pieces.size(), 3u);
  EXPECT_EQ(pieces[0].surface, byte_token(0xE4));
}

TEST(Tokenizer, SingleGroupMatchesConventionalTokenizer) {
  const auto corpus = synth_corpus(2, {default_synth_language({"de", 0}),
                                       default_synth_language({"fr", 1})},
                                   {100, 100});
  const auto v = train_wpm(corpus, 150, 1, "all").vocab;
  const auto t = UmlTable::build({"G1", {{"all", UnitType::kWpm, {"de", "fr"}}}}, {{"all", v}});
  const MonolingualTokenizer mono(v);
  for (const auto& u : corpus) {
    const auto nodes = encode(u.text, u.lid.code, t);
    EXPECT_EQ(nodes, mono.encode(u.text));
    EXPECT_EQ(decode(nodes, u.lid.code, t), mono.decode(nodes));
  }
}

}  // namespace
}  // namespace uml
