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

#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "test_support.h"
#include "uml/decoder.h"
#include "uml/error.h"
#include "uml/experiment.h"
#include "uml/wpm_trainer.h"

namespace uml {
namespace {

const std::string kMark(kWordMarker);

void randomize(TransducerModel& m, std::uint64_t seed, double scale) {
  Rng rng(seed);
  for (auto& v : m.params().values) {
    for (Eigen::Index i = 0; i < v.size(); ++i) v.data()[i] = scale * rng.normal();
  }
}

Eigen::MatrixXd random_features(Rng& rng, int T, int dim) {
  Eigen::MatrixXd f(T, dim);
  for (Eigen::Index i = 0; i < f.size(); ++i) f.data()[i] = rng.normal();
  return f;
}

// Two WPM languages with different token strings at the same nodes, plus a
// byte language with a larger valid range.
struct TinySetup {
  UmlTable table;
  LanguageRegistry registry{{"en", "ru", "zh"}};
  ModelConfig config;

  TinySetup(int hidden, int feat_dim) {
    GroupingScheme scheme{"tiny",
                          {{"en", UnitType::kWpm, {"en"}},
                           {"ru", UnitType::kWpm, {"ru"}},
                           {"zh", UnitType::kByte, {"zh"}}}};
    table = UmlTable::build(
        scheme, {{"en", testing::make_vocab("en", {kMark + "a", "b"})},
                 {"ru", testing::make_vocab("ru", {kMark + "\xD0\xB4", "\xD0\xB0", "\xD0\xBC"})},
                 {"zh", make_byte_vocab("zh")}});
    config.feat_dim = feat_dim;
    config.hidden = hidden;
    config.vocab_size = table.vocab_size();
    config.num_languages = registry.size();
  }
};

TEST(Decoder, AllBlankModelGivesEmptyOutput) {
  TinySetup s(4, 3);
  TransducerModel m(s.config, 1);
  auto& p = m.params();
  for (auto& v : p.values) v.setZero();
  p.values[m.layout().joint_bias].setConstant(3.0);
  p.values[m.layout().output[0]].row(kBlankNode).setConstant(5.0);
  Rng rng(1);
  const auto f = random_features(rng, 6, 3);
  EXPECT_TRUE(greedy_decode(f, s.registry.at("en"), m, s.table).nodes.empty());
  const auto beams = beam_decode_hard(f, s.registry.at("ru"), m, s.table, 4);
  EXPECT_EQ(beams.front().text, "");
}

TEST(Decoder, NodeSequenceRendersPerGroup) {
  TinySetup s(4, 3);
  const std::vector<int> nodes = {kSpecialCount, kSpecialCount + 1};
  EXPECT_EQ(render_text(nodes, s.table.group_index("en"), s.table), "ab");
  EXPECT_EQ(render_text(nodes, s.table.group_index("ru"), s.table), "\xD0\xB4\xD0\xB0");
  // Byte groups render a broken stream with replacement characters.
  const std::vector<int> broken = {kSpecialCount + 0xE4, kSpecialCount + 0x41};
  EXPECT_EQ(render_text(broken, s.table.group_index("zh"), s.table), "\xEF\xBF\xBD" "A");
}

class RandomModelTest : public ::testing::Test {
 protected:
  RandomModelTest() : setup_(6, 4), model_(setup_.config, 3) { randomize(model_, 3, 0.6); }
  TinySetup setup_;
  TransducerModel model_;
};

TEST_F(RandomModelTest, BeamOneEqualsGreedy) {
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const auto f = random_features(rng, 2 + static_cast<int>(rng.index(6)), 4);
    const auto& lid = setup_.registry.at(static_cast<int>(rng.index(3)));
    const auto g = greedy_decode(f, lid, model_, setup_.table);
    const auto b = beam_decode_hard(f, lid, model_, setup_.table, 1);
    ASSERT_EQ(b.size(), 1u);
    EXPECT_EQ(b[0].nodes, g.nodes);
    EXPECT_EQ(b[0].text, g.text);
    EXPECT_NEAR(b[0].score, g.score, 1e-9);
  }
}

TEST_F(RandomModelTest, NBestOrderingAndValidity) {
  Rng rng(6);
  for (int i = 0; i < 50; ++i) {
    const auto f = random_features(rng, 2 + static_cast<int>(rng.index(5)), 4);
    const auto& lid = setup_.registry.at(static_cast<int>(rng.index(3)));
    const int g = setup_.table.group_of_language(lid.code);
    const auto wide = beam_decode_hard(f, lid, model_, setup_.table, 8);
    for (std::size_t k = 0; k < wide.size(); ++k) {
      EXPECT_TRUE(std::isfinite(wide[k].score));
      EXPECT_LE(wide[k].score, 0.0);
      if (k) EXPECT_LE(wide[k].score, wide[k - 1].score);
      for (int node : wide[k].nodes) {
        EXPECT_GT(node, kBlankNode);
        EXPECT_NE(node, kPadNode);
        EXPECT_LT(node, setup_.table.valid_size(g));
      }
    }
  }
}

TEST_F(RandomModelTest, OneHotPosteriorCollapsesToHardDecode) {
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const auto f = random_features(rng, 2 + static_cast<int>(rng.index(6)), 4);
    const int z = static_cast<int>(rng.index(3));
    const auto hard = beam_decode_hard(f, setup_.registry.at(z), model_, setup_.table, 4);
    const auto marg = beam_decode_marginal(f, model_, setup_.table, setup_.registry, 4,
                                           LidPosterior::one_hot(3, z));
    EXPECT_EQ(marg.front().text, hard.front().text);
    EXPECT_EQ(marg.front().lid, z);
    EXPECT_NEAR(marg.front().score, hard.front().score, 1e-12);
  }
}

// log P(y | x, z) by recursion over every alignment, stepping the model's
// per-frame distributions directly.
double brute_force_log_prob(const Eigen::MatrixXd& f, const std::vector<int>& y, int z,
                            int group, const TransducerModel& m, const UmlTable& table) {
  const Eigen::MatrixXd enc = m.projected_encoder(f, z);
  const auto mask = table.valid_mask(group);
  const int head = m.head_for_group(group);
  const int T = static_cast<int>(enc.rows());
  const int U = static_cast<int>(y.size());
  auto dist = [&](int t, int u) {
    const int p1 = u >= 1 ? y[u - 1] : kPadNode;
    const int p2 = u >= 2 ? y[u - 2] : kPadNode;
    return m.step_log_probs(enc.row(t), m.projected_prednet(p1, p2, z, head), mask, head);
  };
  double total = 0.0;
  auto walk = [&](auto&& self, int t, int u, double prob) -> void {
    const Eigen::RowVectorXd lp = dist(t, u);
    if (u < U) self(self, t, u + 1, prob * std::exp(lp[y[u]]));
    if (t + 1 < T) {
      self(self, t + 1, u, prob * std::exp(lp[kBlankNode]));
    } else if (u == U) {
      total += prob * std::exp(lp[kBlankNode]);
    }
  };
  walk(walk, 0, 0, 1.0);
  return std::log(total);
}

TEST(Decoder, ExhaustiveMarginalMatchesBruteForce) {
  // Two languages, both WPM, so every label sequence is renderable.
  GroupingScheme scheme{"two", {{"en", UnitType::kWpm, {"en"}}, {"ru", UnitType::kWpm, {"ru"}}}};
  const auto table = UmlTable::build(
      scheme, {{"en", testing::make_vocab("en", {kMark + "a", "a"})},
               {"ru", testing::make_vocab("ru", {kMark + "a", "\xD0\xB0"})}});
  const LanguageRegistry registry({"en", "ru"});
  ModelConfig c;
  c.feat_dim = 3;
  c.hidden = 5;
  c.vocab_size = table.vocab_size();
  c.num_languages = 2;
  c.joint = JointType::kBilinear;
  c.lid_to_prednet = true;
  TransducerModel m(c, 17);
  randomize(m, 17, 0.7);
  Rng rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = random_features(rng, 1 + trial % 3, 3);
    const double p0 = 0.15 + 0.15 * trial;
    const LidPosterior post{{p0, 1.0 - p0}};
    const auto scores = exhaustive_marginal_scores(f, m, table, registry, post, 3);

    std::map<std::string, double> want;
    for (int z = 0; z < 2; ++z) {
      const std::vector<int> labels = {kUnkNode, 3, 4};
      std::vector<std::vector<int>> seqs = {{}};
      for (std::size_t len = 0; len < seqs.size(); ++len) {
        if (seqs[len].size() == 3) continue;
        for (int k : labels) {
          auto next = seqs[len];
          next.push_back(k);
          seqs.push_back(next);
        }
      }
      for (const auto& y : seqs) {
        const std::string text = render_text(y, z, table);
        want[text] += post.probs[z] * std::exp(brute_force_log_prob(f, y, z, z, m, table));
      }
    }
    ASSERT_EQ(scores.size(), want.size());
    for (const auto& [text, p] : want) {
      ASSERT_TRUE(scores.count(text)) << text;
      EXPECT_NEAR(std::exp(scores.at(text)), p, 1e-8) << text;
      EXPECT_NEAR(scores.at(text), std::log(p), 1e-8) << text;
    }
  }
}

TEST(LidPosterior, Validation) {
  EXPECT_NO_THROW(LidPosterior::uniform(3).validate());
  EXPECT_THROW((LidPosterior{{0.5, 0.6}}).validate(), Error);
  EXPECT_THROW((LidPosterior{{1.5, -0.5}}).validate(), Error);
  EXPECT_THROW((LidPosterior{{}}).validate(), Error);
  EXPECT_THROW(LidPosterior::one_hot(2, 2), Error);
  EXPECT_EQ(LidPosterior::one_hot(4, 2).argmax(), 2);
}

TEST_F(RandomModelTest, MarginalRejectsBadPosterior) {
  Rng rng(9);
  const auto f = random_features(rng, 3, 4);
  EXPECT_THROW(beam_decode_marginal(f, model_, setup_.table, setup_.registry, 2,
                                    LidPosterior{{0.5, 0.5}}),
               Error);
  EXPECT_THROW(beam_decode_marginal(f, model_, setup_.table, setup_.registry, 2,
                                    LidPosterior{{0.5, 0.5, 0.5}}),
               Error);
}

// A small model trained on two languages with disjoint scripts.
class TrainedDecoderTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    auto* s = new Shared;
    s->registry = LanguageRegistry({"en", "ru"});
    std::vector<SynthLanguage> langs;
    for (const auto& id : s->registry.languages()) {
      SynthLanguage l = default_synth_language(id);
      l.lexicon_size = 40;
      l.max_words = 3;
      l.max_word_chars = 4;
      langs.push_back(l);
    }
    const auto corpus = synth_corpus(12, langs, {260, 260});
    std::vector<Utterance> train, test;
    split_corpus(corpus, 220, train, test);
    GroupingScheme scheme{"two", {{"en", UnitType::kWpm, {"en"}}, {"ru", UnitType::kWpm, {"ru"}}}};
    std::map<std::string, Vocab> vocabs;
    for (const auto& code : s->registry.codes()) {
      vocabs[code] = train_wpm(filter_languages(train, {code}), 60, 1, code).vocab;
    }
    s->table = UmlTable::build(scheme, vocabs);
    s->train = make_dataset(train, s->table, s->features, 1);
    s->test = make_dataset(test, s->table, s->features, 2);
    s->model = TransducerModel(model_config_for(s->table, s->registry, s->features, 32), 4);
    TrainOptions opt;
    opt.steps = 5000;
    opt.optimizer.kind = OptimizerKind::kAdam;
    opt.optimizer.learning_rate = 0.005;
    opt.optimizer.decay_steps = opt.steps;
    train_model(s->model, s->train.examples, group_masks(s->table), opt);
    shared_ = s;
  }
  static void TearDownTestSuite() {
    delete shared_;
    shared_ = nullptr;
  }

  struct Shared {
    LanguageRegistry registry{{"en"}};
    FeatureConfig features;
    UmlTable table;
    Dataset train, test;
    TransducerModel model;
  };
  static Shared* shared_;
};

TrainedDecoderTest::Shared* TrainedDecoderTest::shared_ = nullptr;

TEST_F(TrainedDecoderTest, ReproducesTrainingUtterances) {
  const auto& s = *shared_;
  int exact = 0;
  for (int i = 0; i < 20; ++i) {
    const auto& u = s.train.utterances[i];
    const auto h = greedy_decode(s.train.examples[i].features, u.lid, s.model, s.table);
    exact += h.text == u.text;
  }
  EXPECT_GE(exact, 18);
  const auto& u0 = s.train.utterances[0];
  EXPECT_EQ(greedy_decode(s.train.examples[0].features, u0.lid, s.model, s.table).text, u0.text);
}

TEST_F(TrainedDecoderTest, LidHeadIsAccurate) {
  const auto& s = *shared_;
  int correct = 0;
  for (std::size_t i = 0; i < s.test.examples.size(); ++i) {
    const auto post = lid_posterior(s.test.examples[i].features, s.model);
    double sum = 0.0;
    for (double p : post.probs) sum += p;
    EXPECT_NEAR(sum, 1.0, 1e-6);
    correct += post.argmax() == s.test.utterances[i].lid.index;
  }
  EXPECT_GT(static_cast<double>(correct) / static_cast<double>(s.test.examples.size()), 0.95);
}

TEST_F(TrainedDecoderTest, UniformPosteriorPicksAValidGroupReading) {
  const auto& s = *shared_;
  for (std::size_t i = 0; i < s.test.examples.size(); ++i) {
    const auto hyps = beam_decode_marginal(s.test.examples[i].features, s.model, s.table,
                                           s.registry, 4, LidPosterior::uniform(2));
    const auto& top = hyps.front();
    const int g = s.table.group_of_language(s.registry.at(top.lid).code);
    for (int node : top.nodes) ASSERT_LT(node, s.table.valid_size(g));
    EXPECT_EQ(decode_group(top.nodes, g, s.table), top.text);
  }
}

TEST_F(TrainedDecoderTest, WiderBeamNeverScoresLower) {
  const auto& s = *shared_;
  for (std::size_t i = 0; i < s.test.examples.size(); ++i) {
    const auto& f = s.test.examples[i].features;
    const auto& lid = s.test.utterances[i].lid;
    const auto wide = beam_decode_hard(f, lid, s.model, s.table, 8);
    const auto narrow = beam_decode_hard(f, lid, s.model, s.table, 1);
    EXPECT_GE(wide.front().score, narrow.front().score - 1e-12) << "utterance " << i;
  }
}

}  // namespace
}  // namespace uml
