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

// Acceptance run: one PASS/FAIL line per criterion. Exits nonzero if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "test_support.h"
#include "uml/byte_codec.h"
#include "uml/corpus.h"
#include "uml/decoder.h"
#include "uml/experiment.h"
#include "uml/param_audit.h"
#include "uml/rnnt_loss.h"
#include "uml/rnnt_model.h"
#include "uml/uml_table.h"
#include "uml/uml_tokenizer.h"
#include "uml/unicode.h"
#include "uml/wpm_trainer.h"

namespace uml {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c, d);
  return buf;
}

const std::string kMark(kWordMarker);

// ---------------------------------------------------------------- 1
Outcome table2_deltas() {
  const std::map<std::string, double> published = {
      {"B0", 18.1}, {"U0", 14.2}, {"U3", 14.2}, {"U5", 10.2}, {"U8", 6.3}, {"B2", 3.1}};
  std::map<std::string, Table2Row> rows;
  for (auto& r : table2_rows()) rows[r.system.substr(0, r.system.find(' '))] = r;
  double worst_delta = 0.0, worst_rel = 0.0;
  bool formula = true;
  for (const auto& [x, px] : published) {
    const Table2Row& rx = rows.at(x);
    worst_rel = std::max(worst_rel, std::abs(rx.report.total() - px * 1e6) / (px * 1e6));
    for (const auto& [y, py] : published) {
      const Table2Row& ry = rows.at(y);
      const auto d = compare(rx.report, ry.report).delta;
      formula = formula && d == 3 * 640 * (rx.arch.output - ry.arch.output);
      worst_delta = std::max(worst_delta, std::abs(static_cast<double>(d) - (px - py) * 1e6));
    }
  }
  return {formula && worst_delta <= 0.1e6 && worst_rel <= 0.05,
          fmt("max pairwise deviation %.3fM (<= 0.1M), max total error %.2f%% (<= 5%%), "
              "residual %.3fM",
              worst_delta / 1e6, 100 * worst_rel, paper_residual() / 1e6)};
}

// ---------------------------------------------------------------- 2
Outcome forty_percent() {
  const auto u6 = count_params(paper_arch("U6", 4096, PrednetType::kEmbedding, JointType::kBilinear));
  const auto b0 = count_params(paper_arch("B0", 8192));
  const ParamDelta d = compare(u6, b0);
  const bool bp = u6.joint_fusion == 640 + 1'100'000;
  return {bp && d.delta < 0 && d.fraction >= 0.35 && d.fraction <= 0.45,
          fmt("U6 %.3fM vs B0 %.3fM, reduction %.1f%% (in [35%%, 45%%])", u6.total() / 1e6,
              b0.total() / 1e6, 100 * d.fraction)};
}

// ---------------------------------------------------------------- 3
Outcome folding() {
  Rng rng(303);
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::int64_t H = 1 + static_cast<std::int64_t>(rng.index(4096));
    std::vector<std::int64_t> sizes(1 + rng.index(16));
    for (auto& s : sizes) s = 1 + static_cast<std::int64_t>(rng.index(32768));
    const auto c = uml_comparison(H, sizes);
    const std::int64_t mx = *std::max_element(sizes.begin(), sizes.end());
    const std::int64_t sum = std::accumulate(sizes.begin(), sizes.end(), std::int64_t{0});
    if (c.uml_params != H * mx || c.separate_params != H * sum) ++bad;
  }
  return {bad == 0, fmt("%.0f/1000 size vectors violate UML = H*max, separate = H*sum", bad)};
}

// ---------------------------------------------------------------- 4
Outcome round_trips() {
  // (a) byte codec
  Rng rng(404);
  int byte_bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::string s = testing::utf8_oracle(testing::random_code_points(rng, 24));
    if (decode_bytes(encode_bytes(s)) != s) ++byte_bad;
  }

  // (b) WPM on its own training corpus, min_char_count = 1
  const LanguageRegistry reg({"en", "ru", "zh"});
  std::vector<SynthLanguage> langs;
  for (const auto& id : reg.languages()) langs.push_back(default_synth_language(id));
  langs[2].cjk_inventory = 300;
  langs[2].lexicon_size = 400;
  const auto corpus = synth_corpus(404, langs, {400, 400, 400});
  std::size_t wpm_bad = 0, wpm_total = 0;
  std::map<std::string, Vocab> vocabs;
  for (const auto& code : reg.codes()) {
    const auto part = filter_languages(corpus, {code});
    const int size = static_cast<int>(character_variants(part).size()) + kSpecialCount + 100;
    vocabs[code] = train_wpm(part, size, 1, code).vocab;
    const MonolingualTokenizer tok(vocabs[code]);
    for (const auto& u : part) {
      ++wpm_total;
      if (tok.decode(tok.encode(u.text)) != u.text) ++wpm_bad;
    }
  }

  // (c) G11-style table against standalone tokenizers on fuzzed utterances
  const UmlTable table = testing::single_language_table(vocabs);
  const std::vector<std::string> extras = {"q", "\xD1\x89", "\xE4\xB8\xAD", "\xE2\x82\xAC",
                                           "\xF0\x9F\x98\x80", "\xC3\xA9", " "};
  std::vector<Utterance> fuzzed;
  while (fuzzed.size() < 1000) {
    Utterance u = corpus[rng.index(corpus.size())];
    auto chars = split_code_points(u.text);
    for (int k = static_cast<int>(rng.index(4)); k > 0; --k) {
      chars.insert(chars.begin() + static_cast<long>(rng.index(chars.size() + 1)),
                   extras[rng.index(extras.size())]);
    }
    std::string t;
    for (const auto& c : chars) t += c;
    u.text = normalize_text(t);
    if (!u.text.empty()) fuzzed.push_back(u);
  }
  const auto report = equivalence_check(table, vocabs, fuzzed);
  return {byte_bad == 0 && wpm_bad == 0 && report.equal,
          fmt("(a) %.0f/10000 byte mismatches, (b) %.0f/%.0f WPM mismatches, (c) %.0f/1000 "
              "UML vs monolingual mismatches",
              byte_bad, static_cast<double>(wpm_bad), static_cast<double>(wpm_total),
              static_cast<double>(report.diffs.size()))};
}

// ---------------------------------------------------------------- 5
double enumerate_likelihood(const RowMatrix& logits, int T, const std::vector<int>& y,
                            const std::vector<bool>& mask) {
  const int U = static_cast<int>(y.size());
  auto prob = [&](int t, int u, int k) {
    const auto r = logits.row(t * (U + 1) + u);
    double z = 0.0;
    for (Eigen::Index j = 0; j < r.size(); ++j) {
      if (mask[j]) z += std::exp(r[j]);
    }
    return std::exp(r[k]) / z;
  };
  std::function<double(int, int)> walk = [&](int t, int u) -> double {
    double p = 0.0;
    if (u < U) p += prob(t, u, y[u]) * walk(t, u + 1);
    if (t + 1 < T) p += prob(t, u, kBlankNode) * walk(t + 1, u);
    if (t + 1 == T && u == U) p += prob(t, u, kBlankNode);
    return p;
  };
  return walk(0, 0);
}

Outcome transducer_loss() {
  Rng rng(505);
  double worst = 0.0;
  int cases = 0;
  auto instance = [&](int T, int U, int V, RowMatrix& logits, std::vector<int>& y,
                      std::vector<bool>& mask) {
    logits.resize(T * (U + 1), V);
    for (Eigen::Index i = 0; i < logits.size(); ++i) logits.data()[i] = 2.0 * rng.normal();
    y.assign(U, 0);
    for (auto& k : y) k = 1 + static_cast<int>(rng.index(V - 1));
    mask.assign(V, true);
    for (int k = 1; k < V; ++k) {
      if (rng.index(4) == 0 && std::find(y.begin(), y.end(), k) == y.end()) mask[k] = false;
    }
  };
  RowMatrix logits;
  std::vector<int> y;
  std::vector<bool> mask;
  for (int T = 1; T <= 4; ++T) {
    for (int U = 0; U <= 3; ++U) {
      for (int V = 2; V <= 8; ++V) {
        for (int trial = 0; trial < 3; ++trial, ++cases) {
          instance(T, U, V, logits, y, mask);
          const double got = rnnt_loss(logits, T, y, mask).loss;
          worst = std::max(worst, std::abs(got + std::log(enumerate_likelihood(logits, T, y, mask))));
        }
      }
    }
  }
  double worst_grad = 0.0;
  const double h = 1e-5;
  for (int trial = 0; trial < 50; ++trial) {
    const int T = 1 + static_cast<int>(rng.index(4));
    const int U = static_cast<int>(rng.index(4));
    const int V = 2 + static_cast<int>(rng.index(7));
    instance(T, U, V, logits, y, mask);
    const auto r = rnnt_loss(logits, T, y, mask);
    for (Eigen::Index i = 0; i < logits.size(); ++i) {
      const double saved = logits.data()[i];
      logits.data()[i] = saved + h;
      const double up = rnnt_loss(logits, T, y, mask).loss;
      logits.data()[i] = saved - h;
      const double down = rnnt_loss(logits, T, y, mask).loss;
      logits.data()[i] = saved;
      const double numeric = (up - down) / (2 * h);
      const double analytic = r.grad_logits.data()[i];
      const double scale = std::max({std::abs(numeric), std::abs(analytic), 1e-6});
      worst_grad = std::max(worst_grad, std::abs(numeric - analytic) / scale);
    }
  }
  return {worst <= 1e-8 && worst_grad <= 1e-4,
          fmt("%.0f enumerated lattices, max |loss diff| %.2e (<= 1e-8); 50 gradient checks, "
              "max rel err %.2e (<= 1e-4)",
              cases, worst, worst_grad)};
}

// ---------------------------------------------------------------- 6
void randomize(TransducerModel& m, std::uint64_t seed, double scale) {
  Rng rng(seed);
  for (auto& v : m.params().values) {
    for (Eigen::Index i = 0; i < v.size(); ++i) v.data()[i] = scale * rng.normal();
  }
}

double alignment_log_prob(const Eigen::MatrixXd& f, const std::vector<int>& y, int z,
                          const TransducerModel& m, const UmlTable& table) {
  const Eigen::MatrixXd enc = m.projected_encoder(f, z);
  const auto mask = table.valid_mask(z);
  const int T = static_cast<int>(enc.rows());
  const int U = static_cast<int>(y.size());
  std::function<double(int, int)> walk = [&](int t, int u) -> double {
    const int p1 = u >= 1 ? y[u - 1] : kPadNode;
    const int p2 = u >= 2 ? y[u - 2] : kPadNode;
    const Eigen::RowVectorXd lp = m.step_log_probs(enc.row(t), m.projected_prednet(p1, p2, z, 0), mask, 0);
    double p = 0.0;
    if (u < U) p += std::exp(lp[y[u]]) * walk(t, u + 1);
    if (t + 1 < T) p += std::exp(lp[kBlankNode]) * walk(t + 1, u);
    if (t + 1 == T && u == U) p += std::exp(lp[kBlankNode]);
    return p;
  };
  return std::log(walk(0, 0));
}

Outcome hard_collapse() {
  // 100 synthetic utterances through a desk-scale model with random weights.
  const LanguageRegistry reg({"en", "ru", "zh"});
  std::vector<SynthLanguage> langs;
  for (const auto& id : reg.languages()) langs.push_back(default_synth_language(id));
  const auto corpus = synth_corpus(606, langs, {34, 33, 33});
  GroupingScheme scheme{"mix",
                        {{"en", UnitType::kWpm, {"en"}},
                         {"ru", UnitType::kWpm, {"ru"}},
                         {"zh", UnitType::kByte, {"zh"}}}};
  std::map<std::string, Vocab> vocabs;
  for (const char* code : {"en", "ru"}) {
    vocabs[code] = train_wpm(filter_languages(corpus, {code}), 300, 1, code).vocab;
  }
  vocabs["zh"] = make_byte_vocab("zh");
  const UmlTable table = UmlTable::build(scheme, vocabs);
  const FeatureConfig fc;
  const Dataset data = make_dataset(corpus, table, fc, 606);
  TransducerModel model(model_config_for(table, reg, fc, 32), 606);
  randomize(model, 606, 0.3);
  int mismatches = 0;
  for (std::size_t i = 0; i < data.examples.size(); ++i) {
    const auto& lid = data.utterances[i].lid;
    const auto& f = data.examples[i].features;
    const auto hard = beam_decode_hard(f, lid, model, table, 4);
    const auto marg = beam_decode_marginal(f, model, table, reg, 4,
                                           LidPosterior::one_hot(reg.size(), lid.index));
    if (hard.front().text != marg.front().text) ++mismatches;
  }

  // L = 2, every label sequence up to length 3.
  GroupingScheme two{"two", {{"en", UnitType::kWpm, {"en"}}, {"ru", UnitType::kWpm, {"ru"}}}};
  const UmlTable small = UmlTable::build(
      two, {{"en", testing::make_vocab("en", {kMark + "a", "a"})},
            {"ru", testing::make_vocab("ru", {kMark + "\xD0\xB0", "\xD0\xB1"})}});
  const LanguageRegistry reg2({"en", "ru"});
  ModelConfig c;
  c.feat_dim = 3;
  c.hidden = 6;
  c.vocab_size = small.vocab_size();
  c.num_languages = 2;
  c.lid_to_prednet = true;
  TransducerModel m2(c, 66);
  randomize(m2, 66, 0.7);
  Rng rng(66);
  double worst = 0.0;
  for (int trial = 0; trial < 6; ++trial) {
    Eigen::MatrixXd f(1 + trial % 3, 3);
    for (Eigen::Index i = 0; i < f.size(); ++i) f.data()[i] = rng.normal();
    const double p0 = 0.1 + 0.15 * trial;
    const LidPosterior post{{p0, 1.0 - p0}};
    const auto scores = exhaustive_marginal_scores(f, m2, small, reg2, post, 3);
    std::map<std::string, double> want;
    std::vector<std::vector<int>> seqs = {{}};
    for (std::size_t k = 0; k < seqs.size(); ++k) {
      if (seqs[k].size() == 3) continue;
      for (int node : {kUnkNode, kSpecialCount, kSpecialCount + 1}) {
        auto next = seqs[k];
        next.push_back(node);
        seqs.push_back(next);
      }
    }
    for (int z = 0; z < 2; ++z) {
      for (const auto& y : seqs) {
        want[render_text(y, z, small)] += post.probs[z] * std::exp(alignment_log_prob(f, y, z, m2, small));
      }
    }
    if (scores.size() != want.size()) return {false, "exhaustive marginal misses label sequences"};
    for (const auto& [text, p] : want) {
      worst = std::max(worst, std::abs(std::exp(scores.at(text)) - p));
    }
  }
  return {mismatches == 0 && worst <= 1e-8,
          fmt("%.0f/100 one-hot top-1 mismatches; exhaustive marginal max |diff| %.2e (<= 1e-8)",
              mismatches, worst)};
}

// ---------------------------------------------------------------- 7-9
std::function<void(const std::string&)> quiet_log() {
  return [](const std::string& line) { std::cerr << "  " << line << "\n"; };
}

Outcome parity() {
  ParityOptions o;
  o.common.log = quiet_log();
  const ParityResult r = run_parity_experiment(o);
  const bool pass = r.uml_ter < 0.05 && std::abs(r.control_ter - r.uml_ter) <= 0.02 &&
                    r.control_layer_params >= 2 * r.uml_layer_params;
  return {pass, fmt("UML TER %.4f (< 0.05), control TER %.4f (|diff| %.4f <= 0.02), "
                    "output+embedding params %.0f vs control ",
                    r.uml_ter, r.control_ter, std::abs(r.control_ter - r.uml_ter),
                    static_cast<double>(r.uml_layer_params)) +
                    std::to_string(r.control_layer_params) + " (>= 2x)"};
}

Outcome oov() {
  OovOptions o;
  o.common.log = quiet_log();
  const OovResult r = run_oov_experiment(o);
  bool monotone = true;
  std::string cov;
  for (std::size_t i = 0; i < r.coverage.size(); ++i) {
    if (i && r.coverage[i] < r.coverage[i - 1]) monotone = false;
    cov += (i ? ", " : "") + std::string("V=") + std::to_string(r.budgets[i]) + " " +
           fmt("%.4f", r.coverage[i]);
  }
  return {monotone && r.small_ter > r.large_ter,
          "coverage " + cov + fmt("; CJK TER V=small %.4f > V=large %.4f", r.small_ter, r.large_ter)};
}

Outcome mixed() {
  MixedOptions o;
  o.common.log = quiet_log();
  const MixedResult r = run_mixed_experiment(o);
  int wpm_max = 0, byte_valid = 0;
  for (std::size_t g = 0; g < r.group_sizes.size(); ++g) {
    if (r.unit_types[g] == "byte") {
      byte_valid = std::max(byte_valid, r.group_sizes[g]);
    } else {
      wpm_max = std::max(wpm_max, r.group_sizes[g]);
    }
  }
  const bool pass = r.cjk_unk_nodes == 0 && r.cjk_unk_outputs == 0 && r.vocab_size == wpm_max &&
                    byte_valid > 0 && byte_valid <= r.vocab_size;
  return {pass, fmt("CJK <unk> nodes %.0f, <unk> glyphs %.0f; V_out %.0f = largest WPM group, "
                    "byte group valid size %.0f",
                    static_cast<double>(r.cjk_unk_nodes), static_cast<double>(r.cjk_unk_outputs),
                    r.vocab_size, byte_valid) +
                    fmt("; CJK TER %.4f, overall TER %.4f", r.cjk_ter, r.ter)};
}

// ---------------------------------------------------------------- 10
Outcome masked_softmax() {
  const LanguageRegistry reg({"en", "ru", "zh"});
  std::vector<SynthLanguage> langs;
  for (const auto& id : reg.languages()) langs.push_back(default_synth_language(id));
  const auto corpus = synth_corpus(1010, langs, {200, 200, 10});
  GroupingScheme scheme{"mix",
                        {{"en", UnitType::kWpm, {"en"}},
                         {"ru", UnitType::kWpm, {"ru"}},
                         {"zh", UnitType::kByte, {"zh"}}}};
  std::map<std::string, Vocab> vocabs = {
      {"en", train_wpm(filter_languages(corpus, {"en"}), 320, 1, "en").vocab},
      {"ru", train_wpm(filter_languages(corpus, {"ru"}), 180, 1, "ru").vocab},
      {"zh", make_byte_vocab("zh")}};
  const UmlTable table = UmlTable::build(scheme, vocabs);
  TransducerModel model(model_config_for(table, reg, FeatureConfig{}, 32), 1010);
  randomize(model, 1010, 0.5);
  Rng rng(1010);
  int bad = 0;
  double worst_sum = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const int g = i % table.num_groups();
    Eigen::RowVectorXd joint(32);
    for (auto& v : joint) v = rng.normal();
    const Eigen::RowVectorXd lp = model.output_logits(joint, table.valid_mask(g), 0);
    int nonzero = 0;
    double sum = 0.0;
    for (Eigen::Index k = 0; k < lp.size(); ++k) {
      const double p = std::exp(lp[k]);
      if (p != 0.0) ++nonzero;
      sum += p;
    }
    worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
    if (nonzero != table.valid_size(g) || std::abs(sum - 1.0) > 1e-6) ++bad;
  }
  std::string sizes;
  for (int g = 0; g < table.num_groups(); ++g) {
    sizes += (g ? "/" : "") + std::to_string(table.valid_size(g));
  }
  return {bad == 0, fmt("%.0f/10000 joint states with wrong support or mass, max |sum - 1| %.2e; ",
                        bad, worst_sum) +
                        "valid sizes " + sizes + " of V_out " + std::to_string(table.vocab_size())};
}

}  // namespace
}  // namespace uml

int main() {
  using uml::Outcome;
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"published decoder size deltas", uml::table2_deltas},
      {"about 40% decoder reduction", uml::forty_percent},
      {"folding arithmetic", uml::folding},
      {"tokenizer round-trips", uml::round_trips},
      {"transducer loss and gradient", uml::transducer_loss},
      {"one-hot LID collapse and exhaustive marginal", uml::hard_collapse},
      {"desk-scale parity at lower size", uml::parity},
      {"OOV coverage and TER vs V", uml::oov},
      {"mixed WPM and byte table", uml::mixed},
      {"masked softmax support", uml::masked_softmax},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("criterion %zu %s: %s [%s] (%.1fs)\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
