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


#include "uml/experiment.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>

#include "uml/error.h"
#include "uml/rng.h"
#include "uml/unicode.h"
#include "uml/uml_tokenizer.h"
#include "uml/wpm_trainer.h"

namespace uml {

Dataset make_dataset(const std::vector<Utterance>& utterances, const UmlTable& table,
                     const FeatureConfig& features, std::uint64_t seed) {
  Dataset d;
  d.utterances = utterances;
  d.examples.reserve(utterances.size());
  for (std::size_t i = 0; i < utterances.size(); ++i) {
    const Utterance& u = utterances[i];
    const std::vector<Piece> pieces = encode_pieces(u.text, u.lid.code, table);
    TransducerExample ex;
    ex.features = synth_features(pieces, u.lid.code, features,
                                 mix_seed(seed, "utterance:" + std::to_string(i)));
    for (const auto& p : pieces) ex.target.push_back(p.node);
    ex.lid = u.lid.index;
    ex.group = table.group_of_language(u.lid.code);
    d.examples.push_back(std::move(ex));
  }
  return d;
}

std::vector<std::vector<bool>> group_masks(const UmlTable& table) {
  std::vector<std::vector<bool>> masks;
  for (int g = 0; g < table.num_groups(); ++g) masks.push_back(table.valid_mask(g));
  return masks;
}

void split_corpus(const std::vector<Utterance>& corpus, int train_per_language,
                  std::vector<Utterance>& train, std::vector<Utterance>& test) {
  std::map<std::string, int> seen;
  for (const auto& u : corpus) {
    if (seen[u.lid.code]++ < train_per_language) {
      train.push_back(u);
    } else {
      test.push_back(u);
    }
  }
}

std::vector<StepResult> train_model(TransducerModel& model,
                                    const std::vector<TransducerExample>& examples,
                                    const std::vector<std::vector<bool>>& masks,
                                    const TrainOptions& options, const StepCallback& on_step) {
  if (examples.empty()) throw Error(ErrorCode::kInvalidArgument, "train_model: no examples");
  if (options.steps < 0 || options.batch_size < 1) {
    throw Error(ErrorCode::kInvalidArgument, "train_model: bad steps or batch size");
  }
  Trainer trainer(model, options.optimizer);
  Rng rng(options.seed);
  std::vector<std::size_t> order(examples.size());
  std::size_t cursor = order.size();
  std::vector<StepResult> results;
  results.reserve(options.steps);
  for (int step = 0; step < options.steps; ++step) {
    std::vector<const TransducerExample*> batch;
    while (static_cast<int>(batch.size()) < options.batch_size) {
      if (cursor == order.size()) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);
        cursor = 0;
      }
      batch.push_back(&examples[order[cursor++]]);
      if (batch.size() == examples.size()) break;
    }
    results.push_back(trainer.step(batch, masks));
    if (on_step) on_step(step, results.back());
  }
  return results;
}

std::size_t edit_distance(std::string_view hyp, std::string_view ref) {
  const std::vector<std::string> a = split_code_points(hyp);
  const std::vector<std::string> b = split_code_points(ref);
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

EvalResult evaluate(const TransducerModel& model, const UmlTable& table, const Dataset& data,
                    int beam_size, const DecodeOptions& options) {
  EvalResult r;
  for (std::size_t i = 0; i < data.examples.size(); ++i) {
    const Utterance& u = data.utterances[i];
    const TransducerExample& ex = data.examples[i];
    std::string hyp;
    if (beam_size <= 1) {
      hyp = greedy_decode(ex.features, u.lid, model, table, options).text;
    } else {
      const auto nbest = beam_decode_hard(ex.features, u.lid, model, table, beam_size, options);
      if (!nbest.empty()) hyp = nbest.front().text;
    }
    const std::size_t errors = edit_distance(hyp, u.text);
    const std::size_t ref = split_code_points(u.text).size();
    r.total.errors += errors;
    r.total.reference += ref;
    auto& lang = r.per_language[u.lid.code];
    lang.errors += errors;
    lang.reference += ref;
    if (model.config().lid_head) {
      ++r.lid_total;
      if (lid_posterior(ex.features, model).argmax() == u.lid.index) ++r.lid_correct;
    }
    r.hypotheses.push_back(std::move(hyp));
  }
  return r;
}

ModelConfig model_config_for(const UmlTable& table, const LanguageRegistry& registry,
                             const FeatureConfig& features, int hidden) {
  ModelConfig c;
  c.feat_dim = features.feat_dim;
  c.hidden = hidden;
  c.vocab_size = table.vocab_size();
  c.num_languages = registry.size();
  return c;
}

// ---------------------------------------------------------------------------

namespace {

void log_line(const ExperimentOptions& o, const std::string& line) {
  if (o.log) o.log(line);
}

double train_and_score(TransducerModel& model, const UmlTable& table, const Dataset& train,
                       const Dataset& test, const ExperimentOptions& o, const std::string& tag,
                       EvalResult* eval_out = nullptr) {
  const auto start = std::chrono::steady_clock::now();
  TrainOptions t;
  t.steps = o.steps;
  t.batch_size = o.batch_size;
  t.optimizer = o.optimizer;
  if (t.optimizer.decay_steps == 0) t.optimizer.decay_steps = o.steps;
  t.seed = mix_seed(o.seed, "batches");
  double window = 0.0;
  int count = 0;
  train_model(model, train.examples, group_masks(table), t, [&](int step, const StepResult& r) {
    window += r.loss;
    ++count;
    if ((step + 1) % 250 == 0 || step + 1 == o.steps) {
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%s step %d loss %.4f lid %.4f", tag.c_str(), step + 1,
                    window / count, r.lid_loss);
      log_line(o, buf);
      window = 0.0;
      count = 0;
    }
  });
  EvalResult e = evaluate(model, table, test);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%s held-out TER %.4f (%zu/%zu) LID acc %.3f, %.1fs",
                tag.c_str(), e.ter(), e.total.errors, e.total.reference, e.lid_accuracy(), secs);
  log_line(o, buf);
  for (const auto& [code, c] : e.per_language) {
    std::snprintf(buf, sizeof(buf), "%s   %s TER %.4f (%zu/%zu)", tag.c_str(), code.c_str(),
                  c.rate(), c.errors, c.reference);
    log_line(o, buf);
  }
  const double ter = e.ter();
  if (eval_out) *eval_out = std::move(e);
  return ter;
}

std::vector<Utterance> with_registry(std::vector<Utterance> corpus,
                                     const LanguageRegistry& registry) {
  for (auto& u : corpus) u.lid = registry.at(u.lid.code);
  return corpus;
}

}  // namespace

ParityResult run_parity_experiment(const ParityOptions& options) {
  const ExperimentOptions& o = options.common;
  const LanguageRegistry registry({"en", "ru", "zh"});
  std::vector<SynthLanguage> langs;
  for (const auto& id : registry.languages()) {
    SynthLanguage s = default_synth_language(id);
    s.lexicon_size = 300;
    if (s.script == Script::kCjk) {
      s.cjk_inventory = 60;
      s.lexicon_size = 400;
    }
    langs.push_back(s);
  }
  const int per_language = options.train_per_language + options.test_per_language;
  const auto corpus = with_registry(synth_corpus(o.seed, langs, {per_language, per_language, per_language}), registry);
  std::vector<Utterance> train, test;
  split_corpus(corpus, options.train_per_language, train, test);

  GroupingScheme scheme;
  scheme.name = "parity";
  std::map<std::string, Vocab> vocabs;
  for (const auto& id : registry.languages()) {
    scheme.groups.push_back({id.code, UnitType::kWpm, {id.code}});
    vocabs[id.code] =
        train_wpm(filter_languages(train, {id.code}), options.vocab_size, 1, id.code).vocab;
  }
  const UmlTable table = UmlTable::build(scheme, vocabs);
  ParityResult result;
  result.vocab_size = table.vocab_size();
  for (int g = 0; g < table.num_groups(); ++g) result.group_sizes.push_back(table.valid_size(g));

  const Dataset train_set = make_dataset(train, table, o.features, mix_seed(o.seed, "train"));
  const Dataset test_set = make_dataset(test, table, o.features, mix_seed(o.seed, "test"));

  ModelConfig config = model_config_for(table, registry, o.features, o.hidden);
  TransducerModel uml(config, mix_seed(o.seed, "model"));
  EvalResult uml_eval;
  result.uml_ter = train_and_score(uml, table, train_set, test_set, o, "uml", &uml_eval);
  result.uml_lid_accuracy = uml_eval.lid_accuracy();
  auto blocks = uml.decoder_block_counts();
  result.uml_layer_params = blocks.embeddings + blocks.output_layer;

  config.num_heads = table.num_groups();
  TransducerModel control(config, mix_seed(o.seed, "model"));
  result.control_ter = train_and_score(control, table, train_set, test_set, o, "separate");
  blocks = control.decoder_block_counts();
  result.control_layer_params = blocks.embeddings + blocks.output_layer;
  return result;
}

OovResult run_oov_experiment(const OovOptions& options) {
  const ExperimentOptions& o = options.common;
  if (options.budgets.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "oov experiment: need at least two budgets");
  }
  const LanguageRegistry registry({"zh"});
  SynthLanguage zh = default_synth_language(registry.at("zh"));
  zh.cjk_inventory = options.cjk_inventory;
  zh.char_zipf = options.char_zipf;
  zh.max_word_chars = options.max_word_chars;
  zh.lexicon_size = options.lexicon_size;
  zh.word_zipf = options.word_zipf;
  zh.min_words = options.min_words;
  zh.max_words = options.max_words;
  const auto corpus = with_registry(
      synth_corpus(o.seed, {zh}, {options.train_utterances + options.test_utterances}), registry);
  std::vector<Utterance> train, test;
  split_corpus(corpus, options.train_utterances, train, test);

  OovResult result;
  result.budgets = options.budgets;
  std::vector<Vocab> vocabs;
  for (int budget : options.budgets) {
    const int m = min_char_count_for_budget(train, budget);
    Vocab v = train_wpm(train, budget, m, "zh").vocab;
    result.min_char_counts.push_back(m);
    result.vocab_sizes.push_back(v.size());
    result.coverage.push_back(coverage_report(v, test).coverage);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "budget %d: min_char_count %d, size %d, coverage %.4f",
                  budget, m, v.size(), result.coverage.back());
    log_line(o, buf);
    vocabs.push_back(std::move(v));
  }

  GroupingScheme scheme;
  scheme.name = "cjk";
  scheme.groups.push_back({"zh", UnitType::kWpm, {"zh"}});
  auto score = [&](const Vocab& v, const std::string& tag) {
    const UmlTable table = UmlTable::build(scheme, {{"zh", v}});
    const Dataset train_set = make_dataset(train, table, o.features, mix_seed(o.seed, "train"));
    const Dataset test_set = make_dataset(test, table, o.features, mix_seed(o.seed, "test"));
    ModelConfig config = model_config_for(table, registry, o.features, o.hidden);
    config.lid_head = false;
    TransducerModel model(config, mix_seed(o.seed, "model"));
    return train_and_score(model, table, train_set, test_set, o, tag);
  };
  result.small_ter = score(vocabs.front(), "V=" + std::to_string(options.budgets.front()));
  result.large_ter = score(vocabs.back(), "V=" + std::to_string(options.budgets.back()));
  return result;
}

MixedResult run_mixed_experiment(const MixedOptions& options) {
  const ExperimentOptions& o = options.common;
  const LanguageRegistry registry({"en", "ru", "zh"});
  std::vector<SynthLanguage> langs;
  for (const auto& id : registry.languages()) {
    SynthLanguage s = default_synth_language(id);
    s.lexicon_size = 300;
    if (s.script == Script::kCjk) {
      s.cjk_inventory = 400;
      s.lexicon_size = 500;
      s.min_words = 1;
      s.max_words = 3;
    }
    langs.push_back(s);
  }
  const int per_language = options.train_per_language + options.test_per_language;
  const auto corpus = with_registry(synth_corpus(o.seed, langs, {per_language, per_language, per_language}), registry);
  std::vector<Utterance> train, test;
  split_corpus(corpus, options.train_per_language, train, test);

  GroupingScheme scheme;
  scheme.name = "mixed";
  scheme.groups = {{"latin", UnitType::kWpm, {"en"}},
                   {"cyrillic", UnitType::kWpm, {"ru"}},
                   {"cjk", UnitType::kByte, {"zh"}}};
  std::map<std::string, Vocab> vocabs;
  vocabs["latin"] = train_wpm(filter_languages(train, {"en"}), options.vocab_size, 1, "latin").vocab;
  vocabs["cyrillic"] =
      train_wpm(filter_languages(train, {"ru"}), options.vocab_size, 1, "cyrillic").vocab;
  vocabs["cjk"] = make_byte_vocab("cjk");
  const UmlTable table = UmlTable::build(scheme, vocabs);

  MixedResult result;
  result.vocab_size = table.vocab_size();
  for (int g = 0; g < table.num_groups(); ++g) {
    result.group_sizes.push_back(table.valid_size(g));
    result.unit_types.emplace_back(unit_type_name(table.unit_type(g)));
  }
  for (const auto& u : corpus) {
    if (u.lid.code != "zh") continue;
    for (int node : encode(u.text, "zh", table)) {
      if (node == kUnkNode) ++result.cjk_unk_nodes;
    }
  }

  const Dataset train_set = make_dataset(train, table, o.features, mix_seed(o.seed, "train"));
  const Dataset test_set = make_dataset(test, table, o.features, mix_seed(o.seed, "test"));
  TransducerModel model(model_config_for(table, registry, o.features, o.hidden),
                        mix_seed(o.seed, "model"));
  EvalResult e;
  result.ter = train_and_score(model, table, train_set, test_set, o, "mixed", &e);
  result.cjk_ter = e.per_language["zh"].rate();
  for (std::size_t i = 0; i < test_set.utterances.size(); ++i) {
    if (test_set.utterances[i].lid.code != "zh") continue;
    const std::string& h = e.hypotheses[i];
    for (const auto& cp : split_code_points(h)) {
      if (cp == kUnkGlyph) ++result.cjk_unk_outputs;
      if (cp == "\xEF\xBF\xBD") ++result.cjk_invalid_outputs;
    }
  }
  return result;
}

}  // namespace uml
