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
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "uml/corpus.h"
#include "uml/decoder.h"
#include "uml/features.h"
#include "uml/rnnt_model.h"
#include "uml/trainer.h"
#include "uml/uml_table.h"

namespace uml {

/// Utterances with their rendered features and node targets.
struct Dataset {
  std::vector<Utterance> utterances;
  std::vector<TransducerExample> examples;
};

/// Tokenizes each utterance under its language's group and renders its
/// features. Noise for utterance i is seeded from (seed, i).
Dataset make_dataset(const std::vector<Utterance>& utterances, const UmlTable& table,
                     const FeatureConfig& features, std::uint64_t seed);

/// valid_mask of every group, in group order.
std::vector<std::vector<bool>> group_masks(const UmlTable& table);

/// Per-language split: the first `train_per_language` utterances of each
/// language go to train, the rest to test. Corpus order is kept.
void split_corpus(const std::vector<Utterance>& corpus, int train_per_language,
                  std::vector<Utterance>& train, std::vector<Utterance>& test);

struct TrainOptions {
  int steps = 500;
  int batch_size = 8;
  OptimizerConfig optimizer;
  std::uint64_t seed = 1;  // batch order
};

using StepCallback = std::function<void(int step, const StepResult& result)>;

/// Minibatch training over shuffled epochs. Returns the per-step results.
std::vector<StepResult> train_model(TransducerModel& model,
                                    const std::vector<TransducerExample>& examples,
                                    const std::vector<std::vector<bool>>& masks,
                                    const TrainOptions& options,
                                    const StepCallback& on_step = {});

/// Levenshtein distance over code points.
std::size_t edit_distance(std::string_view hyp, std::string_view ref);

struct ErrorCount {
  std::size_t errors = 0;
  std::size_t reference = 0;  // reference length in code points
  double rate() const { return reference ? double(errors) / double(reference) : 0.0; }
};

struct EvalResult {
  ErrorCount total;
  std::map<std::string, ErrorCount> per_language;
  std::size_t lid_correct = 0;
  std::size_t lid_total = 0;  // 0 when the model has no LID head
  std::vector<std::string> hypotheses;
  double ter() const { return total.rate(); }
  double lid_accuracy() const { return lid_total ? double(lid_correct) / double(lid_total) : 0.0; }
};

/// Oracle-LID decoding of every utterance, scored by code-point edit
/// distance against the reference text. beam_size 1 uses greedy search.
EvalResult evaluate(const TransducerModel& model, const UmlTable& table, const Dataset& data,
                    int beam_size = 1, const DecodeOptions& options = {});

/// Model config sized for a table: V_out from the table, L from the registry.
ModelConfig model_config_for(const UmlTable& table, const LanguageRegistry& registry,
                             const FeatureConfig& features, int hidden);

// ---------------------------------------------------------------------------
// Desk experiments

/// Shared knobs. `log` receives progress lines when set.
struct ExperimentOptions {
  std::uint64_t seed = 7;
  int hidden = 64;
  int steps = 6000;
  int batch_size = 8;
  OptimizerConfig optimizer = {OptimizerKind::kAdam, 0.005};
  FeatureConfig features;
  std::function<void(const std::string&)> log;
};

/// One shared UML output layer against one output layer per group.
struct ParityResult {
  int vocab_size = 0;
  std::vector<int> group_sizes;
  double uml_ter = 0.0;
  double control_ter = 0.0;
  std::int64_t uml_layer_params = 0;      // embeddings + output
  std::int64_t control_layer_params = 0;
  double uml_lid_accuracy = 0.0;
};

struct ParityOptions {
  ExperimentOptions common;
  int train_per_language = 1000;
  int test_per_language = 100;
  int vocab_size = 160;
};

/// Latin, Cyrillic and CJK synthetic languages, one group each.
ParityResult run_parity_experiment(const ParityOptions& options);

/// Coverage and error rate of one CJK language as the vocabulary shrinks.
struct OovResult {
  std::vector<int> budgets;
  std::vector<int> min_char_counts;
  std::vector<int> vocab_sizes;
  std::vector<double> coverage;  // held-out character coverage per budget
  double small_ter = 0.0;        // model for budgets.front()
  double large_ter = 0.0;        // model for budgets.back()
};

struct OovOptions {
  // Thousands of rare output classes need a gentler step size.
  ExperimentOptions common = [] {
    ExperimentOptions o;
    o.optimizer.learning_rate = 0.002;
    return o;
  }();
  std::vector<int> budgets = {2048, 4096, 6144};
  int train_utterances = 40000;
  int test_utterances = 200;
  int cjk_inventory = 5000;
  double char_zipf = 0.6;
  int max_word_chars = 1;
  int lexicon_size = 5000;
  double word_zipf = 0.7;
  int min_words = 2;
  int max_words = 4;
};

OovResult run_oov_experiment(const OovOptions& options);

/// WPM groups for two alphabetic languages plus a byte group for CJK.
struct MixedResult {
  int vocab_size = 0;
  std::vector<int> group_sizes;
  std::vector<std::string> unit_types;
  std::size_t cjk_unk_nodes = 0;     // <unk> nodes over all CJK encodings
  std::size_t cjk_unk_outputs = 0;   // U+2047 glyphs in decoded CJK text
  std::size_t cjk_invalid_outputs = 0;  // U+FFFD in decoded CJK text
  double cjk_ter = 0.0;
  double ter = 0.0;
};

struct MixedOptions {
  ExperimentOptions common;
  int train_per_language = 250;
  int test_per_language = 50;
  int vocab_size = 320;
};

MixedResult run_mixed_experiment(const MixedOptions& options);

}  // namespace uml
