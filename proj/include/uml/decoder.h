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
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "uml/corpus.h"
#include "uml/rnnt_model.h"
#include "uml/uml_table.h"

namespace uml {

struct Hypothesis {
  std::vector<int> nodes;  // non-blank nodes
  double score = 0.0;      // log probability (includes log P(z|x) when marginal)
  std::string text;
  int lid = 0;             // language index z
  friend bool operator==(const Hypothesis&, const Hypothesis&) = default;
};

/// P(z|x) over the model's languages.
struct LidPosterior {
  std::vector<double> probs;

  /// Throws kInvalidArgument unless entries are finite, non-negative and
  /// sum to 1 within 1e-6.
  void validate() const;
  int argmax() const;
  static LidPosterior one_hot(int languages, int index);
  static LidPosterior uniform(int languages);
};

struct DecodeOptions {
  int max_symbols_per_frame = 4;
};

/// Detokenized text for a node sequence. Byte groups render malformed
/// stretches as U+FFFD instead of failing, since search can produce them.
std::string render_text(const std::vector<int>& nodes, int group, const UmlTable& table);

/// Frame-synchronous greedy search under an oracle language.
Hypothesis greedy_decode(const Eigen::MatrixXd& features, const LanguageId& lid,
                         const TransducerModel& model, const UmlTable& table,
                         const DecodeOptions& options = {});

/// Beam search under an oracle language. N-best sorted by score, descending.
std::vector<Hypothesis> beam_decode_hard(const Eigen::MatrixXd& features, const LanguageId& lid,
                                         const TransducerModel& model, const UmlTable& table,
                                         int beam_size, const DecodeOptions& options = {});

/// Posterior from the model's auxiliary LID head.
LidPosterior lid_posterior(const Eigen::MatrixXd& features, const TransducerModel& model);

/// Beam search marginalizing an utterance-level language: each path is
/// created under one z with prior log P(z|x); final hypotheses with the
/// same text are summed across paths. `registry` maps z to a language code.
std::vector<Hypothesis> beam_decode_marginal(const Eigen::MatrixXd& features,
                                             const TransducerModel& model,
                                             const UmlTable& table,
                                             const LanguageRegistry& registry, int beam_size,
                                             const LidPosterior& posterior,
                                             const DecodeOptions& options = {});

/// Exact log P(y|x) = log sum_z P(z|x) P(y_z|x,z) for every text reachable
/// with at most `max_labels` labels, where y_z ranges over all node
/// sequences of z's group that render to that text. Exponential; meant for
/// tiny vocabularies.
std::map<std::string, double> exhaustive_marginal_scores(const Eigen::MatrixXd& features,
                                                         const TransducerModel& model,
                                                         const UmlTable& table,
                                                         const LanguageRegistry& registry,
                                                         const LidPosterior& posterior,
                                                         int max_labels);

/// log P(nodes | x, z) by the transducer forward algorithm.
double sequence_log_prob(const Eigen::MatrixXd& features, const std::vector<int>& nodes,
                         int lid, int group, const TransducerModel& model,
                         const UmlTable& table);

}  // namespace uml
