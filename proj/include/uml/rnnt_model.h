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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "uml/rnnt_loss.h"

namespace uml {

enum class JointType { kAdditive, kBilinear };

std::string_view joint_type_name(JointType type);
JointType parse_joint_type(std::string_view name);

/// Number of previous non-blank labels the prediction network sees.
inline constexpr int kContextSize = 2;

struct ModelConfig {
  int feat_dim = 16;
  int stack_frames = 2;    // current frame plus (stack_frames - 1) left frames
  int hidden = 32;         // D
  int vocab_size = 16;     // V_out
  int num_languages = 1;   // L
  int num_heads = 1;       // 1 = shared UML layer; >1 = one layer per group
  int encoder_layers = 2;
  JointType joint = JointType::kAdditive;
  bool lid_to_prednet = false;
  bool lid_head = true;

  int encoder_input_dim() const { return stack_frames * feat_dim + num_languages; }
  /// Throws kInvalidArgument on non-positive dimensions.
  void validate() const;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

/// Named parameter blocks. Vectors are stored as single-column matrices.
struct ParamSet {
  std::vector<std::string> names;
  std::vector<Eigen::MatrixXd> values;

  std::size_t size() const { return values.size(); }
  std::int64_t count() const;
  /// Same names and shapes, all zeros.
  ParamSet zeros_like() const;
  void set_zero();
  /// this += other (same layout).
  void add(const ParamSet& other);
  double squared_norm() const;
  int index_of(std::string_view name) const;  // -1 if absent
};

/// Indices of the roles inside a ParamSet built for a ModelConfig.
struct ParamLayout {
  std::vector<int> enc_input, enc_recurrent, enc_bias;  // per encoder layer
  std::vector<int> embed1, embed2, output;              // per head
  int lid_proj1 = -1, lid_proj2 = -1;
  int merge = -1;
  int proj_enc = -1, proj_pred = -1, joint_bias = -1;
  int lid_head = -1, lid_head_bias = -1;
};

/// Decoder-side parameter counts by block, for cross-checking the auditor.
struct DecoderBlockCounts {
  std::int64_t embeddings = 0;
  std::int64_t merge_projection = 0;
  std::int64_t side_projections = 0;
  std::int64_t joint_fusion = 0;
  std::int64_t output_layer = 0;
  std::int64_t lid_projections = 0;
  std::int64_t total() const {
    return embeddings + merge_projection + side_projections + joint_fusion +
           output_layer + lid_projections;
  }
};

/// One training/evaluation utterance in node space.
struct TransducerExample {
  Eigen::MatrixXd features;  // T x feat_dim
  std::vector<int> target;   // non-blank nodes
  int lid = 0;               // language index
  int group = 0;             // selects the mask and, with several heads, the head
};

/// Desk-scale transducer: causal recurrent encoder over stacked frames with
/// the LID one-hot appended, a prediction network embedding the last two
/// non-blank labels, an additive or gated-bilinear joint and a shared
/// (or per-group) output layer with per-group masking.
class TransducerModel {
 public:
  TransducerModel() = default;
  TransducerModel(ModelConfig config, std::uint64_t seed);

  const ModelConfig& config() const { return config_; }
  const ParamLayout& layout() const { return layout_; }
  ParamSet& params() { return params_; }
  const ParamSet& params() const { return params_; }

  /// Encoder input rows: stacked frames followed by the LID one-hot
  /// (all zeros when `lid` is empty).
  Eigen::MatrixXd encoder_inputs(const Eigen::MatrixXd& features,
                                 std::optional<int> lid) const;

  /// T x D acoustic states. Causal: row t depends on frames <= t only.
  Eigen::MatrixXd encoder_forward(const Eigen::MatrixXd& features,
                                  std::optional<int> lid) const;

  /// D-dim text state from the last two non-blank nodes (most recent first).
  /// Use kPadNode for missing context. Throws kInvalidArgument if a node is
  /// out of range.
  Eigen::RowVectorXd prednet_forward(std::span<const int> prev_nodes, int lid,
                                     int head = 0) const;

  /// D-dim joint state from raw acoustic and text states.
  Eigen::RowVectorXd joint_forward(const Eigen::Ref<const Eigen::RowVectorXd>& acoustic,
                                   const Eigen::Ref<const Eigen::RowVectorXd>& text) const;

  /// Masked log-probabilities over the V_out nodes.
  Eigen::RowVectorXd output_logits(const Eigen::Ref<const Eigen::RowVectorXd>& joint,
                                   const std::vector<bool>& mask, int head = 0) const;

  // Decoding helpers over pre-projected states.
  Eigen::MatrixXd projected_encoder(const Eigen::MatrixXd& features, int lid) const;
  Eigen::RowVectorXd projected_prednet(int prev1, int prev2, int lid, int head) const;
  Eigen::RowVectorXd step_log_probs(const Eigen::Ref<const Eigen::RowVectorXd>& enc_proj,
                                    const Eigen::Ref<const Eigen::RowVectorXd>& pred_proj,
                                    const std::vector<bool>& mask, int head) const;

  /// Full-lattice logits for an example, ((T * (U + 1)) x V_out).
  RowMatrix lattice_logits(const TransducerExample& example) const;

  /// Transducer loss of the example at the current parameters.
  double loss(const TransducerExample& example, const std::vector<bool>& mask) const;

  struct Losses {
    double rnnt = 0.0;
    double lid = 0.0;
  };

  /// Accumulates d(rnnt + lid_weight * lid_ce) into `grads`. The LID term
  /// is only present when the model has a LID head and lid_weight > 0.
  Losses accumulate_gradients(const TransducerExample& example,
                              const std::vector<bool>& mask, double lid_weight,
                              ParamSet& grads) const;

  /// LID posterior from mean-pooled encoder states computed without the LID
  /// one-hot. Throws kInvalidArgument if the model has no LID head.
  Eigen::VectorXd lid_posterior(const Eigen::MatrixXd& features) const;

  DecoderBlockCounts decoder_block_counts() const;

  int head_for_group(int group) const { return config_.num_heads > 1 ? group : 0; }

  /// Versioned JSON checkpoint: config plus named blocks.
  std::string to_json() const;
  static TransducerModel from_json(std::string_view json);

 private:
  ModelConfig config_;
  ParamLayout layout_;
  ParamSet params_;
};

}  // namespace uml
