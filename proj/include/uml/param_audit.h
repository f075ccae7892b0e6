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
#include <string>
#include <string_view>
#include <vector>

#include "uml/rnnt_model.h"
#include "uml/uml_table.h"

namespace uml {

enum class PrednetType { kEmbedding, kLstm };

std::string_view prednet_type_name(PrednetType type);
PrednetType parse_prednet_type(std::string_view name);

/// Decoder architecture for closed-form parameter counting.
struct DecoderArch {
  std::string name;
  std::int64_t hidden = 640;  // D
  std::int64_t output = 8192; // O
  PrednetType prednet = PrednetType::kEmbedding;
  JointType joint = JointType::kAdditive;
  int context = 2;
  bool lid_projections = false;
  std::int64_t languages = 11;
  int heads = 1;               // separate output/embedding layers
  std::int64_t bp_extra = 0;   // extra joint parameters of a full-rank BP joint
  std::int64_t residual = 0;   // unattributed parameters (full size only)
  std::int64_t lstm_cell = 1280;
  int lstm_layers = 2;
};

/// Full-size layout: D = 640, the published BP delta when `joint` is
/// bilinear, and the fitted residual.
DecoderArch paper_arch(std::string name, std::int64_t output,
                       PrednetType prednet = PrednetType::kEmbedding,
                       JointType joint = JointType::kAdditive, bool lid_projections = false);

/// Layout of a desk model, for cross-checking its real parameter blocks.
DecoderArch desk_arch(const ModelConfig& config);

inline constexpr std::int64_t kPaperBpExtra = 1'100'000;

struct ParamReport {
  std::int64_t embeddings = 0;
  std::int64_t merge_projection = 0;
  std::int64_t side_projections = 0;
  std::int64_t joint_fusion = 0;
  std::int64_t output_layer = 0;
  std::int64_t lid_projections = 0;
  std::int64_t lstm_layers = 0;
  std::int64_t residual = 0;

  std::int64_t total() const {
    return embeddings + merge_projection + side_projections + joint_fusion + output_layer +
           lid_projections + lstm_layers + residual;
  }
  /// Embedding plus output parameters, the part that grows with O.
  std::int64_t output_dependent() const { return embeddings + output_layer; }
};

/// Throws kInvalidArgument for negative sizes.
ParamReport count_params(const DecoderArch& arch);

struct ParamDelta {
  std::int64_t delta = 0;  // a.total - b.total
  double fraction = 0.0;   // |delta| / max(a.total, b.total), 0 if both are 0
};

ParamDelta compare(const ParamReport& a, const ParamReport& b);

/// Folding arithmetic for an H-dim output layer over per-group sizes.
/// Throws kInvalidArgument for an empty size list.
ParamComparison uml_comparison(std::int64_t hidden, const std::vector<std::int64_t>& sizes);

struct ParamAnchor {
  std::int64_t output = 0;
  std::int64_t total = 0;  // published decoder size
};

/// Mean of (published total - counted total) over embedding/additive
/// anchors, i.e. the constant that best explains all of them.
std::int64_t fit_residual(const std::vector<ParamAnchor>& anchors, std::int64_t hidden = 640);

/// Anchors used for the residual fit (B0, U0, U5, U8, B2).
const std::vector<ParamAnchor>& paper_anchors();
std::int64_t paper_residual();

struct Table2Row {
  std::string system;
  DecoderArch arch;
  std::int64_t published = 0;
  ParamReport report;
  double relative_error = 0.0;  // (counted - published) / published
  bool matches = false;         // within 5%
};

/// Counted decoder sizes for every row of the published results table.
std::vector<Table2Row> table2_rows();

/// Aligned text table of reports. Rows with a published size show it.
std::string format_report_table(const std::vector<Table2Row>& rows);
std::string report_json(const std::vector<Table2Row>& rows);

/// Parses a JSON array of architectures (or {"configs": [...]}); missing
/// fields take DecoderArch defaults, "paper": true applies paper_arch.
std::vector<DecoderArch> parse_arch_configs(std::string_view json);

}  // namespace uml
