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
#include <string_view>
#include <vector>

#include "uml/rnnt_model.h"

namespace uml {

enum class OptimizerKind { kMomentum, kAdam };

std::string_view optimizer_name(OptimizerKind kind);
OptimizerKind parse_optimizer(std::string_view name);

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::kMomentum;
  double learning_rate = 0.05;
  double momentum = 0.9;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double clip_norm = 5.0;   // global gradient norm; <= 0 disables
  double lid_weight = 0.5;  // weight of the LID cross-entropy term
  // Linear decay from learning_rate to learning_rate * final_lr_fraction
  // over decay_steps updates; 0 keeps the rate constant.
  int decay_steps = 0;
  double final_lr_fraction = 0.1;
  int threads = 1;
};

struct StepResult {
  double loss = 0.0;      // mean transducer loss over the batch, before the update
  double lid_loss = 0.0;  // mean LID cross-entropy, 0 without a LID head
  double grad_norm = 0.0; // before clipping
  bool clipped = false;
};

/// Single-writer trainer. Per-example gradients are reduced in batch order,
/// so results do not depend on the thread count.
class Trainer {
 public:
  Trainer(TransducerModel& model, OptimizerConfig config);

  /// One update on `batch`. masks[g] is the valid mask of group g. Throws
  /// kNumerical (naming the example) if any loss or gradient is non-finite;
  /// the parameters are left untouched in that case.
  StepResult step(const std::vector<const TransducerExample*>& batch,
                  const std::vector<std::vector<bool>>& masks);

  const OptimizerConfig& config() const { return config_; }
  std::int64_t steps_taken() const { return steps_; }
  /// Learning rate the next step will use.
  double current_learning_rate() const;

 private:
  TransducerModel& model_;
  OptimizerConfig config_;
  ParamSet first_moment_;
  ParamSet second_moment_;
  std::vector<ParamSet> scratch_;
  std::int64_t steps_ = 0;
};

}  // namespace uml
