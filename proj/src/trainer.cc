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


#include "uml/trainer.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "uml/error.h"

namespace uml {

std::string_view optimizer_name(OptimizerKind kind) {
  return kind == OptimizerKind::kAdam ? "adam" : "momentum";
}

OptimizerKind parse_optimizer(std::string_view name) {
  if (name == "momentum" || name == "sgd") return OptimizerKind::kMomentum;
  if (name == "adam") return OptimizerKind::kAdam;
  throw Error(ErrorCode::kInvalidArgument, "unknown optimizer: " + std::string(name));
}

Trainer::Trainer(TransducerModel& model, OptimizerConfig config)
    : model_(model), config_(config) {
  if (config_.learning_rate <= 0.0 || config_.threads < 1) {
    throw Error(ErrorCode::kInvalidArgument, "trainer: learning rate and threads must be positive");
  }
  first_moment_ = model_.params().zeros_like();
  if (config_.kind == OptimizerKind::kAdam) second_moment_ = model_.params().zeros_like();
}

double Trainer::current_learning_rate() const {
  if (config_.decay_steps <= 0) return config_.learning_rate;
  const double progress =
      std::min(1.0, static_cast<double>(steps_) / static_cast<double>(config_.decay_steps));
  return config_.learning_rate * (1.0 - progress * (1.0 - config_.final_lr_fraction));
}

StepResult Trainer::step(const std::vector<const TransducerExample*>& batch,
                         const std::vector<std::vector<bool>>& masks) {
  if (batch.empty()) throw Error(ErrorCode::kInvalidArgument, "trainer: empty batch");
  const std::size_t n = batch.size();
  while (scratch_.size() < n) scratch_.push_back(model_.params().zeros_like());
  std::vector<TransducerModel::Losses> losses(n);
  std::vector<std::exception_ptr> failures(n);

  auto work = [&](std::size_t i) {
    try {
      scratch_[i].set_zero();
      const auto& ex = *batch[i];
      if (ex.group < 0 || ex.group >= static_cast<int>(masks.size())) {
        throw Error(ErrorCode::kInvalidArgument, "trainer: example group has no mask");
      }
      losses[i] = model_.accumulate_gradients(ex, masks[ex.group], config_.lid_weight, scratch_[i]);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  };
  const std::size_t workers = std::min<std::size_t>(config_.threads, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < n; i += workers) work(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  StepResult result;
  ParamSet& grad = scratch_[0];
  for (std::size_t i = 1; i < n; ++i) grad.add(scratch_[i]);
  const double scale = 1.0 / static_cast<double>(n);
  for (auto& g : grad.values) g *= scale;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(losses[i].rnnt) || !std::isfinite(losses[i].lid)) {
      std::ostringstream os;
      os << "trainer: non-finite loss at step " << steps_ << ", example " << i
         << " (rnnt=" << losses[i].rnnt << ", lid=" << losses[i].lid << ")";
      throw Error(ErrorCode::kNumerical, os.str());
    }
    result.loss += losses[i].rnnt * scale;
    result.lid_loss += losses[i].lid * scale;
  }
  result.grad_norm = std::sqrt(grad.squared_norm());
  if (!std::isfinite(result.grad_norm)) {
    std::ostringstream os;
    os << "trainer: non-finite gradient at step " << steps_;
    for (std::size_t b = 0; b < grad.size(); ++b) {
      if (!grad.values[b].allFinite()) os << ", block " << grad.names[b];
    }
    throw Error(ErrorCode::kNumerical, os.str());
  }
  if (config_.clip_norm > 0.0 && result.grad_norm > config_.clip_norm) {
    result.clipped = true;
    const double c = config_.clip_norm / result.grad_norm;
    for (auto& g : grad.values) g *= c;
  }

  const double lr = current_learning_rate();
  ++steps_;
  auto& params = model_.params().values;
  if (config_.kind == OptimizerKind::kMomentum) {
    for (std::size_t b = 0; b < params.size(); ++b) {
      first_moment_.values[b] = config_.momentum * first_moment_.values[b] + grad.values[b];
      params[b] -= lr * first_moment_.values[b];
    }
  } else {
    const double c1 = 1.0 - std::pow(config_.beta1, static_cast<double>(steps_));
    const double c2 = 1.0 - std::pow(config_.beta2, static_cast<double>(steps_));
    for (std::size_t b = 0; b < params.size(); ++b) {
      auto& m = first_moment_.values[b];
      auto& v = second_moment_.values[b];
      const auto& g = grad.values[b];
      m = config_.beta1 * m + (1.0 - config_.beta1) * g;
      v = config_.beta2 * v + (1.0 - config_.beta2) * g.cwiseProduct(g);
      params[b].array() -= lr * (m.array() / c1) /
                           ((v.array() / c2).sqrt() + config_.epsilon);
    }
  }
  return result;
}

}  // namespace uml
