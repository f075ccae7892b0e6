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

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace uml {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Log-softmax over the entries where mask is true; masked entries get -inf.
/// Throws kInvalidArgument for an all-false mask.
Eigen::RowVectorXd masked_log_softmax(const Eigen::Ref<const Eigen::RowVectorXd>& logits,
                                      const std::vector<bool>& mask);

/// Transducer output lattice. Row t * (U + 1) + u of `log_probs` is the
/// masked log-distribution at frame t after u emitted labels.
struct Lattice {
  int frames = 0;  // T
  int labels = 0;  // U
  RowMatrix log_probs;
  Eigen::MatrixXd alpha;  // T x (U + 1), log forward variables
  Eigen::MatrixXd beta;   // T x (U + 1), log backward variables

  int row(int t, int u) const { return t * (labels + 1) + u; }
};

struct RnntLossResult {
  double loss = 0.0;       // -log P(target | lattice)
  RowMatrix grad_logits;   // d loss / d logits, zero on masked entries
};

/// Builds the lattice from raw logits ((T * (U + 1)) x V, row layout as in
/// Lattice) and the group mask.
Lattice make_lattice(const RowMatrix& logits, int frames, int labels,
                     const std::vector<bool>& mask);

/// Forward-backward over the (T, U) grid with blank = node 0. Fills the
/// lattice's alpha/beta. Throws kNumerical on non-finite lattice values and
/// kInvalidArgument if the target has the wrong length or masked labels.
double rnnt_forward_backward(Lattice& lattice, std::span<const int> target);

/// Loss and analytic gradient with respect to the logits.
RnntLossResult rnnt_loss(const RowMatrix& logits, int frames, std::span<const int> target,
                         const std::vector<bool>& mask);

}  // namespace uml
