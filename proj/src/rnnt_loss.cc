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

#include "uml/rnnt_loss.h"

#include <cmath>
#include <limits>

#include "uml/error.h"
#include "uml/vocab.h"

namespace uml {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

}  // namespace

Eigen::RowVectorXd masked_log_softmax(const Eigen::Ref<const Eigen::RowVectorXd>& logits,
                                      const std::vector<bool>& mask) {
  const Eigen::Index n = logits.size();
  if (static_cast<Eigen::Index>(mask.size()) != n) {
    throw Error(ErrorCode::kInvalidArgument, "masked_log_softmax: mask size mismatch");
  }
  double max = kNegInf;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (mask[i]) max = std::max(max, logits[i]);
  }
  if (max == kNegInf) {
    throw Error(ErrorCode::kInvalidArgument, "masked_log_softmax: all-false mask");
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (mask[i]) sum += std::exp(logits[i] - max);
  }
  const double log_z = max + std::log(sum);
  Eigen::RowVectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) out[i] = mask[i] ? logits[i] - log_z : kNegInf;
  return out;
}

Lattice make_lattice(const RowMatrix& logits, int frames, int labels,
                     const std::vector<bool>& mask) {
  if (frames < 1 || labels < 0 || logits.rows() != static_cast<Eigen::Index>(frames) * (labels + 1)) {
    throw Error(ErrorCode::kInvalidArgument, "make_lattice: bad lattice shape");
  }
  if (!logits.allFinite()) {
    throw Error(ErrorCode::kNumerical, "make_lattice: non-finite logits");
  }
  Lattice lattice;
  lattice.frames = frames;
  lattice.labels = labels;
  lattice.log_probs.resize(logits.rows(), logits.cols());
  for (Eigen::Index r = 0; r < logits.rows(); ++r) {
    lattice.log_probs.row(r) = masked_log_softmax(logits.row(r), mask);
  }
  return lattice;
}

double rnnt_forward_backward(Lattice& lat, std::span<const int> target) {
  const int T = lat.frames;
  const int U = lat.labels;
  if (static_cast<int>(target.size()) != U) {
    throw Error(ErrorCode::kInvalidArgument, "rnnt loss: target length mismatch");
  }
  for (int y : target) {
    if (y <= kBlankNode || y >= lat.log_probs.cols() || lat.log_probs(0, y) == kNegInf) {
      throw Error(ErrorCode::kInvalidArgument,
                  "rnnt loss: target node " + std::to_string(y) + " is not a valid label");
    }
  }
  auto lp = [&](int t, int u, int k) { return lat.log_probs(lat.row(t, u), k); };

  lat.alpha.setConstant(T, U + 1, kNegInf);
  lat.alpha(0, 0) = 0.0;
  for (int t = 0; t < T; ++t) {
    for (int u = 0; u <= U; ++u) {
      if (t == 0 && u == 0) continue;
      double a = kNegInf;
      if (t > 0) a = lat.alpha(t - 1, u) + lp(t - 1, u, kBlankNode);
      if (u > 0) a = log_add(a, lat.alpha(t, u - 1) + lp(t, u - 1, target[u - 1]));
      lat.alpha(t, u) = a;
    }
  }

  lat.beta.setConstant(T, U + 1, kNegInf);
  lat.beta(T - 1, U) = lp(T - 1, U, kBlankNode);
  for (int t = T - 1; t >= 0; --t) {
    for (int u = U; u >= 0; --u) {
      if (t == T - 1 && u == U) continue;
      double b = kNegInf;
      if (t + 1 < T) b = lp(t, u, kBlankNode) + lat.beta(t + 1, u);
      if (u < U) b = log_add(b, lp(t, u, target[u]) + lat.beta(t, u + 1));
      lat.beta(t, u) = b;
    }
  }

  const double log_likelihood = lat.beta(0, 0);
  if (!std::isfinite(log_likelihood)) {
    throw Error(ErrorCode::kNumerical, "rnnt loss: target has zero probability");
  }
  return -log_likelihood;
}

RnntLossResult rnnt_loss(const RowMatrix& logits, int frames, std::span<const int> target,
                         const std::vector<bool>& mask) {
  const int U = static_cast<int>(target.size());
  Lattice lat = make_lattice(logits, frames, U, mask);
  RnntLossResult result;
  result.loss = rnnt_forward_backward(lat, target);
  const double log_z = -result.loss;
  const int T = frames;
  const Eigen::Index V = logits.cols();

  result.grad_logits.setZero(logits.rows(), V);
  for (int t = 0; t < T; ++t) {
    for (int u = 0; u <= U; ++u) {
      const int r = lat.row(t, u);
      // d loss / d log_prob for the two outgoing arcs of cell (t, u).
      double g_blank = 0.0, g_label = 0.0;
      const double a = lat.alpha(t, u);
      if (t + 1 < T) {
        g_blank = -std::exp(a + lat.log_probs(r, kBlankNode) + lat.beta(t + 1, u) - log_z);
      } else if (u == U) {
        g_blank = -std::exp(a + lat.log_probs(r, kBlankNode) - log_z);
      }
      if (u < U) {
        g_label = -std::exp(a + lat.log_probs(r, target[u]) + lat.beta(t, u + 1) - log_z);
      }
      const double g_sum = g_blank + g_label;
      if (g_sum == 0.0) continue;
      auto grow = result.grad_logits.row(r);
      for (Eigen::Index k = 0; k < V; ++k) {
        if (mask[k]) grow[k] = -std::exp(lat.log_probs(r, k)) * g_sum;
      }
      grow[kBlankNode] += g_blank;
      if (u < U) grow[target[u]] += g_label;
    }
  }
  return result;
}

}  // namespace uml
