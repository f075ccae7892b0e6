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


#include "uml/features.h"

#include <cmath>

#include "uml/error.h"
#include "uml/rng.h"
#include "uml/vocab.h"

namespace uml {

std::string piece_key(const Piece& piece) {
  if (piece.node == kUnkNode) return "unk:" + piece.surface;
  return piece.surface;
}

int piece_frames(std::string_view key, const FeatureConfig& config) {
  const int span = config.max_frames - config.min_frames + 1;
  return config.min_frames +
         static_cast<int>(mix_seed(config.seed ^ 0x5157ULL, key) % static_cast<std::uint64_t>(span));
}

Eigen::MatrixXd synth_features(const std::vector<Piece>& pieces, std::string_view language,
                               const FeatureConfig& config, std::uint64_t noise_seed) {
  if (pieces.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "synth_features: no pieces");
  }
  if (config.feat_dim < 2 || config.min_frames < 1 || config.max_frames < config.min_frames) {
    throw Error(ErrorCode::kInvalidArgument, "synth_features: bad feature config");
  }
  const int F = config.feat_dim;
  std::vector<std::string> keys;
  int total = 0;
  for (const auto& p : pieces) {
    keys.push_back(piece_key(p));
    total += piece_frames(keys.back(), config);
  }

  Eigen::RowVectorXd bias(F);
  Rng lang_rng(mix_seed(config.seed, "lang:" + std::string(language)));
  bias[0] = 0.0;
  for (int d = 1; d < F; ++d) bias[d] = config.language_bias * lang_rng.normal();

  Eigen::MatrixXd x(total, F);
  Rng noise(noise_seed);
  int t = 0;
  for (const auto& key : keys) {
    const int n = piece_frames(key, config);
    Rng sig_rng(mix_seed(config.seed, key));
    Eigen::RowVectorXd signature(F);
    signature[0] = 0.0;
    for (int d = 1; d < F; ++d) signature[d] = sig_rng.normal();
    for (int k = 0; k < n; ++k, ++t) {
      // Decaying envelope: a repeated piece shows up as a fresh jump.
      const double bump = static_cast<double>(n - k) / n;
      x.row(t) = bump * signature + bias;
      for (int d = 0; d < F; ++d) x(t, d) += config.noise * noise.normal();
      x(t, 0) += k == 0 ? 1.0 : 0.0;
    }
  }
  return x;
}

}  // namespace uml
