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

#include <Eigen/Dense>

#include "uml/uml_tokenizer.h"

namespace uml {

// Synthetic acoustics. Every emitted piece turns into a short bump of frames
// whose shape depends only on the piece key, so a token sequence has a
// deterministic noiseless rendering plus seeded noise on top.
struct FeatureConfig {
  int feat_dim = 16;
  int min_frames = 2;
  int max_frames = 4;
  double noise = 0.15;
  double language_bias = 0.5;  // scale of the per-language offset
  std::uint64_t seed = 17;     // fixes signatures, not noise
};

/// Token string for known pieces, "unk:" + character for <unk>.
std::string piece_key(const Piece& piece);

/// Frames a piece occupies, in [min_frames, max_frames].
int piece_frames(std::string_view key, const FeatureConfig& config);

/// T x feat_dim features. Column 0 flags the first frame of each piece.
/// Throws kInvalidArgument for an empty piece list.
Eigen::MatrixXd synth_features(const std::vector<Piece>& pieces, std::string_view language,
                               const FeatureConfig& config, std::uint64_t noise_seed);

}  // namespace uml
