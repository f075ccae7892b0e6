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

#include "uml/byte_codec.h"

#include "uml/error.h"
#include "uml/utf8.h"

namespace uml {

std::vector<int> encode_bytes(std::string_view text, int special_count) {
  const std::size_t bad = utf8_error_offset(text);
  if (bad != std::string_view::npos) {
    throw Error(ErrorCode::kInvalidUtf8,
                "encode_bytes: invalid UTF-8 at byte offset " + std::to_string(bad));
  }
  std::vector<int> nodes;
  nodes.reserve(text.size());
  for (unsigned char b : text) nodes.push_back(special_count + b);
  return nodes;
}

std::string decode_bytes(std::span<const int> nodes, int special_count) {
  std::string bytes;
  bytes.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const int b = nodes[i] - special_count;
    if (nodes[i] < special_count) {
      throw Error(ErrorCode::kInvalidArgument,
                  "decode_bytes: special token " + std::to_string(nodes[i]) +
                      " in byte stream at position " + std::to_string(i));
    }
    if (b > 255) {
      throw Error(ErrorCode::kOutOfGroupRange,
                  "decode_bytes: node " + std::to_string(nodes[i]) +
                      " is outside the byte range");
    }
    bytes.push_back(static_cast<char>(b));
  }
  const std::size_t bad = utf8_error_offset(bytes);
  if (bad != std::string_view::npos) {
    throw Error(ErrorCode::kInvalidUtf8,
                "decode_bytes: invalid UTF-8 at byte offset " + std::to_string(bad));
  }
  return bytes;
}

}  // namespace uml
